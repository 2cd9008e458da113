#!/usr/bin/env python3
# Copyright 2026 The epinet Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Writes stylized GBR and ISR country files in the COVID-19 Data Hub layout.

These are NOT the source data. Policy levels follow the broad public
calendar of each country's measures, testing and vaccination volumes are
rough piecewise-linear curves, and the confirmed/deaths/hosp columns are
left empty. They exist so the simulator can be exercised end to end when the
real files cannot be downloaded.
"""

import csv
import datetime as dt
import pathlib

START = dt.date(2020, 1, 22)
END = dt.date(2021, 11, 30)

COLUMNS = [
    "date", "confirmed", "deaths", "hosp", "tests", "vaccines",
    "stay_home_restrictions", "school_closing", "workplace_closing",
    "testing_policy", "contact_tracing", "international_movement_restrictions",
]


def d(text):
    return dt.date.fromisoformat(text)


def steps(changes):
    """Level in force on each day from a list of (first day, level)."""
    changes = sorted((d(day), level) for day, level in changes)

    def level(day):
        value = 0
        for first, lvl in changes:
            if day >= first:
                value = lvl
        return value
    return level


def ramp(points):
    """Piecewise-linear daily rate through (day, rate) knots, 0 outside."""
    knots = sorted((d(day), rate) for day, rate in points)

    def rate(day):
        if day < knots[0][0] or day > knots[-1][0]:
            return 0.0
        for (a, ra), (b, rb) in zip(knots, knots[1:]):
            if a <= day <= b:
                span = (b - a).days or 1
                return ra + (rb - ra) * (day - a).days / span
        return knots[-1][1]
    return rate


GBR = {
    "stay_home_restrictions": steps([
        ("2020-03-23", 2), ("2020-05-13", 1), ("2020-11-05", 2), ("2020-12-02", 1),
        ("2021-01-06", 2), ("2021-03-29", 1), ("2021-07-19", 0)]),
    "school_closing": steps([
        ("2020-03-20", 3), ("2020-06-01", 2), ("2020-09-01", 1), ("2021-01-05", 3),
        ("2021-03-08", 1)]),
    "workplace_closing": steps([
        ("2020-03-16", 1), ("2020-03-23", 3), ("2020-05-13", 2), ("2020-07-04", 1),
        ("2020-09-22", 2), ("2020-11-05", 3), ("2020-12-02", 2), ("2021-01-06", 3),
        ("2021-04-12", 2), ("2021-07-19", 1)]),
    "testing_policy": steps([("2020-02-01", 1), ("2020-05-18", 2), ("2021-04-09", 3)]),
    "contact_tracing": steps([("2020-01-22", 1), ("2020-03-12", 0), ("2020-05-28", 1)]),
    "international_movement_restrictions": steps([
        ("2020-02-01", 1), ("2020-06-08", 2), ("2021-01-18", 3), ("2021-05-17", 2)]),
    "tests": ramp([
        ("2020-03-01", 1e3), ("2020-04-15", 2e4), ("2020-05-31", 1.2e5),
        ("2020-09-15", 2.2e5), ("2020-11-15", 4.5e5), ("2021-01-15", 8e5),
        ("2021-04-15", 1.2e6), ("2021-11-30", 1.0e6)]),
    "vaccines": ramp([
        ("2021-01-10", 2.5e5), ("2021-02-01", 4.5e5), ("2021-03-20", 5e5),
        ("2021-06-01", 3e5), ("2021-08-15", 1.2e5), ("2021-10-15", 2e5),
        ("2021-11-30", 3.5e5)]),
    # The dashboard series starts on 2021-01-10 with doses already given.
    "vaccines_offset": ("2021-01-10", 2.6e6),
}

ISR = {
    "stay_home_restrictions": steps([
        ("2020-03-19", 1), ("2020-03-25", 2), ("2020-05-05", 1), ("2020-06-15", 0),
        ("2020-09-11", 1), ("2020-09-18", 2), ("2020-10-18", 1), ("2020-12-27", 2),
        ("2021-02-08", 1), ("2021-03-07", 0)]),
    "school_closing": steps([
        ("2020-03-13", 3), ("2020-05-03", 2), ("2020-09-18", 3), ("2020-11-02", 2),
        ("2020-12-27", 3), ("2021-02-11", 2), ("2021-03-07", 1)]),
    "workplace_closing": steps([
        ("2020-03-15", 3), ("2020-05-04", 2), ("2020-09-18", 3), ("2020-10-18", 2),
        ("2020-12-27", 3), ("2021-02-08", 2), ("2021-03-07", 1)]),
    "testing_policy": steps([("2020-02-15", 1), ("2020-04-20", 2), ("2020-08-01", 3)]),
    "contact_tracing": steps([("2020-03-17", 2), ("2021-01-15", 1)]),
    "international_movement_restrictions": steps([
        ("2020-01-30", 1), ("2020-03-09", 3), ("2021-05-24", 2), ("2021-11-28", 4)]),
    "tests": ramp([
        ("2020-02-20", 100), ("2020-04-15", 1e4), ("2020-06-30", 2.5e4),
        ("2020-09-15", 5e4), ("2021-01-15", 1e5), ("2021-04-01", 6e4),
        ("2021-08-20", 1.5e5), ("2021-11-30", 7e4)]),
    "vaccines": ramp([
        ("2020-12-19", 5e4), ("2021-01-10", 1.5e5), ("2021-03-01", 8e4),
        ("2021-05-01", 2e4), ("2021-07-25", 1e4), ("2021-08-20", 1e5),
        ("2021-10-10", 2e4), ("2021-11-30", 1e4)]),
}


def write(path, spec):
    tests_cum = 0.0
    vacc_cum = 0.0
    offset_day, offset = spec.get("vaccines_offset", (None, 0.0))
    rows = []
    day = START
    while day <= END:
        tests_cum += spec["tests"](day)
        vacc_rate = spec["vaccines"](day)
        if offset_day and day == d(offset_day):
            vacc_cum += offset
        vacc_cum += vacc_rate
        vaccines_started = vacc_cum > 0
        row = {
            "date": day.isoformat(),
            "confirmed": "",
            "deaths": "",
            "hosp": "",
            "tests": f"{tests_cum:.0f}" if tests_cum > 0 else "",
            "vaccines": f"{vacc_cum:.0f}" if vaccines_started else "",
        }
        for key in COLUMNS[6:]:
            row[key] = spec[key](day)
        rows.append(row)
        day += dt.timedelta(days=1)
    with open(path, "w", newline="") as f:
        w = csv.DictWriter(f, fieldnames=COLUMNS)
        w.writeheader()
        w.writerows(rows)


if __name__ == "__main__":
    here = pathlib.Path(__file__).resolve().parent
    write(here / "GBR_stylized.csv", GBR)
    write(here / "ISR_stylized.csv", ISR)
