// Copyright 2026 The epinet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EPINET_DATA_IO_H_
#define EPINET_DATA_IO_H_

#include <chrono>
#include <filesystem>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "epinet/interventions.h"

namespace epinet {

std::optional<std::chrono::sys_days> ParseIsoDate(std::string_view text);
std::string FormatIsoDate(std::chrono::sys_days date);

// Splits RFC-4180 CSV text into records. Quoted fields may contain commas,
// doubled quotes and line breaks. Each record carries its 1-based starting
// line number.
struct CsvRecord {
  int line = 0;
  std::vector<std::string> fields;
};
std::vector<CsvRecord> ParseCsv(std::string_view text);

// Country-scale observed series on a contiguous daily index.
struct GroundTruth {
  std::vector<std::chrono::sys_days> dates;
  std::vector<double> confirmed_daily;
  std::vector<double> confirmed_cumulative;
  std::vector<double> deaths_daily;
  std::vector<double> deaths_cumulative;
  std::vector<double> hospitalized_current;

  std::size_t size() const { return dates.size(); }
  // Every count divided by `divisor` (persons -> nodes).
  GroundTruth Scaled(double divisor) const;
};

struct CountryData {
  double population = 0.0;
  PolicyTimeline timeline;
  GroundTruth truth;
  std::vector<std::string> notes;  // value mappings applied while loading
};

// Reads a COVID-19 Data Hub style country CSV.
//
// Required columns: date, confirmed, deaths, hosp, tests, vaccines,
// stay_home_restrictions, school_closing, workplace_closing, testing_policy,
// contact_tracing. Optional: international_movement_restrictions,
// internal_movement_restrictions, transport_closing.
//
// Rows are re-indexed onto every calendar day from the first to the last
// date. Empty cells are forward-filled (0 before the first observation).
// Cumulative columns (confirmed, deaths, tests, vaccines) are linearly
// interpolated across missing dates and differenced into daily counts with
// negative differences clamped to 0. Policy levels follow the source's
// ordinal scales: stay_home >= 2 is a lockdown, contact_tracing 0..2 becomes
// 1..3, and borders count as open only without international restrictions
// (level 0).
CountryData LoadCountry(const std::filesystem::path& csv_path, double population);
CountryData ParseCountry(std::string_view csv_text, double population);

// Centered moving average; the window shrinks at the series boundaries.
// `window` must be odd and >= 1.
std::vector<double> Smooth(std::span<const double> series, int window);

// Daily increments of a cumulative series, negative steps clamped to 0. The
// first element is the first cumulative value.
std::vector<double> ClampedDifferences(std::span<const double> cumulative);

}  // namespace epinet

#endif  // EPINET_DATA_IO_H_
