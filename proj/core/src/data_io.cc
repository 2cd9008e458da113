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

#include "epinet/data_io.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "epinet/errors.h"

namespace epinet {

namespace {

constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

constexpr std::string_view kRequired[] = {
    "date",     "confirmed",      "deaths",
    "hosp",     "tests",          "vaccines",
    "stay_home_restrictions",     "school_closing",
    "workplace_closing",          "testing_policy",
    "contact_tracing"};

enum Column {
  kConfirmed,
  kDeaths,
  kHosp,
  kTests,
  kVaccines,
  kStayHome,
  kSchool,
  kWorkplace,
  kTesting,
  kTracing,
  kInternational,
  kInternal,
  kTransport,
  kNumColumns,
};

constexpr std::string_view kColumnNames[kNumColumns] = {
    "confirmed",
    "deaths",
    "hosp",
    "tests",
    "vaccines",
    "stay_home_restrictions",
    "school_closing",
    "workplace_closing",
    "testing_policy",
    "contact_tracing",
    "international_movement_restrictions",
    "internal_movement_restrictions",
    "transport_closing"};

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

double ParseCell(std::string_view raw, std::string_view column, int line) {
  const std::string_view s = Trim(raw);
  if (s.empty() || s == "NA" || s == "NaN") return kMissing;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value)) {
    throw DataError("cannot parse '" + std::string(s) + "' in column " + std::string(column),
                    line);
  }
  return value;
}

int Level(double raw, int lo, int hi) {
  const int v = static_cast<int>(std::lround(std::fabs(raw)));
  return std::clamp(v, lo, hi);
}

// Fills gaps in one column over the contiguous day index. `observed` marks
// days that had a row in the file.
std::vector<double> FillColumn(const std::vector<double>& cells,
                               const std::vector<bool>& observed, bool interpolate) {
  const std::size_t n = cells.size();
  std::vector<double> out(n, 0.0);
  // Forward-fill empty cells on observed days.
  double last = 0.0;
  for (std::size_t d = 0; d < n; ++d) {
    if (!observed[d]) continue;
    if (!std::isnan(cells[d])) last = cells[d];
    out[d] = last;
  }
  // Missing dates: interpolate between surrounding rows or carry forward.
  std::size_t prev = 0;
  for (std::size_t d = 0; d < n; ++d) {
    if (observed[d]) {
      prev = d;
      continue;
    }
    std::size_t next = d;
    while (next < n && !observed[next]) ++next;
    for (std::size_t k = d; k < next; ++k) {
      if (interpolate && next < n) {
        const double t = static_cast<double>(k - prev) / static_cast<double>(next - prev);
        out[k] = out[prev] + t * (out[next] - out[prev]);
      } else {
        out[k] = out[prev];
      }
    }
    d = next - 1;
  }
  return out;
}

}  // namespace

std::optional<std::chrono::sys_days> ParseIsoDate(std::string_view text) {
  text = Trim(text);
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  int y = 0, mo = 0, d = 0;
  auto parse = [](std::string_view s, int& out) {
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
  };
  if (!parse(text.substr(0, 4), y) || !parse(text.substr(5, 2), mo) ||
      !parse(text.substr(8, 2), d)) {
    return std::nullopt;
  }
  const std::chrono::year_month_day ymd{std::chrono::year(y),
                                        std::chrono::month(static_cast<unsigned>(mo)),
                                        std::chrono::day(static_cast<unsigned>(d))};
  if (!ymd.ok()) return std::nullopt;
  return std::chrono::sys_days(ymd);
}

std::string FormatIsoDate(std::chrono::sys_days date) {
  const std::chrono::year_month_day ymd(date);
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

std::vector<CsvRecord> ParseCsv(std::string_view text) {
  std::vector<CsvRecord> records;
  CsvRecord current;
  std::string field;
  bool in_quotes = false;
  bool record_has_data = false;
  int line = 1;
  current.line = 1;
  auto end_field = [&] {
    current.fields.push_back(std::move(field));
    field.clear();
  };
  auto end_record = [&] {
    end_field();
    if (record_has_data || current.fields.size() > 1 || !current.fields[0].empty()) {
      records.push_back(std::move(current));
    }
    current = CsvRecord{};
    current.line = line;
    record_has_data = false;
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (in_quotes) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (ch == '\n') ++line;
        field.push_back(ch);
      }
      continue;
    }
    switch (ch) {
      case '"':
        in_quotes = true;
        record_has_data = true;
        break;
      case ',':
        end_field();
        record_has_data = true;
        break;
      case '\r':
        break;
      case '\n':
        ++line;
        end_record();
        break;
      default:
        field.push_back(ch);
    }
  }
  if (!field.empty() || !current.fields.empty() || record_has_data) end_record();
  return records;
}

GroundTruth GroundTruth::Scaled(double divisor) const {
  GroundTruth out = *this;
  for (auto* series : {&out.confirmed_daily, &out.confirmed_cumulative, &out.deaths_daily,
                       &out.deaths_cumulative, &out.hospitalized_current}) {
    for (double& v : *series) v /= divisor;
  }
  return out;
}

std::vector<double> ClampedDifferences(std::span<const double> cumulative) {
  std::vector<double> out(cumulative.size());
  double prev = 0.0;
  for (std::size_t i = 0; i < cumulative.size(); ++i) {
    out[i] = std::max(0.0, cumulative[i] - prev);
    prev = cumulative[i];
  }
  return out;
}

CountryData ParseCountry(std::string_view csv_text, double population) {
  const std::vector<CsvRecord> records = ParseCsv(csv_text);
  if (records.empty()) throw SchemaError("CSV has no header row");

  std::map<std::string, std::size_t, std::less<>> header;
  for (std::size_t i = 0; i < records[0].fields.size(); ++i) {
    header.emplace(std::string(Trim(records[0].fields[i])), i);
  }
  for (std::string_view name : kRequired) {
    if (!header.contains(name)) {
      throw SchemaError("missing required column '" + std::string(name) + "'");
    }
  }
  const std::size_t date_col = header.find("date")->second;
  std::optional<std::size_t> cols[kNumColumns];
  for (int c = 0; c < kNumColumns; ++c) {
    if (auto it = header.find(kColumnNames[c]); it != header.end()) cols[c] = it->second;
  }

  struct Row {
    std::chrono::sys_days date;
    double cells[kNumColumns];
  };
  std::vector<Row> rows;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const CsvRecord& rec = records[r];
    auto cell = [&rec](std::size_t idx) -> std::string_view {
      return idx < rec.fields.size() ? std::string_view(rec.fields[idx]) : std::string_view();
    };
    const auto date = ParseIsoDate(cell(date_col));
    if (!date) {
      throw DataError("unparseable date '" + std::string(cell(date_col)) + "'", rec.line);
    }
    Row row{*date, {}};
    for (int c = 0; c < kNumColumns; ++c) {
      row.cells[c] = cols[c] ? ParseCell(cell(*cols[c]), kColumnNames[c], rec.line) : kMissing;
    }
    rows.push_back(row);
  }
  if (rows.empty()) throw InputError("CSV has no data rows");
  std::stable_sort(rows.begin(), rows.end(),
                   [](const Row& a, const Row& b) { return a.date < b.date; });

  const std::chrono::sys_days first = rows.front().date;
  const auto n = static_cast<std::size_t>((rows.back().date - first).count()) + 1;
  std::vector<bool> observed(n, false);
  std::vector<std::vector<double>> cells(kNumColumns, std::vector<double>(n, kMissing));
  for (const Row& row : rows) {
    const auto d = static_cast<std::size_t>((row.date - first).count());
    observed[d] = true;
    for (int c = 0; c < kNumColumns; ++c) {
      if (!std::isnan(row.cells[c])) cells[c][d] = row.cells[c];  // later duplicates win
    }
  }

  std::vector<std::vector<double>> filled(kNumColumns);
  for (int c = 0; c < kNumColumns; ++c) {
    const bool cumulative = c == kConfirmed || c == kDeaths || c == kTests || c == kVaccines;
    filled[c] = FillColumn(cells[c], observed, cumulative);
  }

  CountryData data;
  data.population = population;
  GroundTruth& gt = data.truth;
  gt.dates.resize(n);
  for (std::size_t d = 0; d < n; ++d) gt.dates[d] = first + std::chrono::days(d);
  gt.confirmed_daily = ClampedDifferences(filled[kConfirmed]);
  gt.deaths_daily = ClampedDifferences(filled[kDeaths]);
  gt.hospitalized_current = filled[kHosp];
  for (double& v : gt.hospitalized_current) v = std::max(0.0, v);
  gt.confirmed_cumulative.resize(n);
  gt.deaths_cumulative.resize(n);
  std::partial_sum(gt.confirmed_daily.begin(), gt.confirmed_daily.end(),
                   gt.confirmed_cumulative.begin());
  std::partial_sum(gt.deaths_daily.begin(), gt.deaths_daily.end(),
                   gt.deaths_cumulative.begin());

  const std::vector<double> tests = ClampedDifferences(filled[kTests]);
  const std::vector<double> vaccines = ClampedDifferences(filled[kVaccines]);
  data.timeline.resize(n);
  for (std::size_t d = 0; d < n; ++d) {
    PolicyDay& p = data.timeline[d];
    p.date = gt.dates[d];
    p.stay_home = Level(filled[kStayHome][d], 0, 3) >= 2 ? 1 : 0;
    p.school_closing = Level(filled[kSchool][d], 0, 3);
    p.workplace_closing = Level(filled[kWorkplace][d], 0, 3);
    p.testing_policy = Level(filled[kTesting][d], 0, 3);
    p.contact_tracing = Level(filled[kTracing][d], 0, 2) + 1;
    p.daily_tests = tests[d];
    p.daily_vaccines = vaccines[d];
    p.international_open = !cols[kInternational] || Level(filled[kInternational][d], 0, 4) == 0;
    if (cols[kInternal]) p.internal_movement = Level(filled[kInternal][d], 0, 2);
    p.transport_closing = cols[kTransport] ? Level(filled[kTransport][d], 0, 2) : 0;
  }
  data.notes.push_back("stay_home_restrictions >= 2 mapped to lockdown flag 1");
  data.notes.push_back("contact_tracing 0..2 mapped to levels 1..3");
  data.notes.push_back("negative (targeted) policy values read as their magnitude");
  if (!cols[kInternational]) {
    data.notes.push_back("no international_movement_restrictions column: borders open");
  } else {
    data.notes.push_back("international_movement_restrictions >= 1 closes the border");
  }
  if (!cols[kInternal]) {
    data.notes.push_back("no internal_movement_restrictions column: stay-home gates mixing");
  }
  return data;
}

CountryData LoadCountry(const std::filesystem::path& csv_path, double population) {
  std::ifstream in(csv_path, std::ios::binary);
  if (!in) throw SchemaError("cannot open data file " + csv_path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseCountry(buffer.str(), population);
}

std::vector<double> Smooth(std::span<const double> series, int window) {
  if (window < 1 || window % 2 == 0) {
    throw InputError("smoothing window must be odd and >= 1, got " + std::to_string(window));
  }
  const auto n = static_cast<std::ptrdiff_t>(series.size());
  const std::ptrdiff_t half = window / 2;
  std::vector<double> out(series.size());
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, i - half);
    const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(n - 1, i + half);
    double sum = 0.0;
    for (std::ptrdiff_t k = lo; k <= hi; ++k) sum += series[k];
    out[i] = sum / static_cast<double>(hi - lo + 1);
  }
  return out;
}

}  // namespace epinet
