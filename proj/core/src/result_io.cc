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

#include "epinet/result_io.h"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "epinet/compartments.h"
#include "epinet/data_io.h"
#include "epinet/errors.h"
#include "json.hpp"

namespace epinet {

namespace {

using Json = nlohmann::ordered_json;

std::string FormatNumber(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::int64_t ParseInt(const std::string& s, int line) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw DataError("expected an integer, got '" + s + "'", line);
  }
}

}  // namespace

void WriteRunsCsv(std::ostream& out, const SimulationResult& result) {
  out << "run,day,region";
  for (Compartment c : kAllCompartments) out << ',' << CompartmentName(c);
  out << ",cum_exposed\n";
  for (const RunTrace& run : result.runs) {
    for (int d = 0; d < run.num_days; ++d) {
      for (int r = 0; r < run.num_regions(); ++r) {
        const RegionDayRecord& rec = run.at(d, r);
        out << run.run << ',' << run.first_day + d << ',' << r;
        for (auto v : rec.counts) out << ',' << v;
        out << ',' << rec.cum_exposed << '\n';
      }
    }
  }
}

SimulationResult ReadRunsCsv(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::vector<CsvRecord> records = ParseCsv(buffer.str());
  if (records.empty()) throw SchemaError("runs CSV has no header");
  std::vector<std::string> expected = {"run", "day", "region"};
  for (Compartment c : kAllCompartments) expected.emplace_back(CompartmentName(c));
  expected.emplace_back("cum_exposed");
  if (records[0].fields != expected) throw SchemaError("unexpected runs CSV header");

  struct Row {
    int run, day, region;
    RegionDayRecord rec;
  };
  std::vector<Row> rows;
  rows.reserve(records.size() - 1);
  for (std::size_t i = 1; i < records.size(); ++i) {
    const CsvRecord& r = records[i];
    if (r.fields.size() != expected.size()) throw DataError("wrong field count", r.line);
    Row row{};
    row.run = static_cast<int>(ParseInt(r.fields[0], r.line));
    row.day = static_cast<int>(ParseInt(r.fields[1], r.line));
    row.region = static_cast<int>(ParseInt(r.fields[2], r.line));
    for (int c = 0; c < kNumCompartments; ++c) {
      row.rec.counts[c] = ParseInt(r.fields[3 + c], r.line);
    }
    row.rec.cum_exposed = ParseInt(r.fields[3 + kNumCompartments], r.line);
    rows.push_back(row);
  }

  SimulationResult result;
  if (rows.empty()) return result;
  std::map<int, std::vector<const Row*>> by_run;
  int first_day = rows.front().day, last_day = rows.front().day;
  for (const Row& row : rows) {
    by_run[row.run].push_back(&row);
    first_day = std::min(first_day, row.day);
    last_day = std::max(last_day, row.day);
  }
  result.first_day = first_day;
  result.num_days = last_day - first_day + 1;
  for (auto& [run_id, run_rows] : by_run) {
    RunTrace trace;
    trace.run = run_id;
    trace.first_day = first_day;
    trace.num_days = result.num_days;
    int regions = 0;
    for (const Row* row : run_rows) regions = std::max(regions, row->region + 1);
    trace.region_sizes.assign(regions, 0);
    trace.records.assign(static_cast<std::size_t>(trace.num_days) * regions, {});
    for (const Row* row : run_rows) {
      trace.records[static_cast<std::size_t>(row->day - first_day) * regions + row->region] =
          row->rec;
    }
    for (int r = 0; r < regions; ++r) {
      trace.region_sizes[r] = static_cast<int>(Total(trace.at(0, r).counts));
    }
    result.runs.push_back(std::move(trace));
  }
  result.n_total = 0;
  for (int size : result.runs.front().region_sizes) result.n_total += size;
  return result;
}

void WriteAggregateCsv(std::ostream& out, const SimulationResult& result, double scale) {
  const Aggregate agg = result.ComputeAggregate();
  out << "day";
  for (Compartment c : kAllCompartments) {
    out << ',' << CompartmentName(c) << "_mean," << CompartmentName(c) << "_std";
  }
  out << ",cum_exposed_mean,cum_exposed_std\n";
  for (std::size_t d = 0; d < agg.mean.size(); ++d) {
    out << agg.first_day + static_cast<int>(d);
    for (int f = 0; f < kNumAggregateFields; ++f) {
      out << ',' << FormatNumber(agg.mean[d][f] * scale) << ','
          << FormatNumber(agg.stddev[d][f] * scale);
    }
    out << '\n';
  }
}

void WriteControllerLog(std::ostream& out, const std::vector<ControllerLogEntry>& log) {
  out << "day,hospitalized,flag\n";
  for (const ControllerLogEntry& e : log) {
    out << e.day << ',' << e.hospitalized << ',' << (e.flag ? 1 : 0) << '\n';
  }
}

std::string Sha256Hex(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw InputError("cannot read " + file.string());
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  std::array<char, 1 << 16> buf;
  while (in) {
    in.read(buf.data(), buf.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx, buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, digest, &len);
  EVP_MD_CTX_free(ctx);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex.push_back(kHex[digest[i] >> 4]);
    hex.push_back(kHex[digest[i] & 0xF]);
  }
  return hex;
}

void WriteManifest(const std::filesystem::path& file, const RunManifest& manifest) {
  Json j;
  j["command"] = manifest.command;
  j["seed"] = manifest.seed;
  j["runs"] = manifest.runs;
  j["threads"] = manifest.threads;
  Json params = Json::object();
  for (std::string_view name : ParamNames()) {
    params[std::string(name)] = GetParam(manifest.params, name);
  }
  j["params"] = params;
  j["world"] = {{"population", manifest.world.population},
                {"child_fraction", manifest.world.child_fraction},
                {"scale_factor", manifest.world.scale_factor},
                {"n_total", manifest.world.TargetNodes()},
                {"region_size", {manifest.world.min_region_size,
                                 manifest.world.target_region_size,
                                 manifest.world.max_region_size}},
                {"p_int", manifest.world.p_int},
                {"mixing_index_order", manifest.world.mixing_order ==
                                               MixingIndexOrder::kCorrected
                                           ? "corrected"
                                           : "as_written"}};
  Json data = Json::array();
  for (const auto& [path, sha] : manifest.data_checksums) {
    data.push_back({{"path", path}, {"sha256", sha}});
  }
  j["data"] = data;
  j["artifacts"] = manifest.artifacts;
  j["notes"] = manifest.notes;
  j["config"] = manifest.config_json.empty() ? Json::object()
                                             : Json::parse(manifest.config_json);
  WriteTextFile(file, j.dump(2) + "\n");
}

void WriteTextFile(const std::filesystem::path& file, const std::string& text) {
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::binary);
  if (!out) throw InputError("cannot write " + file.string());
  out << text;
}

}  // namespace epinet
