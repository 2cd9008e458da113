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

#include "run_config.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "epinet/errors.h"
#include "json.hpp"

namespace epinet::cli {

namespace {

using Json = nlohmann::json;

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Json ParseJson(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError(what + ": " + e.what());
  }
}

// Typed field access that names the full key path in every error.
class Fields {
 public:
  Fields(const Json& object, std::string path) : j_(object), path_(std::move(path)) {
    if (!j_.is_object()) throw SchemaError("'" + path_ + "' must be an object");
  }

  void Allow(std::initializer_list<const char*> keys) const {
    std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& [key, value] : j_.items()) {
      if (!allowed.count(key)) throw SchemaError("unknown field '" + Name(key) + "'");
    }
  }

  bool Has(const std::string& key) const { return j_.contains(key); }
  const Json& Raw(const std::string& key) const { return j_.at(key); }
  std::string Name(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  double Number(const std::string& key) const {
    const Json& v = Get(key);
    if (!v.is_number()) throw SchemaError("'" + Name(key) + "' must be a number");
    return v.get<double>();
  }
  int Int(const std::string& key) const {
    const Json& v = Get(key);
    if (!v.is_number_integer()) throw SchemaError("'" + Name(key) + "' must be an integer");
    return v.get<int>();
  }
  std::uint64_t Uint(const std::string& key) const {
    const Json& v = Get(key);
    if (!v.is_number_unsigned()) {
      throw SchemaError("'" + Name(key) + "' must be a non-negative integer");
    }
    return v.get<std::uint64_t>();
  }
  std::string String(const std::string& key) const {
    const Json& v = Get(key);
    if (!v.is_string()) throw SchemaError("'" + Name(key) + "' must be a string");
    return v.get<std::string>();
  }
  Fields Object(const std::string& key) const { return Fields(Get(key), Name(key)); }

 private:
  const Json& Get(const std::string& key) const {
    if (!j_.contains(key)) throw SchemaError("missing field '" + Name(key) + "'");
    return j_.at(key);
  }

  const Json& j_;
  std::string path_;
};

void ApplyParamObject(const Fields& f, const Json& object, ModelParams& params) {
  for (const auto& [key, value] : object.items()) {
    if (!IsParamName(key)) throw SchemaError("unknown parameter '" + f.Name(key) + "'");
    SetParam(params, key, f.Number(key));
  }
}

ParamSpace ParseSpace(const Fields& calib) {
  const Json& raw = calib.Raw("space");
  if (raw.is_string()) {
    const std::string name = raw.get<std::string>();
    if (name == "behavior") return BehaviorSearchSpace();
    if (name == "disease") return DiseaseSearchSpace();
    if (name == "all") {
      ParamSpace s = BehaviorSearchSpace();
      const ParamSpace d = DiseaseSearchSpace();
      s.insert(s.end(), d.begin(), d.end());
      return s;
    }
    throw SchemaError("'calibration.space' must be behavior, disease, all or a list");
  }
  if (!raw.is_array()) throw SchemaError("'calibration.space' must be a string or a list");
  ParamSpace space;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    Fields r(raw[i], "calibration.space[" + std::to_string(i) + "]");
    r.Allow({"name", "lo", "hi"});
    space.push_back({r.String("name"), r.Number("lo"), r.Number("hi")});
  }
  ValidateSpace(space);
  return space;
}

}  // namespace

std::filesystem::path Resolve(const RunConfig& config, const std::filesystem::path& path) {
  return path.is_absolute() ? path : config.base_dir / path;
}

RunConfig ParseRunConfig(const std::string& json_text, const std::filesystem::path& base_dir) {
  const Json j = ParseJson(json_text, "config");
  Fields f(j, "");
  f.Allow({"comment", "data", "country", "world", "preset", "params_file", "params", "runs",
           "seed", "threads", "seed_day", "out", "start_date", "end_date", "days", "scenario",
           "calibration"});
  RunConfig c;
  c.base_dir = base_dir;
  c.data = f.String("data");
  c.inputs.push_back(Resolve(c, c.data));

  Fields country = f.Object("country");
  country.Allow({"name", "population", "child_fraction", "vaccination_start_day"});
  c.world.population = country.Number("population");
  if (country.Has("child_fraction")) c.world.child_fraction = country.Number("child_fraction");
  if (country.Has("vaccination_start_day")) {
    c.vaccination_start_day = country.Int("vaccination_start_day");
  }

  if (f.Has("world")) {
    Fields w = f.Object("world");
    w.Allow({"scale_factor", "target_region_size", "min_region_size", "max_region_size",
             "p_int", "mixing_index_order"});
    if (w.Has("scale_factor")) c.world.scale_factor = w.Number("scale_factor");
    if (w.Has("target_region_size")) c.world.target_region_size = w.Int("target_region_size");
    if (w.Has("min_region_size")) c.world.min_region_size = w.Int("min_region_size");
    if (w.Has("max_region_size")) c.world.max_region_size = w.Int("max_region_size");
    if (w.Has("p_int")) c.world.p_int = w.Number("p_int");
    if (w.Has("mixing_index_order")) {
      const std::string order = w.String("mixing_index_order");
      if (order == "corrected") {
        c.world.mixing_order = MixingIndexOrder::kCorrected;
      } else if (order == "as_written") {
        c.world.mixing_order = MixingIndexOrder::kAsWritten;
      } else {
        throw SchemaError("'world.mixing_index_order' must be corrected or as_written");
      }
    }
  }

  if (f.Has("preset")) {
    const std::string preset = f.String("preset");
    if (preset == "gbr") {
      c.params.behavior = BehaviorParams::Gbr();
    } else if (preset == "isr") {
      c.params.behavior = BehaviorParams::Isr();
    } else {
      throw SchemaError("'preset' must be gbr or isr");
    }
  }
  if (f.Has("params_file")) {
    const std::filesystem::path path = Resolve(c, f.String("params_file"));
    c.inputs.push_back(path);
    const Json best = ParseJson(ReadFile(path), path.string());
    Fields bf(best, path.filename().string());
    ApplyParamObject(bf.Object("params"), best.at("params"), c.params);
  }
  if (f.Has("params")) ApplyParamObject(f.Object("params"), j.at("params"), c.params);

  c.seed = f.Uint("seed");
  if (f.Has("runs")) c.runs = f.Int("runs");
  if (f.Has("threads")) c.threads = f.Int("threads");
  if (f.Has("seed_day")) c.seed_day = f.Int("seed_day");
  if (f.Has("out")) c.out = f.String("out");
  if (f.Has("start_date")) c.start_date = f.String("start_date");
  if (f.Has("end_date")) c.end_date = f.String("end_date");
  if (f.Has("days")) c.days = f.Int("days");
  if (f.Has("scenario")) c.scenario = ParseScenarioSpec(j.at("scenario").dump());

  if (f.Has("calibration")) {
    Fields cal = f.Object("calibration");
    cal.Allow({"n_random", "n_sweeps", "grid_points", "keep_fraction", "space", "runs",
               "thresholds"});
    SearchBudget& b = c.calibration.budget;
    if (cal.Has("n_random")) b.n_random = cal.Int("n_random");
    if (cal.Has("n_sweeps")) b.n_sweeps = cal.Int("n_sweeps");
    if (cal.Has("grid_points")) b.grid_points = cal.Int("grid_points");
    if (cal.Has("keep_fraction")) b.keep_fraction = cal.Number("keep_fraction");
    if (cal.Has("space")) c.calibration.space = ParseSpace(cal);
    if (cal.Has("runs")) c.calibration.runs = cal.Int("runs");
    if (cal.Has("thresholds")) {
      Fields t = cal.Object("thresholds");
      t.Allow({"max_exposed_frac", "min_sym_vs_confirmed", "smoothing_window"});
      ScoreThresholds& th = c.calibration.thresholds;
      if (t.Has("max_exposed_frac")) th.max_exposed_frac = t.Number("max_exposed_frac");
      if (t.Has("min_sym_vs_confirmed")) {
        th.min_sym_vs_confirmed = t.Number("min_sym_vs_confirmed");
      }
      if (t.Has("smoothing_window")) th.smoothing_window = t.Int("smoothing_window");
    }
  }

  if (c.runs < 1) throw InputError("'runs' must be >= 1");
  if (c.threads < 0) throw InputError("'threads' must be >= 0");
  if (c.days && *c.days < 1) throw InputError("'days' must be >= 1");
  c.world.Validate();
  return c;
}

RunConfig LoadRunConfig(const std::filesystem::path& path) {
  return ParseRunConfig(ReadFile(path), path.parent_path());
}

std::string ResolvedConfigJson(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["data"] = c.data.string();
  j["country"] = {{"population", c.world.population},
                  {"child_fraction", c.world.child_fraction}};
  if (c.vaccination_start_day) j["country"]["vaccination_start_day"] = *c.vaccination_start_day;
  j["world"] = {{"scale_factor", c.world.scale_factor},
                {"target_region_size", c.world.target_region_size},
                {"min_region_size", c.world.min_region_size},
                {"max_region_size", c.world.max_region_size},
                {"p_int", c.world.p_int},
                {"mixing_index_order", c.world.mixing_order == MixingIndexOrder::kCorrected
                                           ? "corrected"
                                           : "as_written"}};
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (std::string_view name : ParamNames()) {
    params[std::string(name)] = GetParam(c.params, name);
  }
  j["params"] = params;
  j["runs"] = c.runs;
  j["seed"] = c.seed;
  j["threads"] = c.threads;
  j["seed_day"] = c.seed_day;
  j["out"] = c.out.string();
  if (c.start_date) j["start_date"] = *c.start_date;
  if (c.end_date) j["end_date"] = *c.end_date;
  if (c.days) j["days"] = *c.days;
  if (c.scenario) {
    const ScenarioSpec& s = *c.scenario;
    nlohmann::ordered_json sj = {{"kind", s.kind}};
    if (s.kind >= 6 && s.kind <= 8) sj["k"] = s.k;
    if (s.kind == 9) sj["t0"] = s.t0;
    if (s.kind == 10) {
      sj["h_lock"] = s.h_lock;
      sj["t_lock"] = s.t_lock;
    }
    if (s.start_day) sj["start_day"] = *s.start_day;
    if (s.runs) sj["runs"] = *s.runs;
    j["scenario"] = sj;
  }
  const CalibrationConfig& cal = c.calibration;
  nlohmann::ordered_json space = nlohmann::ordered_json::array();
  for (const ParamRange& r : cal.space) space.push_back({{"name", r.name}, {"lo", r.lo}, {"hi", r.hi}});
  j["calibration"] = {{"n_random", cal.budget.n_random},
                      {"n_sweeps", cal.budget.n_sweeps},
                      {"grid_points", cal.budget.grid_points},
                      {"keep_fraction", cal.budget.keep_fraction},
                      {"space", space},
                      {"thresholds",
                       {{"max_exposed_frac", cal.thresholds.max_exposed_frac},
                        {"min_sym_vs_confirmed", cal.thresholds.min_sym_vs_confirmed},
                        {"smoothing_window", cal.thresholds.smoothing_window}}}};
  if (cal.runs) j["calibration"]["runs"] = *cal.runs;
  return j.dump(2);
}

CountryData LoadConfiguredData(const RunConfig& config) {
  CountryData data = LoadCountry(Resolve(config, config.data), config.world.population);
  const std::size_t n = data.timeline.size();
  std::size_t from = 0, to = n;
  auto locate = [&](const std::string& text, const char* field) {
    const auto date = ParseIsoDate(text);
    if (!date) throw SchemaError(std::string("'") + field + "' is not a YYYY-MM-DD date");
    auto it = std::lower_bound(data.truth.dates.begin(), data.truth.dates.end(), *date);
    return static_cast<std::size_t>(it - data.truth.dates.begin());
  };
  if (config.start_date) from = locate(*config.start_date, "start_date");
  if (config.end_date) to = std::min(n, locate(*config.end_date, "end_date") + 1);
  if (config.days) to = std::min(to, from + static_cast<std::size_t>(*config.days));
  if (from >= to) throw InputError("the configured date window selects no days");
  if (from == 0 && to == n) return data;

  auto cut = [&](auto& v) {
    if (v.empty()) return;
    v.erase(v.begin() + static_cast<std::ptrdiff_t>(to), v.end());
    v.erase(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(from));
  };
  cut(data.timeline);
  GroundTruth& t = data.truth;
  cut(t.dates);
  cut(t.confirmed_daily);
  cut(t.confirmed_cumulative);
  cut(t.deaths_daily);
  cut(t.deaths_cumulative);
  cut(t.hospitalized_current);
  return data;
}

}  // namespace epinet::cli
