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

#ifndef EPINET_TOOLS_RUN_CONFIG_H_
#define EPINET_TOOLS_RUN_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "epinet/calibration.h"
#include "epinet/data_io.h"
#include "epinet/params.h"
#include "epinet/scenario.h"
#include "epinet/world.h"

namespace epinet::cli {

struct CalibrationConfig {
  SearchBudget budget;
  ParamSpace space = BehaviorSearchSpace();
  ScoreThresholds thresholds;
  std::optional<int> runs;  // runs per candidate, defaults to the top-level runs
};

// One job description. Input paths (data, params_file) are resolved against
// the directory of the configuration file; the output directory is taken as
// given.
struct RunConfig {
  std::filesystem::path base_dir;
  std::filesystem::path data;
  WorldConfig world;
  std::optional<int> vaccination_start_day;
  std::optional<std::string> start_date;
  std::optional<std::string> end_date;
  std::optional<int> days;
  ModelParams params;
  int runs = 10;
  std::uint64_t seed = 0;
  int threads = 0;
  int seed_day = 30;
  std::filesystem::path out = "out";
  std::optional<ScenarioSpec> scenario;
  CalibrationConfig calibration;
  std::vector<std::filesystem::path> inputs;  // files read while resolving
};

// Throws SchemaError naming the offending field; InputError for bad values.
RunConfig ParseRunConfig(const std::string& json_text, const std::filesystem::path& base_dir);
RunConfig LoadRunConfig(const std::filesystem::path& path);

// The resolved configuration as JSON text, enough to re-run the job.
std::string ResolvedConfigJson(const RunConfig& config);

// Country data restricted to the configured date window.
CountryData LoadConfiguredData(const RunConfig& config);

std::filesystem::path Resolve(const RunConfig& config, const std::filesystem::path& path);

}  // namespace epinet::cli

#endif  // EPINET_TOOLS_RUN_CONFIG_H_
