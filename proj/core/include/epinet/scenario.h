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

#ifndef EPINET_SCENARIO_H_
#define EPINET_SCENARIO_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "epinet/interventions.h"
#include "epinet/params.h"
#include "epinet/simulation.h"
#include "epinet/world.h"

namespace epinet {

// Counterfactual policy variants.
//   1  no measures at all            6  vaccine efficacy x k
//   2  no restrictions               7  daily vaccines x k
//   3  no testing or tracing         8  daily tests x k
//   4  no stay-home orders           9  no tests before t0, flat rate after
//   5  schools/work shut on lockdown 10 hospital-driven lockdown controller
struct ScenarioSpec {
  int kind = 0;
  double k = 1.0;
  int t0 = 30;
  double h_lock = 0.0;  // share of nodes hospitalized that triggers lockdown
  int t_lock = 0;       // consecutive days below h_lock needed to lift it
  std::optional<int> start_day;  // kinds 6-7: start from a baseline snapshot
  std::optional<int> runs;

  // Throws InputError naming the offending field.
  void Validate() const;
};

// Parses {"kind": 10, "h_lock": 5e-6, "t_lock": 7, "runs": 10}. Unknown keys
// are rejected. Throws SchemaError on wrong types, InputError on bad values.
ScenarioSpec ParseScenarioSpec(std::string_view json_text);

struct ControllerConfig {
  double h_lock = 0.0;
  int t_lock = 1;
};

struct ScenarioPlan {
  PolicyTimeline timeline;
  ModelParams params;
  std::optional<ControllerConfig> controller;
};

ScenarioPlan ApplyScenario(const PolicyTimeline& baseline, const ModelParams& params,
                           const ScenarioSpec& spec);

// Hysteresis on the hospitalized share: switches ON when it reaches h_lock
// and OFF once it has stayed below h_lock for t_lock consecutive days.
class LockdownController {
 public:
  explicit LockdownController(const ControllerConfig& config);

  // Feeds one end-of-day observation; returns the flag for the next day.
  bool Observe(std::int64_t hospitalized, std::int64_t n_total);
  bool on() const { return on_; }

 private:
  ControllerConfig config_;
  bool on_ = false;
  int below_ = 0;
};

// Runs the controller inside a simulation. Each day's decision takes effect
// the following day: ON forces stay_home=1 and school/workplace closing 3,
// OFF sets all three to 0. Log entries carry the decision made after the
// day's observation.
class ControllerHook : public PolicyHook {
 public:
  explicit ControllerHook(const ControllerConfig& config) : controller_(config) {}

  void Adjust(int day, PolicyDay& policy) override;
  void Observe(int day, const Census& totals, std::int64_t n_total) override;
  std::vector<ControllerLogEntry> Log() const override { return log_; }
  int ActiveDays() const override { return active_days_; }

 private:
  LockdownController controller_;
  bool in_effect_ = false;
  int active_days_ = 0;
  std::vector<ControllerLogEntry> log_;
};

PolicyHookFactory MakeControllerFactory(const ControllerConfig& config);

// Mean over runs of the days spent under controller lockdown.
double CountLockdownDays(const SimulationResult& result);

struct ScenarioRun {
  ScenarioPlan plan;
  SimulationResult result;
};

// Applies the scenario and simulates it. When spec.start_day is set the runs
// start from the mean state of `baseline` on that day, which must then be
// given.
ScenarioRun RunScenario(const WorldConfig& config, const PolicyTimeline& timeline,
                        const ModelParams& params, const ScenarioSpec& spec,
                        SimulationOptions options, const SimulationResult* baseline);

}  // namespace epinet

#endif  // EPINET_SCENARIO_H_
