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

#include "epinet/scenario.h"

#include <algorithm>
#include <memory>
#include <numeric>

#include "epinet/errors.h"
#include "json.hpp"

namespace epinet {

void ScenarioSpec::Validate() const {
  if (kind < 1 || kind > 10) throw InputError("scenario kind must be 1-10");
  if (!(k >= 0.0)) throw InputError("scenario factor k must be >= 0");
  if (kind == 9 && (t0 < 30 || t0 > 180)) throw InputError("t0 must be in [30, 180]");
  if (kind == 10) {
    if (!(h_lock > 0.0)) throw InputError("h_lock must be > 0");
    if (t_lock < 1) throw InputError("t_lock must be >= 1");
  }
  if (start_day && *start_day < 0) throw InputError("start_day must be >= 0");
  if (runs && *runs < 1) throw InputError("runs must be >= 1");
}

ScenarioSpec ParseScenarioSpec(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(std::string("scenario: ") + e.what());
  }
  if (!j.is_object()) throw SchemaError("scenario: expected an object");
  ScenarioSpec spec;
  auto integer = [&](const std::string& key) {
    const auto& v = j.at(key);
    if (!v.is_number_integer()) throw SchemaError("scenario: '" + key + "' must be an integer");
    return v.get<int>();
  };
  auto number = [&](const std::string& key) {
    const auto& v = j.at(key);
    if (!v.is_number()) throw SchemaError("scenario: '" + key + "' must be a number");
    return v.get<double>();
  };
  if (!j.contains("kind")) throw SchemaError("scenario: missing 'kind'");
  for (const auto& [key, value] : j.items()) {
    if (key == "kind") {
      spec.kind = integer(key);
    } else if (key == "k") {
      spec.k = number(key);
    } else if (key == "t0") {
      spec.t0 = integer(key);
    } else if (key == "h_lock") {
      spec.h_lock = number(key);
    } else if (key == "t_lock") {
      spec.t_lock = integer(key);
    } else if (key == "start_day") {
      spec.start_day = integer(key);
    } else if (key == "runs") {
      spec.runs = integer(key);
    } else {
      throw SchemaError("scenario: unknown field '" + key + "'");
    }
  }
  spec.Validate();
  return spec;
}

namespace {

void LiftRestrictions(PolicyDay& day) {
  day.stay_home = 0;
  day.school_closing = 0;
  day.workplace_closing = 0;
  day.transport_closing = 0;
  day.international_open = true;
  day.internal_movement.reset();
}

void StopTesting(PolicyDay& day) {
  day.daily_tests = 0.0;
  day.testing_policy = 0;
  day.contact_tracing = 1;
}

}  // namespace

ScenarioPlan ApplyScenario(const PolicyTimeline& baseline, const ModelParams& params,
                           const ScenarioSpec& spec) {
  spec.Validate();
  ScenarioPlan plan{baseline, params, std::nullopt};
  PolicyTimeline& tl = plan.timeline;
  switch (spec.kind) {
    case 1:
      for (PolicyDay& d : tl) {
        LiftRestrictions(d);
        StopTesting(d);
        d.daily_vaccines = 0.0;
      }
      break;
    case 2:
      for (PolicyDay& d : tl) LiftRestrictions(d);
      break;
    case 3:
      for (PolicyDay& d : tl) StopTesting(d);
      break;
    case 4:
      for (PolicyDay& d : tl) d.stay_home = 0;
      break;
    case 5:
      for (PolicyDay& d : tl) {
        const int level = d.stay_home == 1 ? 3 : 0;
        d.school_closing = level;
        d.workplace_closing = level;
      }
      break;
    case 6:
      plan.params.epi.v_eff1 = std::clamp(params.epi.v_eff1 * spec.k, 0.0, 1.0);
      plan.params.epi.v_eff2 = std::clamp(params.epi.v_eff2 * spec.k, 0.0, 1.0);
      break;
    case 7:
      for (PolicyDay& d : tl) d.daily_vaccines *= spec.k;
      break;
    case 8:
      for (PolicyDay& d : tl) d.daily_tests *= spec.k;
      break;
    case 9: {
      if (spec.t0 >= static_cast<int>(tl.size())) throw InputError("t0 beyond the timeline");
      double total = 0.0;
      for (const PolicyDay& d : tl) total += d.daily_tests;
      const double average = tl.empty() ? 0.0 : total / static_cast<double>(tl.size());
      for (int day = 0; day < static_cast<int>(tl.size()); ++day) {
        PolicyDay& d = tl[day];
        if (day < spec.t0) {
          d.daily_tests = 0.0;
        } else {
          d.daily_tests = average;
          // Tests are only administered under a non-zero testing policy.
          d.testing_policy = std::max(d.testing_policy, 1);
        }
      }
      break;
    }
    case 10:
      plan.controller = ControllerConfig{spec.h_lock, spec.t_lock};
      break;
    default:
      throw InputError("scenario kind must be 1-10");
  }
  return plan;
}

LockdownController::LockdownController(const ControllerConfig& config) : config_(config) {
  if (!(config.h_lock > 0.0)) throw InputError("h_lock must be > 0");
  if (config.t_lock < 1) throw InputError("t_lock must be >= 1");
}

bool LockdownController::Observe(std::int64_t hospitalized, std::int64_t n_total) {
  const double share = static_cast<double>(hospitalized) / static_cast<double>(n_total);
  if (!on_) {
    if (share >= config_.h_lock) {
      on_ = true;
      below_ = 0;
    }
  } else if (share < config_.h_lock) {
    if (++below_ >= config_.t_lock) {
      on_ = false;
      below_ = 0;
    }
  } else {
    below_ = 0;
  }
  return on_;
}

void ControllerHook::Adjust(int /*day*/, PolicyDay& policy) {
  const int closing = in_effect_ ? 3 : 0;
  policy.stay_home = in_effect_ ? 1 : 0;
  policy.school_closing = closing;
  policy.workplace_closing = closing;
  policy.internal_movement.reset();
  if (in_effect_) ++active_days_;
}

void ControllerHook::Observe(int day, const Census& totals, std::int64_t n_total) {
  const std::int64_t hospitalized = At(totals, Compartment::kH);
  in_effect_ = controller_.Observe(hospitalized, n_total);
  log_.push_back({day, hospitalized, in_effect_});
}

PolicyHookFactory MakeControllerFactory(const ControllerConfig& config) {
  return [config] { return std::make_unique<ControllerHook>(config); };
}

double CountLockdownDays(const SimulationResult& result) {
  if (result.runs.empty()) return 0.0;
  double total = 0.0;
  for (const RunTrace& run : result.runs) total += run.lockdown_days;
  return total / static_cast<double>(result.runs.size());
}

ScenarioRun RunScenario(const WorldConfig& config, const PolicyTimeline& timeline,
                        const ModelParams& params, const ScenarioSpec& spec,
                        SimulationOptions options, const SimulationResult* baseline) {
  ScenarioRun out;
  out.plan = ApplyScenario(timeline, params, spec);
  if (spec.runs) options.n_runs = *spec.runs;
  if (out.plan.controller) options.hook = MakeControllerFactory(*out.plan.controller);
  if (spec.start_day) {
    if (baseline == nullptr) throw InputError("start_day needs a baseline result");
    options.start = SnapshotBefore(*baseline, *spec.start_day);
  }
  out.result = RunSimulation(config, out.plan.timeline, out.plan.params, options);
  return out;
}

}  // namespace epinet
