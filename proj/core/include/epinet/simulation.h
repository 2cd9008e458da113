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

#ifndef EPINET_SIMULATION_H_
#define EPINET_SIMULATION_H_

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "epinet/compartments.h"
#include "epinet/interventions.h"
#include "epinet/params.h"
#include "epinet/world.h"

namespace epinet {

struct RegionDayRecord {
  Census counts{};
  std::int64_t cum_exposed = 0;
  std::int64_t cum_symptomatic = 0;
  bool operator==(const RegionDayRecord&) const = default;
};

struct ControllerLogEntry {
  int day = 0;
  std::int64_t hospitalized = 0;
  bool flag = false;
  bool operator==(const ControllerLogEntry&) const = default;
};

// End-of-day records of one run, day-major: records[(day - first_day) * m + r].
struct RunTrace {
  int run = 0;
  int first_day = 0;
  int num_days = 0;
  std::vector<int> region_sizes;
  std::vector<RegionDayRecord> records;
  std::vector<ControllerLogEntry> controller_log;
  int lockdown_days = 0;

  int num_regions() const { return static_cast<int>(region_sizes.size()); }
  const RegionDayRecord& at(int day_offset, int region) const {
    return records[static_cast<std::size_t>(day_offset) * region_sizes.size() +
                   static_cast<std::size_t>(region)];
  }
  RegionDayRecord CountryTotal(int day_offset) const;
};

// Aggregated quantities: the 11 compartments followed by cumulative exposed.
inline constexpr int kNumAggregateFields = kNumCompartments + 1;
inline constexpr int kCumExposedField = kNumCompartments;

struct Aggregate {
  int first_day = 0;
  std::vector<std::array<double, kNumAggregateFields>> mean;
  std::vector<std::array<double, kNumAggregateFields>> stddev;  // sample, n-1
};

struct SimulationResult {
  int first_day = 0;
  int num_days = 0;
  std::int64_t n_total = 0;
  std::vector<RunTrace> runs;

  Aggregate ComputeAggregate() const;
  // Country total of a compartment for one run, one value per day.
  std::vector<double> CountrySeries(int run, Compartment c) const;
  // Mean over runs of the country total.
  std::vector<double> MeanCountrySeries(Compartment c) const;
};

// Per-run hook that may rewrite the day's policy before it is applied and
// observes the country census at the end of every day.
class PolicyHook {
 public:
  virtual ~PolicyHook() = default;
  virtual void Adjust(int day, PolicyDay& policy) = 0;
  virtual void Observe(int day, const Census& totals, std::int64_t n_total) = 0;
  virtual std::vector<ControllerLogEntry> Log() const { return {}; }
  virtual int ActiveDays() const { return 0; }
};

using PolicyHookFactory = std::function<std::unique_ptr<PolicyHook>()>;

// Country-level compartment means used to start runs mid-timeline.
struct StartState {
  int day = 0;
  std::array<double, kNumCompartments> mean_counts{};
};

// Mean country census at the end of `day - 1` (the state `day` starts from).
StartState SnapshotBefore(const SimulationResult& result, int day);

// Reassigns every region's nodes so its compartment mix matches the
// snapshot proportions (largest-remainder rounding, random placement).
void ApplyStartState(World& world, const StartState& start);

struct SimulationOptions {
  int n_runs = 10;
  std::uint64_t seed = 42;
  int threads = 0;  // 0: library default
  int seed_day = 30;
  std::optional<StartState> start;
  PolicyHookFactory hook;
};

// Runs one already-built world through the timeline from `first_day`.
RunTrace RunWorld(World& world, const PolicyTimeline& timeline, const ModelParams& params,
                  int run, int first_day, int seed_day, PolicyHook* hook);

// Builds a fresh world for each run and simulates the whole timeline (or
// from options.start). Parameter invariants are checked before day 0.
SimulationResult RunSimulation(const WorldConfig& config, const PolicyTimeline& timeline,
                               const ModelParams& params, const SimulationOptions& options);

}  // namespace epinet

#endif  // EPINET_SIMULATION_H_
