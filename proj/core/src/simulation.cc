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

#include "epinet/simulation.h"

#include <cmath>
#include <numeric>

#include <tbb/parallel_for.h>
#include <tbb/task_arena.h>

#include "epinet/errors.h"
#include "epinet/region.h"

namespace epinet {

RegionDayRecord RunTrace::CountryTotal(int day_offset) const {
  RegionDayRecord total;
  for (int r = 0; r < num_regions(); ++r) {
    const RegionDayRecord& rec = at(day_offset, r);
    for (int c = 0; c < kNumCompartments; ++c) total.counts[c] += rec.counts[c];
    total.cum_exposed += rec.cum_exposed;
    total.cum_symptomatic += rec.cum_symptomatic;
  }
  return total;
}

Aggregate SimulationResult::ComputeAggregate() const {
  Aggregate agg;
  agg.first_day = first_day;
  agg.mean.assign(num_days, {});
  agg.stddev.assign(num_days, {});
  const auto n = static_cast<double>(runs.size());
  if (runs.empty()) return agg;
  for (int d = 0; d < num_days; ++d) {
    std::array<double, kNumAggregateFields> sum{}, sum_sq{};
    for (const RunTrace& run : runs) {
      const RegionDayRecord total = run.CountryTotal(d);
      for (int f = 0; f < kNumAggregateFields; ++f) {
        const double v = f == kCumExposedField ? static_cast<double>(total.cum_exposed)
                                               : static_cast<double>(total.counts[f]);
        sum[f] += v;
        sum_sq[f] += v * v;
      }
    }
    for (int f = 0; f < kNumAggregateFields; ++f) {
      const double mean = sum[f] / n;
      agg.mean[d][f] = mean;
      agg.stddev[d][f] =
          runs.size() > 1 ? std::sqrt(std::max(0.0, (sum_sq[f] - n * mean * mean) / (n - 1)))
                          : 0.0;
    }
  }
  return agg;
}

std::vector<double> SimulationResult::CountrySeries(int run, Compartment c) const {
  std::vector<double> out(num_days);
  const RunTrace& trace = runs.at(run);
  for (int d = 0; d < num_days; ++d) {
    std::int64_t v = 0;
    for (int r = 0; r < trace.num_regions(); ++r) v += trace.at(d, r).counts[Index(c)];
    out[d] = static_cast<double>(v);
  }
  return out;
}

std::vector<double> SimulationResult::MeanCountrySeries(Compartment c) const {
  std::vector<double> out(num_days, 0.0);
  if (runs.empty()) return out;
  for (int run = 0; run < static_cast<int>(runs.size()); ++run) {
    const auto series = CountrySeries(run, c);
    for (int d = 0; d < num_days; ++d) out[d] += series[d];
  }
  for (double& v : out) v /= static_cast<double>(runs.size());
  return out;
}

StartState SnapshotBefore(const SimulationResult& result, int day) {
  const int offset = day - 1 - result.first_day;
  if (offset < 0 || offset >= result.num_days) {
    throw InputError("snapshot day " + std::to_string(day) + " outside simulated range");
  }
  const Aggregate agg = result.ComputeAggregate();
  StartState start;
  start.day = day;
  for (int c = 0; c < kNumCompartments; ++c) start.mean_counts[c] = agg.mean[offset][c];
  return start;
}

void ApplyStartState(World& world, const StartState& start) {
  const std::span<const double> weights(start.mean_counts);
  for (Region& region : world.regions) {
    const std::vector<std::int64_t> counts = Apportion(region.size(), weights);
    std::vector<NodeId> order(region.size());
    std::iota(order.begin(), order.end(), 0);
    SampleToFront(order, order.size(), region.rng);
    std::size_t next = 0;
    for (int c = 0; c < kNumCompartments; ++c) {
      for (std::int64_t k = 0; k < counts[c]; ++k) {
        region.state[order[next++]] = static_cast<Compartment>(c);
      }
    }
    const Census census = region.CountCompartments();
    region.cum_exposed = region.size() - At(census, Compartment::kS) - At(census, Compartment::kQS);
    region.cum_symptomatic = At(census, Compartment::kSy) + At(census, Compartment::kQSy) +
                             At(census, Compartment::kH) + At(census, Compartment::kD);
  }
}

RunTrace RunWorld(World& world, const PolicyTimeline& timeline, const ModelParams& params,
                  int run, int first_day, int seed_day, PolicyHook* hook) {
  const int num_days_total = static_cast<int>(timeline.size());
  if (first_day < 0 || first_day >= num_days_total) {
    throw InputError("first simulated day outside the timeline");
  }
  for (const Region& region : world.regions) region.CheckConsistency();

  const BehaviorParams& behavior = params.behavior;
  ExposureSchedule schedule(behavior.p_e_min, behavior.p_e_max, behavior.t_ramp);
  for (int d = 0; d < first_day; ++d) schedule.Advance(timeline[d].stay_home == 1);

  RunTrace trace;
  trace.run = run;
  trace.first_day = first_day;
  trace.num_days = num_days_total - first_day;
  trace.region_sizes = world.RegionSizes();
  const std::size_t m = world.regions.size();
  trace.records.resize(static_cast<std::size_t>(trace.num_days) * m);
  const std::span<const int> weights(trace.region_sizes);
  const auto regions = static_cast<int>(m);

  for (int day = first_day; day < num_days_total; ++day) {
    PolicyDay policy = timeline[day];
    if (hook != nullptr) hook->Adjust(day, policy);
    const double p_e = schedule.Advance(policy.stay_home == 1);
    if (day == seed_day) SeedInfection(world);

    const SuiteLevel level = policy.network_level();
    const std::vector<std::int64_t> tests =
        policy.testing_policy > 0
            ? Apportion(std::llround(policy.daily_tests / world.scale_factor), weights)
            : std::vector<std::int64_t>(m, 0);
    const std::vector<std::int64_t> doses =
        Apportion(std::llround(policy.daily_vaccines / world.scale_factor), weights);

    tbb::parallel_for(0, regions, [&](int r) {
      Region& region = world.regions[r];
      StepRegion(region, {level, p_e}, params.epi);
      Vaccinate(region, doses[r]);
      const std::vector<NodeId> positives =
          RunTesting(region, tests[r], policy.testing_policy);
      TraceContacts(region, positives, level, policy.contact_tracing, behavior.p_ct_2,
                    behavior.p_ct_3);
    });

    const std::vector<double> expected =
        ExpectedMixingExposures(world, p_e, policy.internal_travel_open());
    const std::size_t offset = static_cast<std::size_t>(day - first_day) * m;
    tbb::parallel_for(0, regions, [&](int r) {
      Region& region = world.regions[r];
      ApplyMixingExposures(region, expected[r], params.epi.v_eff1);
      if (policy.international_open) ImportCase(region, world.p_int);
      RegionDayRecord& rec = trace.records[offset + r];
      rec.counts = region.CountCompartments();
      rec.cum_exposed = region.cum_exposed;
      rec.cum_symptomatic = region.cum_symptomatic;
    });

    if (hook != nullptr) {
      hook->Observe(day, trace.CountryTotal(day - first_day).counts, world.n_total);
    }
  }
  if (hook != nullptr) {
    trace.controller_log = hook->Log();
    trace.lockdown_days = hook->ActiveDays();
  }
  return trace;
}

SimulationResult RunSimulation(const WorldConfig& config, const PolicyTimeline& timeline,
                               const ModelParams& params, const SimulationOptions& options) {
  params.Validate();
  config.Validate();
  ValidateTimeline(timeline);
  if (options.n_runs < 1) throw InputError("need at least one run");
  const int first_day = options.start ? options.start->day : 0;

  SimulationResult result;
  result.first_day = first_day;
  result.num_days = static_cast<int>(timeline.size()) - first_day;
  result.n_total = config.TargetNodes();
  result.runs.resize(options.n_runs);

  tbb::task_arena arena(options.threads > 0 ? options.threads
                                            : tbb::task_arena::automatic);
  arena.execute([&] {
    tbb::parallel_for(0, options.n_runs, [&](int run) {
      World world = BuildWorld(config, params.behavior, options.seed, run);
      if (options.start) ApplyStartState(world, *options.start);
      std::unique_ptr<PolicyHook> hook = options.hook ? options.hook() : nullptr;
      result.runs[run] =
          RunWorld(world, timeline, params, run, first_day, options.seed_day, hook.get());
    });
  });
  return result;
}

}  // namespace epinet
