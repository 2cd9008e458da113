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

#include <gtest/gtest.h>

#include "epinet/errors.h"
#include "test_util.h"

namespace epinet {
namespace {

WorldConfig SmallWorld() {
  WorldConfig c;
  c.population = 9000 * 100.0;
  c.child_fraction = 0.2;
  return c;
}

PolicyTimeline ActiveTimeline(int days) {
  PolicyTimeline t = testing::QuietTimeline(days);
  for (int d = 0; d < days; ++d) {
    t[d].international_open = true;
    t[d].testing_policy = d > 60 ? 2 : 0;
    t[d].contact_tracing = d > 60 ? 2 : 1;
    t[d].daily_tests = d > 60 ? 20000.0 : 0.0;
    t[d].daily_vaccines = d > 90 ? 5000.0 : 0.0;
    t[d].stay_home = (d > 70 && d < 100) ? 1 : 0;
    t[d].school_closing = (d > 70 && d < 100) ? 3 : 0;
  }
  return t;
}

SimulationOptions Options(int runs, int threads) {
  SimulationOptions o;
  o.n_runs = runs;
  o.seed = 17;
  o.threads = threads;
  return o;
}

TEST(SimulationTest, ConservesNodesEveryDay) {
  const SimulationResult result =
      RunSimulation(SmallWorld(), ActiveTimeline(200), ModelParams{}, Options(3, 1));
  ASSERT_EQ(result.n_total, 9000);
  for (const RunTrace& run : result.runs) {
    for (int d = 0; d < result.num_days; ++d) {
      for (int r = 0; r < run.num_regions(); ++r) {
        ASSERT_EQ(Total(run.at(d, r).counts), run.region_sizes[r]);
      }
      ASSERT_EQ(Total(run.CountryTotal(d).counts), 9000);
    }
  }
}

TEST(SimulationTest, NothingHappensBeforeSeedDay) {
  PolicyTimeline t = testing::QuietTimeline(60);
  const SimulationResult result = RunSimulation(SmallWorld(), t, ModelParams{}, Options(2, 1));
  const auto s = result.MeanCountrySeries(Compartment::kS);
  for (int d = 0; d < 30; ++d) EXPECT_EQ(s[d], 9000.0) << d;
  EXPECT_LT(s[30], 9000.0);
}

TEST(SimulationTest, WithoutSeedStateIsConstant) {
  PolicyTimeline t = testing::QuietTimeline(80);
  SimulationOptions o = Options(1, 1);
  o.seed_day = 1000;
  for (double p_e : {0.1, 0.9}) {
    ModelParams params;
    params.behavior.p_e_min = p_e / 2;
    params.behavior.p_e_max = p_e;
    const SimulationResult result = RunSimulation(SmallWorld(), t, params, o);
    for (int d = 0; d < result.num_days; ++d) {
      ASSERT_EQ(result.runs[0].CountryTotal(d).counts[Index(Compartment::kS)], 9000);
    }
  }
}

TEST(SimulationTest, IdenticalAcrossThreadCounts) {
  const PolicyTimeline t = ActiveTimeline(150);
  const SimulationResult a = RunSimulation(SmallWorld(), t, ModelParams{}, Options(4, 1));
  const SimulationResult b = RunSimulation(SmallWorld(), t, ModelParams{}, Options(4, 4));
  const SimulationResult c = RunSimulation(SmallWorld(), t, ModelParams{}, Options(4, 1));
  for (int run = 0; run < 4; ++run) {
    EXPECT_EQ(a.runs[run].records, b.runs[run].records);
    EXPECT_EQ(a.runs[run].records, c.runs[run].records);
  }
}

TEST(SimulationTest, RunsDifferFromEachOther) {
  const SimulationResult r =
      RunSimulation(SmallWorld(), ActiveTimeline(150), ModelParams{}, Options(2, 1));
  EXPECT_NE(r.runs[0].records, r.runs[1].records);
}

TEST(SimulationTest, AggregateMatchesDirectComputation) {
  const SimulationResult result =
      RunSimulation(SmallWorld(), ActiveTimeline(120), ModelParams{}, Options(3, 1));
  const Aggregate agg = result.ComputeAggregate();
  for (int d : {0, 45, 119}) {
    std::vector<double> e;
    for (const RunTrace& run : result.runs) {
      e.push_back(static_cast<double>(run.CountryTotal(d).counts[Index(Compartment::kE)]));
    }
    EXPECT_NEAR(agg.mean[d][Index(Compartment::kE)], testing::Mean(e), 1e-9);
    EXPECT_NEAR(agg.stddev[d][Index(Compartment::kE)],
                std::sqrt(testing::SampleVariance(e)), 1e-9);
  }
}

TEST(SimulationTest, InvalidParamsRejectedBeforeRunning) {
  ModelParams params;
  params.epi.p_i = 1.5;
  EXPECT_THROW(RunSimulation(SmallWorld(), ActiveTimeline(10), params, Options(1, 1)),
               InvariantError);
}

TEST(SimulationTest, QuarantineStaysEmptyWithoutTestingOrTracing) {
  PolicyTimeline t = testing::QuietTimeline(160);
  for (auto& day : t) day.international_open = true;
  const SimulationResult result = RunSimulation(SmallWorld(), t, ModelParams{}, Options(2, 1));
  for (Compartment c : {Compartment::kQS, Compartment::kQE, Compartment::kQAsy,
                        Compartment::kQSy}) {
    for (double v : result.MeanCountrySeries(c)) ASSERT_EQ(v, 0.0);
  }
  EXPECT_GT(result.runs[0].CountryTotal(159).cum_exposed, 9);
}

TEST(SimulationTest, ChildrenAreNeverVaccinated) {
  const WorldConfig config = SmallWorld();
  World world = BuildWorld(config, BehaviorParams::Gbr(), 4, 0);
  PolicyTimeline t = testing::QuietTimeline(40);
  for (auto& day : t) day.daily_vaccines = 1e6;  // 10000 doses a day
  RunWorld(world, t, ModelParams{}, 0, 0, 30, nullptr);
  int adults = 0;
  for (const Region& r : world.regions) {
    for (const NodeFlags& f : r.flags) {
      ASSERT_FALSE(f.child && f.vaccinated);
      adults += !f.child && f.vaccinated;
    }
  }
  EXPECT_GT(adults, 6000);
}

TEST(SnapshotTest, StartStateReproducesMeanCounts) {
  const WorldConfig config = SmallWorld();
  const PolicyTimeline t = ActiveTimeline(150);
  const SimulationResult base = RunSimulation(config, t, ModelParams{}, Options(3, 1));
  const StartState start = SnapshotBefore(base, 100);
  EXPECT_EQ(start.day, 100);
  double sum = 0.0;
  for (double v : start.mean_counts) sum += v;
  EXPECT_NEAR(sum, 9000.0, 1e-9);

  World world = BuildWorld(config, BehaviorParams::Gbr(), 5, 0);
  ApplyStartState(world, start);
  const Census census = world.CountCompartments();
  EXPECT_EQ(Total(census), 9000);
  for (int c = 0; c < kNumCompartments; ++c) {
    EXPECT_NEAR(static_cast<double>(census[c]), start.mean_counts[c],
                static_cast<double>(world.regions.size()));
  }

  SimulationOptions o = Options(2, 1);
  o.start = start;
  const SimulationResult resumed = RunSimulation(config, t, ModelParams{}, o);
  EXPECT_EQ(resumed.first_day, 100);
  EXPECT_EQ(resumed.num_days, 50);
  EXPECT_THROW(SnapshotBefore(base, 0), InputError);
  EXPECT_THROW(SnapshotBefore(base, 151), InputError);
}

}  // namespace
}  // namespace epinet
