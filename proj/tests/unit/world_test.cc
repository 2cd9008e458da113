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

#include "epinet/world.h"

#include <numeric>

#include <gtest/gtest.h>

#include "epinet/errors.h"
#include "epinet/simulation.h"
#include "test_util.h"

namespace epinet {
namespace {

using testing::BinomialMeanSigma;
using testing::RegionOn;
using testing::WorldOf;

WorldConfig Isr() {
  WorldConfig c;
  c.population = 9.2e6;
  c.child_fraction = 0.27;
  return c;
}

TEST(RegionSizesTest, IsrDecomposition) {
  const WorldConfig config = Isr();
  EXPECT_EQ(config.TargetNodes(), 92000);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const auto sizes = DrawRegionSizes(config.TargetNodes(), config, rng);
    EXPECT_NEAR(static_cast<double>(sizes.size()), 31.0, 1.0);
    EXPECT_EQ(std::accumulate(sizes.begin(), sizes.end(), std::int64_t{0}), 92000);
    for (int s : sizes) {
      EXPECT_GE(s, 2500);
      EXPECT_LE(s, 3500);
    }
  }
}

TEST(RegionSizesTest, TooSmallPopulationIsRejected) {
  WorldConfig c;
  c.population = 1000 * 100.0;
  Rng rng(1);
  EXPECT_THROW(DrawRegionSizes(c.TargetNodes(), c, rng), InputError);
}

TEST(ApportionTest, LargestRemainder) {
  const double w[] = {1, 1, 1};
  EXPECT_EQ(Apportion(10, std::span<const double>(w)), (std::vector<std::int64_t>{4, 3, 3}));
  const int sizes[] = {2500, 3500};
  EXPECT_EQ(Apportion(7, std::span<const int>(sizes)), (std::vector<std::int64_t>{3, 4}));
  EXPECT_EQ(Apportion(0, std::span<const int>(sizes)), (std::vector<std::int64_t>{0, 0}));
}

TEST(BuildWorldTest, ChildFlagsAndInitialState) {
  WorldConfig c;
  c.population = 9000 * 100.0;
  c.child_fraction = 0.0;
  const World w = BuildWorld(c, BehaviorParams::Gbr(), 3, 0);
  EXPECT_EQ(w.n_total, 9000);
  EXPECT_EQ(w.regions.size(), 3u);
  for (const Region& r : w.regions) {
    for (const NodeFlags& f : r.flags) ASSERT_FALSE(f.child);
    EXPECT_EQ(At(r.CountCompartments(), Compartment::kS), r.size());
  }
  c.child_fraction = 0.18;
  const World kids = BuildWorld(c, BehaviorParams::Gbr(), 3, 0);
  for (const Region& r : kids.regions) {
    int n = 0;
    for (const NodeFlags& f : r.flags) n += f.child;
    EXPECT_EQ(n, std::llround(0.18 * r.size()));
  }
}

TEST(SeedTest, OneExposedPerRegion) {
  WorldConfig c;
  c.population = 12000 * 100.0;
  World w = BuildWorld(c, BehaviorParams::Gbr(), 5, 0);
  EXPECT_EQ(SeedInfection(w), static_cast<int>(w.regions.size()));
  EXPECT_EQ(At(w.CountCompartments(), Compartment::kE), static_cast<std::int64_t>(w.regions.size()));
}

World TwoRegions(double r_mix) {
  std::vector<Region> regions;
  regions.push_back(RegionOn(Network(3000), 1, 0));
  regions.push_back(RegionOn(Network(3000), 2, 1));
  for (int i = 2000; i < 3000; ++i) regions[0].state[i] = Compartment::kR;
  for (int i = 0; i < 100; ++i) regions[1].state[i] = Compartment::kAsy;
  for (int i = 100; i < 3000; ++i) regions[1].state[i] = Compartment::kR;
  return WorldOf(std::move(regions), r_mix);
}

TEST(MixingTest, WorkedExample) {
  const World w = TwoRegions(0.065);
  const auto e = ExpectedMixingExposures(w, 0.33, true);
  EXPECT_NEAR(e[0], 0.065 * 0.33 / 6000 * 100 * 2000, 1e-12);
  EXPECT_NEAR(e[0], 0.715, 1e-12);
  EXPECT_EQ(e[1], 0.0);  // region 2 has no susceptibles
}

TEST(MixingTest, AsWrittenIndexOrder) {
  World w = TwoRegions(0.065);
  w.mixing_order = MixingIndexOrder::kAsWritten;
  const auto e = ExpectedMixingExposures(w, 0.33, true);
  EXPECT_EQ(e[0], 0.0);  // I_1 = 0
  EXPECT_NEAR(e[1], 0.065 * 0.33 / 6000 * 100 * 2000, 1e-12);
}

TEST(MixingTest, ZeroWhenClosedUnmixedOrAlone) {
  EXPECT_EQ(ExpectedMixingExposures(TwoRegions(0.065), 0.33, false)[0], 0.0);
  EXPECT_EQ(ExpectedMixingExposures(TwoRegions(0.0), 0.33, true)[0], 0.0);
  std::vector<Region> one;
  one.push_back(RegionOn(Network(100), 1));
  one[0].state[0] = Compartment::kSy;
  EXPECT_EQ(ExpectedMixingExposures(WorldOf(std::move(one), 1.0), 0.5, true)[0], 0.0);
}

TEST(MixingTest, QuarantinedAndHospitalizedDoNotMix) {
  World w = TwoRegions(0.065);
  for (int i = 0; i < 50; ++i) w.regions[1].state[i] = Compartment::kQAsy;
  for (int i = 50; i < 100; ++i) w.regions[1].state[i] = Compartment::kH;
  EXPECT_EQ(ExpectedMixingExposures(w, 0.33, true)[0], 0.0);
}

TEST(MixingTest, StochasticRoundingPreservesExpectation) {
  constexpr int kTrials = 40000;
  Region r = RegionOn(Network(500), 3);
  double total = 0.0;
  for (int t = 0; t < kTrials; ++t) {
    std::fill(r.state.begin(), r.state.end(), Compartment::kS);
    total += static_cast<double>(ApplyMixingExposures(r, 2.715, 0.95));
  }
  EXPECT_NEAR(total / kTrials, 2.715, 3 * BinomialMeanSigma(1, 0.715, kTrials));
}

TEST(MixingTest, VaccinatedPicksEscape) {
  Region r = RegionOn(Network(400), 4);
  for (auto& f : r.flags) f.vaccinated = true;
  EXPECT_EQ(ApplyMixingExposures(r, 300.0, 1.0), 0);
  EXPECT_EQ(ApplyMixingExposures(r, 300.0, 0.0), 300);
  EXPECT_EQ(r.cum_exposed, 300);
  // The draw never exceeds the susceptible pool.
  EXPECT_EQ(ApplyMixingExposures(r, 1000.0, 0.0), 100);
}

TEST(ImportTest, BinomialCountOverOpenDays) {
  // 31 regions x 600 open days at p_int = 0.01: 186 imports expected.
  std::vector<Region> regions;
  for (int i = 0; i < 31; ++i) regions.push_back(RegionOn(Network(3000), 50 + i, i));
  World w = WorldOf(std::move(regions));
  w.p_int = 0.01;
  int total = 0;
  for (int day = 0; day < 600; ++day) total += ImportCases(w, true);
  EXPECT_NEAR(total, 186.0, 3 * std::sqrt(31 * 600 * 0.01 * 0.99));
  EXPECT_EQ(At(w.CountCompartments(), Compartment::kE), total);
  for (int day = 0; day < 600; ++day) ASSERT_EQ(ImportCases(w, false), 0);
}

TEST(ImportTest, NoSusceptiblesNoImport) {
  Region r = RegionOn(Network(20), 5);
  std::fill(r.state.begin(), r.state.end(), Compartment::kR);
  for (int i = 0; i < 100; ++i) EXPECT_FALSE(ImportCase(r, 1.0));
}

TEST(IndependenceTest, UnmixedRegionEvolvesAloneOrTogether) {
  // Without mixing or imports a region's trajectory depends only on its own
  // stream, so simulating it among others changes nothing.
  WorldConfig config;
  config.population = 7500 * 100.0;
  config.child_fraction = 0.2;
  const RegionSpec all[] = {{0, 2500}, {1, 2500}, {2, 2500}};
  const RegionSpec only[] = {{1, 2500}};
  ModelParams params;
  params.behavior.r_mix = 0.0;
  PolicyTimeline timeline = testing::QuietTimeline(150);
  World full = MakeWorld(all, config, params.behavior, 9, 0);
  World alone = MakeWorld(only, config, params.behavior, 9, 0);
  const RunTrace a = RunWorld(full, timeline, params, 0, 0, 10, nullptr);
  const RunTrace b = RunWorld(alone, timeline, params, 0, 0, 10, nullptr);
  for (int d = 0; d < 150; ++d) ASSERT_EQ(a.at(d, 1), b.at(d, 0)) << d;
  EXPECT_GT(a.at(149, 1).cum_exposed, 1);
}

}  // namespace
}  // namespace epinet
