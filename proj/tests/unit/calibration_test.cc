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

#include "epinet/calibration.h"

#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "epinet/errors.h"
#include "json.hpp"
#include "test_util.h"

namespace epinet {
namespace {

// One region whose hospitalized and dead counts follow the given series.
SimulationResult FakeResult(const std::vector<double>& hosp, const std::vector<double>& dead,
                            std::int64_t cum_exposed, int n = 1000) {
  SimulationResult r;
  r.num_days = static_cast<int>(hosp.size());
  r.n_total = n;
  RunTrace run;
  run.num_days = r.num_days;
  run.region_sizes = {n};
  for (int d = 0; d < r.num_days; ++d) {
    RegionDayRecord rec;
    At(rec.counts, Compartment::kH) = static_cast<std::int64_t>(hosp[d]);
    At(rec.counts, Compartment::kD) = static_cast<std::int64_t>(dead[d]);
    At(rec.counts, Compartment::kS) = n - At(rec.counts, Compartment::kH) -
                                      At(rec.counts, Compartment::kD);
    rec.cum_exposed = cum_exposed;
    rec.cum_symptomatic = cum_exposed / 2;
    run.records.push_back(rec);
  }
  r.runs.push_back(run);
  return r;
}

GroundTruth TruthFrom(const std::vector<double>& hosp, const std::vector<double>& dead) {
  GroundTruth gt;
  gt.hospitalized_current = hosp;
  gt.deaths_daily = ClampedDifferences(dead);
  gt.deaths_cumulative = dead;
  gt.dates.resize(hosp.size());
  return gt;
}

std::vector<double> Wave(int days, double height) {
  std::vector<double> v(days);
  for (int d = 0; d < days; ++d) {
    v[d] = std::round(height * std::exp(-std::pow((d - days / 2.0) / (days / 6.0), 2)));
  }
  return v;
}

std::vector<double> Cumulative(int days, double total) {
  std::vector<double> v(days);
  for (int d = 0; d < days; ++d) v[d] = std::round(total * d / (days - 1.0));
  return v;
}

TEST(MetricTest, SmapeExamples) {
  const double f[] = {2}, a[] = {1}, z[] = {0};
  EXPECT_NEAR(Smape(f, a), 200.0 / 3.0, 1e-12);
  EXPECT_EQ(Smape(z, z), 0.0);
  EXPECT_EQ(Smape(f, f), 0.0);
  const double two[] = {1, 2};
  EXPECT_THROW(Smape(f, two), InputError);
}

TEST(MetricTest, SmapeSymmetricAndBounded) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> x(20), y(20);
    for (int i = 0; i < 20; ++i) {
      x[i] = u(gen);
      y[i] = u(gen);
    }
    const double s = Smape(x, y);
    EXPECT_NEAR(s, Smape(y, x), 1e-12);
    EXPECT_GE(s, 0.0);
    EXPECT_LE(s, 200.0);
  }
}

TEST(MetricTest, PearsonExamples) {
  const double x[] = {1, 2, 3}, y[] = {1, 2, 4}, neg[] = {-1, -2, -3};
  EXPECT_NEAR(Pearson(x, y), 3.0 / std::sqrt(2.0 * 42.0 / 9.0), 1e-15);
  EXPECT_NEAR(Pearson(x, y), 0.982, 5e-4);
  EXPECT_NEAR(Pearson(x, x), 1.0, 1e-15);
  EXPECT_NEAR(Pearson(x, neg), -1.0, 1e-15);
  const double flat[] = {2, 2, 2};
  EXPECT_THROW(Pearson(x, flat), UndefinedMetricError);
}

TEST(MetricTest, PearsonAffineInvariance) {
  std::mt19937_64 gen(9);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> x(30), y(30), z(30);
    for (int i = 0; i < 30; ++i) {
      x[i] = n(gen);
      y[i] = x[i] + n(gen);
      z[i] = 3.5 * y[i] + 7.0;
    }
    EXPECT_NEAR(Pearson(x, y), Pearson(x, z), 1e-12);
  }
}

TEST(MetricTest, CombineHalfMagnitude) {
  // A perfectly shaped series at half height: pearson 1, smape 66.67.
  const std::vector<double> a = {2, 4, 6, 4}, f = {1, 2, 3, 2};
  EXPECT_NEAR(Smape(f, a), 200.0 / 3.0, 1e-12);
  EXPECT_NEAR(Pearson(f, a), 1.0, 1e-15);
  EXPECT_NEAR(FitScore::Combine(200.0 / 3.0, 0.0, 1.0, 1.0), 1.0 / 6.0, 1e-12);
  EXPECT_NEAR(FitScore::Combine(200.0 / 3.0, 200.0 / 3.0, 1.0, 1.0), 1.0 / 3.0, 1e-12);
}

TEST(ScoreRunTest, IdenticalSeriesScoreZero) {
  const auto h = Wave(120, 40), d = Cumulative(120, 30);
  const FitScore s = ScoreRun(FakeResult(h, d, 100), TruthFrom(h, d), ScoreThresholds{});
  EXPECT_FALSE(s.excluded);
  EXPECT_NEAR(s.combined, 0.0, 1e-12);
  EXPECT_NEAR(s.pearson_hosp, 1.0, 1e-12);
}

TEST(ScoreRunTest, ExposedThresholdExcludes) {
  const auto h = Wave(120, 40), d = Cumulative(120, 30);
  const FitScore s = ScoreRun(FakeResult(h, d, 950), TruthFrom(h, d), ScoreThresholds{});
  EXPECT_TRUE(s.excluded);
  EXPECT_TRUE(std::isinf(s.combined));
  ASSERT_EQ(s.violations.size(), 1u);
  EXPECT_EQ(s.violations[0].rfind("max_exposed_frac:", 0), 0u);
}

TEST(ScoreRunTest, ExclusionIsMonotoneInThreshold) {
  const auto h = Wave(80, 20), d = Cumulative(80, 10);
  for (std::int64_t exposed = 0; exposed <= 1000; exposed += 50) {
    bool accepted_before = false;
    for (double t = 0.0; t <= 1.0; t += 0.05) {
      ScoreThresholds th;
      th.max_exposed_frac = t;
      const bool accepted = !ScoreRun(FakeResult(h, d, exposed), TruthFrom(h, d), th).excluded;
      EXPECT_TRUE(accepted || !accepted_before) << exposed << " " << t;
      accepted_before = accepted;
    }
  }
}

TEST(ScoreRunTest, SymptomaticThresholdUsesConfirmed) {
  const auto h = Wave(60, 20), d = Cumulative(60, 10);
  GroundTruth gt = TruthFrom(h, d);
  gt.confirmed_cumulative.assign(60, 500.0);
  // 100 exposed gives 50 symptomatic, short of 0.5 x 500.
  const FitScore s = ScoreRun(FakeResult(h, d, 100), gt, ScoreThresholds{});
  ASSERT_TRUE(s.excluded);
  EXPECT_EQ(s.violations[0].rfind("min_sym_vs_confirmed:", 0), 0u);
  EXPECT_FALSE(ScoreRun(FakeResult(h, d, 500), gt, ScoreThresholds{}).excluded);
}

TEST(ScoreRunTest, FlatSeriesIsExcludedNotThrown) {
  const std::vector<double> h(50, 3.0), d(50, 0.0);
  const FitScore s = ScoreRun(FakeResult(h, d, 10), TruthFrom(Wave(50, 9), d), ScoreThresholds{});
  EXPECT_TRUE(s.excluded);
  EXPECT_EQ(s.violations[0].rfind("undefined_correlation:", 0), 0u);
}

TEST(SpaceTest, PaperRanges) {
  const ParamSpace behavior = BehaviorSearchSpace();
  const auto p_l = std::find_if(behavior.begin(), behavior.end(),
                                [](const ParamRange& r) { return r.name == "p_l"; });
  ASSERT_NE(p_l, behavior.end());
  EXPECT_EQ(p_l->lo, 0.004);
  EXPECT_EQ(p_l->hi, 0.008);
  ValidateSpace(behavior);
  ValidateSpace(DiseaseSearchSpace());
  EXPECT_THROW(ValidateSpace({{"bogus", 0, 1}}), InputError);
  EXPECT_THROW(ValidateSpace({{"p_l", 0, 1}, {"p_l", 0, 1}}), InputError);
  EXPECT_THROW(ValidateSpace({{"p_l", 1, 0}}), InputError);
}

// A smooth synthetic objective with its optimum at `target`.
Evaluator Bowl(const ParamSpace& space, std::vector<double> target) {
  return [space, target](const ModelParams& p) {
    FitScore s;
    for (std::size_t i = 0; i < space.size(); ++i) {
      const double z = (GetParam(p, space[i].name) - target[i]) / (space[i].hi - space[i].lo);
      s.combined += z * z;
    }
    return s;
  };
}

const ParamSpace kSpace = {{"p_e_min", 0.01, 0.2}, {"r_mix", 0.05, 0.15}, {"p_l", 0.004, 0.008}};
const std::vector<double> kTarget = {0.04, 0.13, 0.005};

SearchOptions SmallBudget() {
  SearchOptions o;
  o.budget.n_random = 40;
  o.budget.n_sweeps = 3;
  o.budget.grid_points = 5;
  o.seed = 21;
  o.threads = 1;
  return o;
}

TEST(SearchTest, ZeroBudgetScoresMidpointOnce) {
  SearchOptions o;
  o.budget.n_random = 0;
  o.budget.n_sweeps = 0;
  const SearchResult r = Search(kSpace, ModelParams{}, Bowl(kSpace, kTarget), o);
  EXPECT_EQ(r.evaluations, 1);
  ASSERT_EQ(r.leaderboard.size(), 1u);
  for (std::size_t i = 0; i < kSpace.size(); ++i) EXPECT_EQ(r.best_values[i], kSpace[i].mid());
}

TEST(SearchTest, ImprovesOnMidpointAndNeverRegresses) {
  const Evaluator eval = Bowl(kSpace, kTarget);
  const SearchResult r = Search(kSpace, ModelParams{}, eval, SmallBudget());
  std::vector<double> mid;
  for (const auto& p : kSpace) mid.push_back(p.mid());
  const double at_mid = eval(WithValues(ModelParams{}, kSpace, mid)).combined;
  EXPECT_LT(r.best_score.combined, at_mid);
  ASSERT_EQ(r.sweep_best.size(), 3u);
  for (std::size_t s = 1; s < r.sweep_best.size(); ++s) {
    EXPECT_LE(r.sweep_best[s], r.sweep_best[s - 1]);
  }
  EXPECT_EQ(r.leaderboard.front().score.combined, r.best_score.combined);
  for (std::size_t i = 0; i < kSpace.size(); ++i) {
    EXPECT_GE(r.reduced_space[i].lo, kSpace[i].lo);
    EXPECT_LE(r.reduced_space[i].hi, kSpace[i].hi);
  }
  EXPECT_DOUBLE_EQ(GetParam(r.best_params, "r_mix"), r.best_values[1]);
}

TEST(SearchTest, DeterministicAcrossThreads) {
  SearchOptions a = SmallBudget(), b = SmallBudget();
  b.threads = 4;
  const SearchResult x = Search(kSpace, ModelParams{}, Bowl(kSpace, kTarget), a);
  const SearchResult y = Search(kSpace, ModelParams{}, Bowl(kSpace, kTarget), b);
  ASSERT_EQ(x.leaderboard.size(), y.leaderboard.size());
  for (std::size_t i = 0; i < x.leaderboard.size(); ++i) {
    EXPECT_EQ(x.leaderboard[i].values, y.leaderboard[i].values);
  }
  SearchOptions c = SmallBudget();
  c.seed = 22;
  EXPECT_NE(Search(kSpace, ModelParams{}, Bowl(kSpace, kTarget), c).leaderboard.front().values,
            x.leaderboard.front().values);
}

TEST(SearchTest, Stage1OnlySkipsDescent) {
  SearchOptions o = SmallBudget();
  o.stage1_only = true;
  const SearchResult r = Search(kSpace, ModelParams{}, Bowl(kSpace, kTarget), o);
  EXPECT_EQ(r.evaluations, 41);
  EXPECT_TRUE(r.sweep_best.empty());
}

TEST(SearchTest, ResumeReusesEveryEvaluation) {
  const SearchResult first = Search(kSpace, ModelParams{}, Bowl(kSpace, kTarget), SmallBudget());
  std::stringstream csv;
  WriteLeaderboardCsv(csv, kSpace, first.leaderboard);
  const std::string text = csv.str();
  EXPECT_EQ(text.substr(0, text.find('\n')),
            "rank,combined,smape_h,smape_d,pearson_h,pearson_d,excluded,p_e_min,r_mix,p_l,"
            "violations");
  SearchOptions o = SmallBudget();
  o.resume = ReadLeaderboardCsv(csv, kSpace);
  ASSERT_EQ(o.resume.size(), first.leaderboard.size());
  int calls = 0;
  const SearchResult second = Search(
      kSpace, ModelParams{},
      [&](const ModelParams& p) {
        ++calls;
        return Bowl(kSpace, kTarget)(p);
      },
      o);
  EXPECT_EQ(calls, 0);
  EXPECT_EQ(second.evaluations, 0);
  EXPECT_EQ(second.best_values, first.best_values);
}

TEST(SearchTest, AllExcludedReportsFailure) {
  const SearchResult r = Search(
      kSpace, ModelParams{},
      [](const ModelParams&) {
        FitScore s;
        s.excluded = true;
        s.combined = std::numeric_limits<double>::infinity();
        s.violations = {"max_exposed_frac: run 0 reached 0.9", "max_exposed_frac: run 1"};
        return s;
      },
      SmallBudget());
  EXPECT_TRUE(r.failed);
  EXPECT_EQ(r.violation_counts.at("max_exposed_frac"), static_cast<int>(r.leaderboard.size()));
  std::stringstream csv;
  WriteLeaderboardCsv(csv, kSpace, r.leaderboard);
  const auto back = ReadLeaderboardCsv(csv, kSpace);
  EXPECT_TRUE(back[0].score.excluded);
  EXPECT_EQ(back[0].score.violations, r.leaderboard[0].score.violations);
}

TEST(SearchTest, InvalidCandidatesAreExcluded) {
  const ParamSpace space = {{"p_e_min", 0.1, 0.5}};  // p_e_max stays 0.33
  const SearchResult r = Search(
      space, ModelParams{},
      [](const ModelParams& p) {
        p.Validate();
        FitScore s;
        s.combined = p.behavior.p_e_min;
        return s;
      },
      SmallBudget());
  EXPECT_FALSE(r.failed);
  EXPECT_LT(r.best_values[0], 0.33);
  EXPECT_GT(r.violation_counts.at("invalid_parameters"), 0);
}

TEST(SearchTest, BestParamsJsonListsEveryParameter) {
  const SearchResult r = Search(kSpace, ModelParams{}, Bowl(kSpace, kTarget), SmallBudget());
  const auto j = nlohmann::json::parse(BestParamsJson(r));
  EXPECT_EQ(j["params"].size(), ParamNames().size());
  EXPECT_DOUBLE_EQ(j["params"]["p_l"].get<double>(), r.best_values[2]);
}

TEST(SearchTest, RecoversSyntheticTruthFromSimulation) {
  WorldConfig config;
  config.population = 6000 * 100.0;
  PolicyTimeline t = testing::QuietTimeline(140);
  for (auto& d : t) d.international_open = true;
  ModelParams truth_params;
  truth_params.epi.p_syh = 0.1;
  truth_params.epi.p_hd = 0.1;
  truth_params.behavior.p_e_max = 0.45;
  SimulationOptions o;
  o.n_runs = 2;
  o.seed = 1;
  o.threads = 1;
  const SimulationResult truth_run = RunSimulation(config, t, truth_params, o);
  GroundTruth gt;
  gt.dates.resize(t.size());
  gt.hospitalized_current = truth_run.MeanCountrySeries(Compartment::kH);
  gt.deaths_daily = ClampedDifferences(truth_run.MeanCountrySeries(Compartment::kD));

  ScoreThresholds th;
  th.max_exposed_frac = 1.0;
  const ParamSpace space = {{"p_e_max", 0.2, 0.5}};
  SearchOptions so;
  so.budget.n_random = 3;
  so.budget.n_sweeps = 1;
  so.budget.grid_points = 4;
  so.threads = 1;
  const SearchResult r = Search(
      space, truth_params,
      [&](const ModelParams& p) {
        SimulationOptions eo = o;
        eo.seed = 2;
        return ScoreRun(RunSimulation(config, t, p, eo), gt, th);
      },
      so);
  const auto mid = std::find_if(r.leaderboard.begin(), r.leaderboard.end(),
                                [&](const Candidate& c) { return c.values[0] == space[0].mid(); });
  ASSERT_NE(mid, r.leaderboard.end());
  EXPECT_LE(r.best_score.combined, mid->score.combined);
}

}  // namespace
}  // namespace epinet
