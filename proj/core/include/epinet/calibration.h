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

#ifndef EPINET_CALIBRATION_H_
#define EPINET_CALIBRATION_H_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "epinet/data_io.h"
#include "epinet/params.h"
#include "epinet/simulation.h"

namespace epinet {

// A metric has no value for its input, such as the correlation of a
// constant series.
class UndefinedMetricError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Symmetric mean absolute percentage error in [0, 200]. Terms where both
// values are zero contribute 0. Throws InputError on empty or unequal input.
double Smape(std::span<const double> forecast, std::span<const double> actual);

// Sample correlation coefficient. Throws InputError on unequal lengths or
// fewer than two points, UndefinedMetricError when either is constant.
double Pearson(std::span<const double> x, std::span<const double> y);

struct ScoreThresholds {
  double max_exposed_frac = 0.6;      // cumulative exposed / nodes
  double min_sym_vs_confirmed = 0.5;  // cumulative symptomatic / confirmed
  int smoothing_window = 7;
};

struct FitScore {
  double smape_hosp = 0.0;
  double smape_dead = 0.0;
  double pearson_hosp = 0.0;
  double pearson_dead = 0.0;
  bool excluded = false;
  double combined = 0.0;  // +inf when excluded
  std::vector<std::string> violations;

  // (smape/100 + 1 - pearson) / 2 per attribute, averaged.
  static double Combine(double smape_hosp, double smape_dead, double pearson_hosp,
                        double pearson_dead);
};

// Scores the run-mean hospitalized and daily-death series against `truth`,
// which must already be in node units and start on the result's first day.
// Scoring begins on the first day with observed hospitalizations.
FitScore ScoreRun(const SimulationResult& result, const GroundTruth& truth,
                  const ScoreThresholds& thresholds);

struct ParamRange {
  std::string name;
  double lo = 0.0;
  double hi = 0.0;
  double mid() const { return 0.5 * (lo + hi); }
};

using ParamSpace = std::vector<ParamRange>;

// Initial search ranges for the country-dependent parameters.
ParamSpace BehaviorSearchSpace();
// Literature ranges for the disease parameters.
ParamSpace DiseaseSearchSpace();
// Throws InputError for unknown names, lo > hi or duplicates.
void ValidateSpace(const ParamSpace& space);

struct SearchBudget {
  int n_random = 200;
  int n_sweeps = 2;
  int grid_points = 5;
  double keep_fraction = 0.1;  // stage-1 share whose hull becomes the new range
};

struct Candidate {
  std::vector<double> values;  // one per ParamSpace entry
  FitScore score;
  int order = 0;               // evaluation order
  std::string stage;           // "stage1", "stage2" or "resume"
};

using Evaluator = std::function<FitScore(const ModelParams&)>;

struct SearchOptions {
  SearchBudget budget;
  std::uint64_t seed = 42;
  bool stage1_only = false;
  int threads = 0;
  // Previously evaluated points, keyed by their exact values. Matching
  // candidates are taken from here instead of being re-evaluated.
  std::vector<Candidate> resume;
};

struct SearchResult {
  ParamSpace space;
  ParamSpace reduced_space;
  std::vector<Candidate> leaderboard;  // sorted best first
  std::vector<double> best_values;
  FitScore best_score;
  ModelParams best_params;
  std::vector<double> sweep_best;      // best combined after each stage-2 sweep
  int evaluations = 0;                 // fresh evaluations, cache hits excluded
  bool failed = false;                 // every candidate excluded
  std::map<std::string, int> violation_counts;
};

// Stage 1 scores the range midpoint and n_random uniform draws, then shrinks
// each range to the hull of the best keep_fraction of accepted candidates.
// Stage 2 runs n_sweeps rounds of coordinate descent over a grid_points grid
// of each reduced range. The evaluator must be deterministic.
SearchResult Search(const ParamSpace& space, const ModelParams& base,
                    const Evaluator& evaluate, const SearchOptions& options);

ModelParams WithValues(const ModelParams& base, const ParamSpace& space,
                       std::span<const double> values);

// rank,combined,smape_h,smape_d,pearson_h,pearson_d,excluded,<params...>
void WriteLeaderboardCsv(std::ostream& out, const ParamSpace& space,
                         std::span<const Candidate> leaderboard);
std::vector<Candidate> ReadLeaderboardCsv(std::istream& in, const ParamSpace& space);

// {"combined": ..., "params": {name: value, ...}} over every model parameter.
std::string BestParamsJson(const SearchResult& result);

}  // namespace epinet

#endif  // EPINET_CALIBRATION_H_
