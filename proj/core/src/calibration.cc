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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>

#include <tbb/parallel_for.h>
#include <tbb/task_arena.h>

#include "epinet/errors.h"
#include "epinet/rng.h"
#include "json.hpp"

namespace epinet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string Num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string Category(const std::string& violation) {
  return violation.substr(0, violation.find(':'));
}

std::vector<double> Slice(const std::vector<double>& v, std::size_t from, std::size_t to) {
  return {v.begin() + static_cast<std::ptrdiff_t>(from),
          v.begin() + static_cast<std::ptrdiff_t>(to)};
}

}  // namespace

double Smape(std::span<const double> forecast, std::span<const double> actual) {
  if (forecast.size() != actual.size()) throw InputError("smape: series lengths differ");
  if (forecast.empty()) throw InputError("smape: empty series");
  double sum = 0.0;
  for (std::size_t t = 0; t < forecast.size(); ++t) {
    const double f = forecast[t], a = actual[t];
    const double denom = (std::abs(a) + std::abs(f)) / 2.0;
    if (denom == 0.0) continue;
    sum += std::abs(f - a) / denom;
  }
  return 100.0 / static_cast<double>(forecast.size()) * sum;
}

double Pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InputError("pearson: series lengths differ");
  if (x.size() < 2) throw InputError("pearson: need at least two points");
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw UndefinedMetricError("pearson: constant series");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double FitScore::Combine(double smape_hosp, double smape_dead, double pearson_hosp,
                         double pearson_dead) {
  const double hosp = (smape_hosp / 100.0 + (1.0 - pearson_hosp)) / 2.0;
  const double dead = (smape_dead / 100.0 + (1.0 - pearson_dead)) / 2.0;
  return (hosp + dead) / 2.0;
}

FitScore ScoreRun(const SimulationResult& result, const GroundTruth& truth,
                  const ScoreThresholds& thresholds) {
  if (result.runs.empty()) throw InputError("score: no runs");
  const std::size_t n = std::min<std::size_t>(result.num_days, truth.size());
  if (n < 2) throw InputError("score: fewer than two aligned days");

  FitScore score;
  for (const RunTrace& run : result.runs) {
    const RegionDayRecord last = run.CountryTotal(static_cast<int>(n) - 1);
    const double exposed_frac =
        static_cast<double>(last.cum_exposed) / static_cast<double>(result.n_total);
    if (exposed_frac > thresholds.max_exposed_frac) {
      score.violations.push_back("max_exposed_frac: run " + std::to_string(run.run) +
                                 " reached " + Num(exposed_frac));
    }
    if (!truth.confirmed_cumulative.empty()) {
      const double needed = thresholds.min_sym_vs_confirmed * truth.confirmed_cumulative[n - 1];
      if (static_cast<double>(last.cum_symptomatic) < needed) {
        score.violations.push_back("min_sym_vs_confirmed: run " + std::to_string(run.run) +
                                   " had " + std::to_string(last.cum_symptomatic) +
                                   " symptomatic, needed " + Num(needed));
      }
    }
  }

  std::size_t start = 0;
  while (start < n && !(truth.hospitalized_current[start] > 0.0)) ++start;
  if (start == n) start = 0;

  const int w = thresholds.smoothing_window;
  std::vector<double> sim_h = result.MeanCountrySeries(Compartment::kH);
  std::vector<double> sim_d = ClampedDifferences(result.MeanCountrySeries(Compartment::kD));
  sim_h.resize(n);
  sim_d.resize(n);
  const std::vector<double> gt_h_raw(truth.hospitalized_current.begin(),
                                     truth.hospitalized_current.begin() + n);
  const std::vector<double> gt_d_raw(truth.deaths_daily.begin(), truth.deaths_daily.begin() + n);
  const auto sh = Slice(Smooth(sim_h, w), start, n);
  const auto sd = Slice(Smooth(sim_d, w), start, n);
  const auto gh = Slice(Smooth(gt_h_raw, w), start, n);
  const auto gd = Slice(Smooth(gt_d_raw, w), start, n);

  score.smape_hosp = Smape(sh, gh);
  score.smape_dead = Smape(sd, gd);
  try {
    score.pearson_hosp = Pearson(sh, gh);
  } catch (const std::exception& e) {
    score.violations.push_back(std::string("undefined_correlation: hospitalized, ") + e.what());
  }
  try {
    score.pearson_dead = Pearson(sd, gd);
  } catch (const std::exception& e) {
    score.violations.push_back(std::string("undefined_correlation: deaths, ") + e.what());
  }
  score.excluded = !score.violations.empty();
  score.combined = score.excluded ? kInf
                                  : FitScore::Combine(score.smape_hosp, score.smape_dead,
                                                      score.pearson_hosp, score.pearson_dead);
  return score;
}

ParamSpace BehaviorSearchSpace() {
  return {{"p_e_min", 0.01, 0.2}, {"p_e_max", 0.2, 0.5},  {"t_ramp", 3, 18},
          {"p_ct_2", 0.3, 0.7},   {"p_ct_3", 0.7, 1.0},   {"p_l", 0.004, 0.008},
          {"p_rxs", 0.5, 4.5},    {"p_rs", 0.5, 4.5},     {"p_rm", 0.5, 4.5},
          {"p_rl", 0.5, 4.5},     {"r_mix", 0.05, 0.15}};
}

ParamSpace DiseaseSearchSpace() {
  return {{"v_eff1", 0.8, 0.95},      {"v_eff2", 0.8, 0.95},      {"p_i", 1.0 / 20, 1.0 / 3},
          {"p_sy", 0.13, 0.65},       {"p_r", 1.0 / 30, 1.0 / 3}, {"p_syh", 0.05, 0.15},
          {"p_hd", 1e-5, 0.1},        {"p_hr", 1.0 / 30, 1.0 / 3}};
}

void ValidateSpace(const ParamSpace& space) {
  std::set<std::string> seen;
  for (const ParamRange& r : space) {
    if (!IsParamName(r.name)) throw InputError("unknown parameter '" + r.name + "'");
    if (!seen.insert(r.name).second) throw InputError("duplicate parameter '" + r.name + "'");
    if (!(r.lo <= r.hi)) throw InputError("empty range for '" + r.name + "'");
  }
}

ModelParams WithValues(const ModelParams& base, const ParamSpace& space,
                       std::span<const double> values) {
  ModelParams p = base;
  for (std::size_t i = 0; i < space.size(); ++i) SetParam(p, space[i].name, values[i]);
  return p;
}

namespace {

class SearchState {
 public:
  SearchState(const ParamSpace& space, const ModelParams& base, const Evaluator& evaluate,
              const SearchOptions& options)
      : space_(space), base_(base), evaluate_(evaluate), threads_(options.threads) {
    for (const Candidate& c : options.resume) cache_.emplace(c.values, c.score);
  }

  // Scores every point, in parallel for points not already cached, and
  // appends them to the leaderboard in input order.
  std::vector<FitScore> Evaluate(const std::vector<std::vector<double>>& points,
                                 const std::string& stage) {
    std::vector<FitScore> scores(points.size());
    std::vector<std::size_t> fresh;
    for (std::size_t i = 0; i < points.size(); ++i) {
      auto it = cache_.find(points[i]);
      if (it != cache_.end()) {
        scores[i] = it->second;
      } else {
        fresh.push_back(i);
      }
    }
    std::mutex mu;
    auto run_one = [&](std::size_t k) {
      const std::size_t i = fresh[k];
      FitScore s;
      try {
        s = evaluate_(WithValues(base_, space_, points[i]));
      } catch (const InvariantError& e) {
        s.excluded = true;
        s.combined = kInf;
        s.violations.push_back(std::string("invalid_parameters: ") + e.what());
      }
      std::lock_guard<std::mutex> lock(mu);
      scores[i] = std::move(s);
    };
    tbb::task_arena arena(threads_ > 0 ? threads_ : tbb::task_arena::automatic);
    arena.execute([&] {
      tbb::parallel_for(std::size_t{0}, fresh.size(), run_one);
    });
    evaluations_ += static_cast<int>(fresh.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      cache_.emplace(points[i], scores[i]);
      if (seen_.insert(points[i]).second) {
        board_.push_back({points[i], scores[i], order_++, stage});
      }
    }
    return scores;
  }

  std::vector<Candidate>& board() { return board_; }
  int evaluations() const { return evaluations_; }

 private:
  const ParamSpace& space_;
  const ModelParams& base_;
  const Evaluator& evaluate_;
  int threads_;
  std::map<std::vector<double>, FitScore> cache_;
  std::set<std::vector<double>> seen_;
  std::vector<Candidate> board_;
  int order_ = 0;
  int evaluations_ = 0;
};

bool Better(const FitScore& a, const FitScore& b) { return a.combined < b.combined; }

}  // namespace

SearchResult Search(const ParamSpace& space, const ModelParams& base,
                    const Evaluator& evaluate, const SearchOptions& options) {
  ValidateSpace(space);
  const SearchBudget& budget = options.budget;
  if (budget.n_random < 0 || budget.n_sweeps < 0) throw InputError("negative search budget");
  if (budget.grid_points < 2) throw InputError("grid_points must be at least 2");
  if (!(budget.keep_fraction > 0.0 && budget.keep_fraction <= 1.0)) {
    throw InputError("keep_fraction must be in (0, 1]");
  }

  SearchState state(space, base, evaluate, options);
  const std::size_t dims = space.size();

  // Stage 1: midpoint plus uniform draws.
  Rng rng = Rng::Derive(options.seed, {static_cast<std::uint64_t>(StreamTag::kSearch)});
  std::vector<std::vector<double>> points;
  std::vector<double> mid(dims);
  for (std::size_t i = 0; i < dims; ++i) mid[i] = space[i].mid();
  points.push_back(mid);
  for (int s = 0; s < budget.n_random; ++s) {
    std::vector<double> p(dims);
    for (std::size_t i = 0; i < dims; ++i) {
      p[i] = space[i].lo + (space[i].hi - space[i].lo) * rng.Uniform();
    }
    points.push_back(std::move(p));
  }
  const std::vector<FitScore> stage1 = state.Evaluate(points, "stage1");

  std::vector<std::size_t> accepted;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!stage1[i].excluded) accepted.push_back(i);
  }
  std::stable_sort(accepted.begin(), accepted.end(),
                   [&](std::size_t a, std::size_t b) { return Better(stage1[a], stage1[b]); });

  SearchResult result;
  result.space = space;
  result.reduced_space = space;
  if (accepted.size() >= 2) {
    const auto keep = std::max<std::size_t>(
        2, static_cast<std::size_t>(std::ceil(budget.keep_fraction * accepted.size())));
    for (std::size_t i = 0; i < dims; ++i) {
      double lo = kInf, hi = -kInf;
      for (std::size_t k = 0; k < std::min(keep, accepted.size()); ++k) {
        lo = std::min(lo, points[accepted[k]][i]);
        hi = std::max(hi, points[accepted[k]][i]);
      }
      result.reduced_space[i].lo = lo;
      result.reduced_space[i].hi = hi;
    }
  }

  std::vector<double> current = accepted.empty() ? mid : points[accepted.front()];
  FitScore current_score = accepted.empty() ? stage1.front() : stage1[accepted.front()];

  // Stage 2: coordinate descent on the reduced ranges.
  if (!options.stage1_only) {
    for (int sweep = 0; sweep < budget.n_sweeps; ++sweep) {
      for (std::size_t i = 0; i < dims; ++i) {
        const ParamRange& r = result.reduced_space[i];
        std::vector<std::vector<double>> grid;
        for (int g = 0; g < budget.grid_points; ++g) {
          std::vector<double> p = current;
          p[i] = g + 1 == budget.grid_points
                     ? r.hi
                     : r.lo + (r.hi - r.lo) * g / (budget.grid_points - 1);
          grid.push_back(std::move(p));
        }
        const std::vector<FitScore> scores = state.Evaluate(grid, "stage2");
        for (std::size_t g = 0; g < grid.size(); ++g) {
          if (Better(scores[g], current_score)) {
            current_score = scores[g];
            current = grid[g];
          }
        }
      }
      result.sweep_best.push_back(current_score.combined);
    }
  }

  result.leaderboard = state.board();
  std::stable_sort(result.leaderboard.begin(), result.leaderboard.end(),
                   [](const Candidate& a, const Candidate& b) {
                     return Better(a.score, b.score);
                   });
  result.best_values = current;
  result.best_score = current_score;
  result.best_params = WithValues(base, space, current);
  result.evaluations = state.evaluations();
  result.failed = std::all_of(result.leaderboard.begin(), result.leaderboard.end(),
                              [](const Candidate& c) { return c.score.excluded; });
  for (const Candidate& c : result.leaderboard) {
    std::set<std::string> categories;
    for (const std::string& v : c.score.violations) categories.insert(Category(v));
    for (const std::string& cat : categories) ++result.violation_counts[cat];
  }
  return result;
}

void WriteLeaderboardCsv(std::ostream& out, const ParamSpace& space,
                         std::span<const Candidate> leaderboard) {
  out << "rank,combined,smape_h,smape_d,pearson_h,pearson_d,excluded";
  for (const ParamRange& r : space) out << ',' << r.name;
  out << ",violations\n";
  int rank = 1;
  for (const Candidate& c : leaderboard) {
    const FitScore& s = c.score;
    out << rank++ << ',' << Num(s.combined) << ',' << Num(s.smape_hosp) << ','
        << Num(s.smape_dead) << ',' << Num(s.pearson_hosp) << ',' << Num(s.pearson_dead) << ','
        << (s.excluded ? 1 : 0);
    for (double v : c.values) out << ',' << Num(v);
    std::string joined;
    for (const std::string& v : s.violations) {
      if (!joined.empty()) joined += "; ";
      joined += v;
    }
    std::string quoted = "\"";
    for (char ch : joined) {
      if (ch == '"') quoted += '"';
      quoted += ch;
    }
    out << ',' << quoted << "\"\n";
  }
}

std::vector<Candidate> ReadLeaderboardCsv(std::istream& in, const ParamSpace& space) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::vector<CsvRecord> records = ParseCsv(buffer.str());
  if (records.empty()) throw SchemaError("leaderboard has no header");
  const std::vector<std::string>& header = records[0].fields;
  auto column = [&](const std::string& name) -> std::size_t {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw SchemaError("leaderboard is missing column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t c_comb = column("combined"), c_sh = column("smape_h"),
                    c_sd = column("smape_d"), c_ph = column("pearson_h"),
                    c_pd = column("pearson_d"), c_ex = column("excluded");
  std::vector<std::size_t> c_params;
  for (const ParamRange& r : space) c_params.push_back(column(r.name));
  const auto c_viol = std::find(header.begin(), header.end(), "violations");

  std::vector<Candidate> out;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const CsvRecord& rec = records[i];
    if (rec.fields.size() != header.size()) throw DataError("wrong field count", rec.line);
    auto num = [&](std::size_t c) {
      try {
        return std::stod(rec.fields[c]);
      } catch (const std::exception&) {
        throw DataError("bad number '" + rec.fields[c] + "'", rec.line);
      }
    };
    Candidate c;
    c.score.combined = num(c_comb);
    c.score.smape_hosp = num(c_sh);
    c.score.smape_dead = num(c_sd);
    c.score.pearson_hosp = num(c_ph);
    c.score.pearson_dead = num(c_pd);
    c.score.excluded = rec.fields[c_ex] == "1";
    if (c.score.excluded) c.score.combined = kInf;
    for (std::size_t c_p : c_params) c.values.push_back(num(c_p));
    if (c_viol != header.end()) {
      const std::string& text = rec.fields[static_cast<std::size_t>(c_viol - header.begin())];
      std::size_t pos = 0;
      while (pos < text.size()) {
        const std::size_t end = text.find("; ", pos);
        c.score.violations.push_back(text.substr(pos, end - pos));
        if (end == std::string::npos) break;
        pos = end + 2;
      }
    }
    c.order = static_cast<int>(i - 1);
    c.stage = "resume";
    out.push_back(std::move(c));
  }
  return out;
}

std::string BestParamsJson(const SearchResult& result) {
  nlohmann::ordered_json j;
  j["combined"] = result.best_score.combined;
  j["excluded"] = result.best_score.excluded;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (std::string_view name : ParamNames()) {
    params[std::string(name)] = GetParam(result.best_params, name);
  }
  j["params"] = params;
  return j.dump(2) + "\n";
}

}  // namespace epinet
