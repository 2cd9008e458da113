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

#include "commands.h"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "epinet/calibration.h"
#include "epinet/errors.h"
#include "epinet/result_io.h"
#include "epinet/scenario.h"
#include "epinet/simulation.h"
#include "run_config.h"

namespace epinet::cli {

namespace {

namespace fs = std::filesystem;

struct Overrides {
  std::string config;
  std::optional<int> runs;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<std::string> out;
};

struct Job {
  RunConfig config;
  std::string command;
};

Job LoadJob(const Overrides& o, const std::string& command) {
  Job job{LoadRunConfig(o.config), command};
  RunConfig& c = job.config;
  if (o.runs) c.runs = *o.runs;
  if (o.seed) c.seed = *o.seed;
  if (o.threads) c.threads = *o.threads;
  if (o.out) c.out = *o.out;
  if (c.runs < 1) throw InputError("--runs must be >= 1");
  if (c.threads < 0) throw InputError("--threads must be >= 0");
  c.inputs.insert(c.inputs.begin(), fs::path(o.config));
  return job;
}

SimulationOptions OptionsFor(const RunConfig& c) {
  SimulationOptions options;
  options.n_runs = c.runs;
  options.seed = c.seed;
  options.threads = c.threads;
  options.seed_day = c.seed_day;
  return options;
}

std::string ToText(const auto& writer) {
  std::ostringstream out;
  writer(out);
  return out.str();
}

RunManifest ManifestFor(const Job& job) {
  const RunConfig& c = job.config;
  RunManifest m;
  m.command = job.command;
  m.seed = c.seed;
  m.runs = c.runs;
  m.threads = c.threads;
  m.params = c.params;
  m.world = c.world;
  m.config_json = ResolvedConfigJson(c);
  for (const fs::path& input : c.inputs) {
    m.data_checksums.emplace_back(input.string(), Sha256Hex(input));
  }
  m.notes.push_back("aggregate.csv is in node units; aggregate_persons.csv multiplies by "
                    "scale_factor");
  return m;
}

// Writes runs, aggregates and controller logs. Returns the file names.
std::vector<std::string> WriteResult(const fs::path& dir, const SimulationResult& result,
                                     double scale) {
  std::vector<std::string> names = {"runs.csv", "aggregate.csv", "aggregate_persons.csv"};
  WriteTextFile(dir / "runs.csv", ToText([&](std::ostream& o) { WriteRunsCsv(o, result); }));
  WriteTextFile(dir / "aggregate.csv",
                ToText([&](std::ostream& o) { WriteAggregateCsv(o, result, 1.0); }));
  WriteTextFile(dir / "aggregate_persons.csv",
                ToText([&](std::ostream& o) { WriteAggregateCsv(o, result, scale); }));
  for (const RunTrace& run : result.runs) {
    if (run.controller_log.empty()) continue;
    const std::string name = "controller_log_run" + std::to_string(run.run) + ".csv";
    WriteTextFile(dir / name,
                  ToText([&](std::ostream& o) { WriteControllerLog(o, run.controller_log); }));
    names.push_back(name);
  }
  return names;
}

void WriteCompareCsv(const fs::path& file, const SimulationResult& baseline,
                     const SimulationResult& scenario) {
  const Aggregate b = baseline.ComputeAggregate();
  const Aggregate s = scenario.ComputeAggregate();
  const int first = std::min(b.first_day, s.first_day);
  const int last = std::max(b.first_day + static_cast<int>(b.mean.size()),
                            s.first_day + static_cast<int>(s.mean.size()));
  std::vector<std::string> fields;
  for (Compartment c : kAllCompartments) fields.emplace_back(CompartmentName(c));
  fields.emplace_back("cum_exposed");
  std::ostringstream out;
  out << "day";
  for (const char* group : {"baseline", "scenario"}) {
    for (const std::string& f : fields) out << ',' << group << '_' << f << "_mean";
  }
  out << '\n';
  auto emit = [&](const Aggregate& a, int day) {
    const int i = day - a.first_day;
    for (int f = 0; f < kNumAggregateFields; ++f) {
      out << ',';
      if (i >= 0 && i < static_cast<int>(a.mean.size())) {
        out << std::setprecision(10) << a.mean[i][f];
      }
    }
  };
  for (int day = first; day < last; ++day) {
    out << day;
    emit(b, day);
    emit(s, day);
    out << '\n';
  }
  WriteTextFile(file, out.str());
}

int Simulate(const Overrides& o, const std::string& command, std::ostream& out) {
  Job job = LoadJob(o, command);
  const RunConfig& c = job.config;
  const CountryData data = LoadConfiguredData(c);
  const SimulationResult result = RunSimulation(c.world, data.timeline, c.params, OptionsFor(c));
  RunManifest m = ManifestFor(job);
  m.artifacts = WriteResult(c.out, result, c.world.scale_factor);
  m.notes.insert(m.notes.end(), data.notes.begin(), data.notes.end());
  WriteManifest(c.out / "manifest.json", m);
  out << "simulated " << c.runs << " runs x " << result.num_days << " days, " << result.n_total
      << " nodes -> " << c.out.string() << "\n";
  return kExitOk;
}

std::string SearchReport(const SearchResult& r) {
  std::ostringstream out;
  out << std::setprecision(10);
  out << "evaluations " << r.evaluations << "\n";
  out << "best combined " << r.best_score.combined << (r.best_score.excluded ? " (excluded)" : "")
      << "\n";
  out << "ranges (initial -> reduced)\n";
  for (std::size_t i = 0; i < r.space.size(); ++i) {
    out << "  " << r.space[i].name << " [" << r.space[i].lo << ", " << r.space[i].hi
        << "] -> [" << r.reduced_space[i].lo << ", " << r.reduced_space[i].hi << "] best "
        << r.best_values[i] << "\n";
  }
  for (std::size_t s = 0; s < r.sweep_best.size(); ++s) {
    out << "sweep " << s + 1 << " best combined " << r.sweep_best[s] << "\n";
  }
  if (r.failed) out << "search failed: every candidate was excluded\n";
  for (const auto& [category, count] : r.violation_counts) {
    out << "violated " << category << " in " << count << " candidates\n";
  }
  return out.str();
}

GroundTruth SyntheticTruth(const RunConfig& c, const CountryData& data) {
  SimulationOptions options = OptionsFor(c);
  const SimulationResult truth_run =
      RunSimulation(c.world, data.timeline, c.params, options);
  GroundTruth t;
  t.dates = data.truth.dates;
  t.hospitalized_current = truth_run.MeanCountrySeries(Compartment::kH);
  t.deaths_cumulative = truth_run.MeanCountrySeries(Compartment::kD);
  t.deaths_daily = ClampedDifferences(t.deaths_cumulative);
  return t;
}

int Calibrate(const Overrides& o, const std::string& command, bool stage1_only,
              const std::string& resume, bool self_test, std::ostream& out,
              std::ostream& err) {
  Job job = LoadJob(o, command);
  RunConfig& c = job.config;
  const CountryData data = LoadConfiguredData(c);

  GroundTruth truth;
  std::uint64_t eval_seed = c.seed;
  if (self_test) {
    truth = SyntheticTruth(c, data);
    eval_seed = c.seed + 1;  // independent noise from the synthetic truth
  } else {
    truth = data.truth.Scaled(c.world.scale_factor);
  }

  SimulationOptions eval_options = OptionsFor(c);
  eval_options.n_runs = c.calibration.runs.value_or(c.runs);
  eval_options.seed = eval_seed;
  const ScoreThresholds thresholds = c.calibration.thresholds;
  const Evaluator evaluate = [&](const ModelParams& p) {
    return ScoreRun(RunSimulation(c.world, data.timeline, p, eval_options), truth, thresholds);
  };

  SearchOptions search;
  search.budget = c.calibration.budget;
  search.seed = c.seed;
  search.stage1_only = stage1_only;
  search.threads = c.threads;
  if (!resume.empty()) {
    std::ifstream in(resume);
    if (!in) throw InputError("cannot read leaderboard " + resume);
    search.resume = ReadLeaderboardCsv(in, c.calibration.space);
    c.inputs.emplace_back(resume);
  }

  const SearchResult result = Search(c.calibration.space, c.params, evaluate, search);
  RunManifest m = ManifestFor(job);
  WriteTextFile(c.out / "leaderboard.csv", ToText([&](std::ostream& s) {
                  WriteLeaderboardCsv(s, c.calibration.space, result.leaderboard);
                }));
  WriteTextFile(c.out / "best_params.json", BestParamsJson(result));
  std::string report = SearchReport(result);
  m.artifacts = {"leaderboard.csv", "best_params.json", "search_report.txt"};

  int status = kExitOk;
  if (self_test) {
    ParamSpace space = c.calibration.space;
    std::vector<double> mid;
    for (const ParamRange& r : space) mid.push_back(r.mid());
    const FitScore mid_score = evaluate(WithValues(c.params, space, mid));
    const FitScore true_score = evaluate(c.params);
    std::ostringstream s;
    s << std::setprecision(10) << "self-test: midpoint combined " << mid_score.combined
      << ", recovered combined " << result.best_score.combined << ", generating parameters "
      << true_score.combined << "\n";
    const bool ok = result.best_score.combined <= mid_score.combined;
    s << "self-test " << (ok ? "passed" : "FAILED") << "\n";
    report += s.str();
    out << s.str();
    if (!ok) status = kExitInvariant;
    m.notes.push_back("self-test: ground truth simulated from the configured parameters");
  }
  WriteTextFile(c.out / "search_report.txt", report);
  WriteManifest(c.out / "manifest.json", m);
  out << "calibration: " << result.evaluations << " evaluations, best combined "
      << result.best_score.combined << " -> " << c.out.string() << "\n";
  if (result.failed) {
    err << report;
    return kExitInput;
  }
  return status;
}

ScenarioSpec LoadScenario(const RunConfig& c, const std::string& scenario_path) {
  if (!scenario_path.empty()) {
    std::ifstream in(scenario_path);
    if (!in) throw InputError("cannot read scenario " + scenario_path);
    std::ostringstream text;
    text << in.rdbuf();
    return ParseScenarioSpec(text.str());
  }
  if (c.scenario) return *c.scenario;
  throw SchemaError("no scenario given (--scenario or config field 'scenario')");
}

int Scenario(const Overrides& o, const std::string& command, const std::string& scenario_path,
             bool compare, const std::vector<int>& t0s, std::ostream& out) {
  Job job = LoadJob(o, command);
  RunConfig& c = job.config;
  if (!scenario_path.empty()) c.inputs.emplace_back(scenario_path);
  ScenarioSpec base_spec = LoadScenario(c, scenario_path);
  if (!t0s.empty() && base_spec.kind != 9) throw InputError("--t0 applies to kind 9 only");
  if ((base_spec.kind == 6 || base_spec.kind == 7) && !base_spec.start_day) {
    base_spec.start_day = c.vaccination_start_day;
  }
  const CountryData data = LoadConfiguredData(c);
  const SimulationOptions options = OptionsFor(c);

  std::optional<SimulationResult> baseline;
  if (base_spec.start_day || compare) {
    baseline = RunSimulation(c.world, data.timeline, c.params, options);
  }

  std::vector<ScenarioSpec> specs;
  if (t0s.empty()) {
    specs.push_back(base_spec);
  } else {
    for (int t0 : t0s) {
      ScenarioSpec s = base_spec;
      s.t0 = t0;
      s.Validate();
      specs.push_back(s);
    }
  }

  for (const ScenarioSpec& spec : specs) {
    const fs::path dir = t0s.empty() ? c.out : c.out / ("t0_" + std::to_string(spec.t0));
    c.scenario = spec;
    const ScenarioRun run = RunScenario(c.world, data.timeline, c.params, spec, options,
                                        baseline ? &*baseline : nullptr);
    RunManifest m = ManifestFor(job);
    m.config_json = ResolvedConfigJson(c);
    m.runs = static_cast<int>(run.result.runs.size());
    m.artifacts = WriteResult(dir, run.result, c.world.scale_factor);
    if (run.plan.controller) {
      std::ostringstream note;
      note << "mean lockdown days " << CountLockdownDays(run.result);
      m.notes.push_back(note.str());
      out << note.str() << "\n";
    }
    if (compare) {
      // Snapshot-started kinds compare against the same start with k = 1,
      // which leaves the baseline timeline untouched.
      SimulationResult reference = *baseline;
      if (spec.start_day) {
        ScenarioSpec same = spec;
        same.k = 1.0;
        reference = RunScenario(c.world, data.timeline, c.params, same, options, &*baseline)
                        .result;
      }
      const std::vector<std::string> names =
          WriteResult(dir / "baseline", reference, c.world.scale_factor);
      for (const std::string& n : names) m.artifacts.push_back("baseline/" + n);
      WriteCompareCsv(dir / "compare.csv", reference, run.result);
      m.artifacts.push_back("compare.csv");
    }
    if (spec.start_day) m.notes.push_back("runs start from the mean baseline state of day " +
                                          std::to_string(*spec.start_day));
    WriteManifest(dir / "manifest.json", m);
    out << "scenario " << spec.kind << " -> " << dir.string() << "\n";
  }
  return kExitOk;
}

void AddCommonOptions(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "JSON run configuration")->required();
  cmd->add_option("--runs", o.runs, "number of stochastic runs");
  cmd->add_option("--seed", o.seed, "master seed");
  cmd->add_option("--threads", o.threads, "worker threads (0: all cores)");
  cmd->add_option("--out", o.out, "output directory");
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Network metapopulation epidemic simulator", "epinet"};
  app.require_subcommand(1);

  Overrides o;
  CLI::App* simulate = app.add_subcommand("simulate", "run the baseline timeline");
  AddCommonOptions(simulate, o);

  bool stage1_only = false, self_test = false;
  std::string resume;
  CLI::App* calibrate = app.add_subcommand("calibrate", "fit parameters to ground truth");
  AddCommonOptions(calibrate, o);
  calibrate->add_flag("--stage1-only", stage1_only, "skip coordinate descent");
  calibrate->add_option("--resume", resume, "leaderboard CSV from an earlier search");
  calibrate->add_flag("--self-test", self_test,
                      "fit synthetic ground truth simulated from the configured parameters");

  std::string scenario_path;
  bool compare = false;
  std::vector<int> t0s;
  CLI::App* scenario = app.add_subcommand("scenario", "run a counterfactual scenario");
  AddCommonOptions(scenario, o);
  scenario->add_option("--scenario", scenario_path, "scenario JSON file");
  scenario->add_flag("--compare-baseline", compare, "also run the baseline and join outputs");
  scenario->add_option("--t0", t0s, "kind 9 start days, comma separated")->delimiter(',');

  std::string command = "epinet";
  for (const std::string& a : args) command += " " + a;

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*simulate) return Simulate(o, command, out);
    if (*calibrate) {
      return Calibrate(o, command, stage1_only, resume, self_test, out, err);
    }
    return Scenario(o, command, scenario_path, compare, t0s, out);
  } catch (const InvariantError& e) {
    err << "invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const StructuralError& e) {
    err << "structural error: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const SchemaError& e) {
    err << "schema error: " << e.what() << "\n";
    return kExitInput;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace epinet::cli
