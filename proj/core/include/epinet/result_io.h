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

#ifndef EPINET_RESULT_IO_H_
#define EPINET_RESULT_IO_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "epinet/params.h"
#include "epinet/simulation.h"
#include "epinet/world.h"

namespace epinet {

// Per-run, per-day, per-region census:
// run,day,region,S,E,Asy,Sy,H,R,D,Q_S,Q_E,Q_Asy,Q_Sy,cum_exposed
void WriteRunsCsv(std::ostream& out, const SimulationResult& result);
SimulationResult ReadRunsCsv(std::istream& in);

// Per-day mean and sample standard deviation of country totals,
// day,S_mean,S_std,...,cum_exposed_mean,cum_exposed_std, with every value
// multiplied by `scale` (1 for node units, persons-per-node for persons).
void WriteAggregateCsv(std::ostream& out, const SimulationResult& result, double scale);

// day,hospitalized,flag for one run.
void WriteControllerLog(std::ostream& out, const std::vector<ControllerLogEntry>& log);

std::string Sha256Hex(const std::filesystem::path& file);

struct RunManifest {
  std::string command;
  std::uint64_t seed = 0;
  int runs = 0;
  int threads = 0;
  ModelParams params;
  WorldConfig world;
  std::string config_json;  // resolved configuration, flags applied
  std::vector<std::pair<std::string, std::string>> data_checksums;  // path, sha256
  std::vector<std::string> artifacts;
  std::vector<std::string> notes;
};

void WriteManifest(const std::filesystem::path& file, const RunManifest& manifest);

// Writes `text` to `file`, creating parent directories. Throws InputError.
void WriteTextFile(const std::filesystem::path& file, const std::string& text);

}  // namespace epinet

#endif  // EPINET_RESULT_IO_H_
