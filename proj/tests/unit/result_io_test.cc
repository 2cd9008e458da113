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

#include "epinet/result_io.h"

#include <sstream>

#include <gtest/gtest.h>

#include "epinet/data_io.h"
#include "epinet/errors.h"
#include "json.hpp"
#include "test_util.h"

namespace epinet {
namespace {

SimulationResult Sample() {
  WorldConfig c;
  c.population = 6000 * 100.0;
  PolicyTimeline t = testing::QuietTimeline(60);
  for (auto& d : t) d.international_open = true;
  SimulationOptions o;
  o.n_runs = 2;
  o.seed = 3;
  o.threads = 1;
  return RunSimulation(c, t, ModelParams{}, o);
}

TEST(RunsCsvTest, HeaderAndRoundTrip) {
  const SimulationResult result = Sample();
  std::stringstream buf;
  WriteRunsCsv(buf, result);
  const std::string text = buf.str();
  EXPECT_EQ(text.substr(0, text.find('\n')),
            "run,day,region,S,E,Asy,Sy,H,R,D,Q_S,Q_E,Q_Asy,Q_Sy,cum_exposed");
  const SimulationResult back = ReadRunsCsv(buf);
  ASSERT_EQ(back.runs.size(), 2u);
  EXPECT_EQ(back.num_days, result.num_days);
  EXPECT_EQ(back.n_total, result.n_total);
  for (int run = 0; run < 2; ++run) {
    EXPECT_EQ(back.runs[run].region_sizes, result.runs[run].region_sizes);
    for (std::size_t i = 0; i < result.runs[run].records.size(); ++i) {
      ASSERT_EQ(back.runs[run].records[i].counts, result.runs[run].records[i].counts);
      ASSERT_EQ(back.runs[run].records[i].cum_exposed,
                result.runs[run].records[i].cum_exposed);
    }
  }
  std::stringstream again;
  WriteRunsCsv(again, back);
  EXPECT_EQ(again.str(), text);
}

TEST(RunsCsvTest, RejectsForeignHeader) {
  std::stringstream bad("day,S\n0,1\n");
  EXPECT_THROW(ReadRunsCsv(bad), SchemaError);
}

TEST(AggregateCsvTest, ScaledColumns) {
  const SimulationResult result = Sample();
  std::stringstream nodes, persons;
  WriteAggregateCsv(nodes, result, 1.0);
  WriteAggregateCsv(persons, result, 100.0);
  const auto n = ParseCsv(nodes.str());
  const auto p = ParseCsv(persons.str());
  ASSERT_EQ(n.size(), static_cast<std::size_t>(result.num_days) + 1);
  EXPECT_EQ(n[0].fields[0], "day");
  EXPECT_EQ(n[0].fields[1], "S_mean");
  EXPECT_EQ(n[0].fields.back(), "cum_exposed_std");
  EXPECT_EQ(n[1].fields[1], "6000");
  EXPECT_EQ(p[1].fields[1], "600000");
}

TEST(ControllerLogTest, Format) {
  std::stringstream out;
  WriteControllerLog(out, {{3, 12, true}, {4, 2, false}});
  EXPECT_EQ(out.str(), "day,hospitalized,flag\n3,12,1\n4,2,0\n");
}

TEST(Sha256Test, KnownDigest) {
  testing::TempDir dir("sha");
  testing::WriteText(dir.path() / "abc.txt", "abc");
  EXPECT_EQ(Sha256Hex(dir.path() / "abc.txt"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_THROW(Sha256Hex(dir.path() / "missing"), InputError);
}

TEST(ManifestTest, RecordsRunContext) {
  testing::TempDir dir("manifest");
  RunManifest m;
  m.command = "simulate";
  m.seed = 11;
  m.runs = 4;
  m.threads = 2;
  m.world.population = 9.2e6;
  m.config_json = R"({"seed": 11})";
  m.data_checksums = {{"data.csv", "00"}};
  m.artifacts = {"runs.csv"};
  WriteManifest(dir.path() / "sub" / "manifest.json", m);
  const auto j = nlohmann::json::parse(testing::ReadText(dir.path() / "sub" / "manifest.json"));
  EXPECT_EQ(j["seed"], 11);
  EXPECT_EQ(j["world"]["n_total"], 92000);
  EXPECT_EQ(j["world"]["mixing_index_order"], "corrected");
  EXPECT_DOUBLE_EQ(j["params"]["p_e_max"].get<double>(), 0.33);
  EXPECT_EQ(j["params"].size(), ParamNames().size());
  EXPECT_EQ(j["data"][0]["sha256"], "00");
  EXPECT_EQ(j["config"]["seed"], 11);
}

}  // namespace
}  // namespace epinet
