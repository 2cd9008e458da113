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

// Small builders shared by the unit and acceptance tests.

#ifndef EPINET_TESTS_TEST_UTIL_H_
#define EPINET_TESTS_TEST_UTIL_H_

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "epinet/interventions.h"
#include "epinet/network.h"
#include "epinet/region.h"
#include "epinet/world.h"

namespace epinet::testing {

inline Network CompleteGraph(int n) {
  std::vector<Edge> edges;
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b = a + 1; b < n; ++b) edges.push_back({a, b});
  }
  return Network(n, std::move(edges));
}

inline Region RegionOn(const Network& net, std::uint64_t seed, int id = 0) {
  const Network layers[] = {net};
  return MakeRegion(id, NetworkSuite::FromLayers(layers), 0, Rng(seed));
}

inline World WorldOf(std::vector<Region> regions, double r_mix = 0.0) {
  World w;
  for (const Region& r : regions) w.n_total += r.size();
  w.regions = std::move(regions);
  w.r_mix = r_mix;
  return w;
}

// Days with no measures at all, borders closed so nothing is imported.
inline PolicyTimeline QuietTimeline(int days) {
  PolicyTimeline t(days);
  const auto start = std::chrono::sys_days(std::chrono::year{2020} / 1 / 22);
  for (int d = 0; d < days; ++d) {
    t[d].date = start + std::chrono::days(d);
    t[d].international_open = false;
  }
  return t;
}

inline double Mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

inline double SampleVariance(const std::vector<double>& v) {
  const double m = Mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

// Standard deviation of the mean of `samples` binomial(trials, p) draws.
inline double BinomialMeanSigma(double trials, double p, int samples) {
  return std::sqrt(trials * p * (1.0 - p) / samples);
}

inline std::string ReadText(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline void WriteText(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream(path, std::ios::binary) << text;
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("epinet_" + tag + "_" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace epinet::testing

#endif  // EPINET_TESTS_TEST_UTIL_H_
