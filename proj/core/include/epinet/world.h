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

#ifndef EPINET_WORLD_H_
#define EPINET_WORLD_H_

#include <cstdint>
#include <span>
#include <vector>

#include "epinet/compartments.h"
#include "epinet/params.h"
#include "epinet/region.h"

namespace epinet {

// Which regions' counts multiply in the cross-region exposure term.
//   kCorrected: infected elsewhere meet susceptibles here, S_i * sum_j I_j.
//   kAsWritten: I_i * sum_j S_j, the literal index order of the formula.
enum class MixingIndexOrder { kCorrected, kAsWritten };

struct WorldConfig {
  double population = 0.0;      // persons
  double child_fraction = 0.0;  // share of nodes never vaccinated
  double scale_factor = 100.0;  // persons per node
  int target_region_size = 3000;
  int min_region_size = 2500;
  int max_region_size = 3500;
  double p_int = 0.01;          // daily import probability per region
  MixingIndexOrder mixing_order = MixingIndexOrder::kCorrected;

  std::int64_t TargetNodes() const;
  void Validate() const;
};

struct RegionSpec {
  int id = 0;
  int size = 0;
};

struct World {
  std::vector<Region> regions;
  std::int64_t n_total = 0;
  double r_mix = 0.0;
  double p_int = 0.01;
  double scale_factor = 100.0;
  MixingIndexOrder mixing_order = MixingIndexOrder::kCorrected;

  Census CountCompartments() const;
  std::vector<int> RegionSizes() const;
};

// Region sizes drawn uniformly in [min, max] and rescaled so they sum to
// `target_nodes` exactly while staying inside the bounds.
std::vector<int> DrawRegionSizes(std::int64_t target_nodes, const WorldConfig& config,
                                 Rng& rng);

// Largest-remainder split of `total` proportional to `weights`.
std::vector<std::int64_t> Apportion(std::int64_t total, std::span<const double> weights);
std::vector<std::int64_t> Apportion(std::int64_t total, std::span<const int> weights);

// Builds regions with the given ids and sizes. Region r's stream is derived
// from (seed, run, id) only, so a region evolves identically regardless of
// which other regions exist.
World MakeWorld(std::span<const RegionSpec> specs, const WorldConfig& config,
                const BehaviorParams& behavior, std::uint64_t seed, int run);

// Decomposes a country into regions of about target_region_size nodes.
World BuildWorld(const WorldConfig& config, const BehaviorParams& behavior,
                 std::uint64_t seed, int run);

// Moves one uniformly chosen S node per region to E. Returns the number seeded.
int SeedInfection(World& world);

// Expected cross-region exposures per region for today's p_e; zero when
// internal travel is closed or there is a single region.
std::vector<double> ExpectedMixingExposures(const World& world, double p_e,
                                            bool internal_travel_open);

// Stochastically rounds `expected` and exposes that many distinct S nodes of
// the region; vaccinated picks escape with probability v_eff1. Returns the
// number of new exposures.
std::int64_t ApplyMixingExposures(Region& region, double expected, double v_eff1);

// Both steps above for every region, in region order.
std::vector<std::int64_t> MixRegions(World& world, double p_e, bool internal_travel_open,
                                     double v_eff1);

// With probability p_int, exposes one uniformly chosen S node of the region.
bool ImportCase(Region& region, double p_int);

// ImportCase for every region when international travel is open.
int ImportCases(World& world, bool international_open);

}  // namespace epinet

#endif  // EPINET_WORLD_H_
