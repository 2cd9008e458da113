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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "epinet/errors.h"
#include "epinet/network.h"

namespace epinet {

namespace {

bool PickSusceptible(Region& region, NodeId& picked) {
  std::vector<NodeId> pool;
  for (NodeId i = 0; i < region.size(); ++i) {
    if (region.state[i] == Compartment::kS) pool.push_back(i);
  }
  if (pool.empty()) return false;
  picked = pool[static_cast<std::size_t>(
      region.rng.UniformInt(0, static_cast<std::int64_t>(pool.size()) - 1))];
  return true;
}

}  // namespace

std::int64_t WorldConfig::TargetNodes() const {
  return std::llround(population / scale_factor);
}

void WorldConfig::Validate() const {
  if (!(population > 0.0)) throw InputError("population must be positive");
  if (!(child_fraction >= 0.0 && child_fraction < 1.0)) {
    throw InputError("child_fraction must lie in [0, 1)");
  }
  if (!(scale_factor > 0.0)) throw InputError("scale_factor must be positive");
  if (min_region_size < 5 || min_region_size > max_region_size ||
      target_region_size < min_region_size || target_region_size > max_region_size) {
    throw InputError("region size bounds must satisfy 5 <= min <= target <= max");
  }
  if (!(p_int >= 0.0 && p_int <= 1.0)) throw InputError("p_int must lie in [0, 1]");
}

Census World::CountCompartments() const {
  Census total{};
  for (const Region& r : regions) {
    const Census c = r.CountCompartments();
    for (int i = 0; i < kNumCompartments; ++i) total[i] += c[i];
  }
  return total;
}

std::vector<int> World::RegionSizes() const {
  std::vector<int> sizes;
  sizes.reserve(regions.size());
  for (const Region& r : regions) sizes.push_back(r.size());
  return sizes;
}

std::vector<int> DrawRegionSizes(std::int64_t target_nodes, const WorldConfig& config,
                                 Rng& rng) {
  const int lo = config.min_region_size;
  const int hi = config.max_region_size;
  if (target_nodes < lo) {
    throw InputError("population too small for one region: " + std::to_string(target_nodes) +
                     " nodes, need at least " + std::to_string(lo));
  }
  auto m = std::max<std::int64_t>(
      1, std::llround(static_cast<double>(target_nodes) / config.target_region_size));
  if (target_nodes > m * hi) ++m;
  if (target_nodes < m * lo) --m;
  if (m < 1 || target_nodes > m * hi || target_nodes < m * lo) {
    throw InputError("cannot split " + std::to_string(target_nodes) +
                     " nodes into regions of " + std::to_string(lo) + ".." +
                     std::to_string(hi) + " nodes");
  }

  std::vector<int> raw(m);
  for (auto& s : raw) s = static_cast<int>(rng.UniformInt(lo, hi));
  std::vector<std::int64_t> sizes = Apportion(target_nodes, std::span<const int>(raw));
  // Rescaling can push a region past a bound; shift the excess to regions
  // with slack until every size is legal. Totals stay exact.
  std::int64_t excess = 0;
  for (auto& s : sizes) {
    if (s > hi) {
      excess += s - hi;
      s = hi;
    } else if (s < lo) {
      excess -= lo - s;
      s = lo;
    }
  }
  for (std::size_t i = 0; excess != 0; i = (i + 1) % sizes.size()) {
    if (excess > 0 && sizes[i] < hi) {
      ++sizes[i];
      --excess;
    } else if (excess < 0 && sizes[i] > lo) {
      --sizes[i];
      ++excess;
    }
  }
  return {sizes.begin(), sizes.end()};
}

std::vector<std::int64_t> Apportion(std::int64_t total, std::span<const int> weights) {
  const std::vector<double> w(weights.begin(), weights.end());
  return Apportion(total, std::span<const double>(w));
}

std::vector<std::int64_t> Apportion(std::int64_t total, std::span<const double> weights) {
  std::vector<std::int64_t> out(weights.size(), 0);
  if (weights.empty() || total <= 0) return out;
  const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (sum <= 0.0) return out;
  std::vector<std::pair<double, std::size_t>> remainders;
  remainders.reserve(weights.size());
  std::int64_t assigned = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double quota = static_cast<double>(total) * weights[i] / sum;
    out[i] = static_cast<std::int64_t>(std::floor(quota));
    assigned += out[i];
    remainders.emplace_back(quota - static_cast<double>(out[i]), i);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t k = 0; assigned < total; ++k, ++assigned) {
    ++out[remainders[k % remainders.size()].second];
  }
  return out;
}

World MakeWorld(std::span<const RegionSpec> specs, const WorldConfig& config,
                const BehaviorParams& behavior, std::uint64_t seed, int run) {
  World world;
  world.r_mix = behavior.r_mix;
  world.p_int = config.p_int;
  world.scale_factor = config.scale_factor;
  world.mixing_order = config.mixing_order;
  world.regions.resize(specs.size());
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const RegionSpec& spec = specs[i];
    Rng rng = Rng::Derive(seed, {static_cast<std::uint64_t>(StreamTag::kRegion),
                                 static_cast<std::uint64_t>(run),
                                 static_cast<std::uint64_t>(spec.id)});
    NetworkSuite suite = BuildSuite(spec.size, behavior, rng);
    const auto children =
        static_cast<int>(std::llround(config.child_fraction * spec.size));
    world.regions[i] = MakeRegion(spec.id, std::move(suite), children, std::move(rng));
    world.n_total += spec.size;
  }
  return world;
}

World BuildWorld(const WorldConfig& config, const BehaviorParams& behavior,
                 std::uint64_t seed, int run) {
  config.Validate();
  Rng rng = Rng::Derive(seed, {static_cast<std::uint64_t>(StreamTag::kWorld),
                               static_cast<std::uint64_t>(run)});
  const std::vector<int> sizes = DrawRegionSizes(config.TargetNodes(), config, rng);
  std::vector<RegionSpec> specs(sizes.size());
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    specs[i] = {static_cast<int>(i), sizes[i]};
  }
  return MakeWorld(specs, config, behavior, seed, run);
}

int SeedInfection(World& world) {
  int seeded = 0;
  for (Region& region : world.regions) {
    NodeId node;
    if (!PickSusceptible(region, node)) continue;
    region.state[node] = Compartment::kE;
    ++region.cum_exposed;
    ++seeded;
  }
  return seeded;
}

std::vector<double> ExpectedMixingExposures(const World& world, double p_e,
                                            bool internal_travel_open) {
  const std::size_t m = world.regions.size();
  std::vector<double> expected(m, 0.0);
  if (!internal_travel_open || m < 2 || world.r_mix == 0.0 || world.n_total == 0) {
    return expected;
  }
  std::vector<double> infectious(m), susceptible(m);
  double total_i = 0.0, total_s = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const Census c = world.regions[i].CountCompartments();
    infectious[i] = static_cast<double>(At(c, Compartment::kAsy) + At(c, Compartment::kSy));
    susceptible[i] = static_cast<double>(At(c, Compartment::kS));
    total_i += infectious[i];
    total_s += susceptible[i];
  }
  const double rate = world.r_mix * p_e / static_cast<double>(world.n_total);
  for (std::size_t i = 0; i < m; ++i) {
    expected[i] = world.mixing_order == MixingIndexOrder::kCorrected
                      ? rate * susceptible[i] * (total_i - infectious[i])
                      : rate * infectious[i] * (total_s - susceptible[i]);
  }
  return expected;
}

std::int64_t ApplyMixingExposures(Region& region, double expected, double v_eff1) {
  if (!(expected > 0.0)) return 0;
  const double whole = std::floor(expected);
  auto count = static_cast<std::int64_t>(whole);
  if (region.rng.Bernoulli(expected - whole)) ++count;
  if (count == 0) return 0;
  std::vector<NodeId> pool;
  for (NodeId i = 0; i < region.size(); ++i) {
    if (region.state[i] == Compartment::kS) pool.push_back(i);
  }
  const std::size_t taken = SampleToFront(pool, static_cast<std::size_t>(count), region.rng);
  std::sort(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(taken));
  std::int64_t exposed = 0;
  for (std::size_t k = 0; k < taken; ++k) {
    const NodeId node = pool[k];
    if (region.flags[node].vaccinated && region.rng.Bernoulli(v_eff1)) continue;
    region.state[node] = Compartment::kE;
    ++region.cum_exposed;
    ++exposed;
  }
  return exposed;
}

std::vector<std::int64_t> MixRegions(World& world, double p_e, bool internal_travel_open,
                                     double v_eff1) {
  const std::vector<double> expected =
      ExpectedMixingExposures(world, p_e, internal_travel_open);
  std::vector<std::int64_t> exposed(world.regions.size(), 0);
  for (std::size_t i = 0; i < world.regions.size(); ++i) {
    exposed[i] = ApplyMixingExposures(world.regions[i], expected[i], v_eff1);
  }
  return exposed;
}

bool ImportCase(Region& region, double p_int) {
  if (!region.rng.Bernoulli(p_int)) return false;
  NodeId node;
  if (!PickSusceptible(region, node)) return false;
  region.state[node] = Compartment::kE;
  ++region.cum_exposed;
  return true;
}

int ImportCases(World& world, bool international_open) {
  if (!international_open) return 0;
  int imported = 0;
  for (Region& region : world.regions) imported += ImportCase(region, world.p_int) ? 1 : 0;
  return imported;
}

}  // namespace epinet
