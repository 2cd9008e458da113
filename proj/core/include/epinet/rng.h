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

#ifndef EPINET_RNG_H_
#define EPINET_RNG_H_

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace epinet {

// Well-known stream tags. A stream is identified by (master seed, path), so
// every region, run and purpose draws from its own reproducible sequence no
// matter how work is scheduled across threads.
enum class StreamTag : std::uint64_t {
  kWorld = 1,
  kRegion = 2,
  kSearch = 3,
  kSnapshot = 4,
};

class Rng {
 public:
  using Engine = std::mt19937_64;

  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  // Derives an independent substream from a master seed and a path of ids.
  static Rng Derive(std::uint64_t master_seed,
                    std::initializer_list<std::uint64_t> path) {
    std::vector<std::uint32_t> words;
    words.reserve(2 + 2 * path.size());
    auto push = [&words](std::uint64_t v) {
      words.push_back(static_cast<std::uint32_t>(v));
      words.push_back(static_cast<std::uint32_t>(v >> 32));
    };
    push(master_seed);
    for (std::uint64_t p : path) push(p);
    std::seed_seq seq(words.begin(), words.end());
    Rng rng;
    rng.engine_.seed(seq);
    return rng;
  }

  // Uniform double in [0, 1) with 53 random bits.
  double Uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  bool Bernoulli(double p) { return Uniform() < p; }

  // Uniform integer in [lo, hi].
  std::int64_t UniformInt(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
  }

  Engine& engine() { return engine_; }

 private:
  Engine engine_;
};

// Moves `count` distinct elements chosen uniformly at random to the front of
// `pool` (partial Fisher-Yates). Returns the number actually selected, which
// is min(count, pool.size()).
template <typename T>
std::size_t SampleToFront(std::vector<T>& pool, std::size_t count, Rng& rng) {
  const std::size_t take = count < pool.size() ? count : pool.size();
  for (std::size_t i = 0; i < take; ++i) {
    const auto j = static_cast<std::size_t>(
        rng.UniformInt(static_cast<std::int64_t>(i),
                       static_cast<std::int64_t>(pool.size()) - 1));
    std::swap(pool[i], pool[j]);
  }
  return take;
}

}  // namespace epinet

#endif  // EPINET_RNG_H_
