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

#include <benchmark/benchmark.h>

#include "epinet/network.h"

namespace epinet {
namespace {

void BM_BuildSuite(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(7);
  for (auto _ : state) benchmark::DoNotOptimize(BuildSuite(n, BehaviorParams::Gbr(), rng));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_BuildSuite)->Arg(3000)->Arg(30000);

void BM_ErOverlay(benchmark::State& state) {
  Rng rng(8);
  for (auto _ : state) benchmark::DoNotOptimize(BuildErOverlay(3000, 1.5, rng));
}
BENCHMARK(BM_ErOverlay);

void BM_Rewire(benchmark::State& state) {
  Rng rng(9);
  const Network ring = BuildRingLattice(3000);
  for (auto _ : state) benchmark::DoNotOptimize(Rewire(ring, 0.006, rng));
}
BENCHMARK(BM_Rewire);

}  // namespace
}  // namespace epinet
