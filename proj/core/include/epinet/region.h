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

#ifndef EPINET_REGION_H_
#define EPINET_REGION_H_

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "epinet/compartments.h"
#include "epinet/network.h"
#include "epinet/params.h"
#include "epinet/rng.h"

namespace epinet {

// One densely populated area: node states, per-node flags, its contact
// network suite and its own random stream.
struct Region {
  int id = 0;
  std::vector<Compartment> state;
  std::vector<NodeFlags> flags;
  NetworkSuite suite;
  Rng rng;
  std::int64_t cum_exposed = 0;      // S -> E events, all sources
  std::int64_t cum_symptomatic = 0;  // entries into Sy or Q_Sy

  int size() const { return static_cast<int>(state.size()); }
  Census CountCompartments() const;

  // Throws StructuralError if state/flags/suite sizes disagree.
  void CheckConsistency() const;

  // Scratch for StepRegion; not part of the model state.
  std::vector<std::uint32_t> infectious_contacts;
  std::vector<NodeId> touched;
};

// Builds a region with every node susceptible. `child_count` nodes chosen
// uniformly at random are flagged as children.
Region MakeRegion(int id, NetworkSuite suite, int child_count, Rng rng);

enum class Transition : std::uint8_t {
  kExposure,        // S -> E over graph edges
  kOnset,           // E -> I
  kIToSy,
  kIToAsy,
  kSyToH,
  kSyToR,
  kAsyToR,
  kHToR,
  kHToD,
  kQuarantineExitS,  // Q_S -> S
  kQuarantineExitE,  // Q_E -> E
  kQuarantinedOnset,  // Q_E -> Q_I
  kQIToQSy,
  kQIToQAsy,
  kQSyToH,
  kQSyToR,
  kQAsyToR,
};
inline constexpr int kNumTransitions = 17;

std::string_view TransitionName(Transition t);

struct StepTally {
  std::array<std::int64_t, kNumTransitions> counts{};

  std::int64_t& operator[](Transition t) { return counts[static_cast<int>(t)]; }
  std::int64_t operator[](Transition t) const { return counts[static_cast<int>(t)]; }
  StepTally& operator+=(const StepTally& other) {
    for (int i = 0; i < kNumTransitions; ++i) counts[i] += other.counts[i];
    return *this;
  }
  bool operator==(const StepTally&) const = default;
};

struct StepContext {
  SuiteLevel level = SuiteLevel::kRl;
  double p_e = 0.0;
};

// 1 - (1 - p_eff)^k with p_eff = p_e, or (1 - v_eff1) * p_e if vaccinated.
double ExposureProbability(int infectious_neighbors, double p_e, bool vaccinated,
                           double v_eff1);

// Resolves a node that just entered I: Sy with probability p_sy, or
// (1 - v_eff2) * p_sy if vaccinated; Asy otherwise. With `quarantined` set,
// returns Q_Sy / Q_Asy.
Compartment ResolveInfectionBranch(const NodeFlags& node, bool quarantined,
                                   double p_sy, double v_eff2, Rng& rng);

// Advances every node of the region by one day. All draws read the
// day-start state; results are applied together.
StepTally StepRegion(Region& region, const StepContext& context,
                     const EpiParams& params);

}  // namespace epinet

#endif  // EPINET_REGION_H_
