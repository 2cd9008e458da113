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

#include "epinet/region.h"

#include <cmath>
#include <numeric>
#include <string>

#include "epinet/errors.h"

namespace epinet {

namespace {

constexpr std::array<std::string_view, kNumTransitions> kTransitionNames = {
    "S->E",   "E->I",   "I->Sy",  "I->Asy", "Sy->H",    "Sy->R",
    "Asy->R", "H->R",   "H->D",   "Q_S->S", "Q_E->E",   "Q_E->Q_I",
    "Q_I->Q_Sy", "Q_I->Q_Asy", "Q_Sy->H", "Q_Sy->R", "Q_Asy->R"};

}  // namespace

std::string_view TransitionName(Transition t) {
  return kTransitionNames[static_cast<int>(t)];
}

Census Region::CountCompartments() const {
  Census census{};
  for (Compartment c : state) ++census[Index(c)];
  return census;
}

void Region::CheckConsistency() const {
  if (flags.size() != state.size() || suite.size() != size()) {
    throw StructuralError("region " + std::to_string(id) + ": node array size " +
                          std::to_string(state.size()) + ", flag array size " +
                          std::to_string(flags.size()) + ", graph size " +
                          std::to_string(suite.size()));
  }
}

Region MakeRegion(int id, NetworkSuite suite, int child_count, Rng rng) {
  Region region;
  region.id = id;
  const int n = suite.size();
  region.state.assign(n, Compartment::kS);
  region.flags.assign(n, NodeFlags{});
  if (child_count < 0 || child_count > n) {
    throw InputError("child count out of range for region " + std::to_string(id));
  }
  std::vector<NodeId> ids(n);
  std::iota(ids.begin(), ids.end(), 0);
  SampleToFront(ids, static_cast<std::size_t>(child_count), rng);
  for (int i = 0; i < child_count; ++i) region.flags[ids[i]].child = true;
  region.suite = std::move(suite);
  region.rng = std::move(rng);
  return region;
}

double ExposureProbability(int infectious_neighbors, double p_e, bool vaccinated,
                           double v_eff1) {
  if (infectious_neighbors <= 0) return 0.0;
  const double p = vaccinated ? (1.0 - v_eff1) * p_e : p_e;
  if (infectious_neighbors == 1) return p;
  return 1.0 - std::pow(1.0 - p, infectious_neighbors);
}

Compartment ResolveInfectionBranch(const NodeFlags& node, bool quarantined,
                                   double p_sy, double v_eff2, Rng& rng) {
  const double p = node.vaccinated ? (1.0 - v_eff2) * p_sy : p_sy;
  const bool symptomatic = rng.Bernoulli(p);
  if (quarantined) return symptomatic ? Compartment::kQSy : Compartment::kQAsy;
  return symptomatic ? Compartment::kSy : Compartment::kAsy;
}

StepTally StepRegion(Region& region, const StepContext& context,
                     const EpiParams& params) {
  region.CheckConsistency();
  const int n = region.size();
  auto& state = region.state;
  auto& contacts = region.infectious_contacts;
  auto& touched = region.touched;
  if (static_cast<int>(contacts.size()) != n) contacts.assign(n, 0);
  touched.clear();

  for (NodeId node = 0; node < n; ++node) {
    if (!IsInfectious(state[node])) continue;
    for (NodeId other : region.suite.Neighbors(node, context.level)) {
      if (state[other] == Compartment::kS && contacts[other]++ == 0) {
        touched.push_back(other);
      }
    }
  }

  StepTally tally;
  Rng& rng = region.rng;
  const double p_syh_r = params.p_syh + params.p_r;
  const double p_hd_r = params.p_hd + params.p_hr;
  const double p_s_i = params.p_s + params.p_i;

  for (NodeId node = 0; node < n; ++node) {
    Compartment& c = state[node];
    switch (c) {
      case Compartment::kS: {
        const auto k = static_cast<int>(contacts[node]);
        if (k == 0) break;
        const double p = ExposureProbability(k, context.p_e, region.flags[node].vaccinated,
                                             params.v_eff1);
        if (p > 0.0 && rng.Bernoulli(p)) {
          c = Compartment::kE;
          ++tally[Transition::kExposure];
          ++region.cum_exposed;
        }
        break;
      }
      case Compartment::kE:
        if (rng.Bernoulli(params.p_i)) {
          ++tally[Transition::kOnset];
          c = ResolveInfectionBranch(region.flags[node], false, params.p_sy,
                                     params.v_eff2, rng);
          if (c == Compartment::kSy) {
            ++tally[Transition::kIToSy];
            ++region.cum_symptomatic;
          } else {
            ++tally[Transition::kIToAsy];
          }
        }
        break;
      case Compartment::kSy: {
        const double u = rng.Uniform();
        if (u < params.p_syh) {
          c = Compartment::kH;
          ++tally[Transition::kSyToH];
        } else if (u < p_syh_r) {
          c = Compartment::kR;
          ++tally[Transition::kSyToR];
        }
        break;
      }
      case Compartment::kAsy:
        if (rng.Bernoulli(params.p_r)) {
          c = Compartment::kR;
          ++tally[Transition::kAsyToR];
        }
        break;
      case Compartment::kH: {
        const double u = rng.Uniform();
        if (u < params.p_hd) {
          c = Compartment::kD;
          ++tally[Transition::kHToD];
        } else if (u < p_hd_r) {
          c = Compartment::kR;
          ++tally[Transition::kHToR];
        }
        break;
      }
      case Compartment::kQS:
        if (rng.Bernoulli(params.p_s)) {
          c = Compartment::kS;
          ++tally[Transition::kQuarantineExitS];
        }
        break;
      case Compartment::kQE: {
        const double u = rng.Uniform();
        if (u < params.p_s) {
          c = Compartment::kE;
          ++tally[Transition::kQuarantineExitE];
        } else if (u < p_s_i) {
          ++tally[Transition::kQuarantinedOnset];
          c = ResolveInfectionBranch(region.flags[node], true, params.p_sy,
                                     params.v_eff2, rng);
          if (c == Compartment::kQSy) {
            ++tally[Transition::kQIToQSy];
            ++region.cum_symptomatic;
          } else {
            ++tally[Transition::kQIToQAsy];
          }
        }
        break;
      }
      case Compartment::kQSy: {
        const double u = rng.Uniform();
        if (u < params.p_syh) {
          c = Compartment::kH;
          ++tally[Transition::kQSyToH];
        } else if (u < p_syh_r) {
          c = Compartment::kR;
          ++tally[Transition::kQSyToR];
        }
        break;
      }
      case Compartment::kQAsy:
        if (rng.Bernoulli(params.p_r)) {
          c = Compartment::kR;
          ++tally[Transition::kQAsyToR];
        }
        break;
      case Compartment::kR:
      case Compartment::kD:
        break;
    }
  }

  for (NodeId node : touched) contacts[node] = 0;
  touched.clear();
  return tally;
}

}  // namespace epinet
