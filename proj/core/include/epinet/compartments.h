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

#ifndef EPINET_COMPARTMENTS_H_
#define EPINET_COMPARTMENTS_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace epinet {

// Stored per-node states. The infected state I (and its quarantined twin
// Q_I) is a branching point resolved to Sy/Asy in the same day it is
// entered, so it never appears in a node array.
enum class Compartment : std::uint8_t {
  kS,
  kE,
  kAsy,
  kSy,
  kH,
  kR,
  kD,
  kQS,
  kQE,
  kQAsy,
  kQSy,
};

inline constexpr int kNumCompartments = 11;

inline constexpr std::array<Compartment, kNumCompartments> kAllCompartments = {
    Compartment::kS,   Compartment::kE,  Compartment::kAsy,
    Compartment::kSy,  Compartment::kH,  Compartment::kR,
    Compartment::kD,   Compartment::kQS, Compartment::kQE,
    Compartment::kQAsy, Compartment::kQSy};

constexpr int Index(Compartment c) { return static_cast<int>(c); }

// Column label used in result files: S, E, Asy, Sy, H, R, D, Q_S, ...
std::string_view CompartmentName(Compartment c);
std::optional<Compartment> CompartmentFromName(std::string_view name);

// Asy and Sy transmit over graph edges; quarantined and hospitalized nodes
// are isolated.
constexpr bool IsInfectious(Compartment c) {
  return c == Compartment::kAsy || c == Compartment::kSy;
}

constexpr bool IsQuarantined(Compartment c) {
  return c == Compartment::kQS || c == Compartment::kQE ||
         c == Compartment::kQAsy || c == Compartment::kQSy;
}

constexpr bool IsAbsorbing(Compartment c) {
  return c == Compartment::kR || c == Compartment::kD;
}

struct NodeFlags {
  bool vaccinated = false;
  bool child = false;
};

// Node counts per compartment.
using Census = std::array<std::int64_t, kNumCompartments>;

inline std::int64_t Total(const Census& c) {
  std::int64_t sum = 0;
  for (auto v : c) sum += v;
  return sum;
}

inline std::int64_t& At(Census& c, Compartment k) { return c[Index(k)]; }
inline std::int64_t At(const Census& c, Compartment k) { return c[Index(k)]; }

}  // namespace epinet

#endif  // EPINET_COMPARTMENTS_H_
