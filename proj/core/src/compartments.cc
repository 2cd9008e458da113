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

#include "epinet/compartments.h"

namespace epinet {

namespace {
constexpr std::array<std::string_view, kNumCompartments> kNames = {
    "S", "E", "Asy", "Sy", "H", "R", "D", "Q_S", "Q_E", "Q_Asy", "Q_Sy"};
}  // namespace

std::string_view CompartmentName(Compartment c) { return kNames[Index(c)]; }

std::optional<Compartment> CompartmentFromName(std::string_view name) {
  for (int i = 0; i < kNumCompartments; ++i) {
    if (kNames[i] == name) return static_cast<Compartment>(i);
  }
  return std::nullopt;
}

}  // namespace epinet
