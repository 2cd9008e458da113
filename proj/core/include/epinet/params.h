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

#ifndef EPINET_PARAMS_H_
#define EPINET_PARAMS_H_

#include <span>
#include <string_view>

namespace epinet {

// Disease-related transition probabilities shared by every country. All
// values are per-day probabilities except p_sy (per infection) and the two
// vaccine efficacies.
struct EpiParams {
  double p_i = 0.08;         // E -> I
  double p_sy = 0.5;         // I -> Sy (otherwise Asy)
  double p_syh = 0.006;      // Sy -> H
  double p_r = 1.0 / 29.0;   // Asy/Sy -> R
  double p_hr = 1.0 / 11.0;  // H -> R
  double p_hd = 0.03;        // H -> D
  double p_s = 1.0 / 14.0;   // Q_S -> S, Q_E -> E
  double v_eff1 = 0.95;      // exposure reduction for vaccinated nodes
  double v_eff2 = 0.7;       // symptom reduction for vaccinated nodes

  // Throws InvariantError naming the first offending field.
  void Validate() const;
};

// Population behaviour parameters, fitted per country.
struct BehaviorParams {
  double p_e_min = 0.075;
  double p_e_max = 0.33;
  double t_ramp = 11.0;  // months for p_e to recover after a lockdown
  double p_ct_2 = 0.65;
  double p_ct_3 = 0.8;
  double p_l = 0.006;    // lattice rewiring probability
  double p_rxs = 1.5;    // expected added degree of each random overlay
  double p_rs = 0.8;
  double p_rm = 1.5;
  double p_rl = 0.8;
  double r_mix = 0.065;

  void Validate() const;

  static BehaviorParams Gbr();
  static BehaviorParams Isr();
};

struct ModelParams {
  EpiParams epi;
  BehaviorParams behavior;

  void Validate() const {
    epi.Validate();
    behavior.Validate();
  }
};

// Flat access by field name, used by calibration and config files.
std::span<const std::string_view> ParamNames();
bool IsParamName(std::string_view name);
double GetParam(const ModelParams& params, std::string_view name);
void SetParam(ModelParams& params, std::string_view name, double value);

}  // namespace epinet

#endif  // EPINET_PARAMS_H_
