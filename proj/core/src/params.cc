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

#include "epinet/params.h"

#include <array>
#include <string>

#include "epinet/errors.h"

namespace epinet {

namespace {

void RequireProbability(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw InvariantError(std::string(name) + " must lie in [0, 1], got " +
                         std::to_string(v));
  }
}

void Require(bool ok, const std::string& message) {
  if (!ok) throw InvariantError(message);
}

constexpr std::array<std::string_view, 20> kNames = {
    "p_i",    "p_sy",   "p_syh", "p_r",    "p_hr",  "p_hd",  "p_s",
    "v_eff1", "v_eff2", "p_e_min", "p_e_max", "t_ramp", "p_ct_2", "p_ct_3",
    "p_l",    "p_rxs",  "p_rs",  "p_rm",   "p_rl",  "r_mix"};

double* Field(ModelParams& p, std::string_view name) {
  EpiParams& e = p.epi;
  BehaviorParams& b = p.behavior;
  if (name == "p_i") return &e.p_i;
  if (name == "p_sy") return &e.p_sy;
  if (name == "p_syh") return &e.p_syh;
  if (name == "p_r") return &e.p_r;
  if (name == "p_hr") return &e.p_hr;
  if (name == "p_hd") return &e.p_hd;
  if (name == "p_s") return &e.p_s;
  if (name == "v_eff1") return &e.v_eff1;
  if (name == "v_eff2") return &e.v_eff2;
  if (name == "p_e_min") return &b.p_e_min;
  if (name == "p_e_max") return &b.p_e_max;
  if (name == "t_ramp") return &b.t_ramp;
  if (name == "p_ct_2") return &b.p_ct_2;
  if (name == "p_ct_3") return &b.p_ct_3;
  if (name == "p_l") return &b.p_l;
  if (name == "p_rxs") return &b.p_rxs;
  if (name == "p_rs") return &b.p_rs;
  if (name == "p_rm") return &b.p_rm;
  if (name == "p_rl") return &b.p_rl;
  if (name == "r_mix") return &b.r_mix;
  return nullptr;
}

}  // namespace

void EpiParams::Validate() const {
  RequireProbability(p_i, "p_i");
  RequireProbability(p_sy, "p_sy");
  RequireProbability(p_syh, "p_syh");
  RequireProbability(p_r, "p_r");
  RequireProbability(p_hr, "p_hr");
  RequireProbability(p_hd, "p_hd");
  RequireProbability(p_s, "p_s");
  RequireProbability(v_eff1, "v_eff1");
  RequireProbability(v_eff2, "v_eff2");
  Require(p_syh + p_r <= 1.0, "p_syh + p_r must not exceed 1");
  Require(p_hr + p_hd <= 1.0, "p_hr + p_hd must not exceed 1");
  Require(p_s + p_i <= 1.0, "p_s + p_i must not exceed 1");
}

void BehaviorParams::Validate() const {
  Require(p_e_min > 0.0 && p_e_min < p_e_max && p_e_max <= 1.0,
          "p_e_min/p_e_max must satisfy 0 < p_e_min < p_e_max <= 1");
  Require(p_ct_2 > 0.0 && p_ct_2 < p_ct_3 && p_ct_3 < 1.0,
          "p_ct_2/p_ct_3 must satisfy 0 < p_ct_2 < p_ct_3 < 1");
  Require(t_ramp >= 0.0, "t_ramp must be non-negative");
  RequireProbability(p_l, "p_l");
  Require(p_rxs >= 0.0 && p_rs >= 0.0 && p_rm >= 0.0 && p_rl >= 0.0,
          "random overlay degrees p_rxs/p_rs/p_rm/p_rl must be non-negative");
  RequireProbability(r_mix, "r_mix");
}

BehaviorParams BehaviorParams::Gbr() { return BehaviorParams{}; }

BehaviorParams BehaviorParams::Isr() {
  BehaviorParams b;
  b.p_e_min = 0.085;
  b.p_e_max = 0.45;
  b.t_ramp = 8.0;
  b.p_l = 0.004;
  b.p_rxs = 0.9;
  b.p_rs = 1.5;
  b.p_rm = 1.0;
  b.p_rl = 0.8;
  return b;
}

std::span<const std::string_view> ParamNames() { return kNames; }

bool IsParamName(std::string_view name) {
  ModelParams scratch;
  return Field(scratch, name) != nullptr;
}

double GetParam(const ModelParams& params, std::string_view name) {
  double* f = Field(const_cast<ModelParams&>(params), name);
  if (f == nullptr) throw InputError("unknown parameter '" + std::string(name) + "'");
  return *f;
}

void SetParam(ModelParams& params, std::string_view name, double value) {
  double* f = Field(params, name);
  if (f == nullptr) throw InputError("unknown parameter '" + std::string(name) + "'");
  *f = value;
}

}  // namespace epinet
