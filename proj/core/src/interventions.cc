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

#include "epinet/interventions.h"

#include <algorithm>
#include <string>

#include "epinet/errors.h"

namespace epinet {

namespace {

void RequireRange(int value, int lo, int hi, const char* name, std::size_t day) {
  if (value < lo || value > hi) {
    throw InputError(std::string(name) + " on day " + std::to_string(day) +
                     " must be in " + std::to_string(lo) + ".." + std::to_string(hi));
  }
}

}  // namespace

void ValidateTimeline(const PolicyTimeline& timeline) {
  if (timeline.empty()) throw InputError("policy timeline is empty");
  for (std::size_t d = 0; d < timeline.size(); ++d) {
    const PolicyDay& p = timeline[d];
    RequireRange(p.stay_home, 0, 1, "stay_home", d);
    RequireRange(p.school_closing, 0, 3, "school_closing", d);
    RequireRange(p.workplace_closing, 0, 3, "workplace_closing", d);
    RequireRange(p.testing_policy, 0, 3, "testing_policy", d);
    RequireRange(p.contact_tracing, 1, 3, "contact_tracing", d);
    if (!(p.daily_tests >= 0.0) || !(p.daily_vaccines >= 0.0)) {
      throw InputError("negative test or vaccine count on day " + std::to_string(d));
    }
  }
}

ExposureSchedule::ExposureSchedule(double p_e_min, double p_e_max, double t_ramp_months)
    : p_min_(p_e_min), p_max_(p_e_max), ramp_days_(t_ramp_months * 30.0) {
  if (!(p_e_min < p_e_max)) throw InputError("p_e_min must be below p_e_max");
}

double ExposureSchedule::Advance(bool lockdown) {
  if (lockdown) {
    seen_lockdown_ = true;
    days_since_lockdown_ = 0;
    return p_min_;
  }
  if (!seen_lockdown_) return p_max_;
  ++days_since_lockdown_;
  if (ramp_days_ <= 0.0) return p_max_;
  const double frac = std::min(1.0, days_since_lockdown_ / ramp_days_);
  return p_min_ + (p_max_ - p_min_) * frac;
}

std::vector<double> ComputePeSchedule(const PolicyTimeline& timeline,
                                      double p_e_min, double p_e_max,
                                      double t_ramp_months) {
  if (timeline.empty()) throw InputError("policy timeline is empty");
  ExposureSchedule schedule(p_e_min, p_e_max, t_ramp_months);
  std::vector<double> out;
  out.reserve(timeline.size());
  for (const PolicyDay& day : timeline) out.push_back(schedule.Advance(day.stay_home == 1));
  return out;
}

bool IsVaccineEligible(Compartment state, const NodeFlags& flags) {
  if (flags.vaccinated || flags.child) return false;
  switch (state) {
    case Compartment::kS:
    case Compartment::kE:
    case Compartment::kAsy:
    case Compartment::kR:
      return true;
    default:
      return false;
  }
}

std::int64_t Vaccinate(Region& region, std::int64_t doses) {
  if (doses <= 0) return 0;
  std::vector<NodeId> pool;
  for (NodeId i = 0; i < region.size(); ++i) {
    if (IsVaccineEligible(region.state[i], region.flags[i])) pool.push_back(i);
  }
  const std::size_t taken =
      SampleToFront(pool, static_cast<std::size_t>(doses), region.rng);
  for (std::size_t k = 0; k < taken; ++k) region.flags[pool[k]].vaccinated = true;
  return static_cast<std::int64_t>(taken);
}

std::vector<NodeId> RunTesting(Region& region, std::int64_t tests, int testing_policy) {
  std::vector<NodeId> positives;
  if (tests <= 0 || testing_policy <= 0) return positives;
  std::vector<NodeId> pool;
  for (NodeId i = 0; i < region.size(); ++i) {
    const Compartment c = region.state[i];
    const bool eligible = testing_policy >= 3
                              ? (c == Compartment::kS || c == Compartment::kE ||
                                 c == Compartment::kAsy || c == Compartment::kSy)
                              : c == Compartment::kSy;
    if (eligible) pool.push_back(i);
  }
  const std::size_t taken =
      SampleToFront(pool, static_cast<std::size_t>(tests), region.rng);
  for (std::size_t k = 0; k < taken; ++k) {
    const NodeId node = pool[k];
    Compartment& c = region.state[node];
    if (c == Compartment::kAsy) {
      c = Compartment::kQAsy;
      positives.push_back(node);
    } else if (c == Compartment::kSy) {
      c = Compartment::kQSy;
      positives.push_back(node);
    }
  }
  std::sort(positives.begin(), positives.end());
  return positives;
}

std::vector<NodeId> TraceContacts(Region& region, std::span<const NodeId> positives,
                                  SuiteLevel active_level, int tracing_level,
                                  double p_ct_2, double p_ct_3) {
  std::vector<NodeId> traced;
  if (tracing_level <= 1) return traced;
  const double p_ct = tracing_level == 2 ? p_ct_2 : p_ct_3;
  for (NodeId positive : positives) {
    for (NodeId other : region.suite.Neighbors(positive, active_level)) {
      Compartment& c = region.state[other];
      Compartment next;
      switch (c) {
        case Compartment::kS: next = Compartment::kQS; break;
        case Compartment::kE: next = Compartment::kQE; break;
        case Compartment::kAsy: next = Compartment::kQAsy; break;
        case Compartment::kSy: next = Compartment::kQSy; break;
        default: continue;
      }
      if (region.rng.Bernoulli(p_ct)) {
        c = next;
        traced.push_back(other);
      }
    }
  }
  return traced;
}

}  // namespace epinet
