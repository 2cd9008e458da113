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

#ifndef EPINET_INTERVENTIONS_H_
#define EPINET_INTERVENTIONS_H_

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "epinet/network.h"
#include "epinet/region.h"

namespace epinet {

// Government measures in force on one calendar day. Counts are
// country-scale (persons), not nodes.
struct PolicyDay {
  std::chrono::sys_days date{};
  int stay_home = 0;          // 0..1
  int school_closing = 0;     // 0..3
  int workplace_closing = 0;  // 0..3
  int testing_policy = 0;     // 0..3
  int contact_tracing = 1;    // 1..3
  double daily_tests = 0.0;
  double daily_vaccines = 0.0;
  bool international_open = true;
  // Dedicated internal-movement level when the data has one; otherwise the
  // stay-home flag stands in for internal travel restrictions.
  std::optional<int> internal_movement;
  int transport_closing = 0;

  bool internal_travel_open() const {
    return internal_movement ? *internal_movement < 2 : stay_home == 0;
  }
  int restriction_sum() const { return workplace_closing + school_closing + stay_home; }
  SuiteLevel network_level() const {
    return SelectNetwork(workplace_closing, school_closing, stay_home);
  }
  bool operator==(const PolicyDay&) const = default;
};

using PolicyTimeline = std::vector<PolicyDay>;

// Throws InputError if any day holds an out-of-range level or negative count.
void ValidateTimeline(const PolicyTimeline& timeline);

// Day-by-day exposure probability. p_e stays at its maximum until the first
// lockdown, drops to the minimum on every lockdown day and, once a lockdown
// lifts, climbs linearly back to the maximum over t_ramp months (30 days
// each). A new lockdown restarts the cycle.
class ExposureSchedule {
 public:
  ExposureSchedule(double p_e_min, double p_e_max, double t_ramp_months);

  // Value for the next day given that day's lockdown flag.
  double Advance(bool lockdown);

 private:
  double p_min_;
  double p_max_;
  double ramp_days_;
  bool seen_lockdown_ = false;
  int days_since_lockdown_ = 0;
};

std::vector<double> ComputePeSchedule(const PolicyTimeline& timeline,
                                      double p_e_min, double p_e_max,
                                      double t_ramp_months);

// Eligible for a dose: not dead, hospitalized, symptomatic, quarantined,
// already vaccinated, or a child.
bool IsVaccineEligible(Compartment state, const NodeFlags& flags);

// Vaccinates `doses` distinct eligible nodes chosen uniformly, or the whole
// eligible pool if it is smaller. Returns the number vaccinated.
std::int64_t Vaccinate(Region& region, std::int64_t doses);

// Testing policy 0: nothing. 1-2: up to `tests` symptomatic, non-quarantined
// nodes. 3: `tests` nodes sampled uniformly from everyone not quarantined,
// dead, hospitalized or recovered. Asy/Sy nodes test positive and move to
// Q_Asy/Q_Sy. Returns the positive node ids.
std::vector<NodeId> RunTesting(Region& region, std::int64_t tests, int testing_policy);

// Tracing level 1: nothing. Levels 2/3: every neighbor (in the active
// network) of each positive is quarantined with probability p_ct(level).
// Returns the nodes moved into quarantine.
std::vector<NodeId> TraceContacts(Region& region, std::span<const NodeId> positives,
                                  SuiteLevel active_level, int tracing_level,
                                  double p_ct_2, double p_ct_3);

}  // namespace epinet

#endif  // EPINET_INTERVENTIONS_H_
