// Copyright 2026 The SSC Authors
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

// Threshold structures A_t = {S : |S| >= t}: per-t regions and the
// closed-form comparison predicates across thresholds.

#ifndef SSC_THRESHOLD_H_
#define SSC_THRESHOLD_H_

#include <string>
#include <vector>

#include "ssc/access_structure.h"
#include "ssc/gaussian_model.h"
#include "ssc/region.h"

namespace ssc {

// Dead-band under which predicate and region comparisons count as ties.
inline constexpr double kVerdictDeadBand = 1e-9;

// Users ordered by nonincreasing noise variance, ties by index.
std::vector<int> UsersByDecreasingNoise(const SourceModel& model);

// First t users of that order, and the last t - 1 (empty for t = 1).
OptimalSets NestedOptimalSets(const SourceModel& model, int t);

struct ThresholdRow {
  int t = 0;
  UserSubset a_star;
  UserSubset b_star;
  double tr_a = 0.0;
  double tr_b = 0.0;
  double r_min = 0.0;
  double delta_min = 0.0;
  CaseTag case_tag = CaseTag::kG1;
  // tr_a < 1/D - 1/sigma_x2, i.e. the source has to be encoded at all.
  bool hypothesis_holds = false;
};

struct Verdict {
  int t = 0;
  int i = 0;
  std::string predicate_id;
  bool applicable = false;
  bool predicted = false;
  bool observed = false;

  bool consistent() const { return !applicable || predicted == observed; }
};

// Region inclusion R(D,A_L) contains R(D,A_t) via the trace-ratio test, one
// row per t (i = L - t), plus rate monotonicity R_t >= R_{t+i} for all
// t + i <= L.
std::vector<Verdict> InclusionVerdicts(const SourceModel& model, double d);

// Leakage comparison Delta_t versus Delta_{t+i}, classified by which branch
// applies at t and at t + i.
std::vector<Verdict> LeakageOrderVerdicts(const SourceModel& model, double d);

struct ThresholdReport {
  std::vector<ThresholdRow> rows;
  std::vector<Verdict> verdicts;

  bool AllConsistent() const;
};

// Rows for t in [t_lo, t_hi]; verdicts restricted to indices in that range
// (inclusion rows always compare against t = L).
ThresholdReport BuildThresholdReport(const SourceModel& model, double d,
                                     int t_lo, int t_hi);

ThresholdRow ThresholdRowFor(const SourceModel& model, double d, int t);

}  // namespace ssc

#endif  // SSC_THRESHOLD_H_
