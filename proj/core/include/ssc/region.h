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

// Rate-leakage region of the Gaussian model. The region is the closed
// upper-right set {R >= r_min, Delta >= delta_min}.

#ifndef SSC_REGION_H_
#define SSC_REGION_H_

#include <string_view>
#include <vector>

#include "ssc/access_structure.h"
#include "ssc/gaussian_model.h"

namespace ssc {

enum class CaseTag { kG1, kG2, kDegenerate };

std::string_view CaseTagName(CaseTag tag);

struct RatePoint {
  double r = 0.0;
  double delta = 0.0;
};

struct RegionResult {
  double r_min = 0.0;
  double delta_min = 0.0;
  CaseTag case_tag = CaseTag::kG1;
  UserSubset a_star;
  UserSubset b_star;
  double tr_a = 0.0;
  double tr_b = 0.0;
  RatePoint corner_c1;
  RatePoint corner_c2;
};

// [0.5 log2(sigma_x2 / d) - 0.5 log2(1 + sigma_x2 tr_a)]^+.
double MinRate(double sigma_x2, double d, double tr_a);
// MinRate + 0.5 log2(1 + sigma_x2 tr_b).
double G1(double sigma_x2, double d, double tr_a, double tr_b);
// 0.5 log2([sigma_x2 / d - (1 + sigma_x2 tr_a)]^+ + 1 + sigma_x2 tr_b).
double G2(double sigma_x2, double d, double tr_a, double tr_b);

// Region for given optimal traces; tr_b may be 0 (empty unauthorized set).
// Throws kInvalidParameter for d <= 0 or negative traces.
RegionResult RegionFromTraces(double sigma_x2, double d, double tr_a,
                              double tr_b);

RegionResult ComputeRegion(const SourceModel& model,
                           const AccessStructure& structure, double d);

bool Contains(const RegionResult& region, RatePoint p);

struct SweepPoint {
  double tr_a = 0.0;
  double r_min = 0.0;
  double delta_min = 0.0;
  CaseTag case_tag = CaseTag::kG1;
};

// (R*, Delta*) along a grid of tr_a values, in grid order.
std::vector<SweepPoint> SweepTradeoff(double sigma_x2, double d, double tr_b,
                                      const std::vector<double>& tr_a_grid);

// n evenly spaced points from lo to hi inclusive.
std::vector<double> LinearGrid(double lo, double hi, int n);

}  // namespace ssc

#endif  // SSC_REGION_H_
