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

#include "ssc/region.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "ssc/errors.h"
#include "ssc/parallel.h"

namespace ssc {
namespace {

// Agreement required between g1 and g2 on the case boundary.
constexpr double kBoundaryAgreement = 1e-9;

void CheckInputs(double sigma_x2, double d, double tr_a, double tr_b) {
  Require(std::isfinite(sigma_x2) && sigma_x2 > 0.0,
          ErrorKind::kInvalidParameter, "sigma_x2 must be positive");
  Require(std::isfinite(d) && d > 0.0, ErrorKind::kInvalidParameter,
          "distortion must be positive");
  Require(std::isfinite(tr_a) && tr_a >= 0.0 && std::isfinite(tr_b) &&
              tr_b >= 0.0,
          ErrorKind::kInvalidParameter, "traces must be nonnegative");
}

}  // namespace

std::string_view CaseTagName(CaseTag tag) {
  switch (tag) {
    case CaseTag::kG1:
      return "G1";
    case CaseTag::kG2:
      return "G2";
    case CaseTag::kDegenerate:
      return "DEGENERATE";
  }
  return "?";
}

double MinRate(double sigma_x2, double d, double tr_a) {
  return std::max(0.0, 0.5 * std::log2(sigma_x2 / d) -
                           0.5 * std::log2(1.0 + sigma_x2 * tr_a));
}

double G1(double sigma_x2, double d, double tr_a, double tr_b) {
  return MinRate(sigma_x2, d, tr_a) + 0.5 * std::log2(1.0 + sigma_x2 * tr_b);
}

double G2(double sigma_x2, double d, double tr_a, double tr_b) {
  const double excess = std::max(0.0, sigma_x2 / d - (1.0 + sigma_x2 * tr_a));
  return 0.5 * std::log2(excess + 1.0 + sigma_x2 * tr_b);
}

RegionResult RegionFromTraces(double sigma_x2, double d, double tr_a,
                              double tr_b) {
  CheckInputs(sigma_x2, d, tr_a, tr_b);
  RegionResult r;
  r.tr_a = tr_a;
  r.tr_b = tr_b;
  const double leak_b = 0.5 * std::log2(1.0 + sigma_x2 * tr_b);
  r.corner_c1 = {0.5 * std::log2(sigma_x2 / d),
                 0.5 * std::log2(sigma_x2 / d) + leak_b};
  r.corner_c2 = {0.0, leak_b};

  if (d >= CondVarFromTrace(sigma_x2, tr_a)) {
    r.case_tag = CaseTag::kDegenerate;
    r.r_min = 0.0;
    r.delta_min = leak_b;
    return r;
  }
  r.r_min = MinRate(sigma_x2, d, tr_a);
  if (tr_a > tr_b) {
    r.case_tag = CaseTag::kG1;
    r.delta_min = G1(sigma_x2, d, tr_a, tr_b);
  } else if (tr_a < tr_b) {
    r.case_tag = CaseTag::kG2;
    r.delta_min = G2(sigma_x2, d, tr_a, tr_b);
  } else {
    const double g1 = G1(sigma_x2, d, tr_a, tr_b);
    const double g2 = G2(sigma_x2, d, tr_a, tr_b);
    if (std::abs(g1 - g2) > kBoundaryAgreement) {
      Fail(ErrorKind::kNumeric, "g1 and g2 disagree on the case boundary");
    }
    r.case_tag = CaseTag::kG1;
    r.delta_min = g1;
  }
  return r;
}

RegionResult ComputeRegion(const SourceModel& model,
                           const AccessStructure& structure, double d) {
  Require(std::isfinite(d) && d > 0.0, ErrorKind::kInvalidParameter,
          "distortion must be positive");
  const OptimalSets sets = ComputeOptimalSets(structure, model);
  RegionResult r =
      RegionFromTraces(model.sigma_x2, d, InverseTrace(model, sets.a_star),
                       InverseTrace(model, sets.b_star));
  r.a_star = sets.a_star;
  r.b_star = sets.b_star;
  return r;
}

bool Contains(const RegionResult& region, RatePoint p) {
  return p.r >= region.r_min && p.delta >= region.delta_min;
}

std::vector<SweepPoint> SweepTradeoff(double sigma_x2, double d, double tr_b,
                                      const std::vector<double>& tr_a_grid) {
  for (double t : tr_a_grid) {
    Require(std::isfinite(t) && t >= 0.0, ErrorKind::kInvalidParameter,
            "sweep grid values must be nonnegative");
  }
  std::vector<SweepPoint> out(tr_a_grid.size());
  ParallelFor(tr_a_grid.size(), [&](std::size_t i) {
    const RegionResult r = RegionFromTraces(sigma_x2, d, tr_a_grid[i], tr_b);
    out[i] = {tr_a_grid[i], r.r_min, r.delta_min, r.case_tag};
  });
  return out;
}

std::vector<double> LinearGrid(double lo, double hi, int n) {
  Require(n >= 1, ErrorKind::kInvalidParameter,
          "grid needs at least one point");
  Require(std::isfinite(lo) && std::isfinite(hi) && lo <= hi,
          ErrorKind::kInvalidParameter, "grid bounds must satisfy lo <= hi");
  std::vector<double> g(static_cast<std::size_t>(n));
  if (n == 1) {
    g[0] = lo;
    return g;
  }
  for (int i = 0; i < n; ++i) {
    g[i] = (i == n - 1) ? hi : lo + (hi - lo) * i / (n - 1);
  }
  return g;
}

}  // namespace ssc
