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

// Independent numerical cross-checks of the closed-form Gaussian identities.

#ifndef SSC_ORACLE_H_
#define SSC_ORACLE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ssc/access_structure.h"
#include "ssc/gaussian_model.h"

namespace ssc {

// Tolerance for deterministic closed-form identities.
inline constexpr double kIdentityTolerance = 1e-12;
// Stochastic checks pass within this many standard errors.
inline constexpr double kStandardErrorGate = 4.0;
inline constexpr std::int64_t kMinMonteCarloTrials = 10000;

struct CheckReport {
  std::string check_id;
  double analytic_value = 0.0;
  double oracle_value = 0.0;
  double abs_err = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  // False marks a NOT-APPLICABLE row whose hypothesis does not hold.
  bool applicable = true;
  std::uint64_t seed = 0;
};

CheckReport MakeCheck(std::string id, double analytic, double oracle,
                      double tolerance, std::uint64_t seed = 0);
CheckReport NotApplicable(std::string id, std::string_view reason);

// sigma_x2 - Cov(X,Y_S) Cov(Y_S)^{-1} Cov(Y_S,X) by dense linear algebra.
// Throws kSingularModel if Cov(Y_S) cannot be factored.
double VectorConditioningOracle(const SourceModel& model, UserSubset s);

struct MonteCarloEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
};

// Sample mean of (X - E[X|Y_S])^2 with the linear MMSE estimator.
MonteCarloEstimate MonteCarloMmse(const SourceModel& model, UserSubset s,
                                  std::int64_t trials, std::uint64_t seed);

// Var(X|V,Y) <= D versus Var(X|V) <= (1/D - h^2/sigma_n2)^{-1} on each grid
// point, plus the boundary value. A single NOT-APPLICABLE row is returned
// when D >= sigma_n2 / h^2 or, with sigma_x2 given, D > Var(X|Y).
std::vector<CheckReport> TestChannelEquivalenceCheck(
    double h, double sigma_n2, double d,
    const std::vector<double>& sigma_x_given_v2_grid,
    std::optional<double> sigma_x2 = std::nullopt);

struct FisherPoint {
  double sigma_x_given_v2 = 1.0;
  double sigma_n2 = 1.0;
  double a = 1.0;
};

// Fisher information of a Gaussian with the given variance.
double GaussianFisherInformation(double variance);
// J(aX|U) from J(X|U).
double ScaledFisherInformation(double a, double fisher);

// Two rows per point: the MMSE / Fisher identity and the scaling identity.
std::vector<CheckReport> FisherIdentityChecks(
    const std::vector<FisherPoint>& grid);

// Builds Y_B = (h_B/h_A) Y_A + N' and compares Var(Y_B) and Cov(X, Y_B) with
// the direct sufficient-statistic moments. Requires tr_b <= tr_a.
std::vector<CheckReport> DegradedConstructionCheck(double sigma_x2,
                                                   double tr_a, double tr_b);

// Default grids over randomized models; per-check seeds derive from seed.
std::vector<CheckReport> RunVerificationSuite(std::uint64_t seed,
                                              std::int64_t trials);

}  // namespace ssc

#endif  // SSC_ORACLE_H_
