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

// Scalar Gaussian source observed by L users through independent additive
// noise, Y_l = X + N_l. All logarithms are base 2.

#ifndef SSC_GAUSSIAN_MODEL_H_
#define SSC_GAUSSIAN_MODEL_H_

#include <vector>

#include "ssc/access_structure.h"

namespace ssc {

struct SourceModel {
  double sigma_x2 = 1.0;
  std::vector<double> noise_vars;

  int num_users() const { return static_cast<int>(noise_vars.size()); }
  // Throws kValidation unless sigma_x2 and all noise variances are positive
  // and finite and 1 <= L <= kMaxUsers.
  void Validate() const;
};

// Scalar observation gain * X + N with Var(N) = noise_var.
struct ScalarChannel {
  double gain = 0.0;
  double noise_var = 1.0;
};

// Jointly Gaussian (X, Y) with arbitrary observation covariance.
struct RawGaussianObservation {
  std::vector<double> cross_cov;              // Cov(X, Y), length m
  std::vector<std::vector<double>> obs_cov;   // Cov(Y), m x m
};

struct NormalizedObservation {
  std::vector<double> gain;                   // h in Y' = h X + N''
  std::vector<std::vector<double>> whitening; // inverse Cholesky factor
  // Max entrywise deviation of Cov(N'') from the identity.
  double residual_identity_error = 0.0;
};

// Sum of 1/noise_var over the subset; 0 for the empty set.
double InverseTrace(const SourceModel& model, UserSubset s);

// Whitens the residual noise Y - Cov(Y,X) X / sigma_x2. Throws kSingularModel
// when its smallest eigenvalue is not above 1e-10 times the largest.
NormalizedObservation Normalize(const RawGaussianObservation& raw,
                                double sigma_x2);

// Maps a raw observation with diagonal residual covariance to the per-user
// model Y_l / h_l = X + N_l. Throws kValidation for correlated residuals.
SourceModel SourceModelFromRaw(const RawGaussianObservation& raw,
                               double sigma_x2);

// The scalar 1' Sigma_S^{-1} Y_S; gain and noise variance both equal the
// inverse trace. Throws kInvalidParameter for an empty subset.
ScalarChannel SufficientStatistic(const SourceModel& model, UserSubset s);

// Var(X | Y_S) = sigma_x2 / (tr sigma_x2 + 1).
double CondVarGivenSideInfo(const SourceModel& model, UserSubset s);
double CondVarFromTrace(double sigma_x2, double trace);

// Var(X | V, Y) for Y = h X + N with Var(N) = sigma_n2 and Var(X | V) given.
double CondVarGivenVAndY(double h, double sigma_n2, double sigma_x_given_v2);

// D / (1 - tr D). Throws kInfeasibleDistortion unless 0 < d < 1 / tr.
double FOfD(const SourceModel& model, UserSubset a_star, double d);
double FOfDFromTrace(double trace, double d);

// I(X; Y_B) = 0.5 log2(1 + sigma_x2 tr) in bits.
double MutualInfoXYB(const SourceModel& model, UserSubset b);
double MutualInfoFromTrace(double sigma_x2, double trace);

}  // namespace ssc

#endif  // SSC_GAUSSIAN_MODEL_H_
