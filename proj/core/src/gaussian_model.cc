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

#include "ssc/gaussian_model.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ssc/errors.h"

namespace ssc {
namespace {

constexpr double kPositiveDefiniteRatio = 1e-10;
constexpr double kSymmetryTolerance = 1e-12;
constexpr double kDiagonalTolerance = 1e-12;

bool PositiveFinite(double v) { return std::isfinite(v) && v > 0.0; }

struct Residual {
  Eigen::VectorXd cross;
  Eigen::MatrixXd cov;
};

Residual ResidualCovariance(const RawGaussianObservation& raw,
                            double sigma_x2) {
  Require(PositiveFinite(sigma_x2), ErrorKind::kInvalidParameter,
          "sigma_x2 must be positive");
  const std::size_t m = raw.cross_cov.size();
  Require(m >= 1, ErrorKind::kValidation, "empty observation");
  Require(raw.obs_cov.size() == m, ErrorKind::kValidation,
          "obs_cov must be " + std::to_string(m) + " x " + std::to_string(m));
  Residual r;
  r.cross.resize(static_cast<Eigen::Index>(m));
  Eigen::MatrixXd sigma_y(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    Require(raw.obs_cov[i].size() == m, ErrorKind::kValidation,
            "obs_cov row " + std::to_string(i) + " has wrong length");
    r.cross(i) = raw.cross_cov[i];
    for (std::size_t j = 0; j < m; ++j) sigma_y(i, j) = raw.obs_cov[i][j];
  }
  Require(sigma_y.allFinite() && r.cross.allFinite(), ErrorKind::kValidation,
          "covariances must be finite");
  const double scale = std::max(1.0, sigma_y.cwiseAbs().maxCoeff());
  Require((sigma_y - sigma_y.transpose()).cwiseAbs().maxCoeff() <=
              kSymmetryTolerance * scale,
          ErrorKind::kValidation, "obs_cov is not symmetric");
  r.cov = sigma_y - r.cross * r.cross.transpose() / sigma_x2;
  r.cov = 0.5 * (r.cov + r.cov.transpose());
  return r;
}

}  // namespace

void SourceModel::Validate() const {
  Require(PositiveFinite(sigma_x2), ErrorKind::kValidation,
          "sigma_x2 must be positive and finite");
  Require(!noise_vars.empty() && num_users() <= kMaxUsers,
          ErrorKind::kValidation,
          "noise_vars must list between 1 and " + std::to_string(kMaxUsers) +
              " variances");
  for (std::size_t i = 0; i < noise_vars.size(); ++i) {
    Require(PositiveFinite(noise_vars[i]), ErrorKind::kValidation,
            "noise_vars[" + std::to_string(i) + "] must be positive");
  }
}

double InverseTrace(const SourceModel& model, UserSubset s) {
  Require(s.FitsIn(model.num_users()), ErrorKind::kInvalidParameter,
          "subset " + s.ToString() + " exceeds the model's users");
  double tr = 0.0;
  for (int m : s.members()) tr += 1.0 / model.noise_vars[m];
  return tr;
}

NormalizedObservation Normalize(const RawGaussianObservation& raw,
                                double sigma_x2) {
  const Residual r = ResidualCovariance(raw, sigma_x2);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(r.cov,
                                                     Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (!(hi > 0.0) || !(lo > kPositiveDefiniteRatio * hi)) {
    Fail(ErrorKind::kSingularModel,
         "residual noise covariance is not positive definite");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(r.cov);
  if (llt.info() != Eigen::Success) {
    Fail(ErrorKind::kSingularModel, "Cholesky factorization failed");
  }
  const Eigen::Index m = r.cov.rows();
  const Eigen::MatrixXd whitening = llt.matrixL().solve(
      Eigen::MatrixXd::Identity(m, m));
  const Eigen::VectorXd h = whitening * r.cross / sigma_x2;
  const Eigen::MatrixXd white_cov =
      whitening * r.cov * whitening.transpose();

  NormalizedObservation out;
  out.gain.assign(h.data(), h.data() + m);
  out.whitening.resize(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) {
    out.whitening[i].resize(static_cast<std::size_t>(m));
    for (Eigen::Index j = 0; j < m; ++j) out.whitening[i][j] = whitening(i, j);
  }
  out.residual_identity_error =
      (white_cov - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff();
  return out;
}

SourceModel SourceModelFromRaw(const RawGaussianObservation& raw,
                               double sigma_x2) {
  // Rejects singular residuals first.
  Normalize(raw, sigma_x2);
  const Residual r = ResidualCovariance(raw, sigma_x2);
  const Eigen::Index m = r.cov.rows();
  SourceModel model;
  model.sigma_x2 = sigma_x2;
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      if (i == j) continue;
      const double bound =
          kDiagonalTolerance * std::sqrt(r.cov(i, i) * r.cov(j, j));
      Require(std::abs(r.cov(i, j)) <= bound, ErrorKind::kValidation,
              "residual noise is correlated across users; only diagonal "
              "noise maps to a per-user model");
    }
    const double gain = r.cross(i) / sigma_x2;
    Require(gain != 0.0, ErrorKind::kValidation,
            "observation " + std::to_string(i + 1) +
                " is uncorrelated with the source");
    model.noise_vars.push_back(r.cov(i, i) / (gain * gain));
  }
  model.Validate();
  return model;
}

ScalarChannel SufficientStatistic(const SourceModel& model, UserSubset s) {
  Require(!s.empty(), ErrorKind::kInvalidParameter,
          "sufficient statistic of an empty subset");
  const double tr = InverseTrace(model, s);
  return ScalarChannel{tr, tr};
}

double CondVarFromTrace(double sigma_x2, double trace) {
  return sigma_x2 / (trace * sigma_x2 + 1.0);
}

double CondVarGivenSideInfo(const SourceModel& model, UserSubset s) {
  Require(!s.empty(), ErrorKind::kInvalidParameter,
          "conditional variance given an empty subset");
  return CondVarFromTrace(model.sigma_x2, InverseTrace(model, s));
}

double CondVarGivenVAndY(double h, double sigma_n2, double sigma_x_given_v2) {
  Require(PositiveFinite(h) && PositiveFinite(sigma_n2) &&
              PositiveFinite(sigma_x_given_v2),
          ErrorKind::kInvalidParameter,
          "gain and variances must be positive");
  return sigma_n2 * sigma_x_given_v2 /
         (h * h * sigma_x_given_v2 + sigma_n2);
}

double FOfDFromTrace(double trace, double d) {
  Require(PositiveFinite(d), ErrorKind::kInfeasibleDistortion,
          "distortion must be positive");
  Require(trace >= 0.0 && trace * d < 1.0, ErrorKind::kInfeasibleDistortion,
          "distortion " + std::to_string(d) +
              " is not below the side-information MMSE bound 1/tr");
  return d / (1.0 - trace * d);
}

double FOfD(const SourceModel& model, UserSubset a_star, double d) {
  return FOfDFromTrace(InverseTrace(model, a_star), d);
}

double MutualInfoFromTrace(double sigma_x2, double trace) {
  return 0.5 * std::log2(1.0 + sigma_x2 * trace);
}

double MutualInfoXYB(const SourceModel& model, UserSubset b) {
  Require(!b.empty(), ErrorKind::kInvalidParameter,
          "mutual information with an empty subset");
  return MutualInfoFromTrace(model.sigma_x2, InverseTrace(model, b));
}

}  // namespace ssc
