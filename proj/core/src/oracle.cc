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

#include "ssc/oracle.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ssc/errors.h"
#include "ssc/parallel.h"

namespace ssc {
namespace {

// Relative slack when testing the two sides of the test-channel equivalence.
constexpr double kBoundarySlack = 1e-12;

double RelTol(double value) {
  return kIdentityTolerance * std::max(1.0, std::abs(value));
}

// Regression coefficients of X on Y_S and Cov(Y_S), dense path.
struct Regression {
  Eigen::VectorXd coef;
  double residual = 0.0;
};

Regression Regress(const SourceModel& model, UserSubset s) {
  model.Validate();
  Require(!s.empty(), ErrorKind::kInvalidParameter,
          "conditioning subset must be nonempty");
  Require(s.FitsIn(model.num_users()), ErrorKind::kInvalidParameter,
          "subset exceeds the model's users");
  const std::vector<int> users = s.members();
  const Eigen::Index k = static_cast<Eigen::Index>(users.size());
  Eigen::MatrixXd cov_y =
      Eigen::MatrixXd::Constant(k, k, model.sigma_x2);
  for (Eigen::Index i = 0; i < k; ++i)
    cov_y(i, i) += model.noise_vars[users[i]];
  const Eigen::VectorXd cov_xy = Eigen::VectorXd::Constant(k, model.sigma_x2);
  Eigen::LLT<Eigen::MatrixXd> llt(cov_y);
  if (llt.info() != Eigen::Success) {
    Fail(ErrorKind::kSingularModel, "observation covariance is singular");
  }
  Regression r;
  r.coef = llt.solve(cov_xy);
  r.residual = model.sigma_x2 - cov_xy.dot(r.coef);
  return r;
}

SourceModel RandomModel(std::mt19937_64& rng, int num_users) {
  std::uniform_real_distribution<double> log_var(-1.0, 1.0);
  std::uniform_real_distribution<double> sx(0.5, 5.0);
  SourceModel m;
  m.sigma_x2 = sx(rng);
  for (int i = 0; i < num_users; ++i)
    m.noise_vars.push_back(std::pow(10.0, log_var(rng)));
  return m;
}

}  // namespace

CheckReport MakeCheck(std::string id, double analytic, double oracle,
                      double tolerance, std::uint64_t seed) {
  CheckReport c;
  c.check_id = std::move(id);
  c.analytic_value = analytic;
  c.oracle_value = oracle;
  c.abs_err = std::abs(analytic - oracle);
  c.tolerance = tolerance;
  c.passed = std::isfinite(c.abs_err) && c.abs_err <= tolerance;
  c.seed = seed;
  return c;
}

CheckReport NotApplicable(std::string id, std::string_view reason) {
  CheckReport c;
  c.check_id = std::move(id) + " [not applicable: " + std::string(reason) +
               "]";
  c.applicable = false;
  c.passed = true;
  return c;
}

double VectorConditioningOracle(const SourceModel& model, UserSubset s) {
  return Regress(model, s).residual;
}

MonteCarloEstimate MonteCarloMmse(const SourceModel& model, UserSubset s,
                                  std::int64_t trials, std::uint64_t seed) {
  Require(trials >= kMinMonteCarloTrials, ErrorKind::kInvalidParameter,
          "Monte-Carlo MMSE needs at least 10^4 trials");
  const Regression reg = Regress(model, s);
  const std::vector<int> users = s.members();
  std::vector<double> noise_sd;
  for (int u : users) noise_sd.push_back(std::sqrt(model.noise_vars[u]));
  const double x_sd = std::sqrt(model.sigma_x2);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  // Welford accumulation of the squared error.
  double mean = 0.0;
  double m2 = 0.0;
  for (std::int64_t n = 1; n <= trials; ++n) {
    const double x = x_sd * normal(rng);
    double xhat = 0.0;
    for (std::size_t i = 0; i < users.size(); ++i) {
      const double y = x + noise_sd[i] * normal(rng);
      xhat += reg.coef(static_cast<Eigen::Index>(i)) * y;
    }
    const double e2 = (x - xhat) * (x - xhat);
    const double delta = e2 - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (e2 - mean);
  }
  MonteCarloEstimate out;
  out.estimate = mean;
  out.std_error =
      std::sqrt(m2 / static_cast<double>(trials - 1) / static_cast<double>(trials));
  out.trials = trials;
  out.seed = seed;
  return out;
}

std::vector<CheckReport> TestChannelEquivalenceCheck(
    double h, double sigma_n2, double d,
    const std::vector<double>& sigma_x_given_v2_grid,
    std::optional<double> sigma_x2) {
  const std::string base = "test_channel/h=" + std::to_string(h) +
                           ",sn2=" + std::to_string(sigma_n2) +
                           ",D=" + std::to_string(d);
  Require(h > 0.0 && sigma_n2 > 0.0 && d > 0.0, ErrorKind::kInvalidParameter,
          "h, sigma_n2 and D must be positive");
  if (!(d < sigma_n2 / (h * h))) {
    return {NotApplicable(base, "D >= sigma_n2 / h^2")};
  }
  if (sigma_x2) {
    const double var_x_given_y =
        sigma_n2 * *sigma_x2 / (h * h * *sigma_x2 + sigma_n2);
    if (d > var_x_given_y) {
      return {NotApplicable(base, "D > Var(X|Y)")};
    }
  }
  const double boundary = 1.0 / (1.0 / d - h * h / sigma_n2);
  std::vector<CheckReport> out;
  out.push_back(MakeCheck(base + "/boundary", d,
                          CondVarGivenVAndY(h, sigma_n2, boundary),
                          RelTol(d)));
  for (std::size_t k = 0; k < sigma_x_given_v2_grid.size(); ++k) {
    const double v = sigma_x_given_v2_grid[k];
    const bool lhs =
        CondVarGivenVAndY(h, sigma_n2, v) <= d * (1.0 + kBoundarySlack);
    const bool rhs = v <= boundary * (1.0 + kBoundarySlack);
    out.push_back(MakeCheck(base + "/grid[" + std::to_string(k) + "]",
                            rhs ? 1.0 : 0.0, lhs ? 1.0 : 0.0, 0.0));
  }
  return out;
}

double GaussianFisherInformation(double variance) {
  Require(variance > 0.0, ErrorKind::kInvalidParameter,
          "variance must be positive");
  return 1.0 / variance;
}

double ScaledFisherInformation(double a, double fisher) {
  Require(a != 0.0, ErrorKind::kInvalidParameter, "scale must be nonzero");
  return fisher / (a * a);
}

std::vector<CheckReport> FisherIdentityChecks(
    const std::vector<FisherPoint>& grid) {
  std::vector<CheckReport> out;
  out.reserve(2 * grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const FisherPoint& p = grid[k];
    const std::string idx = "[" + std::to_string(k) + "]";
    const double j = GaussianFisherInformation(p.sigma_x_given_v2 + p.sigma_n2);
    const double via_fisher = p.sigma_n2 - p.sigma_n2 * p.sigma_n2 * j;
    const double via_mmse = CondVarGivenVAndY(1.0, p.sigma_n2,
                                              p.sigma_x_given_v2);
    out.push_back(MakeCheck("fisher/mmse_identity" + idx, via_mmse,
                            via_fisher, RelTol(via_mmse)));
    const double direct =
        GaussianFisherInformation(p.a * p.a * p.sigma_x_given_v2);
    const double scaled = ScaledFisherInformation(
        p.a, GaussianFisherInformation(p.sigma_x_given_v2));
    out.push_back(MakeCheck("fisher/scaling" + idx, direct, scaled,
                            RelTol(direct)));
  }
  return out;
}

std::vector<CheckReport> DegradedConstructionCheck(double sigma_x2,
                                                   double tr_a, double tr_b) {
  Require(sigma_x2 > 0.0 && tr_a > 0.0 && tr_b > 0.0 && tr_b <= tr_a,
          ErrorKind::kInvalidParameter,
          "degraded construction needs 0 < tr_b <= tr_a");
  const std::string base = "degraded/tr_a=" + std::to_string(tr_a) +
                           ",tr_b=" + std::to_string(tr_b);
  // Y_A = tr_a X + N_A with Var(N_A) = tr_a.
  const double scale = tr_b / tr_a;
  const double extra = tr_b * (1.0 - tr_b / tr_a);
  const double var_ya = tr_a * tr_a * sigma_x2 + tr_a;
  const double built_var = scale * scale * var_ya + extra;
  const double built_cov = scale * tr_a * sigma_x2;
  const double direct_var = tr_b * tr_b * sigma_x2 + tr_b;
  const double direct_cov = tr_b * sigma_x2;
  return {
      MakeCheck(base + "/extra_noise_nonnegative", 0.0, std::min(0.0, extra),
                0.0),
      MakeCheck(base + "/variance", direct_var, built_var,
                RelTol(direct_var)),
      MakeCheck(base + "/covariance", direct_cov, built_cov,
                RelTol(direct_cov)),
  };
}

std::vector<CheckReport> RunVerificationSuite(std::uint64_t seed,
                                              std::int64_t trials) {
  Require(trials >= kMinMonteCarloTrials, ErrorKind::kInvalidParameter,
          "verification needs at least 10^4 Monte-Carlo trials");
  constexpr int kSufficiencyModels = 20;
  constexpr int kMonteCarloChecks = 8;
  constexpr int kTestChannelConfigs = 5;
  constexpr int kDegradedPairs = 20;
  constexpr int kFisherPoints = 1000;

  // Each block fills its own slot so the output order is fixed.
  std::vector<std::vector<CheckReport>> blocks(
      kSufficiencyModels + kMonteCarloChecks + kTestChannelConfigs + 2);
  std::size_t slot = 0;
  std::vector<std::function<void()>> jobs;

  for (int k = 0; k < kSufficiencyModels; ++k, ++slot) {
    jobs.push_back([&, k, slot] {
      std::mt19937_64 rng(DeriveSeed(seed, 100 + k));
      const int num_users = 1 + static_cast<int>(rng() % 8);
      const SourceModel m = RandomModel(rng, num_users);
      double worst = -1.0;
      double a_val = 0.0;
      double o_val = 0.0;
      const std::uint64_t full = UserSubset::Full(num_users).mask();
      for (std::uint64_t mask = 1; mask <= full; ++mask) {
        const UserSubset s = UserSubset::FromMask(mask);
        const double a = CondVarGivenSideInfo(m, s);
        const double o = VectorConditioningOracle(m, s);
        if (std::abs(a - o) > worst) {
          worst = std::abs(a - o);
          a_val = a;
          o_val = o;
        }
      }
      blocks[slot].push_back(MakeCheck(
          "sufficiency/model[" + std::to_string(k) + "]/L=" +
              std::to_string(num_users),
          a_val, o_val, RelTol(a_val), DeriveSeed(seed, 100 + k)));
    });
  }
  for (int k = 0; k < kMonteCarloChecks; ++k, ++slot) {
    jobs.push_back([&, k, slot] {
      const std::uint64_t s = DeriveSeed(seed, 200 + k);
      std::mt19937_64 rng(s);
      const int num_users = 1 + static_cast<int>(rng() % 6);
      const SourceModel m = RandomModel(rng, num_users);
      const UserSubset subset = UserSubset::FromMask(
          1 + rng() % UserSubset::Full(num_users).mask());
      const MonteCarloEstimate est = MonteCarloMmse(m, subset, trials, s);
      blocks[slot].push_back(MakeCheck(
          "monte_carlo_mmse[" + std::to_string(k) + "]" + subset.ToString(),
          VectorConditioningOracle(m, subset), est.estimate,
          kStandardErrorGate * est.std_error, s));
    });
  }
  for (int k = 0; k < kTestChannelConfigs; ++k, ++slot) {
    jobs.push_back([&, k, slot] {
      std::mt19937_64 rng(DeriveSeed(seed, 300 + k));
      std::uniform_real_distribution<double> u(0.2, 3.0);
      const double h = u(rng);
      const double sn2 = u(rng);
      const double sx2 = u(rng);
      const double var_x_given_y = sn2 * sx2 / (h * h * sx2 + sn2);
      const double d = var_x_given_y * std::uniform_real_distribution<double>(
                                           0.05, 0.95)(rng);
      const double boundary = 1.0 / (1.0 / d - h * h / sn2);
      std::vector<double> grid;
      for (int g = 1; g <= 50; ++g) grid.push_back(boundary * g / 25.0);
      blocks[slot] = TestChannelEquivalenceCheck(h, sn2, d, grid, sx2);
    });
  }
  jobs.push_back([&, slot] {
    std::mt19937_64 rng(DeriveSeed(seed, 400));
    std::uniform_real_distribution<double> u(0.1, 10.0);
    std::uniform_real_distribution<double> ua(-4.0, 4.0);
    std::vector<FisherPoint> grid;
    for (int k = 0; k < kFisherPoints; ++k) {
      double a = ua(rng);
      if (std::abs(a) < 1e-3) a = 1.0;
      grid.push_back({u(rng), u(rng), a});
    }
    blocks[slot] = FisherIdentityChecks(grid);
  });
  ++slot;
  jobs.push_back([&, slot] {
    std::mt19937_64 rng(DeriveSeed(seed, 500));
    std::uniform_real_distribution<double> u(0.1, 10.0);
    for (int k = 0; k < kDegradedPairs; ++k) {
      double a = u(rng);
      double b = u(rng);
      if (b > a) std::swap(a, b);
      std::vector<CheckReport> c = DegradedConstructionCheck(u(rng), a, b);
      blocks[slot].insert(blocks[slot].end(), c.begin(), c.end());
    }
  });

  ParallelFor(jobs.size(), [&](std::size_t i) { jobs[i](); });
  std::vector<CheckReport> out;
  for (const auto& b : blocks) out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace ssc
