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

#include "ssc/quantize.h"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/quadrature/gauss.hpp>

#include "ssc/errors.h"

namespace ssc {
namespace {

constexpr double kMaxJointCells = 1 << 22;
constexpr double kInf = std::numeric_limits<double>::infinity();

const boost::math::normal& StdNormal() {
  static const boost::math::normal n(0.0, 1.0);
  return n;
}

double Phi(double z) {
  if (z == kInf) return 1.0;
  if (z == -kInf) return 0.0;
  return boost::math::cdf(StdNormal(), z);
}

double StdPdf(double z) {
  if (!std::isfinite(z)) return 0.0;
  return boost::math::pdf(StdNormal(), z);
}

// Standardized boundaries -inf = z_0 < ... < z_levels = inf.
std::vector<double> EquiprobableEdges(int levels) {
  std::vector<double> z(static_cast<std::size_t>(levels) + 1);
  z.front() = -kInf;
  z.back() = kInf;
  for (int k = 1; k < levels; ++k) {
    z[k] = boost::math::quantile(StdNormal(),
                                 static_cast<double>(k) / levels);
  }
  return z;
}

// E[Z | z_k < Z < z_{k+1}] times the marginal standard deviation.
std::vector<double> CellMeans(const std::vector<double>& z, double sd) {
  const int levels = static_cast<int>(z.size()) - 1;
  std::vector<double> m(static_cast<std::size_t>(levels));
  for (int k = 0; k < levels; ++k) {
    m[k] = sd * (StdPdf(z[k]) - StdPdf(z[k + 1])) * levels;
  }
  return m;
}

}  // namespace

QuantizedGaussian QuantizeChannels(double sigma_x2,
                                   const std::vector<ScalarChannel>& channels,
                                   int levels) {
  Require(levels >= 2 && levels <= 255, ErrorKind::kInvalidParameter,
          "levels must lie in [2, 255], got " + std::to_string(levels));
  Require(sigma_x2 > 0.0 && std::isfinite(sigma_x2),
          ErrorKind::kInvalidParameter, "sigma_x2 must be positive");
  Require(!channels.empty(), ErrorKind::kInvalidParameter,
          "need at least one channel");
  for (const ScalarChannel& c : channels) {
    Require(std::isfinite(c.gain) && c.noise_var > 0.0 &&
                std::isfinite(c.noise_var),
            ErrorKind::kInvalidParameter,
            "channels need a finite gain and positive noise variance");
  }
  const int k_ch = static_cast<int>(channels.size());
  Require(std::pow(static_cast<double>(levels), k_ch + 2) <= kMaxJointCells,
          ErrorKind::kInvalidParameter,
          "levels^(channels + 2) exceeds the joint-table guard 2^22");

  const double sx = std::sqrt(sigma_x2);
  const std::vector<double> z = EquiprobableEdges(levels);
  std::vector<double> y_sd(static_cast<std::size_t>(k_ch));
  for (int c = 0; c < k_ch; ++c) {
    y_sd[c] = std::sqrt(channels[c].gain * channels[c].gain * sigma_x2 +
                        channels[c].noise_var);
  }

  QuantizedGaussian q;
  q.x_points = CellMeans(z, sx);
  for (int c = 0; c < k_ch; ++c) q.y_points.push_back(CellMeans(z, y_sd[c]));

  // P(x cell i, y cells j_1..j_K) = integral over u in (i/L, (i+1)/L) of
  // prod_c P(Y_c in cell j_c | X = sx Phi^-1(u)), by 64-point Gauss-Legendre
  // in the probability coordinate u.
  using Quad = boost::math::quadrature::gauss<double, 64>;
  const auto& nodes = Quad::abscissa();
  const auto& weights = Quad::weights();
  const std::size_t y_cells =
      static_cast<std::size_t>(std::pow(static_cast<double>(levels), k_ch));
  std::vector<double> p_xy(static_cast<std::size_t>(levels) * y_cells, 0.0);
  std::vector<std::vector<double>> cond(static_cast<std::size_t>(k_ch),
                                        std::vector<double>(levels));
  auto accumulate = [&](int i, double u, double w) {
    const double x = sx * boost::math::quantile(StdNormal(), u);
    for (int c = 0; c < k_ch; ++c) {
      const double s = std::sqrt(channels[c].noise_var);
      const double mean = channels[c].gain * x;
      for (int j = 0; j < levels; ++j) {
        cond[c][j] = Phi((y_sd[c] * z[j + 1] - mean) / s) -
                     Phi((y_sd[c] * z[j] - mean) / s);
      }
    }
    double* row = &p_xy[i * y_cells];
    for (std::size_t cell = 0; cell < y_cells; ++cell) {
      double prod = w;
      std::size_t rest = cell;
      for (int c = k_ch - 1; c >= 0; --c) {
        prod *= cond[c][rest % levels];
        rest /= levels;
      }
      row[cell] += prod;
    }
  };
  for (int i = 0; i < levels; ++i) {
    const double half = 0.5 / levels;
    const double mid = (i + 0.5) / levels;
    for (std::size_t q_node = 0; q_node < nodes.size(); ++q_node) {
      accumulate(i, mid - half * nodes[q_node], half * weights[q_node]);
      accumulate(i, mid + half * nodes[q_node], half * weights[q_node]);
    }
  }
  for (double p : p_xy) {
    Require(std::isfinite(p), ErrorKind::kNumeric,
            "cell integration produced a non-finite value");
  }
  double total = 0.0;
  for (double p : p_xy) total += p;
  Require(std::isfinite(total) && total > 0.0, ErrorKind::kNumeric,
          "quantized pmf has no mass");
  for (double& p : p_xy) p /= total;

  DiscreteSourceSpec& s = q.spec;
  s.x_card = levels;
  s.y_cards.assign(static_cast<std::size_t>(k_ch), levels);
  s.v_card = levels;
  s.u_card = 1;
  s.xhat_card = levels;
  s.p_xy = std::move(p_xy);
  s.p_v_given_x.assign(static_cast<std::size_t>(levels * levels), 0.0);
  s.distortion.assign(static_cast<std::size_t>(levels * levels), 0.0);
  for (int a = 0; a < levels; ++a) {
    s.p_v_given_x[a * levels + a] = 1.0;
    for (int b = 0; b < levels; ++b) {
      const double e = q.x_points[a] - q.x_points[b];
      s.distortion[a * levels + b] = e * e;
    }
  }
  s.p_u_given_v.assign(static_cast<std::size_t>(levels), 1.0);
  return q;
}

QuantizedGaussian QuantizeGaussian(const SourceModel& model, int levels,
                                   const std::vector<UserSubset>& subsets) {
  model.Validate();
  Require(!subsets.empty(), ErrorKind::kInvalidParameter,
          "need at least one subset");
  std::vector<ScalarChannel> channels;
  std::uint64_t seen = 0;
  for (UserSubset a : subsets) {
    Require(!a.empty() && a.FitsIn(model.num_users()),
            ErrorKind::kInvalidParameter,
            "subset " + a.ToString() + " is empty or out of range");
    Require((a.mask() & seen) == 0, ErrorKind::kInvalidParameter,
            "subsets must be pairwise disjoint");
    seen |= a.mask();
    channels.push_back(SufficientStatistic(model, a));
  }
  return QuantizeChannels(model.sigma_x2, channels, levels);
}

double QuantizedMutualInformation(const QuantizedGaussian& q, int channel) {
  Require(channel >= 0 && channel < q.spec.num_users(),
          ErrorKind::kInvalidParameter, "channel index out of range");
  std::vector<int> cards = {q.spec.x_card};
  cards.insert(cards.end(), q.spec.y_cards.begin(), q.spec.y_cards.end());
  const JointPmf p(cards, q.spec.p_xy);
  return p.MutualInformation({0}, {1 + channel});
}

}  // namespace ssc
