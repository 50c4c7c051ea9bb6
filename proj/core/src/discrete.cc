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

#include "ssc/discrete.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "ssc/errors.h"

namespace ssc {
namespace {

constexpr double kPmfSumTolerance = 1e-12;
constexpr double kMaxJointCells = 1 << 24;
constexpr int kMaxAlphabet = 255;
// Absolute slack per symbol in typicality comparisons.
constexpr double kTypicalityRoundoff = 1e-12;

std::vector<std::size_t> Strides(const std::vector<int>& cards) {
  std::vector<std::size_t> s(cards.size(), 1);
  for (int k = static_cast<int>(cards.size()) - 2; k >= 0; --k) {
    s[k] = s[k + 1] * static_cast<std::size_t>(cards[k + 1]);
  }
  return s;
}

std::size_t Product(const std::vector<int>& cards) {
  double p = 1.0;
  for (int c : cards) p *= c;
  if (p > kMaxJointCells) {
    Fail(ErrorKind::kResource, "joint alphabet exceeds 2^24 cells");
  }
  return static_cast<std::size_t>(p);
}

void CheckAlphabet(int card, const std::string& field) {
  Require(card >= 1 && card <= kMaxAlphabet, ErrorKind::kValidation,
          field + " must be in [1, 255]");
}

void CheckPmf(const std::vector<double>& p, std::size_t size,
              const std::string& field) {
  Require(p.size() == size, ErrorKind::kValidation,
          field + " must have " + std::to_string(size) + " entries, got " +
              std::to_string(p.size()));
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    Require(std::isfinite(p[i]) && p[i] >= 0.0, ErrorKind::kValidation,
            field + "[" + std::to_string(i) + "] must be a probability");
    sum += p[i];
  }
  Require(std::abs(sum - 1.0) <= kPmfSumTolerance, ErrorKind::kValidation,
          field + " sums to " + std::to_string(sum) + ", not 1");
}

void CheckConditional(const std::vector<double>& p, int rows, int cols,
                      const std::string& field) {
  Require(p.size() == static_cast<std::size_t>(rows) * cols,
          ErrorKind::kValidation,
          field + " must be " + std::to_string(rows) + " x " +
              std::to_string(cols));
  for (int r = 0; r < rows; ++r) {
    std::vector<double> row(p.begin() + r * cols, p.begin() + (r + 1) * cols);
    CheckPmf(row, static_cast<std::size_t>(cols),
             field + " row " + std::to_string(r));
  }
}

}  // namespace

JointPmf::JointPmf(std::vector<int> cards, std::vector<double> probs)
    : cards_(std::move(cards)), probs_(std::move(probs)) {
  Require(probs_.size() == Product(cards_), ErrorKind::kValidation,
          "pmf size does not match its alphabets");
}

std::size_t JointPmf::Index(std::span<const int> tuple) const {
  std::size_t idx = 0;
  for (std::size_t k = 0; k < cards_.size(); ++k) {
    idx = idx * static_cast<std::size_t>(cards_[k]) +
          static_cast<std::size_t>(tuple[k]);
  }
  return idx;
}

JointPmf JointPmf::Marginal(const std::vector<int>& vars) const {
  std::vector<int> out_cards;
  for (int v : vars) {
    Require(v >= 0 && v < num_vars(), ErrorKind::kInvalidParameter,
            "marginal variable out of range");
    out_cards.push_back(cards_[v]);
  }
  const std::vector<std::size_t> out_strides = Strides(out_cards);
  // Contribution of each source variable to the output index.
  std::vector<std::size_t> weight(cards_.size(), 0);
  for (std::size_t k = 0; k < vars.size(); ++k) {
    Require(weight[vars[k]] == 0, ErrorKind::kInvalidParameter,
            "marginal variables must be distinct");
    weight[vars[k]] = out_strides[k];
  }
  std::vector<double> out(Product(out_cards), 0.0);
  std::vector<int> tuple(cards_.size(), 0);
  std::size_t out_idx = 0;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    out[out_idx] += probs_[i];
    // Odometer increment, keeping out_idx in sync.
    for (int k = num_vars() - 1; k >= 0; --k) {
      if (++tuple[k] < cards_[k]) {
        out_idx += weight[k];
        break;
      }
      out_idx -= weight[k] * static_cast<std::size_t>(cards_[k] - 1);
      tuple[k] = 0;
    }
  }
  return JointPmf(std::move(out_cards), std::move(out));
}

double JointPmf::Entropy(const std::vector<int>& vars) const {
  if (vars.empty()) return 0.0;
  const JointPmf m = Marginal(vars);
  double h = 0.0;
  for (double p : m.probs_) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

double JointPmf::MutualInformation(const std::vector<int>& a,
                                   const std::vector<int>& b,
                                   const std::vector<int>& c) const {
  auto join = [](std::vector<int> x, const std::vector<int>& y) {
    x.insert(x.end(), y.begin(), y.end());
    return x;
  };
  const double mi = Entropy(join(a, c)) + Entropy(join(b, c)) -
                    Entropy(join(join(a, b), c)) - Entropy(c);
  return std::max(0.0, mi);
}

double DiscreteSourceSpec::d_max() const {
  return distortion.empty()
             ? 0.0
             : *std::max_element(distortion.begin(), distortion.end());
}

void DiscreteSourceSpec::Validate() const {
  CheckAlphabet(x_card, "x_card");
  CheckAlphabet(v_card, "v_card");
  CheckAlphabet(u_card, "u_card");
  CheckAlphabet(xhat_card, "xhat_card");
  Require(!y_cards.empty() && num_users() <= kMaxUsers,
          ErrorKind::kValidation, "y_cards must list 1 to 64 users");
  for (std::size_t i = 0; i < y_cards.size(); ++i) {
    CheckAlphabet(y_cards[i], "y_cards[" + std::to_string(i) + "]");
  }
  std::vector<int> xy = {x_card};
  xy.insert(xy.end(), y_cards.begin(), y_cards.end());
  CheckPmf(p_xy, Product(xy), "p_xy");
  CheckConditional(p_v_given_x, x_card, v_card, "p_v_given_x");
  CheckConditional(p_u_given_v, v_card, u_card, "p_u_given_v");
  Require(distortion.size() == static_cast<std::size_t>(x_card) * xhat_card,
          ErrorKind::kValidation, "distortion must be x_card x xhat_card");
  for (std::size_t i = 0; i < distortion.size(); ++i) {
    Require(std::isfinite(distortion[i]) && distortion[i] >= 0.0,
            ErrorKind::kValidation,
            "distortion[" + std::to_string(i) + "] must be finite and >= 0");
  }
  for (const auto& [mask, table] : reconstruction) {
    const UserSubset a = UserSubset::FromMask(mask);
    Require(!a.empty() && a.FitsIn(num_users()), ErrorKind::kValidation,
            "reconstruction key " + a.ToString() + " is not a valid set");
    std::size_t size = static_cast<std::size_t>(v_card);
    for (int m : a.members()) size *= static_cast<std::size_t>(y_cards[m]);
    Require(table.size() == size, ErrorKind::kValidation,
            "reconstruction table for " + a.ToString() + " must have " +
                std::to_string(size) + " entries");
    for (int e : table) {
      Require(e >= 0 && e < xhat_card, ErrorKind::kValidation,
              "reconstruction entry out of the x_hat alphabet");
    }
  }
}

std::vector<int> VarIds::ys(UserSubset s) const {
  std::vector<int> out;
  for (int m : s.members()) out.push_back(y(m));
  return out;
}

JointPmf BuildFullJoint(const DiscreteSourceSpec& spec) {
  spec.Validate();
  std::vector<int> cards = {spec.x_card};
  cards.insert(cards.end(), spec.y_cards.begin(), spec.y_cards.end());
  const std::size_t xy_size = Product(cards);
  cards.push_back(spec.v_card);
  cards.push_back(spec.u_card);
  std::vector<double> probs(Product(cards), 0.0);
  const std::size_t y_block = xy_size / static_cast<std::size_t>(spec.x_card);
  const std::size_t vu = static_cast<std::size_t>(spec.v_card) * spec.u_card;
  for (std::size_t i = 0; i < xy_size; ++i) {
    const int x = static_cast<int>(i / y_block);
    for (int v = 0; v < spec.v_card; ++v) {
      const double pv = spec.p_v_given_x[x * spec.v_card + v];
      for (int u = 0; u < spec.u_card; ++u) {
        probs[i * vu + static_cast<std::size_t>(v) * spec.u_card + u] =
            spec.p_xy[i] * pv * spec.p_u_given_v[v * spec.u_card + u];
      }
    }
  }
  return JointPmf(std::move(cards), std::move(probs));
}

std::vector<int> DefaultReconstruction(const DiscreteSourceSpec& spec,
                                       const JointPmf& joint, UserSubset a) {
  const VarIds ids(spec.num_users());
  std::vector<int> vars = {ids.v()};
  const std::vector<int> ya = ids.ys(a);
  vars.insert(vars.end(), ya.begin(), ya.end());
  vars.push_back(ids.x());
  // Layout (v, y_A, x): consecutive blocks of x_card entries.
  const JointPmf m = joint.Marginal(vars);
  const std::size_t cells = m.size() / static_cast<std::size_t>(spec.x_card);
  std::vector<int> table(cells, 0);
  for (std::size_t c = 0; c < cells; ++c) {
    double best = std::numeric_limits<double>::infinity();
    for (int xh = 0; xh < spec.xhat_card; ++xh) {
      double cost = 0.0;
      for (int x = 0; x < spec.x_card; ++x) {
        cost += m.probs()[c * spec.x_card + x] *
                spec.distortion[x * spec.xhat_card + xh];
      }
      if (cost < best) {
        best = cost;
        table[c] = xh;
      }
    }
  }
  return table;
}

std::vector<int> ReconstructionFor(const DiscreteSourceSpec& spec,
                                   const JointPmf& joint, UserSubset a) {
  auto it = spec.reconstruction.find(a.mask());
  if (it != spec.reconstruction.end()) return it->second;
  return DefaultReconstruction(spec, joint, a);
}

double ExpectedDistortion(const DiscreteSourceSpec& spec,
                          const JointPmf& joint, UserSubset a) {
  const VarIds ids(spec.num_users());
  std::vector<int> vars = {ids.v()};
  const std::vector<int> ya = ids.ys(a);
  vars.insert(vars.end(), ya.begin(), ya.end());
  vars.push_back(ids.x());
  const JointPmf m = joint.Marginal(vars);
  const std::vector<int> table = ReconstructionFor(spec, joint, a);
  double total = 0.0;
  for (std::size_t c = 0; c < table.size(); ++c) {
    for (int x = 0; x < spec.x_card; ++x) {
      total += m.probs()[c * spec.x_card + x] *
               spec.distortion[x * spec.xhat_card + table[c]];
    }
  }
  return total;
}

bool IsJointlyTypical(const std::vector<std::span<const std::uint8_t>>& seqs,
                      const JointPmf& pmf, double eps) {
  Require(static_cast<int>(seqs.size()) == pmf.num_vars(),
          ErrorKind::kInvalidParameter,
          "typicality needs one sequence per pmf variable");
  Require(!seqs.empty(), ErrorKind::kInvalidParameter,
          "typicality needs at least one sequence");
  const std::size_t n = seqs[0].size();
  Require(n > 0, ErrorKind::kInvalidParameter, "empty sequence");
  for (const auto& s : seqs) {
    Require(s.size() == n, ErrorKind::kInvalidParameter,
            "typicality sequences differ in length");
  }
  const std::vector<int>& cards = pmf.cards();
  std::vector<int> counts(pmf.size(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < seqs.size(); ++k) {
      const int sym = seqs[k][i];
      Require(sym < cards[k], ErrorKind::kInvalidParameter,
              "symbol outside its alphabet");
      idx = idx * static_cast<std::size_t>(cards[k]) +
            static_cast<std::size_t>(sym);
    }
    ++counts[idx];
  }
  // Compared in counts so that cells exactly on the tolerance edge are not
  // decided by rounding.
  const double nd = static_cast<double>(n);
  const double slack = kTypicalityRoundoff * nd;
  for (std::size_t c = 0; c < counts.size(); ++c) {
    const double p = pmf.probs()[c];
    if (p == 0.0) {
      if (counts[c] != 0) return false;
      continue;
    }
    if (std::abs(counts[c] - nd * p) > eps * nd * p + slack) return false;
  }
  return true;
}

}  // namespace ssc
