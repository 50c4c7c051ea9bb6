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

// Finite-alphabet sources: joint pmfs, information measures, strong
// typicality and reconstruction tables.

#ifndef SSC_DISCRETE_H_
#define SSC_DISCRETE_H_

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "ssc/access_structure.h"

namespace ssc {

// Dense pmf over a tuple of finite variables, stored row-major (the last
// variable varies fastest).
class JointPmf {
 public:
  JointPmf() = default;
  JointPmf(std::vector<int> cards, std::vector<double> probs);

  const std::vector<int>& cards() const { return cards_; }
  const std::vector<double>& probs() const { return probs_; }
  int num_vars() const { return static_cast<int>(cards_.size()); }
  std::size_t size() const { return probs_.size(); }

  // Marginal over the listed variables, in the listed order.
  JointPmf Marginal(const std::vector<int>& vars) const;
  // Flat index of a full tuple.
  std::size_t Index(std::span<const int> tuple) const;

  // H of the listed variables in bits.
  double Entropy(const std::vector<int>& vars) const;
  // I(A; B | C) in bits; C may be empty.
  double MutualInformation(const std::vector<int>& a,
                           const std::vector<int>& b,
                           const std::vector<int>& c = {}) const;

 private:
  std::vector<int> cards_;
  std::vector<double> probs_;
};

struct DiscreteSourceSpec {
  int x_card = 2;
  std::vector<int> y_cards;          // one alphabet per user
  int v_card = 2;
  int u_card = 1;
  int xhat_card = 2;
  std::vector<double> p_xy;          // over (x, y_1, ..., y_L)
  std::vector<double> p_v_given_x;   // x_card x v_card
  std::vector<double> p_u_given_v;   // v_card x u_card
  std::vector<double> distortion;    // x_card x xhat_card
  // Explicit x_hat tables keyed by authorized-set mask, flattened over
  // (v, y of the set's users in ascending order). Missing sets use the
  // distortion-minimizing default.
  std::map<std::uint64_t, std::vector<int>> reconstruction;

  int num_users() const { return static_cast<int>(y_cards.size()); }
  double d_max() const;
  // Throws kValidation with a field diagnostic.
  void Validate() const;
};

// Variable layout of the full joint: X, Y_1..Y_L, V, U.
struct VarIds {
  explicit VarIds(int num_users) : num_users(num_users) {}
  int x() const { return 0; }
  int y(int user) const { return 1 + user; }
  int v() const { return num_users + 1; }
  int u() const { return num_users + 2; }
  std::vector<int> ys(UserSubset s) const;
  int num_users;
};

// P_{X Y} P_{V|X} P_{U|V}. Throws kResource beyond 2^24 cells.
JointPmf BuildFullJoint(const DiscreteSourceSpec& spec);

// Default table: argmin over x_hat of E[d(X, x_hat) | v, y_A], smallest
// index on ties, flattened over (v, y_A).
std::vector<int> DefaultReconstruction(const DiscreteSourceSpec& spec,
                                       const JointPmf& joint, UserSubset a);

// The table the scheme uses for set a (explicit or default).
std::vector<int> ReconstructionFor(const DiscreteSourceSpec& spec,
                                   const JointPmf& joint, UserSubset a);

// E[d(X, x_hat_A(V, Y_A))] under the model pmf.
double ExpectedDistortion(const DiscreteSourceSpec& spec,
                          const JointPmf& joint, UserSubset a);

// Strong typicality: every cell count N(a) satisfies
// |N(a)/n - P(a)| <= eps P(a), with N(a) = 0 when P(a) = 0. seqs[k] holds
// the k-th variable of pmf, all of length n.
bool IsJointlyTypical(const std::vector<std::span<const std::uint8_t>>& seqs,
                      const JointPmf& pmf, double eps);

}  // namespace ssc

#endif  // SSC_DISCRETE_H_
