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

#include "ssc/access_structure.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "ssc/errors.h"
#include "ssc/gaussian_model.h"

namespace ssc {
namespace {

// Upper bound on explicitly materialized families.
constexpr double kMaxFamilySize = 1 << 20;

// Relative tolerance under which two traces count as tied.
constexpr double kTraceTieTolerance = 1e-12;

double Binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                             std::lgamma(n - k + 1.0)));
}

// All k-subsets of {0..n-1}, in increasing mask order (Gosper's hack).
std::vector<UserSubset> SubsetsOfSize(int n, int k) {
  if (Binomial(n, k) > kMaxFamilySize) {
    Fail(ErrorKind::kResource, "family of " + std::to_string(k) +
                                   "-subsets of " + std::to_string(n) +
                                   " users is too large to materialize");
  }
  std::vector<UserSubset> out;
  if (k == 0) {
    out.push_back(UserSubset());
    return out;
  }
  const std::uint64_t limit =
      n >= 64 ? 0 : (std::uint64_t{1} << n);  // 0 means no bound
  std::uint64_t v = (k >= 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
  while (true) {
    if (limit != 0 && v >= limit) break;
    out.push_back(UserSubset::FromMask(v));
    const std::uint64_t c = v & (~v + 1);
    const std::uint64_t r = v + c;
    if (r == 0) break;
    v = (((r ^ v) >> 2) / c) | r;
  }
  return out;
}

void SortLex(std::vector<UserSubset>& sets) {
  std::sort(sets.begin(), sets.end(), LexLess);
}

// Drops duplicates and proper supersets.
void KeepMinimal(std::vector<UserSubset>& sets) {
  std::sort(sets.begin(), sets.end(), [](UserSubset a, UserSubset b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.mask() < b.mask();
  });
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  std::vector<UserSubset> kept;
  kept.reserve(sets.size());
  for (UserSubset s : sets) {
    bool dominated = false;
    for (UserSubset k : kept) {
      if (k.IsSubsetOf(s)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) kept.push_back(s);
  }
  sets = std::move(kept);
}

// Minimal hitting sets of the hypergraph (Berge's incremental method).
std::vector<UserSubset> MinimalTransversals(
    const std::vector<UserSubset>& edges) {
  std::vector<UserSubset> trans = {UserSubset()};
  for (UserSubset edge : edges) {
    std::vector<UserSubset> next;
    for (UserSubset t : trans) {
      if (t.Intersects(edge)) {
        next.push_back(t);
        continue;
      }
      for (int v : edge.members()) next.push_back(t.With(v));
    }
    if (static_cast<double>(next.size()) > 4 * kMaxFamilySize) {
      Fail(ErrorKind::kResource, "unauthorized frontier is too large");
    }
    KeepMinimal(next);
    trans = std::move(next);
  }
  return trans;
}

bool TraceTied(double a, double b) {
  return std::abs(a - b) <= kTraceTieTolerance * std::max(std::abs(a),
                                                          std::abs(b));
}

}  // namespace

UserSubset UserSubset::FromMembers(const std::vector<int>& members) {
  std::uint64_t mask = 0;
  for (int m : members) {
    if (m < 0 || m >= kMaxUsers) {
      Fail(ErrorKind::kInvalidParameter,
           "user index " + std::to_string(m) + " out of range");
    }
    const std::uint64_t bit = std::uint64_t{1} << m;
    if (mask & bit) {
      Fail(ErrorKind::kInvalidParameter,
           "duplicate user index " + std::to_string(m));
    }
    mask |= bit;
  }
  return FromMask(mask);
}

std::vector<int> UserSubset::members() const {
  std::vector<int> out;
  out.reserve(size());
  for (std::uint64_t m = mask_; m != 0; m &= m - 1) {
    out.push_back(std::countr_zero(m));
  }
  return out;
}

std::string UserSubset::ToString() const {
  std::string s = "{";
  bool first = true;
  for (int m : members()) {
    if (!first) s += ",";
    s += std::to_string(m + 1);
    first = false;
  }
  return s + "}";
}

bool LexLess(UserSubset a, UserSubset b) {
  const std::vector<int> ma = a.members();
  const std::vector<int> mb = b.members();
  return std::lexicographical_compare(ma.begin(), ma.end(), mb.begin(),
                                      mb.end());
}

AccessStructure AccessStructure::FromMinimalSets(
    int num_users, std::vector<UserSubset> minimal_sets) {
  Require(num_users >= 1 && num_users <= kMaxUsers, ErrorKind::kValidation,
          "num_users must be in [1, " + std::to_string(kMaxUsers) + "]");
  Require(!minimal_sets.empty(), ErrorKind::kValidation,
          "access structure needs at least one minimal set");
  for (UserSubset s : minimal_sets) {
    Require(!s.empty(), ErrorKind::kValidation,
            "minimal sets must be nonempty");
    Require(s.FitsIn(num_users), ErrorKind::kValidation,
            "minimal set " + s.ToString() + " references a user beyond " +
                std::to_string(num_users));
  }
  for (std::size_t i = 0; i < minimal_sets.size(); ++i) {
    for (std::size_t j = 0; j < minimal_sets.size(); ++j) {
      if (i != j && minimal_sets[i].IsSubsetOf(minimal_sets[j])) {
        Fail(ErrorKind::kValidation,
             "minimal sets are not an antichain: " +
                 minimal_sets[i].ToString() + " is contained in " +
                 minimal_sets[j].ToString());
      }
    }
  }
  AccessStructure a;
  a.num_users_ = num_users;
  a.minimal_sets_ = std::move(minimal_sets);
  SortLex(a.minimal_sets_);
  return a;
}

AccessStructure AccessStructure::Threshold(int num_users, int t) {
  Require(num_users >= 1 && num_users <= kMaxUsers,
          ErrorKind::kInvalidParameter,
          "num_users must be in [1, " + std::to_string(kMaxUsers) + "]");
  Require(t >= 1 && t <= num_users, ErrorKind::kInvalidParameter,
          "threshold t=" + std::to_string(t) + " outside [1, " +
              std::to_string(num_users) + "]");
  AccessStructure a;
  a.num_users_ = num_users;
  a.minimal_sets_ = SubsetsOfSize(num_users, t);
  SortLex(a.minimal_sets_);
  a.threshold_ = t;
  return a;
}

bool AccessStructure::IsAuthorized(UserSubset s) const {
  if (threshold_) return s.size() >= *threshold_;
  for (UserSubset m : minimal_sets_) {
    if (m.IsSubsetOf(s)) return true;
  }
  return false;
}

std::vector<UserSubset> UnauthorizedMaximalSets(const AccessStructure& a) {
  std::vector<UserSubset> out;
  if (a.threshold()) {
    out = SubsetsOfSize(a.num_users(), *a.threshold() - 1);
  } else {
    for (UserSubset t : MinimalTransversals(a.minimal_sets())) {
      out.push_back(t.ComplementIn(a.num_users()));
    }
  }
  SortLex(out);
  return out;
}

OptimalSets ComputeOptimalSets(const AccessStructure& a,
                               const SourceModel& model) {
  model.Validate();
  Require(model.num_users() == a.num_users(), ErrorKind::kValidation,
          "model has " + std::to_string(model.num_users()) +
              " users but the access structure has " +
              std::to_string(a.num_users()));
  OptimalSets best;
  double best_a = 0.0;
  bool have_a = false;
  for (UserSubset s : a.minimal_sets()) {
    const double tr = InverseTrace(model, s);
    if (!have_a || (tr < best_a && !TraceTied(tr, best_a)) ||
        (TraceTied(tr, best_a) && LexLess(s, best.a_star))) {
      best.a_star = s;
      best_a = tr;
      have_a = true;
    }
  }
  const std::vector<UserSubset> unauthorized = UnauthorizedMaximalSets(a);
  if (unauthorized.empty()) {
    Fail(ErrorKind::kStructural, "unauthorized family is empty");
  }
  double best_b = 0.0;
  bool have_b = false;
  for (UserSubset s : unauthorized) {
    const double tr = InverseTrace(model, s);
    if (!have_b || (tr > best_b && !TraceTied(tr, best_b)) ||
        (TraceTied(tr, best_b) && LexLess(s, best.b_star))) {
      best.b_star = s;
      best_b = tr;
      have_b = true;
    }
  }
  return best;
}

}  // namespace ssc
