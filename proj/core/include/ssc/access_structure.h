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

// Monotone access structures over a finite user set.
//
// Users are indexed 0..L-1 in code. The JSON and CLI layers use 1-based
// indices and convert at the boundary.

#ifndef SSC_ACCESS_STRUCTURE_H_
#define SSC_ACCESS_STRUCTURE_H_

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ssc {

inline constexpr int kMaxUsers = 64;
// Exhaustive 2^L scans are only allowed up to this many users.
inline constexpr int kMaxEnumerationUsers = 20;

struct SourceModel;

// A set of users stored as a bitmask.
class UserSubset {
 public:
  constexpr UserSubset() = default;
  static constexpr UserSubset FromMask(std::uint64_t mask) {
    UserSubset s;
    s.mask_ = mask;
    return s;
  }
  // Throws kInvalidParameter on out-of-range or duplicate indices.
  static UserSubset FromMembers(const std::vector<int>& members);
  static constexpr UserSubset Full(int num_users) {
    return FromMask(num_users >= 64 ? ~std::uint64_t{0}
                                    : (std::uint64_t{1} << num_users) - 1);
  }

  constexpr std::uint64_t mask() const { return mask_; }
  constexpr int size() const { return std::popcount(mask_); }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr bool contains(int user) const { return (mask_ >> user) & 1u; }
  constexpr bool IsSubsetOf(UserSubset other) const {
    return (mask_ & ~other.mask_) == 0;
  }
  constexpr bool Intersects(UserSubset other) const {
    return (mask_ & other.mask_) != 0;
  }
  constexpr bool FitsIn(int num_users) const {
    return num_users >= 64 || (mask_ >> num_users) == 0;
  }
  constexpr UserSubset With(int user) const {
    return FromMask(mask_ | (std::uint64_t{1} << user));
  }
  constexpr UserSubset Without(int user) const {
    return FromMask(mask_ & ~(std::uint64_t{1} << user));
  }
  constexpr UserSubset Union(UserSubset other) const {
    return FromMask(mask_ | other.mask_);
  }
  constexpr UserSubset ComplementIn(int num_users) const {
    return FromMask(Full(num_users).mask_ & ~mask_);
  }

  // Sorted ascending.
  std::vector<int> members() const;
  // "{1,3}" with 1-based indices.
  std::string ToString() const;

  friend constexpr bool operator==(UserSubset a, UserSubset b) {
    return a.mask_ == b.mask_;
  }

 private:
  std::uint64_t mask_ = 0;
};

// Lexicographic order on sorted member lists; {0} < {0,1} < {1}.
bool LexLess(UserSubset a, UserSubset b);

// Monotone family given by its antichain of minimal sets.
class AccessStructure {
 public:
  // Validates range, nonemptiness and the antichain property.
  static AccessStructure FromMinimalSets(int num_users,
                                         std::vector<UserSubset> minimal_sets);
  // Every set of size >= t is authorized.
  static AccessStructure Threshold(int num_users, int t);

  int num_users() const { return num_users_; }
  // Sorted with LexLess.
  const std::vector<UserSubset>& minimal_sets() const { return minimal_sets_; }
  // Set when the structure was built by Threshold().
  std::optional<int> threshold() const { return threshold_; }

  bool IsAuthorized(UserSubset s) const;

 private:
  AccessStructure() = default;

  int num_users_ = 0;
  std::vector<UserSubset> minimal_sets_;
  std::optional<int> threshold_;
};

// Maximal elements of the unauthorized family, sorted with LexLess. Never
// empty: the empty set is always unauthorized.
std::vector<UserSubset> UnauthorizedMaximalSets(const AccessStructure& a);

struct OptimalSets {
  UserSubset a_star;
  UserSubset b_star;
};

// Trace-optimal authorized set (argmin) and unauthorized set (argmax),
// ties broken by LexLess.
OptimalSets ComputeOptimalSets(const AccessStructure& a,
                               const SourceModel& model);

}  // namespace ssc

#endif  // SSC_ACCESS_STRUCTURE_H_
