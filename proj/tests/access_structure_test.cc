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
#include <cstdint>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "reference_models.h"
#include "ssc/errors.h"
#include "ssc/gaussian_model.h"

namespace ssc {
namespace {

UserSubset S(std::vector<int> members) {
  return UserSubset::FromMembers(members);
}

// Maximal unauthorized sets by scanning all 2^L subsets.
std::vector<UserSubset> BruteForceMaximalUnauthorized(
    const AccessStructure& a) {
  const int l = a.num_users();
  std::vector<UserSubset> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << l); ++m) {
    const UserSubset s = UserSubset::FromMask(m);
    if (a.IsAuthorized(s)) continue;
    bool maximal = true;
    for (int u = 0; u < l && maximal; ++u) {
      if (!s.contains(u) && !a.IsAuthorized(s.With(u))) maximal = false;
    }
    if (maximal) out.push_back(s);
  }
  std::sort(out.begin(), out.end(), LexLess);
  return out;
}

// Random antichain: draw subsets and keep those incomparable with the rest.
AccessStructure RandomStructure(std::mt19937_64& rng, int l) {
  std::vector<UserSubset> sets;
  const int draws = 1 + static_cast<int>(rng() % 6);
  for (int k = 0; k < draws; ++k) {
    const UserSubset s =
        UserSubset::FromMask(1 + rng() % UserSubset::Full(l).mask());
    bool comparable = false;
    for (UserSubset t : sets) {
      if (s.IsSubsetOf(t) || t.IsSubsetOf(s)) comparable = true;
    }
    if (!comparable) sets.push_back(s);
  }
  return AccessStructure::FromMinimalSets(l, sets);
}

TEST(UserSubsetTest, MembersAndFormatting) {
  const UserSubset s = S({2, 0});
  EXPECT_EQ(s.mask(), 0b101u);
  EXPECT_EQ(s.size(), 2);
  EXPECT_EQ(s.members(), (std::vector<int>{0, 2}));
  EXPECT_EQ(s.ToString(), "{1,3}");
  EXPECT_EQ(UserSubset().ToString(), "{}");
  EXPECT_TRUE(S({0}).IsSubsetOf(s));
  EXPECT_FALSE(S({1}).Intersects(s));
  EXPECT_EQ(s.ComplementIn(3), S({1}));
  EXPECT_THROW(S({0, 0}), Error);
  EXPECT_THROW(S({64}), Error);
  EXPECT_THROW(S({-1}), Error);
}

TEST(UserSubsetTest, LexicographicOrder) {
  EXPECT_TRUE(LexLess(S({0}), S({0, 1})));
  EXPECT_TRUE(LexLess(S({0, 1}), S({1})));
  EXPECT_TRUE(LexLess(UserSubset(), S({0})));
  EXPECT_FALSE(LexLess(S({1}), S({1})));
}

TEST(AccessStructureTest, ThresholdFiveChooseThree) {
  const AccessStructure a = AccessStructure::Threshold(5, 3);
  EXPECT_EQ(a.minimal_sets().size(), 10u);
  EXPECT_EQ(a.threshold(), 3);
  EXPECT_TRUE(a.IsAuthorized(S({0, 2, 4})));
  EXPECT_FALSE(a.IsAuthorized(S({1, 3})));
  EXPECT_EQ(UnauthorizedMaximalSets(a).size(), 10u);
  for (UserSubset b : UnauthorizedMaximalSets(a)) EXPECT_EQ(b.size(), 2);
}

TEST(AccessStructureTest, ThresholdOneHasOnlyEmptyUnauthorized) {
  const AccessStructure a = AccessStructure::Threshold(4, 1);
  const std::vector<UserSubset> b = UnauthorizedMaximalSets(a);
  ASSERT_EQ(b.size(), 1u);
  EXPECT_TRUE(b[0].empty());
}

TEST(AccessStructureTest, RejectsInvalidInput) {
  EXPECT_THROW(AccessStructure::FromMinimalSets(3, {S({0}), S({0, 1})}),
               Error);
  EXPECT_THROW(AccessStructure::FromMinimalSets(3, {UserSubset()}), Error);
  EXPECT_THROW(AccessStructure::FromMinimalSets(2, {S({2})}), Error);
  EXPECT_THROW(AccessStructure::FromMinimalSets(3, {}), Error);
  EXPECT_THROW(AccessStructure::Threshold(3, 0), Error);
  EXPECT_THROW(AccessStructure::Threshold(3, 4), Error);
}

TEST(AccessStructureTest, EnumerationGuard) {
  try {
    AccessStructure::Threshold(40, 20);
    FAIL() << "expected a resource error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kResource);
  }
}

TEST(AccessStructureTest, GeneralStructureMaximalUnauthorized) {
  // {1,2} or {3}: maximal unauthorized sets are {1} and {2}.
  const AccessStructure a =
      AccessStructure::FromMinimalSets(3, {S({2}), S({0, 1})});
  EXPECT_EQ(UnauthorizedMaximalSets(a),
            (std::vector<UserSubset>{S({0}), S({1})}));
}

TEST(AccessStructureTest, MaximalUnauthorizedMatchesBruteForce) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int l = 1 + static_cast<int>(rng() % 8);
    const AccessStructure a = RandomStructure(rng, l);
    EXPECT_EQ(UnauthorizedMaximalSets(a), BruteForceMaximalUnauthorized(a))
        << "trial " << trial;
  }
}

TEST(AccessStructureTest, ThresholdFastPathMatchesGeneralPath) {
  for (int l = 1; l <= 7; ++l) {
    for (int t = 1; t <= l; ++t) {
      const AccessStructure th = AccessStructure::Threshold(l, t);
      const AccessStructure general =
          AccessStructure::FromMinimalSets(l, th.minimal_sets());
      EXPECT_EQ(UnauthorizedMaximalSets(th), UnauthorizedMaximalSets(general));
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << l); ++m) {
        const UserSubset s = UserSubset::FromMask(m);
        EXPECT_EQ(th.IsAuthorized(s), general.IsAuthorized(s));
      }
    }
  }
}

TEST(AccessStructureTest, MonotoneUnderSupersets) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const int l = 2 + static_cast<int>(rng() % 6);
    const AccessStructure a = RandomStructure(rng, l);
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << l); ++m) {
      const UserSubset s = UserSubset::FromMask(m);
      if (!a.IsAuthorized(s)) continue;
      for (int u = 0; u < l; ++u) EXPECT_TRUE(a.IsAuthorized(s.With(u)));
    }
  }
}

TEST(OptimalSetsTest, FiveUserThresholds) {
  const SourceModel m = testing_models::FiveUserModel();
  struct Row {
    int t;
    UserSubset a;
    UserSubset b;
  };
  // Lowest-trace t-set and highest-trace (t-1)-set.
  const std::vector<Row> rows = {
      {5, S({0, 1, 2, 3, 4}), S({1, 2, 3, 4})},
      {4, S({0, 1, 2, 3}), S({1, 3, 4})},
      {3, S({0, 1, 2}), S({3, 4})},
      {2, S({0, 2}), S({4})},
  };
  for (const Row& r : rows) {
    const OptimalSets o =
        ComputeOptimalSets(AccessStructure::Threshold(5, r.t), m);
    EXPECT_EQ(o.a_star, r.a) << "t=" << r.t;
    EXPECT_EQ(o.b_star, r.b) << "t=" << r.t;
  }
}

TEST(OptimalSetsTest, TiesBreakLexicographically) {
  const SourceModel m{1.0, {1.0, 1.0, 1.0}};
  const OptimalSets o = ComputeOptimalSets(AccessStructure::Threshold(3, 2), m);
  EXPECT_EQ(o.a_star, S({0, 1}));
  EXPECT_EQ(o.b_star, S({0}));
}

}  // namespace
}  // namespace ssc
