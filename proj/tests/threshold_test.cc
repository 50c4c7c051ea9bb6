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

#include "ssc/threshold.h"

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "reference_models.h"
#include "ssc/errors.h"

namespace ssc {
namespace {

UserSubset S(std::vector<int> members) {
  return UserSubset::FromMembers(members);
}

SourceModel RandomModel(std::mt19937_64& rng, int l) {
  std::uniform_real_distribution<double> u(0.1, 5.0);
  SourceModel m{u(rng), {}};
  for (int i = 0; i < l; ++i) m.noise_vars.push_back(u(rng));
  return m;
}

TEST(ThresholdTest, NoiseOrderIsStable) {
  const SourceModel m{1.0, {0.5, 2.0, 0.5, 3.0}};
  EXPECT_EQ(UsersByDecreasingNoise(m), (std::vector<int>{3, 1, 0, 2}));
}

TEST(ThresholdTest, NestedSetsMatchExhaustiveSearch) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const int l = 1 + static_cast<int>(rng() % 7);
    const SourceModel m = RandomModel(rng, l);
    for (int t = 1; t <= l; ++t) {
      const OptimalSets nested = NestedOptimalSets(m, t);
      const OptimalSets exhaustive =
          ComputeOptimalSets(AccessStructure::Threshold(l, t), m);
      EXPECT_NEAR(InverseTrace(m, nested.a_star),
                  InverseTrace(m, exhaustive.a_star), 1e-12);
      EXPECT_NEAR(InverseTrace(m, nested.b_star),
                  InverseTrace(m, exhaustive.b_star), 1e-12);
      EXPECT_EQ(nested.a_star.size(), t);
      EXPECT_EQ(nested.b_star.size(), t - 1);
      // Bigger thresholds keep the earlier sets.
      if (t > 1) {
        const OptimalSets prev = NestedOptimalSets(m, t - 1);
        EXPECT_TRUE(prev.a_star.IsSubsetOf(nested.a_star));
        EXPECT_TRUE(prev.b_star.IsSubsetOf(nested.b_star));
      }
    }
  }
}

TEST(ThresholdTest, FiveUserRows) {
  const SourceModel m = testing_models::FiveUserModel();
  const ThresholdReport rep = BuildThresholdReport(m, 0.1, 1, 5);
  ASSERT_EQ(rep.rows.size(), 5u);
  EXPECT_TRUE(rep.AllConsistent());
  for (const ThresholdRow& row : rep.rows) {
    const RegionResult r =
        ComputeRegion(m, AccessStructure::Threshold(5, row.t), 0.1);
    EXPECT_NEAR(row.r_min, r.r_min, 1e-13);
    EXPECT_NEAR(row.delta_min, r.delta_min, 1e-13);
    EXPECT_TRUE(row.hypothesis_holds);
  }
  EXPECT_TRUE(rep.rows[0].b_star.empty());
  EXPECT_DOUBLE_EQ(rep.rows[0].tr_b, 0.0);
  EXPECT_EQ(rep.rows[1].a_star, S({0, 2}));
  EXPECT_EQ(rep.rows[1].b_star, S({4}));
}

TEST(ThresholdTest, LeakageIsNotMonotoneInT) {
  const SourceModel m = testing_models::FiveUserModel();
  std::vector<double> delta;
  for (int t = 2; t <= 5; ++t) {
    delta.push_back(ThresholdRowFor(m, 0.1, t).delta_min);
  }
  EXPECT_LT(delta[0], delta[1]);
  EXPECT_GT(delta[1], delta[2]);
  EXPECT_GT(delta[2], delta[3]);
  // Rates still fall with t.
  for (int t = 2; t < 5; ++t) {
    EXPECT_GT(ThresholdRowFor(m, 0.1, t).r_min,
              ThresholdRowFor(m, 0.1, t + 1).r_min);
  }
}

TEST(ThresholdTest, PredicatesAgreeWithRegionsOnRandomModels) {
  std::mt19937_64 rng(23);
  int applicable = 0;
  int predicted_false = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const int l = 2 + static_cast<int>(rng() % 7);
    const SourceModel m = RandomModel(rng, l);
    // Keep every threshold inside the nondegenerate range for most draws.
    const double var_full = CondVarGivenSideInfo(m, UserSubset::Full(l));
    const double d =
        var_full * std::uniform_real_distribution<double>(0.05, 1.2)(rng);
    const ThresholdReport rep = BuildThresholdReport(m, d, 1, l);
    for (const Verdict& v : rep.verdicts) {
      EXPECT_TRUE(v.consistent())
          << v.predicate_id << " t=" << v.t << " i=" << v.i << " trial "
          << trial;
      if (v.applicable) {
        ++applicable;
        if (!v.predicted) ++predicted_false;
      }
    }
  }
  EXPECT_GT(applicable, 1000);
  // Both outcomes of the predicates occur.
  EXPECT_GT(predicted_false, 20);
}

TEST(ThresholdTest, TraceRatioPredicateMatchesDirectLeakage) {
  // In the g1 branch the leakage is R + 0.5 log2((s + tr_b) / (s + tr_a)) +
  // const, so the predicate is the sign of a direct difference.
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const SourceModel m = RandomModel(rng, 6);
    const double d = 0.3 * CondVarGivenSideInfo(m, UserSubset::Full(6));
    for (const Verdict& v : LeakageOrderVerdicts(m, d)) {
      if (!v.applicable || v.predicate_id != "leakage_trace_ratio") continue;
      const double a = ThresholdRowFor(m, d, v.t).delta_min;
      const double b = ThresholdRowFor(m, d, v.t + v.i).delta_min;
      EXPECT_EQ(v.observed, a + kVerdictDeadBand >= b);
      EXPECT_EQ(v.predicted, v.observed);
    }
  }
}

TEST(ThresholdTest, InclusionVerdictIndexing) {
  const SourceModel m = testing_models::FiveUserModel();
  const std::vector<Verdict> v = InclusionVerdicts(m, 0.1);
  int ratio_rows = 0;
  for (const Verdict& x : v) {
    if (x.predicate_id != "inclusion_trace_ratio") continue;
    EXPECT_EQ(x.t + x.i, 5);
    ++ratio_rows;
  }
  EXPECT_EQ(ratio_rows, 5);
}

TEST(ThresholdTest, HypothesisFailsWhenDistortionIsLarge) {
  const SourceModel m = testing_models::FiveUserModel();
  // Var(X | Y_1) = 2 / 3, above that t = 1 needs no message.
  const ThresholdRow row = ThresholdRowFor(m, 0.7, 1);
  EXPECT_FALSE(row.hypothesis_holds);
  EXPECT_EQ(row.case_tag, CaseTag::kDegenerate);
  const ThresholdReport rep = BuildThresholdReport(m, 0.7, 1, 5);
  for (const Verdict& v : rep.verdicts) {
    if (v.t == 1) EXPECT_FALSE(v.applicable);
  }
  EXPECT_TRUE(rep.AllConsistent());
}

TEST(ThresholdTest, PartialRange) {
  const SourceModel m = testing_models::FiveUserModel();
  const ThresholdReport rep = BuildThresholdReport(m, 0.1, 2, 4);
  ASSERT_EQ(rep.rows.size(), 3u);
  EXPECT_EQ(rep.rows.front().t, 2);
  for (const Verdict& v : rep.verdicts) {
    EXPECT_GE(v.t, 2);
    if (v.predicate_id != "inclusion_trace_ratio") EXPECT_LE(v.t + v.i, 4);
  }
}

TEST(ThresholdTest, RejectsBadRange) {
  const SourceModel m = testing_models::FiveUserModel();
  EXPECT_THROW(BuildThresholdReport(m, 0.1, 0, 3), Error);
  EXPECT_THROW(BuildThresholdReport(m, 0.1, 4, 3), Error);
  EXPECT_THROW(BuildThresholdReport(m, 0.1, 1, 6), Error);
  EXPECT_THROW(ThresholdRowFor(m, 0.1, 0), Error);
}

}  // namespace
}  // namespace ssc
