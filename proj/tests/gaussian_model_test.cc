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

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "reference_models.h"
#include "ssc/errors.h"
#include "ssc/oracle.h"

namespace ssc {
namespace {

UserSubset S(std::vector<int> members) {
  return UserSubset::FromMembers(members);
}

ErrorKind KindOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::kNumeric;
}

TEST(SourceModelTest, Validation) {
  EXPECT_NO_THROW(testing_models::FiveUserModel().Validate());
  EXPECT_EQ(KindOf([] { SourceModel{0.0, {1.0}}.Validate(); }),
            ErrorKind::kValidation);
  EXPECT_EQ(KindOf([] { SourceModel{1.0, {}}.Validate(); }),
            ErrorKind::kValidation);
  EXPECT_EQ(KindOf([] { SourceModel{1.0, {1.0, -0.5}}.Validate(); }),
            ErrorKind::kValidation);
  EXPECT_EQ(KindOf([] { SourceModel{1.0, {NAN}}.Validate(); }),
            ErrorKind::kValidation);
}

TEST(SufficientStatisticTest, TraceValues) {
  const SourceModel m{1.0, {1.0, 1.0}};
  const ScalarChannel c = SufficientStatistic(m, S({0, 1}));
  EXPECT_DOUBLE_EQ(c.gain, 2.0);
  EXPECT_DOUBLE_EQ(c.noise_var, 2.0);

  const SourceModel five = testing_models::FiveUserModel();
  EXPECT_NEAR(SufficientStatistic(five, S({0, 1, 2, 3, 4})).gain, 6.4563,
              1e-4);
  EXPECT_NEAR(SufficientStatistic(five, S({1, 3, 4})).gain, 4.3452, 1e-4);
  EXPECT_EQ(KindOf([&] { SufficientStatistic(five, UserSubset()); }),
            ErrorKind::kInvalidParameter);
  EXPECT_DOUBLE_EQ(InverseTrace(five, UserSubset()), 0.0);
}

TEST(CondVarTest, ClosedFormValues) {
  const SourceModel five = testing_models::FiveUserModel();
  const double tr = 1.0 + 1.25 + 1.0 / 0.9 + 1.0 / 0.7 + 1.0 / 0.6;
  EXPECT_NEAR(CondVarGivenSideInfo(five, S({0, 1, 2, 3, 4})),
              2.0 / (2.0 * tr + 1.0), 1e-15);
  EXPECT_NEAR(CondVarGivenSideInfo(five, S({0, 1, 2, 3, 4})), 0.143754, 1e-6);
  EXPECT_DOUBLE_EQ(CondVarGivenSideInfo(SourceModel{1.0, {1.0}}, S({0})), 0.5);
  // Nearly useless side information leaves the prior variance.
  EXPECT_NEAR(CondVarGivenSideInfo(SourceModel{3.0, {1e9}}, S({0})), 3.0,
              1e-7);
}

TEST(CondVarTest, EqualNoisePairMatchesHandAlgebra) {
  const double sx2 = 1.7;
  const double s2 = 0.35;
  const SourceModel m{sx2, {s2, s2}};
  EXPECT_NEAR(CondVarGivenSideInfo(m, S({0, 1})),
              sx2 * s2 / (2.0 * sx2 + s2), 1e-15);
}

TEST(CondVarTest, AgreesWithDenseConditioning) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int l = 1 + static_cast<int>(rng() % 8);
    SourceModel m{u(rng), {}};
    for (int i = 0; i < l; ++i) m.noise_vars.push_back(u(rng));
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << l); ++mask) {
      const UserSubset s = UserSubset::FromMask(mask);
      const double a = CondVarGivenSideInfo(m, s);
      EXPECT_NEAR(a, VectorConditioningOracle(m, s), 1e-12 * std::max(1.0, a));
    }
  }
}

TEST(CondVarTest, StrictlyDecreasingWhenUsersAreAdded) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  for (int trial = 0; trial < 50; ++trial) {
    SourceModel m{u(rng), {}};
    for (int i = 0; i < 6; ++i) m.noise_vars.push_back(u(rng));
    for (std::uint64_t mask = 1; mask < 64; ++mask) {
      const UserSubset s = UserSubset::FromMask(mask);
      for (int add = 0; add < 6; ++add) {
        if (s.contains(add)) continue;
        EXPECT_LT(CondVarGivenSideInfo(m, s.With(add)),
                  CondVarGivenSideInfo(m, s));
      }
    }
  }
}

TEST(CondVarGivenVAndYTest, Values) {
  EXPECT_DOUBLE_EQ(CondVarGivenVAndY(1.0, 1.0, 1.0), 0.5);
  EXPECT_DOUBLE_EQ(CondVarGivenVAndY(2.0, 2.0, 0.5), 0.25);
  // Uninformative V leaves the Y-only error sigma_n2 / h^2.
  EXPECT_NEAR(CondVarGivenVAndY(2.0, 3.0, 1e12), 0.75, 1e-9);
  EXPECT_EQ(KindOf([] { CondVarGivenVAndY(0.0, 1.0, 1.0); }),
            ErrorKind::kInvalidParameter);
}

TEST(FOfDTest, Values) {
  const double tr = 6.456349206349206;
  EXPECT_NEAR(FOfDFromTrace(tr, 0.1), 0.1 / (1.0 - tr * 0.1), 1e-15);
  EXPECT_NEAR(FOfDFromTrace(tr, 0.1), 0.28219, 1e-5);
  EXPECT_NEAR(FOfDFromTrace(1e-9, 0.3), 0.3, 1e-9);
  EXPECT_EQ(KindOf([] { FOfDFromTrace(10.0, 0.1); }),
            ErrorKind::kInfeasibleDistortion);
  const SourceModel five = testing_models::FiveUserModel();
  EXPECT_NEAR(FOfD(five, S({0, 1, 2, 3, 4}), 0.1), FOfDFromTrace(tr, 0.1),
              1e-15);
}

TEST(MutualInfoTest, Values) {
  EXPECT_NEAR(MutualInfoFromTrace(2.0, 3.5), 1.5, 1e-15);
  EXPECT_NEAR(MutualInfoFromTrace(1.0, 1.0), 0.5, 1e-15);
  EXPECT_NEAR(MutualInfoXYB(SourceModel{1.0, {1e12}}, S({0})), 0.0, 1e-11);
  EXPECT_EQ(KindOf([] { MutualInfoXYB(SourceModel{1.0, {1.0}}, UserSubset()); }),
            ErrorKind::kInvalidParameter);
}

TEST(NormalizeTest, ScalarAlreadyNormalized) {
  const double sx2 = 2.5;
  const NormalizedObservation n = Normalize({{sx2}, {{sx2 + 1.0}}}, sx2);
  ASSERT_EQ(n.gain.size(), 1u);
  EXPECT_NEAR(n.gain[0], 1.0, 1e-14);
  EXPECT_NEAR(n.whitening[0][0], 1.0, 1e-14);
  EXPECT_LT(n.residual_identity_error, 1e-14);
}

TEST(NormalizeTest, TwoDimensionalWhitening) {
  const double sx2 = 1.3;
  // Sigma_Y = sx2 * 1 1^T + I.
  const RawGaussianObservation raw{{sx2, sx2},
                                   {{sx2 + 1.0, sx2}, {sx2, sx2 + 1.0}}};
  const NormalizedObservation n = Normalize(raw, sx2);
  EXPECT_NEAR(n.gain[0], 1.0, 1e-14);
  EXPECT_NEAR(n.gain[1], 1.0, 1e-14);
  EXPECT_LT(n.residual_identity_error, 1e-14);
  // Rebuild Sigma_Y from (h, I) through the inverse whitening: here W = I.
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      EXPECT_NEAR(n.whitening[i][j], i == j ? 1.0 : 0.0, 1e-14);
      EXPECT_NEAR(n.gain[i] * n.gain[j] * sx2 + (i == j ? 1.0 : 0.0),
                  raw.obs_cov[i][j], 1e-14);
    }
  }
}

TEST(NormalizeTest, CorrelatedNoiseIsWhitened) {
  const double sx2 = 0.9;
  const RawGaussianObservation raw{
      {0.5 * sx2, 2.0 * sx2, -sx2},
      {{0.25 * sx2 + 1.0, sx2 + 0.3, -0.5 * sx2},
       {sx2 + 0.3, 4.0 * sx2 + 2.0, -2.0 * sx2 - 0.2},
       {-0.5 * sx2, -2.0 * sx2 - 0.2, sx2 + 0.7}}};
  const NormalizedObservation n = Normalize(raw, sx2);
  EXPECT_LT(n.residual_identity_error, 1e-12);
  EXPECT_THROW(SourceModelFromRaw(raw, sx2), Error);
}

TEST(NormalizeTest, SingularResidualRejected) {
  const double sx2 = 2.0;
  const RawGaussianObservation raw{{sx2, sx2}, {{sx2, sx2}, {sx2, sx2}}};
  EXPECT_EQ(KindOf([&] { Normalize(raw, sx2); }), ErrorKind::kSingularModel);
  EXPECT_EQ(KindOf([] { Normalize({{1.0}, {{1.0, 2.0}}}, 1.0); }),
            ErrorKind::kValidation);
  EXPECT_EQ(
      KindOf([] { Normalize({{1.0, 0.0}, {{2.0, 0.5}, {0.1, 2.0}}}, 1.0); }),
      ErrorKind::kValidation);
}

TEST(NormalizeTest, DiagonalRawMapsToSourceModel) {
  const double sx2 = 2.0;
  // Y_1 = 2 X + N(0, 3), Y_2 = X + N(0, 0.5).
  const RawGaussianObservation raw{{2.0 * sx2, sx2},
                                   {{4.0 * sx2 + 3.0, 2.0 * sx2},
                                    {2.0 * sx2, sx2 + 0.5}}};
  const SourceModel m = SourceModelFromRaw(raw, sx2);
  ASSERT_EQ(m.num_users(), 2);
  EXPECT_NEAR(m.noise_vars[0], 0.75, 1e-14);
  EXPECT_NEAR(m.noise_vars[1], 0.5, 1e-14);
}

}  // namespace
}  // namespace ssc
