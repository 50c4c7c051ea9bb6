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

// Models shared by the test suites.

#ifndef SSC_TESTS_REFERENCE_MODELS_H_
#define SSC_TESTS_REFERENCE_MODELS_H_

#include <vector>

#include "ssc/discrete.h"
#include "ssc/gaussian_model.h"

namespace ssc::testing_models {

// Five users with noise variances 1, 0.8, 0.9, 0.7, 0.6 and sigma_x2 = 2.
inline SourceModel FiveUserModel() {
  return SourceModel{2.0, {1.0, 0.8, 0.9, 0.7, 0.6}};
}
inline constexpr double kFiveUserDistortion = 0.1;

// X ~ Bern(1/2), Y_l = X xor Bern(qy) independently, V = X xor Bern(qv),
// U constant, Hamming distortion.
inline DiscreteSourceSpec BinarySymmetricSpec(int num_users, double qy,
                                              double qv) {
  DiscreteSourceSpec s;
  s.x_card = 2;
  s.y_cards.assign(static_cast<std::size_t>(num_users), 2);
  s.v_card = 2;
  s.u_card = 1;
  s.xhat_card = 2;
  const int cells = 1 << num_users;
  s.p_xy.assign(static_cast<std::size_t>(2 * cells), 0.0);
  for (int x = 0; x < 2; ++x) {
    for (int m = 0; m < cells; ++m) {
      double p = 0.5;
      for (int l = 0; l < num_users; ++l) {
        const int y = (m >> (num_users - 1 - l)) & 1;
        p *= y == x ? 1.0 - qy : qy;
      }
      s.p_xy[x * cells + m] = p;
    }
  }
  s.p_v_given_x = {1.0 - qv, qv, qv, 1.0 - qv};
  s.p_u_given_v = {1.0, 1.0};
  s.distortion = {0.0, 1.0, 1.0, 0.0};
  return s;
}

}  // namespace ssc::testing_models

#endif  // SSC_TESTS_REFERENCE_MODELS_H_
