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

// Equiprobable scalar quantization of a Gaussian source and of scalar
// Gaussian channel outputs, producing a finite-alphabet source spec.

#ifndef SSC_QUANTIZE_H_
#define SSC_QUANTIZE_H_

#include <vector>

#include "ssc/access_structure.h"
#include "ssc/discrete.h"
#include "ssc/gaussian_model.h"

namespace ssc {

struct QuantizedGaussian {
  // V = X, U trivial, x_hat over the X cells with squared-error distortion
  // between representative points.
  DiscreteSourceSpec spec;
  std::vector<double> x_points;               // conditional cell means
  std::vector<std::vector<double>> y_points;  // one list per channel
};

// Y_k = gain_k X + N_k with independent N_k. Each marginal is cut into
// `levels` cells of equal probability. Throws kInvalidParameter for
// levels < 2 or too many cells, and kNumeric if the integration produces
// a non-finite value.
QuantizedGaussian QuantizeChannels(double sigma_x2,
                                   const std::vector<ScalarChannel>& channels,
                                   int levels);

// Quantizes the sufficient statistic of each subset. Subsets must be
// nonempty and pairwise disjoint.
QuantizedGaussian QuantizeGaussian(const SourceModel& model, int levels,
                                   const std::vector<UserSubset>& subsets);

// I(X_q; Y_q) in bits between the quantized source and channel k.
double QuantizedMutualInformation(const QuantizedGaussian& q, int channel);

}  // namespace ssc

#endif  // SSC_QUANTIZE_H_
