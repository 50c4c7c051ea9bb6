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

#include <vector>

#include <benchmark/benchmark.h>

#include "ssc/coding_sim.h"
#include "ssc/discrete.h"
#include "ssc/quantize.h"

namespace {

// X ~ Bern(1/2), Y_l and V are X through binary symmetric channels.
ssc::DiscreteSourceSpec BinarySpec(int num_users, double q) {
  ssc::DiscreteSourceSpec s;
  s.y_cards.assign(static_cast<std::size_t>(num_users), 2);
  const int cells = 1 << num_users;
  for (int x = 0; x < 2; ++x) {
    for (int m = 0; m < cells; ++m) {
      double p = 0.5;
      for (int l = 0; l < num_users; ++l) {
        p *= ((m >> l) & 1) == x ? 1.0 - q : q;
      }
      s.p_xy.push_back(p);
    }
  }
  s.p_v_given_x = {1.0 - q, q, q, 1.0 - q};
  s.p_u_given_v = {1.0, 1.0};
  s.distortion = {0.0, 1.0, 1.0, 0.0};
  return s;
}

constexpr ssc::Epsilons kEps{0.4, 0.8, 0.9};

void BM_Encode(benchmark::State& state) {
  const ssc::DiscreteSourceSpec spec = BinarySpec(3, 0.2);
  const ssc::BinningScheme scheme(
      spec, ssc::BuildCodebooks(spec, 12, {0.0, 0.0, 0.55, 0.0}, kEps, 1));
  const ssc::SourceBlock blk = ssc::DrawSourceBlock(spec, 12, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(scheme.Encode(blk.x));
  }
}
BENCHMARK(BM_Encode);

void BM_Simulate(benchmark::State& state) {
  const ssc::DiscreteSourceSpec spec = BinarySpec(3, 0.2);
  const ssc::AccessStructure a = ssc::AccessStructure::Threshold(3, 2);
  const ssc::BinningScheme scheme(
      spec, ssc::BuildCodebooks(spec, 12, {0.0, 0.0, 0.55, 0.0}, kEps, 1));
  scheme.EncoderMap();
  for (auto _ : state) {
    benchmark::DoNotOptimize(ssc::Simulate(scheme, a, 100, 7));
  }
}
BENCHMARK(BM_Simulate)->Unit(benchmark::kMillisecond);

void BM_Quantize(benchmark::State& state) {
  const int levels = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ssc::QuantizeChannels(1.0, {{1.0, 1.0}, {0.5, 2.0}}, levels));
  }
}
BENCHMARK(BM_Quantize)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_MutualInformation(benchmark::State& state) {
  const ssc::JointPmf p = ssc::BuildFullJoint(BinarySpec(6, 0.1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(p.MutualInformation({0}, {1, 2, 3}, {7}));
  }
}
BENCHMARK(BM_MutualInformation);

}  // namespace
