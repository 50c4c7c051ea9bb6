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

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "ssc/access_structure.h"
#include "ssc/gaussian_model.h"
#include "ssc/oracle.h"
#include "ssc/region.h"
#include "ssc/threshold.h"

namespace {

ssc::SourceModel Model(int num_users) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.2, 3.0);
  ssc::SourceModel m{2.0, {}};
  for (int i = 0; i < num_users; ++i) m.noise_vars.push_back(u(rng));
  return m;
}

void BM_ThresholdRegion(benchmark::State& state) {
  const int l = static_cast<int>(state.range(0));
  const ssc::SourceModel m = Model(l);
  const ssc::AccessStructure a = ssc::AccessStructure::Threshold(l, l / 2 + 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ssc::ComputeRegion(m, a, 0.05));
  }
}
BENCHMARK(BM_ThresholdRegion)->Arg(5)->Arg(10)->Arg(16);

void BM_GeneralRegion(benchmark::State& state) {
  const int l = static_cast<int>(state.range(0));
  const ssc::SourceModel m = Model(l);
  std::vector<ssc::UserSubset> sets;
  for (int i = 0; i + 1 < l; i += 2) {
    sets.push_back(ssc::UserSubset::FromMembers({i, i + 1}));
  }
  const ssc::AccessStructure a = ssc::AccessStructure::FromMinimalSets(l, sets);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ssc::ComputeRegion(m, a, 0.05));
  }
}
BENCHMARK(BM_GeneralRegion)->Arg(6)->Arg(12)->Arg(16);

void BM_ThresholdReport(benchmark::State& state) {
  const int l = static_cast<int>(state.range(0));
  const ssc::SourceModel m = Model(l);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ssc::BuildThresholdReport(m, 0.05, 1, l));
  }
}
BENCHMARK(BM_ThresholdReport)->Arg(6)->Arg(32);

void BM_Sweep(benchmark::State& state) {
  const std::vector<double> grid = ssc::LinearGrid(0.0, 9.5, 1000);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ssc::SweepTradeoff(2.0, 0.1, 3.5, grid));
  }
}
BENCHMARK(BM_Sweep);

void BM_VectorConditioning(benchmark::State& state) {
  const ssc::SourceModel m = Model(8);
  const ssc::UserSubset s = ssc::UserSubset::Full(8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ssc::VectorConditioningOracle(m, s));
  }
}
BENCHMARK(BM_VectorConditioning);

}  // namespace
