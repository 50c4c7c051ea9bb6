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

#include "ssc/parallel.h"

#include <atomic>
#include <cstdlib>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <gtest/gtest.h>

namespace ssc {
namespace {

class ThreadsEnv {
 public:
  explicit ThreadsEnv(const char* value) {
    if (const char* old = std::getenv("SSC_THREADS")) saved_ = old;
    had_ = std::getenv("SSC_THREADS") != nullptr;
    setenv("SSC_THREADS", value, 1);
  }
  ~ThreadsEnv() {
    if (had_) {
      setenv("SSC_THREADS", saved_.c_str(), 1);
    } else {
      unsetenv("SSC_THREADS");
    }
  }

 private:
  bool had_ = false;
  std::string saved_;
};

TEST(ParallelTest, WorkerCountFromEnvironment) {
  {
    ThreadsEnv env("3");
    EXPECT_EQ(WorkerCount(), 3);
  }
  {
    ThreadsEnv env("zero");
    EXPECT_GE(WorkerCount(), 1);
  }
  {
    ThreadsEnv env("0");
    EXPECT_GE(WorkerCount(), 1);
  }
}

TEST(ParallelTest, VisitsEveryIndexOnce) {
  for (const char* threads : {"1", "4", "7"}) {
    ThreadsEnv env(threads);
    std::vector<std::atomic<int>> hits(1001);
    ParallelFor(hits.size(), [&](std::size_t i) { ++hits[i]; });
    for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  }
  ParallelFor(0, [](std::size_t) { FAIL(); });
}

TEST(ParallelTest, RethrowsWorkerError) {
  ThreadsEnv env("4");
  EXPECT_THROW(ParallelFor(100,
                           [](std::size_t i) {
                             if (i == 57) throw std::runtime_error("boom");
                           }),
               std::runtime_error);
}

TEST(ParallelTest, DerivedSeedsAreDistinctAndStable) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t s = 0; s < 10000; ++s) seen.insert(DeriveSeed(7, s));
  EXPECT_EQ(seen.size(), 10000u);
  EXPECT_EQ(DeriveSeed(7, 3), DeriveSeed(7, 3));
  EXPECT_NE(DeriveSeed(7, 3), DeriveSeed(8, 3));
  // splitmix64 of 0x9E3779B97F4A7C15 (the first output for state 0).
  EXPECT_EQ(DeriveSeed(0, 0), 0xE220A8397B1DCDAFULL);
}

}  // namespace
}  // namespace ssc
