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

#ifndef SSC_PARALLEL_H_
#define SSC_PARALLEL_H_

#include <cstddef>
#include <cstdint>
#include <functional>

namespace ssc {

// Worker cap from SSC_THREADS, else the hardware concurrency (at least 1).
int WorkerCount();

// Runs fn(i) for i in [0, n). Work is split into contiguous blocks, so
// results written by index are independent of the thread count. The first
// exception thrown by any worker is rethrown after all workers join.
void ParallelFor(std::size_t n, const std::function<void(std::size_t)>& fn);

// splitmix64 finalizer; derives independent child seeds from a master seed.
std::uint64_t DeriveSeed(std::uint64_t master, std::uint64_t stream);

}  // namespace ssc

#endif  // SSC_PARALLEL_H_
