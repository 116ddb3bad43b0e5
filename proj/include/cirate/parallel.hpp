// SPDX-License-Identifier: Apache-2.0
//
// cirate: finite-alphabet rate analysis for precoded MU-MIMO downlinks
// Copyright (C) 2026 The cirate authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef CIRATE_PARALLEL_HPP
#define CIRATE_PARALLEL_HPP

#include <cstddef>
#include <functional>
#include <span>

namespace cirate {

inline constexpr const char* kThreadsEnvVar = "CIRATE_THREADS";

// Worker count: `requested` if nonzero, else CIRATE_THREADS, else one per core.
unsigned resolve_threads(unsigned requested = 0);

// Runs body(i) for i in [0, n) on up to `threads` workers. Work items are
// handed out by an atomic counter; callers write results into slot i, so the
// output never depends on scheduling. The first exception is rethrown.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

// Pairwise sum over a fixed binary tree. The tree shape depends only on the
// length, which is what makes results bitwise independent of worker count.
double tree_sum(std::span<const double> v);

struct SampleStats {
  double mean = 0.0;
  double ci95 = 0.0;  // 1.96 * sample sd / sqrt(n)
};
SampleStats sample_stats(std::span<const double> v);

}  // namespace cirate

#endif
