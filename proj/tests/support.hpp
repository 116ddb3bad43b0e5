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

// Test-side helpers. Random inputs come from std::mt19937_64 so that test
// data never depends on the library's own generator.

#ifndef CIRATE_TESTS_SUPPORT_HPP
#define CIRATE_TESTS_SUPPORT_HPP

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "cirate/linalg.hpp"

namespace testing_support {

inline cirate::ComplexMatrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& gen) {
  std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
  std::vector<cirate::cplx> e(r * c);
  for (auto& x : e) x = {nd(gen), nd(gen)};
  return cirate::ComplexMatrix(r, c, std::move(e));
}

inline double max_abs_diff(const cirate::ComplexMatrix& a, const cirate::ComplexMatrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

}  // namespace testing_support

#endif
