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

#ifndef CIRATE_CONSTELLATION_HPP
#define CIRATE_CONSTELLATION_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace cirate {

using cplx = std::complex<double>;

inline constexpr std::size_t kJointSpaceCap = 4096;

class PskConstellation {
 public:
  explicit PskConstellation(unsigned order);

  unsigned order() const { return order_; }
  std::span<const cplx> points() const { return points_; }
  const cplx& operator[](std::size_t i) const { return points_[i]; }

 private:
  unsigned order_;
  std::vector<cplx> points_;
};

// exp(j 2 pi m / M), m = 0..M-1, for M in {2, 4, 8, 16}.
PskConstellation psk_symbols(unsigned order);

// All M^K joint symbol vectors in lexicographic order, user 0 most significant.
// Symbol indices are kept next to the values so callers can compare
// coordinates exactly instead of through floating point.
class JointSymbolSpace {
 public:
  JointSymbolSpace(unsigned order, unsigned users);

  unsigned order() const { return order_; }
  unsigned users() const { return users_; }
  std::size_t size() const { return count_; }

  std::span<const cplx> vector(std::size_t i) const {
    return std::span<const cplx>(values_).subspan(i * users_, users_);
  }
  std::span<const std::uint8_t> indices(std::size_t i) const {
    return std::span<const std::uint8_t>(digits_).subspan(i * users_, users_);
  }
  std::uint8_t symbol_index(std::size_t i, unsigned k) const { return digits_[i * users_ + k]; }

 private:
  unsigned order_;
  unsigned users_;
  std::size_t count_;
  std::vector<cplx> values_;
  std::vector<std::uint8_t> digits_;
};

// Throws std::length_error when M^K exceeds the enumeration cap.
JointSymbolSpace enumerate_joint(unsigned order, unsigned users);

// Joint space over every user except k (M^(K-1) vectors; one empty vector when K = 1).
JointSymbolSpace interference_space(const JointSymbolSpace& space, unsigned k);

// ||s_m - s_i||^2. Throws std::invalid_argument for i == m, where the
// difference is zero and later divisions would blow up.
double diff_eigenvalue(std::size_t m, std::size_t i, const JointSymbolSpace& space);

}  // namespace cirate

#endif
