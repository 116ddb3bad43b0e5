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

#include "cirate/constellation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cirate {

namespace {

// Exact values on the axes keep BPSK and QPSK free of 1e-17 residue.
cplx unit_point(unsigned m, unsigned order) {
  const unsigned q = 4 * m;
  if (q % order == 0) {
    switch ((q / order) % 4) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  const double phi = 2.0 * std::numbers::pi * m / order;
  return {std::cos(phi), std::sin(phi)};
}

}  // namespace

PskConstellation::PskConstellation(unsigned order) : order_(order) {
  if (order != 2 && order != 4 && order != 8 && order != 16)
    throw std::invalid_argument("psk_symbols: unsupported modulation order " +
                                std::to_string(order) + " (use 2, 4, 8 or 16)");
  points_.reserve(order);
  for (unsigned m = 0; m < order; ++m) points_.push_back(unit_point(m, order));
}

PskConstellation psk_symbols(unsigned order) { return PskConstellation(order); }

JointSymbolSpace::JointSymbolSpace(unsigned order, unsigned users)
    : order_(order), users_(users), count_(1) {
  const PskConstellation psk(order);
  for (unsigned k = 0; k < users; ++k) {
    count_ *= order;
    if (count_ > kJointSpaceCap)
      throw std::length_error("joint symbol space M^K exceeds " + std::to_string(kJointSpaceCap) +
                              " vectors; reduce M or K");
  }
  values_.resize(count_ * users_);
  digits_.resize(count_ * users_);
  for (std::size_t i = 0; i < count_; ++i) {
    std::size_t rest = i;
    for (unsigned k = users_; k-- > 0;) {
      const auto d = static_cast<std::uint8_t>(rest % order);
      rest /= order;
      digits_[i * users_ + k] = d;
      values_[i * users_ + k] = psk[d];
    }
  }
}

JointSymbolSpace enumerate_joint(unsigned order, unsigned users) {
  return JointSymbolSpace(order, users);
}

JointSymbolSpace interference_space(const JointSymbolSpace& space, unsigned k) {
  if (space.users() == 0 || k >= space.users())
    throw std::out_of_range("interference_space: user index out of range");
  return JointSymbolSpace(space.order(), space.users() - 1);
}

double diff_eigenvalue(std::size_t m, std::size_t i, const JointSymbolSpace& space) {
  if (m >= space.size() || i >= space.size())
    throw std::out_of_range("diff_eigenvalue: index out of range");
  if (m == i) throw std::invalid_argument("diff_eigenvalue: i == m gives a zero difference");
  const auto sm = space.vector(m);
  const auto si = space.vector(i);
  double lambda = 0.0;
  for (std::size_t k = 0; k < sm.size(); ++k) lambda += std::norm(sm[k] - si[k]);
  return lambda;
}

}  // namespace cirate
