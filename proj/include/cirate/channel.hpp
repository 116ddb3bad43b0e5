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

#ifndef CIRATE_CHANNEL_HPP
#define CIRATE_CHANNEL_HPP

#include <vector>

#include "cirate/linalg.hpp"
#include "cirate/random.hpp"

namespace cirate {

inline constexpr double kDefaultPathLossExponent = 2.7;

struct Geometry {
  std::vector<double> distances;  // meters, one per user
  double path_loss_exponent = kDefaultPathLossExponent;

  void validate() const;
  // varpi_k = d_k^-m
  std::vector<double> path_gains() const;
};

// H = D^{1/2} H1, D = diag(path_gain).
struct ChannelRealization {
  ComplexMatrix h;
  ComplexMatrix h1;
  std::vector<double> path_gain;
};

double path_loss(double distance, double exponent);

ChannelRealization sample_channel(const Geometry& geometry, unsigned n_antennas, RandomStream& stream);

// Same draw, but from precomputed path gains (the Monte Carlo hot loop).
ChannelRealization sample_channel_gains(const std::vector<double>& path_gains, unsigned n_antennas,
                                        RandomStream& stream);

// K distances uniform over the annulus area r_min <= r <= r_max. r_min == r_max
// is allowed and pins every user to that radius.
Geometry place_users(unsigned n_users, double r_min, double r_max, RandomStream& stream,
                     double path_loss_exponent = kDefaultPathLossExponent);

// CN(0, sigma2); sigma2 must be positive.
cplx sample_noise(double sigma2, RandomStream& stream);

}  // namespace cirate

#endif
