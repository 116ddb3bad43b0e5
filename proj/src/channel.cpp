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

#include "cirate/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace cirate {

void Geometry::validate() const {
  if (distances.empty()) throw std::invalid_argument("geometry: no users");
  for (double d : distances)
    if (!(d > 0.0) || !std::isfinite(d)) throw std::invalid_argument("geometry: distances must be > 0");
  if (!(path_loss_exponent > 0.0)) throw std::invalid_argument("geometry: path loss exponent must be > 0");
}

std::vector<double> Geometry::path_gains() const {
  validate();
  std::vector<double> g;
  g.reserve(distances.size());
  for (double d : distances) g.push_back(path_loss(d, path_loss_exponent));
  return g;
}

double path_loss(double distance, double exponent) {
  if (!(distance > 0.0)) throw std::invalid_argument("path_loss: distance must be > 0");
  if (!(exponent > 0.0)) throw std::invalid_argument("path_loss: exponent must be > 0");
  return std::pow(distance, -exponent);
}

ChannelRealization sample_channel_gains(const std::vector<double>& path_gains, unsigned n_antennas,
                                        RandomStream& stream) {
  const std::size_t k = path_gains.size();
  if (k == 0) throw std::invalid_argument("sample_channel: need at least one user");
  if (n_antennas < k) throw std::invalid_argument("sample_channel: need N >= K");
  ChannelRealization out{ComplexMatrix(k, n_antennas), ComplexMatrix(k, n_antennas), path_gains};
  for (std::size_t r = 0; r < k; ++r) {
    const double amp = std::sqrt(path_gains[r]);
    for (unsigned c = 0; c < n_antennas; ++c) {
      const cplx g = stream.complex_normal(1.0);
      out.h1(r, c) = g;
      out.h(r, c) = amp * g;
    }
  }
  return out;
}

ChannelRealization sample_channel(const Geometry& geometry, unsigned n_antennas, RandomStream& stream) {
  return sample_channel_gains(geometry.path_gains(), n_antennas, stream);
}

Geometry place_users(unsigned n_users, double r_min, double r_max, RandomStream& stream,
                     double path_loss_exponent) {
  if (n_users == 0) throw std::invalid_argument("place_users: need at least one user");
  if (!(r_min > 0.0) || !(r_max >= r_min))
    throw std::invalid_argument("place_users: need 0 < r_min <= r_max");
  Geometry g;
  g.path_loss_exponent = path_loss_exponent;
  const double a = r_min * r_min;
  const double span = r_max * r_max - a;
  for (unsigned k = 0; k < n_users; ++k) g.distances.push_back(std::sqrt(a + span * stream.uniform()));
  if (r_min == r_max)
    for (double& d : g.distances) d = r_min;
  return g;
}

cplx sample_noise(double sigma2, RandomStream& stream) {
  if (!(sigma2 > 0.0)) throw std::invalid_argument("sample_noise: sigma2 must be > 0");
  return stream.complex_normal(sigma2);
}

}  // namespace cirate
