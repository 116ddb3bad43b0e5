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

#ifndef CIRATE_RATE_BOUND_HPP
#define CIRATE_RATE_BOUND_HPP

#include <cstddef>
#include <vector>

#include "cirate/constellation.hpp"
#include "cirate/system.hpp"

namespace cirate {

// Closed-form Jensen-type upper bounds on the per-user rate. All three use the
// anchor j = m, so every average reduces to a rank-one quadratic form.
//
// Leading constants: the printed bounds start from N log2 M. Normalized mode
// removes the constant that keeps them away from [0, log2 M]:
//   un-precoded  (K - 1) log2 M
//   ZF, CI       (N - K) log2 M
// which makes each bound 0 at p = 0 and log2 M as p grows without limit.

struct BoundReport {
  Scheme scheme = Scheme::none;
  RateMode mode = RateMode::normalized;
  std::vector<double> per_user;
  double sum = 0.0;
};

// 2 sigma2 / (2 sigma2 + mean): E[exp(-Phi / (2 sigma2))] for Phi exponential
// with the given mean.
double exp_kernel_average(double sigma2, double mean);

// Un-precoded bound; requires N = K.
double rate_unprecoded_bound(const SystemConfig& config, unsigned k);

// ZF bound with the long-term beta.
double rate_zf_bound(const SystemConfig& config, unsigned k);

// CI bound with the long-term beta and the CI weight vector of `config`.
double rate_ci_bound(const SystemConfig& config, unsigned k);

double rate_bound(Scheme scheme, const SystemConfig& config, unsigned k);
BoundReport sum_rate_bound(Scheme scheme, const SystemConfig& config);

// c_k = beta varpi_k u_k: the deterministic part of user k's CI amplitude.
cplx ci_gain(const SystemConfig& config, unsigned k);

struct LambdaTerm {
  double value = 1.0;
  bool converged = true;
};

// Lambda = E[exp(-|c|^2 xi X^2 / (2 sigma2))] with X ~ Gamma(N - K + 1, 1/K):
//   Lambda = z^a U(a, 1/2, z),  a = (N - K + 1)/2,  z = K^2 sigma2 / (2 |c|^2 xi).
// xi = 0 or c = 0 gives exactly 1.
LambdaTerm lambda_from_xi(unsigned n_antennas, unsigned n_users, double c_abs2, double sigma2, double xi);

// Lambda for the pair (m, i) of `space`, xi = |[s_m - s_i]_k|^2.
LambdaTerm lambda_term(const SystemConfig& config, unsigned k, std::size_t m, std::size_t i,
                       const JointSymbolSpace& space);

// The expression exactly as printed, kept for audit. It carries an extra
// factor |c|^2 relative to lambda_from_xi (see the README).
double lambda_printed(unsigned n_antennas, unsigned n_users, double c_abs2, double sigma2, double xi);

}  // namespace cirate

#endif
