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

#ifndef CIRATE_SYSTEM_HPP
#define CIRATE_SYSTEM_HPP

#include <complex>
#include <string>
#include <string_view>
#include <vector>

namespace cirate {

using cplx = std::complex<double>;

enum class Scheme { none, zf, ci };
enum class BetaMode { long_term, instantaneous };

// normalized: per-user rates live on [0, log2 M]. paper_verbatim: the
// expressions as printed, with their N log2 M leading constant.
enum class RateMode { normalized, paper_verbatim };

std::string to_string(Scheme s);
std::string to_string(BetaMode b);
std::string to_string(RateMode r);
Scheme parse_scheme(std::string_view name);
BetaMode parse_beta_mode(std::string_view name);
RateMode parse_rate_mode(std::string_view name);

// One operating point of the downlink. `power` is the total transmit power p,
// `path_gains` holds varpi_k = d_k^-m. An empty `u` means the uniform CI
// weight vector (1/K, ..., 1/K).
struct SystemConfig {
  unsigned n_antennas = 2;
  unsigned n_users = 2;
  unsigned modulation_order = 2;
  double power = 1.0;
  double sigma2 = 1.0;
  std::vector<double> path_gains;
  BetaMode beta_mode = BetaMode::long_term;
  RateMode mode = RateMode::normalized;
  std::vector<cplx> u;

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
  // Same checks plus the scheme-specific ones (un-precoded needs N = K).
  void validate_for(Scheme scheme) const;

  double log2_m() const;
  std::vector<cplx> ci_weights() const;
};

// Convenience: N x K system at SNR p/sigma2 = snr_linear with unit path gains.
SystemConfig make_config(unsigned n, unsigned k, unsigned m, double snr_linear, double sigma2 = 1.0);

double db_to_linear(double db);
double linear_to_db(double x);

}  // namespace cirate

#endif
