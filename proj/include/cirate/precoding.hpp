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

#ifndef CIRATE_PRECODING_HPP
#define CIRATE_PRECODING_HPP

#include <span>
#include <vector>

#include "cirate/linalg.hpp"
#include "cirate/system.hpp"

namespace cirate {

struct PrecoderOutput {
  std::vector<cplx> x;  // transmit vector, length N
  double beta = 0.0;
  Scheme scheme = Scheme::none;
};

struct CiParameters {
  std::vector<cplx> u;
  BetaMode beta_mode = BetaMode::long_term;

  static CiParameters uniform(unsigned n_users, BetaMode mode = BetaMode::long_term);
  void validate(std::size_t n_users) const;
};

// x = sqrt(p/N) s. Only defined for N == K.
PrecoderOutput precode_none(std::span<const cplx> s, double p, unsigned n_antennas);

// x = beta H^H (H H^H)^-1 s. Instantaneous beta makes ||x||^2 = p for this s;
// long-term beta is the Gamma-mean constant and needs the path gains.
PrecoderOutput precode_zf(const ComplexMatrix& h, std::span<const cplx> s, double p, BetaMode mode,
                          std::span<const double> path_gains = {});

// sqrt(p / s^H Sigma^-1 s) Gamma(N - K + 3/2) / (K sqrt(K) (N - K)!)
double zf_beta_longterm(double p, std::span<const cplx> s, std::span<const double> path_gains,
                        unsigned n_antennas, unsigned n_users);

// Closed-form symbol-level CI precoder
//   x = beta H^H (H H^H)^-1 diag(V^-1 u) s,   V = diag(s^H) (H H^H)^-1 diag(s),
// so that H x = beta diag(V^-1 u) s. Long-term beta = sqrt(p / u^H E[V^-1] u)
// with E[V^-1] = N diag(s^H)^-1 Sigma diag(s)^-1; instantaneous beta uses V^-1.
// The printed 1/K in front of the precoder is left out: with it the transmit
// power would be p/K^2 rather than p.
PrecoderOutput precode_ci(const ComplexMatrix& h, std::span<const cplx> s, double p,
                          const CiParameters& params, std::span<const double> path_gains = {});

// Variants for callers that already hold (H H^H)^-1 for this channel draw,
// e.g. the Monte Carlo loop over all M^K joint symbol vectors.
PrecoderOutput precode_zf(const ComplexMatrix& h, const ComplexMatrix& gram_inverse,
                          std::span<const cplx> s, double p, BetaMode mode,
                          std::span<const double> path_gains);
PrecoderOutput precode_ci(const ComplexMatrix& h, const ComplexMatrix& gram_inverse,
                          std::span<const cplx> s, double p, const CiParameters& params,
                          std::span<const double> path_gains);

double ci_beta_longterm(double p, std::span<const cplx> s, std::span<const cplx> u,
                        std::span<const double> path_gains, unsigned n_antennas);

// y_k = h_k x + n_k
cplx receive(const ComplexMatrix& h, std::span<const cplx> x, std::size_t k, cplx noise);

// Noise-free received vector H x for every user.
std::vector<cplx> receive_all(const ComplexMatrix& h, std::span<const cplx> x);

}  // namespace cirate

#endif
