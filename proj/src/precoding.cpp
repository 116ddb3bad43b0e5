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

#include "cirate/precoding.hpp"

#include <cmath>
#include <stdexcept>

#include "cirate/specfun.hpp"

namespace cirate {

namespace {

void require_gains(std::span<const double> gains, std::size_t k, const char* who) {
  if (gains.size() != k)
    throw std::invalid_argument(std::string(who) + ": long-term beta needs one path gain per user");
}

}  // namespace

CiParameters CiParameters::uniform(unsigned n_users, BetaMode mode) {
  return {std::vector<cplx>(n_users, cplx(1.0 / n_users, 0.0)), mode};
}

void CiParameters::validate(std::size_t n_users) const {
  if (u.size() != n_users) throw std::invalid_argument("CI: u must have one entry per user");
  cplx sum = 0.0;
  for (const auto& w : u) sum += w;
  if (std::abs(sum - cplx(1.0, 0.0)) > 1e-12) throw std::invalid_argument("CI: entries of u must sum to 1");
}

PrecoderOutput precode_none(std::span<const cplx> s, double p, unsigned n_antennas) {
  if (s.size() != n_antennas)
    throw std::invalid_argument("precode_none: un-precoded transmission requires N == K");
  if (p < 0.0) throw std::invalid_argument("precode_none: negative power");
  const double a = std::sqrt(p / n_antennas);
  PrecoderOutput out{std::vector<cplx>(s.begin(), s.end()), a, Scheme::none};
  for (auto& v : out.x) v *= a;
  return out;
}

double zf_beta_longterm(double p, std::span<const cplx> s, std::span<const double> path_gains,
                        unsigned n_antennas, unsigned n_users) {
  if (n_antennas < n_users) throw std::invalid_argument("zf_beta_longterm: need N >= K");
  require_gains(path_gains, s.size(), "zf_beta_longterm");
  double q = 0.0;  // s^H Sigma^-1 s
  for (std::size_t k = 0; k < s.size(); ++k) q += std::norm(s[k]) / path_gains[k];
  const unsigned d = n_antennas - n_users;
  const double log_c = ln_gamma(d + 1.5) - 1.5 * std::log(static_cast<double>(n_users)) - ln_factorial(d);
  return std::sqrt(p / q) * std::exp(log_c);
}

PrecoderOutput precode_zf(const ComplexMatrix& h, std::span<const cplx> s, double p, BetaMode mode,
                          std::span<const double> path_gains) {
  return precode_zf(h, hermitian_inverse(gram(h)), s, p, mode, path_gains);
}

PrecoderOutput precode_zf(const ComplexMatrix& h, const ComplexMatrix& ginv, std::span<const cplx> s,
                          double p, BetaMode mode, std::span<const double> path_gains) {
  if (s.size() != h.rows()) throw std::invalid_argument("precode_zf: symbol length must equal K");
  if (p < 0.0) throw std::invalid_argument("precode_zf: negative power");
  const auto g_s = ginv.apply(s);
  double beta;
  if (mode == BetaMode::instantaneous) {
    cplx q = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) q += std::conj(s[k]) * g_s[k];
    beta = std::sqrt(p / q.real());
  } else {
    beta = zf_beta_longterm(p, s, path_gains, static_cast<unsigned>(h.cols()), static_cast<unsigned>(h.rows()));
  }
  std::vector<cplx> x = h.adjoint().apply(g_s);
  for (auto& v : x) v *= beta;
  return {std::move(x), beta, Scheme::zf};
}

double ci_beta_longterm(double p, std::span<const cplx> s, std::span<const cplx> u,
                        std::span<const double> path_gains, unsigned n_antennas) {
  require_gains(path_gains, s.size(), "ci_beta_longterm");
  // u^H diag(s^H)^-1 N Sigma diag(s)^-1 u
  double q = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) q += n_antennas * path_gains[k] * std::norm(u[k]) / std::norm(s[k]);
  return std::sqrt(p / q);
}

PrecoderOutput precode_ci(const ComplexMatrix& h, std::span<const cplx> s, double p,
                          const CiParameters& params, std::span<const double> path_gains) {
  return precode_ci(h, hermitian_inverse(gram(h)), s, p, params, path_gains);
}

PrecoderOutput precode_ci(const ComplexMatrix& h, const ComplexMatrix& ginv, std::span<const cplx> s,
                          double p, const CiParameters& params, std::span<const double> path_gains) {
  const std::size_t k_users = h.rows();
  if (p < 0.0) throw std::invalid_argument("precode_ci: negative power");
  if (s.size() != k_users) throw std::invalid_argument("precode_ci: symbol length must equal K");
  params.validate(k_users);
  for (const auto& v : s)
    if (std::abs(std::abs(v) - 1.0) > 1e-12) throw std::invalid_argument("precode_ci: symbols must be unit modulus");

  ComplexMatrix v(k_users, k_users);
  for (std::size_t i = 0; i < k_users; ++i)
    for (std::size_t j = 0; j < k_users; ++j) v(i, j) = std::conj(s[i]) * ginv(i, j) * s[j];
  const ComplexMatrix vinv = hermitian_inverse(v);
  const auto t = vinv.apply(params.u);

  double beta;
  if (params.beta_mode == BetaMode::instantaneous) {
    cplx q = 0.0;
    for (std::size_t i = 0; i < k_users; ++i) q += std::conj(params.u[i]) * t[i];
    beta = std::sqrt(p / q.real());
  } else {
    beta = ci_beta_longterm(p, s, params.u, path_gains, static_cast<unsigned>(h.cols()));
  }

  std::vector<cplx> ds(k_users);
  for (std::size_t i = 0; i < k_users; ++i) ds[i] = t[i] * s[i];
  std::vector<cplx> x = h.adjoint().apply(ginv.apply(ds));
  for (auto& e : x) e *= beta;
  return {std::move(x), beta, Scheme::ci};
}

cplx receive(const ComplexMatrix& h, std::span<const cplx> x, std::size_t k, cplx noise) {
  if (x.size() != h.cols() || k >= h.rows()) throw std::invalid_argument("receive: dimension mismatch");
  cplx acc = 0.0;
  for (std::size_t n = 0; n < x.size(); ++n) acc += h(k, n) * x[n];
  return acc + noise;
}

std::vector<cplx> receive_all(const ComplexMatrix& h, std::span<const cplx> x) { return h.apply(x); }

}  // namespace cirate
