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

#include "cirate/rate_bound.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cirate/precoding.hpp"
#include "cirate/specfun.hpp"

namespace cirate {

namespace {

const double kLog2e = std::numbers::log2e;

// |p_0 - p_delta|^2 for every digit offset delta.
std::vector<double> chord_table(unsigned order) {
  const PskConstellation psk(order);
  std::vector<double> t(order);
  for (unsigned d = 0; d < order; ++d) t[d] = std::norm(psk[0] - psk[d]);
  return t;
}

unsigned digit_offset(std::uint8_t from, std::uint8_t to, unsigned order) {
  return (static_cast<unsigned>(to) + order - from) % order;
}

// ||s_m - s_i||^2 over all coordinates of a joint space.
double full_distance(const JointSymbolSpace& sp, std::size_t m, std::size_t i, const std::vector<double>& chord) {
  double lam = 0.0;
  for (unsigned j = 0; j < sp.users(); ++j)
    lam += chord[digit_offset(sp.symbol_index(m, j), sp.symbol_index(i, j), sp.order())];
  return lam;
}

// (1/|S|) sum_m log2(1 + sum_{i != m} f(m, i)), summed in enumeration order.
template <typename F>
double mean_log_term(const JointSymbolSpace& sp, F&& f) {
  double acc = 0.0;
  for (std::size_t m = 0; m < sp.size(); ++m) {
    double inner = 1.0;
    for (std::size_t i = 0; i < sp.size(); ++i)
      if (i != m) inner += f(m, i);
    acc += std::log2(inner);
  }
  return acc / static_cast<double>(sp.size());
}

// Same, but f depends only on the digit offset of user k (table lookup).
double mean_log_term_by_offset(const JointSymbolSpace& sp, unsigned k, const std::vector<double>& per_offset) {
  return mean_log_term(sp, [&](std::size_t m, std::size_t i) {
    return per_offset[digit_offset(sp.symbol_index(m, k), sp.symbol_index(i, k), sp.order())];
  });
}

void check_user(const SystemConfig& c, unsigned k) {
  if (k >= c.n_users) throw std::out_of_range("user index out of range");
}

}  // namespace

double exp_kernel_average(double sigma2, double mean) {
  if (!(sigma2 > 0.0) || mean < 0.0) throw std::invalid_argument("exp_kernel_average: need sigma2 > 0, mean >= 0");
  return 2.0 * sigma2 / (2.0 * sigma2 + mean);
}

double rate_unprecoded_bound(const SystemConfig& c, unsigned k) {
  c.validate_for(Scheme::none);
  check_user(c, k);
  const unsigned n = c.n_antennas;
  const double log2m = c.log2_m();
  const double p_n = c.power / n;
  const double gain = c.path_gains[k];
  const auto chord = chord_table(c.modulation_order);
  auto frac = [&](double lambda) { return exp_kernel_average(c.sigma2, p_n * gain * lambda); };

  const JointSymbolSpace joint = enumerate_joint(c.modulation_order, c.n_users);
  const JointSymbolSpace interf = interference_space(joint, k);
  const double t1 = mean_log_term(joint, [&](std::size_t m, std::size_t i) {
    return frac(full_distance(joint, m, i, chord));
  });
  const double t2 = mean_log_term(interf, [&](std::size_t m, std::size_t i) {
    return frac(full_distance(interf, m, i, chord));
  });
  const double verbatim = n * log2m - (-kLog2e + t1) + (-kLog2e + t2);
  if (c.mode == RateMode::paper_verbatim) return verbatim;
  return verbatim - (c.n_users - 1.0) * log2m;
}

double rate_zf_bound(const SystemConfig& c, unsigned k) {
  c.validate_for(Scheme::zf);
  check_user(c, k);
  const JointSymbolSpace joint = enumerate_joint(c.modulation_order, c.n_users);
  const double beta = zf_beta_longterm(c.power, joint.vector(0), c.path_gains, c.n_antennas, c.n_users);
  const auto chord = chord_table(c.modulation_order);
  std::vector<double> f(chord.size());
  for (std::size_t d = 0; d < chord.size(); ++d) f[d] = std::exp(-beta * beta * chord[d] / (2.0 * c.sigma2));
  f[0] = 1.0;
  // With j = m the Upsilon term is -(|beta * 0|^2 + sigma2) log2(e) / sigma2.
  const double upsilon = -(0.0 + c.sigma2) * kLog2e / c.sigma2;
  const double t = mean_log_term_by_offset(joint, k, f);
  const double verbatim = c.n_antennas * c.log2_m() - kLog2e - (upsilon + t);
  if (c.mode == RateMode::paper_verbatim) return verbatim;
  return verbatim - (c.n_antennas - static_cast<double>(c.n_users)) * c.log2_m();
}

cplx ci_gain(const SystemConfig& c, unsigned k) {
  c.validate_for(Scheme::ci);
  check_user(c, k);
  const JointSymbolSpace joint = enumerate_joint(c.modulation_order, c.n_users);
  const auto u = c.ci_weights();
  const double beta = ci_beta_longterm(c.power, joint.vector(0), u, c.path_gains, c.n_antennas);
  return beta * c.path_gains[k] * u[k];
}

LambdaTerm lambda_from_xi(unsigned n_antennas, unsigned n_users, double c_abs2, double sigma2, double xi) {
  if (n_antennas < n_users || n_users == 0) throw std::invalid_argument("lambda: need N >= K >= 1");
  if (!(sigma2 > 0.0) || c_abs2 < 0.0 || xi < 0.0) throw std::invalid_argument("lambda: invalid argument");
  if (xi == 0.0 || c_abs2 == 0.0) return {1.0, true};
  const double a = 0.5 * (n_antennas - n_users + 1.0);
  const double kk = static_cast<double>(n_users);
  const double z = kk * kk * sigma2 / (2.0 * c_abs2 * xi);
  if (!std::isfinite(z)) return {1.0, true};
  const TricomiResult r = scaled_tricomi_half(a, z);
  return {r.value, r.converged};
}

LambdaTerm lambda_term(const SystemConfig& c, unsigned k, std::size_t m, std::size_t i,
                       const JointSymbolSpace& space) {
  if (m == i) throw std::invalid_argument("lambda_term: need i != m");
  const double xi = std::norm(space.vector(m)[k] - space.vector(i)[k]);
  const double c2 = std::norm(ci_gain(c, k));
  // Coordinates taken from the same PSK point differ by exactly zero.
  if (space.symbol_index(m, k) == space.symbol_index(i, k)) return {1.0, true};
  return lambda_from_xi(c.n_antennas, c.n_users, c2, c.sigma2, xi);
}

double lambda_printed(unsigned n, unsigned k, double c_abs2, double sigma2, double xi) {
  if (xi <= 0.0 || c_abs2 <= 0.0) throw std::invalid_argument("lambda_printed: need xi > 0 and c > 0");
  const double d = static_cast<double>(n) - k;
  const double kk = static_cast<double>(k);
  const double z = kk * kk * sigma2 / (2.0 * c_abs2 * xi);
  const double log_pref = 0.5 * (d - 1.0) * std::log(2.0) + (d + 1.0) * std::log(kk) +
                          0.5 * (-2.0 - d) * std::log(xi) - ln_factorial(n - k) +
                          0.5 * (-d - 1.0) * std::log(c_abs2 / sigma2);
  const double c = std::sqrt(c_abs2);
  const double sigma = std::sqrt(sigma2);
  const double first = c_abs2 * std::sqrt(xi) * std::exp(ln_gamma(0.5 * (d + 1.0))) *
                       hyp1f1(0.5 * (d + 1.0), 0.5, z).value;
  const double second = std::sqrt(2.0) * kk * c * sigma * std::exp(ln_gamma(0.5 * (d + 2.0))) *
                        hyp1f1(0.5 * (d + 2.0), 1.5, z).value;
  return std::exp(log_pref) * (first - second);
}

double rate_ci_bound(const SystemConfig& c, unsigned k) {
  c.validate_for(Scheme::ci);
  check_user(c, k);
  const JointSymbolSpace joint = enumerate_joint(c.modulation_order, c.n_users);
  const double c2 = std::norm(ci_gain(c, k));
  const auto chord = chord_table(c.modulation_order);
  std::vector<double> lam(chord.size(), 1.0);
  for (std::size_t d = 1; d < chord.size(); ++d) {
    const LambdaTerm t = lambda_from_xi(c.n_antennas, c.n_users, c2, c.sigma2, chord[d]);
    if (!t.converged) throw std::runtime_error("rate_ci_bound: Lambda evaluation did not converge");
    lam[d] = t.value;
  }
  const double t = mean_log_term_by_offset(joint, k, lam);
  const double verbatim = c.n_antennas * c.log2_m() - kLog2e - (-kLog2e + t);
  if (c.mode == RateMode::paper_verbatim) return verbatim;
  return verbatim - (c.n_antennas - static_cast<double>(c.n_users)) * c.log2_m();
}

double rate_bound(Scheme scheme, const SystemConfig& config, unsigned k) {
  switch (scheme) {
    case Scheme::none: return rate_unprecoded_bound(config, k);
    case Scheme::zf: return rate_zf_bound(config, k);
    case Scheme::ci: return rate_ci_bound(config, k);
  }
  throw std::invalid_argument("rate_bound: unknown scheme");
}

BoundReport sum_rate_bound(Scheme scheme, const SystemConfig& config) {
  BoundReport r;
  r.scheme = scheme;
  r.mode = config.mode;
  for (unsigned k = 0; k < config.n_users; ++k) {
    r.per_user.push_back(rate_bound(scheme, config, k));
    r.sum += r.per_user.back();
  }
  return r;
}

}  // namespace cirate
