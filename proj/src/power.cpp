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

#include "cirate/power.hpp"

#include <cmath>
#include <numbers>

#include "cirate/constellation.hpp"
#include "cirate/parallel.hpp"
#include "cirate/rate_bound.hpp"
#include "cirate/specfun.hpp"

namespace cirate {

namespace {

// Bracketing gives up this many doublings past sigma2 / varpi_k.
constexpr int kMaxDoublings = 200;

void check_target(double target, double log2m) {
  if (!(target >= 0.0) || !std::isfinite(target)) throw std::invalid_argument("target rate must be >= 0");
  if (target >= log2m)
    throw Infeasible("target rate " + std::to_string(target) + " is not below the saturation rate log2 M = " +
                     std::to_string(log2m));
}

double checked(double p, const char* who) {
  if (!(p > 0.0) || !std::isfinite(p))
    throw ClosedFormInvalid(std::string(who) + ": closed form out of validity range (value " + std::to_string(p) + ")");
  return p;
}

}  // namespace

SystemConfig per_user_link(const SystemConfig& config, unsigned k, double p_k) {
  if (k >= config.n_users) throw std::out_of_range("user index out of range");
  if (!(p_k >= 0.0)) throw std::invalid_argument("per-user power must be >= 0");
  SystemConfig c = config;
  c.path_gains.assign(config.n_users, config.path_gains[k]);
  c.power = config.n_users * p_k;
  c.mode = RateMode::normalized;
  return c;
}

double link_rate(Scheme scheme, const SystemConfig& config, unsigned k, double p_k) {
  return rate_bound(scheme, per_user_link(config, k, p_k), k);
}

double min_power_bisect(Scheme scheme, unsigned k, double target, const SystemConfig& config, double eps_p) {
  config.validate_for(scheme);
  if (k >= config.n_users) throw std::out_of_range("user index out of range");
  if (!(eps_p > 0.0)) throw std::invalid_argument("eps_p must be > 0");
  check_target(target, config.log2_m());
  if (target == 0.0) return 0.0;

  auto f = [&](double p) { return link_rate(scheme, config, k, p); };
  double lo = 0.0;
  double f_lo = 0.0;
  double hi = config.sigma2 / config.path_gains[k];
  double f_hi = f(hi);
  for (int i = 0; f_hi < target; ++i) {
    if (i == kMaxDoublings) throw Infeasible("target rate not reached by the bound at any finite power");
    lo = hi;
    f_lo = f_hi;
    hi *= 2.0;
    f_hi = f(hi);
    if (f_hi < f_lo - 1e-12) throw std::runtime_error("min_power_bisect: rate not monotone in power");
  }
  while (hi - lo > eps_p * hi) {
    const double mid = lo == 0.0 ? 0.5 * hi : std::sqrt(lo * hi);
    const double f_mid = f(mid);
    if (f_mid < f_lo - 1e-12 || f_mid > f_hi + 1e-12)
      throw std::runtime_error("min_power_bisect: rate not monotone in power");
    if (f_mid >= target) {
      hi = mid;
      f_hi = f_mid;
    } else {
      lo = mid;
      f_lo = f_mid;
    }
  }
  return hi;
}

double min_power_unprecoded_closed(unsigned k, double target, const SystemConfig& config) {
  config.validate_for(Scheme::none);
  if (k >= config.n_users) throw std::out_of_range("user index out of range");
  const double log2m = config.log2_m();
  check_target(target, log2m);
  const double printed = target + (config.n_users - 1.0) * log2m;
  const double y = std::exp2(printed - config.n_antennas * log2m);
  const double gain = config.path_gains[k];
  const double s2 = config.sigma2;

  // Anchors m-bar and c-bar are the all-(+1) vectors, index 0 in both spaces.
  const JointSymbolSpace joint = enumerate_joint(config.modulation_order, config.n_users);
  const JointSymbolSpace interf = interference_space(joint, k);
  double sum_i = 0.0;
  for (std::size_t i = 1; i < joint.size(); ++i) sum_i += 2.0 * s2 / (gain * diff_eigenvalue(0, i, joint));
  double sum_t = 0.0;
  for (std::size_t t = 1; t < interf.size(); ++t) sum_t += 2.0 * s2 / (gain * diff_eigenvalue(0, t, interf));
  return checked((sum_t - y * sum_i) / (y - 1.0), "min_power_unprecoded_closed");
}

double zf_zeta(const SystemConfig& config) {
  const unsigned d = config.n_antennas - config.n_users;
  double q = 0.0;  // s^H Sigma^-1 s for unit-modulus symbols
  for (double g : config.path_gains) q += 1.0 / g;
  const double kk = config.n_users;
  return std::exp(ln_gamma(d + 1.5) - ln_factorial(d)) / (std::sqrt(q) * kk * std::sqrt(kk));
}

double zf_closed_form_raw(double target_printed, double sigma2, double zeta, double varpi_k, double xi,
                          unsigned n_antennas, unsigned order) {
  const double x = n_antennas * std::log2(static_cast<double>(order));
  return sigma2 * (target_printed - x) / (std::numbers::log2e * zeta * zeta * varpi_k * varpi_k * xi);
}

double min_power_zf_closed(unsigned k, double target, const SystemConfig& config) {
  config.validate_for(Scheme::zf);
  if (k >= config.n_users) throw std::out_of_range("user index out of range");
  const double log2m = config.log2_m();
  check_target(target, log2m);
  const double printed = target + (config.n_antennas - static_cast<double>(config.n_users)) * log2m;
  // j = m would put a zero in the denominator; the nearest PSK neighbour is
  // the only choice that keeps the expression finite.
  const PskConstellation psk(config.modulation_order);
  const double xi = std::norm(psk[0] - psk[1]);
  const double raw = zf_closed_form_raw(printed, config.sigma2, zf_zeta(config), config.path_gains[k], xi,
                                        config.n_antennas, config.modulation_order);
  return checked(raw, "min_power_zf_closed");
}

double min_power_ci_closed(unsigned k, double target, const SystemConfig& config) {
  config.validate_for(Scheme::ci);
  if (k >= config.n_users) throw std::out_of_range("user index out of range");
  const double log2m = config.log2_m();
  check_target(target, log2m);
  const unsigned kk = config.n_users;
  const double mk = std::pow(static_cast<double>(config.modulation_order), kk);
  // sum over pairs with a nonzero difference at user k of Lambda = 2^(X - R_T) - 1
  // minus the M^(K-1) - 1 pairs whose Lambda is exactly one.
  const double rhs = mk * std::exp2(-target) - mk / config.modulation_order;
  if (!(rhs > 0.0)) throw ClosedFormInvalid("min_power_ci_closed: target outside the closed-form range");

  // Keep only the leading series term of Lambda: sqrt(pi) z^a / Gamma(a + 1/2),
  // z = K^2 sigma2 / (2 |c_k|^2 xi) and |c_k|^2 proportional to p_k.
  const double a = 0.5 * (config.n_antennas - kk + 1.0);
  const double c2_unit = std::norm(ci_gain(per_user_link(config, k, 1.0), k));
  const double lead = std::exp(0.5 * std::log(std::numbers::pi) - ln_gamma(a + 0.5));
  const JointSymbolSpace joint = enumerate_joint(config.modulation_order, kk);
  double s = 0.0;
  for (std::size_t i = 1; i < joint.size(); ++i) {
    const double xi = std::norm(joint.vector(0)[k] - joint.vector(i)[k]);
    if (joint.symbol_index(i, k) == joint.symbol_index(0, k)) continue;
    s += lead * std::pow(static_cast<double>(kk) * kk * config.sigma2 / (2.0 * c2_unit * xi), a);
  }
  return checked(std::pow(s / rhs, 1.0 / a), "min_power_ci_closed");
}

double min_power_closed(Scheme scheme, unsigned k, double target, const SystemConfig& config) {
  switch (scheme) {
    case Scheme::none: return min_power_unprecoded_closed(k, target, config);
    case Scheme::zf: return min_power_zf_closed(k, target, config);
    case Scheme::ci: return min_power_ci_closed(k, target, config);
  }
  throw std::invalid_argument("min_power_closed: unknown scheme");
}

std::size_t maxmin_iterations(double span, double eps) {
  if (!(span > 0.0) || !(eps > 0.0)) throw std::invalid_argument("maxmin_iterations: need span > 0, eps > 0");
  const double n = std::ceil(std::log2(span / eps));
  return n > 0.0 ? static_cast<std::size_t>(n) : 0;
}

PowerSolution maxmin_allocate(Scheme scheme, const SystemConfig& config, double total_power, double eps,
                              PowerMethod method, unsigned threads) {
  config.validate_for(scheme);
  if (!(total_power > 0.0)) throw std::invalid_argument("total power must be > 0");
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be > 0");
  const unsigned kk = config.n_users;

  double lb = 0.0;
  double ub = config.log2_m();
  PowerSolution sol;
  sol.powers.assign(kk, 0.0);
  sol.iterations = maxmin_iterations(ub - lb, eps);

  std::vector<double> p(kk);
  for (std::size_t it = 0; it < sol.iterations; ++it) {
    const double r = 0.5 * (lb + ub);
    parallel_for(kk, threads, [&](std::size_t k) {
      const unsigned user = static_cast<unsigned>(k);
      if (method == PowerMethod::closed_form) {
        try {
          p[k] = min_power_closed(scheme, user, r, config);
          return;
        } catch (const ClosedFormInvalid&) {
          // out of the high-SNR range; bisection below
        }
      }
      p[k] = min_power_bisect(scheme, user, r, config);
    });
    double total = 0.0;
    for (double v : p) total += v;
    if (total <= total_power) {
      lb = r;
      sol.rate = r;
      sol.powers = p;
      sol.feasible = true;
    } else {
      ub = r;
    }
  }
  for (unsigned k = 0; k < kk; ++k) sol.rates.push_back(link_rate(scheme, config, k, sol.powers[k]));
  return sol;
}

double jain_index(std::span<const double> rates) {
  if (rates.empty()) throw std::invalid_argument("jain_index: no rates");
  double s = 0.0;
  double s2 = 0.0;
  for (double r : rates) {
    if (!(r >= 0.0)) throw std::invalid_argument("jain_index: rates must be >= 0");
    s += r;
    s2 += r * r;
  }
  if (s2 == 0.0) throw std::domain_error("jain_index: undefined for all-zero rates");
  return s * s / (static_cast<double>(rates.size()) * s2);
}

}  // namespace cirate
