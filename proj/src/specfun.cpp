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

#include "cirate/specfun.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace cirate {

namespace {

// Lanczos approximation, g = 7, nine coefficients.
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_nonpositive_integer(double b) {
  return b <= 0.0 && std::floor(b) == b;
}

}  // namespace

double ln_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw std::domain_error("ln_gamma: argument must be > 0");
  if (x < 0.5) {
    // Reflection keeps the Lanczos sum in its accurate range.
    return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) - ln_gamma(1.0 - x);
  }
  const double xm = x - 1.0;
  double acc = kLanczos[0];
  for (int i = 1; i < 9; ++i) acc += kLanczos[i] / (xm + i);
  const double t = xm + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (xm + 0.5) * std::log(t) - t + std::log(acc);
}

double ln_factorial(unsigned n) {
  if (n < 2) return 0.0;
  if (n <= 20) {
    double f = 1.0;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return std::log(f);
  }
  return ln_gamma(n + 1.0);
}

double pochhammer(double a, std::size_t n) {
  double p = 1.0;
  for (std::size_t i = 0; i < n; ++i) p *= a + static_cast<double>(i);
  return p;
}

namespace {

struct LongSum {
  long double value;
  bool converged;
  std::size_t terms;
};

// The flag uses the 1e-12 rule; summation itself carries on to long double
// resolution, which costs a few terms and keeps callers that subtract two
// series (the Tricomi combination below) from inheriting the truncation.
LongSum kummer_series(double a, double b, double z) {
  if (is_nonpositive_integer(b)) throw std::domain_error("hyp1f1: b is a nonpositive integer");
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(z))
    throw std::domain_error("hyp1f1: non-finite argument");
  constexpr long double kResolution = std::numeric_limits<long double>::epsilon();

  long double term = 1.0L;
  long double sum = 1.0L;
  for (std::size_t v = 0; v + 1 < kHyp1f1TermCap; ++v) {
    const long double ratio =
        (static_cast<long double>(a) + v) * z / ((static_cast<long double>(b) + v) * (v + 1.0L));
    term *= ratio;
    sum += term;
    if (term == 0.0L) return {sum, true, v + 2};
    // The next ratio must also be below one, otherwise a tiny early term
    // (a close to zero, large z) could stop the sum before its bulk arrives.
    const long double next =
        (static_cast<long double>(a) + v + 1) * z / ((static_cast<long double>(b) + v + 1) * (v + 2.0L));
    if (std::fabs(term) <= kResolution * std::fabs(sum) && std::fabs(next) < 1.0L) return {sum, true, v + 2};
  }
  return {sum, std::fabs(term) <= kHyp1f1Tolerance * std::fabs(sum), kHyp1f1TermCap};
}

}  // namespace

SpecFunResult hyp1f1(double a, double b, double z) {
  const LongSum r = kummer_series(a, b, z);
  return {static_cast<double>(r.value), r.converged, r.terms};
}

double gamma_second_moment_ratio(unsigned n) {
  if (n == 0) throw std::domain_error("gamma_second_moment_ratio: shape must be >= 1");
  return std::exp(ln_gamma(n + 2.0) - ln_gamma(static_cast<double>(n)));
}

TricomiResult scaled_tricomi_half_series(double a, double z) {
  if (!(a > 0.0) || !(z > 0.0)) throw std::domain_error("scaled_tricomi_half: need a > 0, z > 0");
  // U(a, 1/2, z) = sqrt(pi) [ M(a, 1/2, z)/Gamma(a + 1/2) - 2 sqrt(z) M(a + 1/2, 3/2, z)/Gamma(a) ]
  const LongSum m1 = kummer_series(a, 0.5, z);
  const LongSum m2 = kummer_series(a + 0.5, 1.5, z);
  const long double lz = a * std::log(static_cast<long double>(z));
  const long double t1 = std::exp(lz - ln_gamma(a + 0.5)) * m1.value;
  const long double t2 = 2.0L * std::exp(lz + 0.5L * std::log(static_cast<long double>(z)) - ln_gamma(a)) * m2.value;
  const double value = static_cast<double>(std::sqrt(std::numbers::pi_v<long double>) * (t1 - t2));
  return {value, m1.converged && m2.converged && std::isfinite(value), true};
}

TricomiResult scaled_tricomi_half_integral(double a, double z) {
  if (!(a > 0.0) || !(z > 0.0)) throw std::domain_error("scaled_tricomi_half: need a > 0, z > 0");
  // Substituting w = t^2 removes the w^(a-1) endpoint singularity for a < 1.
  const double lg = ln_gamma(a);
  auto f = [a, z, lg](double t) {
    if (t == 0.0) return a == 0.5 ? 2.0 * std::exp(-lg) : 0.0;
    const double w = t * t;
    const double log_val = -w + (2.0 * a - 1.0) * std::log(t) - (a + 0.5) * std::log1p(w / z) - lg;
    return 2.0 * std::exp(log_val);
  };
  boost::math::quadrature::exp_sinh<double> integrator;
  double err = 0.0;
  double l1 = 0.0;
  const double value = integrator.integrate(f, 0.0, std::numeric_limits<double>::infinity(), 1e-13, &err, &l1);
  const bool ok = std::isfinite(value) && err <= 1e-10 * std::max(std::fabs(value), 1e-300);
  return {value, ok, false};
}

TricomiResult scaled_tricomi_half(double a, double z) {
  if (z <= kTricomiSeriesLimit) {
    TricomiResult r = scaled_tricomi_half_series(a, z);
    if (r.converged) return r;
  }
  return scaled_tricomi_half_integral(a, z);
}

}  // namespace cirate
