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

#ifndef CIRATE_SPECFUN_HPP
#define CIRATE_SPECFUN_HPP

#include <cstddef>

namespace cirate {

struct SpecFunResult {
  double value = 0.0;
  bool converged = false;
  std::size_t terms_used = 0;
};

inline constexpr std::size_t kHyp1f1TermCap = 10000;
inline constexpr double kHyp1f1Tolerance = 1e-12;

// log Gamma(x) for x > 0 (Lanczos, g = 7). Throws std::domain_error otherwise.
double ln_gamma(double x);

// log n!
double ln_factorial(unsigned n);

// Rising factorial a (a+1) ... (a+n-1); 1 for n = 0.
double pochhammer(double a, std::size_t n);

// Kummer's M(a, b, z) by the Taylor series, accumulated in long double until
// the terms stop registering. `converged` means the last term fell below 1e-12
// of the partial sum (with the term ratio below one) within kHyp1f1TermCap terms.
// b must not be a nonpositive integer (std::domain_error).
SpecFunResult hyp1f1(double a, double b, double z);

// Gamma(n + 2) / Gamma(n) = n (n + 1), the second moment of a unit-scale
// Gamma(n) variable.
double gamma_second_moment_ratio(unsigned n);

// z^a U(a, 1/2, z), with U Tricomi's confluent hypergeometric function.
//
// For z <= kTricomiSeriesLimit this is assembled from two Kummer series; the
// two pieces cancel, losing roughly e^(2z) in relative accuracy, so above the
// limit the integral
//   (1/Gamma(a)) int_0^inf e^-w w^(a-1) (1 + w/z)^(-a-1/2) dw
// is used instead. Requires a > 0 and z > 0.
inline constexpr double kTricomiSeriesLimit = 1.0;

struct TricomiResult {
  double value = 0.0;
  bool converged = false;
  bool used_series = false;
};

TricomiResult scaled_tricomi_half(double a, double z);

// The two routes, exposed so their agreement can be tested directly.
TricomiResult scaled_tricomi_half_series(double a, double z);
TricomiResult scaled_tricomi_half_integral(double a, double z);

}  // namespace cirate

#endif
