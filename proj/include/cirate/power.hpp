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

#ifndef CIRATE_POWER_HPP
#define CIRATE_POWER_HPP

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cirate/system.hpp"

namespace cirate {

inline constexpr double kDefaultRateTolerance = 1e-3;   // epsilon, bits/s/Hz
inline constexpr double kDefaultPowerTolerance = 1e-4;  // epsilon_p, relative

class Infeasible : public std::runtime_error {
 public:
  explicit Infeasible(const std::string& what) : std::runtime_error(what) {}
};

// A closed-form power expression evaluated outside its range of validity
// (nonpositive or NaN). Callers fall back to bisection.
class ClosedFormInvalid : public std::runtime_error {
 public:
  explicit ClosedFormInvalid(const std::string& what) : std::runtime_error(what) {}
};

// User k's link in isolation: every user gets user k's path gain and power
// p_k, so the scheme's single-user bound at k depends on (p_k, d_k) only.
SystemConfig per_user_link(const SystemConfig& config, unsigned k, double p_k);

// Normalized bound at user k under the per-user link model.
double link_rate(Scheme scheme, const SystemConfig& config, unsigned k, double p_k);

// Smallest p with link_rate(p) >= R_T, to relative tolerance eps_p.
// Geometric bracketing from sigma2 / varpi_k, then bisection on log p.
double min_power_bisect(Scheme scheme, unsigned k, double target_rate, const SystemConfig& config,
                        double eps_p = kDefaultPowerTolerance);

// High-SNR closed forms. Each throws ClosedFormInvalid on a nonpositive or
// non-finite result. R_T is given in normalized bits/s/Hz and translated to
// the printed scale internally.
double min_power_unprecoded_closed(unsigned k, double target_rate, const SystemConfig& config);
double min_power_zf_closed(unsigned k, double target_rate, const SystemConfig& config);
double min_power_ci_closed(unsigned k, double target_rate, const SystemConfig& config);
double min_power_closed(Scheme scheme, unsigned k, double target_rate, const SystemConfig& config);

// The ZF expression before the sign check:
//   sigma2 (R_T - N log2 M) / (log2(e) zeta^2 varpi_k^2 xi)
// with R_T on the printed scale. Exposed so its scaling can be tested.
double zf_closed_form_raw(double target_rate_printed, double sigma2, double zeta, double varpi_k, double xi,
                          unsigned n_antennas, unsigned order);

// zeta = Gamma(N - K + 3/2) / (sqrt(s^H Sigma^-1 s) K sqrt(K) (N - K)!)
double zf_zeta(const SystemConfig& config);

enum class PowerMethod { bisection, closed_form };

struct PowerSolution {
  std::vector<double> powers;
  std::vector<double> rates;  // link_rate of each user at its power
  double rate = 0.0;          // R*
  bool feasible = false;
  std::size_t iterations = 0;
};

// Outer bisection on R_T in [0, log2 M] for exactly ceil(log2(log2 M / eps))
// steps; per candidate, every user's minimum power (concurrently). With the
// closed-form method a user whose closed form is invalid uses bisection.
PowerSolution maxmin_allocate(Scheme scheme, const SystemConfig& config, double total_power,
                              double eps = kDefaultRateTolerance, PowerMethod method = PowerMethod::bisection,
                              unsigned threads = 0);

std::size_t maxmin_iterations(double rate_span, double eps);

// (sum r)^2 / (K sum r^2)
double jain_index(std::span<const double> rates);

}  // namespace cirate

#endif
