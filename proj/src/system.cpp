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

#include "cirate/system.hpp"

#include <cmath>
#include <stdexcept>


namespace cirate {

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::none: return "none";
    case Scheme::zf: return "zf";
    case Scheme::ci: return "ci";
  }
  return "?";
}

std::string to_string(BetaMode b) {
  return b == BetaMode::long_term ? "long_term" : "instantaneous";
}

std::string to_string(RateMode r) {
  return r == RateMode::normalized ? "normalized" : "paper_verbatim";
}

Scheme parse_scheme(std::string_view name) {
  if (name == "none") return Scheme::none;
  if (name == "zf") return Scheme::zf;
  if (name == "ci") return Scheme::ci;
  throw std::invalid_argument("unknown scheme '" + std::string(name) + "' (expected none, zf or ci)");
}

BetaMode parse_beta_mode(std::string_view name) {
  if (name == "long_term") return BetaMode::long_term;
  if (name == "instantaneous") return BetaMode::instantaneous;
  throw std::invalid_argument("unknown beta_mode '" + std::string(name) +
                              "' (expected long_term or instantaneous)");
}

RateMode parse_rate_mode(std::string_view name) {
  if (name == "normalized") return RateMode::normalized;
  if (name == "paper_verbatim") return RateMode::paper_verbatim;
  throw std::invalid_argument("unknown mode '" + std::string(name) +
                              "' (expected normalized or paper_verbatim)");
}

void SystemConfig::validate() const {
  if (n_users < 1) throw std::invalid_argument("n_users: need K >= 1");
  if (n_antennas < n_users) throw std::invalid_argument("n_antennas: need N >= K");
  if (modulation_order != 2 && modulation_order != 4 && modulation_order != 8 && modulation_order != 16)
    throw std::invalid_argument("modulation_order: M must be one of 2, 4, 8, 16");
  if (!(power >= 0.0) || !std::isfinite(power)) throw std::invalid_argument("power: need p >= 0");
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) throw std::invalid_argument("sigma2: need sigma2 > 0");
  if (path_gains.size() != n_users)
    throw std::invalid_argument("path_gains: need exactly one gain per user");
  for (double g : path_gains)
    if (!(g > 0.0) || !std::isfinite(g)) throw std::invalid_argument("path_gains: need positive gains");
  if (!u.empty()) {
    if (u.size() != n_users) throw std::invalid_argument("u_vector: need exactly one weight per user");
    cplx sum = 0.0;
    for (const auto& w : u) sum += w;
    if (std::abs(sum - cplx(1.0, 0.0)) > 1e-12)
      throw std::invalid_argument("u_vector: entries must sum to 1");
  }
}

void SystemConfig::validate_for(Scheme scheme) const {
  validate();
  if (scheme == Scheme::none && n_antennas != n_users)
    throw std::invalid_argument("scheme none: un-precoded transmission requires N == K");
}

double SystemConfig::log2_m() const { return std::log2(static_cast<double>(modulation_order)); }

std::vector<cplx> SystemConfig::ci_weights() const {
  if (!u.empty()) return u;
  return std::vector<cplx>(n_users, cplx(1.0 / n_users, 0.0));
}

SystemConfig make_config(unsigned n, unsigned k, unsigned m, double snr_linear, double sigma2) {
  SystemConfig c;
  c.n_antennas = n;
  c.n_users = k;
  c.modulation_order = m;
  c.sigma2 = sigma2;
  c.power = snr_linear * sigma2;
  c.path_gains.assign(k, 1.0);
  return c;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double x) { return 10.0 * std::log10(x); }

}  // namespace cirate
