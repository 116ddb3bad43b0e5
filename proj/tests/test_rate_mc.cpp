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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "cirate/precoding.hpp"
#include "cirate/rate_mc.hpp"

using namespace cirate;

namespace {

// Gauss-Hermite nodes and weights for weight e^{-x^2}, by Newton iteration on
// the orthonormal Hermite recurrence.
void gauss_hermite(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const double pim4 = std::pow(std::numbers::pi, -0.25);
  double z = 0.0;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    if (i == 0) z = std::sqrt(2.0 * n + 1) - 1.85575 * std::pow(2.0 * n + 1, -1.0 / 6);
    else if (i == 1) z -= 1.14 * std::pow(n, 0.426) / z;
    else if (i == 2) z = 1.86 * z - 0.86 * x[0];
    else if (i == 3) z = 1.91 * z - 0.91 * x[1];
    else z = 2.0 * z - x[i - 2];
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = pim4, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-15) break;
    }
    x[i] = z;
    x[n - 1 - i] = -z;
    w[i] = w[n - 1 - i] = 2.0 / (pp * pp);
  }
}

// BPSK over y = a s + n, n ~ CN(0, sigma2). Only Re(y) carries information:
// I = 1 - E[log2(1 + exp(-4 a (a + n_r) / sigma2))], n_r ~ N(0, sigma2 / 2).
double bpsk_awgn_mi(double amplitude, double sigma2) {
  std::vector<double> x, w;
  gauss_hermite(80, x, w);
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double nr = std::sqrt(sigma2) * x[i];
    const double arg = -4.0 * amplitude * (amplitude + nr) / sigma2;
    const double l = arg > 30 ? arg / std::numbers::ln2 : std::log2(1.0 + std::exp(arg));
    acc += w[i] * l;
  }
  return 1.0 - acc / std::sqrt(std::numbers::pi);
}

SystemConfig cfg(unsigned n, unsigned k, unsigned m, double snr_db) {
  return make_config(n, k, m, db_to_linear(snr_db));
}

}  // namespace

TEST_SUITE("rate_mc") {
  TEST_CASE("Gauss-Hermite oracle self-check") {
    std::vector<double> x, w;
    gauss_hermite(80, x, w);
    double m0 = 0, m2 = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      m0 += w[i];
      m2 += w[i] * x[i] * x[i];
    }
    CHECK(m0 == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-13));
    CHECK(m2 == doctest::Approx(std::sqrt(std::numbers::pi) / 2).epsilon(1e-13));
    CHECK(bpsk_awgn_mi(0.0, 1.0) == doctest::Approx(0.0));
    CHECK(bpsk_awgn_mi(10.0, 1.0) == doctest::Approx(1.0));
  }

  TEST_CASE("single-user BPSK matches the quadrature oracle") {
    // K = N = 1 with long-term ZF: y = beta s + n with a constant beta.
    const SystemConfig c = cfg(1, 1, 2, 10.0);
    const std::vector<cplx> s{1.0};
    const double beta = zf_beta_longterm(c.power, s, c.path_gains, 1, 1);
    const UserRate r = mi_user_mc(c, Scheme::zf, 0, 20000, RandomStream(77));
    const double want = bpsk_awgn_mi(beta, c.sigma2);
    CHECK(std::abs(r.rate - want) <= 3.0 * r.ci95);
    CHECK(r.ci95 < 0.02);
  }

  TEST_CASE("zero power carries no information") {
    for (Scheme s : {Scheme::none, Scheme::zf, Scheme::ci}) {
      SystemConfig c = cfg(2, 2, 4, 0.0);
      c.power = 0.0;
      const RateReport r = sum_rate_mc(c, s, 200, RandomStream(3));
      CHECK(std::abs(r.sum) <= r.ci95 + 1e-12);
      for (double v : r.per_user) CHECK(std::abs(v) <= 1e-12);
    }
  }

  TEST_CASE("ZF saturates at log2 M per user") {
    const RateReport r = sum_rate_mc(cfg(2, 2, 2, 40.0), Scheme::zf, 2000, RandomStream(5));
    for (double v : r.per_user) CHECK(std::abs(v - 1.0) <= 0.02);
    CHECK(std::abs(r.sum - 2.0) <= 0.02);
    const RateReport q = sum_rate_mc(cfg(2, 2, 4, 40.0), Scheme::zf, 1000, RandomStream(6));
    CHECK(std::abs(q.sum - 4.0) <= 0.05);
    const RateReport e = sum_rate_mc(cfg(2, 2, 8, 40.0), Scheme::zf, 500, RandomStream(7));
    CHECK(std::abs(e.sum - 6.0) <= 0.05);
  }

  TEST_CASE("symmetric users see equal rates") {
    for (Scheme s : {Scheme::none, Scheme::zf, Scheme::ci}) {
      const RateReport r = sum_rate_mc(cfg(2, 2, 2, 5.0), s, 4000, RandomStream(8));
      const double tol = 3.0 * std::hypot(r.per_user_ci95[0], r.per_user_ci95[1]);
      CHECK(std::abs(r.per_user[0] - r.per_user[1]) <= tol);
    }
  }

  TEST_CASE("range, monotonicity and finiteness over SNR") {
    for (Scheme s : {Scheme::none, Scheme::zf, Scheme::ci}) {
      double prev = -1.0, prev_ci = 0.0;
      for (double db = -10.0; db <= 60.0; db += 5.0) {
        // each step multiplies p by 10^0.5 > 2
        const RateReport r = sum_rate_mc(cfg(2, 2, 4, db), s, 300, RandomStream(9));
        for (std::size_t k = 0; k < 2; ++k) {
          CHECK(std::isfinite(r.per_user[k]));
          CHECK(r.per_user[k] >= -r.per_user_ci95[k] - 1e-12);
          CHECK(r.per_user[k] <= 2.0 + r.per_user_ci95[k] + 1e-12);
        }
        CHECK(r.sum >= prev - 3.0 * std::hypot(r.ci95, prev_ci));
        prev = r.sum;
        prev_ci = r.ci95;
      }
    }
  }

  TEST_CASE("CI is at least ZF at moderate SNR") {
    for (double db : {0.0, 5.0, 10.0}) {
      const RateReport zf = sum_rate_mc(cfg(2, 2, 2, db), Scheme::zf, 3000, RandomStream(10));
      const RateReport ci = sum_rate_mc(cfg(2, 2, 2, db), Scheme::ci, 3000, RandomStream(10));
      CHECK(ci.sum >= zf.sum - 3.0 * std::hypot(ci.ci95, zf.ci95));
    }
  }

  TEST_CASE("results do not depend on the worker count or on the entry point") {
    const SystemConfig c = cfg(3, 2, 4, 12.0);
    const RateReport a = sum_rate_mc(c, Scheme::ci, 400, RandomStream(11), 1);
    const RateReport b = sum_rate_mc(c, Scheme::ci, 400, RandomStream(11), 3);
    CHECK(a.sum == b.sum);
    CHECK(a.ci95 == b.ci95);
    const UserRate u1 = mi_user_mc(c, Scheme::ci, 1, 400, RandomStream(11), 2);
    CHECK(u1.rate == a.per_user[1]);
    CHECK(u1.ci95 == a.per_user_ci95[1]);
  }

  TEST_CASE("sum is the sum of the users; ci95 combines in quadrature") {
    const RateReport r = sum_rate_mc(cfg(3, 3, 2, 8.0), Scheme::zf, 300, RandomStream(12));
    double s = 0.0, v = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
      s += r.per_user[k];
      v += r.per_user_ci95[k] * r.per_user_ci95[k];
    }
    CHECK(r.sum == doctest::Approx(s).epsilon(1e-15));
    CHECK(r.ci95 == doctest::Approx(std::sqrt(v)).epsilon(1e-15));
    CHECK(r.trials == 300);
  }

  TEST_CASE("paper_verbatim adds (N - 1) log2 M") {
    SystemConfig c = cfg(3, 2, 4, 8.0);
    const UserRate n = mi_user_mc(c, Scheme::zf, 0, 200, RandomStream(13));
    c.mode = RateMode::paper_verbatim;
    const UserRate v = mi_user_mc(c, Scheme::zf, 0, 200, RandomStream(13));
    CHECK(v.rate - n.rate == doctest::Approx(4.0).epsilon(1e-12));
  }

  TEST_CASE("estimator input errors") {
    CHECK_THROWS_AS(mi_user_mc(cfg(2, 2, 2, 0.0), Scheme::zf, 0, 99, RandomStream(1)), std::invalid_argument);
    CHECK_THROWS_AS(mi_user_mc(cfg(3, 2, 2, 0.0), Scheme::none, 0, 100, RandomStream(1)), std::invalid_argument);
    CHECK_THROWS_AS(mi_user_mc(cfg(2, 2, 2, 0.0), Scheme::zf, 2, 100, RandomStream(1)), std::out_of_range);
    CHECK_THROWS_AS(mi_user_mc(cfg(5, 5, 16, 0.0), Scheme::zf, 0, 100, RandomStream(1)), std::length_error);
  }
}
