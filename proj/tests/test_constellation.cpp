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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "cirate/constellation.hpp"

using namespace cirate;

TEST_SUITE("constellation") {
  TEST_CASE("psk points") {
    const auto b = psk_symbols(2);
    CHECK(b[0] == cplx(1, 0));
    CHECK(b[1] == cplx(-1, 0));
    const auto q = psk_symbols(4);
    CHECK(q[0] == cplx(1, 0));
    CHECK(q[1] == cplx(0, 1));
    CHECK(q[2] == cplx(-1, 0));
    CHECK(q[3] == cplx(0, -1));
    for (unsigned m : {2u, 4u, 8u, 16u}) {
      const auto p = psk_symbols(m);
      CHECK(p.order() == m);
      double dmin = 1e9;
      for (unsigned i = 0; i < m; ++i) {
        CHECK(std::abs(std::abs(p[i]) - 1.0) <= 1e-14);
        CHECK(std::abs(p[i] - std::polar(1.0, 2 * std::numbers::pi * i / m)) <= 1e-15);
        for (unsigned j = 0; j < i; ++j) dmin = std::min(dmin, std::abs(p[i] - p[j]));
      }
      CHECK(std::abs(dmin - 2 * std::sin(std::numbers::pi / m)) <= 1e-14);
    }
    CHECK_THROWS_AS(psk_symbols(3), std::invalid_argument);
    CHECK_THROWS_AS(psk_symbols(32), std::invalid_argument);
  }

  TEST_CASE("closure under rotation and zero mean") {
    for (unsigned m : {2u, 4u, 8u, 16u}) {
      const auto p = psk_symbols(m);
      const cplx r = std::polar(1.0, 2 * std::numbers::pi / m);
      cplx sum = 0.0;
      for (unsigned i = 0; i < m; ++i) {
        sum += p[i];
        double best = 1e9;
        for (unsigned j = 0; j < m; ++j) best = std::min(best, std::abs(r * p[i] - p[j]));
        CHECK(best <= 1e-14);
      }
      CHECK(std::abs(sum) <= 1e-14);
    }
  }

  TEST_CASE("joint enumeration order and contents") {
    const auto s = enumerate_joint(2, 2);
    REQUIRE(s.size() == 4);
    const cplx want[4][2] = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 2; ++k) CHECK(s.vector(i)[k] == want[i][k]);
    CHECK(enumerate_joint(2, 3).size() == 8);

    const auto q = enumerate_joint(4, 2);
    REQUIRE(q.size() == 16);
    std::set<std::pair<unsigned, unsigned>> seen;
    const auto p = psk_symbols(4);
    for (std::size_t i = 0; i < q.size(); ++i) {
      for (unsigned k = 0; k < 2; ++k) CHECK(q.vector(i)[k] == p[q.symbol_index(i, k)]);
      seen.insert({q.symbol_index(i, 0), q.symbol_index(i, 1)});
      if (i > 0) {
        const auto a = q.indices(i - 1), b = q.indices(i);
        CHECK(std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end()));
      }
    }
    CHECK(seen.size() == 16);
  }

  TEST_CASE("each coordinate sums to zero over the joint space") {
    for (unsigned m : {2u, 4u, 8u})
      for (unsigned k = 1; k <= 3; ++k) {
        const auto s = enumerate_joint(m, k);
        for (unsigned u = 0; u < k; ++u) {
          cplx acc = 0.0;
          for (std::size_t i = 0; i < s.size(); ++i) acc += s.vector(i)[u];
          CHECK(std::abs(acc) <= 1e-12);
        }
      }
  }

  TEST_CASE("enumeration cap") {
    CHECK_NOTHROW(enumerate_joint(16, 3));  // 4096
    CHECK_THROWS_AS(enumerate_joint(16, 4), std::length_error);
    try {
      enumerate_joint(8, 5);
      FAIL("expected a size error");
    } catch (const std::length_error& e) {
      CHECK(std::string(e.what()).find("reduce M or K") != std::string::npos);
    }
  }

  TEST_CASE("interference space") {
    const auto one = interference_space(enumerate_joint(4, 1), 0);
    CHECK(one.size() == 1);
    CHECK(one.users() == 0);
    const auto two = interference_space(enumerate_joint(2, 2), 0);
    REQUIRE(two.size() == 2);
    CHECK(two.vector(0)[0] == cplx(1, 0));
    CHECK(two.vector(1)[0] == cplx(-1, 0));

    // M=4, K=3, k=1: projections of the full space onto users {0, 2}
    const auto full = enumerate_joint(4, 3);
    const auto sub = interference_space(full, 1);
    REQUIRE(sub.size() == 16);
    CHECK(sub.users() == 2);
    std::set<std::pair<unsigned, unsigned>> want, got;
    for (std::size_t i = 0; i < full.size(); ++i) want.insert({full.symbol_index(i, 0), full.symbol_index(i, 2)});
    for (std::size_t i = 0; i < sub.size(); ++i) got.insert({sub.symbol_index(i, 0), sub.symbol_index(i, 1)});
    CHECK(got == want);
    CHECK_THROWS_AS(interference_space(full, 3), std::out_of_range);
  }

  TEST_CASE("difference eigenvalue") {
    const auto s = enumerate_joint(2, 2);
    CHECK(diff_eigenvalue(0, 2, s) == doctest::Approx(4.0));  // (1,1) vs (-1,1)
    CHECK(diff_eigenvalue(0, 3, s) == doctest::Approx(8.0));  // (1,1) vs (-1,-1)
    CHECK_THROWS_AS(diff_eigenvalue(1, 1, s), std::invalid_argument);
    CHECK_THROWS_AS(diff_eigenvalue(0, 4, s), std::out_of_range);
  }

  TEST_CASE("difference spectrum is the same from every anchor") {
    for (unsigned m : {2u, 4u, 8u})
      for (unsigned k = 1; k <= 3; ++k) {
        if (m == 8 && k == 3) continue;  // 512^2 pairs; covered by the smaller cases
        const auto s = enumerate_joint(m, k);
        auto spectrum = [&](std::size_t anchor) {
          std::vector<double> v;
          for (std::size_t i = 0; i < s.size(); ++i)
            if (i != anchor) {
              const double lam = diff_eigenvalue(anchor, i, s);
              CHECK(lam > 0.0);
              CHECK(lam <= 4.0 * k + 1e-12);
              v.push_back(std::round(lam * 1e9) / 1e9);
            }
          std::sort(v.begin(), v.end());
          return v;
        };
        const auto ref = spectrum(0);
        for (std::size_t a = 1; a < s.size(); ++a) CHECK(spectrum(a) == ref);
      }
  }
}
