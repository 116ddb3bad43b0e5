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

#include "cirate/channel.hpp"

using namespace cirate;

TEST_SUITE("channel") {
  TEST_CASE("path loss") {
    CHECK(path_loss(1.0, 2.7) == 1.0);
    CHECK(path_loss(10.0, 2.7) == doctest::Approx(1.9952623149688797e-3).epsilon(1e-13));
    CHECK(path_loss(80.0, 2.7) == doctest::Approx(std::exp(-2.7 * std::log(80.0))).epsilon(1e-13));
    CHECK_THROWS_AS(path_loss(0.0, 2.7), std::invalid_argument);
    CHECK_THROWS_AS(path_loss(-3.0, 2.7), std::invalid_argument);
    CHECK_THROWS_AS(path_loss(5.0, 0.0), std::invalid_argument);
  }

  TEST_CASE("geometry validation") {
    Geometry g{{10.0, 0.0}, 2.7};
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
    g.distances = {10.0, 20.0};
    CHECK_NOTHROW(g.validate());
    g.path_loss_exponent = -1.0;
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
  }

  TEST_CASE("H = D^1/2 H1 and unit-variance fading") {
    const Geometry g{{1.0, 10.0}, 2.7};
    RandomStream s(5, 0);
    double acc = 0.0;
    double diag0 = 0.0, diag1 = 0.0;
    const int draws = 100000;
    for (int t = 0; t < draws; ++t) {
      const ChannelRealization ch = sample_channel(g, 3, s);
      REQUIRE(ch.h.rows() == 2);
      REQUIRE(ch.h.cols() == 3);
      if (t < 1000)
        for (std::size_t k = 0; k < 2; ++k)
          for (std::size_t n = 0; n < 3; ++n) CHECK_EQ(ch.h(k, n), std::sqrt(ch.path_gain[k]) * ch.h1(k, n));
      acc += std::norm(ch.h1(0, 0));
      // E[H H^H] has diagonal N varpi_k
      for (std::size_t n = 0; n < 3; ++n) {
        diag0 += std::norm(ch.h(0, n));
        diag1 += std::norm(ch.h(1, n));
      }
    }
    CHECK(std::abs(acc / draws - 1.0) <= 0.02);
    CHECK(std::abs(diag0 / draws / (3 * path_loss(1.0, 2.7)) - 1.0) <= 0.02);
    CHECK(std::abs(diag1 / draws / (3 * path_loss(10.0, 2.7)) - 1.0) <= 0.02);
  }

  TEST_CASE("channel draws are reproducible") {
    const Geometry g{{1.0, 1.0}, 2.7};
    RandomStream a(9, 2), b(9, 2);
    const auto x = sample_channel(g, 2, a);
    const auto y = sample_channel(g, 2, b);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) CHECK(x.h(i, j) == y.h(i, j));
    // unit distances: H is H1
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) CHECK(x.h(i, j) == x.h1(i, j));
    CHECK_THROWS_AS(sample_channel(g, 1, a), std::invalid_argument);
  }

  TEST_CASE("annulus placement is uniform over the area") {
    RandomStream s(3, 0);
    const double r0 = 10.0, r1 = 80.0;
    std::vector<double> d;
    for (int t = 0; t < 50000; ++t)
      for (double x : place_users(2, r0, r1, s).distances) d.push_back(x);
    std::sort(d.begin(), d.end());
    CHECK(d.front() >= r0);
    CHECK(d.back() <= r1);
    double worst = 0.0;
    for (std::size_t i = 0; i < d.size(); i += 97) {
      const double empirical = (i + 1.0) / d.size();
      const double cdf = (d[i] * d[i] - r0 * r0) / (r1 * r1 - r0 * r0);
      worst = std::max(worst, std::abs(empirical - cdf));
    }
    CHECK(worst <= 0.01);

    const Geometry ring = place_users(4, 25.0, 25.0, s);
    for (double x : ring.distances) CHECK(x == 25.0);
    CHECK_THROWS_AS(place_users(2, 0.0, 10.0, s), std::invalid_argument);
    CHECK_THROWS_AS(place_users(2, 20.0, 10.0, s), std::invalid_argument);
  }

  TEST_CASE("noise moments") {
    RandomStream s(4, 0);
    const int n = 100000;
    const double sigma2 = 0.7;
    cplx mean = 0.0;
    double var = 0.0;
    for (int i = 0; i < n; ++i) {
      const cplx z = sample_noise(sigma2, s);
      mean += z;
      var += std::norm(z);
    }
    mean /= n;
    CHECK(std::abs(var / n / sigma2 - 1.0) <= 0.03);
    CHECK(std::abs(mean.real()) <= 3 * std::sqrt(sigma2 / 2 / n));
    CHECK(std::abs(mean.imag()) <= 3 * std::sqrt(sigma2 / 2 / n));
    CHECK_THROWS_AS(sample_noise(0.0, s), std::invalid_argument);
  }
}
