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

#include "cirate/linalg.hpp"
#include "support.hpp"

using namespace cirate;
using testing_support::max_abs_diff;
using testing_support::random_matrix;

TEST_SUITE("linalg") {
  TEST_CASE("matrix construction rejects bad input") {
    CHECK_THROWS_AS(ComplexMatrix(2, 2, std::vector<cplx>(3)), std::invalid_argument);
    CHECK_THROWS_AS(ComplexMatrix(1, 1, {cplx(std::nan(""), 0.0)}), std::invalid_argument);
    CHECK_THROWS_AS(ComplexMatrix(1, 1, {cplx(0.0, INFINITY)}), std::invalid_argument);
  }

  TEST_CASE("gram examples") {
    CHECK(max_abs_diff(gram(ComplexMatrix::identity(2)), ComplexMatrix::identity(2)) == 0.0);
    const ComplexMatrix row(1, 2, {1.0, cplx(0.0, 1.0)});
    const ComplexMatrix g = gram(row);
    CHECK(g.rows() == 1);
    CHECK(g(0, 0) == cplx(2.0, 0.0));
    std::mt19937_64 gen(11);
    const ComplexMatrix h = random_matrix(2, 3, gen);
    const ComplexMatrix gh = gram(h);
    CHECK(max_abs_diff(gh, gh.adjoint()) <= 1e-12);
    CHECK_THROWS_AS(gram(random_matrix(3, 2, gen)), std::invalid_argument);
  }

  TEST_CASE("hermitian_inverse examples") {
    CHECK(max_abs_diff(hermitian_inverse(ComplexMatrix::identity(2)), ComplexMatrix::identity(2)) <= 1e-15);
    const std::vector<cplx> d{2.0, 4.0};
    const std::vector<cplx> di{0.5, 0.25};
    CHECK(max_abs_diff(hermitian_inverse(ComplexMatrix::diagonal(d)), ComplexMatrix::diagonal(di)) <= 1e-15);

    std::mt19937_64 gen(12);
    for (int t = 0; t < 200; ++t) {
      const ComplexMatrix a = gram(random_matrix(2, 4, gen));
      const ComplexMatrix inv = hermitian_inverse(a);
      CHECK(max_abs_diff(a * inv, ComplexMatrix::identity(2)) <= 1e-10 * std::max(1.0, a.frobenius_norm()));
    }
  }

  TEST_CASE("hermitian_inverse failure modes") {
    // rank one: two identical rows
    const ComplexMatrix h(2, 2, {1.0, 2.0, 1.0, 2.0});
    CHECK_THROWS_AS(hermitian_inverse(gram(h)), NotInvertible);
    const ComplexMatrix indefinite(2, 2, {1.0, 0.0, 0.0, -1.0});
    CHECK_THROWS_AS(hermitian_inverse(indefinite), NotInvertible);
    const ComplexMatrix skew(2, 2, {1.0, 1.0, 0.0, 1.0});
    CHECK_THROWS_AS(hermitian_inverse(skew), std::invalid_argument);
    CHECK_THROWS_AS(hermitian_inverse(ComplexMatrix(2, 3)), std::invalid_argument);
  }

  TEST_CASE("double inversion returns the original") {
    std::mt19937_64 gen(13);
    int checked = 0;
    for (int t = 0; t < 300; ++t) {
      const ComplexMatrix a = gram(random_matrix(3, 5, gen));
      const ComplexMatrix back = hermitian_inverse(hermitian_inverse(a));
      CHECK(max_abs_diff(back, a) <= 1e-8 * a.frobenius_norm());
      ++checked;
    }
    CHECK(checked == 300);
  }

  TEST_CASE("right pseudo-inverse") {
    CHECK(max_abs_diff(right_pseudo_inverse(ComplexMatrix::identity(2)), ComplexMatrix::identity(2)) <= 1e-15);
    const ComplexMatrix h(2, 2, {2.0, 0.0, 0.0, 1.0});
    const ComplexMatrix expect(2, 2, {0.5, 0.0, 0.0, 1.0});
    CHECK(max_abs_diff(right_pseudo_inverse(h), expect) <= 1e-15);

    std::mt19937_64 gen(14);
    for (int t = 0; t < 500; ++t) {
      const ComplexMatrix hr = random_matrix(2, 3, gen);
      const ComplexMatrix w = right_pseudo_inverse(hr);
      CHECK(w.rows() == 3);
      CHECK(max_abs_diff(hr * w, ComplexMatrix::identity(2)) <= 1e-10);
    }
    const ComplexMatrix deficient(2, 3, {1.0, 1.0, 1.0, 2.0, 2.0, 2.0});
    CHECK_THROWS_AS(right_pseudo_inverse(deficient), NotInvertible);
  }

  TEST_CASE("gram of full-rank draws factorizes") {
    std::mt19937_64 gen(15);
    for (int t = 0; t < 200; ++t) CHECK_NOTHROW(hermitian_inverse(gram(random_matrix(4, 6, gen))));
  }
}
