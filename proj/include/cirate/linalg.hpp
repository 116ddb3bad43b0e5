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

#ifndef CIRATE_LINALG_HPP
#define CIRATE_LINALG_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cirate {

using cplx = std::complex<double>;

// Thrown when a Gram-type matrix fails the Cholesky pivot test. Monte Carlo
// callers treat this as a degenerate draw and resample.
class NotInvertible : public std::runtime_error {
 public:
  explicit NotInvertible(const std::string& what) : std::runtime_error(what) {}
};

// Small dense complex matrix, row-major. Dimensions here are at most a few
// dozen, so everything is written for clarity rather than blocking.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  // Takes ownership of row-major entries; rejects wrong length or NaN/Inf.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const cplx> d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const cplx> entries() const { return data_; }
  std::span<const cplx> row(std::size_t r) const {
    return std::span<const cplx>(data_).subspan(r * cols_, cols_);
  }

  ComplexMatrix adjoint() const;
  double frobenius_norm() const;
  bool all_finite() const;

  // y = A v
  std::vector<cplx> apply(std::span<const cplx> v) const;

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(cplx s, const ComplexMatrix& a);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

// H H^H for a K x N channel (K <= N).
ComplexMatrix gram(const ComplexMatrix& h);

// Inverse of a Hermitian positive definite matrix through Cholesky.
// A pivot below 1e-12 * ||A||_F raises NotInvertible. Non-Hermitian input is
// an argument error, not a singularity.
ComplexMatrix hermitian_inverse(const ComplexMatrix& a);

// H^H (H H^H)^{-1}, the N x K right inverse of a full-row-rank H.
ComplexMatrix right_pseudo_inverse(const ComplexMatrix& h);

// max |A - A^H| <= tol * ||A||_F
bool is_hermitian(const ComplexMatrix& a, double tol = 1e-10);

}  // namespace cirate

#endif
