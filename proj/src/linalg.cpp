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

#include "cirate/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace cirate {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument(std::string(op) + ": dimension mismatch");
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, cplx(0.0, 0.0)) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_)
    throw std::invalid_argument("ComplexMatrix: entry count does not match rows*cols");
  if (!all_finite()) throw std::invalid_argument("ComplexMatrix: non-finite entry");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const cplx> d) {
  ComplexMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = std::conj((*this)(r, c));
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

bool ComplexMatrix::all_finite() const {
  for (const auto& z : data_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

std::vector<cplx> ComplexMatrix::apply(std::span<const cplx> v) const {
  if (v.size() != cols_) throw std::invalid_argument("apply: dimension mismatch");
  std::vector<cplx> y(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    cplx acc = 0.0;
    for (std::size_t c = 0; c < cols_; ++c) acc += (*this)(r, c) * v[c];
    y[r] = acc;
  }
  return y;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matmul: dimension mismatch");
  ComplexMatrix p(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t l = 0; l < a.cols_; ++l) {
      const cplx ail = a(i, l);
      for (std::size_t j = 0; j < b.cols_; ++j) p(i, j) += ail * b(l, j);
    }
  return p;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "add");
  ComplexMatrix s = a;
  for (std::size_t i = 0; i < s.data_.size(); ++i) s.data_[i] += b.data_[i];
  return s;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "subtract");
  ComplexMatrix s = a;
  for (std::size_t i = 0; i < s.data_.size(); ++i) s.data_[i] -= b.data_[i];
  return s;
}

ComplexMatrix operator*(cplx s, const ComplexMatrix& a) {
  ComplexMatrix r = a;
  for (auto& z : r.data_) z *= s;
  return r;
}

ComplexMatrix gram(const ComplexMatrix& h) {
  if (h.rows() > h.cols())
    throw std::invalid_argument("gram: need rows <= cols (K <= N)");
  const std::size_t k = h.rows();
  ComplexMatrix g(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      cplx acc = 0.0;
      for (std::size_t n = 0; n < h.cols(); ++n) acc += h(i, n) * std::conj(h(j, n));
      g(i, j) = acc;
      g(j, i) = std::conj(acc);
    }
    g(i, i) = g(i, i).real();
  }
  return g;
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  const double scale = tol * std::max(a.frobenius_norm(), 1e-300);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.cols(); ++j)
      if (std::abs(a(i, j) - std::conj(a(j, i))) > scale) return false;
  return true;
}

ComplexMatrix hermitian_inverse(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("hermitian_inverse: matrix not square");
  if (!a.all_finite()) throw std::invalid_argument("hermitian_inverse: non-finite entry");
  if (!is_hermitian(a)) throw std::invalid_argument("hermitian_inverse: matrix not Hermitian");
  const std::size_t n = a.rows();
  const double norm = a.frobenius_norm();
  const double pivot_floor = 1e-12 * norm;
  if (n == 0) return a;
  if (norm == 0.0) throw NotInvertible("hermitian_inverse: zero matrix is not invertible");

  // A = L L^H, L lower triangular with positive real diagonal.
  ComplexMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j).real();
    for (std::size_t q = 0; q < j; ++q) d -= std::norm(l(j, q));
    if (!(d > pivot_floor))
      throw NotInvertible("hermitian_inverse: not invertible (pivot below threshold)");
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      cplx acc = a(i, j);
      for (std::size_t q = 0; q < j; ++q) acc -= l(i, q) * std::conj(l(j, q));
      l(i, j) = acc / ljj;
    }
  }

  // inv(L) by forward substitution, then A^{-1} = inv(L)^H inv(L).
  ComplexMatrix li(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    li(c, c) = 1.0 / l(c, c).real();
    for (std::size_t i = c + 1; i < n; ++i) {
      cplx acc = 0.0;
      for (std::size_t q = c; q < i; ++q) acc -= l(i, q) * li(q, c);
      li(i, c) = acc / l(i, i).real();
    }
  }
  ComplexMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      cplx acc = 0.0;
      for (std::size_t q = j; q < n; ++q) acc += std::conj(li(q, i)) * li(q, j);
      inv(i, j) = acc;
      inv(j, i) = std::conj(acc);
    }
  for (std::size_t i = 0; i < n; ++i) inv(i, i) = inv(i, i).real();
  return inv;
}

ComplexMatrix right_pseudo_inverse(const ComplexMatrix& h) {
  return h.adjoint() * hermitian_inverse(gram(h));
}

}  // namespace cirate
