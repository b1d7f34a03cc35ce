// Copyright 2026 The HQC Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hqc/qmath.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

namespace hqc {

namespace {

void require_same_shape(const CMatrix& a, const CMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(op) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
  }
}

Eigen::MatrixXcd to_eigen(const CMatrix& m) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
  return out;
}

}  // namespace

CMatrix::CMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, cplx{0.0, 0.0}) {}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("CMatrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t k = 0; k < n; ++k) m(k, k) = 1.0;
  return m;
}

CMatrix CMatrix::unit(std::size_t n, std::size_t i, std::size_t j) {
  CMatrix m(n, n);
  m(i, j) = 1.0;
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

CMatrix CMatrix::transpose() const {
  CMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

cplx CMatrix::trace() const {
  if (!square()) throw DimensionError("trace: matrix is not square");
  cplx s{0.0, 0.0};
  for (std::size_t k = 0; k < rows_; ++k) s += (*this)(k, k);
  return s;
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
  require_same_shape(*this, other, "operator+=");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& other) {
  require_same_shape(*this, other, "operator-=");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
  for (auto& v : data_) v *= s;
  return *this;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator*(cplx s, CMatrix a) { return a *= s; }
CMatrix operator*(CMatrix a, cplx s) { return a *= s; }

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("matmul: inner dimensions " + std::to_string(a.cols()) + " and " +
                         std::to_string(b.rows()) + " differ");
  }
  CMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto dst = out.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{0.0, 0.0}) continue;
      auto src = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) dst[j] += aik * src[j];
    }
  }
  return out;
}

Ket Ket::basis(std::size_t dim, std::size_t k) {
  if (k >= dim) throw DimensionError("Ket::basis: index out of range");
  Ket v(dim);
  v[k] = 1.0;
  return v;
}

double Ket::norm() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

Ket Ket::normalized() const {
  const double n = norm();
  if (n == 0.0) throw std::invalid_argument("Ket::normalized: zero vector");
  Ket out = *this;
  for (auto& a : out.amps_) a /= n;
  return out;
}

bool Ket::is_normalized(double tol) const { return std::abs(norm() - 1.0) < tol; }

cplx Ket::inner(const Ket& other) const {
  if (dim() != other.dim()) throw DimensionError("Ket::inner: dimension mismatch");
  cplx s{0.0, 0.0};
  for (std::size_t k = 0; k < amps_.size(); ++k) s += std::conj(amps_[k]) * other.amps_[k];
  return s;
}

CMatrix Ket::projector() const {
  CMatrix m(dim(), dim());
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j) m(i, j) = amps_[i] * std::conj(amps_[j]);
  return m;
}

CMatrix Ket::as_column() const {
  CMatrix m(dim(), 1);
  for (std::size_t i = 0; i < dim(); ++i) m(i, 0) = amps_[i];
  return m;
}

Ket operator*(const CMatrix& m, const Ket& v) {
  if (m.cols() != v.dim()) throw DimensionError("matrix-ket product: dimension mismatch");
  Ket out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    cplx s{0.0, 0.0};
    for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

Ket kron(const Ket& a, const Ket& b) {
  Ket out(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) out[i * b.dim() + j] = a[i] * b[j];
  return out;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar)
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const cplx s = a(ar, ac);
      for (std::size_t br = 0; br < b.rows(); ++br)
        for (std::size_t bc = 0; bc < b.cols(); ++bc)
          out(ar * b.rows() + br, ac * b.cols() + bc) = s * b(br, bc);
    }
  return out;
}

double max_abs(const CMatrix& m) {
  double best = 0.0;
  for (const auto& v : m.data()) best = std::max(best, std::abs(v));
  return best;
}

double frobenius_norm(const CMatrix& m) {
  double s = 0.0;
  for (const auto& v : m.data()) s += std::norm(v);
  return std::sqrt(s);
}

double inf_norm(const CMatrix& m) {
  double best = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    double s = 0.0;
    for (const auto& v : m.row(r)) s += std::abs(v);
    best = std::max(best, s);
  }
  return best;
}

double hermiticity_deviation(const CMatrix& m) {
  if (!m.square()) throw DimensionError("hermiticity_deviation: matrix is not square");
  double best = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = r; c < m.cols(); ++c)
      best = std::max(best, std::abs(m(r, c) - std::conj(m(c, r))));
  return best;
}

double unitarity_deviation(const CMatrix& u) {
  return max_abs(u.adjoint() * u - CMatrix::identity(u.cols()));
}

cplx expectation(const CMatrix& m, const Ket& psi) { return psi.inner(m * psi); }

double phase_insensitive_distance(const CMatrix& a, const CMatrix& b) {
  require_same_shape(a, b, "phase_insensitive_distance");
  cplx overlap{0.0, 0.0};
  for (std::size_t k = 0; k < a.data().size(); ++k) overlap += std::conj(b.data()[k]) * a.data()[k];
  const cplx phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : cplx{1.0, 0.0};
  return max_abs(a - phase * b);
}

CMatrix submatrix(const CMatrix& m, std::span<const std::size_t> indices) {
  CMatrix out(indices.size(), indices.size());
  for (std::size_t i = 0; i < indices.size(); ++i)
    for (std::size_t j = 0; j < indices.size(); ++j) out(i, j) = m(indices[i], indices[j]);
  return out;
}

CMatrix embed(const CMatrix& block, std::size_t n, std::span<const std::size_t> indices) {
  if (block.rows() != indices.size() || block.cols() != indices.size())
    throw DimensionError("embed: block does not match index set");
  CMatrix out(n, n);
  for (std::size_t i = 0; i < indices.size(); ++i)
    for (std::size_t j = 0; j < indices.size(); ++j) out(indices[i], indices[j]) = block(i, j);
  return out;
}

std::vector<double> hermitian_eigenvalues(const CMatrix& m) {
  if (!m.square()) throw DimensionError("hermitian_eigenvalues: matrix is not square");
  const Eigen::MatrixXcd e = to_eigen(m);
  const Eigen::MatrixXcd herm = 0.5 * (e + e.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(herm, Eigen::EigenvaluesOnly);
  const auto& vals = solver.eigenvalues();
  return {vals.data(), vals.data() + vals.size()};
}

CMatrix expm_skew(const CMatrix& h, double t) {
  if (!h.square()) throw DimensionError("expm_skew: matrix is not square");
  if (hermiticity_deviation(h) > 1e-10)
    throw std::invalid_argument("expm_skew: generator is not Hermitian");
  const std::size_t n = h.rows();
  if (t == 0.0) return CMatrix::identity(n);

  const Eigen::MatrixXcd e = to_eigen(h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(0.5 * (e + e.adjoint()));
  const Eigen::MatrixXcd& v = solver.eigenvectors();
  Eigen::VectorXcd phases(n);
  for (std::size_t k = 0; k < n; ++k) phases(k) = std::exp(-kI * solver.eigenvalues()(k) * t);
  const Eigen::MatrixXcd u = v * phases.asDiagonal() * v.adjoint();

  CMatrix out(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out(r, c) = u(r, c);
  return out;
}

DensityReport dm_checks(const CMatrix& rho) {
  if (!rho.square()) throw DimensionError("dm_checks: matrix is not square");
  DensityReport r;
  r.trace_dev = std::abs(rho.trace() - 1.0);
  r.herm_dev = hermiticity_deviation(rho);
  r.min_eig = hermitian_eigenvalues(rho).front();
  return r;
}

namespace pauli {
CMatrix I() { return CMatrix::identity(2); }
CMatrix X() { return {{0.0, 1.0}, {1.0, 0.0}}; }
CMatrix Y() { return {{0.0, -kI}, {kI, 0.0}}; }
CMatrix Z() { return {{1.0, 0.0}, {0.0, -1.0}}; }
}  // namespace pauli

}  // namespace hqc
