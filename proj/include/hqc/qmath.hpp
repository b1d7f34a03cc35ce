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

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

/// Dense complex linear algebra for small Hilbert spaces.
///
/// Basis ordering used throughout the toolkit: a single atom is
/// {|0>, |1>, |e>} (|e> is written |r> for Rydberg atoms). Multi-atom
/// spaces are Kronecker products with the control atom(s) first and the
/// target last, so the index of |c, t> is c * 3 + t.
namespace hqc {

using cplx = std::complex<double>;

inline constexpr cplx kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Row-major dense complex matrix.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols);
  CMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static CMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static CMatrix identity(std::size_t n);
  /// |i><j| on an n-dimensional space.
  static CMatrix unit(std::size_t n, std::size_t i, std::size_t j);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  bool empty() const { return data_.empty(); }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<cplx> data() { return data_; }
  std::span<const cplx> data() const { return data_; }
  std::span<cplx> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const cplx> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  CMatrix adjoint() const;
  CMatrix transpose() const;
  cplx trace() const;

  CMatrix& operator+=(const CMatrix& other);
  CMatrix& operator-=(const CMatrix& other);
  CMatrix& operator*=(cplx s);

  bool operator==(const CMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator*(cplx s, CMatrix a);
CMatrix operator*(CMatrix a, cplx s);

/// State vector. `normalized()` enforces the 1e-12 norm invariant.
class Ket {
 public:
  Ket() = default;
  explicit Ket(std::size_t dim) : amps_(dim, cplx{0.0, 0.0}) {}
  Ket(std::initializer_list<cplx> amps) : amps_(amps) {}
  explicit Ket(std::vector<cplx> amps) : amps_(std::move(amps)) {}

  static Ket basis(std::size_t dim, std::size_t k);

  std::size_t dim() const { return amps_.size(); }
  cplx& operator[](std::size_t k) { return amps_[k]; }
  const cplx& operator[](std::size_t k) const { return amps_[k]; }
  std::span<const cplx> amplitudes() const { return amps_; }

  double norm() const;
  Ket normalized() const;
  bool is_normalized(double tol = 1e-12) const;

  /// <this|other>
  cplx inner(const Ket& other) const;
  /// |this><this|
  CMatrix projector() const;
  CMatrix as_column() const;

 private:
  std::vector<cplx> amps_;
};

Ket operator*(const CMatrix& m, const Ket& v);
Ket kron(const Ket& a, const Ket& b);

CMatrix kron(const CMatrix& a, const CMatrix& b);

double max_abs(const CMatrix& m);
double frobenius_norm(const CMatrix& m);
/// Max-abs-row-sum norm. Bounds the spectral norm from above for Hermitian input.
double inf_norm(const CMatrix& m);
double hermiticity_deviation(const CMatrix& m);
/// max |U^dagger U - I|
double unitarity_deviation(const CMatrix& u);

/// Expectation <psi|m|psi>.
cplx expectation(const CMatrix& m, const Ket& psi);

/// Smallest max-entry distance between a and e^{i phi} b over phi.
/// The optimal phase is the argument of tr(b^dagger a).
double phase_insensitive_distance(const CMatrix& a, const CMatrix& b);

/// Restricts m to the given index set (rows and columns).
CMatrix submatrix(const CMatrix& m, std::span<const std::size_t> indices);
/// Inverse of submatrix: places block into a zero n x n matrix.
CMatrix embed(const CMatrix& block, std::size_t n, std::span<const std::size_t> indices);

/// Eigenvalues (ascending) of the Hermitian part of m.
std::vector<double> hermitian_eigenvalues(const CMatrix& m);

/// exp(-i h t) for Hermitian h, by eigendecomposition.
/// Throws std::invalid_argument when h deviates from Hermitian by more than 1e-10.
CMatrix expm_skew(const CMatrix& h, double t);

struct DensityReport {
  double trace_dev = 0.0;  ///< |tr rho - 1|
  double herm_dev = 0.0;   ///< max |rho - rho^dagger|
  double min_eig = 0.0;    ///< smallest eigenvalue of the Hermitian part
};

DensityReport dm_checks(const CMatrix& rho);

namespace pauli {
CMatrix I();
CMatrix X();
CMatrix Y();
CMatrix Z();
}  // namespace pauli

}  // namespace hqc
