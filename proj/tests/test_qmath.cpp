#include <doctest.h>

#include "oracles.hpp"

#include "hqc/qmath.hpp"

#include <cmath>

using namespace hqc;

namespace {

oracle::Mat to_oracle(const CMatrix& m) {
  oracle::Mat o(m.rows(), std::vector<cplx>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) o[i][j] = m(i, j);
  return o;
}

double distance(const CMatrix& a, const oracle::Mat& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) d = std::max(d, std::abs(a(i, j) - b[i][j]));
  return d;
}

CMatrix random_hermitian(std::size_t n, unsigned seed) {
  CMatrix h(n, n);
  unsigned s = seed;
  auto next = [&s] {
    s = s * 1103515245u + 12345u;
    return static_cast<double>((s >> 8) & 0xffff) / 65535.0 - 0.5;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const cplx v = i == j ? cplx{next(), 0.0} : cplx{next(), next()};
      h(i, j) = v;
      h(j, i) = std::conj(v);
    }
  return h;
}

}  // namespace

TEST_CASE("kron of Paulis matches the explicit 4x4") {
  const CMatrix xz = kron(pauli::X(), pauli::Z());
  const CMatrix expect{{0, 0, 1, 0}, {0, 0, 0, -1}, {1, 0, 0, 0}, {0, -1, 0, 0}};
  CHECK(max_abs(xz - expect) == 0.0);
}

TEST_CASE("dimension mismatches throw") {
  CHECK_THROWS_AS(pauli::X() * CMatrix::identity(3), DimensionError);
  CHECK_THROWS_AS(pauli::X() + CMatrix::identity(3), DimensionError);
}

TEST_CASE("expm_skew agrees with a Taylor-series exponential") {
  for (std::size_t n : {2u, 3u, 9u}) {
    const CMatrix h = random_hermitian(n, static_cast<unsigned>(n) * 7u);
    for (double t : {0.1, 1.7, 12.0}) {
      const CMatrix u = expm_skew(h, t);
      CHECK(distance(u, oracle::expm_taylor(to_oracle(h), t)) < 1e-11);
      CHECK(unitarity_deviation(u) < 1e-12);
    }
  }
}

TEST_CASE("expm_skew of sigma_x is a Rabi rotation") {
  const double t = 0.37;
  const CMatrix u = expm_skew(pauli::X(), t);
  CHECK(std::abs(u(0, 0) - std::cos(t)) < 1e-14);
  CHECK(std::abs(u(0, 1) - cplx{0.0, -std::sin(t)}) < 1e-14);
}

TEST_CASE("hermitian eigenvalues") {
  const auto e = hermitian_eigenvalues(pauli::Y());
  REQUIRE(e.size() == 2);
  CHECK(e[0] == doctest::Approx(-1.0));
  CHECK(e[1] == doctest::Approx(1.0));
  CHECK_THROWS_AS(expm_skew(CMatrix{{0, 1}, {0, 0}}, 1.0), std::invalid_argument);
}

TEST_CASE("phase-insensitive distance ignores a global phase only") {
  const CMatrix a = expm_skew(random_hermitian(3, 5), 0.9);
  CHECK(phase_insensitive_distance(a, std::exp(cplx{0.0, 1.3}) * a) < 1e-13);
  CHECK(phase_insensitive_distance(pauli::X(), pauli::Z()) > 0.5);
}

TEST_CASE("submatrix and embed are inverse on the chosen indices") {
  const CMatrix m = random_hermitian(3, 11);
  const std::size_t idx[] = {0, 2};
  const CMatrix s = submatrix(m, idx);
  CHECK(s(1, 0) == m(2, 0));
  const CMatrix e = embed(s, 3, idx);
  CHECK(e(2, 2) == m(2, 2));
  CHECK(e(1, 1) == cplx{0.0, 0.0});
}

TEST_CASE("density checks") {
  const Ket plus = Ket{1.0, 1.0}.normalized();
  const auto r = dm_checks(plus.projector());
  CHECK(r.trace_dev < 1e-15);
  CHECK(r.herm_dev == 0.0);
  CHECK(r.min_eig > -1e-15);
  const auto bad = dm_checks(CMatrix{{1.5, 0}, {0, -0.5}});
  CHECK(bad.min_eig == doctest::Approx(-0.5));
}
