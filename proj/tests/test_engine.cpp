#include <doctest.h>

#include "oracles.hpp"

#include "hqc/engine.hpp"

#include <cmath>

using namespace hqc;

namespace {

HamiltonianSchedule sin2_drive(double amp, double t_end) {
  HamiltonianSchedule h(2, 0.0, t_end);
  h.add_drive({"drive", {{0, 1, cplx{1.0, 0.0}}},
               [amp, t_end](double t) {
                 const double s = std::sin(kPi * t / t_end);
                 return cplx{amp * s * s, 0.0};
               },
               HamiltonianSchedule::kAllSegments});
  h.add_error_projector({{1}, HamiltonianSchedule::kAllSegments});
  return h;
}

HamiltonianSchedule idle(std::size_t dim, double t_end) {
  HamiltonianSchedule h(dim, 0.0, t_end);
  h.add_static(CMatrix(dim, dim));
  return h;
}

NoiseModel single(const CMatrix& op, double rate) { return {{{"op", op, rate}}}; }

}  // namespace

TEST_CASE("static Hamiltonian propagates to the matrix exponential") {
  const CMatrix hm{{0.3, cplx{0.1, -0.2}, 0.0}, {cplx{0.1, 0.2}, -0.1, 0.05}, {0.0, 0.05, 0.7}};
  HamiltonianSchedule h(3, 0.0, 25.0);
  h.add_static(hm);
  oracle::Mat o(3, std::vector<cplx>(3));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) o[i][j] = hm(i, j);
  const auto ref = oracle::expm_taylor(o, 25.0);
  const CMatrix u = propagate_unitary(h, 8000);
  double d = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) d = std::max(d, std::abs(u(i, j) - ref[i][j]));
  CHECK(d < 1e-9);
}

TEST_CASE("commuting sin^2 drive gives a rotation by its area") {
  const double amp = 0.2, tend = 40.0;
  const CMatrix u = propagate_unitary(sin2_drive(amp, tend), 4000);
  const double area = amp * tend / 2;
  CHECK(std::abs(u(0, 0) - std::cos(area)) < 1e-10);
  CHECK(std::abs(u(1, 0) - cplx{0.0, -std::sin(area)}) < 1e-10);
}

TEST_CASE("amplitude damping follows exp(-Gamma t)") {
  const double g = 0.01, tend = 80.0;
  const CMatrix rho0 = Ket{1.0, 1.0}.normalized().projector();
  const CMatrix rho = propagate_lindblad(idle(2, tend), single(CMatrix::unit(2, 0, 1), g), rho0);
  CHECK(std::abs(rho(1, 1).real() - 0.5 * std::exp(-g * tend)) < 1e-10);
  CHECK(std::abs(std::abs(rho(0, 1)) - 0.5 * std::exp(-g * tend / 2)) < 1e-10);
}

TEST_CASE("sigma_z dephasing decays coherence as exp(-2 Gamma t)") {
  const double g = 0.004, tend = 100.0;
  const CMatrix rho0 = Ket{1.0, 1.0}.normalized().projector();
  const CMatrix rho = propagate_lindblad(idle(2, tend), single(pauli::Z(), g), rho0);
  CHECK(std::abs(rho(0, 1).real() - 0.5 * std::exp(-2 * g * tend)) < 1e-10);
  CHECK(std::abs(rho(0, 0).real() - 0.5) < 1e-13);
}

TEST_CASE("trace and positivity along a driven noisy evolution") {
  const auto h = sin2_drive(0.3, 30.0);
  const NoiseModel n{{{"decay", CMatrix::unit(2, 0, 1), 0.02}, {"z", pauli::Z(), 0.01}}};
  double worst_trace = 0.0, worst_eig = 0.0;
  propagate_lindblad(h, n, Ket::basis(2, 0).projector(), {}, [&](double, std::span<const CMatrix> s) {
    const auto r = dm_checks(s[0]);
    worst_trace = std::max(worst_trace, r.trace_dev);
    worst_eig = std::min(worst_eig, r.min_eig);
  });
  CHECK(worst_trace < 1e-12);
  CHECK(worst_eig > -1e-12);
}

TEST_CASE("invalid initial density matrices are rejected") {
  CHECK_THROWS(propagate_lindblad(idle(2, 1.0), {}, CMatrix{{2.0, 0}, {0, 0}}));
  CHECK_THROWS(propagate_lindblad(idle(2, 1.0), {}, CMatrix{{0.5, 0.5}, {0, 0.5}}));
}

TEST_CASE("serial and parallel evolution are bit-identical") {
  const auto h = sin2_drive(0.3, 30.0);
  const NoiseModel n{{{"decay", CMatrix::unit(2, 0, 1), 0.02}}};
  std::vector<CMatrix> a{Ket::basis(2, 0).projector(), Ket{1.0, kI}.normalized().projector(), pauli::X()};
  std::vector<CMatrix> b = a;
  evolve_density(h, n, a, {}, {}, Execution::Serial);
  evolve_density(h, n, b, {}, {}, Execution::Parallel);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("noise-free channel equals the unitary channel") {
  const auto h = sin2_drive(0.25, 30.0);
  const std::vector<std::size_t> comp{0, 1};
  StepControl sc;
  sc.fixed_steps = 4000;
  const Channel c = compute_channel(h, {}, comp, sc, false);
  const Channel u = unitary_channel(propagate_unitary(h, sc), comp, false);
  REQUIRE(c.images.size() == u.images.size());
  for (std::size_t k = 0; k < c.images.size(); ++k) CHECK(max_abs(c.images[k] - u.images[k]) < 1e-10);
}

TEST_CASE("channel basis slots") {
  const std::size_t comp[] = {0, 1};
  const auto full = channel_basis(3, comp, false);
  CHECK(full.size() == 4);
  const auto real = channel_basis(3, comp, true);
  CHECK(real.size() == 3);
}

TEST_CASE("apply_errors scales drives and shifts tagged levels") {
  const auto h = sin2_drive(0.2, 10.0);
  const auto e = apply_errors(h, {0.1, 0.05, EtaMode::Absolute}, 1.0);
  const CMatrix a = h.eval(5.0), b = e.eval(5.0);
  CHECK(std::abs(b(0, 1) - 1.1 * a(0, 1)) < 1e-15);
  CHECK(std::abs(b(1, 1) - 0.05) < 1e-15);
  const auto f = apply_errors(h, {0.0, 0.05, EtaMode::Fractional}, 2.0);
  CHECK(std::abs(f.eval(5.0)(1, 1) - 0.1) < 1e-15);
  CHECK_THROWS_AS(apply_errors(idle(2, 1.0), {0.1, 0.0}, 1.0), std::invalid_argument);
}

TEST_CASE("step rule honours the floor, refine and fixed counts") {
  const auto h = sin2_drive(1e-6, 10.0);
  CHECK(plan_steps(h, {}).front() == 100);
  StepControl sc;
  sc.refine = 3;
  CHECK(plan_steps(h, sc).front() == 300);
  sc.fixed_steps = 17;
  CHECK(plan_steps(h, sc).front() == 17);
}

TEST_CASE("halving the step converges at fourth order") {
  const auto h = sin2_drive(0.4, 20.0);
  const double area = 0.4 * 20.0 / 2;
  auto err = [&](int n) { return std::abs(propagate_unitary(h, n)(0, 0) - std::cos(area)); };
  const double e1 = err(100), e2 = err(200);
  CHECK(e1 / e2 > 12.0);
  CHECK(e1 / e2 < 20.0);
}

TEST_CASE("Hermiticity of the assembled Hamiltonian is enforced") {
  HamiltonianSchedule h(2, 0.0, 1.0);
  h.add_diagonal({"bad", {0}, [](double) { return std::nan(""); }, HamiltonianSchedule::kAllSegments});
  CHECK_THROWS_AS(propagate_unitary(h), InvariantError);
}
