#include <doctest.h>

#include "hqc/dyngates.hpp"
#include "hqc/metrics.hpp"
#include "hqc/units.hpp"

#include <cmath>

using namespace hqc;

namespace {

const double kOm = units::mhz(10);

CMatrix hadamard() {
  const double s = 1 / std::sqrt(2.0);
  return CMatrix{{s, s}, {s, -s}};
}

}  // namespace

TEST_CASE("average Rabi frequency of trivial pulses") {
  CHECK(avg_rabi([](double) { return 0.3; }, [](double) { return 0.3; }, 7.0) == doctest::Approx(0.3));
  const auto seg = make_segment(kPi / 2, 0.0, kOm);
  const Waveforms w(seg, gates::S());
  const double one_sided = avg_rabi(gates::S(), {seg});
  const double direct = avg_rabi([&](double t) { return w.at(t).omega_e; }, [](double) { return 0.0; }, seg.tau);
  CHECK(one_sided == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("Simpson and Gauss averages agree") {
  const auto segs = composite(gates::SqrtH(), 1, kOm);
  CHECK(std::abs(avg_rabi(gates::SqrtH(), segs, QuadRule::Simpson) - avg_rabi(gates::SqrtH(), segs, QuadRule::Gauss)) <
        1e-9);
}

TEST_CASE("H-gate parameters satisfy the defining constraints") {
  for (double j : {1.0, 17.0, 32.0, 66.0, 1000.0, 1e4}) {
    const auto p = solve_h_params(j, units::mhz(4.8));
    CHECK(p.r > 1.0);
    for (double r : h_param_residuals(p)) CHECK(r < 1e-9);
    // independent restatement: j^2 r (r^2 - 1) = r^2 + 1 (r^2 - 1 cancels in double beyond j ~ 1e3)
    if (j <= 1000.0) CHECK(std::abs(j * j * p.r * (p.r * p.r - 1) - (p.r * p.r + 1)) / (p.r * p.r + 1) < 1e-9);
    CHECK(std::abs(p.delta1 - j * p.omega1) < 1e-12 * p.delta1);
  }
  CHECK(solve_h_params(1e4, 1.0).r - 1.0 < 1e-3);
  CHECK_THROWS(solve_h_params(0.0, 1.0));
}

TEST_CASE("H-gate default drive is the composite-H average") {
  const double v = h_gate_avg_rabi(kOm);
  CHECK(v == doctest::Approx(avg_rabi(gates::H(), composite(gates::H(), 2, kOm))));
  CHECK(units::to_mhz(v) == doctest::Approx(4.8253).epsilon(1e-4));
}

TEST_CASE("noise-free dynamical H gate converges with detuning") {
  double last = 1.0;
  for (double j : {20.0, 50.0, 100.0, 200.0}) {
    const auto p = solve_h_params(j, h_gate_avg_rabi(kOm));
    const auto g = dyn_h_gate(p, {}, {}, kOm);
    const double infid = 1.0 - fidelity_1q(g.channel, g.ideal, 201).fidelity;
    CHECK(infid < last);
    last = infid;
  }
  CHECK(last < 1e-3);
  const auto p = solve_h_params(66, 1.0);
  CHECK(phase_insensitive_distance(dyn_h_frame(p).adjoint() * hadamard(),
                                   dyn_h_gate(p, {}, {}, kOm).ideal) < 1e-12);
}

TEST_CASE("T-gate effective composition is T") {
  const auto p = make_t_params(17, kOm);
  CHECK(phase_insensitive_distance(dyn_t_effective(p), target_unitary(gates::T())) < 1e-10);
  CHECK(p.delta == doctest::Approx(17 * kOm));
  // area of Omega_m^2 sin^4 / Delta over a step
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(3 * kOm * kOm * p.step_duration(i) / (8 * p.delta) == doctest::Approx(p.areas[i]).epsilon(1e-12));
}

TEST_CASE("T gate: adiabatic limit and leakage bound") {
  const auto far = dyn_t_gate(make_t_params(500, kOm), {}, {});
  CHECK(fidelity_1q(far.channel, far.ideal, 201).fidelity > 0.9999);
  for (double k : {10.0, 20.0}) {
    const auto p = make_t_params(k, kOm);
    const auto h = dyn_t_schedule(p);
    const double bound = 4.0 / (k * k);
    for (std::size_t in : {0u, 1u}) {
      const auto tr = excited_population(h, {}, Ket::basis(3, in));
      double t_end = 0.0;
      for (std::size_t s = 0; s < 3; ++s) {
        t_end += p.step_duration(s);
        const auto it = std::lower_bound(tr.t.begin(), tr.t.end(), t_end - 1e-9);
        CHECK(tr.population[it - tr.t.begin()] < bound);
      }
    }
  }
}
