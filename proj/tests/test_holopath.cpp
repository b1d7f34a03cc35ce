#include <doctest.h>

#include "hqc/engine.hpp"
#include "hqc/holopath.hpp"
#include "hqc/units.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

using namespace hqc;

namespace {

const double kOm = units::mhz(10);

// Holonomy of the circle path by a plain trapezoid rule on the closed-form path.
double trapezoid_holonomy(double gamma_seg, double tau) {
  const double l = std::sqrt(2 * kPi * gamma_seg - gamma_seg * gamma_seg) / (kPi - gamma_seg);
  const int n = 200000;
  double sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double t = tau * i / n;
    const double s = std::sin(kPi * t / (2 * tau));
    const double db = kPi * kPi / (2 * tau) * std::sin(kPi * t / tau);
    const double a = 2 * std::atan(l * std::sin(kPi * s * s));
    sum += (i == 0 || i == n ? 0.5 : 1.0) * 0.5 * db * (1 - std::cos(a));
  }
  return sum * tau / n;
}

CMatrix computational_block(const CMatrix& u) {
  const std::size_t idx[] = {0, 1};
  return submatrix(u, idx);
}

}  // namespace

TEST_CASE("calibrated single-segment durations at 2pi x 10 MHz") {
  CHECK(std::abs(composite(gates::S(), 1, kOm)[0].tau - 63.45) < 0.1);
  CHECK(std::abs(composite(gates::T(), 1, kOm)[0].tau - 43.67) < 0.1);
  CHECK(std::abs(composite(gates::SqrtH(), 1, kOm)[0].tau - 58.62) < 0.1);
}

TEST_CASE("segment peak equals the requested Rabi bound") {
  const auto seg = make_segment(kPi / 2, 0.0, kOm);
  const Waveforms w(seg, gates::S());
  double peak = 0.0;
  for (int i = 0; i <= 20000; ++i) peak = std::max(peak, w.at(seg.tau * i / 20000).omega_e);
  CHECK(std::abs(peak - kOm) / kOm < 1e-6);
}

TEST_CASE("holonomy angle matches an independent trapezoid and the request") {
  for (double g : {kPi / 8, kPi / 4, kPi / 2, 2.5}) {
    const auto seg = make_segment(g, 0.0, kOm);
    CHECK(std::abs(holonomy_angle(seg) - g) < 1e-6);
    CHECK(std::abs(trapezoid_holonomy(g, seg.tau) - g) < 1e-6);
  }
}

TEST_CASE("ell closed form and pole handling") {
  CHECK(ell(kPi / 2) == doctest::Approx(std::sqrt(3.0)));
  CHECK_THROWS_AS(ell(kPi), PoleError);
  CHECK_THROWS_AS(ell(kPi + 1e-8), PoleError);
  CHECK_THROWS_AS(ell(-0.1), std::invalid_argument);
  CHECK(ell(4.0) < 0.0);
  CHECK_THROWS_AS(composite(gates::H(), 1, kOm), PoleError);
}

TEST_CASE("path is defined only on the segment") {
  const auto seg = make_segment(kPi / 2, 0.0, kOm);
  CHECK_NOTHROW(path(seg.tau, seg));
  CHECK_THROWS_AS(path(-1.0, seg), std::out_of_range);
  CHECK_THROWS_AS(path(seg.tau * 1.01, seg), std::out_of_range);
}

TEST_CASE("waveform identities") {
  const auto seg = make_segment(kPi / 2, 0.0, kOm);
  const Waveforms w(seg, gates::SqrtH());
  const auto s = w.at(0.3 * seg.tau);
  CHECK(std::abs(s.delta + s.beta_dot * (1 + std::cos(s.alpha))) < 1e-14);
  CHECK(std::abs(s.zeta_dot - s.beta_dot * (3 + std::cos(s.alpha)) / 2) < 1e-14);
  const double oe = 0.5 * std::hypot(s.beta_dot * std::sin(s.alpha), s.alpha_dot);
  CHECK(std::abs(s.omega_e - oe) < 1e-14);
  CHECK(std::abs(s.omega0 - oe * std::sin(kPi / 8)) < 1e-14);
  CHECK(std::abs(s.omega1 - oe * std::cos(kPi / 8)) < 1e-14);
  CHECK(std::abs(std::abs(w.at(0.0).chi) - kPi / 2) < 1e-9);
  CHECK(std::abs(std::abs(w.at(seg.tau).chi) - kPi / 2) < 1e-9);
}

TEST_CASE("error-free gates equal their targets up to a global phase") {
  const std::pair<GateSpec, int> cases[] = {{gates::S(), 1},  {gates::T(), 1}, {gates::SqrtH(), 1},
                                            {gates::H(), 2},  {gates::T(), 2}, {gates::T(), 10},
                                            {GateSpec{1.1, 0.7, 2.0}, 3}};
  for (const auto& [spec, n] : cases) {
    const CMatrix u = propagate_unitary(hamiltonian_schedule(spec, composite(spec, n, kOm)));
    CHECK(phase_insensitive_distance(computational_block(u), target_unitary(spec)) < 1e-6);
    CHECK(max_abs(computational_block(u) - holonomy_unitary(spec)) < 1e-6);
  }
}

TEST_CASE("composite structure") {
  const auto segs = composite(gates::T(), 2, kOm);
  REQUIRE(segs.size() == 2);
  CHECK(segs[0].gamma_seg == doctest::Approx(kPi / 8));
  CHECK(segs[0].beta0 == 0.0);
  CHECK(segs[1].beta0 == doctest::Approx(kPi));
  const auto many = composite(gates::T(), 40, kOm);
  CHECK(std::atan(many[0].ell) < std::atan(segs[0].ell));
}

TEST_CASE("frame is orthonormal and rebuilds the Hamiltonian") {
  const GateSpec spec{1.1, 0.7, 2.0};
  const auto segs = composite(spec, 2, kOm);
  const auto h = hamiltonian_schedule(spec, segs);
  double worst = 0.0;
  for (std::size_t s = 0; s < 2; ++s) {
    const AuxFrame f(segs[s], spec);
    const double t0 = s ? segs[0].tau : 0.0;
    for (double x : {0.1, 0.37, 0.5, 0.81}) {
      const double t = x * segs[s].tau;
      CHECK(f.gram_deviation(t) < 1e-12);
      worst = std::max(worst, max_abs(f.reconstruct_hamiltonian(t) - h.eval(t0 + t)));
    }
  }
  CHECK(worst < 1e-7);
}

TEST_CASE("verify_segment rejects a tampered segment") {
  auto seg = make_segment(kPi / 2, 0.0, kOm);
  CHECK_NOTHROW(verify_segment(seg));
  seg.ell *= 1.01;
  CHECK_THROWS_AS(verify_segment(seg), InvariantError);
}

TEST_CASE("orange-slice baseline") {
  const double tau = 2 * kPi / kOm;
  CHECK(tau == doctest::Approx(100.0));
  for (auto spec : {gates::S(), gates::T(), gates::SqrtH()}) {
    const Baseline b = nhqc_baseline(spec, kOm, tau);
    const CMatrix u = propagate_unitary(b.schedule);
    CHECK(phase_insensitive_distance(computational_block(u), target_unitary(spec)) < 1e-6);
  }
  CHECK_THROWS_AS(nhqc_baseline(gates::S(), kOm, 90.0), std::invalid_argument);
}

TEST_CASE("waveform CSV") {
  std::ostringstream os;
  write_waveform_csv(os, gates::T(), composite(gates::T(), 2, kOm), 5);
  const std::string s = os.str();
  CHECK(s.rfind("t_ns,Omega0_rad_ns,Omega1_rad_ns,phase0_rad,phase1_rad,Delta_rad_ns,segment,beta0_rad\n", 0) == 0);
  CHECK(std::count(s.begin(), s.end(), '\n') == 11);
}
