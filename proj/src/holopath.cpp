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

#include "hqc/holopath.hpp"

#include "hqc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace hqc {

namespace {

PathPoint path_unchecked(double t, double tau, double beta0, double l) {
  const double x = kPi * t / (2.0 * tau);
  const double s = std::sin(x);
  const double dbeta = kPi * s * s;
  const double beta_dot = kPi * kPi / (2.0 * tau) * std::sin(kPi * t / tau);
  const double sb = std::sin(dbeta);
  const double alpha = 2.0 * std::atan(l * sb);
  const double alpha_dot = 2.0 * l * std::cos(dbeta) * beta_dot / (1.0 + l * l * sb * sb);
  return {alpha, beta0 + dbeta, alpha_dot, beta_dot};
}

double omega_e_of(const PathPoint& p) {
  const double x = p.beta_dot * std::sin(p.alpha);
  return 0.5 * std::sqrt(x * x + p.alpha_dot * p.alpha_dot);
}

Ket bright_state(const GateSpec& spec) {
  return Ket{std::sin(spec.theta / 2) * std::exp(-kI * spec.phi), cplx{-std::cos(spec.theta / 2), 0.0},
             cplx{0.0, 0.0}};
}

}  // namespace

double ell(double gamma_seg) {
  if (!(gamma_seg > 0.0 && gamma_seg < 2.0 * kPi))
    throw std::invalid_argument("ell: rotation angle must lie in (0, 2pi)");
  if (std::abs(gamma_seg - kPi) <= 1e-6)
    throw PoleError("ell: rotation angle pi is a pole; split the gate into a composite of N >= 2 segments");
  return std::sqrt(2.0 * kPi * gamma_seg - gamma_seg * gamma_seg) / (kPi - gamma_seg);
}

PathPoint path(double t, const PulseSegment& seg) {
  const double slack = 1e-12 * seg.tau;
  if (t < -slack || t > seg.tau + slack) throw std::out_of_range("path: t outside [0, tau]");
  return path_unchecked(std::clamp(t, 0.0, seg.tau), seg.tau, seg.beta0, seg.ell);
}

WaveSample Waveforms::at(double t) const {
  const PathPoint p = path(t, seg_);
  WaveSample w{};
  w.t = t;
  w.alpha = p.alpha;
  w.beta = p.beta;
  w.alpha_dot = p.alpha_dot;
  w.beta_dot = p.beta_dot;
  w.omega_e = omega_e_of(p);
  w.omega0 = w.omega_e * std::sin(spec_.theta / 2);
  w.omega1 = w.omega_e * std::cos(spec_.theta / 2);
  const bool positive = seg_.ell > 0.0;
  if (t <= 0.0) {
    w.chi = positive ? kPi / 2 : 3 * kPi / 2;
  } else if (t >= seg_.tau) {
    w.chi = positive ? -kPi / 2 : kPi / 2;
  } else {
    const double den = p.beta_dot * std::sin(p.alpha);
    // For ell < 0 the denominator is negative; shift the branch to stay continuous.
    w.chi = positive ? std::atan2(p.alpha_dot, den) : std::atan2(-p.alpha_dot, -den) + kPi;
  }
  w.delta = -p.beta_dot * (1.0 + std::cos(p.alpha));
  w.zeta_dot = p.beta_dot * (3.0 + std::cos(p.alpha)) / 2.0;
  w.phase0 = w.beta + w.chi + spec_.phi;
  w.phase1 = w.beta + w.chi + kPi;
  return w;
}

double Waveforms::zeta(double t) const {
  if (t <= 0.0) return 0.0;
  return quad::adaptive_simpson(
      [this](double s) {
        const PathPoint p = path_unchecked(s, seg_.tau, seg_.beta0, seg_.ell);
        return p.beta_dot * (3.0 + std::cos(p.alpha)) / 2.0;
      },
      0.0, std::min(t, seg_.tau), 1e-12);
}

Waveforms waveforms(const PulseSegment& seg, const GateSpec& spec) { return {seg, spec}; }

double calibrate_duration(double gamma_seg, double omega_m) {
  if (!(omega_m > 0.0)) throw std::invalid_argument("calibrate_duration: omega_m must be positive");
  const double l = ell(gamma_seg);
  // Omega_e scales as 1/tau, so calibrate the unit-duration profile.
  auto f = [l](double u) { return omega_e_of(path_unchecked(u, 1.0, 0.0, l)); };
  constexpr int kGrid = 10000;
  int best = 0;
  double fbest = -1.0;
  for (int i = 0; i <= kGrid; ++i) {
    const double v = f(static_cast<double>(i) / kGrid);
    if (v > fbest) {
      fbest = v;
      best = i;
    }
  }
  const double lo = std::max(0, best - 1) / static_cast<double>(kGrid);
  const double hi = std::min(kGrid, best + 1) / static_cast<double>(kGrid);
  const double u = quad::golden_max(f, lo, hi, 1e-12);
  return std::max(fbest, f(u)) / omega_m;
}

PulseSegment make_segment(double gamma_seg, double beta0, double omega_m) {
  PulseSegment s;
  s.gamma_seg = gamma_seg;
  s.beta0 = beta0;
  s.ell = ell(gamma_seg);
  s.omega_m = omega_m;
  s.tau = calibrate_duration(gamma_seg, omega_m);
  return s;
}

double holonomy_angle(const PulseSegment& seg) {
  return quad::adaptive_simpson(
      [&seg](double t) {
        const PathPoint p = path_unchecked(t, seg.tau, seg.beta0, seg.ell);
        return 0.5 * p.beta_dot * (1.0 - std::cos(p.alpha));
      },
      0.0, seg.tau, 1e-13);
}

void verify_segment(const PulseSegment& seg) {
  const double g = holonomy_angle(seg);
  if (std::abs(g - seg.gamma_seg) > 1e-6)
    throw InvariantError("segment holonomy " + std::to_string(g) + " differs from requested " +
                         std::to_string(seg.gamma_seg));
}

HamiltonianSchedule hamiltonian_schedule(const GateSpec& spec, const std::vector<PulseSegment>& segs) {
  if (segs.empty()) throw std::invalid_argument("hamiltonian_schedule: no segments");
  std::vector<double> starts{0.0};
  for (const auto& s : segs) starts.push_back(starts.back() + s.tau);
  HamiltonianSchedule h(3, 0.0, starts.back());
  for (std::size_t k = 1; k + 1 < starts.size(); ++k) h.add_boundary(starts[k]);

  const Ket b = bright_state(spec);
  std::vector<HamiltonianSchedule::Coupling> couplings;
  for (std::size_t i = 0; i < 2; ++i)
    if (b[i] != cplx{0.0, 0.0}) couplings.push_back({i, 2, b[i]});

  for (std::size_t k = 0; k < segs.size(); ++k) {
    const PulseSegment seg = segs[k];
    const double t0 = starts[k];
    const auto local = [seg, t0](double t) {
      return path_unchecked(std::clamp(t - t0, 0.0, seg.tau), seg.tau, seg.beta0, seg.ell);
    };
    // Omega_e e^{-i chi} = (beta_dot sin alpha - i alpha_dot) / 2, free of the chi branch.
    h.add_drive({"bright_drive", couplings,
                 [local](double t) {
                   const PathPoint p = local(t);
                   const cplx a{0.5 * p.beta_dot * std::sin(p.alpha), -0.5 * p.alpha_dot};
                   return a * std::exp(-kI * p.beta);
                 },
                 static_cast<int>(k)});
    h.add_diagonal({"detuning", {2},
                    [local](double t) {
                      const PathPoint p = local(t);
                      return -p.beta_dot * (1.0 + std::cos(p.alpha));
                    },
                    static_cast<int>(k)});
  }
  h.add_error_projector({{2}, HamiltonianSchedule::kAllSegments});
  h.set_excited_indices({2});
  return h;
}

CMatrix target_unitary(const GateSpec& spec) {
  const double nx = std::sin(spec.theta) * std::cos(spec.phi);
  const double ny = std::sin(spec.theta) * std::sin(spec.phi);
  const double nz = std::cos(spec.theta);
  const double c = std::cos(spec.gamma / 2), s = std::sin(spec.gamma / 2);
  CMatrix ns = cplx{nx, 0.0} * pauli::X() + cplx{ny, 0.0} * pauli::Y() + cplx{nz, 0.0} * pauli::Z();
  return cplx{c, 0.0} * pauli::I() + cplx{0.0, s} * ns;
}

CMatrix holonomy_unitary(const GateSpec& spec) {
  return std::exp(cplx{0.0, -spec.gamma / 2}) * target_unitary(spec);
}

double leg_factor(const GateSpec& spec) {
  return std::max(std::abs(std::sin(spec.theta / 2)), std::abs(std::cos(spec.theta / 2)));
}

std::vector<PulseSegment> composite(const GateSpec& spec, int n, double omega_m) {
  if (n < 1) throw std::invalid_argument("composite: N must be >= 1");
  const double g = spec.gamma / n;
  if (std::abs(g - kPi) <= 1e-6)
    throw PoleError("composite: segment angle gamma/N equals pi; choose a different N");
  std::vector<PulseSegment> segs;
  const PulseSegment odd = make_segment(g, 0.0, omega_m / leg_factor(spec));
  verify_segment(odd);
  for (int k = 0; k < n; ++k) {
    PulseSegment s = odd;
    s.beta0 = (k % 2 == 0) ? 0.0 : kPi;
    segs.push_back(s);
  }
  if (n > 1) verify_segment(segs[1]);

  CMatrix product = CMatrix::identity(2);
  const CMatrix piece = target_unitary({spec.theta, spec.phi, g});
  for (int k = 0; k < n; ++k) product = piece * product;
  if (max_abs(product - target_unitary(spec)) > 1e-12)
    throw InvariantError("composite: segment rotations do not compose to the target");
  return segs;
}

Baseline nhqc_baseline(const GateSpec& spec, double omega_m, double tau) {
  if (!(omega_m > 0.0 && tau > 0.0)) throw std::invalid_argument("nhqc_baseline: omega_m and tau must be positive");
  if (std::abs(omega_m * tau / 2.0 - kPi) > 1e-9 * kPi)
    throw std::invalid_argument("nhqc_baseline: pulse area omega_m * tau / 2 must equal pi");
  const Ket b = bright_state(spec);
  auto coupling = [&b](double phase) {
    CMatrix m(3, 3);
    for (std::size_t i = 0; i < 2; ++i) {
      m(i, 2) = b[i] * std::exp(-kI * phase);
      m(2, i) = std::conj(m(i, 2));
    }
    return m;
  };
  // Each half has area pi/2 and a time-independent operator, so its propagator is exact.
  const CMatrix u1 = expm_skew(coupling(0.0), kPi / 2);
  const std::size_t comp[] = {0, 1};
  double chosen = 0.0;
  bool found = false;
  for (double cand : {kPi + spec.gamma, kPi - spec.gamma}) {
    const CMatrix u = expm_skew(coupling(cand), kPi / 2) * u1;
    if (phase_insensitive_distance(submatrix(u, comp), target_unitary(spec)) < 1e-6) {
      chosen = cand;
      found = true;
      break;
    }
  }
  if (!found) throw InvariantError("nhqc_baseline: no phase offset reproduces the target");

  HamiltonianSchedule h(3, 0.0, tau);
  h.add_boundary(tau / 2);
  std::vector<HamiltonianSchedule::Coupling> couplings;
  for (std::size_t i = 0; i < 2; ++i)
    if (b[i] != cplx{0.0, 0.0}) couplings.push_back({i, 2, b[i]});
  const double phases[2] = {0.0, chosen};
  for (int k = 0; k < 2; ++k) {
    const cplx ph = std::exp(-kI * phases[k]);
    h.add_drive({"bright_drive", couplings,
                 [omega_m, tau, ph](double t) {
                   const double s = std::sin(kPi * t / tau);
                   return omega_m * s * s * ph;
                 },
                 k});
  }
  h.add_error_projector({{2}, HamiltonianSchedule::kAllSegments});
  h.set_excited_indices({2});
  return {std::move(h), chosen};
}

Ket AuxFrame::mu(int k, double t) const {
  const PathPoint p = path_unchecked(t, seg_.tau, seg_.beta0, seg_.ell);
  const Ket b = bright_state(spec_);
  const double ca = std::cos(p.alpha / 2), sa = std::sin(p.alpha / 2);
  switch (k) {
    case 1:
      return Ket{cplx{std::cos(spec_.theta / 2), 0.0}, std::sin(spec_.theta / 2) * std::exp(kI * spec_.phi),
                 cplx{0.0, 0.0}};
    case 2:
      return Ket{ca * b[0], ca * b[1], sa * std::exp(kI * p.beta)};
    case 3: {
      const cplx e = sa * std::exp(-kI * p.beta);
      return Ket{e * b[0], e * b[1], cplx{-ca, 0.0}};
    }
    default:
      throw std::out_of_range("AuxFrame::mu: k must be 1, 2 or 3");
  }
}

Ket AuxFrame::mu_dot(int k, double t, double h) const {
  const Ket plus = mu(k, t + h), minus = mu(k, t - h);
  Ket d(3);
  for (std::size_t i = 0; i < 3; ++i) d[i] = (plus[i] - minus[i]) / (2.0 * h);
  return d;
}

CMatrix AuxFrame::overlap(double t, double h) const {
  CMatrix a(2, 2);
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) a(i - 1, j - 1) = kI * mu(i, t).inner(mu_dot(j, t, h));
  return a;
}

double AuxFrame::gram_deviation(double t) const {
  double dev = 0.0;
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      const cplx g = mu(i, t).inner(mu(j, t));
      dev = std::max(dev, std::abs(g - cplx{i == j ? 1.0 : 0.0, 0.0}));
    }
  return dev;
}

CMatrix AuxFrame::reconstruct_hamiltonian(double t) const {
  const double h = seg_.tau * 1e-6;
  const Ket m3 = mu(3, t);
  const Ket d3 = mu_dot(3, t, h);
  CMatrix out(3, 3);
  for (int i = 1; i <= 2; ++i) {
    const Ket mi = mu(i, t);
    const CMatrix term = (kI * mi.inner(d3)) * (mi.as_column() * m3.as_column().adjoint());
    out += term + term.adjoint();
  }
  const PathPoint p = path_unchecked(t, seg_.tau, seg_.beta0, seg_.ell);
  const double zeta_dot = p.beta_dot * (3.0 + std::cos(p.alpha)) / 2.0;
  out += (kI * m3.inner(d3) - zeta_dot) * m3.projector();
  return out;
}

void write_waveform_csv(std::ostream& os, const GateSpec& spec, const std::vector<PulseSegment>& segs,
                        int samples) {
  if (samples < 2) throw std::invalid_argument("write_waveform_csv: need at least 2 samples per segment");
  os << "t_ns,Omega0_rad_ns,Omega1_rad_ns,phase0_rad,phase1_rad,Delta_rad_ns,segment,beta0_rad\n";
  double t0 = 0.0;
  char line[256];
  for (std::size_t k = 0; k < segs.size(); ++k) {
    const Waveforms w(segs[k], spec);
    for (int i = 0; i < samples; ++i) {
      const double t = segs[k].tau * i / (samples - 1);
      const WaveSample s = w.at(t);
      std::snprintf(line, sizeof line, "%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%zu,%.10g\n", t0 + t, s.omega0,
                    s.omega1, s.phase0, s.phase1, s.delta, k, segs[k].beta0);
      os << line;
    }
    t0 += segs[k].tau;
  }
}

}  // namespace hqc
