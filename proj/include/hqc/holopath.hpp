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

#include "hqc/engine.hpp"
#include "hqc/qmath.hpp"
#include "hqc/schedule.hpp"

#include <ostream>
#include <vector>

/// Shortest-path (circle) holonomic pulse synthesis on a three-level
/// Lambda system {|0>, |1>, |e>}.
///
/// The bright state is |b> = sin(theta/2) e^{-i phi}|0> - cos(theta/2)|1>,
/// the dark state |d> = cos(theta/2)|0> + sin(theta/2) e^{i phi}|1>. One
/// cyclic segment imprints e^{-i gamma} on |b> and leaves |d> alone.
namespace hqc {

/// Raised for rotation angles at the ell pole (gamma = pi).
class PoleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct GateSpec {
  double theta = 0.0;
  double phi = 0.0;
  double gamma = 0.0;
};

namespace gates {
inline GateSpec S() { return {0.0, 0.0, kPi / 2}; }
inline GateSpec T() { return {0.0, 0.0, kPi / 4}; }
inline GateSpec SqrtH() { return {kPi / 4, 0.0, kPi / 2}; }
/// Hadamard; only reachable through composites (gamma = pi).
inline GateSpec H() { return {kPi / 4, 0.0, kPi}; }
}  // namespace gates

struct PulseSegment {
  double gamma_seg = 0.0;
  double beta0 = 0.0;
  double tau = 0.0;      ///< ns
  double ell = 0.0;
  double omega_m = 0.0;  ///< peak of Omega_e, rad/ns
};

struct PathPoint {
  double alpha, beta, alpha_dot, beta_dot;
};

struct WaveSample {
  double t;
  double alpha, beta, alpha_dot, beta_dot;
  double omega_e, omega0, omega1;
  double chi;
  double delta;
  double zeta_dot;
  double phase0;  ///< beta + chi + phi
  double phase1;  ///< beta + chi + pi
};

/// ell = sqrt(2 pi g - g^2) / (pi - g). Throws PoleError within 1e-6 of pi
/// and std::invalid_argument outside (0, 2 pi).
double ell(double gamma_seg);

/// Circle path at local time t in [0, tau]; throws std::out_of_range otherwise.
PathPoint path(double t, const PulseSegment& seg);

/// Closed-form waveforms of one segment, sampled on demand.
class Waveforms {
 public:
  Waveforms(PulseSegment seg, GateSpec spec) : seg_(seg), spec_(spec) {}

  WaveSample at(double t) const;
  /// zeta(t) = int_0^t zeta_dot.
  double zeta(double t) const;

  const PulseSegment& segment() const { return seg_; }
  const GateSpec& spec() const { return spec_; }

 private:
  PulseSegment seg_;
  GateSpec spec_;
};

Waveforms waveforms(const PulseSegment& seg, const GateSpec& spec);

/// Duration at which max Omega_e equals omega_m.
double calibrate_duration(double gamma_seg, double omega_m);

/// Calibrated segment with the given azimuth offset.
PulseSegment make_segment(double gamma_seg, double beta0, double omega_m);

/// 1/2 int beta_dot (1 - cos alpha) dt by adaptive quadrature.
double holonomy_angle(const PulseSegment& seg);

/// Throws InvariantError when the segment's holonomy misses gamma_seg by more than 1e-6.
void verify_segment(const PulseSegment& seg);

/// Three-level schedule of contiguous segments starting at t = 0, tagged for
/// apply_errors (drive per segment, excited projector {2}).
HamiltonianSchedule hamiltonian_schedule(const GateSpec& spec, const std::vector<PulseSegment>& segs);

/// exp(i gamma/2 n.sigma) on {|0>, |1>}.
CMatrix target_unitary(const GateSpec& spec);
/// The holonomy itself, |d><d| + e^{-i gamma}|b><b| = e^{-i gamma/2} target_unitary.
/// Differs from target_unitary only by a global phase, which matters once the gate is controlled.
CMatrix holonomy_unitary(const GateSpec& spec);

/// max(|sin(theta/2)|, |cos(theta/2)|): peak of the stronger leg per unit Omega_e.
double leg_factor(const GateSpec& spec);

/// N segments of gamma/N with beta0 alternating 0, pi, 0, ... The peak drive
/// omega_m refers to the stronger of Omega0, Omega1, so each segment's Omega_e
/// peaks at omega_m / leg_factor(spec).
std::vector<PulseSegment> composite(const GateSpec& spec, int n, double omega_m);

/// Single-loop orange-slice gate with envelope omega_m sin^2(pi t / tau).
/// Requires omega_m * tau / 2 = pi.
struct Baseline {
  HamiltonianSchedule schedule;
  double second_phase;  ///< drive phase of the second half
};
Baseline nhqc_baseline(const GateSpec& spec, double omega_m, double tau);

/// Auxiliary orthonormal frame of one segment.
class AuxFrame {
 public:
  AuxFrame(PulseSegment seg, GateSpec spec) : seg_(seg), spec_(spec) {}

  /// |mu_k(t)>, k = 1, 2, 3.
  Ket mu(int k, double t) const;
  /// Central difference of |mu_k> with step h.
  Ket mu_dot(int k, double t, double h) const;
  /// A_ij = i <mu_i | d mu_j/dt>, i, j in 1..2.
  CMatrix overlap(double t, double h) const;
  /// Max |<mu_i|mu_j> - delta_ij|.
  double gram_deviation(double t) const;
  /// H rebuilt from the frame with finite-difference derivatives (step tau * 1e-6).
  CMatrix reconstruct_hamiltonian(double t) const;

 private:
  PulseSegment seg_;
  GateSpec spec_;
};

/// CSV with columns t_ns, Omega0_rad_ns, Omega1_rad_ns, phase0_rad, phase1_rad,
/// Delta_rad_ns, segment, beta0_rad; `samples` points per segment.
void write_waveform_csv(std::ostream& os, const GateSpec& spec, const std::vector<PulseSegment>& segs,
                        int samples);

}  // namespace hqc
