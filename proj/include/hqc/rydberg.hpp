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
#include "hqc/holopath.hpp"
#include "hqc/metrics.hpp"
#include "hqc/units.hpp"

#include <ostream>
#include <string>
#include <vector>

/// Rydberg-blockade gates. Each atom is {|0>, |1>, |r>}; controls come first,
/// the target last, so for one control |c, t> has index 3c + t.
namespace hqc {

/// What the target peak omega_m' bounds.
enum class PeakConvention {
  PerLeg,    ///< max(Omega_S, Omega_P) = omega_m'
  Combined,  ///< max sqrt(Omega_S^2 + Omega_P^2) = omega_m'
};

struct RydbergParams {
  double omega_c = units::mhz(40);    ///< control drive peak
  double carrier = units::mhz(500);   ///< control drive frequency omega
  double v = units::mhz(500);         ///< blockade strength
  double omega_t_peak = units::mhz(1);
  PeakConvention peak = PeakConvention::PerLeg;
  bool snap_to_carrier = true;
  // Five-step dynamical CNOT.
  double omega01 = units::mhz(0.5);   ///< "pi MHz" qubit drive
  double omega_c_dg = units::mhz(40);
  double omega_t = units::mhz(1);
};

/// Ratio diagnostics (warn when a hierarchy ratio is below 5).
std::vector<std::string> ratio_warnings(const RydbergParams& p);

/// sigma^-_i and sigma^z_i of every atom in an n-atom register.
NoiseModel rydberg_noise(std::size_t atoms, double gamma_minus, double gamma_z);
/// Gamma^- = 2pi x 3 kHz, Gamma^z = Gamma^-/100.
NoiseModel rydberg_noise(std::size_t atoms);

/// Indices of the qubit states (each atom in {0, 1}) in lexicographic order.
std::vector<std::size_t> computational_indices(std::size_t atoms);

/// Target segments for the controlled gate: composite of n_segments at the
/// requested convention, durations snapped to whole carrier periods.
std::vector<PulseSegment> target_segments(const GateSpec& spec, int n_segments, const RydbergParams& p);

/// Rescales each segment to a whole number of periods; the peak changes by the inverse ratio.
std::vector<PulseSegment> snap_segments(std::vector<PulseSegment> segs, double period);

/// Control drives on |0>_c <-> |r>_c with cos(omega t), target waveforms, and
/// pairwise blockade (control-target and control-control) of strength v.
/// Error projectors: every |r> of every atom.
HamiltonianSchedule multi_qubit_schedule(std::size_t n_controls, const GateSpec& spec,
                                         const std::vector<PulseSegment>& segs, const RydbergParams& p);
HamiltonianSchedule two_qubit_schedule(const GateSpec& spec, const std::vector<PulseSegment>& segs,
                                       const RydbergParams& p);

/// diag(I, ..., I, U) on the qubit subspace with U the 2x2 target gate.
CMatrix controlled_ideal(std::size_t n_controls, const CMatrix& u);

struct TwoQubitGate {
  HamiltonianSchedule schedule;
  CMatrix ideal;  ///< 4x4 on {|00>, |01>, |10>, |11>}
  double duration = 0.0;
};

/// Two controlled-sqrt(X) segments (theta = pi/2, phi = 0, gamma_seg = pi/2, beta0 = 0, pi).
TwoQubitGate cs_cnot(const RydbergParams& p, const ErrorParams& e);

/// Five-step blockade CNOT (qubit R_y(pi/2), control pi, target 2pi, control pi, qubit R_y(-pi/2)).
TwoQubitGate dg_cnot(const RydbergParams& p, const ErrorParams& e);
/// Step durations of dg_cnot.
std::vector<double> dg_cnot_steps(const RydbergParams& p);
/// Product of the ideal step unitaries with the doubly excited state removed (V -> infinity).
CMatrix dg_cnot_ideal(const RydbergParams& p);

struct TwoQubitOptions {
  double gamma_minus = units::khz(3);
  double gamma_z = units::khz(3) / 100.0;
  ErrorParams errors{0.0, 0.0, EtaMode::Absolute};
  StepControl steps{};
  int samples = 1001;
};

FidelityReport run_cs_cnot(const RydbergParams& p, const TwoQubitOptions& o);
FidelityReport run_dg_cnot(const RydbergParams& p, const TwoQubitOptions& o);

/// Effective model: target evolution only when every control is |1>.
CMatrix multi_qubit_effective(std::size_t n_controls, const GateSpec& spec, const std::vector<PulseSegment>& segs);

struct MultiQubitCheck {
  std::size_t dim = 0;
  double duration = 0.0;
  /// Average gate fidelity of the all-|1> control branch against the effective model.
  double branch_fidelity = 0.0;
  /// Smallest return probability of a qubit input with at least one control in |0>.
  double min_return = 0.0;
};

/// Full 3^(N+1) propagation of the controlled gate, compared branch by branch.
MultiQubitCheck multi_qubit_check(std::size_t n_controls, const GateSpec& spec, int n_segments,
                                  const RydbergParams& p, const StepControl& sc = {});

/// CSV: atom, t_ns, Omega0_rad_ns, Omega1_rad_ns, phase0_rad, phase1_rad, Delta_rad_ns.
void write_two_qubit_csv(std::ostream& os, const GateSpec& spec, const std::vector<PulseSegment>& segs,
                         const RydbergParams& p, int samples_per_segment);

}  // namespace hqc
