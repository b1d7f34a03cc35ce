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

#include <functional>
#include <vector>

/// Far-detuned dynamical gates on {|0>, |1>, |r>}, simulated in the lab frame.
namespace hqc {

enum class QuadRule { Simpson, Gauss };

/// [int omega0 + int omega1] / (2 tau).
double avg_rabi(const std::function<double(double)>& omega0, const std::function<double(double)>& omega1,
                double tau, QuadRule rule = QuadRule::Simpson);
/// Same average over a whole pulse sequence.
double avg_rabi(const GateSpec& spec, const std::vector<PulseSegment>& segs, QuadRule rule = QuadRule::Simpson);

/// Average drive of the two-segment composite Hadamard at peak omega_m; the
/// default Omega0-tilde of the dynamical H gate.
double h_gate_avg_rabi(double omega_m);

struct DynHParams {
  double omega0 = 0.0;  ///< Omega0-tilde
  double omega1 = 0.0;  ///< Omega1-tilde
  double delta0 = 0.0;
  double delta1 = 0.0;
  double j = 0.0;
  double r = 0.0;  ///< omega0 / omega1
  double omega_eff = 0.0;
  double phase0 = 0.0;
  double phase1 = 0.0;

  double duration() const;  ///< pi / (2 omega_eff)
};

/// Solves j^2 r (r^2 - 1) = r^2 + 1 on r > 1 and derives the rest.
/// Throws InvariantError if a constraint residual exceeds 1e-9 relative.
DynHParams solve_h_params(double j, double omega0_tilde);

/// Relative residuals of the three defining constraints.
std::vector<double> h_param_residuals(const DynHParams& p);

HamiltonianSchedule dyn_h_schedule(const DynHParams& p);

struct DynGateResult {
  Channel channel;
  /// Reference on {|0>, |1>} in the simulation frame.
  CMatrix ideal;
  /// Nominal gate the reference corresponds to.
  CMatrix target;
  double duration = 0.0;
};

/// Rotating-frame correction F with F * U_lab = gate on {|0>, |1>}.
CMatrix dyn_h_frame(const DynHParams& p);

DynGateResult dyn_h_gate(const DynHParams& p, const ErrorParams& e, const NoiseModel& noise, double omega_m,
                         const StepControl& sc = {});

struct DynTParams {
  double k = 0.0;
  double omega_m = 0.0;
  double delta = 0.0;  ///< k * omega_m, common to both legs
  std::vector<double> phases{0.0, 3 * kPi / 2, kPi};
  std::vector<double> areas{kPi / 4, kPi / 8, kPi / 4};

  /// Step duration with int omega^2 / delta = area: 8 area delta / (3 omega_m^2).
  double step_duration(std::size_t i) const;
  double duration() const;
};

DynTParams make_t_params(double k, double omega_m);

/// Product of exp(-i a (cos p sigma_x - sin p sigma_y)) over the steps.
CMatrix dyn_t_effective(const DynTParams& p);

HamiltonianSchedule dyn_t_schedule(const DynTParams& p);

DynGateResult dyn_t_gate(const DynTParams& p, const ErrorParams& e, const NoiseModel& noise,
                         const StepControl& sc = {});

}  // namespace hqc
