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

#include "hqc/qmath.hpp"
#include "hqc/schedule.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace hqc {

/// Raised when a physical invariant (unitarity, holonomy, trace) is violated.
class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CollapseOperator {
  std::string label;
  CMatrix op;
  double rate = 0.0;  ///< rad/ns
};

/// Lindblad dissipator: d rho/dt += 1/2 sum_j Gamma_j (2 A rho A^dag - A^dag A rho - rho A^dag A).
struct NoiseModel {
  std::vector<CollapseOperator> channels;

  bool empty() const;
  void validate(std::size_t dim) const;
};

enum class EtaMode {
  Fractional,  ///< eta * omega_m added to the excited level
  Absolute,    ///< eta in rad/ns added as is (two-qubit convention)
};

struct ErrorParams {
  double epsilon = 0.0;
  double eta = 0.0;
  EtaMode mode = EtaMode::Fractional;

  bool none() const { return epsilon == 0.0 && eta == 0.0; }
};

/// Drive amplitudes times (1 + eps); the detuning error on every tagged
/// projector. Throws std::invalid_argument for untagged schedules.
HamiltonianSchedule apply_errors(const HamiltonianSchedule& h, const ErrorParams& e, double omega_m);

/// Fixed-step RK4 controls. Each segment gets
///   n = max(min_steps, ceil(len * scale / max_phase), ceil(len / (carrier_period * carrier_fraction)))
/// steps, multiplied by `refine`; `fixed_steps > 0` overrides the rule.
struct StepControl {
  double max_phase = 0.02;
  int min_steps = 100;
  double carrier_fraction = 1.0 / 40.0;
  int refine = 1;
  int fixed_steps = 0;

  StepControl halved() const {
    StepControl s = *this;
    s.refine *= 2;
    if (s.fixed_steps > 0) s.fixed_steps *= 2;
    return s;
  }
};

std::vector<int> plan_steps(const HamiltonianSchedule& h, const StepControl& sc);

enum class Execution { Serial, Parallel };

/// Solves dU/dt = -i H(t) U, U(t_start) = I.
CMatrix propagate_unitary(const HamiltonianSchedule& h, const StepControl& sc = {});
CMatrix propagate_unitary(const HamiltonianSchedule& h, int steps_per_segment);

/// Propagates the columns of `initial` (dim x k) under -i H(t).
CMatrix propagate_columns(const HamiltonianSchedule& h, const CMatrix& initial,
                          const StepControl& sc = {});

using DensityObserver = std::function<void(double t, std::span<const CMatrix> states)>;

/// Lindblad evolution of a valid density matrix; rejects invalid rho0.
CMatrix propagate_lindblad(const HamiltonianSchedule& h, const NoiseModel& noise, const CMatrix& rho0,
                           const StepControl& sc = {}, const DensityObserver& observer = {});

/// Lindblad evolution of several Hermitian operators in lockstep (states need
/// not have unit trace). The observer fires after every step.
///
/// Parallel execution evaluates H(t) once per stage and fans the states out
/// over OpenMP threads; Serial keeps one independent pass per state. Both
/// produce bit-identical results.
void evolve_density(const HamiltonianSchedule& h, const NoiseModel& noise, std::span<CMatrix> states,
                    const StepControl& sc = {}, const DensityObserver& observer = {},
                    Execution exec = Execution::Parallel);

/// Linear map from operators on the computational subspace (embedded at
/// `computational` indices) to full-space outputs, stored as the images of a
/// Hermitian operator basis:
///   slot a*dc+a : E_aa
///   slot a*dc+b : E_ab + E_ba          (a < b)
///   slot b*dc+a : i (E_ab - E_ba)      (a < b, only when !real_inputs_only)
struct Channel {
  std::size_t dim = 0;
  std::vector<std::size_t> computational;
  bool real_inputs_only = true;
  std::vector<CMatrix> images;

  std::size_t comp_dim() const { return computational.size(); }
  /// Output for a Hermitian input on the computational subspace.
  CMatrix apply(const CMatrix& rho_comp) const;
  CMatrix apply(const Ket& psi_comp) const { return apply(psi_comp.projector()); }
};

/// Hermitian basis inputs (full-space) in channel slot order; empty slots are skipped.
std::vector<std::pair<std::size_t, CMatrix>> channel_basis(std::size_t dim,
                                                           std::span<const std::size_t> computational,
                                                           bool real_inputs_only);

Channel compute_channel(const HamiltonianSchedule& h, const NoiseModel& noise,
                        std::vector<std::size_t> computational, const StepControl& sc = {},
                        bool real_inputs_only = true, Execution exec = Execution::Parallel);

/// Channel snapshots at (approximately) the requested times: each snapshot is
/// taken at the first step boundary at or after the sample time.
std::vector<Channel> channel_trajectory(const HamiltonianSchedule& h, const NoiseModel& noise,
                                        std::vector<std::size_t> computational,
                                        std::span<const double> sample_times,
                                        std::vector<double>* actual_times = nullptr,
                                        const StepControl& sc = {}, bool real_inputs_only = true);

/// Channel of a fixed unitary (used for ideal references).
Channel unitary_channel(const CMatrix& u, std::vector<std::size_t> computational,
                        bool real_inputs_only = true);

}  // namespace hqc
