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

#include "hqc/dyngates.hpp"
#include "hqc/engine.hpp"
#include "hqc/holopath.hpp"

#include <json.hpp>

#include <functional>
#include <string>
#include <vector>

namespace hqc {

struct FidelityReport {
  double fidelity = 0.0;
  int samples = 0;
  double worst = 1.0;  ///< smallest per-state fidelity
  std::string label;
  nlohmann::json params = nlohmann::json::object();
};

/// Mean of <psi_f|rho_out|psi_f> over cos t|0> + sin t|1>, t = 2 pi i / n.
FidelityReport fidelity_1q(const Channel& channel, const CMatrix& ideal, int n_samples = 1001);

enum class Sampling2q {
  Sequence,  ///< t1 = 2 pi i / n, t2 = 2 pi frac(i * 0.6180339887)
  Grid,      ///< n x n uniform grid
};

/// Two-qubit analogue over product inputs; `ideal` acts on {|00>, |01>, |10>, |11>}.
FidelityReport fidelity_2q(const Channel& channel, const CMatrix& ideal, int n = 1001,
                           Sampling2q sampling = Sampling2q::Sequence);

/// Decay/dephasing rates of the three-level model, rad/ns.
struct NoiseRates {
  double gamma_minus = 0.0;
  double gamma_z = 0.0;
  double gamma_q = 0.0;
};

/// sigma_- = |0><e| + |1><e|, sigma_z = |e><e| - |1><1| - |0><0|, sigma_q = |0><1|.
NoiseModel lambda_noise(const NoiseRates& r);

namespace presets {
/// Gamma_- = 2pi x 3 kHz, Gamma_z = Gamma_-/100, Gamma_q = 0.
NoiseRates baseline();
NoiseRates case1(double omega_m);
NoiseRates case2(double omega_m);
NoiseRates case3(double omega_m);
/// Lookup by name: baseline|case1|case2|case3|none.
NoiseRates by_name(const std::string& name, double omega_m);
}  // namespace presets

nlohmann::json to_json(const NoiseRates& r);
nlohmann::json to_json(const StepControl& sc);

struct SweepAxis {
  std::string name;
  std::string unit;
  std::vector<double> values;
};

struct SweepResult {
  std::vector<SweepAxis> axes;
  std::vector<double> values;  ///< row-major over axes
  nlohmann::json provenance = nlohmann::json::object();

  std::size_t index(std::size_t i, std::size_t j) const { return i * axes.at(1).values.size() + j; }
  double at(std::size_t i, std::size_t j) const { return values.at(index(i, j)); }
  void write_csv(std::ostream& os) const;
  nlohmann::json to_json() const;
};

/// Fidelity as a function of coherent error fractions.
using ErrorObjective = std::function<double(const ErrorParams&)>;

/// Dense (eps, eta) grid; points run in parallel unless exec is Serial.
SweepResult robustness_sweep(const ErrorObjective& f, const std::vector<double>& eps,
                             const std::vector<double>& eta, EtaMode mode = EtaMode::Fractional,
                             Execution exec = Execution::Parallel);

/// n evenly spaced values on [lo, hi] (inclusive).
std::vector<double> linspace(double lo, double hi, int n);

struct PopulationTrace {
  std::vector<double> t;
  std::vector<double> population;

  double max() const;
};

/// tr(rho(t) P_excited) after every step (stride thins the output).
PopulationTrace excited_population(const HamiltonianSchedule& h, const NoiseModel& noise, const Ket& initial,
                                   const StepControl& sc = {}, int stride = 1);

struct ScalarOptimum {
  double best = 0.0;
  double value = 0.0;
  std::vector<double> params;
  std::vector<double> curve;
};

/// Argmax over the candidates; ties go to the smaller parameter.
ScalarOptimum optimize_scalar(std::vector<double> candidates, const std::function<double(double)>& objective,
                              Execution exec = Execution::Parallel);

/// End-to-end single-qubit pipelines used by the CLI, sweeps and tests.
struct OneQubitOptions {
  double omega_m = 0.0;
  NoiseRates rates{};
  ErrorParams errors{};
  StepControl steps{};
  int samples = 1001;
};

/// S-NHQC (n = 1) or composite gate.
FidelityReport run_snhqc(const GateSpec& spec, int n, const OneQubitOptions& o);
/// Orange-slice single-loop reference gate.
FidelityReport run_baseline(const GateSpec& spec, double tau, const OneQubitOptions& o);
/// Dynamical H gate at detuning ratio j (Omega0-tilde from h_gate_avg_rabi).
FidelityReport run_dyn_h(double j, const OneQubitOptions& o);
/// Dynamical T gate at Delta = k omega_m.
FidelityReport run_dyn_t(double k, const OneQubitOptions& o);

}  // namespace hqc
