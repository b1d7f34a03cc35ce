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

#include "hqc/metrics.hpp"

#include "hqc/units.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hqc {

namespace {

// <v| M |v> for a real vector v on the given indices.
double real_quadratic(const CMatrix& m, std::span<const std::size_t> idx, std::span<const cplx> v) {
  cplx acc{0.0, 0.0};
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b) acc += std::conj(v[a]) * m(idx[a], idx[b]) * v[b];
  return acc.real();
}

// Per-image projections <psi_f|Phi(B_k)|psi_f> combined with the input coefficients.
double overlap_fidelity(const Channel& ch, std::span<const cplx> psi_in, std::span<const cplx> psi_f) {
  const std::size_t dc = ch.comp_dim();
  double f = 0.0;
  for (std::size_t a = 0; a < dc; ++a) {
    const double paa = std::norm(psi_in[a]);
    if (paa != 0.0) f += paa * real_quadratic(ch.images[a * dc + a], ch.computational, psi_f);
    for (std::size_t b = a + 1; b < dc; ++b) {
      const cplx rab = psi_in[a] * std::conj(psi_in[b]);
      if (rab.real() != 0.0) f += rab.real() * real_quadratic(ch.images[a * dc + b], ch.computational, psi_f);
      if (rab.imag() != 0.0) {
        if (ch.real_inputs_only) throw std::invalid_argument("fidelity: complex input on a real-input channel");
        f += rab.imag() * real_quadratic(ch.images[b * dc + a], ch.computational, psi_f);
      }
    }
  }
  return f;
}

FidelityReport average(const Channel& ch, const CMatrix& ideal, const std::vector<std::vector<cplx>>& inputs) {
  FidelityReport rep;
  rep.samples = static_cast<int>(inputs.size());
  double sum = 0.0;
  std::vector<cplx> out(ideal.rows());
  for (const auto& in : inputs) {
    for (std::size_t r = 0; r < ideal.rows(); ++r) {
      cplx acc{0.0, 0.0};
      for (std::size_t c = 0; c < ideal.cols(); ++c) acc += ideal(r, c) * in[c];
      out[r] = acc;
    }
    const double f = overlap_fidelity(ch, in, out);
    sum += f;
    rep.worst = std::min(rep.worst, f);
  }
  rep.fidelity = sum / static_cast<double>(inputs.size());
  return rep;
}

}  // namespace

FidelityReport fidelity_1q(const Channel& channel, const CMatrix& ideal, int n_samples) {
  if (channel.comp_dim() != 2 || ideal.rows() != 2 || ideal.cols() != 2)
    throw DimensionError("fidelity_1q: need a qubit channel and a 2x2 ideal");
  if (n_samples < 1) throw std::invalid_argument("fidelity_1q: n_samples must be positive");
  std::vector<std::vector<cplx>> inputs;
  for (int i = 0; i < n_samples; ++i) {
    const double t = 2.0 * kPi * i / n_samples;
    inputs.push_back({std::cos(t), std::sin(t)});
  }
  auto rep = average(channel, ideal, inputs);
  rep.params["sampling"] = "theta = 2 pi i / n";
  return rep;
}

FidelityReport fidelity_2q(const Channel& channel, const CMatrix& ideal, int n, Sampling2q sampling) {
  if (channel.comp_dim() != 4 || ideal.rows() != 4 || ideal.cols() != 4)
    throw DimensionError("fidelity_2q: need a two-qubit channel and a 4x4 ideal");
  if (n < 1) throw std::invalid_argument("fidelity_2q: n must be positive");
  std::vector<std::vector<cplx>> inputs;
  auto add = [&inputs](double t1, double t2) {
    const double c1 = std::cos(t1), s1 = std::sin(t1), c2 = std::cos(t2), s2 = std::sin(t2);
    inputs.push_back({c1 * c2, c1 * s2, s1 * c2, s1 * s2});
  };
  if (sampling == Sampling2q::Sequence) {
    for (int i = 0; i < n; ++i) {
      const double x = i * 0.6180339887;
      add(2.0 * kPi * i / n, 2.0 * kPi * (x - std::floor(x)));
    }
  } else {
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) add(2.0 * kPi * i / n, 2.0 * kPi * k / n);
  }
  auto rep = average(channel, ideal, inputs);
  rep.params["sampling"] = sampling == Sampling2q::Sequence ? "golden sequence" : "uniform grid";
  return rep;
}

NoiseModel lambda_noise(const NoiseRates& r) {
  NoiseModel m;
  m.channels.push_back({"sigma_minus", CMatrix::unit(3, 0, 2) + CMatrix::unit(3, 1, 2), r.gamma_minus});
  m.channels.push_back({"sigma_z", CMatrix{{-1, 0, 0}, {0, -1, 0}, {0, 0, 1}}, r.gamma_z});
  m.channels.push_back({"sigma_q", CMatrix::unit(3, 0, 1), r.gamma_q});
  return m;
}

namespace presets {

NoiseRates baseline() {
  const double g = units::khz(3.0);
  return {g, g / 100.0, 0.0};
}

NoiseRates case1(double omega_m) {
  const double g = omega_m / 2000.0;
  return {g, g / 100.0, g / 100.0};
}

NoiseRates case2(double omega_m) {
  const double g = omega_m / 2000.0;
  return {g, g / 100.0, g / 10.0};
}

NoiseRates case3(double omega_m) {
  const double g = omega_m / 100.0;
  return {g, g / 100.0, g / 10.0};
}

NoiseRates by_name(const std::string& name, double omega_m) {
  if (name == "baseline") return baseline();
  if (name == "case1") return case1(omega_m);
  if (name == "case2") return case2(omega_m);
  if (name == "case3") return case3(omega_m);
  if (name == "none") return {};
  throw std::invalid_argument("unknown noise preset '" + name + "' (baseline|case1|case2|case3|none)");
}

}  // namespace presets

nlohmann::json to_json(const NoiseRates& r) {
  return {{"gamma_minus_rad_ns", r.gamma_minus}, {"gamma_z_rad_ns", r.gamma_z}, {"gamma_q_rad_ns", r.gamma_q}};
}

nlohmann::json to_json(const StepControl& sc) {
  return {{"integrator", "rk4"},       {"max_phase_rad", sc.max_phase},
          {"min_steps", sc.min_steps}, {"carrier_fraction", sc.carrier_fraction},
          {"refine", sc.refine},       {"fixed_steps", sc.fixed_steps}};
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 1) throw std::invalid_argument("linspace: n must be positive");
  if (n == 1) return {lo};
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  v.back() = hi;
  return v;
}

SweepResult robustness_sweep(const ErrorObjective& f, const std::vector<double>& eps,
                             const std::vector<double>& eta, EtaMode mode, Execution exec) {
  if (eps.empty() || eta.empty()) throw std::invalid_argument("robustness_sweep: empty axis");
  SweepResult out;
  out.axes = {{"epsilon", "fraction", eps},
              {"eta", mode == EtaMode::Fractional ? "fraction of omega_m" : "rad/ns", eta}};
  out.values.assign(eps.size() * eta.size(), 0.0);
  const long total = static_cast<long>(out.values.size());
  const long ne = static_cast<long>(eta.size());
  if (exec == Execution::Serial) {
    for (long k = 0; k < total; ++k) out.values[k] = f({eps[k / ne], eta[k % ne], mode});
  } else {
#pragma omp parallel for schedule(dynamic, 1)
    for (long k = 0; k < total; ++k) out.values[k] = f({eps[k / ne], eta[k % ne], mode});
  }
  return out;
}

double PopulationTrace::max() const {
  return population.empty() ? 0.0 : *std::max_element(population.begin(), population.end());
}

PopulationTrace excited_population(const HamiltonianSchedule& h, const NoiseModel& noise, const Ket& initial,
                                   const StepControl& sc, int stride) {
  if (initial.dim() != h.dim()) throw DimensionError("excited_population: initial state dimension");
  if (stride < 1) throw std::invalid_argument("excited_population: stride must be >= 1");
  const auto& exc = h.excited_indices();
  PopulationTrace tr;
  auto pop = [&exc](const CMatrix& rho) {
    double p = 0.0;
    for (auto i : exc) p += rho(i, i).real();
    return p;
  };
  const CMatrix rho0 = initial.normalized().projector();
  tr.t.push_back(h.t_start());
  tr.population.push_back(pop(rho0));
  long step = 0;
  propagate_lindblad(h, noise, rho0, sc, [&](double t, std::span<const CMatrix> s) {
    if (++step % stride == 0) {
      tr.t.push_back(t);
      tr.population.push_back(pop(s.front()));
    }
  });
  return tr;
}

ScalarOptimum optimize_scalar(std::vector<double> candidates, const std::function<double(double)>& objective,
                              Execution exec) {
  if (candidates.empty()) throw std::invalid_argument("optimize_scalar: empty candidate list");
  std::sort(candidates.begin(), candidates.end());
  ScalarOptimum o;
  o.params = candidates;
  o.curve.assign(candidates.size(), 0.0);
  const long n = static_cast<long>(candidates.size());
  if (exec == Execution::Serial) {
    for (long i = 0; i < n; ++i) o.curve[i] = objective(candidates[i]);
  } else {
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < n; ++i) o.curve[i] = objective(candidates[i]);
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < o.curve.size(); ++i)
    if (o.curve[i] > o.curve[best]) best = i;
  o.best = candidates[best];
  o.value = o.curve[best];
  return o;
}

namespace {

nlohmann::json common_params(const OneQubitOptions& o) {
  return {{"omega_m_rad_ns", o.omega_m},
          {"noise", to_json(o.rates)},
          {"epsilon", o.errors.epsilon},
          {"eta", o.errors.eta},
          {"steps", to_json(o.steps)},
          {"samples", o.samples}};
}

}  // namespace

FidelityReport run_snhqc(const GateSpec& spec, int n, const OneQubitOptions& o) {
  const auto segs = composite(spec, n, o.omega_m);
  const auto h = apply_errors(hamiltonian_schedule(spec, segs), o.errors, o.omega_m);
  const auto ch = compute_channel(h, lambda_noise(o.rates), {0, 1}, o.steps, true);
  auto rep = fidelity_1q(ch, target_unitary(spec), o.samples);
  rep.label = n == 1 ? "snhqc" : "csnhqc";
  rep.params.update(common_params(o));
  rep.params["theta"] = spec.theta;
  rep.params["phi"] = spec.phi;
  rep.params["gamma"] = spec.gamma;
  rep.params["N"] = n;
  rep.params["duration_ns"] = h.duration();
  return rep;
}

FidelityReport run_baseline(const GateSpec& spec, double tau, const OneQubitOptions& o) {
  const auto base = nhqc_baseline(spec, o.omega_m, tau);
  const auto h = apply_errors(base.schedule, o.errors, o.omega_m);
  const auto ch = compute_channel(h, lambda_noise(o.rates), {0, 1}, o.steps, true);
  auto rep = fidelity_1q(ch, target_unitary(spec), o.samples);
  rep.label = "nhqc-baseline";
  rep.params.update(common_params(o));
  rep.params["gamma"] = spec.gamma;
  rep.params["duration_ns"] = tau;
  rep.params["second_half_phase"] = base.second_phase;
  return rep;
}

FidelityReport run_dyn_h(double j, const OneQubitOptions& o) {
  const auto p = solve_h_params(j, h_gate_avg_rabi(o.omega_m));
  const auto g = dyn_h_gate(p, o.errors, lambda_noise(o.rates), o.omega_m, o.steps);
  auto rep = fidelity_1q(g.channel, g.ideal, o.samples);
  rep.label = "dyn-h";
  rep.params.update(common_params(o));
  rep.params["j"] = j;
  rep.params["omega0_tilde_rad_ns"] = p.omega0;
  rep.params["delta1_rad_ns"] = p.delta1;
  rep.params["duration_ns"] = g.duration;
  return rep;
}

FidelityReport run_dyn_t(double k, const OneQubitOptions& o) {
  const auto p = make_t_params(k, o.omega_m);
  const auto g = dyn_t_gate(p, o.errors, lambda_noise(o.rates), o.steps);
  auto rep = fidelity_1q(g.channel, g.ideal, o.samples);
  rep.label = "dyn-t";
  rep.params.update(common_params(o));
  rep.params["k"] = k;
  rep.params["duration_ns"] = g.duration;
  return rep;
}

}  // namespace hqc
