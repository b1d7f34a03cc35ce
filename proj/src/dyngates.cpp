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

#include "hqc/dyngates.hpp"

#include "hqc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace hqc {

namespace {

double integrate(const std::function<double(double)>& f, double a, double b, QuadRule rule) {
  return rule == QuadRule::Simpson ? quad::adaptive_simpson(f, a, b, 1e-13) : quad::gauss_legendre(f, a, b, 256);
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

}  // namespace

double avg_rabi(const std::function<double(double)>& omega0, const std::function<double(double)>& omega1,
                double tau, QuadRule rule) {
  if (!(tau > 0.0)) throw std::invalid_argument("avg_rabi: tau must be positive");
  return (integrate(omega0, 0.0, tau, rule) + integrate(omega1, 0.0, tau, rule)) / (2.0 * tau);
}

double avg_rabi(const GateSpec& spec, const std::vector<PulseSegment>& segs, QuadRule rule) {
  double total = 0.0, tau = 0.0;
  for (const auto& s : segs) {
    const Waveforms w(s, spec);
    total += integrate([&w](double t) { return w.at(t).omega0; }, 0.0, s.tau, rule);
    total += integrate([&w](double t) { return w.at(t).omega1; }, 0.0, s.tau, rule);
    tau += s.tau;
  }
  return total / (2.0 * tau);
}

double h_gate_avg_rabi(double omega_m) { return avg_rabi(gates::H(), composite(gates::H(), 2, omega_m)); }

double DynHParams::duration() const { return kPi / (2.0 * omega_eff); }

std::vector<double> h_param_residuals(const DynHParams& p) {
  const double d01 = 1.0 / (1.0 / p.delta0 + 1.0 / p.delta1);
  return {
      rel(p.delta1, p.j * p.omega1),
      rel(p.delta0, p.omega0 * p.omega0 * p.delta1 / (p.omega1 * p.omega1)),
      rel(std::sqrt(2.0) * p.omega_eff, p.omega0 * p.omega1 * (p.delta0 + p.delta1) / (p.delta0 * p.delta1)),
      rel(p.omega0 * p.omega1 / d01, std::sqrt(2.0) * p.omega_eff),
      // omega_eff = (delta0 - delta1) / sqrt(2), relative to delta0 since the difference cancels for large j
      std::abs(p.delta0 - p.delta1 - std::sqrt(2.0) * p.omega_eff) / p.delta0,
  };
}

DynHParams solve_h_params(double j, double omega0_tilde) {
  if (!(j > 0.0) || !std::isfinite(j)) throw std::invalid_argument("solve_h_params: j must be positive");
  if (!(omega0_tilde > 0.0)) throw std::invalid_argument("solve_h_params: Omega0 must be positive");
  // bisect on u = r - 1 so r^2 - 1 = u (2 + u) keeps full precision as j grows
  const auto g = [j](double u) { return j * j * (1.0 + u) * u * (2.0 + u) - ((1.0 + u) * (1.0 + u) + 1.0); };
  double lo = 0.0, hi = 1.0;
  while (g(hi) <= 0.0) {
    hi *= 2.0;
    if (hi > 1e12) throw InvariantError("solve_h_params: no root bracketed for j = " + std::to_string(j));
  }
  for (int it = 0; it < 400 && hi - lo > 1e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0.0 ? hi : lo) = mid;
  }
  const double u = 0.5 * (lo + hi);
  DynHParams p;
  p.j = j;
  p.r = 1.0 + u;
  if (!(u > 0.0)) throw InvariantError("solve_h_params: root is not on the r > 1 branch");
  p.omega0 = omega0_tilde;
  p.omega1 = omega0_tilde / p.r;
  p.delta1 = j * p.omega1;
  p.delta0 = p.r * p.r * p.delta1;
  p.omega_eff = u * (2.0 + u) * p.delta1 / std::sqrt(2.0);
  for (double res : h_param_residuals(p))
    if (res > 1e-9) throw InvariantError("solve_h_params: constraint residual " + std::to_string(res));
  return p;
}

HamiltonianSchedule dyn_h_schedule(const DynHParams& p) {
  HamiltonianSchedule h(3, 0.0, p.duration());
  const double d0 = p.delta0, d1 = p.delta1;
  const cplx w0 = std::exp(kI * p.phase0), w1 = std::exp(kI * p.phase1);
  const double o0 = p.omega0, o1 = p.omega1;
  h.add_drive({"leg0", {{2, 0, w0}}, [o0, d0](double t) { return o0 * std::exp(-kI * (d0 * t)); }, 0});
  h.add_drive({"leg1", {{2, 1, w1}}, [o1, d1](double t) { return o1 * std::exp(-kI * (d1 * t)); }, 0});
  h.add_error_projector({{2}, HamiltonianSchedule::kAllSegments});
  h.set_excited_indices({2});
  h.set_rate_hint(std::max(d0, d1));
  return h;
}

CMatrix dyn_h_frame(const DynHParams& p) {
  // psi' = exp(-i h t) psi removes the e^{i (Delta0 - Delta1) t} of the effective coupling.
  const double half = (p.delta0 - p.delta1) / 2.0;
  const CMatrix h = cplx{half, 0.0} * pauli::Z();
  return expm_skew(h, p.duration());
}

DynGateResult dyn_h_gate(const DynHParams& p, const ErrorParams& e, const NoiseModel& noise, double omega_m,
                         const StepControl& sc) {
  const HamiltonianSchedule h = apply_errors(dyn_h_schedule(p), e, omega_m);
  DynGateResult r;
  r.duration = p.duration();
  r.channel = compute_channel(h, noise, {0, 1}, sc, true);
  r.target = (1.0 / std::sqrt(2.0)) * (pauli::X() + pauli::Z());
  r.ideal = dyn_h_frame(p).adjoint() * r.target;
  return r;
}

double DynTParams::step_duration(std::size_t i) const {
  return 8.0 * areas.at(i) * delta / (3.0 * omega_m * omega_m);
}

double DynTParams::duration() const {
  double t = 0.0;
  for (std::size_t i = 0; i < areas.size(); ++i) t += step_duration(i);
  return t;
}

DynTParams make_t_params(double k, double omega_m) {
  if (!(k > 0.0) || !(omega_m > 0.0)) throw std::invalid_argument("make_t_params: k and omega_m must be positive");
  DynTParams p;
  p.k = k;
  p.omega_m = omega_m;
  p.delta = k * omega_m;
  return p;
}

CMatrix dyn_t_effective(const DynTParams& p) {
  CMatrix u = CMatrix::identity(2);
  for (std::size_t i = 0; i < p.areas.size(); ++i) {
    const CMatrix axis = cplx{std::cos(p.phases[i]), 0.0} * pauli::X() - cplx{std::sin(p.phases[i]), 0.0} * pauli::Y();
    u = expm_skew(axis, p.areas[i]) * u;
  }
  return u;
}

HamiltonianSchedule dyn_t_schedule(const DynTParams& p) {
  if (p.phases.size() != p.areas.size()) throw std::invalid_argument("dyn_t_schedule: phases/areas mismatch");
  HamiltonianSchedule h(3, 0.0, p.duration());
  double t0 = 0.0;
  const double om = p.omega_m, d = p.delta;
  for (std::size_t i = 0; i < p.areas.size(); ++i) {
    const double len = p.step_duration(i);
    if (t0 > 0.0) h.add_boundary(t0);
    const auto amp = [om, d, t0, len](double t) {
      const double s = std::sin(kPi * (t - t0) / len);
      return om * s * s * std::exp(-kI * (d * t));
    };
    h.add_drive({"leg0", {{2, 0, cplx{1.0, 0.0}}}, amp, static_cast<int>(i)});
    h.add_drive({"leg1", {{2, 1, std::exp(kI * p.phases[i])}}, amp, static_cast<int>(i)});
    t0 += len;
  }
  h.add_error_projector({{2}, HamiltonianSchedule::kAllSegments});
  h.set_excited_indices({2});
  h.set_rate_hint(d);
  return h;
}

DynGateResult dyn_t_gate(const DynTParams& p, const ErrorParams& e, const NoiseModel& noise, const StepControl& sc) {
  const HamiltonianSchedule h = apply_errors(dyn_t_schedule(p), e, p.omega_m);
  DynGateResult r;
  r.duration = p.duration();
  r.channel = compute_channel(h, noise, {0, 1}, sc, true);
  r.target = target_unitary(gates::T());
  r.ideal = r.target;
  return r;
}

}  // namespace hqc
