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

#include "hqc/rydberg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace hqc {

namespace {

constexpr std::size_t kR = 2;

std::size_t pow3(std::size_t n) {
  std::size_t d = 1;
  for (std::size_t i = 0; i < n; ++i) d *= 3;
  return d;
}

// Digit of `atom` in a register of `atoms` atoms (atom 0 is the most significant).
std::size_t digit(std::size_t index, std::size_t atom, std::size_t atoms) {
  return index / pow3(atoms - 1 - atom) % 3;
}

std::size_t with_digit(std::size_t index, std::size_t atom, std::size_t atoms, std::size_t value) {
  const std::size_t w = pow3(atoms - 1 - atom);
  return index - digit(index, atom, atoms) * w + value * w;
}

// Lifts a single-atom coupling (row, col) onto `atom`, for every state of the other atoms.
std::vector<HamiltonianSchedule::Coupling> lift(const std::vector<HamiltonianSchedule::Coupling>& cs,
                                                std::size_t atom, std::size_t atoms) {
  std::vector<HamiltonianSchedule::Coupling> out;
  const std::size_t dim = pow3(atoms);
  for (const auto& c : cs)
    for (std::size_t s = 0; s < dim; ++s) {
      if (digit(s, atom, atoms) != c.col) continue;
      out.push_back({with_digit(s, atom, atoms, c.row), s, c.weight});
    }
  return out;
}

std::vector<std::size_t> lift_indices(const std::vector<std::size_t>& idx, std::size_t atom, std::size_t atoms) {
  std::vector<std::size_t> out;
  const std::size_t dim = pow3(atoms);
  for (std::size_t s = 0; s < dim; ++s)
    if (std::find(idx.begin(), idx.end(), digit(s, atom, atoms)) != idx.end()) out.push_back(s);
  return out;
}

std::vector<std::size_t> rydberg_of(std::size_t atom, std::size_t atoms) { return lift_indices({kR}, atom, atoms); }

}  // namespace

std::vector<std::string> ratio_warnings(const RydbergParams& p) {
  std::vector<std::string> w;
  if (p.v / p.omega_c < 5.0) w.push_back("blockade V is less than 5x the control drive");
  if (p.omega_c / p.omega_t_peak < 5.0) w.push_back("control drive is less than 5x the target peak");
  if (p.v / p.omega_t < 5.0) w.push_back("blockade V is less than 5x the five-step target drive");
  return w;
}

NoiseModel rydberg_noise(std::size_t atoms, double gamma_minus, double gamma_z) {
  const std::size_t dim = pow3(atoms);
  NoiseModel m;
  for (std::size_t a = 0; a < atoms; ++a) {
    CMatrix lower(dim, dim), z(dim, dim);
    for (std::size_t s = 0; s < dim; ++s) {
      const std::size_t d = digit(s, a, atoms);
      z(s, s) = d == kR ? 1.0 : -1.0;
      if (d == kR) {
        lower(with_digit(s, a, atoms, 0), s) = 1.0;
        lower(with_digit(s, a, atoms, 1), s) = 1.0;
      }
    }
    const std::string tag = "atom" + std::to_string(a);
    m.channels.push_back({"sigma_minus_" + tag, lower, gamma_minus});
    m.channels.push_back({"sigma_z_" + tag, z, gamma_z});
  }
  return m;
}

NoiseModel rydberg_noise(std::size_t atoms) { return rydberg_noise(atoms, units::khz(3), units::khz(3) / 100.0); }

std::vector<std::size_t> computational_indices(std::size_t atoms) {
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < pow3(atoms); ++s) {
    bool qubit = true;
    for (std::size_t a = 0; a < atoms; ++a) qubit = qubit && digit(s, a, atoms) != kR;
    if (qubit) out.push_back(s);
  }
  return out;
}

std::vector<PulseSegment> snap_segments(std::vector<PulseSegment> segs, double period) {
  if (!(period > 0.0)) throw std::invalid_argument("snap_segments: period must be positive");
  for (auto& s : segs) {
    const double cycles = std::max(1.0, std::round(s.tau / period));
    const double tau = cycles * period;
    s.omega_m *= s.tau / tau;
    s.tau = tau;
  }
  return segs;
}

std::vector<PulseSegment> target_segments(const GateSpec& spec, int n_segments, const RydbergParams& p) {
  const double peak = p.peak == PeakConvention::PerLeg ? p.omega_t_peak : p.omega_t_peak * leg_factor(spec);
  auto segs = composite(spec, n_segments, peak);
  if (p.snap_to_carrier) segs = snap_segments(std::move(segs), 2.0 * kPi / p.carrier);
  return segs;
}

HamiltonianSchedule multi_qubit_schedule(std::size_t n_controls, const GateSpec& spec,
                                         const std::vector<PulseSegment>& segs, const RydbergParams& p) {
  if (n_controls < 1) throw std::invalid_argument("multi_qubit_schedule: need at least one control");
  if (n_controls > 3)
    throw std::invalid_argument("multi_qubit_schedule: at most 3 controls (a 3^(N+1) space beyond 81 states "
                                "is outside the dense-matrix design)");
  if (p.omega_c / p.omega_t_peak < 2.0)
    throw std::invalid_argument("multi_qubit_schedule: control drive must be at least 2x the target peak");
  const std::size_t atoms = n_controls + 1;
  const std::size_t target = n_controls;
  const HamiltonianSchedule single = hamiltonian_schedule(spec, segs);
  HamiltonianSchedule h(pow3(atoms), single.t_start(), single.t_end());
  for (std::size_t k = 1; k + 1 < single.boundaries().size(); ++k) h.add_boundary(single.boundaries()[k]);

  const double oc = p.omega_c, w = p.carrier;
  for (std::size_t c = 0; c < n_controls; ++c)
    h.add_drive({"control" + std::to_string(c), lift({{kR, 0, cplx{1.0, 0.0}}}, c, atoms),
                 [oc, w](double t) { return cplx{oc * std::cos(w * t), 0.0}; }, HamiltonianSchedule::kAllSegments});
  for (const auto& d : single.drives())
    h.add_drive({"target_" + d.label, lift(d.couplings, target, atoms), d.amplitude, d.segment});
  for (const auto& d : single.diagonals())
    h.add_diagonal({"target_" + d.label, lift_indices(d.indices, target, atoms), d.value, d.segment});

  CMatrix blockade(h.dim(), h.dim());
  for (std::size_t s = 0; s < h.dim(); ++s) {
    std::size_t excited = 0;
    for (std::size_t a = 0; a < atoms; ++a) excited += digit(s, a, atoms) == kR;
    // every excited pair interacts with strength v
    if (excited > 1) blockade(s, s) = p.v * static_cast<double>(excited * (excited - 1) / 2);
  }
  h.add_static(blockade);

  std::vector<std::size_t> excited;
  for (std::size_t a = 0; a < atoms; ++a) {
    const auto r = rydberg_of(a, atoms);
    h.add_error_projector({r, HamiltonianSchedule::kAllSegments});
    excited.insert(excited.end(), r.begin(), r.end());
  }
  std::sort(excited.begin(), excited.end());
  excited.erase(std::unique(excited.begin(), excited.end()), excited.end());
  h.set_excited_indices(excited);
  h.set_carrier(p.carrier);
  return h;
}

HamiltonianSchedule two_qubit_schedule(const GateSpec& spec, const std::vector<PulseSegment>& segs,
                                       const RydbergParams& p) {
  return multi_qubit_schedule(1, spec, segs, p);
}

CMatrix controlled_ideal(std::size_t n_controls, const CMatrix& u) {
  const std::size_t n = std::size_t{1} << (n_controls + 1);
  CMatrix out = CMatrix::identity(n);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) out(n - 2 + i, n - 2 + j) = u(i, j);
  return out;
}

TwoQubitGate cs_cnot(const RydbergParams& p, const ErrorParams& e) {
  const GateSpec spec{kPi / 2, 0.0, kPi};
  const auto segs = target_segments(spec, 2, p);
  TwoQubitGate g{apply_errors(two_qubit_schedule(spec, segs, p), e, p.omega_t_peak), {}, 0.0};
  g.ideal = controlled_ideal(1, holonomy_unitary(spec));
  g.duration = g.schedule.duration();
  return g;
}

std::vector<double> dg_cnot_steps(const RydbergParams& p) {
  const double t15 = kPi / (4.0 * p.omega01);
  const double t24 = kPi / (2.0 * p.omega_c_dg);
  const double t3 = kPi / p.omega_t;
  return {t15, t24, t3, t24, t15};
}

namespace {

struct DgStep {
  std::vector<HamiltonianSchedule::Coupling> couplings;
  double rabi;
  std::vector<std::size_t> eta_indices;
};

std::vector<DgStep> dg_steps(const RydbergParams& p, bool blockade_limit) {
  const std::size_t atoms = 2;
  const auto qubit = [&](double phase) { return lift({{1, 0, std::exp(kI * phase)}}, 1, atoms); };
  const auto control = lift({{kR, 1, cplx{1.0, 0.0}}}, 0, atoms);
  auto target = lift({{kR, 1, cplx{1.0, 0.0}}}, 1, atoms);
  if (blockade_limit)
    std::erase_if(target, [&](const auto& c) { return digit(c.col, 0, atoms) == kR; });
  const auto t1 = lift_indices({1}, 1, atoms);
  const auto rc = rydberg_of(0, atoms), rt = rydberg_of(1, atoms);
  return {{qubit(kPi / 2), p.omega01, t1},
          {control, p.omega_c_dg, rc},
          {target, p.omega_t, rt},
          {control, p.omega_c_dg, rc},
          {qubit(-kPi / 2), p.omega01, t1}};
}

}  // namespace

TwoQubitGate dg_cnot(const RydbergParams& p, const ErrorParams& e) {
  const auto lengths = dg_cnot_steps(p);
  double total = 0.0;
  for (double l : lengths) total += l;
  HamiltonianSchedule h(9, 0.0, total);
  double t0 = 0.0;
  for (std::size_t k = 0; k + 1 < lengths.size(); ++k) h.add_boundary(t0 += lengths[k]);
  const auto steps = dg_steps(p, false);
  for (std::size_t k = 0; k < steps.size(); ++k) {
    const double rabi = steps[k].rabi;
    h.add_drive({"step" + std::to_string(k + 1), steps[k].couplings, [rabi](double) { return cplx{rabi, 0.0}; },
                 static_cast<int>(k)});
    h.add_error_projector({steps[k].eta_indices, static_cast<int>(k)});
  }
  h.add_static(cplx{p.v, 0.0} * CMatrix::unit(9, 8, 8));
  h.set_excited_indices({2, 5, 6, 7, 8});
  TwoQubitGate g{apply_errors(h, e, p.omega_t), dg_cnot_ideal(p), total};
  return g;
}

CMatrix dg_cnot_ideal(const RydbergParams& p) {
  const auto lengths = dg_cnot_steps(p);
  const auto steps = dg_steps(p, true);
  CMatrix u = CMatrix::identity(9);
  for (std::size_t k = 0; k < steps.size(); ++k) {
    CMatrix hk(9, 9);
    for (const auto& c : steps[k].couplings) {
      hk(c.row, c.col) += steps[k].rabi * c.weight;
      hk(c.col, c.row) += steps[k].rabi * std::conj(c.weight);
    }
    u = expm_skew(hk, lengths[k]) * u;
  }
  const auto comp = computational_indices(2);
  return submatrix(u, comp);
}

namespace {

FidelityReport run_two_qubit(const TwoQubitGate& g, const TwoQubitOptions& o, const std::string& label) {
  const auto ch = compute_channel(g.schedule, rydberg_noise(2, o.gamma_minus, o.gamma_z), computational_indices(2),
                                  o.steps, true);
  auto rep = fidelity_2q(ch, g.ideal, o.samples);
  rep.label = label;
  rep.params["duration_ns"] = g.duration;
  rep.params["gamma_minus_rad_ns"] = o.gamma_minus;
  rep.params["gamma_z_rad_ns"] = o.gamma_z;
  rep.params["epsilon"] = o.errors.epsilon;
  rep.params["eta_rad_ns"] = o.errors.eta;
  rep.params["steps"] = to_json(o.steps);
  return rep;
}

}  // namespace

FidelityReport run_cs_cnot(const RydbergParams& p, const TwoQubitOptions& o) {
  auto rep = run_two_qubit(cs_cnot(p, o.errors), o, "cs-cnot");
  rep.params["omega_c_rad_ns"] = p.omega_c;
  rep.params["carrier_rad_ns"] = p.carrier;
  rep.params["v_rad_ns"] = p.v;
  rep.params["omega_t_peak_rad_ns"] = p.omega_t_peak;
  rep.params["peak_convention"] = p.peak == PeakConvention::PerLeg ? "per-leg" : "combined";
  return rep;
}

FidelityReport run_dg_cnot(const RydbergParams& p, const TwoQubitOptions& o) {
  auto rep = run_two_qubit(dg_cnot(p, o.errors), o, "dg-cnot");
  rep.params["omega01_rad_ns"] = p.omega01;
  rep.params["omega_c_rad_ns"] = p.omega_c_dg;
  rep.params["omega_t_rad_ns"] = p.omega_t;
  rep.params["v_rad_ns"] = p.v;
  return rep;
}

CMatrix multi_qubit_effective(std::size_t n_controls, const GateSpec& spec, const std::vector<PulseSegment>& segs) {
  const CMatrix u = propagate_unitary(hamiltonian_schedule(spec, segs));
  const std::size_t comp[] = {0, 1};
  return controlled_ideal(n_controls, submatrix(u, comp));
}

MultiQubitCheck multi_qubit_check(std::size_t n_controls, const GateSpec& spec, int n_segments,
                                  const RydbergParams& p, const StepControl& sc) {
  const auto segs = target_segments(spec, n_segments, p);
  const HamiltonianSchedule h = multi_qubit_schedule(n_controls, spec, segs, p);
  const auto comp = computational_indices(n_controls + 1);
  CMatrix kets(h.dim(), comp.size());
  for (std::size_t i = 0; i < comp.size(); ++i) kets(comp[i], i) = 1.0;
  const CMatrix out = propagate_columns(h, kets, sc);

  MultiQubitCheck r;
  r.dim = h.dim();
  r.duration = h.duration();
  r.min_return = 1.0;
  const std::size_t branch = comp.size() - 2;  // both target states with every control in |1>
  for (std::size_t i = 0; i < branch; ++i) r.min_return = std::min(r.min_return, std::norm(out(comp[i], i)));

  const CMatrix eff = multi_qubit_effective(n_controls, spec, segs);
  cplx overlap{0.0, 0.0};
  double norm = 0.0;
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) {
      const cplx m = out(comp[branch + a], branch + b);
      overlap += std::conj(eff(branch + a, branch + b)) * m;
      norm += std::norm(m);
    }
  r.branch_fidelity = (std::norm(overlap) + norm) / 6.0;
  return r;
}

void write_two_qubit_csv(std::ostream& os, const GateSpec& spec, const std::vector<PulseSegment>& segs,
                         const RydbergParams& p, int samples_per_segment) {
  if (samples_per_segment < 2) throw std::invalid_argument("write_two_qubit_csv: need >= 2 samples per segment");
  os << "atom,t_ns,Omega0_rad_ns,Omega1_rad_ns,phase0_rad,phase1_rad,Delta_rad_ns\n";
  char line[256];
  double t0 = 0.0;
  for (const auto& seg : segs) {
    const Waveforms w(seg, spec);
    for (int i = 0; i < samples_per_segment; ++i) {
      const double t = seg.tau * i / (samples_per_segment - 1);
      const double c = p.omega_c * std::cos(p.carrier * (t0 + t));
      std::snprintf(line, sizeof line, "c,%.10g,%.10g,0,0,0,0\n", t0 + t, c);
      os << line;
      const WaveSample s = w.at(t);
      std::snprintf(line, sizeof line, "t,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g\n", t0 + t, s.omega0, s.omega1,
                    s.phase0, s.phase1, s.delta);
      os << line;
    }
    t0 += seg.tau;
  }
}

}  // namespace hqc
