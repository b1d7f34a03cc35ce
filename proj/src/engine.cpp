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

#include "hqc/engine.hpp"

#include <algorithm>
#include <cmath>

namespace hqc {

namespace {

// Complex multiply-accumulate without the NaN/Inf recovery path of operator*.
inline void cmac(cplx& acc, cplx a, cplx b) {
  const double re = a.real() * b.real() - a.imag() * b.imag();
  const double im = a.real() * b.imag() + a.imag() * b.real();
  acc = {acc.real() + re, acc.imag() + im};
}

inline cplx minus_i(cplx v) { return {v.imag(), -v.real()}; }

// Precomputed dissipator pieces. The anticommutator part is folded into the
// generator: N = -i (H - i K) rho with K = 1/2 sum Gamma A^dag A.
struct Dissipator {
  struct Jump {
    std::vector<SparseEntry> entries;
    double rate;
  };
  std::vector<SparseEntry> generator_shift;  // entries of -K
  std::vector<Jump> jumps;

  Dissipator(const NoiseModel& noise, std::size_t dim) {
    CMatrix k(dim, dim);
    for (const auto& ch : noise.channels) {
      if (ch.rate == 0.0) continue;
      k += cplx{0.5 * ch.rate, 0.0} * (ch.op.adjoint() * ch.op);
      Jump j{{}, ch.rate};
      for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c)
          if (ch.op(r, c) != cplx{0.0, 0.0}) j.entries.push_back({r, c, ch.op(r, c)});
      jumps.push_back(std::move(j));
    }
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c)
        if (k(r, c) != cplx{0.0, 0.0}) generator_shift.push_back({r, c, -k(r, c)});
  }
};

// Converts H entries into generator entries g = -i h, then appends the
// dissipative shift.
void to_generator(std::vector<SparseEntry>& entries, const Dissipator* diss) {
  for (auto& e : entries) e.value = minus_i(e.value);
  if (diss) entries.insert(entries.end(), diss->generator_shift.begin(), diss->generator_shift.end());
}

void generator_entries(const HamiltonianSchedule& h, double t, std::size_t seg, const Dissipator* diss,
                       std::vector<SparseEntry>& out) {
  out.clear();
  h.eval_entries(t, seg, out);
  to_generator(out, diss);
}

// out = G y for a dense y with any number of columns.
void apply_generator(std::span<const SparseEntry> g, const CMatrix& y, CMatrix& out) {
  std::fill(out.data().begin(), out.data().end(), cplx{0.0, 0.0});
  const std::size_t cols = y.cols();
  for (const auto& e : g) {
    auto dst = out.row(e.row);
    auto src = y.row(e.col);
    for (std::size_t j = 0; j < cols; ++j) cmac(dst[j], e.value, src[j]);
  }
}

// Lindblad right-hand side for Hermitian rho: N + N^dag + sum Gamma A rho A^dag.
void lindblad_rhs(std::span<const SparseEntry> g, const Dissipator& diss, const CMatrix& rho, CMatrix& n,
                  CMatrix& out) {
  apply_generator(g, rho, n);
  const std::size_t d = rho.rows();
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) out(a, b) = n(a, b) + std::conj(n(b, a));
  for (const auto& jump : diss.jumps) {
    for (const auto& p : jump.entries)
      for (const auto& q : jump.entries) {
        const cplx w = jump.rate * p.value * std::conj(q.value);
        cmac(out(p.row, q.row), w, rho(p.col, q.col));
      }
  }
}

void axpy(CMatrix& y, double a, const CMatrix& x) {
  auto yd = y.data();
  auto xd = x.data();
  for (std::size_t k = 0; k < yd.size(); ++k) yd[k] += a * xd[k];
}

void assign_axpy(CMatrix& out, const CMatrix& y, double a, const CMatrix& x) {
  auto od = out.data();
  auto yd = y.data();
  auto xd = x.data();
  for (std::size_t k = 0; k < od.size(); ++k) od[k] = yd[k] + a * xd[k];
}

// Scratch for one RK4 trajectory.
struct Rk4Work {
  CMatrix acc, tmp, k, n;
  explicit Rk4Work(std::size_t rows, std::size_t cols)
      : acc(rows, cols), tmp(rows, cols), k(rows, cols), n(rows, cols) {}
};

// One classical RK4 step with generator samples at t, t + dt/2, t + dt.
template <typename Rhs>
void rk4_step(CMatrix& y, double dt, Rk4Work& w, const Rhs& rhs, std::span<const SparseEntry> g0,
              std::span<const SparseEntry> gh, std::span<const SparseEntry> g1) {
  rhs(g0, y, w.k);
  w.acc = w.k;
  assign_axpy(w.tmp, y, 0.5 * dt, w.k);
  rhs(gh, w.tmp, w.k);
  axpy(w.acc, 2.0, w.k);
  assign_axpy(w.tmp, y, 0.5 * dt, w.k);
  rhs(gh, w.tmp, w.k);
  axpy(w.acc, 2.0, w.k);
  assign_axpy(w.tmp, y, dt, w.k);
  rhs(g1, w.tmp, w.k);
  axpy(w.acc, 1.0, w.k);
  axpy(y, dt / 6.0, w.acc);
}

struct StepGrid {
  double a, dt;
  int n;
  double b;
  double time(int k) const { return k == n ? b : a + k * dt; }
};

std::vector<StepGrid> make_grid(const HamiltonianSchedule& h, const StepControl& sc) {
  const auto steps = plan_steps(h, sc);
  std::vector<StepGrid> grid;
  const auto& edges = h.boundaries();
  for (std::size_t s = 0; s < steps.size(); ++s)
    grid.push_back({edges[s], (edges[s + 1] - edges[s]) / steps[s], steps[s], edges[s + 1]});
  return grid;
}

void check_hermitian_samples(const HamiltonianSchedule& h) {
  const auto& edges = h.boundaries();
  for (std::size_t s = 0; s + 1 < edges.size(); ++s)
    for (int k = 0; k <= 8; ++k) {
      const double t = edges[s] + (edges[s + 1] - edges[s]) * k / 8.0;
      const CMatrix m = h.eval(t, s);
      const bool finite = std::all_of(m.data().begin(), m.data().end(),
                                      [](cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
      if (!finite || !(hermiticity_deviation(m) <= 1e-10))
        throw InvariantError("Hamiltonian sample is not finite and Hermitian at t = " + std::to_string(t));
    }
}

// Generic single-trajectory driver (used for kets/unitaries and the serial reference).
template <typename Rhs, typename AfterStep>
void integrate(const HamiltonianSchedule& h, const std::vector<StepGrid>& grid, const Dissipator* diss,
               CMatrix& y, const Rhs& rhs, const AfterStep& after_step) {
  Rk4Work work(y.rows(), y.cols());
  std::vector<SparseEntry> g0, gh, g1;
  for (std::size_t s = 0; s < grid.size(); ++s) {
    const auto& sg = grid[s];
    generator_entries(h, sg.time(0), s, diss, g0);
    for (int k = 0; k < sg.n; ++k) {
      const double t = sg.time(k);
      generator_entries(h, t + 0.5 * sg.dt, s, diss, gh);
      generator_entries(h, sg.time(k + 1), s, diss, g1);
      rk4_step(y, sg.dt, work, rhs, g0, gh, g1);
      std::swap(g0, g1);
      after_step(sg.time(k + 1));
    }
  }
}

}  // namespace

bool NoiseModel::empty() const {
  return std::none_of(channels.begin(), channels.end(), [](const auto& c) { return c.rate != 0.0; });
}

void NoiseModel::validate(std::size_t dim) const {
  for (const auto& c : channels) {
    if (c.op.rows() != dim || c.op.cols() != dim)
      throw DimensionError("NoiseModel: operator '" + c.label + "' has the wrong dimension");
    if (!(c.rate >= 0.0) || !std::isfinite(c.rate))
      throw std::invalid_argument("NoiseModel: rate of '" + c.label + "' must be finite and >= 0");
  }
}

HamiltonianSchedule apply_errors(const HamiltonianSchedule& h, const ErrorParams& e, double omega_m) {
  if (!h.has_error_tags())
    throw std::invalid_argument("apply_errors: schedule carries no drive/projector tags");
  if (!std::isfinite(e.epsilon) || !std::isfinite(e.eta))
    throw std::invalid_argument("apply_errors: error fractions must be finite");
  HamiltonianSchedule out = h;
  if (e.none()) return out;
  if (e.epsilon != 0.0) {
    const double scale = 1.0 + e.epsilon;
    for (auto& d : out.drives()) {
      d.amplitude = [inner = d.amplitude, scale](double t) { return scale * inner(t); };
    }
  }
  if (e.eta != 0.0) {
    const double shift = e.mode == EtaMode::Fractional ? e.eta * omega_m : e.eta;
    for (const auto& p : h.error_projectors())
      out.add_diagonal({"detuning_error", p.indices, [shift](double) { return shift; }, p.segment});
  }
  return out;
}

std::vector<int> plan_steps(const HamiltonianSchedule& h, const StepControl& sc) {
  std::vector<int> steps;
  const auto& edges = h.boundaries();
  for (std::size_t s = 0; s + 1 < edges.size(); ++s) {
    if (sc.fixed_steps > 0) {
      steps.push_back(sc.fixed_steps);
      continue;
    }
    const double len = edges[s + 1] - edges[s];
    double n = std::max<double>(sc.min_steps, std::ceil(len * h.frequency_scale(s) / sc.max_phase));
    if (h.carrier() > 0.0) {
      const double period = 2.0 * kPi / h.carrier();
      n = std::max(n, std::ceil(len / (period * sc.carrier_fraction)));
    }
    steps.push_back(static_cast<int>(n) * sc.refine);
  }
  return steps;
}

CMatrix propagate_columns(const HamiltonianSchedule& h, const CMatrix& initial, const StepControl& sc) {
  if (initial.rows() != h.dim()) throw DimensionError("propagate_columns: dimension mismatch");
  check_hermitian_samples(h);
  CMatrix y = initial;
  const auto grid = make_grid(h, sc);
  integrate(h, grid, nullptr, y,
            [](std::span<const SparseEntry> g, const CMatrix& x, CMatrix& out) { apply_generator(g, x, out); },
            [](double) {});
  return y;
}

CMatrix propagate_unitary(const HamiltonianSchedule& h, const StepControl& sc) {
  return propagate_columns(h, CMatrix::identity(h.dim()), sc);
}

CMatrix propagate_unitary(const HamiltonianSchedule& h, int steps_per_segment) {
  if (steps_per_segment < 100) throw std::invalid_argument("propagate_unitary: need >= 100 steps per segment");
  StepControl sc;
  sc.fixed_steps = steps_per_segment;
  return propagate_unitary(h, sc);
}

CMatrix propagate_lindblad(const HamiltonianSchedule& h, const NoiseModel& noise, const CMatrix& rho0,
                           const StepControl& sc, const DensityObserver& observer) {
  if (rho0.rows() != h.dim() || rho0.cols() != h.dim())
    throw DimensionError("propagate_lindblad: rho0 has the wrong dimension");
  const auto rep = dm_checks(rho0);
  if (rep.trace_dev > 1e-9 || rep.herm_dev > 1e-9 || rep.min_eig < -1e-9)
    throw std::invalid_argument("propagate_lindblad: rho0 is not a valid density matrix");
  std::vector<CMatrix> states{rho0};
  evolve_density(h, noise, states, sc, observer, Execution::Serial);
  return states.front();
}

void evolve_density(const HamiltonianSchedule& h, const NoiseModel& noise, std::span<CMatrix> states,
                    const StepControl& sc, const DensityObserver& observer, Execution exec) {
  noise.validate(h.dim());
  for (const auto& s : states)
    if (s.rows() != h.dim() || s.cols() != h.dim()) throw DimensionError("evolve_density: state dimension");
  check_hermitian_samples(h);
  const Dissipator diss(noise, h.dim());
  const auto grid = make_grid(h, sc);
  const auto rhs = [&diss](std::span<const SparseEntry> g, const CMatrix& rho, CMatrix& out) {
    thread_local CMatrix n;
    if (n.rows() != rho.rows()) n = CMatrix(rho.rows(), rho.cols());
    lindblad_rhs(g, diss, rho, n, out);
  };

  if (exec == Execution::Serial) {
    // Reference path: every state walks the full time grid on its own.
    if (observer) {
      // The observer needs all states at the same instant, so march in lockstep.
      std::vector<Rk4Work> work;
      for (const auto& s : states) work.emplace_back(s.rows(), s.cols());
      std::vector<SparseEntry> g0, gh, g1;
      for (std::size_t seg = 0; seg < grid.size(); ++seg) {
        const auto& sg = grid[seg];
        for (int k = 0; k < sg.n; ++k) {
          for (std::size_t i = 0; i < states.size(); ++i) {
            generator_entries(h, sg.time(k), seg, &diss, g0);
            generator_entries(h, sg.time(k) + 0.5 * sg.dt, seg, &diss, gh);
            generator_entries(h, sg.time(k + 1), seg, &diss, g1);
            rk4_step(states[i], sg.dt, work[i], rhs, g0, gh, g1);
          }
          observer(sg.time(k + 1), states);
        }
      }
      return;
    }
    for (auto& s : states) integrate(h, grid, &diss, s, rhs, [](double) {});
    return;
  }

  // Batched path: generator samples for a chunk of steps are computed once and
  // shared by all states, which then advance independently across threads.
  constexpr int kChunk = 512;
  const int chunk = observer ? 1 : kChunk;
  std::vector<SparseEntry> scratch;
  std::vector<SparseEntry> samples;
  std::vector<std::size_t> offsets;
  const long nstates = static_cast<long>(states.size());
  std::vector<Rk4Work> work;
  for (const auto& s : states) work.emplace_back(s.rows(), s.cols());

  for (std::size_t seg = 0; seg < grid.size(); ++seg) {
    const auto& sg = grid[seg];
    for (int k0 = 0; k0 < sg.n; k0 += chunk) {
      const int k1 = std::min(sg.n, k0 + chunk);
      samples.clear();
      offsets.assign(1, 0);
      for (int k = k0; k <= k1; ++k) {
        generator_entries(h, sg.time(k), seg, &diss, scratch);
        samples.insert(samples.end(), scratch.begin(), scratch.end());
        offsets.push_back(samples.size());
        if (k == k1) break;
        generator_entries(h, sg.time(k) + 0.5 * sg.dt, seg, &diss, scratch);
        samples.insert(samples.end(), scratch.begin(), scratch.end());
        offsets.push_back(samples.size());
      }
      const std::span<const SparseEntry> all(samples);
      auto at = [&](int idx) { return all.subspan(offsets[idx], offsets[idx + 1] - offsets[idx]); };

#pragma omp parallel for schedule(static) if (nstates > 1 && !observer)
      for (long i = 0; i < nstates; ++i) {
        for (int k = k0; k < k1; ++k) {
          const int base = 2 * (k - k0);
          rk4_step(states[i], sg.dt, work[i], rhs, at(base), at(base + 1), at(base + 2));
        }
      }
      if (observer) observer(sg.time(k1), states);
    }
  }
}

CMatrix Channel::apply(const CMatrix& rho_comp) const {
  const std::size_t dc = comp_dim();
  if (rho_comp.rows() != dc || rho_comp.cols() != dc) throw DimensionError("Channel::apply: input dimension");
  CMatrix out(dim, dim);
  for (std::size_t a = 0; a < dc; ++a) {
    out += cplx{rho_comp(a, a).real(), 0.0} * images[a * dc + a];
    for (std::size_t b = a + 1; b < dc; ++b) {
      const cplx v = rho_comp(a, b);
      if (v.real() != 0.0) out += cplx{v.real(), 0.0} * images[a * dc + b];
      if (v.imag() != 0.0) {
        if (real_inputs_only)
          throw std::invalid_argument("Channel::apply: complex input on a real-input channel");
        out += cplx{v.imag(), 0.0} * images[b * dc + a];
      }
    }
  }
  return out;
}

std::vector<std::pair<std::size_t, CMatrix>> channel_basis(std::size_t dim,
                                                           std::span<const std::size_t> computational,
                                                           bool real_inputs_only) {
  const std::size_t dc = computational.size();
  std::vector<std::pair<std::size_t, CMatrix>> basis;
  for (std::size_t a = 0; a < dc; ++a)
    for (std::size_t b = 0; b < dc; ++b) {
      const auto ia = computational[a], ib = computational[b];
      if (a == b) {
        basis.emplace_back(a * dc + b, CMatrix::unit(dim, ia, ia));
      } else if (a < b) {
        basis.emplace_back(a * dc + b, CMatrix::unit(dim, ia, ib) + CMatrix::unit(dim, ib, ia));
      } else if (!real_inputs_only) {
        // slot b*dc+a with b > a here means the pair (b, a) reversed: i(E_ba - E_ab) with b < a
        basis.emplace_back(a * dc + b, kI * (CMatrix::unit(dim, ib, ia) - CMatrix::unit(dim, ia, ib)));
      }
    }
  return basis;
}

namespace {

Channel make_channel(std::size_t dim, std::vector<std::size_t> computational, bool real_inputs_only,
                     const std::vector<std::pair<std::size_t, CMatrix>>& basis, std::span<const CMatrix> outputs) {
  Channel ch;
  ch.dim = dim;
  ch.real_inputs_only = real_inputs_only;
  const std::size_t dc = computational.size();
  ch.computational = std::move(computational);
  ch.images.assign(dc * dc, CMatrix(dim, dim));
  for (std::size_t k = 0; k < basis.size(); ++k) ch.images[basis[k].first] = outputs[k];
  return ch;
}

}  // namespace

Channel compute_channel(const HamiltonianSchedule& h, const NoiseModel& noise,
                        std::vector<std::size_t> computational, const StepControl& sc, bool real_inputs_only,
                        Execution exec) {
  const auto basis = channel_basis(h.dim(), computational, real_inputs_only);
  std::vector<CMatrix> states;
  for (const auto& b : basis) states.push_back(b.second);
  evolve_density(h, noise, states, sc, {}, exec);
  return make_channel(h.dim(), std::move(computational), real_inputs_only, basis, states);
}

std::vector<Channel> channel_trajectory(const HamiltonianSchedule& h, const NoiseModel& noise,
                                        std::vector<std::size_t> computational,
                                        std::span<const double> sample_times, std::vector<double>* actual_times,
                                        const StepControl& sc, bool real_inputs_only) {
  const auto basis = channel_basis(h.dim(), computational, real_inputs_only);
  std::vector<CMatrix> states;
  for (const auto& b : basis) states.push_back(b.second);
  std::vector<Channel> out;
  std::size_t next = 0;
  auto record = [&](double t, std::span<const CMatrix> s) {
    while (next < sample_times.size() && t >= sample_times[next] - 1e-9) {
      out.push_back(make_channel(h.dim(), computational, real_inputs_only, basis, s));
      if (actual_times) actual_times->push_back(t);
      ++next;
    }
  };
  record(h.t_start(), states);
  evolve_density(h, noise, states, sc, record, Execution::Parallel);
  return out;
}

Channel unitary_channel(const CMatrix& u, std::vector<std::size_t> computational, bool real_inputs_only) {
  const auto basis = channel_basis(u.rows(), computational, real_inputs_only);
  std::vector<CMatrix> outputs;
  const CMatrix ud = u.adjoint();
  for (const auto& b : basis) outputs.push_back(u * b.second * ud);
  return make_channel(u.rows(), std::move(computational), real_inputs_only, basis, outputs);
}

}  // namespace hqc
