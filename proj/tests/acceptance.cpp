// Acceptance suite: one PASS/FAIL line per criterion at pinned tolerances.
// Exit status is non-zero when any criterion fails.

#include "hqc/metrics.hpp"
#include "hqc/rydberg.hpp"
#include "hqc/units.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace hqc;

namespace {

const double kOm = units::mhz(10);

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [miss]");
  }
};

std::string fmt(const char* f, double a) {
  char b[64];
  std::snprintf(b, sizeof b, f, a);
  return b;
}

// Every fidelity the suite reports, re-evaluable at another step size.
struct Reported {
  std::string name;
  double value;
  std::function<double(const StepControl&)> eval;
};
std::vector<Reported> g_reported;

double report(const std::string& name, std::function<double(const StepControl&)> eval) {
  const double v = eval(StepControl{});
  g_reported.push_back({name, v, std::move(eval)});
  return v;
}

double one_qubit(const std::string& name, const std::function<FidelityReport(const OneQubitOptions&)>& run,
                 const NoiseRates& rates) {
  return report(name, [run, rates](const StepControl& sc) {
    return run(OneQubitOptions{kOm, rates, {}, sc, 1001}).fidelity;
  });
}

bool near_pp(double f, double expect_pct, double tol_pp) { return std::abs(100 * f - expect_pct) <= tol_pp; }

std::string pct(double f) { return fmt("%.4f%%", 100 * f); }

Outcome criterion1() {
  Outcome o;
  const std::pair<const char*, std::pair<GateSpec, double>> cases[] = {
      {"S", {gates::S(), 63.45}}, {"T", {gates::T(), 43.67}}, {"sqrtH", {gates::SqrtH(), 58.62}}};
  for (const auto& [name, c] : cases) {
    const double tau = composite(c.first, 1, kOm)[0].tau;
    o.require(std::abs(tau - c.second) <= 0.1, std::string("tau_") + name + " = " + fmt("%.4f ns", tau));
  }
  return o;
}

Outcome criterion2() {
  Outcome o;
  const std::pair<const char*, std::pair<GateSpec, double>> cases[] = {
      {"S", {gates::S(), 99.97}}, {"T", {gates::T(), 99.99}}, {"sqrtH", {gates::SqrtH(), 99.97}}};
  for (const auto& [name, c] : cases) {
    const GateSpec spec = c.first;
    const double f = one_qubit(std::string("F_") + name,
                               [spec](const OneQubitOptions& oo) { return run_snhqc(spec, 1, oo); },
                               presets::baseline());
    o.require(near_pp(f, c.second, 0.05), std::string("F_") + name + " = " + pct(f));
  }
  return o;
}

Outcome criterion3() {
  Outcome o;
  const double tau_ref = 2 * kPi / kOm;
  double lo = 0.3, hi = 0.98;
  for (int i = 0; i < 60; ++i) {
    const double m = 0.5 * (lo + hi);
    (make_segment(m * kPi, 0.0, kOm).tau < tau_ref ? lo : hi) = m;
  }
  const double x = 0.5 * (lo + hi);
  // monotone: faster below the crossing, slower above
  const bool shape = make_segment(0.5 * kPi, 0.0, kOm).tau < tau_ref && make_segment(0.9 * kPi, 0.0, kOm).tau > tau_ref;
  o.require(std::abs(x - 0.76) <= 0.02 && shape, "crossing gamma = " + fmt("%.4f pi", x) + " vs baseline " +
                                                     fmt("%.1f ns", tau_ref));
  return o;
}

Outcome criterion4() {
  Outcome o;
  struct Cell {
    const char* name;
    double j, dg_pct, n, cs_pct;
  };
  const Cell cells[] = {{"case1", 66, 99.96, 160, 99.98}, {"case2", 32, 99.82, 10, 99.93}, {"case3", 17, 98.41, 10, 98.58}};
  const std::vector<double> ladder{2, 10, 20, 40, 80, 160, 320};
  std::vector<double> js;
  for (int j = 10; j <= 140; ++j) js.push_back(j);
  for (const auto& c : cells) {
    const NoiseRates r = presets::by_name(c.name, kOm);
    const double j = c.j, n = c.n;
    const double dg = one_qubit(std::string(c.name) + " DG j", [j](const OneQubitOptions& oo) { return run_dyn_h(j, oo); }, r);
    const double cs = one_qubit(std::string(c.name) + " CS N",
                                [n](const OneQubitOptions& oo) { return run_snhqc(gates::H(), static_cast<int>(n), oo); }, r);
    o.require(near_pp(dg, c.dg_pct, 0.1), std::string(c.name) + " DG(j=" + fmt("%g", j) + ") " + pct(dg));
    o.require(near_pp(cs, c.cs_pct, 0.1), std::string(c.name) + " CS(N=" + fmt("%g", n) + ") " + pct(cs));
    const OneQubitOptions base{kOm, r, {}, {}, 1001};
    const auto jopt = optimize_scalar(js, [&](double x) { return run_dyn_h(x, base).fidelity; });
    const auto nopt = optimize_scalar(ladder, [&](double x) { return run_snhqc(gates::H(), static_cast<int>(x), base).fidelity; });
    o.require(jopt.best == c.j, std::string(c.name) + " argmax j = " + fmt("%g", jopt.best));
    o.require(nopt.best == c.n, std::string(c.name) + " argmax N = " + fmt("%g", nopt.best));
  }
  return o;
}

Outcome criterion5() {
  Outcome o;
  const OneQubitOptions base{kOm, presets::case3(kOm), {}, {}, 1001};
  const auto n = optimize_scalar({2, 4, 6, 8, 10, 20, 40}, [&](double x) {
    return run_snhqc(gates::T(), static_cast<int>(x), base).fidelity;
  });
  o.require(n.best == 2, "best N = " + fmt("%g", n.best) + " (" + pct(n.value) + ")");
  std::vector<double> ks;
  for (double k = 1.0; k <= 40.0; k += 0.5) ks.push_back(k);
  const auto k = optimize_scalar(ks, [&](double x) { return run_dyn_t(x, base).fidelity; });
  const double at17 = run_dyn_t(17, base).fidelity;
  o.require(std::abs(k.best - 17) <= 2, "best DG k = " + fmt("%g", k.best) + " (" + pct(k.value) + "; k=17 gives " +
                                            pct(at17) + ")");
  return o;
}

Outcome criterion6() {
  Outcome o;
  const auto grid = linspace(-0.1, 0.1, 21);
  const OneQubitOptions base{kOm, presets::baseline(), {}, {}, 1001};
  auto at = [&](const std::function<FidelityReport(const OneQubitOptions&)>& run, ErrorParams e) {
    OneQubitOptions a = base;
    a.errors = e;
    return run(a).fidelity;
  };
  const std::pair<const char*, GateSpec> gs[] = {{"S", gates::S()}, {"T", gates::T()}, {"sqrtH", gates::SqrtH()}};
  for (const auto& [name, spec] : gs) {
    double margin = 1.0;
    for (double x : grid) {
      const ErrorParams e{0.0, x, EtaMode::Fractional};
      margin = std::min(margin, at([&](const OneQubitOptions& a) { return run_snhqc(spec, 1, a); }, e) -
                                    at([&](const OneQubitOptions& a) { return run_baseline(spec, 2 * kPi / kOm, a); }, e));
    }
    o.require(margin >= 0.0, std::string(name) + " eta-axis margin " + fmt("%.2e", margin));
  }
  double margin = 1.0;
  for (bool eps_axis : {true, false})
    for (double x : grid) {
      const ErrorParams e{eps_axis ? x : 0.0, eps_axis ? 0.0 : x, EtaMode::Fractional};
      margin = std::min(margin, at([](const OneQubitOptions& a) { return run_snhqc(gates::T(), 2, a); }, e) -
                                    at([](const OneQubitOptions& a) { return run_snhqc(gates::T(), 1, a); }, e));
    }
  o.require(margin >= 0.0, "T composite N=2 vs single both axes margin " + fmt("%.2e", margin));
  return o;
}

Outcome criterion7() {
  Outcome o;
  double last = 2.0, worst = 0.0;
  bool decreasing = true;
  std::string maxima;
  for (int n : {2, 10, 20, 40}) {
    const auto segs = composite(gates::T(), n, kOm);
    const Ket bright = AuxFrame(segs[0], gates::T()).mu(2, 0.0);
    StepControl sc;
    sc.fixed_steps = 2000;
    const double m = excited_population(hamiltonian_schedule(gates::T(), segs), {}, bright, sc).max();
    const double l = segs[0].ell;
    worst = std::max(worst, std::abs(m - l * l / (1 + l * l)));
    decreasing = decreasing && m < last;
    last = m;
    maxima += (maxima.empty() ? "" : ", ") + fmt("%.5f", m);
  }
  o.require(worst <= 1e-4, "max |P_e - l^2/(1+l^2)| = " + fmt("%.2e", worst));
  o.require(decreasing, "max P_e over N = 2, 10, 20, 40: " + maxima);
  return o;
}

Outcome criterion8() {
  Outcome o;
  const RydbergParams p;
  const double cs = report("CS-CNOT", [p](const StepControl& sc) {
    TwoQubitOptions t;
    t.steps = sc;
    return run_cs_cnot(p, t).fidelity;
  });
  o.require(near_pp(cs, 99.71, 0.15), "CS " + pct(cs) + " over " + fmt("%.1f ns", cs_cnot(p, {}).duration));
  auto dg_at = [](double mhz) {
    return [mhz](const StepControl& sc) {
      RydbergParams q;
      q.omega_t = units::mhz(mhz);
      TwoQubitOptions t;
      t.steps = sc;
      return run_dg_cnot(q, t).fidelity;
    };
  };
  const double dg1 = report("DG-CNOT 1 MHz", dg_at(1));
  const double dg10 = report("DG-CNOT 10 MHz", dg_at(10));
  o.require(near_pp(dg1, 98.94, 0.2), "DG(1 MHz) " + pct(dg1));
  o.require(near_pp(dg10, 99.83, 0.1), "DG(10 MHz) " + pct(dg10));
  std::vector<double> grid;
  for (int m = 1; m <= 20; ++m) grid.push_back(m);
  const auto best = optimize_scalar(grid, [&](double m) { return dg_at(m)(StepControl{}); });
  o.require(best.best == 10, "Omega_t sweep argmax " + fmt("%g MHz", best.best));
  return o;
}

Outcome criterion9() {
  Outcome o;
  double comp = 0.0, hol = 0.0, frame = 0.0;
  const std::pair<GateSpec, int> gs[] = {{gates::S(), 1}, {gates::T(), 1}, {gates::SqrtH(), 1}, {gates::H(), 2},
                                         {gates::T(), 2}, {gates::H(), 10}, {GateSpec{1.1, 0.7, 2.0}, 3}};
  for (const auto& [spec, n] : gs) {
    const auto segs = composite(spec, n, kOm);
    const auto h = hamiltonian_schedule(spec, segs);
    const std::size_t idx[] = {0, 1};
    comp = std::max(comp, phase_insensitive_distance(submatrix(propagate_unitary(h), idx), target_unitary(spec)));
    double t0 = 0.0;
    for (const auto& s : segs) {
      hol = std::max(hol, std::abs(holonomy_angle(s) - s.gamma_seg));
      const AuxFrame f(s, spec);
      for (double x : {0.13, 0.5, 0.77}) frame = std::max(frame, max_abs(f.reconstruct_hamiltonian(x * s.tau) - h.eval(t0 + x * s.tau)));
      t0 += s.tau;
    }
  }
  o.require(comp <= 1e-6, "composite vs target " + fmt("%.1e", comp));
  o.require(hol <= 1e-6, "holonomy residual " + fmt("%.1e", hol));
  o.require(frame <= 1e-7, "frame reconstruction " + fmt("%.1e", frame));

  // Lindblad bounds along a noisy two-qubit run
  double trace = 0.0, eig = 0.0;
  {
    const RydbergParams p;
    const auto g = dg_cnot(p, {});
    Ket psi(9);
    psi[0] = psi[1] = psi[3] = psi[4] = 0.5;
    int k = 0;
    propagate_lindblad(g.schedule, rydberg_noise(2, units::khz(300), units::khz(30)), psi.projector(), {},
                       [&](double, std::span<const CMatrix> s) {
                         if (++k % 50) return;
                         const auto r = dm_checks(s[0]);
                         trace = std::max(trace, r.trace_dev);
                         eig = std::min(eig, r.min_eig);
                       });
  }
  o.require(trace <= 1e-9 && eig >= -1e-9, "trace drift " + fmt("%.1e", trace) + ", min eigenvalue " + fmt("%.1e", eig));

  double halving = 0.0;
  std::string worst;
  for (const auto& r : g_reported) {
    const double d = std::abs(r.eval(StepControl{}.halved()) - r.value);
    if (d >= halving) {
      halving = d;
      worst = r.name;
    }
  }
  o.require(halving < 1e-7, "step halving " + fmt("%.1e", halving) + " over " + std::to_string(g_reported.size()) +
                                " fidelities (worst " + worst + ")");
  return o;
}

Outcome criterion10() {
  Outcome o;
  const auto r = multi_qubit_check(2, GateSpec{kPi / 2, 0.0, kPi}, 2, RydbergParams{});
  o.require(r.dim == 27, "dim " + std::to_string(r.dim));
  o.require(r.branch_fidelity >= 0.98, "|11> branch vs effective " + fmt("%.6f", r.branch_fidelity));
  o.require(r.min_return >= 0.98, "frozen branches min return " + fmt("%.6f", r.min_return));
  return o;
}

}  // namespace

int main() {
  using Clock = std::chrono::steady_clock;
  const std::pair<int, Outcome (*)()> criteria[] = {{1, criterion1}, {2, criterion2}, {3, criterion3},
                                                     {4, criterion4}, {5, criterion5}, {6, criterion6},
                                                     {7, criterion7}, {8, criterion8}, {9, criterion9},
                                                     {10, criterion10}};
  int failed = 0;
  for (const auto& [id, run] : criteria) {
    const auto t0 = Clock::now();
    const Outcome o = run();
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    std::printf("criterion %2d: %s  %s  (%.1f s)\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d of 10 criteria passed\n", 10 - failed);
  return failed ? 1 : 0;
}
