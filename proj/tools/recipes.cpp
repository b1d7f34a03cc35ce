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

#include "recipes.hpp"

#include "cli_config.hpp"
#include "svg_plot.hpp"

#include "hqc/metrics.hpp"
#include "hqc/rydberg.hpp"
#include "hqc/version.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>

namespace hqc::cli {

namespace {

using nlohmann::json;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

std::string path_in(const RecipeOptions& o, const std::string& file) {
  return (std::filesystem::path(o.out_dir) / file).string();
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot write '" + path + "'");
  return os;
}

// CSV plus, on request, an SVG of every column against the first.
void emit(const RecipeOptions& o, const std::string& stem, const Table& t, const std::string& title,
          const std::string& ylabel, std::ostream& log) {
  auto os = open_out(path_in(o, stem + ".csv"));
  for (std::size_t c = 0; c < t.columns.size(); ++c) os << (c ? "," : "") << t.columns[c];
  os << '\n';
  char b[40];
  for (const auto& r : t.rows) {
    for (std::size_t c = 0; c < r.size(); ++c) {
      std::snprintf(b, sizeof b, "%.12g", r[c]);
      os << (c ? "," : "") << b;
    }
    os << '\n';
  }
  log << "wrote " << path_in(o, stem + ".csv") << '\n';
  if (!o.svg) return;
  std::vector<Series> series;
  for (std::size_t c = 1; c < t.columns.size(); ++c) {
    Series s{t.columns[c], {}, {}};
    for (const auto& r : t.rows) {
      s.x.push_back(r[0]);
      s.y.push_back(r[c]);
    }
    series.push_back(std::move(s));
  }
  auto svg = open_out(path_in(o, stem + ".svg"));
  write_svg(svg, title, t.columns[0], ylabel, series);
}

json provenance(const std::string& name, const RecipeOptions& o) {
  return {{"recipe", name},
          {"version", kVersion},
          {"omega_m_rad_ns", o.omega_m},
          {"samples", o.samples},
          {"samples_2q", o.samples_2q},
          {"points", o.points},
          {"steps", to_json(StepControl{})}};
}

std::vector<double> error_grid(const RecipeOptions& o) { return linspace(-0.1, 0.1, o.points); }

// One-dimensional cut through the error plane.
std::vector<double> axis_curve(const ErrorObjective& f, const std::vector<double>& grid, bool eps_axis,
                               EtaMode mode) {
  const std::vector<double> zero{0.0};
  return robustness_sweep(f, eps_axis ? grid : zero, eps_axis ? zero : grid, mode).values;
}

ErrorObjective snhqc_objective(const GateSpec& spec, int n, const OneQubitOptions& base) {
  return [spec, n, base](const ErrorParams& e) {
    OneQubitOptions a = base;
    a.errors = e;
    return run_snhqc(spec, n, a).fidelity;
  };
}

ErrorObjective baseline_objective(const GateSpec& spec, double tau, const OneQubitOptions& base) {
  return [spec, tau, base](const ErrorParams& e) {
    OneQubitOptions a = base;
    a.errors = e;
    return run_baseline(spec, tau, a).fidelity;
  };
}

ErrorObjective dyn_objective(bool h_gate, double param, const OneQubitOptions& base) {
  return [h_gate, param, base](const ErrorParams& e) {
    OneQubitOptions a = base;
    a.errors = e;
    return h_gate ? run_dyn_h(param, a).fidelity : run_dyn_t(param, a).fidelity;
  };
}

// Both error axes for a set of named objectives; writes <stem>_eps.csv and <stem>_eta.csv.
json robustness_pair(const RecipeOptions& o, const std::string& stem, const std::string& title,
                     const std::vector<std::pair<std::string, ErrorObjective>>& curves, EtaMode mode,
                     std::ostream& log) {
  const auto grid = error_grid(o);
  json out;
  for (bool eps_axis : {true, false}) {
    Table t{{eps_axis ? "epsilon" : "eta"}, {}};
    std::vector<std::vector<double>> values;
    for (const auto& [name, f] : curves) {
      t.columns.push_back(name);
      values.push_back(axis_curve(f, grid, eps_axis, mode));
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
      std::vector<double> row{grid[i]};
      for (const auto& v : values) row.push_back(v[i]);
      t.rows.push_back(std::move(row));
    }
    const std::string s = stem + (eps_axis ? "_eps" : "_eta");
    emit(o, s, t, title, "fidelity", log);
    json mins;
    for (std::size_t k = 0; k < curves.size(); ++k)
      mins[curves[k].first] = *std::min_element(values[k].begin(), values[k].end());
    out[eps_axis ? "epsilon_axis_min" : "eta_axis_min"] = mins;
  }
  return out;
}

double baseline_tau(const RecipeOptions& o) { return 2.0 * kPi / o.omega_m; }

json fig1c(const RecipeOptions& o, std::ostream& log) {
  Table t{{"gamma_over_pi", "tau_snhqc_ns", "tau_nhqc_ns"}, {}};
  for (double g : linspace(0.02, 0.96, 48))
    t.rows.push_back({g, make_segment(g * kPi, 0.0, o.omega_m).tau, baseline_tau(o)});
  emit(o, "fig1c", t, "Z-rotation gate time", "ns", log);
  double lo = 0.02, hi = 0.98;
  for (int i = 0; i < 60; ++i) {
    const double m = 0.5 * (lo + hi);
    (make_segment(m * kPi, 0.0, o.omega_m).tau < baseline_tau(o) ? lo : hi) = m;
  }
  return {{"crossing_gamma_over_pi", 0.5 * (lo + hi)}, {"tau_nhqc_ns", baseline_tau(o)}};
}

json fig2(const RecipeOptions& o, std::ostream& log) {
  json out;
  const std::pair<const char*, GateSpec> gs[] = {{"s", gates::S()}, {"t", gates::T()}, {"sqrth", gates::SqrtH()}};
  for (const auto& [name, spec] : gs) {
    const auto segs = composite(spec, 1, o.omega_m);
    const std::string file = path_in(o, std::string("fig2_") + name + ".csv");
    auto os = open_out(file);
    write_waveform_csv(os, spec, segs, 401);
    log << "wrote " << file << '\n';
    out[name] = {{"tau_ns", segs[0].tau}, {"holonomy_rad", holonomy_angle(segs[0])}};
  }
  return out;
}

json fig3(const RecipeOptions& o, std::ostream& log) {
  OneQubitOptions base{o.omega_m, presets::baseline(), {}, {}, o.samples};
  json out;
  const std::pair<const char*, GateSpec> gs[] = {{"s", gates::S()}, {"t", gates::T()}, {"sqrth", gates::SqrtH()}};
  for (const auto& [name, spec] : gs)
    out[name] = robustness_pair(o, std::string("fig3_") + name, std::string("robustness ") + name,
                                {{"snhqc", snhqc_objective(spec, 1, base)},
                                 {"nhqc", baseline_objective(spec, baseline_tau(o), base)}},
                                EtaMode::Fractional, log);
  return out;
}

json fig4(const RecipeOptions& o, std::ostream& log) {
  OneQubitOptions base{o.omega_m, presets::baseline(), {}, {}, o.samples};
  return robustness_pair(o, "fig4", "T gate, composite N = 2",
                         {{"csnhqc_n2", snhqc_objective(gates::T(), 2, base)},
                          {"snhqc", snhqc_objective(gates::T(), 1, base)}},
                         EtaMode::Fractional, log);
}

json fig5(const RecipeOptions& o, std::ostream& log) {
  const GateSpec spec = gates::T();
  const int ns[] = {1, 2, 10, 20, 40};
  json out;
  Table pop{{"t_over_tau"}, {}};
  std::vector<PopulationTrace> traces;
  for (int n : ns) {
    const auto segs = composite(spec, n, o.omega_m);
    const auto h = hamiltonian_schedule(spec, segs);
    const Ket bright = AuxFrame(segs[0], spec).mu(2, 0.0);
    StepControl sc;
    sc.fixed_steps = std::max(100, 4000 / n);
    traces.push_back(excited_population(h, lambda_noise(presets::baseline()), bright, sc, 1));
    const double l = segs[0].ell;
    out["max_population"][std::to_string(n)] = traces.back().max();
    out["analytic_max"][std::to_string(n)] = l * l / (1.0 + l * l);
    pop.columns.push_back("N" + std::to_string(n));
  }
  // resample every trace onto a common normalized time axis
  for (double x : linspace(0.0, 1.0, 401)) {
    std::vector<double> row{x};
    for (const auto& tr : traces) {
      const double t = tr.t.front() + x * (tr.t.back() - tr.t.front());
      const auto it = std::lower_bound(tr.t.begin(), tr.t.end(), t);
      row.push_back(tr.population[std::min<std::size_t>(it - tr.t.begin(), tr.t.size() - 1)]);
    }
    pop.rows.push_back(std::move(row));
  }
  emit(o, "fig5_population", pop, "excited population, T gate", "P_e", log);
  OneQubitOptions base{o.omega_m, presets::baseline(), {}, {}, o.samples};
  std::vector<std::pair<std::string, ErrorObjective>> curves;
  for (int n : ns) curves.push_back({"N" + std::to_string(n), snhqc_objective(spec, n, base)});
  out["robustness"] = robustness_pair(o, "fig5", "T gate composite robustness", curves, EtaMode::Fractional, log);
  return out;
}

ScalarOptimum scan(const std::vector<double>& candidates, const std::function<double(double)>& f) {
  return optimize_scalar(candidates, f);
}

Table curve_table(const std::string& xname, const ScalarOptimum& opt) {
  Table t{{xname, "fidelity"}, {}};
  for (std::size_t i = 0; i < opt.params.size(); ++i) t.rows.push_back({opt.params[i], opt.curve[i]});
  return t;
}

// Composite N scan plus dynamical scan, then robustness at both optima.
json gate_comparison(const RecipeOptions& o, const std::string& stem, bool h_gate, std::ostream& log) {
  const GateSpec spec = h_gate ? gates::H() : gates::T();
  OneQubitOptions base{o.omega_m, presets::case3(o.omega_m), {}, {}, o.samples};
  const std::vector<double> ns{2, 4, 6, 8, 10, 12, 14, 16, 20, 30, 40};
  const auto cs = scan(ns, [&](double n) {
    return run_snhqc(spec, static_cast<int>(n), base).fidelity;
  });
  const auto dg_grid = h_gate ? parse_list("5:40", "j") : parse_list("1:40:0.5", "k");
  const auto dg = scan(dg_grid, [&](double x) {
    return h_gate ? run_dyn_h(x, base).fidelity : run_dyn_t(x, base).fidelity;
  });
  emit(o, stem + "_cs_n", curve_table("N", cs), "composite sequence count", "fidelity", log);
  emit(o, stem + "_dg", curve_table(h_gate ? "j" : "k", dg), "dynamical detuning ratio", "fidelity", log);
  json out{{"cs_best_n", cs.best}, {"cs_fidelity", cs.value}, {"dg_best", dg.best}, {"dg_fidelity", dg.value}};
  out["robustness"] = robustness_pair(
      o, stem, h_gate ? "H gate, case 3" : "T gate, case 3",
      {{"csnhqc", snhqc_objective(spec, static_cast<int>(cs.best), base)}, {"dg", dyn_objective(h_gate, dg.best, base)}},
      EtaMode::Fractional, log);
  return out;
}

json fig6(const RecipeOptions& o, std::ostream& log) { return gate_comparison(o, "fig6", true, log); }
json fig7(const RecipeOptions& o, std::ostream& log) { return gate_comparison(o, "fig7", false, log); }

json fig9(const RecipeOptions& o, std::ostream& log) {
  RydbergParams p;
  RydbergParams opt = p;
  opt.omega_t = units::mhz(10);
  TwoQubitOptions to;
  to.samples = o.samples_2q;
  const NoiseModel noise = rydberg_noise(2, to.gamma_minus, to.gamma_z);
  const auto comp = computational_indices(2);

  const std::pair<std::string, TwoQubitGate> gs[] = {
      {"cs", cs_cnot(p, {})}, {"dg", dg_cnot(p, {})}, {"dg_opt", dg_cnot(opt, {})}};
  json out;
  for (const auto& [name, g] : gs) {
    const auto times = linspace(g.schedule.t_start(), g.schedule.t_end(), 101);
    const auto chans = channel_trajectory(g.schedule, noise, comp, times);
    Table t{{"t_ns", "fidelity"}, {}};
    for (std::size_t i = 0; i < chans.size(); ++i)
      t.rows.push_back({times[i], fidelity_2q(chans[i], g.ideal, o.samples_2q).fidelity});
    emit(o, "fig9_dynamics_" + name, t, "CNOT fidelity, " + name, "fidelity", log);
    out[name] = {{"duration_ns", g.duration}, {"final_fidelity", t.rows.back()[1]}};
  }
  // eta' in units of the target peak
  auto objective = [&](bool dg, const RydbergParams& rp) -> ErrorObjective {
    return [dg, rp, to](const ErrorParams& e) {
      TwoQubitOptions a = to;
      a.errors = {e.epsilon, e.eta * rp.omega_t_peak, EtaMode::Absolute};
      return dg ? run_dg_cnot(rp, a).fidelity : run_cs_cnot(rp, a).fidelity;
    };
  };
  out["robustness"] = robustness_pair(
      o, "fig9", "CNOT robustness",
      {{"cs", objective(false, p)}, {"dg", objective(true, p)}, {"dg_opt", objective(true, opt)}},
      EtaMode::Absolute, log);
  return out;
}

json fig11(const RecipeOptions& o, std::ostream& log) {
  TwoQubitOptions to;
  to.samples = o.samples_2q;
  const auto best = scan(parse_list("1:20", "omega_t"), [&](double mhz) {
    RydbergParams p;
    p.omega_t = units::mhz(mhz);
    return run_dg_cnot(p, to).fidelity;
  });
  emit(o, "fig11", curve_table("omega_t_mhz", best), "DG CNOT vs target Rabi frequency", "fidelity", log);
  return {{"best_omega_t_mhz", best.best}, {"fidelity", best.value}};
}

json table1(const RecipeOptions& o, std::ostream& log) {
  const GateSpec h = gates::H();
  const char* cases[] = {"case1", "case2", "case3"};
  Table t{{"case", "dg_j", "dg_fidelity", "cs_n", "cs_fidelity"}, {}};
  json out;
  for (int c = 0; c < 3; ++c) {
    OneQubitOptions base{o.omega_m, presets::by_name(cases[c], o.omega_m), {}, {}, o.samples};
    const auto dg = scan(parse_list("10:140", "j"), [&](double j) { return run_dyn_h(j, base).fidelity; });
    const auto cs = scan({2, 10, 20, 40, 80, 160, 320},
                         [&](double n) { return run_snhqc(h, static_cast<int>(n), base).fidelity; });
    emit(o, std::string("table1_") + cases[c] + "_dg", curve_table("j", dg), "DG H gate", "fidelity", log);
    emit(o, std::string("table1_") + cases[c] + "_cs", curve_table("N", cs), "CS-NHQC H gate", "fidelity", log);
    t.rows.push_back({static_cast<double>(c + 1), dg.best, dg.value, cs.best, cs.value});
    out[cases[c]] = {{"dg_j", dg.best},   {"dg_fidelity", dg.value},          {"cs_n", cs.best},
                     {"cs_fidelity", cs.value}, {"rates", to_json(base.rates)}};
  }
  emit(o, "table1", t, "H gate optima", "value", log);
  return out;
}

using Recipe = json (*)(const RecipeOptions&, std::ostream&);

const std::map<std::string, Recipe>& recipes() {
  static const std::map<std::string, Recipe> r{{"fig1c", fig1c}, {"fig2", fig2},   {"fig3", fig3},
                                               {"fig4", fig4},   {"fig5", fig5},   {"fig6", fig6},
                                               {"fig7", fig7},   {"fig9", fig9},   {"fig11", fig11},
                                               {"table1", table1}};
  return r;
}

}  // namespace

const std::vector<std::string>& recipe_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [k, v] : recipes()) n.push_back(k);
    return n;
  }();
  return names;
}

nlohmann::json run_recipe(const std::string& name, const RecipeOptions& o, std::ostream& log) {
  const auto it = recipes().find(name);
  if (it == recipes().end()) {
    std::string list;
    for (const auto& n : recipe_names()) list += (list.empty() ? "" : ", ") + n;
    throw ConfigError("unknown recipe '" + name + "'; available: " + list);
  }
  std::filesystem::create_directories(o.out_dir);
  json out{{"provenance", provenance(name, o)}, {"results", it->second(o, log)}};
  auto os = open_out(path_in(o, name + ".json"));
  os << out.dump(2) << '\n';
  log << "wrote " << path_in(o, name + ".json") << '\n';
  return out;
}

}  // namespace hqc::cli
