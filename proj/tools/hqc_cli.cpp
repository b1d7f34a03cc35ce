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

// hqc: synthesis, simulation, sweeps, optimizers and reproduction recipes.
//
// Exit codes: 0 success, 2 configuration error, 3 physics invariant violated.

#include "cli_config.hpp"
#include "recipes.hpp"
#include "svg_plot.hpp"

#include "hqc/metrics.hpp"
#include "hqc/rydberg.hpp"
#include "hqc/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <omp.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using namespace hqc;
using namespace hqc::cli;
using nlohmann::json;

constexpr int kConfigExit = 2;
constexpr int kInvariantExit = 3;

struct RunConfig {
  std::string scheme = "snhqc";
  std::string gate = "s";
  std::string theta, phi, gamma;
  int n = 0;
  std::string omega_max = "10MHz";
  std::string noise = "baseline";
  std::string gamma_minus, gamma_z, gamma_q;
  double epsilon = 0.0;
  std::string eta = "0";
  std::string tau;
  double j = 66.0;
  double k = 17.0;
  std::string omega_t = "1MHz";
  std::string omega_c = "40MHz";
  std::string carrier = "500MHz";
  std::string v = "500MHz";
  std::string omega_t_peak = "1MHz";
  std::string peak = "per-leg";
  int controls = 2;
  int samples = 1001;
  int refine = 1;
  int fixed_steps = 0;
  bool raw = false;
  std::string out;
  int threads = 0;
  bool svg = false;
  // sweep / optimize
  std::string eps_grid = "-0.1:0.1:0.01";
  std::string eta_grid = "-0.1:0.1:0.01";
  std::string param;
  std::string candidates;
  std::string config_path;
};

const char* const kSchemes[] = {"snhqc", "csnhqc", "nhqc-baseline", "dyn-h", "dyn-t", "cs-cnot", "dg-cnot", "multi"};

bool two_qubit(const RunConfig& c) { return c.scheme == "cs-cnot" || c.scheme == "dg-cnot" || c.scheme == "multi"; }

double freq(const RunConfig& c, const std::string& text, const std::string& field) {
  return parse_frequency(text, c.raw, field);
}

void add_run_options(CLI::App* app, RunConfig& c) {
  app->add_option("--scheme", c.scheme, "snhqc | csnhqc | nhqc-baseline | dyn-h | dyn-t | cs-cnot | dg-cnot | multi");
  app->add_option("--gate", c.gate, "s | t | sqrth | h | x");
  app->add_option("--theta", c.theta, "axis polar angle (overrides --gate), e.g. pi/4");
  app->add_option("--phi", c.phi, "axis azimuth");
  app->add_option("--gamma", c.gamma, "rotation angle");
  app->add_option("--n", c.n, "composite segment count (default 1 for snhqc, 2 for csnhqc and cs-cnot)");
  app->add_option("--omega-max", c.omega_max, "peak Rabi frequency, e.g. 10MHz");
  app->add_option("--noise", c.noise, "baseline | case1 | case2 | case3 | none");
  app->add_option("--gamma-minus", c.gamma_minus, "decay rate override, e.g. 3kHz");
  app->add_option("--gamma-z", c.gamma_z, "dephasing rate override");
  app->add_option("--gamma-q", c.gamma_q, "qubit decay rate override");
  app->add_option("--epsilon", c.epsilon, "systematic Rabi-frequency error");
  app->add_option("--eta", c.eta, "detuning error: fraction of omega-max, or a frequency for two-qubit schemes");
  app->add_option("--tau", c.tau, "nhqc-baseline gate time in ns (default 2 pi / omega-max)");
  app->add_option("--j", c.j, "dyn-h detuning ratio");
  app->add_option("--k", c.k, "dyn-t detuning ratio");
  app->add_option("--omega-t", c.omega_t, "dg-cnot target Rabi frequency");
  app->add_option("--omega-c", c.omega_c, "control drive peak");
  app->add_option("--carrier", c.carrier, "control drive frequency");
  app->add_option("--v", c.v, "blockade strength");
  app->add_option("--omega-t-peak", c.omega_t_peak, "cs-cnot / multi target peak");
  app->add_option("--peak", c.peak, "per-leg | combined");
  app->add_option("--controls", c.controls, "multi: number of control atoms (1..3)");
  app->add_option("--samples", c.samples, "input states averaged in the fidelity");
  app->add_option("--refine", c.refine, "integrator step refinement factor");
  app->add_option("--fixed-steps", c.fixed_steps, "steps per segment (overrides the step rule)");
  app->add_flag("--raw-rad-ns", c.raw, "bare numbers are angular frequencies in rad/ns");
  app->add_option("--out", c.out, "output path");
  app->add_option("--threads", c.threads, "worker threads (default HQC_THREADS or all cores)");
  app->add_option("--config", c.config_path, "flat key = value file; command-line flags take precedence");
}

GateSpec gate_of(const RunConfig& c) {
  GateSpec g = named_gate(c.gate);
  if (!c.theta.empty()) g.theta = parse_angle(c.theta, "theta");
  if (!c.phi.empty()) g.phi = parse_angle(c.phi, "phi");
  if (!c.gamma.empty()) g.gamma = parse_angle(c.gamma, "gamma");
  return g;
}

StepControl steps_of(const RunConfig& c) {
  if (c.refine < 1) throw ConfigError("refine: must be >= 1");
  if (c.fixed_steps < 0) throw ConfigError("fixed-steps: must be >= 0");
  StepControl sc;
  sc.refine = c.refine;
  sc.fixed_steps = c.fixed_steps;
  return sc;
}

int segments_of(const RunConfig& c) {
  if (c.n < 0) throw ConfigError("n: must be >= 1");
  if (c.n > 0) return c.n;
  return c.scheme == "snhqc" ? 1 : 2;
}

NoiseRates rates_of(const RunConfig& c, double omega_m) {
  NoiseRates r;
  try {
    r = presets::by_name(c.noise, omega_m);
  } catch (const std::exception&) {
    throw ConfigError("noise: unknown preset '" + c.noise + "' (baseline, case1, case2, case3, none)");
  }
  if (!c.gamma_minus.empty()) r.gamma_minus = freq(c, c.gamma_minus, "gamma-minus");
  if (!c.gamma_z.empty()) r.gamma_z = freq(c, c.gamma_z, "gamma-z");
  if (!c.gamma_q.empty()) r.gamma_q = freq(c, c.gamma_q, "gamma-q");
  return r;
}

RydbergParams rydberg_of(const RunConfig& c) {
  RydbergParams p;
  p.omega_c = p.omega_c_dg = freq(c, c.omega_c, "omega-c");
  p.carrier = freq(c, c.carrier, "carrier");
  p.v = freq(c, c.v, "v");
  p.omega_t_peak = freq(c, c.omega_t_peak, "omega-t-peak");
  p.omega_t = freq(c, c.omega_t, "omega-t");
  if (c.peak == "per-leg") p.peak = PeakConvention::PerLeg;
  else if (c.peak == "combined") p.peak = PeakConvention::Combined;
  else throw ConfigError("peak: expected per-leg or combined");
  for (const auto& w : ratio_warnings(p)) std::cerr << "warning: " << w << '\n';
  return p;
}

TwoQubitOptions two_qubit_options(const RunConfig& c) {
  TwoQubitOptions o;
  if (c.noise == "none") o.gamma_minus = o.gamma_z = 0.0;
  else if (c.noise != "baseline") throw ConfigError("noise: two-qubit schemes accept baseline or none");
  if (!c.gamma_minus.empty()) o.gamma_minus = freq(c, c.gamma_minus, "gamma-minus");
  if (!c.gamma_z.empty()) o.gamma_z = freq(c, c.gamma_z, "gamma-z");
  o.errors = {c.epsilon, c.eta == "0" ? 0.0 : freq(c, c.eta, "eta"), EtaMode::Absolute};
  o.steps = steps_of(c);
  o.samples = c.samples;
  return o;
}

double eta_fraction(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError("eta: single-qubit schemes take a fraction of omega-max, got '" + s + "'");
}

void validate(const RunConfig& c) {
  bool known = false;
  for (const char* s : kSchemes) known = known || c.scheme == s;
  if (!known) throw ConfigError("scheme: unknown scheme '" + c.scheme + "'");
  if (c.samples < 1) throw ConfigError("samples: must be >= 1");
}

json provenance(const RunConfig& c, const std::string& command) {
  return {{"command", command},    {"version", kVersion},        {"scheme", c.scheme},
          {"gate", c.gate},        {"n", segments_of(c)},        {"omega_max", c.omega_max},
          {"noise", c.noise},      {"raw_rad_ns", c.raw},        {"steps", to_json(steps_of(c))},
          {"samples", c.samples}};
}

// One fidelity evaluation of the configured scheme with the given coherent errors.
FidelityReport evaluate(const RunConfig& c, double epsilon, const std::string& eta_text) {
  RunConfig e = c;
  e.epsilon = epsilon;
  e.eta = eta_text;
  if (two_qubit(e)) {
    const RydbergParams p = rydberg_of(e);
    const TwoQubitOptions o = two_qubit_options(e);
    if (e.scheme == "cs-cnot") return run_cs_cnot(p, o);
    if (e.scheme == "dg-cnot") return run_dg_cnot(p, o);
    const auto chk = multi_qubit_check(static_cast<std::size_t>(e.controls), gate_of(e), segments_of(e), p, o.steps);
    FidelityReport r;
    r.label = "multi";
    r.fidelity = chk.branch_fidelity;
    r.worst = chk.min_return;
    r.params = {{"dim", chk.dim},
                {"duration_ns", chk.duration},
                {"branch_fidelity", chk.branch_fidelity},
                {"min_return_probability", chk.min_return}};
    return r;
  }
  const double om = freq(e, e.omega_max, "omega-max");
  OneQubitOptions o{om, rates_of(e, om), {epsilon, eta_fraction(eta_text), EtaMode::Fractional}, steps_of(e),
                    e.samples};
  if (e.scheme == "snhqc" || e.scheme == "csnhqc") return run_snhqc(gate_of(e), segments_of(e), o);
  if (e.scheme == "nhqc-baseline") {
    const double tau = e.tau.empty() ? 2.0 * kPi / om : std::stod(e.tau);
    return run_baseline(gate_of(e), tau, o);
  }
  if (e.scheme == "dyn-h") return run_dyn_h(e.j, o);
  return run_dyn_t(e.k, o);
}

std::string eta_string(const RunConfig& c, double v) {
  if (!two_qubit(c)) {
    std::ostringstream s;
    s.precision(17);
    s << v;
    return s.str();
  }
  // two-qubit grids are in units of the target peak
  std::ostringstream s;
  s.precision(17);
  s << v * freq(c, c.omega_t_peak, "omega-t-peak") << "rad/ns";
  return s.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream os(path);
  if (!os) throw ConfigError("out: cannot write '" + path + "'");
  os << text;
}

int cmd_synth(const RunConfig& c) {
  const GateSpec spec = gate_of(c);
  const int n = segments_of(c);
  std::ostringstream csv;
  double tau = 0.0, residual = 0.0;
  if (two_qubit(c)) {
    const RydbergParams p = rydberg_of(c);
    const auto segs = target_segments(spec, n, p);
    write_two_qubit_csv(csv, spec, segs, p, 401);
    for (const auto& s : segs) tau += s.tau;
  } else {
    if (c.scheme != "snhqc" && c.scheme != "csnhqc")
      throw ConfigError("synth: scheme must be snhqc, csnhqc, cs-cnot or multi");
    const auto segs = composite(spec, n, freq(c, c.omega_max, "omega-max"));
    write_waveform_csv(csv, spec, segs, 401);
    for (const auto& s : segs) {
      tau += s.tau;
      residual = std::max(residual, std::abs(holonomy_angle(s) - s.gamma_seg));
    }
  }
  write_text(c.out.empty() ? "waveform.csv" : c.out, csv.str());
  std::cerr << "tau_ns=" << tau << " segments=" << n << " gamma_residual=" << residual << '\n';
  return 0;
}

int cmd_simulate(const RunConfig& c) {
  const FidelityReport r = evaluate(c, c.epsilon, c.eta);
  json out{{"label", r.label},   {"fidelity", r.fidelity}, {"worst", r.worst},
           {"samples", r.samples}, {"params", r.params},   {"provenance", provenance(c, "simulate")}};
  write_text(c.out, out.dump(2) + "\n");
  return 0;
}

int cmd_sweep(const RunConfig& c, bool svg) {
  const auto eps = parse_list(c.eps_grid, "eps");
  const auto eta = parse_list(c.eta_grid, "eta-grid");
  const SweepResult r = robustness_sweep(
      [&](const ErrorParams& e) { return evaluate(c, e.epsilon, eta_string(c, e.eta)).fidelity; }, eps, eta,
      two_qubit(c) ? EtaMode::Absolute : EtaMode::Fractional);
  std::ostringstream csv;
  r.write_csv(csv);
  write_text(c.out.empty() ? "sweep.csv" : c.out, csv.str());
  json meta = r.to_json();
  meta["provenance"] = provenance(c, "sweep");
  meta["eta_unit"] = two_qubit(c) ? "omega_t_peak" : "omega_max";
  const std::string base = c.out.empty() ? "sweep" : c.out.substr(0, c.out.rfind('.'));
  write_text(base + ".json", meta.dump(2) + "\n");
  if (svg && (eps.size() == 1 || eta.size() == 1)) {
    Series s{c.scheme, eps.size() == 1 ? eta : eps, r.values};
    std::ofstream os(base + ".svg");
    write_svg(os, c.scheme + " robustness", eps.size() == 1 ? "eta" : "epsilon", "fidelity", {s});
  }
  return 0;
}

int cmd_optimize(const RunConfig& c) {
  if (c.param.empty()) throw ConfigError("param: required (j, k, n or omega-t)");
  const auto cand = parse_list(c.candidates, "candidates");
  std::function<double(double)> f;
  if (c.param == "j") f = [&](double x) { RunConfig e = c; e.scheme = "dyn-h"; e.j = x; return evaluate(e, c.epsilon, c.eta).fidelity; };
  else if (c.param == "k") f = [&](double x) { RunConfig e = c; e.scheme = "dyn-t"; e.k = x; return evaluate(e, c.epsilon, c.eta).fidelity; };
  else if (c.param == "n")
    f = [&](double x) {
      RunConfig e = c;
      e.scheme = "csnhqc";
      e.n = static_cast<int>(x);
      return evaluate(e, c.epsilon, c.eta).fidelity;
    };
  else if (c.param == "omega-t")
    f = [&](double x) {
      RunConfig e = c;
      e.scheme = "dg-cnot";
      e.omega_t = std::to_string(x) + "MHz";
      return evaluate(e, c.epsilon, c.eta).fidelity;
    };
  else throw ConfigError("param: expected j, k, n or omega-t");
  const ScalarOptimum best = optimize_scalar(cand, f);
  json out{{"param", c.param}, {"best", best.best}, {"fidelity", best.value},
           {"candidates", best.params}, {"curve", best.curve}, {"provenance", provenance(c, "optimize")}};
  write_text(c.out, out.dump(2) + "\n");
  return 0;
}

std::vector<std::string> with_config(std::vector<std::string> args, std::vector<ConfigEntry>& entries,
                                     std::string& source) {
  for (std::size_t i = 1; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    if (path.empty()) continue;
    entries = read_config_file(path);
    source = path;
    std::vector<std::string> out{args[0]};
    for (const auto& e : entries) out.push_back("--" + e.key + "=" + e.value);
    out.insert(out.end(), args.begin() + 1, args.end());
    return out;
  }
  return args;
}

void set_threads(int flag) {
  int n = flag;
  if (n <= 0)
    if (const char* env = std::getenv("HQC_THREADS")) n = std::atoi(env);
  if (n > 0) omp_set_num_threads(n);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shortest-path holonomic gate toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", hqc::kVersion);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  RunConfig cfg;
  RecipeOptions ro;
  std::string recipe;
  bool svg = false;

  auto* synth = app.add_subcommand("synth", "write pulse waveforms as CSV");
  add_run_options(synth, cfg);
  auto* simulate = app.add_subcommand("simulate", "run one gate and print the fidelity report as JSON");
  add_run_options(simulate, cfg);
  auto* sweep = app.add_subcommand("sweep", "fidelity over an (epsilon, eta) grid");
  add_run_options(sweep, cfg);
  sweep->add_option("--eps", cfg.eps_grid, "epsilon grid, lo:hi:step or a comma list");
  sweep->add_option("--eta-grid", cfg.eta_grid, "eta grid (fraction of the peak Rabi frequency)");
  sweep->add_flag("--svg", svg, "also write an SVG line plot for one-dimensional grids");
  auto* optimize = app.add_subcommand("optimize", "argmax of the fidelity over one parameter");
  add_run_options(optimize, cfg);
  optimize->add_option("--param", cfg.param, "j | k | n | omega-t (MHz)");
  optimize->add_option("--candidates", cfg.candidates, "candidate values, lo:hi[:step] or a comma list")->required();
  auto* repro = app.add_subcommand("repro", "regenerate a figure or table dataset");
  repro->add_option("name", recipe, "fig1c | fig2 | fig3 | fig4 | fig5 | fig6 | fig7 | fig9 | fig11 | table1")
      ->required();
  repro->add_option("--out-dir", ro.out_dir, "output directory");
  repro->add_option("--samples", ro.samples, "single-qubit input states");
  repro->add_option("--samples-2q", ro.samples_2q, "two-qubit input states");
  repro->add_option("--points", ro.points, "error-axis grid points");
  repro->add_flag("--svg", ro.svg, "also write SVG line plots");
  repro->add_option("--threads", cfg.threads, "worker threads");
  repro->add_option("--config", cfg.config_path, "flat key = value file");

  std::vector<std::string> args(argv + 1, argv + argc);
  std::vector<ConfigEntry> entries;
  std::string source;
  try {
    args = with_config(args, entries, source);
    if (!args.empty())
      if (auto* sub = app.get_subcommand_no_throw(args[0]))
        for (const auto& e : entries)
          if (sub->get_option_no_throw("--" + e.key) == nullptr)
            throw ConfigError(source + ":" + std::to_string(e.line) + ": unknown key '" + e.key + "'");
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    for (const auto& c : entries)
      if (msg.find("--" + c.key) != std::string::npos)
        msg = source + ":" + std::to_string(c.line) + ": " + msg;
    std::cerr << "error: " << msg << '\n';
    return kConfigExit;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigExit;
  }

  try {
    set_threads(cfg.threads);
    if (*repro) {
      run_recipe(recipe, ro, std::cerr);
      return 0;
    }
    validate(cfg);
    if (*synth) return cmd_synth(cfg);
    if (*simulate) return cmd_simulate(cfg);
    if (*sweep) return cmd_sweep(cfg, svg);
    return cmd_optimize(cfg);
  } catch (const InvariantError& e) {
    std::cerr << "invariant violated: " << e.what() << '\n';
    return kInvariantExit;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigExit;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigExit;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
