// Copyright 2026 The cyberepi Authors
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

// cyberepi: command-line front end.
//
//   cyberepi graph     --graph er --n 1000 --mean-degree 10 --seed 1 --out g.txt
//   cyberepi run       --damage constant:0.3 --seed 1 --out run.csv
//   cyberepi cycle     --seed 1 --out cycle.csv
//   cyberepi sweep-d   --config configs/sweep_d.toml --seed 7
//   cyberepi sweep-eps --config configs/sweep_eps_logistic.toml --seed 7
//
// Errors are reported as a single "cyberepi: error: <kind>: <message>" line
// on stderr with a nonzero exit status.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "cyberepi/cyberepi.hpp"

namespace {

using namespace cyberepi;

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct Flags {
  std::string config;
  std::string graph;
  std::string n;
  std::string mean_degree;
  std::string tau, nu, mu0, gamma, rho0, aware_factor, theta;
  std::string damage;
  std::string d_grid, eps_grid, kinds, d0, reference_d;
  std::string realizations, seed, out, workers, step_cap;
  std::string dump_graph;
  bool fixed_graph = false;
  bool paper_scale = false;
  bool no_reference = false;
  bool quiet = false;
  bool progress = false;
};

enum class Command { Graph, Run, Cycle, SweepD, SweepEps };

void add_graph_flags(CLI::App* sub, Flags& f, bool lists) {
  sub->add_option("--graph", f.graph,
                  lists ? "Graph families, comma list of {er, ba} (default: er,ba)"
                        : "Graph family {er, ba} (default: er)");
  sub->add_option("--n", f.n, "Node count, >= 2 (default: 500; 1000 with --paper-scale)");
  sub->add_option("--mean-degree", f.mean_degree,
                  lists ? "Mean degrees, comma list; even integers for ba (default: 6,10,14)"
                        : "Mean degree, (0, n-1] for er, even >= 2 for ba (default: 10)");
}

void add_model_flags(CLI::App* sub, Flags& f, bool theta_list) {
  sub->add_option("--tau", f.tau, "Infection rate per infective neighbor, [0,1] (default: 0.0055)");
  sub->add_option("--nu", f.nu, "Contact awareness rate per aware neighbor, [0,1] (default: 0.011)");
  sub->add_option("--mu0", f.mu0, "Spontaneous awareness base rate, [0,1] (default: 0.011)");
  sub->add_option("--gamma", f.gamma, "Healing rate of aware nodes, [0,1] (default: 0.03)");
  sub->add_option("--rho0", f.rho0, "Initially infected fraction, (0,1] (default: 0.01)");
  sub->add_option("--aware-factor", f.aware_factor,
                  "Infection-rate multiplier for aware susceptibles, factor*tau in [0,1] "
                  "(default: 0.1)");
  sub->add_option("--theta", f.theta,
                  theta_list ? "Damage thresholds, comma list in [0,1]"
                             : "Damage threshold, [0,1] (default: 0.2)");
}

void add_run_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "Experiment config file (flags override it)");
  sub->add_option("--realizations", f.realizations,
                  "Ensemble size, >= 1 (default: 200; 1000 with --paper-scale)");
  sub->add_option("--workers", f.workers,
                  "Worker threads, >= 1 (default: $CYBEREPI_WORKERS or hardware concurrency)");
  sub->add_option("--step-cap", f.step_cap, "Maximum steps per realization (default: 1000000)");
  sub->add_flag("--fixed-graph", f.fixed_graph, "Reuse one sampled graph for every realization");
  sub->add_flag("--paper-scale", f.paper_scale, "Use n=1000 and 1000 realizations");
}

void add_common_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--seed", f.seed, "Base seed, unsigned 64-bit (required)");
  sub->add_option("--out", f.out, "Output file (default: stdout)");
  sub->add_flag("--quiet", f.quiet, "No summary on stderr");
  sub->add_flag("--progress", f.progress, "Report progress on stderr");
}

double number_flag(const char* name, const std::string& text) {
  return detail::parse_number(name, detail::trim(text));
}

std::uint64_t unsigned_flag(const char* name, const std::string& text) {
  return detail::parse_unsigned(name, detail::trim(text));
}

void apply_model_flags(const Flags& f, ModelParams& p, std::vector<double>* thetas) {
  if (!f.tau.empty()) p.tau = number_flag("tau", f.tau);
  if (!f.nu.empty()) p.nu = number_flag("nu", f.nu);
  if (!f.mu0.empty()) p.mu0 = number_flag("mu0", f.mu0);
  if (!f.gamma.empty()) p.gamma = number_flag("gamma", f.gamma);
  if (!f.rho0.empty()) p.rho0 = number_flag("rho0", f.rho0);
  if (!f.aware_factor.empty()) p.aware_infection_factor = number_flag("aware_infection_factor", f.aware_factor);
  if (!f.theta.empty()) {
    if (thetas) {
      *thetas = parse_grid("theta", f.theta);
    } else {
      p.theta = number_flag("theta", f.theta);
    }
  }
}

// Defaults per subcommand, then config file, then --paper-scale, then flags.
ExperimentConfig build_config(Command cmd, const Flags& f) {
  ExperimentConfig cfg;
  switch (cmd) {
    case Command::Cycle:
      cfg.name = "cycle";
      cfg.damage.kinds = {DamageKind::Constant};
      cfg.damage.d = {0.3};
      break;
    case Command::SweepD:
      cfg.name = "sweep-d";
      cfg.graph.families = {GraphFamily::ErdosRenyi, GraphFamily::BarabasiAlbert};
      cfg.graph.mean_degrees = {6, 10, 14};
      cfg.thetas = {0.2, 0.4, 0.6};
      cfg.damage.kinds = {DamageKind::Constant};
      cfg.damage.d = linspace(0.0, 1.0, 41);
      break;
    case Command::SweepEps:
      cfg.name = "sweep-eps";
      cfg.graph.families = {GraphFamily::ErdosRenyi, GraphFamily::BarabasiAlbert};
      cfg.graph.mean_degrees = {6, 10, 14};
      cfg.thetas = {0.2, 0.6};
      cfg.damage.kinds = {DamageKind::Logistic, DamageKind::Mutating};
      break;
    default:
      break;
  }
  if (!f.config.empty()) cfg = load_config(f.config, std::move(cfg));
  if (f.paper_scale) {
    cfg.graph.n = 1000;
    cfg.realizations = 1000;
  }

  if (!f.graph.empty()) {
    cfg.graph.families.clear();
    for (const auto& s : detail::split_list(f.graph)) cfg.graph.families.push_back(parse_family(s));
    if (cmd != Command::SweepD && cmd != Command::SweepEps && cfg.graph.families.size() != 1)
      throw ParameterError("graph", "--graph takes a single family here");
  }
  if (!f.n.empty()) cfg.graph.n = unsigned_flag("n", f.n);
  if (!f.mean_degree.empty()) cfg.graph.mean_degrees = parse_grid("mean_degree", f.mean_degree);
  apply_model_flags(f, cfg.params, &cfg.thetas);
  if (!f.damage.empty()) {
    const DamageModel m = parse_damage(f.damage);
    cfg.damage.kinds = {parse_damage_kind(kind_name(m))};
    std::visit(
        [&](const auto& dm) {
          using M = std::decay_t<decltype(dm)>;
          if constexpr (std::is_same_v<M, ConstantDamage>) {
            cfg.damage.d = {dm.d};
          } else {
            cfg.damage.d0 = dm.d0;
            cfg.damage.epsilon = {dm.epsilon};
          }
        },
        m);
  }
  if (!f.d_grid.empty()) cfg.damage.d = parse_grid("d", f.d_grid);
  if (!f.eps_grid.empty()) cfg.damage.epsilon = parse_grid("epsilon", f.eps_grid);
  if (!f.d0.empty()) cfg.damage.d0 = number_flag("d0", f.d0);
  if (!f.kinds.empty()) {
    cfg.damage.kinds.clear();
    for (const auto& k : detail::split_list(f.kinds)) cfg.damage.kinds.push_back(parse_damage_kind(k));
  }
  if (!f.reference_d.empty()) cfg.reference_d = parse_grid("reference_d", f.reference_d);
  if (f.no_reference) cfg.reference = false;
  if (!f.realizations.empty()) cfg.realizations = unsigned_flag("realizations", f.realizations);
  if (!f.seed.empty()) cfg.base_seed = unsigned_flag("seed", f.seed);
  if (!f.out.empty()) cfg.output = f.out;
  if (!f.workers.empty()) {
    cfg.workers = unsigned_flag("workers", f.workers);
    if (cfg.workers == 0) throw ParameterError("workers", "workers=0 outside range [1,inf)");
  }
  if (!f.step_cap.empty()) cfg.step_cap = unsigned_flag("step_cap", f.step_cap);
  if (f.fixed_graph) cfg.fixed_graph = true;
  return cfg;
}

GraphSpec single_graph_spec(const ExperimentConfig& cfg) {
  if (cfg.graph.families.size() != 1 || cfg.graph.mean_degrees.size() != 1)
    throw ParameterError("graph", "a single graph family and mean degree are required");
  return {cfg.graph.families[0], cfg.graph.n, cfg.graph.mean_degrees[0], 0};
}

void write_run_csv(std::ostream& os, const GraphSpec& spec, const ModelParams& p,
                   const DamageModel& dmg, std::uint64_t seed, const RunResult& r) {
  os << std::setprecision(6);
  os << "# cyberepi " << CYBEREPI_VERSION << '\n';
  os << "# operation: run\n";
  os << "# graph: " << to_string(spec.family) << " n=" << spec.n << " mean_degree=" << spec.mean_degree
     << " graph_seed=" << spec.seed << '\n';
  os << "# params: tau=" << p.tau << " aware_infection_factor=" << p.aware_infection_factor
     << " nu=" << p.nu << " mu0=" << p.mu0 << " gamma=" << p.gamma << " theta=" << p.theta
     << " rho0=" << p.rho0 << '\n';
  os << "# damage: " << to_string(dmg) << '\n';
  os << "# seed: " << seed << '\n';
  os << "# D/N: " << r.total_damage_per_node << " ever_infected: " << r.ever_infected
     << " awareness_onset: ";
  if (r.awareness_onset) os << *r.awareness_onset; else os << "none";
  os << " absorbed: " << (r.absorbed ? "true" : "false") << " steps: " << r.steps << '\n';
  os << "t,Su,Sa,Iu,Ia,Ha\n";
  for (const auto& row : r.series) {
    os << row.t;
    for (auto c : row.counts) os << ',' << c;
    os << '\n';
  }
}

template <class Fn>
void with_output(const std::filesystem::path& path, Fn&& fn) {
  if (path.empty()) {
    fn(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write output '" + path.string() + "'");
  fn(out);
  out.flush();
  if (!out) throw std::runtime_error("error writing output '" + path.string() + "'");
}

int dispatch(Command cmd, const Flags& f) {
  ExperimentConfig cfg = build_config(cmd, f);
  if (!cfg.base_seed) throw ParameterError("seed", "--seed is required (no implicit seeding)");
  ProgressFn progress;
  if (f.progress) progress = [](const std::string& msg) { std::cerr << "cyberepi: " << msg << '\n'; };
  auto summary = [&](const std::string& msg) {
    if (!f.quiet) std::cerr << "cyberepi: " << msg << '\n';
  };

  switch (cmd) {
    case Command::Graph: {
      GraphSpec spec = single_graph_spec(cfg);
      spec.seed = *cfg.base_seed;
      const Graph g = generate(spec);
      with_output(cfg.output, [&](std::ostream& os) { write_edge_list(os, g); });
      std::ostringstream msg;
      msg << "graph n=" << g.n() << " edges=" << g.edge_count() << " mean_degree=" << g.mean_degree();
      summary(msg.str());
      return 0;
    }
    case Command::Run: {
      ExperimentConfig point = single_point(cfg);
      ModelParams p = point.params;
      p.theta = point.thetas[0];
      p.validate();
      const DamageModel dmg = cycle_damage(point);
      validate(dmg);
      const GraphSpec spec = realization_graph_spec(single_graph_spec(point), *cfg.base_seed, 0);
      const Graph g = generate(spec);
      if (!f.dump_graph.empty()) {
        with_output(f.dump_graph, [&](std::ostream& os) { write_edge_list(os, g); });
      }
      RunOptions opts;
      opts.step_cap = cfg.step_cap;
      const RunResult r = run(g, p, dmg, realization_run_seed(*cfg.base_seed, 0), opts);
      with_output(cfg.output,
                  [&](std::ostream& os) { write_run_csv(os, spec, p, dmg, *cfg.base_seed, r); });
      std::ostringstream msg;
      msg << "run D/N=" << r.total_damage_per_node << " steps=" << r.steps
          << (r.absorbed ? "" : " (truncated at step cap)");
      summary(msg.str());
      return 0;
    }
    case Command::Cycle: {
      ExperimentConfig c = cfg;
      c.output.clear();
      const EnsembleSummary s = run_cycle_experiment(c, progress);
      with_output(cfg.output, [&](std::ostream& os) { write_cycle_csv(os, cfg, s); });
      std::ostringstream msg;
      msg << "cycle realizations=" << s.realizations << " mean_DN=" << s.mean_DN
          << " truncated=" << s.truncated;
      summary(msg.str());
      return 0;
    }
    case Command::SweepD:
    case Command::SweepEps: {
      ExperimentConfig c = cfg;
      c.output.clear();
      const bool d_sweep = cmd == Command::SweepD;
      const auto rows = d_sweep ? run_damage_sweep(c, progress) : run_epsilon_sweep(c, progress);
      with_output(cfg.output, [&](std::ostream& os) {
        write_sweep_csv(os, cfg, d_sweep ? "sweep-d" : "sweep-eps", rows);
      });
      summary(std::string(d_sweep ? "sweep-d" : "sweep-eps") + " rows=" + std::to_string(rows.size()));
      return 0;
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Malware and awareness spreading on contact networks: simulation and experiments",
               "cyberepi"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(CYBEREPI_VERSION));

  Flags f;
  std::map<CLI::App*, Command> commands;

  auto* graph = app.add_subcommand("graph", "Generate a contact network and write its edge list");
  add_graph_flags(graph, f, false);
  add_common_flags(graph, f);
  commands[graph] = Command::Graph;

  auto* run = app.add_subcommand("run", "Simulate one realization and write its compartment series");
  add_graph_flags(run, f, false);
  add_model_flags(run, f, false);
  run->add_option("--damage", f.damage,
                  "Damage law: constant:<d>, logistic:<d0>:<eps> or mutating:<d0>:<eps>; "
                  "d, d0 in [0,1], eps > 0 (default: constant:0.3)");
  run->add_option("--dump-graph", f.dump_graph, "Also write the sampled graph as an edge list");
  run->add_option("--step-cap", f.step_cap, "Maximum steps (default: 1000000)");
  add_common_flags(run, f);
  commands[run] = Command::Run;

  auto* cycle = app.add_subcommand("cycle", "Ensemble-mean compartment series at one parameter point");
  add_graph_flags(cycle, f, false);
  add_model_flags(cycle, f, false);
  cycle->add_option("--damage", f.damage,
                    "Damage law: constant:<d>, logistic:<d0>:<eps> or mutating:<d0>:<eps> "
                    "(default: constant:0.3)");
  add_run_flags(cycle, f);
  add_common_flags(cycle, f);
  commands[cycle] = Command::Cycle;

  auto* sweep_d = app.add_subcommand("sweep-d", "D/N versus constant damage d");
  add_graph_flags(sweep_d, f, true);
  add_model_flags(sweep_d, f, true);
  sweep_d->add_option("--d-grid", f.d_grid,
                      "Damage values in [0,1]: comma list or linspace:<lo>:<hi>:<count> "
                      "(default: linspace:0:1:41)");
  add_run_flags(sweep_d, f);
  add_common_flags(sweep_d, f);
  commands[sweep_d] = Command::SweepD;

  auto* sweep_eps = app.add_subcommand("sweep-eps", "D/N versus damage growth rate epsilon");
  add_graph_flags(sweep_eps, f, true);
  add_model_flags(sweep_eps, f, true);
  sweep_eps->add_option("--eps-grid", f.eps_grid,
                        "Growth rates > 0: comma list or logspace:<lo>:<hi>:<count> "
                        "(default: logspace:0.001:1:40)");
  sweep_eps->add_option("--kinds", f.kinds, "Damage laws, subset of {logistic, mutating} (default: both)");
  sweep_eps->add_option("--d0", f.d0, "Initial damage, [0,1] (default: 0.1)");
  sweep_eps->add_option("--reference-d-grid", f.reference_d,
                        "d grid of the constant-damage reference maximum (default: linspace:0:1:41)");
  sweep_eps->add_flag("--no-reference", f.no_reference, "Skip the constant-damage reference rows");
  add_run_flags(sweep_eps, f);
  add_common_flags(sweep_eps, f);
  commands[sweep_eps] = Command::SweepEps;

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "cyberepi: error: usage: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    for (const auto& [sub, cmd] : commands)
      if (sub->parsed()) return dispatch(cmd, f);
  } catch (const ParameterError& e) {
    std::cerr << "cyberepi: error: parameter " << e.name() << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const FormatError& e) {
    std::cerr << "cyberepi: error: format: " << e.what() << '\n';
    return kExitUsage;
  } catch (const GenerationError& e) {
    std::cerr << "cyberepi: error: generation: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "cyberepi: error: runtime: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
