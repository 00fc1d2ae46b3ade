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

#pragma once

// Experiment harness: declarative grids over topology, threshold and damage
// law, run through the ensemble engine and written as CSV.
//
// Config files are INI-style text (a flat TOML subset):
//
//   [experiment]  name, realizations, seed, output, fixed_graph, step_cap, workers
//   [graph]       family (er, ba), n, mean_degree
//   [params]      tau, aware_infection_factor, nu, mu0, gamma, rho0, theta
//   [damage]      kind (constant, logistic, mutating), d, d0, epsilon,
//                 reference, reference_d
//
// List-valued keys take "a, b, c" (optionally bracketed), or a generated grid
// "linspace:<lo>:<hi>:<count>" / "logspace:<lo>:<hi>:<count>".  Logspace
// excludes lo and includes hi.  Comments start with # or ; and may trail a
// value.

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cyberepi/damage.hpp"
#include "cyberepi/engine.hpp"
#include "cyberepi/errors.hpp"
#include "cyberepi/graph.hpp"
#include "cyberepi/metrics.hpp"
#include "cyberepi/params.hpp"

#ifndef CYBEREPI_VERSION
#define CYBEREPI_VERSION "0.1.0"
#endif

namespace cyberepi {

inline std::vector<double> linspace(double lo, double hi, std::size_t count) {
  if (count == 0) return {};
  if (count == 1) return {lo};
  std::vector<double> xs(count);
  for (std::size_t i = 0; i < count; ++i)
    xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  xs.back() = hi;
  return xs;
}

/// `count` log-spaced points in (lo, hi].
inline std::vector<double> logspace(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0 && hi > lo)) throw ParameterError("logspace", "logspace needs 0 < lo < hi");
  std::vector<double> xs(count);
  for (std::size_t i = 0; i < count; ++i)
    xs[i] = lo * std::pow(hi / lo, static_cast<double>(i + 1) / static_cast<double>(count));
  if (count > 0) xs.back() = hi;
  return xs;
}

enum class DamageKind { Constant, Logistic, Mutating };

inline std::string to_string(DamageKind k) {
  switch (k) {
    case DamageKind::Constant: return "constant";
    case DamageKind::Logistic: return "logistic";
    case DamageKind::Mutating: return "mutating";
  }
  return "constant";
}

inline DamageKind parse_damage_kind(const std::string& s) {
  if (s == "constant") return DamageKind::Constant;
  if (s == "logistic") return DamageKind::Logistic;
  if (s == "mutating") return DamageKind::Mutating;
  throw ParameterError("damage.kind", "damage kind '" + s + "' not in {constant, logistic, mutating}");
}

/// `value` is d for Constant and epsilon otherwise.
inline DamageModel make_damage(DamageKind kind, double value, double d0) {
  switch (kind) {
    case DamageKind::Constant: return ConstantDamage{value};
    case DamageKind::Logistic: return LogisticClockDamage{d0, value};
    case DamageKind::Mutating: return MutatingStrainDamage{d0, value};
  }
  return ConstantDamage{value};
}

struct GraphGrid {
  std::vector<GraphFamily> families{GraphFamily::ErdosRenyi};
  std::vector<double> mean_degrees{10.0};
  std::size_t n = 500;
};

struct DamageGrid {
  std::vector<DamageKind> kinds{DamageKind::Constant};
  std::vector<double> d{0.3};
  double d0 = 0.1;
  std::vector<double> epsilon = logspace(0.001, 1.0, 40);
};

struct ExperimentConfig {
  std::string name = "experiment";
  GraphGrid graph;
  ModelParams params;  // theta is taken from `thetas`
  std::vector<double> thetas{0.2};
  DamageGrid damage;
  std::size_t realizations = 200;
  std::optional<std::uint64_t> base_seed;
  std::filesystem::path output;
  bool fixed_graph = false;
  std::uint64_t step_cap = kDefaultStepCap;
  std::size_t workers = 0;
  // epsilon sweeps: also report the constant-damage maximum over reference_d
  bool reference = true;
  std::vector<double> reference_d = linspace(0.0, 1.0, 41);

  /// Throws ParameterError on the first invalid field.
  void validate() const {
    if (realizations < 1) throw ParameterError("realizations", "realizations must be >= 1");
    if (!base_seed) throw ParameterError("seed", "a seed is required (no implicit seeding)");
    if (graph.families.empty() || graph.mean_degrees.empty() || thetas.empty())
      throw ParameterError("graph", "graph family, mean_degree and theta lists must be non-empty");
    if (damage.kinds.empty()) throw ParameterError("damage.kind", "damage kind list is empty");
    for (double th : thetas) {
      ModelParams p = params;
      p.theta = th;
      p.validate();
    }
    for (double k : graph.mean_degrees) {
      for (GraphFamily f : graph.families) {
        if (f == GraphFamily::ErdosRenyi &&
            !(k > 0.0 && k <= static_cast<double>(graph.n) - 1.0)) {
          std::ostringstream os;
          os << "mean_degree=" << k << " outside range (0," << graph.n - 1 << "]";
          throw ParameterError("mean_degree", os.str());
        }
        if (f == GraphFamily::BarabasiAlbert &&
            (k < 2.0 || std::floor(k) != k || static_cast<long long>(k) % 2 != 0 ||
             graph.n <= static_cast<std::size_t>(k) / 2)) {
          std::ostringstream os;
          os << "mean_degree=" << k << " must be an even integer >= 2 with n > mean_degree/2";
          throw ParameterError("mean_degree", os.str());
        }
      }
    }
    for (DamageKind kind : damage.kinds) {
      const auto& values = kind == DamageKind::Constant ? damage.d : damage.epsilon;
      if (values.empty()) throw ParameterError("damage", "damage grid is empty");
      for (double x : values) cyberepi::validate(make_damage(kind, x, damage.d0));
    }
    for (double d : reference_d) detail::require_in_range("reference_d", d, 0.0, 1.0);
  }

  EnsembleOptions ensemble_options(bool keep_series) const {
    EnsembleOptions o;
    o.workers = workers;
    o.fixed_graph = fixed_graph;
    o.keep_series = keep_series;
    o.step_cap = step_cap;
    return o;
  }
};

namespace detail {

inline std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

// Drops a trailing "# ..." or "; ..." comment that is outside quotes.
inline std::string strip_comment(const std::string& s) {
  char quote = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (quote) {
      if (c == quote) quote = 0;
    } else if (c == '"' || c == '\'') {
      quote = c;
    } else if ((c == '#' || c == ';') && (i == 0 || std::isspace(static_cast<unsigned char>(s[i - 1])))) {
      return s.substr(0, i);
    }
  }
  return s;
}

inline std::string unquote(std::string s) {
  s = trim(std::move(s));
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front())
    s = s.substr(1, s.size() - 2);
  return s;
}

inline std::vector<std::string> split_list(const std::string& raw) {
  std::string s = trim(raw);
  if (s.size() >= 2 && s.front() == '[' && s.back() == ']') s = s.substr(1, s.size() - 2);
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    item = unquote(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

inline double parse_number(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size())
    throw ParameterError(key, key + ": '" + text + "' is not a number");
  return v;
}

inline std::uint64_t parse_unsigned(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    if (!text.empty() && text.front() == '-') throw std::invalid_argument("negative");
    v = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size())
    throw ParameterError(key, key + ": '" + text + "' is not a non-negative integer");
  return v;
}

inline bool parse_bool(const std::string& key, const std::string& text) {
  const std::string t = unquote(text);
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  throw ParameterError(key, key + ": '" + text + "' is not a boolean");
}

}  // namespace detail

/// Parses "linspace:lo:hi:n", "logspace:lo:hi:n" or a comma list.
inline std::vector<double> parse_grid(const std::string& key, const std::string& text) {
  const std::string t = detail::unquote(text);
  for (const char* gen : {"linspace:", "logspace:"}) {
    const std::string prefix = gen;
    if (t.rfind(prefix, 0) != 0) continue;
    std::vector<std::string> parts;
    std::stringstream ss(t.substr(prefix.size()));
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(detail::trim(item));
    if (parts.size() != 3)
      throw ParameterError(key, key + ": expected " + prefix + "<lo>:<hi>:<count>");
    const double lo = detail::parse_number(key, parts[0]);
    const double hi = detail::parse_number(key, parts[1]);
    const auto count = static_cast<std::size_t>(detail::parse_unsigned(key, parts[2]));
    return prefix == "linspace:" ? linspace(lo, hi, count) : logspace(lo, hi, count);
  }
  std::vector<double> out;
  for (const auto& item : detail::split_list(t)) out.push_back(detail::parse_number(key, item));
  return out;
}

/// Reads a config from INI-style text.  Unknown sections or keys are errors.
inline ExperimentConfig parse_config(std::istream& in, ExperimentConfig cfg = {}) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw FormatError(std::string("config: ") + e.what());
  }
  const std::set<std::string> known{
      "experiment.name", "experiment.realizations", "experiment.seed", "experiment.output",
      "experiment.fixed_graph", "experiment.step_cap", "experiment.workers", "experiment.kind",
      "graph.family", "graph.n", "graph.mean_degree",
      "params.tau", "params.aware_infection_factor", "params.nu", "params.mu0", "params.gamma",
      "params.rho0", "params.theta",
      "damage.kind", "damage.d", "damage.d0", "damage.epsilon", "damage.reference",
      "damage.reference_d"};
  for (const auto& [section, body] : tree) {
    if (body.empty()) throw FormatError("config: key '" + section + "' outside any section");
    for (const auto& [key, value] : body) {
      const std::string full = section + "." + key;
      if (!known.count(full)) throw FormatError("config: unknown key '" + full + "'");
      const std::string v = detail::unquote(detail::strip_comment(value.data()));
      if (full == "experiment.name") cfg.name = v;
      else if (full == "experiment.realizations") cfg.realizations = detail::parse_unsigned(full, v);
      else if (full == "experiment.seed") cfg.base_seed = detail::parse_unsigned(full, v);
      else if (full == "experiment.output") cfg.output = v;
      else if (full == "experiment.fixed_graph") cfg.fixed_graph = detail::parse_bool(full, v);
      else if (full == "experiment.step_cap") cfg.step_cap = detail::parse_unsigned(full, v);
      else if (full == "experiment.workers") cfg.workers = detail::parse_unsigned(full, v);
      else if (full == "experiment.kind") {
        // informational; the subcommand decides the operation
      } else if (full == "graph.family") {
        cfg.graph.families.clear();
        for (const auto& f : detail::split_list(v)) cfg.graph.families.push_back(parse_family(f));
      } else if (full == "graph.n") cfg.graph.n = detail::parse_unsigned(full, v);
      else if (full == "graph.mean_degree") cfg.graph.mean_degrees = parse_grid(full, v);
      else if (full == "params.tau") cfg.params.tau = detail::parse_number(full, v);
      else if (full == "params.aware_infection_factor")
        cfg.params.aware_infection_factor = detail::parse_number(full, v);
      else if (full == "params.nu") cfg.params.nu = detail::parse_number(full, v);
      else if (full == "params.mu0") cfg.params.mu0 = detail::parse_number(full, v);
      else if (full == "params.gamma") cfg.params.gamma = detail::parse_number(full, v);
      else if (full == "params.rho0") cfg.params.rho0 = detail::parse_number(full, v);
      else if (full == "params.theta") cfg.thetas = parse_grid(full, v);
      else if (full == "damage.kind") {
        cfg.damage.kinds.clear();
        for (const auto& k : detail::split_list(v)) cfg.damage.kinds.push_back(parse_damage_kind(k));
      } else if (full == "damage.d") cfg.damage.d = parse_grid(full, v);
      else if (full == "damage.d0") cfg.damage.d0 = detail::parse_number(full, v);
      else if (full == "damage.epsilon") cfg.damage.epsilon = parse_grid(full, v);
      else if (full == "damage.reference") cfg.reference = detail::parse_bool(full, v);
      else if (full == "damage.reference_d") cfg.reference_d = parse_grid(full, v);
    }
  }
  return cfg;
}

inline ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig cfg = {}) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open config '" + path.string() + "'");
  try {
    return parse_config(in, std::move(cfg));
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

using ProgressFn = std::function<void(const std::string&)>;

// ---------------------------------------------------------------------------
// CSV output

namespace detail {

inline std::string join(const std::vector<double>& xs) {
  std::ostringstream os;
  os << std::setprecision(6);
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? "," : "") << xs[i];
  return os.str();
}

inline void write_config_echo(std::ostream& os, const ExperimentConfig& cfg,
                              const std::string& operation) {
  os << "# cyberepi " << CYBEREPI_VERSION << '\n';
  os << "# operation: " << operation << '\n';
  os << "# experiment.name: " << cfg.name << '\n';
  os << "# experiment.realizations: " << cfg.realizations << '\n';
  os << "# experiment.seed: " << cfg.base_seed.value_or(0) << '\n';
  os << "# experiment.fixed_graph: " << (cfg.fixed_graph ? "true" : "false") << '\n';
  os << "# experiment.step_cap: " << cfg.step_cap << '\n';
  os << "# graph.family: ";
  for (std::size_t i = 0; i < cfg.graph.families.size(); ++i)
    os << (i ? "," : "") << to_string(cfg.graph.families[i]);
  os << '\n';
  os << "# graph.n: " << cfg.graph.n << '\n';
  os << "# graph.mean_degree: " << join(cfg.graph.mean_degrees) << '\n';
  os << std::setprecision(6);
  os << "# params: tau=" << cfg.params.tau
     << " aware_infection_factor=" << cfg.params.aware_infection_factor
     << " nu=" << cfg.params.nu << " mu0=" << cfg.params.mu0 << " gamma=" << cfg.params.gamma
     << " rho0=" << cfg.params.rho0 << '\n';
  os << "# params.theta: " << join(cfg.thetas) << '\n';
  os << "# damage.kind: ";
  for (std::size_t i = 0; i < cfg.damage.kinds.size(); ++i)
    os << (i ? "," : "") << to_string(cfg.damage.kinds[i]);
  os << '\n';
  const bool constant = std::find(cfg.damage.kinds.begin(), cfg.damage.kinds.end(),
                                  DamageKind::Constant) != cfg.damage.kinds.end();
  if (constant) os << "# damage.d: " << join(cfg.damage.d) << '\n';
  if (!constant || cfg.damage.kinds.size() > 1) {
    os << "# damage.d0: " << cfg.damage.d0 << '\n';
    os << "# damage.epsilon: " << join(cfg.damage.epsilon) << '\n';
    if (cfg.reference) os << "# damage.reference_d: " << join(cfg.reference_d) << '\n';
  }
}

inline std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write output '" + path.string() + "'");
  return out;
}

inline void check_written(std::ostream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("error writing output '" + path.string() + "'");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Cycle time series

inline ExperimentConfig single_point(const ExperimentConfig& cfg) {
  if (cfg.graph.families.size() != 1 || cfg.graph.mean_degrees.size() != 1 ||
      cfg.thetas.size() != 1 || cfg.damage.kinds.size() != 1)
    throw ParameterError("config", "a cycle experiment needs a single parameter point");
  const auto& grid =
      cfg.damage.kinds[0] == DamageKind::Constant ? cfg.damage.d : cfg.damage.epsilon;
  if (grid.size() != 1)
    throw ParameterError("config", "a cycle experiment needs a single damage value");
  return cfg;
}

inline DamageModel cycle_damage(const ExperimentConfig& cfg) {
  const DamageKind kind = cfg.damage.kinds.at(0);
  const double x = kind == DamageKind::Constant ? cfg.damage.d.at(0) : cfg.damage.epsilon.at(0);
  return make_damage(kind, x, cfg.damage.d0);
}

inline void write_cycle_csv(std::ostream& os, const ExperimentConfig& cfg,
                            const EnsembleSummary& s) {
  detail::write_config_echo(os, cfg, "cycle");
  os << std::setprecision(6);
  auto opt = [](const std::optional<double>& v) {
    std::ostringstream o;
    o << std::setprecision(6);
    if (v) o << *v; else o << "none";
    return o.str();
  };
  os << "# mean_DN: " << s.mean_DN << " std_DN: " << s.std_DN << " truncated: " << s.truncated << '\n';
  os << "# per-realization phases: onset_t=" << opt(s.mean_onset_t)
     << " (realizations with onset " << s.onset_count << ")"
     << " peak_Iu_t=" << opt(s.mean_peak_Iu_t) << " peak_Ia_t=" << opt(s.mean_peak_Ia_t)
     << " end_t=" << s.mean_end_t << '\n';
  // Phases read off the averaged series, which can differ from the per-run means.
  double onset = -1.0;
  double best_iu = -1.0;
  double best_ia = -1.0;
  std::uint64_t peak_iu = 0;
  std::uint64_t peak_ia = 0;
  for (const auto& row : s.mean_series) {
    const double aware = row.counts[1] + row.counts[3] + row.counts[4];
    if (onset < 0.0 && aware > 0.0) onset = static_cast<double>(row.t);
    if (row.counts[2] > best_iu) { best_iu = row.counts[2]; peak_iu = row.t; }
    if (row.counts[3] > best_ia) { best_ia = row.counts[3]; peak_ia = row.t; }
  }
  os << "# averaged-series phases: onset_t=";
  if (onset >= 0.0) os << onset; else os << "none";
  os << " peak_Iu_t=" << peak_iu << " peak_Ia_t=" << peak_ia
     << " end_t=" << (s.mean_series.empty() ? 0 : s.mean_series.back().t) << '\n';
  os << "t,mean_Su,mean_Sa,mean_Iu,mean_Ia,mean_Ha\n";
  for (const auto& row : s.mean_series) {
    os << row.t;
    for (double c : row.counts) os << ',' << c;
    os << '\n';
  }
}

/// Ensemble time series of the five compartments at one parameter point.
inline EnsembleSummary run_cycle_experiment(const ExperimentConfig& cfg,
                                            const ProgressFn& progress = {}) {
  cfg.validate();
  single_point(cfg);
  ModelParams params = cfg.params;
  params.theta = cfg.thetas[0];
  const GraphSpec spec{cfg.graph.families[0], cfg.graph.n, cfg.graph.mean_degrees[0], 0};
  if (progress) progress("cycle: " + std::to_string(cfg.realizations) + " realizations");
  EnsembleSummary s = run_ensemble(spec, params, cycle_damage(cfg), cfg.realizations,
                                   *cfg.base_seed, cfg.ensemble_options(true));
  if (!cfg.output.empty()) {
    auto out = detail::open_output(cfg.output);
    write_cycle_csv(out, cfg, s);
    detail::check_written(out, cfg.output);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Sweeps

struct SweepRow {
  GraphFamily family = GraphFamily::ErdosRenyi;
  std::size_t n = 0;
  double mean_degree = 0.0;
  ModelParams params;
  std::string damage_kind;  // constant, logistic, mutating, or constant_max
  std::optional<double> d0;
  SweepPoint point;
  std::size_t truncated = 0;
};

inline SweepPoint to_point(double x, const EnsembleSummary& s) {
  return {x, s.mean_DN, s.std_DN, s.mean_ever_infected_fraction, s.realizations};
}

inline void write_sweep_csv(std::ostream& os, const ExperimentConfig& cfg,
                            const std::string& operation, const std::vector<SweepRow>& rows) {
  detail::write_config_echo(os, cfg, operation);
  os << "family,n,mean_degree,tau,aware_infection_factor,nu,mu0,gamma,rho0,theta,"
        "damage_kind,d0,x,mean_DN,std_DN,sem_DN,mean_ever_infected_fraction,realizations,"
        "truncated\n";
  os << std::setprecision(6);
  for (const auto& r : rows) {
    os << to_string(r.family) << ',' << r.n << ',' << r.mean_degree << ',' << r.params.tau << ','
       << r.params.aware_infection_factor << ',' << r.params.nu << ',' << r.params.mu0 << ','
       << r.params.gamma << ',' << r.params.rho0 << ',' << r.params.theta << ','
       << r.damage_kind << ',';
    if (r.d0) os << *r.d0;
    os << ',' << r.point.x << ',' << r.point.mean_DN << ',' << r.point.std_DN << ','
       << r.point.sem_DN() << ',' << r.point.mean_ever_infected_fraction << ','
       << r.point.realizations << ',' << r.truncated << '\n';
  }
}

namespace detail {

inline std::string point_label(GraphFamily f, double k, double theta) {
  std::ostringstream os;
  os << to_string(f) << " k=" << k << " theta=" << theta;
  return os.str();
}

// Constant-damage curve over `ds` for one (family, k, theta).
inline std::vector<SweepRow> constant_curve(const ExperimentConfig& cfg, GraphFamily f, double k,
                                            const ModelParams& params,
                                            const std::vector<double>& ds) {
  std::vector<SweepRow> rows;
  const GraphSpec spec{f, cfg.graph.n, k, 0};
  for (double d : ds) {
    const EnsembleSummary s = run_ensemble(spec, params, ConstantDamage{d}, cfg.realizations,
                                           *cfg.base_seed, cfg.ensemble_options(false));
    rows.push_back({f, cfg.graph.n, k, params, "constant", std::nullopt, to_point(d, s), s.truncated});
  }
  return rows;
}

}  // namespace detail

/// Highest mean_DN of a curve (earliest on ties), relabelled constant_max.
inline SweepRow curve_maximum(const std::vector<SweepRow>& curve) {
  SweepRow best = curve.at(0);
  for (const auto& r : curve)
    if (r.point.mean_DN > best.point.mean_DN) best = r;
  best.damage_kind = "constant_max";
  return best;
}

/// D/N versus constant damage d: one row per (family, mean_degree, theta, d).
inline std::vector<SweepRow> run_damage_sweep(const ExperimentConfig& cfg,
                                              const ProgressFn& progress = {}) {
  cfg.validate();
  if (cfg.damage.kinds.size() != 1 || cfg.damage.kinds[0] != DamageKind::Constant)
    throw ParameterError("damage.kind", "sweep-d needs damage.kind = constant");
  std::vector<SweepRow> rows;
  for (GraphFamily f : cfg.graph.families) {
    for (double k : cfg.graph.mean_degrees) {
      for (double theta : cfg.thetas) {
        ModelParams params = cfg.params;
        params.theta = theta;
        if (progress) progress("sweep-d: " + detail::point_label(f, k, theta));
        auto curve = detail::constant_curve(cfg, f, k, params, cfg.damage.d);
        rows.insert(rows.end(), curve.begin(), curve.end());
      }
    }
  }
  if (!cfg.output.empty()) {
    auto out = detail::open_output(cfg.output);
    write_sweep_csv(out, cfg, "sweep-d", rows);
    detail::check_written(out, cfg.output);
  }
  return rows;
}

/// D/N versus growth rate epsilon for the logistic and/or mutating laws.
/// With `cfg.reference`, each (family, mean_degree, theta) block starts with
/// a constant_max row: the peak of the constant-damage curve over reference_d.
inline std::vector<SweepRow> run_epsilon_sweep(const ExperimentConfig& cfg,
                                               const ProgressFn& progress = {}) {
  cfg.validate();
  for (DamageKind kind : cfg.damage.kinds)
    if (kind == DamageKind::Constant)
      throw ParameterError("damage.kind", "sweep-eps needs damage.kind in {logistic, mutating}");
  std::vector<SweepRow> rows;
  for (GraphFamily f : cfg.graph.families) {
    for (double k : cfg.graph.mean_degrees) {
      for (double theta : cfg.thetas) {
        ModelParams params = cfg.params;
        params.theta = theta;
        const GraphSpec spec{f, cfg.graph.n, k, 0};
        if (cfg.reference) {
          if (progress) progress("sweep-eps reference: " + detail::point_label(f, k, theta));
          rows.push_back(curve_maximum(detail::constant_curve(cfg, f, k, params, cfg.reference_d)));
        }
        for (DamageKind kind : cfg.damage.kinds) {
          if (progress)
            progress("sweep-eps " + to_string(kind) + ": " + detail::point_label(f, k, theta));
          for (double eps : cfg.damage.epsilon) {
            const EnsembleSummary s =
                run_ensemble(spec, params, make_damage(kind, eps, cfg.damage.d0),
                             cfg.realizations, *cfg.base_seed, cfg.ensemble_options(false));
            rows.push_back({f, cfg.graph.n, k, params, to_string(kind), cfg.damage.d0,
                            to_point(eps, s), s.truncated});
          }
        }
      }
    }
  }
  if (!cfg.output.empty()) {
    auto out = detail::open_output(cfg.output);
    write_sweep_csv(out, cfg, "sweep-eps", rows);
    detail::check_written(out, cfg.output);
  }
  return rows;
}

}  // namespace cyberepi
