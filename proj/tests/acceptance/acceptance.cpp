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

// Acceptance checks at desk scale (n=500, R=200 unless stated).
//
//   acceptance                 run all seven criteria
//   acceptance --criterion N   run criterion N only
//
// Prints one PASS/FAIL line per criterion; exits nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "cyberepi/cyberepi.hpp"

namespace cyberepi {
namespace {

constexpr std::uint64_t kSeed = 20260501;
constexpr std::size_t kN = 500;
constexpr std::size_t kR = 200;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double x, int digits = 4) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

// ---------------------------------------------------------------------------
// 1. Sub-threshold identity

Outcome criterion1() {
  const GraphSpec spec{GraphFamily::ErdosRenyi, kN, 10.0, 0};
  ModelParams p;
  p.theta = 0.2;
  const DamageModel dmg = ConstantDamage{0.1};
  std::size_t bad = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < 50; ++i) {
    const Graph g = generate(realization_graph_spec(spec, kSeed, i));
    const RunResult r = run(g, p, dmg, realization_run_seed(kSeed, i));
    const bool all_infected = r.ever_infected == g.n();
    if (!r.absorbed || !all_infected || r.total_damage_per_node != 0.1) ++bad;
    worst = std::max(worst, std::abs(r.total_damage_per_node - 0.1));
  }
  return {bad == 0, "50 realizations, " + std::to_string(bad) +
                        " with D/N != 0.1 or not all infected; max |D/N - 0.1| = " + fmt(worst)};
}

// ---------------------------------------------------------------------------
// 2. Cycle shape

Outcome criterion2() {
  const GraphSpec spec{GraphFamily::ErdosRenyi, kN, 10.0, 0};
  ModelParams p;
  p.theta = 0.2;
  const EnsembleSummary s = run_ensemble(spec, p, ConstantDamage{0.3}, kR, kSeed);

  // (a) the padded series ends in the mean of the absorbing rows, so all-H_a
  // in every realization is the same as a final mean H_a of exactly n.
  const MeanRow& last = s.mean_series.back();
  const bool a = s.truncated == 0 && last.counts[4] == static_cast<double>(kN);

  const bool b = s.mean_onset_t && s.onset_count == kR && *s.mean_onset_t >= 10.0 &&
                 *s.mean_onset_t <= 60.0;

  std::vector<double> iu;
  for (const auto& row : s.mean_series) iu.push_back(row.counts[2]);
  const std::size_t peaks = count_peaks(moving_average(iu, 5));
  const bool c = peaks == 1;

  std::ostringstream os;
  os << "(a) truncated=" << s.truncated << " final mean H_a=" << fmt(last.counts[4], 6) << " of "
     << kN << (a ? " ok" : " FAIL") << "; (b) mean onset="
     << (s.mean_onset_t ? fmt(*s.mean_onset_t) : std::string("none")) << " in [10,60]"
     << (b ? " ok" : " FAIL") << "; (c) smoothed mean I_u peaks=" << peaks << (c ? " ok" : " FAIL");
  return {a && b && c, os.str()};
}

// ---------------------------------------------------------------------------
// 3. Orderings of the constant-damage curves

struct CurveKey {
  GraphFamily family;
  double k;
  double theta;
  auto operator<=>(const CurveKey&) const = default;
};

std::vector<double> constant_curve_dn(GraphFamily f, double k, double theta,
                                      const std::vector<double>& ds) {
  ModelParams p;
  p.theta = theta;
  const GraphSpec spec{f, kN, k, 0};
  EnsembleOptions o;
  o.keep_series = false;
  std::vector<double> out;
  for (double d : ds) out.push_back(run_ensemble(spec, p, ConstantDamage{d}, kR, kSeed, o).mean_DN);
  return out;
}

std::size_t argmax(const std::vector<double>& xs) {
  return static_cast<std::size_t>(std::max_element(xs.begin(), xs.end()) - xs.begin());
}

Outcome criterion3() {
  const std::vector<double> ds = linspace(0.0, 1.0, 21);
  const double step = ds[1] - ds[0];
  const std::vector<double> ks{6, 10, 14};
  const std::vector<double> thetas{0.2, 0.6};
  std::map<CurveKey, std::vector<double>> curves;
  for (GraphFamily f : {GraphFamily::ErdosRenyi, GraphFamily::BarabasiAlbert})
    for (double k : ks)
      for (double th : thetas) curves[{f, k, th}] = constant_curve_dn(f, k, th, ds);

  std::ostringstream os;
  bool a = true;
  bool b = true;
  os << "(a) theta=0.6 argmax d:";
  for (const auto& [key, dn] : curves) {
    if (key.theta != 0.6) continue;
    const double d = ds[argmax(dn)];
    const bool ok = std::abs(d - 0.6) <= step + 1e-12;
    a = a && ok;
    os << ' ' << to_string(key.family) << key.k << '=' << d << (ok ? "" : "!");
  }
  os << (a ? " ok" : " FAIL") << "; (b) theta=0.2 argmax d:";
  for (const auto& [key, dn] : curves) {
    if (key.theta != 0.2) continue;
    const std::size_t i = argmax(dn);
    const bool ok = i + 1 == ds.size();
    b = b && ok;
    os << ' ' << to_string(key.family) << key.k << '=' << ds[i] << (ok ? "" : "!");
    if (!ok) os << "(D/N " << fmt(dn[i]) << " vs " << fmt(dn.back()) << " at d=1)";
  }
  os << (b ? " ok" : " FAIL");

  std::size_t c_hits = 0;
  std::size_t c_total = 0;
  std::size_t d_hits = 0;
  std::size_t d_total = 0;
  for (double th : thetas) {
    for (std::size_t j = 0; j < ds.size(); ++j) {
      if (!(ds[j] > th + 1e-12)) continue;
      for (double k : ks) {
        ++c_total;
        c_hits += curves[{GraphFamily::BarabasiAlbert, k, th}][j] >=
                  curves[{GraphFamily::ErdosRenyi, k, th}][j];
      }
      for (GraphFamily f : {GraphFamily::ErdosRenyi, GraphFamily::BarabasiAlbert}) {
        ++d_total;
        const double d6 = curves[{f, 6, th}][j];
        const double d10 = curves[{f, 10, th}][j];
        const double d14 = curves[{f, 14, th}][j];
        d_hits += d6 <= d10 && d10 <= d14;
      }
    }
  }
  const bool c = c_hits >= 0.8 * static_cast<double>(c_total);
  const bool d = d_hits >= 0.8 * static_cast<double>(d_total);
  os << "; (c) BA>=ER at " << c_hits << '/' << c_total << (c ? " ok" : " FAIL")
     << "; (d) nondecreasing in k at " << d_hits << '/' << d_total << (d ? " ok" : " FAIL");
  return {a && b && c && d, os.str()};
}

// ---------------------------------------------------------------------------
// 4. Time-varying damage beats the constant maximum

std::vector<EnsembleSummary> epsilon_curve(GraphFamily f, double theta, DamageKind kind,
                                           const std::vector<double>& eps) {
  ModelParams p;
  p.theta = theta;
  const GraphSpec spec{f, kN, 10.0, 0};
  EnsembleOptions o;
  o.keep_series = false;
  std::vector<EnsembleSummary> out;
  for (double e : eps) out.push_back(run_ensemble(spec, p, make_damage(kind, e, 0.1), kR, kSeed, o));
  return out;
}

Outcome criterion4() {
  const auto reference = constant_curve_dn(GraphFamily::ErdosRenyi, 10.0, 0.2, linspace(0.0, 1.0, 21));
  const double best_constant = *std::max_element(reference.begin(), reference.end());
  const std::vector<double> eps = logspace(0.001, 1.0, 20);
  const auto logistic = epsilon_curve(GraphFamily::ErdosRenyi, 0.2, DamageKind::Logistic, eps);
  std::size_t best = 0;
  std::size_t exceed = 0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    const double margin = logistic[i].mean_DN - best_constant - logistic[i].sem_DN();
    if (margin > 0.0) ++exceed;
    if (logistic[i].mean_DN - logistic[i].sem_DN() > logistic[best].mean_DN - logistic[best].sem_DN())
      best = i;
  }
  std::ostringstream os;
  os << "constant max D/N=" << fmt(best_constant) << "; best logistic eps=" << fmt(eps[best])
     << " D/N=" << fmt(logistic[best].mean_DN) << " SE=" << fmt(logistic[best].sem_DN())
     << "; " << exceed << "/20 eps exceed by more than one SE";
  return {exceed > 0, os.str()};
}

// ---------------------------------------------------------------------------
// 5. Logistic dominates mutating

Outcome criterion5() {
  const std::vector<double> eps = logspace(0.001, 1.0, 20);
  std::size_t hits = 0;
  std::size_t total = 0;
  std::ostringstream misses;
  for (GraphFamily f : {GraphFamily::ErdosRenyi, GraphFamily::BarabasiAlbert}) {
    for (double th : {0.2, 0.6}) {
      const auto lg = epsilon_curve(f, th, DamageKind::Logistic, eps);
      const auto mu = epsilon_curve(f, th, DamageKind::Mutating, eps);
      for (std::size_t i = 0; i < eps.size(); ++i) {
        ++total;
        if (lg[i].mean_DN >= mu[i].mean_DN) {
          ++hits;
        } else {
          misses << ' ' << to_string(f) << "/theta=" << th << "/eps=" << fmt(eps[i], 3);
        }
      }
    }
  }
  const bool ok = hits >= 0.9 * static_cast<double>(total);
  std::string detail = "logistic>=mutating at " + std::to_string(hits) + '/' + std::to_string(total);
  if (!misses.str().empty()) detail += "; misses:" + misses.str();
  return {ok, detail};
}

// ---------------------------------------------------------------------------
// 6. One-step frequencies against the exact event probabilities

using C = Compartment;

// Exact next-compartment distribution of one node, from its event
// probabilities and the even split of a double fire.
std::map<C, double> exact_next(C c, const EventProbs& e) {
  std::map<C, double> m;
  switch (c) {
    case C::SusceptibleUnaware: {
      const double both = e.infect * e.aware_contact;
      m[C::InfectedUnaware] = e.infect * (1 - e.aware_contact) + both / 2;
      m[C::SusceptibleAware] = e.aware_contact * (1 - e.infect) + both / 2;
      break;
    }
    case C::SusceptibleAware: {
      const double both = e.infect * e.heal;
      m[C::InfectedAware] = e.infect * (1 - e.heal) + both / 2;
      m[C::HealedAware] = e.heal * (1 - e.infect) + both / 2;
      break;
    }
    case C::InfectedUnaware:
      m[C::InfectedAware] = 1 - (1 - e.aware_contact) * (1 - e.aware_spontaneous);
      break;
    case C::InfectedAware:
      m[C::HealedAware] = e.heal;
      break;
    case C::HealedAware:
      break;
  }
  double moved = 0.0;
  for (const auto& [to, pr] : m) moved += pr;
  m[c] = 1 - moved;
  return m;
}

Graph star(std::size_t leaves) {
  std::vector<Edge> e;
  for (NodeId v = 1; v <= leaves; ++v) e.emplace_back(0, v);
  return Graph::from_edges(leaves + 1, e);
}

Outcome criterion6() {
  ModelParams p;
  p.tau = 0.3;
  p.nu = 0.25;
  p.mu0 = 0.5;
  p.gamma = 0.2;
  p.theta = 0.2;
  p.aware_infection_factor = 0.5;
  const double damage = 0.6;  // mu = 0.2
  const DamageModel dmg = ConstantDamage{damage};

  struct Case {
    std::string name;
    Graph g;
    std::vector<C> states;
  };
  const Graph k3 = Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}});
  const std::vector<Case> cases{
      {"K1,1 Su-Iu", star(1), {C::SusceptibleUnaware, C::InfectedUnaware}},
      {"K1,1 Sa-Ia", star(1), {C::SusceptibleAware, C::InfectedAware}},
      {"K1,1 Iu-Sa", star(1), {C::InfectedUnaware, C::SusceptibleAware}},
      {"K1,2 Su|Iu,Ha", star(2), {C::SusceptibleUnaware, C::InfectedUnaware, C::HealedAware}},
      {"K1,2 Iu|Sa,Ia", star(2), {C::InfectedUnaware, C::SusceptibleAware, C::InfectedAware}},
      {"K1,2 Sa|Iu,Ia", star(2), {C::SusceptibleAware, C::InfectedUnaware, C::InfectedAware}},
      {"K1,3 Su|Iu,Ia,Sa", star(3),
       {C::SusceptibleUnaware, C::InfectedUnaware, C::InfectedAware, C::SusceptibleAware}},
      {"K1,3 Ia|Su,Su,Iu", star(3),
       {C::InfectedAware, C::SusceptibleUnaware, C::SusceptibleUnaware, C::InfectedUnaware}},
      {"K1,3 Iu|Ha,Ha,Su", star(3),
       {C::InfectedUnaware, C::HealedAware, C::HealedAware, C::SusceptibleUnaware}},
      {"K3 Su,Iu,Sa", k3, {C::SusceptibleUnaware, C::InfectedUnaware, C::SusceptibleAware}},
      {"K3 Iu,Ia,Su", k3, {C::InfectedUnaware, C::InfectedAware, C::SusceptibleUnaware}},
  };

  const int trials = 100000;
  std::size_t checked = 0;
  std::size_t failed = 0;
  double worst_z = 0.0;
  std::string worst;
  for (std::size_t ci = 0; ci < cases.size(); ++ci) {
    const Case& cs = cases[ci];
    SimState init;
    for (C c : cs.states) {
      NodeState n;
      n.compartment = c;
      if (is_infective(c)) {
        n.damage_received = damage;
        n.ever_infected = true;
      }
      init.nodes.push_back(n);
    }
    const std::size_t n = cs.states.size();
    std::vector<std::map<C, double>> expect(n);
    for (NodeId v = 0; v < n; ++v)
      expect[v] = exact_next(cs.states[v],
                             event_probabilities(v, init, cs.g, p, mu_of(init.nodes[v].damage_received, p)));
    std::vector<std::map<C, int>> seen(n);
    for (int t = 0; t < trials; ++t) {
      SimState s = init;
      s.stream_key = derive_seed(kSeed, ci * trials + static_cast<std::size_t>(t), StreamTag::kDynamics);
      step(s, cs.g, p, dmg);
      for (NodeId v = 0; v < n; ++v) ++seen[v][s.nodes[v].compartment];
    }
    for (NodeId v = 0; v < n; ++v) {
      for (const auto& [to, count] : seen[v]) {
        if (!expect[v].count(to)) {
          ++failed;
          worst = cs.name + " node " + std::to_string(v) + " reached forbidden " +
                  std::string(short_name(to));
        }
      }
      for (const auto& [to, pr] : expect[v]) {
        if (to == cs.states[v]) continue;  // staying put is not an event
        ++checked;
        const double freq = seen[v][to] / static_cast<double>(trials);
        const double se = std::sqrt(pr * (1 - pr) / trials);
        const double z = se > 0 ? std::abs(freq - pr) / se : (freq == pr ? 0.0 : 1e9);
        if (z > 3.0) ++failed;
        if (z > worst_z) {
          worst_z = z;
          if (failed == 0 || z > 3.0)
            worst = cs.name + " node " + std::to_string(v) + "->" + std::string(short_name(to)) +
                    " freq " + fmt(freq, 5) + " exact " + fmt(pr, 5);
        }
      }
    }
  }
  return {failed == 0, std::to_string(checked) + " transition frequencies over " +
                           std::to_string(trials) + " trials each, " + std::to_string(failed) +
                           " beyond 3 SE; max |z|=" + fmt(worst_z, 3) + " (" + worst + ")"};
}

// ---------------------------------------------------------------------------
// 7. Invariant suite

Outcome criterion7() {
  std::vector<std::string> broken;
  auto check = [&](bool ok, const std::string& what) {
    if (!ok) broken.push_back(what);
  };

  // Conservation, H_a absorbing, allowed arrows, over random instances.
  PhiloxStream rng(kSeed);
  std::size_t steps = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const bool ba = trial % 2 == 1;
    const GraphSpec spec{ba ? GraphFamily::BarabasiAlbert : GraphFamily::ErdosRenyi,
                         100 + rng.below(200), ba ? 6.0 : 8.0, rng()};
    const Graph g = generate(spec);
    ModelParams p;
    p.tau = 0.02 + 0.2 * rng.uniform();
    p.nu = 0.2 * rng.uniform();
    p.mu0 = 0.05 * rng.uniform();
    p.gamma = 0.01 + 0.1 * rng.uniform();
    p.theta = rng.uniform();
    p.rho0 = 0.03;
    const DamageModel dmg = trial % 3 == 0   ? DamageModel{ConstantDamage{rng.uniform()}}
                            : trial % 3 == 1 ? DamageModel{LogisticClockDamage{0.1, 0.1}}
                                             : DamageModel{MutatingStrainDamage{0.1, 0.1}};
    SimState s = init_state(g, p, dmg, rng());
    const detail::ContactTables tables(p, g.max_degree());
    detail::Workspace scratch;
    while (true) {
      const SimState prev = s;
      if (!detail::advance(s, g, p, dmg, tables, scratch)) break;
      ++steps;
      const Counts c = count_compartments(s.nodes);
      check(std::accumulate(c.begin(), c.end(), std::size_t{0}) == g.n(), "conservation");
      for (NodeId v = 0; v < g.n(); ++v) {
        const C from = prev.nodes[v].compartment;
        const C to = s.nodes[v].compartment;
        check(is_allowed_transition(from, to), "forbidden transition");
        check(from != C::HealedAware || to == C::HealedAware, "H_a left");
      }
    }
    check(is_absorbed(s, g, p), "run ended before absorption");
  }

  // Null dynamics freeze.
  {
    const Graph g = generate({GraphFamily::ErdosRenyi, kN, 10.0, 3});
    ModelParams p;
    p.tau = p.nu = p.mu0 = p.gamma = 0.0;
    SimState s = init_state(g, p, ConstantDamage{0.5}, 4);
    const auto before = s.nodes;
    for (int i = 0; i < 10; ++i) step(s, g, p, ConstantDamage{0.5});
    check(s.nodes == before, "null dynamics moved a node");
    const RunResult r = run(g, p, ConstantDamage{0.5}, 4);
    check(r.steps == 0 && r.absorbed, "null run did not stop at t=0");
  }

  // Determinism and worker independence.
  {
    const GraphSpec spec{GraphFamily::BarabasiAlbert, kN, 10.0, 0};
    const ModelParams p;
    const Graph g = generate(realization_graph_spec(spec, kSeed, 0));
    const RunResult r1 = run(g, p, ConstantDamage{0.7}, 99);
    const RunResult r2 = run(g, p, ConstantDamage{0.7}, 99);
    check(r1.series == r2.series && r1.total_damage_per_node == r2.total_damage_per_node,
          "run not deterministic");
    EnsembleOptions w1;
    w1.workers = 1;
    EnsembleOptions w4;
    w4.workers = 4;
    const auto e1 = run_ensemble(spec, p, LogisticClockDamage{0.1, 0.05}, 24, kSeed, w1);
    const auto e1b = run_ensemble(spec, p, LogisticClockDamage{0.1, 0.05}, 24, kSeed, w1);
    const auto e4 = run_ensemble(spec, p, LogisticClockDamage{0.1, 0.05}, 24, kSeed, w4);
    auto same = [](const EnsembleSummary& a, const EnsembleSummary& b) {
      if (a.dn != b.dn || a.mean_DN != b.mean_DN || a.std_DN != b.std_DN) return false;
      if (a.mean_series.size() != b.mean_series.size()) return false;
      for (std::size_t t = 0; t < a.mean_series.size(); ++t)
        if (a.mean_series[t].counts != b.mean_series[t].counts) return false;
      return true;
    };
    check(same(e1, e1b), "run_ensemble not deterministic");
    check(same(e1, e4), "run_ensemble differs between 1 and 4 workers");
  }

  // Logistic monotonicity and limits.
  for (double d0 : {0.05, 0.1, 0.5}) {
    for (double eps : {1e-3, 0.1, 1.0}) {
      double prev = logistic_damage(d0, eps, 0.0);
      check(prev == d0, "logistic(0) != d0");
      for (int c = 1; c <= 2000; ++c) {
        const double d = logistic_damage(d0, eps, c);
        check(d >= prev && d <= 1.0, "logistic not monotone or above 1");
        prev = d;
      }
    }
    check(std::abs(logistic_damage(d0, 1.0, 1e4) - 1.0) < 1e-12, "logistic limit != 1");
  }

  // mu_of at, below and above the threshold.
  {
    ModelParams p;
    for (double th : {0.0, 0.2, 0.6, 1.0}) {
      p.theta = th;
      check(mu_of(th, p) == 0.0, "mu_of(theta) != 0");
      if (th > 0.0) check(mu_of(std::nextafter(th, 0.0), p) == 0.0, "mu_of below theta != 0");
      if (th < 1.0) check(mu_of(1.0, p) > 0.0, "mu_of above theta not positive");
    }
  }

  std::sort(broken.begin(), broken.end());
  broken.erase(std::unique(broken.begin(), broken.end()), broken.end());
  std::string detail = std::to_string(steps) + " audited steps over 30 random instances";
  if (broken.empty()) {
    detail += ", all invariants hold";
  } else {
    for (const auto& b : broken) detail += "; violated: " + b;
  }
  return {broken.empty(), detail};
}

}  // namespace
}  // namespace cyberepi

int main(int argc, char** argv) {
  using namespace cyberepi;
  struct Criterion {
    const char* name;
    std::function<Outcome()> check;
    double budget_s;  // wall-clock limit, part of the verdict
  };
  const std::vector<Criterion> criteria{
      {"sub-threshold identity D/N = d", criterion1, 10},
      {"cycle shape (absorption, onset, unimodal I_u)", criterion2, 120},
      {"constant-damage orderings", criterion3, 360},
      {"logistic damage exceeds the constant maximum", criterion4, 180},
      {"logistic dominates mutating", criterion5, 240},
      {"one-step frequencies match event probabilities", criterion6, 30},
      {"invariant suite", criterion7, 60},
  };

  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      const int c = std::atoi(argv[++i]);
      if (c < 1 || c > static_cast<int>(criteria.size())) {
        std::cerr << "acceptance: criterion must be 1-" << criteria.size() << '\n';
        return 2;
      }
      selected.push_back(c);
    } else {
      std::cerr << "usage: acceptance [--criterion N]...\n";
      return 2;
    }
  }
  if (selected.empty())
    for (int c = 1; c <= static_cast<int>(criteria.size()); ++c) selected.push_back(c);

  int failures = 0;
  for (int c : selected) {
    const Criterion& cr = criteria[static_cast<std::size_t>(c - 1)];
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = cr.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < cr.budget_s;
    if (!in_time) o.pass = false;
    std::printf("criterion %d: %s %s [%.1fs of %.0fs budget%s] %s\n", c, o.pass ? "PASS" : "FAIL",
                cr.name, secs, cr.budget_s, in_time ? "" : ", OVER", o.detail.c_str());
    std::fflush(stdout);
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
