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

// Discrete-time synchronous dynamics of the two-component compartments.
//
// A node's state is (infection status, awareness):
//
//   S_u --contact tau-->  I_u        S_u --contact nu--> S_a
//   S_a --contact tau'--> I_a        I_u --contact nu or spontaneous mu--> I_a
//   S_a --gamma--> H_a               I_a --gamma--> H_a
//
// All probabilities of step t are evaluated against the compartments at t
// and applied together to produce t+1.  Draws for node v at step t come from
// Philox(counter = {t, stream_id(v)}, key = run key), so the trajectory does
// not depend on the visiting order.

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "cyberepi/damage.hpp"
#include "cyberepi/errors.hpp"
#include "cyberepi/graph.hpp"
#include "cyberepi/params.hpp"
#include "cyberepi/rng.hpp"

namespace cyberepi {

enum class Compartment : std::uint8_t {
  SusceptibleUnaware = 0,
  SusceptibleAware = 1,
  InfectedUnaware = 2,
  InfectedAware = 3,
  HealedAware = 4,
};

inline constexpr std::size_t kCompartments = 5;

inline constexpr std::string_view short_name(Compartment c) noexcept {
  constexpr std::array<std::string_view, kCompartments> names{"Su", "Sa", "Iu", "Ia", "Ha"};
  return names[static_cast<std::size_t>(c)];
}

inline constexpr bool is_infective(Compartment c) noexcept {
  return c == Compartment::InfectedUnaware || c == Compartment::InfectedAware;
}

/// Nodes that signal awareness to their neighbors.  Healed users stay aware
/// and keep spreading the warning.
inline constexpr bool is_aware(Compartment c) noexcept {
  return c == Compartment::SusceptibleAware || c == Compartment::InfectedAware ||
         c == Compartment::HealedAware;
}

/// The seven arrows of the model, plus staying put.
inline constexpr bool is_allowed_transition(Compartment from, Compartment to) noexcept {
  using C = Compartment;
  if (from == to) return true;
  switch (from) {
    case C::SusceptibleUnaware: return to == C::InfectedUnaware || to == C::SusceptibleAware;
    case C::SusceptibleAware: return to == C::InfectedAware || to == C::HealedAware;
    case C::InfectedUnaware: return to == C::InfectedAware;
    case C::InfectedAware: return to == C::HealedAware;
    case C::HealedAware: return false;
  }
  return false;
}

struct NodeState {
  Compartment compartment = Compartment::SusceptibleUnaware;
  double damage_received = 0.0;  // base damage at the moment of infection
  std::uint32_t strain_generation = 0;
  bool ever_infected = false;

  friend bool operator==(const NodeState&, const NodeState&) = default;
};

struct SimState {
  std::uint64_t t = 0;
  std::vector<NodeState> nodes;
  std::uint64_t stream_key = 0;
  // Per-node stream ids; empty means node v draws from stream v.
  std::vector<NodeId> stream_ids;

  NodeId stream_id(NodeId v) const noexcept { return stream_ids.empty() ? v : stream_ids[v]; }
};

using Counts = std::array<std::uint32_t, kCompartments>;

struct CountsRow {
  std::uint64_t t = 0;
  Counts counts{};

  std::uint32_t operator[](Compartment c) const noexcept {
    return counts[static_cast<std::size_t>(c)];
  }
  friend bool operator==(const CountsRow&, const CountsRow&) = default;
};

inline Counts count_compartments(std::span<const NodeState> nodes) noexcept {
  Counts c{};
  for (const auto& s : nodes) ++c[static_cast<std::size_t>(s.compartment)];
  return c;
}

inline CountsRow counts_row(const SimState& s) noexcept {
  return {s.t, count_compartments(s.nodes)};
}

/// round-half-up(rho0 * n); zero is a parameter error.
inline std::size_t seed_count(double rho0, std::size_t n) {
  const auto k = static_cast<std::size_t>(std::floor(rho0 * static_cast<double>(n) + 0.5));
  if (k == 0) {
    std::ostringstream os;
    os << "rho0=" << rho0 << " seeds no node in a graph of " << n << " nodes";
    throw ParameterError("rho0", os.str());
  }
  return std::min(k, n);
}

/// All nodes S_u except round(rho0 n) distinct uniformly chosen seeds in I_u.
inline SimState init_state(const Graph& g, const ModelParams& params, const DamageModel& dmg,
                           std::uint64_t seed) {
  params.validate();
  validate(dmg);
  const std::size_t n = g.n();
  const std::size_t k = seed_count(params.rho0, n);

  SimState s;
  s.nodes.assign(n, NodeState{});
  s.stream_key = derive_seed(seed, 0, StreamTag::kDynamics);

  // Partial Fisher-Yates: the first k slots are a uniform k-subset.
  std::vector<NodeId> order(n);
  for (NodeId v = 0; v < n; ++v) order[v] = v;
  PhiloxStream rng(derive_seed(seed, 0, StreamTag::kSeeding));
  const Infection seeded = assign_seed_infection(dmg);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + rng.below(n - i);
    std::swap(order[i], order[j]);
    auto& node = s.nodes[order[i]];
    node.compartment = Compartment::InfectedUnaware;
    node.damage_received = seeded.damage_received;
    node.strain_generation = seeded.strain_generation;
    node.ever_infected = true;
  }
  return s;
}

/// P(at least one of `contacts` independent Bernoulli(rate) trials fires).
inline double contact_probability(double rate, std::size_t contacts) noexcept {
  if (contacts == 0 || rate <= 0.0) return 0.0;
  if (rate >= 1.0) return 1.0;
  return -std::expm1(static_cast<double>(contacts) * std::log1p(-rate));
}

/// Candidate events for one node this step.  Fields that do not apply to the
/// node's compartment are zero.
struct EventProbs {
  double infect = 0.0;
  double aware_contact = 0.0;
  double aware_spontaneous = 0.0;
  double heal = 0.0;

  bool any() const noexcept {
    return infect > 0.0 || aware_contact > 0.0 || aware_spontaneous > 0.0 || heal > 0.0;
  }
};

struct NeighborCounts {
  std::size_t infective = 0;
  std::size_t aware = 0;
};

inline NeighborCounts count_neighbors(const Graph& g, std::span<const NodeState> nodes, NodeId v) noexcept {
  NeighborCounts c;
  for (NodeId w : g.neighbors(v)) {
    const Compartment cw = nodes[w].compartment;
    c.infective += is_infective(cw);
    c.aware += is_aware(cw);
  }
  return c;
}

inline EventProbs event_probabilities_from_counts(Compartment c, NeighborCounts nb,
                                                  const ModelParams& params, double mu) noexcept {
  EventProbs p;
  switch (c) {
    case Compartment::SusceptibleUnaware:
      p.infect = contact_probability(params.tau, nb.infective);
      p.aware_contact = contact_probability(params.nu, nb.aware);
      break;
    case Compartment::SusceptibleAware:
      p.infect = contact_probability(params.tau_aware(), nb.infective);
      p.heal = params.gamma;
      break;
    case Compartment::InfectedUnaware:
      p.aware_contact = contact_probability(params.nu, nb.aware);
      p.aware_spontaneous = mu;
      break;
    case Compartment::InfectedAware:
      p.heal = params.gamma;
      break;
    case Compartment::HealedAware:
      break;
  }
  return p;
}

/// Event probabilities of node `v` given the current compartments.  `mu` is
/// the node's spontaneous-awareness rate (see mu_of).
inline EventProbs event_probabilities(NodeId v, const SimState& state, const Graph& g,
                                      const ModelParams& params, double mu) noexcept {
  const Compartment c = state.nodes[v].compartment;
  if (c == Compartment::HealedAware) return {};
  return event_probabilities_from_counts(c, count_neighbors(g, state.nodes, v), params, mu);
}

/// True iff no node has an event with positive probability.
inline bool is_absorbed(const SimState& state, const Graph& g, const ModelParams& params) noexcept {
  for (NodeId v = 0; v < state.nodes.size(); ++v) {
    const auto& node = state.nodes[v];
    if (node.compartment == Compartment::HealedAware) continue;
    if (event_probabilities(v, state, g, params, mu_of(node.damage_received, params)).any())
      return false;
  }
  return true;
}

namespace detail {

// 1-(1-rate)^k for every neighbor count a graph can produce.
struct ContactTables {
  std::vector<double> infect;
  std::vector<double> infect_aware;
  std::vector<double> aware;

  ContactTables(const ModelParams& params, std::size_t max_degree)
      : infect(max_degree + 1), infect_aware(max_degree + 1), aware(max_degree + 1) {
    for (std::size_t k = 0; k <= max_degree; ++k) {
      infect[k] = contact_probability(params.tau, k);
      infect_aware[k] = contact_probability(params.tau_aware(), k);
      aware[k] = contact_probability(params.nu, k);
    }
  }
};

// The `which`-th infective neighbor of v (0-based).
inline NodeId nth_infective_neighbor(const Graph& g, std::span<const NodeState> nodes, NodeId v,
                                     std::size_t which) noexcept {
  for (NodeId w : g.neighbors(v)) {
    if (is_infective(nodes[w].compartment)) {
      if (which == 0) return w;
      --which;
    }
  }
  return v;  // unreachable when `which` < infective count
}

// Reusable buffers for advance().  Besides the pending changes it caches,
// per node, how many neighbors are infective and how many are aware; the
// cache follows the trajectory it was built on and is rebuilt whenever the
// node count or time no longer match.
struct Workspace {
  std::vector<std::pair<NodeId, NodeState>> changes;
  std::vector<std::uint32_t> infective;
  std::vector<std::uint32_t> aware;
  std::uint64_t t = 0;
  bool valid = false;

  void rebuild(const SimState& state, const Graph& g) {
    const std::size_t n = state.nodes.size();
    infective.assign(n, 0);
    aware.assign(n, 0);
    for (NodeId v = 0; v < n; ++v) {
      const NeighborCounts c = count_neighbors(g, state.nodes, v);
      infective[v] = static_cast<std::uint32_t>(c.infective);
      aware[v] = static_cast<std::uint32_t>(c.aware);
    }
    t = state.t;
    valid = true;
  }
};

/// Computes step t -> t+1.  Returns false, leaving `state` untouched, when no
/// event had positive probability (the state is absorbing).
inline bool advance(SimState& state, const Graph& g, const ModelParams& params,
                    const DamageModel& dmg, const ContactTables& tables, Workspace& ws) {
  if (!ws.valid || ws.t != state.t || ws.infective.size() != state.nodes.size())
    ws.rebuild(state, g);
  const std::span<const NodeState> cur = state.nodes;
  auto& changes = ws.changes;
  changes.clear();
  const std::uint64_t t_next = state.t + 1;
  const auto t_lo = static_cast<std::uint32_t>(state.t);
  const auto t_hi = static_cast<std::uint32_t>(state.t >> 32);
  bool active = false;

  auto infect = [&](NodeId v, std::size_t n_infective, double u, Compartment to) {
    auto which = static_cast<std::size_t>(u * static_cast<double>(n_infective));
    if (which >= n_infective) which = n_infective - 1;
    const NodeId src = nth_infective_neighbor(g, cur, v, which);
    const Infection inf = assign_infection(dmg, t_next, cur[src].strain_generation);
    changes.push_back({v, {to, inf.damage_received, inf.strain_generation, true}});
  };

  for (NodeId v = 0; v < cur.size(); ++v) {
    const NodeState& node = cur[v];
    switch (node.compartment) {
      case Compartment::HealedAware:
        continue;

      case Compartment::SusceptibleUnaware: {
        const std::size_t n_inf = ws.infective[v];
        const double p_inf = tables.infect[n_inf];
        const double p_awr = tables.aware[ws.aware[v]];
        if (p_inf <= 0.0 && p_awr <= 0.0) continue;
        active = true;
        const Block b = philox4x32_10({t_lo, t_hi, state.stream_id(v), 0}, state.stream_key);
        bool fire_inf = to_unit(b[0]) < p_inf;
        const bool fire_awr = to_unit(b[1]) < p_awr;
        // No S_u -> I_a arrow: a double fire collapses to one of the two.
        if (fire_inf && fire_awr) fire_inf = to_unit(b[2]) < 0.5;
        if (fire_inf) {
          infect(v, n_inf, to_unit(b[3]), Compartment::InfectedUnaware);
        } else if (fire_awr) {
          changes.push_back({v, node});
          changes.back().second.compartment = Compartment::SusceptibleAware;
        }
        break;
      }

      case Compartment::SusceptibleAware: {
        const std::size_t n_inf = ws.infective[v];
        const double p_inf = tables.infect_aware[n_inf];
        const double p_heal = params.gamma;
        if (p_inf <= 0.0 && p_heal <= 0.0) continue;
        active = true;
        const Block b = philox4x32_10({t_lo, t_hi, state.stream_id(v), 0}, state.stream_key);
        bool fire_inf = to_unit(b[0]) < p_inf;
        const bool fire_heal = to_unit(b[1]) < p_heal;
        if (fire_inf && fire_heal) fire_inf = to_unit(b[2]) < 0.5;
        if (fire_inf) {
          infect(v, n_inf, to_unit(b[3]), Compartment::InfectedAware);
        } else if (fire_heal) {
          changes.push_back({v, node});
          changes.back().second.compartment = Compartment::HealedAware;
        }
        break;
      }

      case Compartment::InfectedUnaware: {
        const double p_awr = tables.aware[ws.aware[v]];
        const double p_spont = mu_of(node.damage_received, params);
        if (p_awr <= 0.0 && p_spont <= 0.0) continue;
        active = true;
        const Block b = philox4x32_10({t_lo, t_hi, state.stream_id(v), 0}, state.stream_key);
        if (to_unit(b[0]) < p_awr || to_unit(b[1]) < p_spont) {
          changes.push_back({v, node});
          changes.back().second.compartment = Compartment::InfectedAware;
        }
        break;
      }

      case Compartment::InfectedAware: {
        if (params.gamma <= 0.0) continue;
        active = true;
        const Block b = philox4x32_10({t_lo, t_hi, state.stream_id(v), 0}, state.stream_key);
        if (to_unit(b[0]) < params.gamma) {
          changes.push_back({v, node});
          changes.back().second.compartment = Compartment::HealedAware;
        }
        break;
      }
    }
  }

  if (!active) return false;
  // Every node read `cur` above; only now is the state overwritten.
  for (const auto& [v, updated] : changes) {
    const Compartment from = state.nodes[v].compartment;
    const Compartment to = updated.compartment;
    state.nodes[v] = updated;
    const int d_inf = int{is_infective(to)} - int{is_infective(from)};
    const int d_awr = int{is_aware(to)} - int{is_aware(from)};
    if (d_inf == 0 && d_awr == 0) continue;
    for (NodeId w : g.neighbors(v)) {
      ws.infective[w] += static_cast<std::uint32_t>(d_inf);
      ws.aware[w] += static_cast<std::uint32_t>(d_awr);
    }
  }
  state.t = t_next;
  ws.t = t_next;
  return true;
}

}  // namespace detail

/// One synchronous sweep: t -> t+1.
inline void step(SimState& state, const Graph& g, const ModelParams& params, const DamageModel& dmg) {
  const detail::ContactTables tables(params, g.max_degree());
  detail::Workspace ws;
  if (!detail::advance(state, g, params, dmg, tables, ws)) ++state.t;
}

}  // namespace cyberepi
