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

// Contact networks: an immutable undirected simple graph plus the two
// generators used by the experiments (connected Erdos-Renyi G(n,p) and
// Barabasi-Albert preferential attachment).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cyberepi/errors.hpp"
#include "cyberepi/rng.hpp"

namespace cyberepi {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

/// Undirected simple graph in compressed adjacency form.  Neighbor lists are
/// sorted ascending, so two graphs built from the same edge set compare equal.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph from an edge list.  Self-loops and out-of-range ids are
  /// rejected; duplicate edges (in either orientation) are merged.
  static Graph from_edges(std::size_t n, std::vector<Edge> edges) {
    for (auto& [u, v] : edges) {
      if (u >= n || v >= n) throw FormatError("edge endpoint out of range");
      if (u == v) throw FormatError("self-loop on node " + std::to_string(u));
      if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    Graph g;
    g.offsets_.assign(n + 1, 0);
    for (const auto& [u, v] : edges) {
      ++g.offsets_[u + 1];
      ++g.offsets_[v + 1];
    }
    for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
    g.targets_.resize(2 * edges.size());
    std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    // Edges are sorted by (u, v) so each list comes out ascending except for
    // the back-references, hence the final per-node sort.
    for (const auto& [u, v] : edges) {
      g.targets_[fill[u]++] = v;
      g.targets_[fill[v]++] = u;
    }
    for (std::size_t i = 0; i < n; ++i) {
      std::sort(g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i]),
                g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i + 1]));
    }
    g.edge_count_ = edges.size();
    return g;
  }

  std::size_t n() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return edge_count_; }

  std::span<const NodeId> neighbors(NodeId v) const noexcept {
    return {targets_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }

  std::size_t degree(NodeId v) const noexcept { return offsets_[v + 1] - offsets_[v]; }

  double mean_degree() const noexcept {
    return n() == 0 ? 0.0 : 2.0 * static_cast<double>(edge_count_) / static_cast<double>(n());
  }

  std::size_t max_degree() const noexcept {
    std::size_t best = 0;
    for (NodeId v = 0; v < n(); ++v) best = std::max(best, degree(v));
    return best;
  }

  bool has_edge(NodeId u, NodeId v) const noexcept {
    const auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  /// Edge list with u < v, ascending.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (NodeId u = 0; u < n(); ++u)
      for (NodeId v : neighbors(u))
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  /// Same graph with node v renamed to perm[v].
  Graph relabeled(std::span<const NodeId> perm) const {
    std::vector<Edge> e = edges();
    for (auto& [u, v] : e) {
      u = perm[u];
      v = perm[v];
    }
    return from_edges(n(), std::move(e));
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> targets_;
  std::size_t edge_count_ = 0;
};

enum class GraphFamily { ErdosRenyi, BarabasiAlbert };

inline std::string to_string(GraphFamily f) {
  return f == GraphFamily::ErdosRenyi ? "er" : "ba";
}

inline GraphFamily parse_family(const std::string& s) {
  if (s == "er" || s == "ER" || s == "erdos-renyi") return GraphFamily::ErdosRenyi;
  if (s == "ba" || s == "BA" || s == "barabasi-albert") return GraphFamily::BarabasiAlbert;
  throw ParameterError("graph", "graph family '" + s + "' not in {er, ba}");
}

struct GraphSpec {
  GraphFamily family = GraphFamily::ErdosRenyi;
  std::size_t n = 0;
  double mean_degree = 0.0;
  std::uint64_t seed = 0;
};

inline constexpr int kErRetryCap = 1000;

/// True iff a breadth-first search from node 0 reaches every node.
inline bool is_connected(const Graph& g) {
  const std::size_t n = g.n();
  if (n <= 1) return true;
  std::vector<char> seen(n, 0);
  std::vector<NodeId> frontier{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const NodeId v = frontier.back();
    frontier.pop_back();
    for (NodeId w : g.neighbors(v)) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        frontier.push_back(w);
      }
    }
  }
  return reached == n;
}

namespace detail {

// One G(n,p) sample by geometric skipping over the lower triangle
// (Batagelj & Brandes 2005), O(n + m).
inline std::vector<Edge> sample_gnp(std::size_t n, double p, PhiloxStream& rng) {
  std::vector<Edge> edges;
  if (p >= 1.0) {
    for (NodeId v = 1; v < n; ++v)
      for (NodeId w = 0; w < v; ++w) edges.emplace_back(w, v);
    return edges;
  }
  const double log_q = std::log1p(-p);
  edges.reserve(static_cast<std::size_t>(p * static_cast<double>(n) * static_cast<double>(n) / 2.0 * 1.1) + 16);
  std::int64_t v = 1;
  std::int64_t w = -1;
  const auto nn = static_cast<std::int64_t>(n);
  while (v < nn) {
    const double skip = std::floor(std::log(rng.uniform()) / log_q);
    w += 1 + static_cast<std::int64_t>(std::min(skip, 9.0e15));
    while (w >= v && v < nn) {
      w -= v;
      ++v;
    }
    if (v < nn) edges.emplace_back(static_cast<NodeId>(w), static_cast<NodeId>(v));
  }
  return edges;
}

}  // namespace detail

/// Connected Erdos-Renyi sample: G(n, p) with p = mean_degree / (n - 1),
/// redrawn from the same stream until connected.
inline Graph generate_er(const GraphSpec& spec) {
  if (spec.family != GraphFamily::ErdosRenyi)
    throw ParameterError("graph", "generate_er called with a non-ER spec");
  if (spec.n < 2) throw ParameterError("n", "n must be at least 2");
  const double p = spec.mean_degree / static_cast<double>(spec.n - 1);
  if (!(p > 0.0 && p <= 1.0)) {
    std::ostringstream os;
    os << "mean_degree=" << spec.mean_degree << " gives edge probability " << p
       << " outside (0,1]";
    throw ParameterError("mean_degree", os.str());
  }
  PhiloxStream rng(splitmix64(spec.seed));
  for (int attempt = 0; attempt < kErRetryCap; ++attempt) {
    Graph g = Graph::from_edges(spec.n, detail::sample_gnp(spec.n, p, rng));
    if (is_connected(g)) return g;
  }
  std::ostringstream os;
  os << "no connected G(n=" << spec.n << ", p=" << p << ") sample in " << kErRetryCap
     << " attempts; parameters are in the disconnected regime";
  throw GenerationError(os.str());
}

/// Barabasi-Albert growth from a complete seed graph on m+1 nodes, with
/// m = mean_degree / 2 distinct degree-proportional targets per new node.
inline Graph generate_ba(const GraphSpec& spec) {
  if (spec.family != GraphFamily::BarabasiAlbert)
    throw ParameterError("graph", "generate_ba called with a non-BA spec");
  const double k = spec.mean_degree;
  if (!(k >= 2.0) || std::floor(k) != k || static_cast<std::uint64_t>(k) % 2 != 0) {
    std::ostringstream os;
    os << "mean_degree=" << k << " must be an even integer >= 2 for Barabasi-Albert";
    throw ParameterError("mean_degree", os.str());
  }
  const auto m = static_cast<std::size_t>(k) / 2;
  if (spec.n <= m) {
    std::ostringstream os;
    os << "n=" << spec.n << " must exceed m=" << m;
    throw ParameterError("n", os.str());
  }

  PhiloxStream rng(splitmix64(spec.seed));
  std::vector<Edge> edges;
  edges.reserve(m * (m + 1) / 2 + (spec.n - m - 1) * m);
  // Node v appears deg(v) times, so a uniform pick is degree-proportional.
  std::vector<NodeId> urn;
  urn.reserve(2 * edges.capacity());
  for (NodeId v = 1; v <= m; ++v) {
    for (NodeId w = 0; w < v; ++w) {
      edges.emplace_back(w, v);
      urn.push_back(w);
      urn.push_back(v);
    }
  }
  std::vector<NodeId> picked;
  picked.reserve(m);
  for (auto v = static_cast<NodeId>(m + 1); v < spec.n; ++v) {
    picked.clear();
    while (picked.size() < m) {
      const NodeId target = urn[rng.below(urn.size())];
      if (std::find(picked.begin(), picked.end(), target) == picked.end())
        picked.push_back(target);
    }
    for (NodeId target : picked) {
      edges.emplace_back(target, v);
      urn.push_back(target);
      urn.push_back(v);
    }
  }
  return Graph::from_edges(spec.n, std::move(edges));
}

inline Graph generate(const GraphSpec& spec) {
  return spec.family == GraphFamily::ErdosRenyi ? generate_er(spec) : generate_ba(spec);
}

/// Edge-list text: "n <n>" then one "u v" line per edge, u < v, ascending.
inline void write_edge_list(std::ostream& os, const Graph& g) {
  os << "n " << g.n() << '\n';
  for (const auto& [u, v] : g.edges()) os << u << ' ' << v << '\n';
}

inline Graph read_edge_list(std::istream& is) {
  std::string tag;
  std::size_t n = 0;
  if (!(is >> tag >> n) || tag != "n") throw FormatError("edge list must start with 'n <count>'");
  std::vector<Edge> edges;
  std::uint64_t u = 0;
  std::uint64_t v = 0;
  while (is >> u >> v) edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
  if (!is.eof()) throw FormatError("malformed edge line");
  return Graph::from_edges(n, std::move(edges));
}

}  // namespace cyberepi
