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

// Single realizations run to absorption, and reproducible ensembles of them.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "cyberepi/damage.hpp"
#include "cyberepi/dynamics.hpp"
#include "cyberepi/graph.hpp"
#include "cyberepi/metrics.hpp"
#include "cyberepi/params.hpp"
#include "cyberepi/rng.hpp"

namespace cyberepi {

inline constexpr std::uint64_t kDefaultStepCap = 1'000'000;

struct RunOptions {
  std::uint64_t step_cap = kDefaultStepCap;
  bool keep_series = true;
  bool keep_final_nodes = false;
};

struct RunResult {
  std::vector<CountsRow> series;  // row i is the state at t = i
  double total_damage_per_node = 0.0;
  std::size_t ever_infected = 0;
  std::optional<std::uint64_t> awareness_onset;
  bool absorbed = false;  // false iff the step cap was hit
  std::uint64_t steps = 0;
  PhaseReport phases;
  std::vector<NodeState> final_nodes;  // only with RunOptions::keep_final_nodes
};

/// Runs one realization from init_state until absorption or the step cap.
inline RunResult run(const Graph& g, const ModelParams& params, const DamageModel& dmg,
                     std::uint64_t seed, const RunOptions& opts = {}) {
  SimState state = init_state(g, params, dmg, seed);
  const detail::ContactTables tables(params, g.max_degree());
  detail::Workspace scratch;

  RunResult r;
  std::vector<CountsRow> series{counts_row(state)};
  r.absorbed = true;
  while (true) {
    if (state.t >= opts.step_cap) {
      r.absorbed = false;
      break;
    }
    if (!detail::advance(state, g, params, dmg, tables, scratch)) break;
    series.push_back(counts_row(state));
  }
  r.steps = state.t;
  r.phases = cycle_phases(series);
  r.awareness_onset = r.phases.onset_t;
  r.total_damage_per_node = total_damage(state.nodes, g.n());
  r.ever_infected = static_cast<std::size_t>(
      std::count_if(state.nodes.begin(), state.nodes.end(),
                    [](const NodeState& s) { return s.ever_infected; }));
  if (opts.keep_series) r.series = std::move(series);
  if (opts.keep_final_nodes) r.final_nodes = std::move(state.nodes);
  return r;
}

/// Worker count from CYBEREPI_WORKERS, else the hardware concurrency.
inline std::size_t default_workers() {
  if (const char* env = std::getenv("CYBEREPI_WORKERS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Calls task(i) for i in [0, count) on up to `workers` threads.  The first
/// exception thrown by any task is rethrown after all threads join.
inline void parallel_for(std::size_t count, std::size_t workers,
                         const std::function<void(std::size_t)>& task) {
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        task(i);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  pool.clear();
  if (error) std::rethrow_exception(error);
}

struct EnsembleOptions {
  std::size_t workers = 0;  // 0 = default_workers()
  bool fixed_graph = false;  // one graph (realization 0's) shared by every run
  bool keep_series = true;
  std::uint64_t step_cap = kDefaultStepCap;
};

struct MeanRow {
  std::uint64_t t = 0;
  std::array<double, kCompartments> counts{};
};

struct EnsembleEcho {
  GraphSpec graph;
  ModelParams params;
  DamageModel damage;
  std::size_t realizations = 0;
  std::uint64_t base_seed = 0;
  bool fixed_graph = false;
};

struct EnsembleSummary {
  std::size_t realizations = 0;
  std::vector<MeanRow> mean_series;  // runs padded with their absorbing row
  double mean_DN = 0.0;
  double std_DN = 0.0;
  std::vector<double> dn;  // per realization, index order
  double mean_ever_infected_fraction = 0.0;
  std::size_t truncated = 0;
  // Phase statistics averaged over realizations; onset over those that have one.
  std::optional<double> mean_onset_t;
  std::size_t onset_count = 0;
  std::optional<double> mean_peak_Iu_t;
  std::optional<double> mean_peak_Ia_t;
  double mean_end_t = 0.0;
  EnsembleEcho params_echo;

  double sem_DN() const noexcept {
    return realizations > 0 ? std_DN / std::sqrt(static_cast<double>(realizations)) : 0.0;
  }
};

/// Graph and run seeds of realization `i`.
inline GraphSpec realization_graph_spec(GraphSpec spec, std::uint64_t base_seed, std::size_t i) {
  spec.seed = derive_seed(base_seed, i, StreamTag::kGraph);
  return spec;
}

inline std::uint64_t realization_run_seed(std::uint64_t base_seed, std::size_t i) {
  return derive_seed(base_seed, i, StreamTag::kDynamics);
}

/// R independent realizations, each on a freshly sampled graph unless
/// `fixed_graph`.  Output is identical for any worker count.
inline EnsembleSummary run_ensemble(const GraphSpec& spec, const ModelParams& params,
                                    const DamageModel& dmg, std::size_t realizations,
                                    std::uint64_t base_seed, const EnsembleOptions& opts = {}) {
  if (realizations < 1) throw ParameterError("realizations", "realizations must be >= 1");
  params.validate();
  validate(dmg);

  std::optional<Graph> shared;
  if (opts.fixed_graph) shared = generate(realization_graph_spec(spec, base_seed, 0));

  RunOptions ropts;
  ropts.step_cap = opts.step_cap;
  ropts.keep_series = opts.keep_series;
  std::vector<RunResult> results(realizations);
  const std::size_t workers = opts.workers ? opts.workers : default_workers();
  parallel_for(realizations, workers, [&](std::size_t i) {
    const std::uint64_t run_seed = realization_run_seed(base_seed, i);
    if (shared) {
      results[i] = run(*shared, params, dmg, run_seed, ropts);
    } else {
      const Graph g = generate(realization_graph_spec(spec, base_seed, i));
      results[i] = run(g, params, dmg, run_seed, ropts);
    }
  });

  EnsembleSummary s;
  s.realizations = realizations;
  s.params_echo = {spec, params, dmg, realizations, base_seed, opts.fixed_graph};
  s.dn.reserve(realizations);
  std::vector<double> ever;
  std::vector<double> onsets;
  std::vector<double> peaks_iu;
  std::vector<double> peaks_ia;
  std::vector<double> ends;
  for (const auto& r : results) {
    s.dn.push_back(r.total_damage_per_node);
    ever.push_back(static_cast<double>(r.ever_infected) / static_cast<double>(spec.n));
    if (!r.absorbed) ++s.truncated;
    if (r.phases.onset_t) onsets.push_back(static_cast<double>(*r.phases.onset_t));
    if (r.phases.peak_Iu_t) peaks_iu.push_back(static_cast<double>(*r.phases.peak_Iu_t));
    if (r.phases.peak_Ia_t) peaks_ia.push_back(static_cast<double>(*r.phases.peak_Ia_t));
    ends.push_back(static_cast<double>(r.phases.end_t));
  }
  const MeanStd dn = mean_std(s.dn);
  s.mean_DN = dn.mean;
  s.std_DN = dn.std;
  s.mean_ever_infected_fraction = mean_std(ever).mean;
  s.onset_count = onsets.size();
  if (!onsets.empty()) s.mean_onset_t = mean_std(onsets).mean;
  if (!peaks_iu.empty()) s.mean_peak_Iu_t = mean_std(peaks_iu).mean;
  if (!peaks_ia.empty()) s.mean_peak_Ia_t = mean_std(peaks_ia).mean;
  s.mean_end_t = mean_std(ends).mean;

  if (opts.keep_series) {
    std::size_t length = 0;
    for (const auto& r : results) length = std::max(length, r.series.size());
    // Integer sums are exact, so the mean does not depend on reduction order.
    std::vector<std::array<std::uint64_t, kCompartments>> sums(length);
    for (const auto& r : results) {
      for (std::size_t t = 0; t < length; ++t) {
        const CountsRow& row = r.series[std::min(t, r.series.size() - 1)];
        for (std::size_t c = 0; c < kCompartments; ++c) sums[t][c] += row.counts[c];
      }
    }
    s.mean_series.resize(length);
    for (std::size_t t = 0; t < length; ++t) {
      s.mean_series[t].t = t;
      for (std::size_t c = 0; c < kCompartments; ++c)
        s.mean_series[t].counts[c] =
            static_cast<double>(sums[t][c]) / static_cast<double>(realizations);
    }
  }
  return s;
}

}  // namespace cyberepi
