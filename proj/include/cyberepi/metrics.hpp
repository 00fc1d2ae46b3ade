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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cyberepi/dynamics.hpp"

namespace cyberepi {

/// Neumaier-compensated sum; exact enough that n copies of d divided by n
/// gives d back.
inline double compensated_sum(std::span<const double> values) noexcept {
  double sum = 0.0;
  double carry = 0.0;
  for (double x : values) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }
  return sum + carry;
}

/// D/N: the summed per-device damage divided by n.
inline double total_damage(std::span<const NodeState> nodes, std::size_t n) {
  if (n == 0) return 0.0;
  std::vector<double> damage;
  damage.reserve(nodes.size());
  for (const auto& s : nodes) damage.push_back(s.damage_received);
  return compensated_sum(damage) / static_cast<double>(n);
}

struct PhaseReport {
  std::optional<std::uint64_t> onset_t;  // first step with an aware node
  std::optional<std::uint64_t> peak_Iu_t;
  std::optional<std::uint64_t> peak_Ia_t;
  std::uint64_t end_t = 0;
};

/// Phase boundaries of one trajectory.  Peaks are the earliest argmax and
/// are absent when the compartment stays empty.
inline PhaseReport cycle_phases(std::span<const CountsRow> series) {
  PhaseReport r;
  if (series.empty()) return r;
  std::uint32_t best_iu = 0;
  std::uint32_t best_ia = 0;
  for (const auto& row : series) {
    const std::uint32_t aware = row[Compartment::SusceptibleAware] +
                                row[Compartment::InfectedAware] + row[Compartment::HealedAware];
    if (!r.onset_t && aware > 0) r.onset_t = row.t;
    if (row[Compartment::InfectedUnaware] > best_iu) {
      best_iu = row[Compartment::InfectedUnaware];
      r.peak_Iu_t = row.t;
    }
    if (row[Compartment::InfectedAware] > best_ia) {
      best_ia = row[Compartment::InfectedAware];
      r.peak_Ia_t = row.t;
    }
  }
  r.end_t = series.back().t;
  return r;
}

struct SweepPoint {
  double x = 0.0;  // swept d or epsilon
  double mean_DN = 0.0;
  double std_DN = 0.0;
  double mean_ever_infected_fraction = 0.0;
  std::size_t realizations = 0;

  double sem_DN() const noexcept {
    return realizations > 0 ? std_DN / std::sqrt(static_cast<double>(realizations)) : 0.0;
  }
};

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation, 0 for a single value
};

inline MeanStd mean_std(std::span<const double> values) noexcept {
  MeanStd r;
  if (values.empty()) return r;
  r.mean = compensated_sum(values) / static_cast<double>(values.size());
  if (values.size() < 2) return r;
  double ss = 0.0;
  for (double v : values) ss += (v - r.mean) * (v - r.mean);
  r.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
  return r;
}

/// Centered moving average with a window of `width` (shrinks at the ends).
inline std::vector<double> moving_average(std::span<const double> xs, std::size_t width) {
  std::vector<double> out(xs.size());
  const std::size_t half = width / 2;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const std::size_t lo = i >= half ? i - half : 0;
    const std::size_t hi = std::min(xs.size(), i + (width - half));
    double s = 0.0;
    for (std::size_t j = lo; j < hi; ++j) s += xs[j];
    out[i] = s / static_cast<double>(hi - lo);
  }
  return out;
}

/// Number of strict local maxima after collapsing plateaus.
inline std::size_t count_peaks(std::span<const double> xs) {
  std::vector<double> d;
  for (double x : xs)
    if (d.empty() || x != d.back()) d.push_back(x);
  std::size_t peaks = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const bool left = i == 0 || d[i] > d[i - 1];
    const bool right = i + 1 == d.size() || d[i] > d[i + 1];
    if (left && right && d.size() > 1) ++peaks;
  }
  return peaks;
}

}  // namespace cyberepi
