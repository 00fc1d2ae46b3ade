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

#include <gtest/gtest.h>

#include <vector>

#include "cyberepi/metrics.hpp"

namespace cyberepi {
namespace {

TEST(CompensatedSum, RecoversRepeatedValue) {
  for (double d : {0.1, 0.3, 0.7, 1.0 / 3.0}) {
    for (std::size_t n : {10u, 500u, 1000u, 4321u}) {
      const std::vector<double> xs(n, d);
      EXPECT_EQ(compensated_sum(xs) / static_cast<double>(n), d) << d << " x " << n;
    }
  }
}

TEST(CompensatedSum, CancellationCase) {
  const std::vector<double> xs{1.0, 1e100, 1.0, -1e100};
  EXPECT_EQ(compensated_sum(xs), 2.0);
}

TEST(TotalDamage, SumsReceivedDamage) {
  std::vector<NodeState> nodes(4);
  nodes[1].damage_received = 0.5;
  nodes[3].damage_received = 0.25;
  EXPECT_DOUBLE_EQ(total_damage(nodes, 4), 0.1875);
  EXPECT_EQ(total_damage({}, 0), 0.0);
}

TEST(MeanStd, SampleDeviation) {
  const std::vector<double> xs{2, 4, 4, 4, 5, 5, 7, 9};
  const MeanStd r = mean_std(xs);
  EXPECT_DOUBLE_EQ(r.mean, 5.0);
  EXPECT_DOUBLE_EQ(r.std, std::sqrt(32.0 / 7.0));
  const std::vector<double> one{3.5};
  EXPECT_EQ(mean_std(one).std, 0.0);
}

TEST(SweepPoint, StandardError) {
  SweepPoint p;
  p.std_DN = 0.4;
  p.realizations = 16;
  EXPECT_DOUBLE_EQ(p.sem_DN(), 0.1);
}

CountsRow row(std::uint64_t t, Counts c) { return {t, c}; }

TEST(CyclePhases, OnsetAndPeaks) {
  const std::vector<CountsRow> s{
      row(0, {9, 0, 1, 0, 0}), row(1, {7, 0, 3, 0, 0}), row(2, {5, 1, 4, 0, 0}),
      row(3, {4, 1, 4, 1, 0}), row(4, {4, 1, 1, 3, 1}), row(5, {4, 0, 0, 1, 5})};
  const PhaseReport r = cycle_phases(s);
  EXPECT_EQ(r.onset_t, 2u);
  EXPECT_EQ(r.peak_Iu_t, 2u);  // earliest of the tied maxima
  EXPECT_EQ(r.peak_Ia_t, 4u);
  EXPECT_EQ(r.end_t, 5u);
}

TEST(CyclePhases, NoAwarenessMeansNoOnset) {
  const std::vector<CountsRow> s{row(0, {9, 0, 1, 0, 0}), row(1, {8, 0, 2, 0, 0})};
  const PhaseReport r = cycle_phases(s);
  EXPECT_FALSE(r.onset_t.has_value());
  EXPECT_FALSE(r.peak_Ia_t.has_value());
  EXPECT_EQ(r.peak_Iu_t, 1u);
}

TEST(MovingAverage, CenteredWindow) {
  const std::vector<double> xs{0, 0, 5, 0, 0, 10, 0};
  const auto m = moving_average(xs, 5);
  ASSERT_EQ(m.size(), xs.size());
  EXPECT_DOUBLE_EQ(m[0], 5.0 / 3.0);  // window {0,0,5}
  EXPECT_DOUBLE_EQ(m[2], 1.0);
  EXPECT_DOUBLE_EQ(m[3], 3.0);
  EXPECT_DOUBLE_EQ(m[6], 10.0 / 3.0);
}

TEST(CountPeaks, Cases) {
  EXPECT_EQ(count_peaks(std::vector<double>{0, 1, 2, 3, 2, 1, 0}), 1u);
  EXPECT_EQ(count_peaks(std::vector<double>{0, 2, 2, 2, 1}), 1u);
  EXPECT_EQ(count_peaks(std::vector<double>{0, 2, 1, 3, 0}), 2u);
  EXPECT_EQ(count_peaks(std::vector<double>{5, 4, 3}), 1u);
  EXPECT_EQ(count_peaks(std::vector<double>{1, 1, 1}), 0u);
}

}  // namespace
}  // namespace cyberepi
