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

// Counter-based random streams.
//
// Every random draw in the library is a pure function of a 64-bit key and a
// 128-bit counter, so results never depend on thread scheduling or on the
// order in which nodes are visited.  The block function is Philox4x32-10
// (Salmon et al., SC'11); stream keys are derived from user seeds with the
// SplitMix64 finalizer.

#include <array>
#include <cstdint>
#include <limits>

namespace cyberepi {

using Block = std::array<std::uint32_t, 4>;

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Purpose tags keep the streams of one realization disjoint.
enum class StreamTag : std::uint64_t {
  kGraph = 1,
  kSeeding = 2,
  kDynamics = 3,
};

/// Derives an independent 64-bit seed from (base, index, tag).
inline constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index,
                                           StreamTag tag) noexcept {
  std::uint64_t h = splitmix64(base);
  h = splitmix64(h ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
  return splitmix64(h ^ static_cast<std::uint64_t>(tag) * 0xD1B54A32D192ED03ULL);
}

inline constexpr Block philox4x32_10(Block ctr, std::uint64_t key) noexcept {
  constexpr std::uint32_t kMul0 = 0xD2511F53;
  constexpr std::uint32_t kMul1 = 0xCD9E8D57;
  constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
  constexpr std::uint32_t kWeyl1 = 0xBB67AE85;
  std::uint32_t k0 = static_cast<std::uint32_t>(key);
  std::uint32_t k1 = static_cast<std::uint32_t>(key >> 32);
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      k0 += kWeyl0;
      k1 += kWeyl1;
    }
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ k0, lo1, hi0 ^ ctr[3] ^ k1, lo0};
  }
  return ctr;
}

/// Maps 32 random bits to the open interval (0, 1).
inline constexpr double to_unit(std::uint32_t bits) noexcept {
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-32;
}

/// Sequential view of a counter-based stream.  Satisfies
/// UniformRandomBitGenerator so it can drive <algorithm> shuffles, but the
/// library only uses the portable helpers below for reproducible output.
class PhiloxStream {
 public:
  using result_type = std::uint32_t;

  explicit PhiloxStream(std::uint64_t key) noexcept : key_(key) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept {
    if (pos_ == 4) {
      block_ = philox4x32_10({static_cast<std::uint32_t>(counter_),
                              static_cast<std::uint32_t>(counter_ >> 32), 0, 0},
                             key_);
      ++counter_;
      pos_ = 0;
    }
    return block_[pos_++];
  }

  double uniform() noexcept { return to_unit((*this)()); }

  /// Unbiased integer in [0, bound) by rejection on the top of the range.
  std::uint64_t below(std::uint64_t bound) noexcept {
    if (bound <= 1) return 0;
    if (bound <= 0xFFFFFFFFULL) {
      const std::uint32_t b = static_cast<std::uint32_t>(bound);
      const std::uint32_t limit = std::numeric_limits<std::uint32_t>::max() -
                                  std::numeric_limits<std::uint32_t>::max() % b;
      std::uint32_t x;
      do {
        x = (*this)();
      } while (x >= limit);
      return x % b;
    }
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
      x = (static_cast<std::uint64_t>((*this)()) << 32) | (*this)();
    } while (x >= limit);
    return x % bound;
  }

  std::uint64_t key() const noexcept { return key_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  Block block_{};
  int pos_ = 4;
};

}  // namespace cyberepi
