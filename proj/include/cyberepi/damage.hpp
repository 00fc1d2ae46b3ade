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

// Damage laws and the threshold-gated spontaneous-awareness rate.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "cyberepi/errors.hpp"
#include "cyberepi/params.hpp"

namespace cyberepi {

struct ConstantDamage {
  double d = 0.3;
};

/// Damage grows with the global clock along a logistic curve.
struct LogisticClockDamage {
  double d0 = 0.1;
  double epsilon = 0.1;
};

/// Same logistic curve, but the clock is the number of hops the infecting
/// strain made before reaching the device.
struct MutatingStrainDamage {
  double d0 = 0.1;
  double epsilon = 0.1;
};

using DamageModel = std::variant<ConstantDamage, LogisticClockDamage, MutatingStrainDamage>;

/// Logistic with carrying capacity 1, written as 1 / (1 + (1-d0)/d0 e^{-eps c})
/// so large eps*c saturates at 1 instead of overflowing.
inline double logistic_damage(double d0, double epsilon, double clock) noexcept {
  if (d0 <= 0.0 || clock == 0.0) return d0;
  return d0 / (d0 + (1.0 - d0) * std::exp(-epsilon * clock));
}

inline double damage_at(const DamageModel& model, std::uint64_t clock) noexcept {
  return std::visit(
      [clock](const auto& m) -> double {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, ConstantDamage>) {
          return m.d;
        } else {
          return logistic_damage(m.d0, m.epsilon, static_cast<double>(clock));
        }
      },
      model);
}

/// mu = mu0 (d - theta) for d >= theta, else 0.
inline double mu_of(double damage_received, const ModelParams& params) noexcept {
  return damage_received >= params.theta ? params.mu0 * (damage_received - params.theta) : 0.0;
}

struct Infection {
  double damage_received;
  std::uint32_t strain_generation;
};

/// Damage and strain generation for a device infected at `global_t` by a
/// node whose strain generation is `infector_generation`.
inline Infection assign_infection(const DamageModel& model, std::uint64_t global_t,
                                  std::uint32_t infector_generation) noexcept {
  const std::uint32_t generation = infector_generation + 1;
  if (std::holds_alternative<MutatingStrainDamage>(model))
    return {damage_at(model, generation), generation};
  return {damage_at(model, global_t), generation};
}

/// Seeds carry the zero-hop strain and the damage value at clock 0.
inline Infection assign_seed_infection(const DamageModel& model) noexcept {
  return {damage_at(model, 0), 0};
}

inline bool is_mutating(const DamageModel& model) noexcept {
  return std::holds_alternative<MutatingStrainDamage>(model);
}

inline void validate(const DamageModel& model) {
  std::visit(
      [](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, ConstantDamage>) {
          detail::require_in_range("d", m.d, 0.0, 1.0);
        } else {
          detail::require_in_range("d0", m.d0, 0.0, 1.0);
          if (!(m.epsilon > 0.0) || !std::isfinite(m.epsilon)) {
            std::ostringstream os;
            os << "epsilon=" << m.epsilon << " must be > 0";
            throw ParameterError("epsilon", os.str());
          }
        }
      },
      model);
}

inline std::string kind_name(const DamageModel& model) {
  switch (model.index()) {
    case 0: return "constant";
    case 1: return "logistic";
    default: return "mutating";
  }
}

namespace detail {

// Shortest text that reads back as the same double.
inline std::string shortest(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace detail

/// "constant:<d>", "logistic:<d0>:<eps>" or "mutating:<d0>:<eps>".
inline std::string to_string(const DamageModel& model) {
  std::ostringstream os;
  std::visit(
      [&](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, ConstantDamage>) {
          os << "constant:" << detail::shortest(m.d);
        } else {
          os << kind_name(model) << ':' << detail::shortest(m.d0) << ':'
             << detail::shortest(m.epsilon);
        }
      },
      model);
  return os.str();
}

inline DamageModel parse_damage(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size())
      throw ParameterError("damage", "damage value '" + s + "' in '" + text + "' is not a number");
    return v;
  };
  DamageModel model;
  if (parts.size() == 2 && parts[0] == "constant") {
    model = ConstantDamage{number(parts[1])};
  } else if (parts.size() == 3 && parts[0] == "logistic") {
    model = LogisticClockDamage{number(parts[1]), number(parts[2])};
  } else if (parts.size() == 3 && parts[0] == "mutating") {
    model = MutatingStrainDamage{number(parts[1]), number(parts[2])};
  } else {
    throw ParameterError("damage", "damage '" + text +
                                       "' not of the form constant:<d>, logistic:<d0>:<eps> "
                                       "or mutating:<d0>:<eps>");
  }
  validate(model);
  return model;
}

}  // namespace cyberepi
