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

#include <sstream>

#include "cyberepi/errors.hpp"

namespace cyberepi {

/// Per-step transition rates and the awareness threshold.  Defaults are the
/// reference parameter set (tau, nu, mu0, gamma, rho0) with theta = 0.2.
struct ModelParams {
  double tau = 0.0055;                  // infection per infective neighbor
  double aware_infection_factor = 0.1;  // tau' = factor * tau for aware susceptibles
  double nu = 0.011;                    // awareness per aware neighbor
  double mu0 = 0.011;                   // spontaneous-awareness base rate
  double gamma = 0.03;                  // healing of aware nodes
  double theta = 0.2;                   // damage threshold
  double rho0 = 0.01;                   // initially infected fraction

  double tau_aware() const noexcept { return aware_infection_factor * tau; }

  /// Throws ParameterError naming the first out-of-range field.
  void validate() const {
    detail::require_in_range("tau", tau, 0.0, 1.0);
    detail::require_in_range("aware_infection_factor", aware_infection_factor, 0.0, 1.0e300);
    detail::require_in_range("tau_aware", tau_aware(), 0.0, 1.0);
    detail::require_in_range("nu", nu, 0.0, 1.0);
    detail::require_in_range("mu0", mu0, 0.0, 1.0);
    detail::require_in_range("gamma", gamma, 0.0, 1.0);
    detail::require_in_range("theta", theta, 0.0, 1.0);
    if (!(rho0 > 0.0 && rho0 <= 1.0)) {
      std::ostringstream os;
      os << "rho0=" << rho0 << " outside range (0,1]";
      throw ParameterError("rho0", os.str());
    }
  }
};

}  // namespace cyberepi
