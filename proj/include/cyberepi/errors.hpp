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
#include <stdexcept>
#include <string>

namespace cyberepi {

/// A parameter outside its admissible range.  `name()` is the offending
/// parameter so front ends can report it verbatim.
class ParameterError : public std::invalid_argument {
 public:
  ParameterError(std::string name, const std::string& what)
      : std::invalid_argument(what), name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

/// Random generation gave up (e.g. an Erdos-Renyi sample that stays
/// disconnected for the whole retry budget).
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed configuration or graph file.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require_in_range(const char* name, double value, double lo, double hi) {
  if (!(value >= lo && value <= hi)) {
    std::ostringstream os;
    os << name << "=" << value << " outside range [" << lo << "," << hi << "]";
    throw ParameterError(name, os.str());
  }
}

}  // namespace detail
}  // namespace cyberepi
