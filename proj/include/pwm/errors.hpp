/* Copyright 2026 The pwmelnikov Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pwm {

/// Failure categories surfaced by the numerical routines.
enum class Failure {
  Domain,
  GrazingImpact,
  NoCrossing,
  Truncation,
  NoConvergence,
  SingularJacobian,
  NoSeed,
  DegenerateMelnikov,
  NoZero,
  ResidualUnavailable,
};

std::string_view to_string(Failure f) noexcept;

/// Typed numerical failure. `index` is the impact index reached when the
/// failure happened inside an impact sequence, -1 otherwise.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(Failure kind, const std::string& what, int index = -1)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind),
        index_(index) {}

  Failure kind() const noexcept { return kind_; }
  int index() const noexcept { return index_; }

 private:
  Failure kind_;
  int index_;
};

/// Invalid user-supplied configuration (system definition, CLI flags).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pwm
