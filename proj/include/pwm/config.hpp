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

#include <cstdint>
#include <string>
#include <vector>

#include "pwm/heteroclinic.hpp"
#include "pwm/melnikov.hpp"
#include "pwm/model.hpp"
#include "pwm/orbits.hpp"

namespace pwm {

/// Description of a two-zone system as read from a config file.
///
///   model    linear_block | nonlinear_block | polynomial
///   forcing  cos | multi_harmonic | custom (nonlinear_block implies its own coupling)
struct SystemSpec {
  std::string model = "linear_block";
  double omega = 5.0;
  double slenderness = 0.3;
  std::vector<double> potential_plus;   // polynomial model only
  std::vector<double> potential_minus;
  std::string forcing = "cos";
  int k = 2;                            // multi_harmonic
  std::vector<Harmonic> harmonics;      // custom
  std::vector<double> position_coefficients;
  double velocity_coefficient = 0.0;
  double epsilon = 0.0;
  double restitution = 1.0;
};

struct Tolerances {
  double rtol = 1e-12;
  double atol = 1e-12;
  double graze_tol = 1e-8;
  double newton_tol = 1e-10;
  double verify_tol = 1e-8;
  double zero_tol = 1e-8;
  int melnikov_samples = 256;
  int heteroclinic_samples = 32;
};

struct RunConfig {
  SystemSpec system;
  Tolerances tolerances;
  std::string output_dir = ".";
  int threads = 1;
  std::uint64_t seed = 0;  // reserved; the numerics are deterministic
};

/// Parses a JSON document. Unknown keys and invalid values raise ConfigError.
RunConfig config_from_json(const std::string& text);
RunConfig load_config(const std::string& path);
/// Compact JSON rendering of the config, used in output headers.
std::string config_to_json(const RunConfig& cfg);

/// Builds the system; model validation failures surface as ConfigError.
TwoZoneSystem build_system(const SystemSpec& spec);

/// Checks tolerances and counts; raises ConfigError.
void validate(const RunConfig& cfg);

FlowOptions flow_options(const Tolerances& tol);
MelnikovOptions melnikov_options(const Tolerances& tol);
NewtonOptions newton_options(const Tolerances& tol);
HeteroclinicOptions heteroclinic_options(const Tolerances& tol);

}  // namespace pwm
