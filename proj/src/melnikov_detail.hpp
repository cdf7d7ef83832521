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

#include <exception>
#include <functional>
#include <vector>

#include "pwm/melnikov.hpp"

namespace pwm::detail {

/// Evaluator and empty profile shared by the parallel and serial drivers.
struct ProfileJob {
  MelnikovProfile profile;
  std::function<double(double)> eval;
};

ProfileJob subharmonic_job(const TwoZoneSystem& sys, int n, int m, const MelnikovOptions& opts);
ProfileJob heteroclinic_job(const TwoZoneSystem& sys, const MelnikovOptions& opts);

/// Sample times t_k = k T / N.
std::vector<double> sample_times(double period, int samples);

/// Rethrow the first captured exception, if any.
void rethrow_first(const std::vector<std::exception_ptr>& errors);

}  // namespace pwm::detail
