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

#include "pwm/errors.hpp"

namespace pwm {

std::string_view to_string(Failure f) noexcept {
  switch (f) {
    case Failure::Domain: return "DomainError";
    case Failure::GrazingImpact: return "GrazingImpact";
    case Failure::NoCrossing: return "NoCrossing";
    case Failure::Truncation: return "TruncationError";
    case Failure::NoConvergence: return "NoConvergence";
    case Failure::SingularJacobian: return "SingularJacobian";
    case Failure::NoSeed: return "NoSeed";
    case Failure::DegenerateMelnikov: return "DegenerateMelnikov";
    case Failure::NoZero: return "NoZero";
    case Failure::ResidualUnavailable: return "ResidualUnavailable";
  }
  return "UnknownFailure";
}

}  // namespace pwm
