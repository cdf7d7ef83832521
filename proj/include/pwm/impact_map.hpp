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

#include "pwm/flow.hpp"
#include "pwm/model.hpp"

namespace pwm {

/// Point of the switching line in the extended phase space, x = 0 implied.
struct SectionPoint {
  double y = 0.0;
  double t = 0.0;
  Zone side() const { return zone_of(0.0, y); }
};

/// Default upper bound of the compact section used by alpha_inverse,
/// as a fraction of the separatrix velocity sqrt(2 c1).
inline constexpr double kCompactFraction = 0.995;

/// Unperturbed time to cross the zone starting from (0, y) on the side of
/// sign(y). The turning-point singularity is removed with the change of
/// variable V(x) = h sin^2(theta), h = y^2/2, and the remaining smooth
/// integral is done by adaptive Gauss-Kronrod. Requires 0 < |y| < sqrt(2 c1).
double alpha_half(const TwoZoneSystem& sys, Zone side, double y);

/// Period of the unperturbed orbit through (0, y), y > 0:
/// alpha+(y) + alpha-(-y).
double alpha(const TwoZoneSystem& sys, double y);

/// y in (0, fraction * sqrt(2 c1)) with alpha(y) = period, by bisection.
double alpha_inverse(const TwoZoneSystem& sys, double period,
                     double fraction = kCompactFraction);

/// (V_zone)^{-1}(level) on the segment between the origin and the saddle.
double inverse_potential(const TwoZoneSystem& sys, Zone zone, double level);

/// P+ : section y > 0 to section y < 0 (no restitution).
SectionPoint impact_map_plus(const TwoZoneSystem& sys, const SectionPoint& p,
                             const FlowOptions& opts = {});
/// P- : section y < 0 to section y > 0 (no restitution).
SectionPoint impact_map_minus(const TwoZoneSystem& sys, const SectionPoint& p,
                              const FlowOptions& opts = {});

/// m-th iterate of R_r o P- o R_r o P+ (equal to P_eps when r = 1).
SectionPoint impact_map_P(const TwoZoneSystem& sys, const SectionPoint& p, int m = 1,
                          const FlowOptions& opts = {});

/// Unperturbed map from the alpha recursion:
/// (y, t) -> (r^2 y, t + alpha+(y) + alpha-(-r y)), iterated m times.
SectionPoint unperturbed_impact_map(const TwoZoneSystem& sys, const SectionPoint& p, int m = 1);

}  // namespace pwm
