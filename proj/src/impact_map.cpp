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

#include "pwm/impact_map.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "pwm/errors.hpp"
#include "pwm/format.hpp"

namespace pwm {

double inverse_potential(const TwoZoneSystem& sys, Zone zone, double level) {
  const Potential& v = sys.potential(zone);
  const double xs = sys.saddle(zone).x;
  if (level <= 0.0) return 0.0;
  if (level >= sys.c1()) return xs;

  // V is monotone between 0 and the saddle; keep a bracket [a, b] in |x|.
  double a = 0.0, b = std::abs(xs);
  const double dir = sign_of(zone);
  double x = std::min(0.5 * b, level / std::max(std::abs(v.slope(0.0)), 1e-300));
  if (!(x > a && x < b)) x = 0.5 * (a + b);
  for (int it = 0; it < 100; ++it) {
    const double f = v.value(dir * x) - level;
    if (f > 0.0) b = x; else a = x;
    const double df = dir * v.slope(dir * x);
    double next = df > 0.0 ? x - f / df : 0.5 * (a + b);
    if (!(next > a && next < b)) next = 0.5 * (a + b);
    if (std::abs(next - x) <= 4e-16 * std::max(1.0, x) || b - a <= 4e-16) {
      x = next;
      break;
    }
    x = next;
  }
  return dir * x;
}

double alpha_half(const TwoZoneSystem& sys, Zone side, double y) {
  const double vsep = sys.separatrix_velocity();
  if (!(y * sign_of(side) > 0.0))
    throw NumericalError(Failure::Domain, "alpha_half: sign of y does not match the side");
  if (!(std::abs(y) < vsep))
    throw NumericalError(Failure::Domain,
                         "alpha_half: |y| = " + fmt(std::abs(y)) + " outside (0, sqrt(2 c1))");
  const double h = 0.5 * y * y;
  const double root2h = std::abs(y);
  const Potential& v = sys.potential(side);

  auto integrand = [&](double theta) {
    const double s = std::sin(theta);
    const double x = inverse_potential(sys, side, h * s * s);
    return root2h * s / std::abs(v.slope(x));
  };
  double err = 0.0;
  const double integral = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      integrand, 0.0, std::numbers::pi / 2, 12, 1e-13, &err);
  return 2.0 * integral;
}

double alpha(const TwoZoneSystem& sys, double y) {
  return alpha_half(sys, Zone::Plus, y) + alpha_half(sys, Zone::Minus, -y);
}

double alpha_inverse(const TwoZoneSystem& sys, double period, double fraction) {
  if (!(fraction > 0.0 && fraction < 1.0))
    throw NumericalError(Failure::Domain, "alpha_inverse: fraction must lie in (0, 1)");
  double lo = 1e-9 * sys.separatrix_velocity();
  double hi = fraction * sys.separatrix_velocity();
  const double plo = alpha(sys, lo), phi = alpha(sys, hi);
  if (!(period > plo && period < phi))
    throw NumericalError(Failure::Domain, "alpha_inverse: period " + fmt(period) +
                                              " outside (" + fmt(plo) + ", " + fmt(phi) + ")");
  // alpha is increasing (monotone period condition).
  while (hi - lo > 1e-15) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (alpha(sys, mid) < period) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

SectionPoint impact_map_plus(const TwoZoneSystem& sys, const SectionPoint& p,
                             const FlowOptions& opts) {
  if (!(p.y > 0.0)) throw NumericalError(Failure::Domain, "P+ acts on points with y > 0");
  const auto tr = integrate_zone(sys, {0.0, p.y, p.t}, Zone::Plus, opts);
  return {tr.end.y, tr.end.t};
}

SectionPoint impact_map_minus(const TwoZoneSystem& sys, const SectionPoint& p,
                              const FlowOptions& opts) {
  if (!(p.y < 0.0)) throw NumericalError(Failure::Domain, "P- acts on points with y < 0");
  const auto tr = integrate_zone(sys, {0.0, p.y, p.t}, Zone::Minus, opts);
  return {tr.end.y, tr.end.t};
}

SectionPoint impact_map_P(const TwoZoneSystem& sys, const SectionPoint& p, int m,
                          const FlowOptions& opts) {
  if (m < 1) throw NumericalError(Failure::Domain, "impact map iterate count must be >= 1");
  const auto seq = impact_sequence(sys, p.y, p.t, 2 * m, opts);
  const auto& last = seq.records.back();
  return {last.y, last.t};
}

SectionPoint unperturbed_impact_map(const TwoZoneSystem& sys, const SectionPoint& p, int m) {
  const double r = sys.restitution();
  SectionPoint q = p;
  for (int i = 0; i < m; ++i) {
    const double t1 = q.t + alpha_half(sys, Zone::Plus, q.y);
    const double y1 = -r * q.y;
    q = {-r * y1, t1 + alpha_half(sys, Zone::Minus, y1)};
  }
  return q;
}

}  // namespace pwm
