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

#include <algorithm>
#include <cmath>
#include <exception>

#include "pwm/errors.hpp"
#include "pwm/orbits.hpp"

namespace pwm {

Branch continue_orbit(const std::function<TwoZoneSystem(double)>& family,
                      const OrbitSolution& start, double p_start, double p_target,
                      const ContinuationOptions& copts, const NewtonOptions& nopts) {
  Branch b;
  b.points.push_back({p_start, start});
  const double dir = p_target >= p_start ? 1.0 : -1.0;
  double step = copts.initial_step;
  int failures = 0;

  while (static_cast<int>(b.points.size()) < copts.max_points) {
    const BranchPoint& last = b.points.back();
    const double remaining = (p_target - last.parameter) * dir;
    if (remaining <= 0.0) {
      b.reached_target = true;
      break;
    }
    const double h = std::min(step, remaining);
    const double p = remaining - h <= 1e-15 * std::max(1.0, std::abs(p_target))
                         ? p_target
                         : last.parameter + dir * h;

    double y_pred = last.orbit.y0, t_pred = last.orbit.t0;
    if (b.points.size() >= 2) {
      const BranchPoint& prev = b.points[b.points.size() - 2];
      const double s = (p - last.parameter) / (last.parameter - prev.parameter);
      y_pred += s * (last.orbit.y0 - prev.orbit.y0);
      t_pred += s * (last.orbit.t0 - prev.orbit.t0);
    }

    bool ok = false;
    OrbitSolution sol;
    try {
      const TwoZoneSystem sys = family(p);
      sol = find_periodic(sys, {start.n, start.m, y_pred, t_pred}, nopts);
      ok = std::abs(sol.y0 - y_pred) <= copts.max_jump_y &&
           std::abs(sol.t0 - t_pred) <= copts.max_jump_t * sys.period();
    } catch (const NumericalError&) {
      ok = false;
    }

    if (ok) {
      b.points.push_back({p, sol});
      failures = 0;
      step = std::min(step * copts.grow, copts.max_step);
      continue;
    }
    if (step <= copts.min_step * (1.0 + 1e-12)) {
      if (++failures >= copts.fold_failures) {
        b.folded = true;
        break;
      }
    } else {
      step = std::max(0.5 * step, copts.min_step);
    }
  }
  return b;
}

Branch continue_in_epsilon(const TwoZoneSystem& sys, const OrbitSolution& start, double eps_target,
                           const ContinuationOptions& copts, const NewtonOptions& nopts) {
  auto family = [&sys](double eps) { return sys.with_epsilon(eps); };
  return continue_orbit(family, start, start.epsilon, eps_target, copts, nopts);
}

Branch continue_in_delta(const TwoZoneSystem& sys, const OrbitSolution& start, double delta_start,
                         double delta_target, double eps_tilde, double r_tilde,
                         const ContinuationOptions& copts, const NewtonOptions& nopts) {
  auto family = [&](double delta) {
    const double r = 1.0 - r_tilde * delta;
    if (!(r > 0.0)) throw NumericalError(Failure::Domain, "restitution left (0, 1]");
    return sys.with_parameters(eps_tilde * delta, r);
  };
  return continue_orbit(family, start, delta_start, delta_target, copts, nopts);
}

namespace {

std::vector<ExistencePoint> existence_for_ratio(const TwoZoneSystem& sys, int n, int m,
                                                double ratio, const ExistenceOptions& opts) {
  std::vector<ExistencePoint> out;
  std::vector<double> seeds;
  try {
    seeds = dissipative_seed(sys, n, m, ratio, opts.melnikov);
  } catch (const NumericalError&) {
    for (int i : opts.seeds) out.push_back({ratio, i});
    return out;
  }
  const double y0 = resonant_velocity(sys, n, m);
  const double r_tilde = ratio * opts.eps_tilde;
  // Keep r = 1 - r_tilde delta strictly positive.
  const double delta_max = std::min(opts.delta_max, 0.999 / r_tilde);
  for (int which : opts.seeds) {
    if (which < 1 || which > static_cast<int>(seeds.size()))
      throw NumericalError(Failure::Domain, "seed index must be 1 or 2");
    const int i = which - 1;
    ExistencePoint pt;
    pt.ratio = ratio;
    pt.seed = i + 1;
    try {
      const auto start = find_periodic_dissipative(sys, {n, m, y0, seeds[i]}, opts.eps_tilde,
                                                   r_tilde, opts.delta_start, opts.newton);
      const auto br = continue_in_delta(sys, start, opts.delta_start, delta_max, opts.eps_tilde,
                                        r_tilde, opts.continuation, opts.newton);
      pt.found = true;
      pt.folded = br.folded;
      pt.delta_end = br.last_parameter();
      pt.r = br.points.back().orbit.restitution;
      pt.epsilon = br.points.back().orbit.epsilon;
    } catch (const NumericalError&) {
      pt.found = false;
    }
    out.push_back(pt);
  }
  return out;
}

ExistenceCurve curve_header(const TwoZoneSystem& sys, int n, int m, const ExistenceOptions& opts) {
  ExistenceCurve c;
  c.n = n;
  c.m = m;
  c.omega = sys.omega();
  c.eps_tilde = opts.eps_tilde;
  c.rho = rho(sys, n, m, opts.melnikov);
  c.delta_start = opts.delta_start;
  c.delta_max = opts.delta_max;
  return c;
}

}  // namespace

ExistenceCurve existence_curve(const TwoZoneSystem& sys, int n, int m,
                               const std::vector<double>& ratios, const ExistenceOptions& opts) {
  ExistenceCurve c = curve_header(sys, n, m, opts);
  const int count = static_cast<int>(ratios.size());
  std::vector<std::vector<ExistencePoint>> parts(count);
  std::vector<std::exception_ptr> errors(count);
#pragma omp parallel for schedule(dynamic)
  for (int k = 0; k < count; ++k) {
    try {
      parts[k] = existence_for_ratio(sys, n, m, ratios[k], opts);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  for (auto& p : parts) c.points.insert(c.points.end(), p.begin(), p.end());
  return c;
}

ExistenceCurve existence_curve_serial(const TwoZoneSystem& sys, int n, int m,
                                      const std::vector<double>& ratios,
                                      const ExistenceOptions& opts) {
  ExistenceCurve c = curve_header(sys, n, m, opts);
  for (double q : ratios) {
    const auto p = existence_for_ratio(sys, n, m, q, opts);
    c.points.insert(c.points.end(), p.begin(), p.end());
  }
  return c;
}

}  // namespace pwm
