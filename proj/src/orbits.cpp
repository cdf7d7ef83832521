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

#include "pwm/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include <boost/math/tools/roots.hpp>

#include "pwm/errors.hpp"
#include "pwm/format.hpp"

namespace pwm {

namespace {

double max_norm(const std::array<double, 2>& f) { return std::max(std::abs(f[0]), std::abs(f[1])); }

double fd_step(double v, double rel) { return std::max(rel, rel * std::abs(v)); }

double solve_bracket(const std::function<double(double)>& f, double a, double b, double tol) {
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (fa * fb > 0.0) throw NumericalError(Failure::NoSeed, "root is not bracketed");
  if (a > b) {
    std::swap(a, b);
    std::swap(fa, fb);
  }
  boost::uintmax_t iters = 200;
  auto stop = [tol](double lo, double hi) { return std::abs(hi - lo) <= tol; };
  const auto br = boost::math::tools::toms748_solve(f, a, b, fa, fb, stop, iters);
  return 0.5 * (br.first + br.second);
}

struct MelnikovContext {
  MelnikovProfile profile;
  std::function<double(double)> eval;
  MelnikovZero zero;  // first simple zero
  MelnikovPeak peak;
};

MelnikovContext melnikov_context(const TwoZoneSystem& sys, int n, int m,
                                 const MelnikovOptions& opts) {
  MelnikovContext c;
  c.profile = subharmonic_M_serial(sys, n, m, opts);
  if (c.profile.identically_zero)
    throw NumericalError(Failure::DegenerateMelnikov,
                         "M^{" + std::to_string(n) + "," + std::to_string(m) + "} vanishes identically");
  const auto it = std::find_if(c.profile.zeros.begin(), c.profile.zeros.end(),
                               [](const MelnikovZero& z) { return z.simple; });
  if (it == c.profile.zeros.end())
    throw NumericalError(Failure::NoZero, "Melnikov function has no simple zero");
  c.zero = *it;
  const TwoZoneSystem sys0 = sys.unperturbed();
  const double y0 = c.profile.y0bar;
  const FlowOptions flow = opts.flow;
  c.eval = [sys0, y0, m, flow](double t) { return G_m(sys0, y0, t, m, flow); };
  c.peak = peak_after_zero(c.eval, c.zero.t0, c.zero.slope, c.profile.period, opts.samples,
                           opts.slope_step);
  return c;
}

}  // namespace

std::array<double, 2> periodic_residual(const TwoZoneSystem& sys, double y0, double t0, int n,
                                        int m, const FlowOptions& flow) {
  if (!(y0 > 0.0)) throw NumericalError(Failure::ResidualUnavailable, "y0 must be positive");
  ImpactSequence seq;
  try {
    seq = impact_sequence(sys, y0, t0, 2 * m, flow);
  } catch (const NumericalError& e) {
    throw NumericalError(Failure::ResidualUnavailable, e.what(), e.index());
  }
  const auto& last = seq.records.back();
  return {eval_H0(sys, Zone::Plus, 0.0, last.y) - eval_H0(sys, Zone::Plus, 0.0, y0),
          last.t - t0 - n * sys.period()};
}

Verification verify_periodic(const TwoZoneSystem& sys, int n, int m, double y0, double t0,
                             const FlowOptions& flow) {
  const double span = n * sys.period();
  const auto traj = simulate(sys, {0.0, y0, t0}, t0 + span + 1e-6, flow, 4 * m + 4);
  Verification v;
  const auto& rec = traj.impacts.records;
  v.impacts = static_cast<int>(rec.size()) - 1;
  if (v.impacts >= 2 * m) {
    const auto& back = rec[2 * m];
    v.closure_gap = std::max(std::abs(back.y - y0), std::abs(back.t - t0 - span));
  } else {
    v.closure_gap = std::numeric_limits<double>::infinity();
  }
  return v;
}

OrbitSolution find_periodic(const TwoZoneSystem& sys, const OrbitSpec& spec,
                            const NewtonOptions& opts) {
  if (spec.n < 1 || spec.m < 1 || std::gcd(spec.n, spec.m) != 1)
    throw NumericalError(Failure::Domain, "n and m must be coprime positive integers");
  const int n = spec.n, m = spec.m;
  auto res = [&](double y, double t) { return periodic_residual(sys, y, t, n, m, opts.flow); };

  OrbitSolution sol;
  sol.n = n;
  sol.m = m;
  sol.epsilon = sys.epsilon();
  sol.restitution = sys.restitution();
  sol.t0_pinned = sys.epsilon() == 0.0 && sys.restitution() == 1.0;

  double y = spec.y0, t = spec.t0;
  auto f = res(y, t);
  double norm = max_norm(f);
  sol.residual_history.push_back(norm);

  int it = 0;
  for (; it < opts.max_iter && !(norm < opts.tol); ++it) {
    double dy = 0.0, dt = 0.0;
    const double hy = fd_step(y, opts.fd_step);
    const auto fy = res(y + hy, t);
    if (sol.t0_pinned) {
      const double d = (fy[1] - f[1]) / hy;
      if (d == 0.0 || !std::isfinite(d))
        throw NumericalError(Failure::SingularJacobian, "period equation has zero derivative");
      dy = -f[1] / d;
    } else {
      const double ht = fd_step(t, opts.fd_step);
      const auto ft = res(y, t + ht);
      const double a = (fy[0] - f[0]) / hy, b = (ft[0] - f[0]) / ht;
      const double c = (fy[1] - f[1]) / hy, d = (ft[1] - f[1]) / ht;
      const double det = a * d - b * c;
      if (!(std::abs(det) > 1e-14 * (std::abs(a * d) + std::abs(b * c))))
        throw NumericalError(Failure::SingularJacobian,
                             "singular Jacobian at y0 = " + fmt(y) + ", t0 = " + fmt(t));
      dy = -(d * f[0] - b * f[1]) / det;
      dt = -(-c * f[0] + a * f[1]) / det;
    }

    double lambda = 1.0;
    bool accepted = false;
    for (int k = 0; k <= opts.max_halvings; ++k, lambda *= 0.5) {
      const double yn = y + lambda * dy, tn = t + lambda * dt;
      std::array<double, 2> fn;
      try {
        fn = res(yn, tn);
      } catch (const NumericalError&) {
        continue;
      }
      const double nn = max_norm(fn);
      if (nn < norm) {
        y = yn;
        t = tn;
        f = fn;
        norm = nn;
        accepted = true;
        break;
      }
    }
    if (!accepted)
      throw NumericalError(Failure::NoConvergence,
                           "damped Newton stalled at residual " + fmt(norm) + " (iteration " +
                               std::to_string(it + 1) + ")");
    sol.residual_history.push_back(norm);
  }
  if (!(norm < opts.tol))
    throw NumericalError(Failure::NoConvergence, "no convergence after " +
                                                     std::to_string(opts.max_iter) +
                                                     " iterations, residual " + fmt(norm));

  sol.y0 = y;
  sol.t0 = t;
  sol.residual = norm;
  sol.iterations = it;
  const auto v = verify_periodic(sys, n, m, y, t, opts.flow);
  sol.impacts_per_period = v.impacts;
  sol.closure_gap = v.closure_gap;
  if (v.impacts != 2 * m || !(v.closure_gap < opts.verify_tol))
    throw NumericalError(Failure::NoConvergence,
                         "orbit failed verification: " + std::to_string(v.impacts) +
                             " impacts, closure gap " + fmt(v.closure_gap));
  return sol;
}

OrbitSolution find_periodic_dissipative(const TwoZoneSystem& sys, const OrbitSpec& spec,
                                        double eps_tilde, double r_tilde, double delta,
                                        const NewtonOptions& opts) {
  const double r = 1.0 - r_tilde * delta;
  if (!(r > 0.0 && r <= 1.0))
    throw NumericalError(Failure::Domain, "restitution 1 - r_tilde delta = " + fmt(r) +
                                              " outside (0, 1]");
  return find_periodic(sys.with_parameters(eps_tilde * delta, r), spec, opts);
}

std::vector<OrbitSpec> conservative_seeds(const TwoZoneSystem& sys, int n, int m,
                                          const MelnikovOptions& opts) {
  const auto profile = subharmonic_M(sys, n, m, opts);
  if (profile.identically_zero)
    throw NumericalError(Failure::DegenerateMelnikov, "Melnikov function vanishes identically");
  std::vector<OrbitSpec> seeds;
  for (const auto& z : profile.zeros)
    if (z.simple) seeds.push_back({n, m, profile.y0bar, z.t0});
  return seeds;
}

double rho(const TwoZoneSystem& sys, int n, int m, const MelnikovOptions& opts) {
  const auto c = melnikov_context(sys, n, m, opts);
  return c.peak.value / (2.0 * m * c.profile.y0bar * c.profile.y0bar);
}

double dissipative_f(const TwoZoneSystem& sys, int n, int m, double ratio, double t0,
                     const MelnikovOptions& opts) {
  const double y0 = resonant_velocity(sys, n, m);
  return -2.0 * m * ratio * y0 * y0 + G_m(sys, y0, t0, m, opts.flow);
}

std::vector<double> dissipative_seed(const TwoZoneSystem& sys, int n, int m, double ratio,
                                     const MelnikovOptions& opts) {
  if (!(ratio > 0.0)) throw NumericalError(Failure::Domain, "ratio must be positive");
  const auto c = melnikov_context(sys, n, m, opts);
  const double y0 = c.profile.y0bar;
  const double offset = 2.0 * m * ratio * y0 * y0;
  const double threshold = c.peak.value / (2.0 * m * y0 * y0);
  if (ratio >= threshold)
    throw NumericalError(Failure::NoSeed, "ratio " + fmt(ratio) + " is not below rho = " +
                                              fmt(threshold));
  auto f = [&](double t) { return c.eval(t) - offset; };

  const double period = c.profile.period;
  const double dir = c.zero.slope > 0.0 ? 1.0 : -1.0;
  auto wrap = [period](double t) {
    t = std::fmod(t, period);
    return t < 0.0 ? t + period : t;
  };
  const double first = solve_bracket(f, c.zero.t0, c.peak.t, 1e-13);

  // Past the peak M decreases to its next zero in the same direction.
  double next = c.zero.t0 + dir * period;
  for (const auto& z : c.profile.zeros) {
    double cand = z.t0;
    while ((cand - c.peak.t) * dir <= 0.0) cand += dir * period;
    if ((cand - next) * dir < 0.0) next = cand;
  }
  const double second = solve_bracket(f, c.peak.t, next, 1e-13);
  return {wrap(first), wrap(second)};
}

double epsilon_min_linear(double R, int n, double omega) {
  const double a = n * std::numbers::pi / omega;  // nT/2
  const double ch = std::cosh(a), sh = std::sinh(a);
  return (1.0 + omega * omega) * R * (1.0 - ch) /
         std::sqrt(omega * omega * sh * sh * R * R + (2.0 - R) * (2.0 - R) * (1.0 + ch) * (1.0 + ch));
}

}  // namespace pwm
