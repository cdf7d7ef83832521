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

#include "pwm/melnikov.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "melnikov_detail.hpp"
#include "pwm/errors.hpp"
#include "pwm/format.hpp"
#include "pwm/impact_map.hpp"

namespace pwm {

double G_m(const TwoZoneSystem& sys, double y0, double t0, int m, const FlowOptions& flow) {
  if (m < 1) throw NumericalError(Failure::Domain, "G_m needs m >= 1");
  const TwoZoneSystem sys0 = sys.unperturbed();
  const Integrand bracket = [&sys0](Zone z, double x, double y, double t) {
    return poisson_bracket(sys0, z, x, y, t);
  };
  const auto seq = impact_sequence(sys0, y0, t0, 2 * m, flow, &bracket);
  return std::accumulate(seq.segment_integrals.begin(), seq.segment_integrals.end(), 0.0);
}

double resonant_velocity(const TwoZoneSystem& sys, int n, int m) {
  if (n < 1 || m < 1) throw NumericalError(Failure::Domain, "resonance needs n, m >= 1");
  if (std::gcd(n, m) != 1)
    throw NumericalError(Failure::Domain,
                         "n = " + std::to_string(n) + " and m = " + std::to_string(m) +
                             " are not coprime");
  return alpha_inverse(sys, n * sys.period() / m);
}

double subharmonic_M_at(const TwoZoneSystem& sys, int n, int m, double t0,
                        const MelnikovOptions& opts) {
  return G_m(sys, resonant_velocity(sys, n, m), t0, m, opts.flow);
}

namespace detail {

std::vector<double> sample_times(double period, int samples) {
  if (samples < 4) throw NumericalError(Failure::Domain, "need at least 4 samples per period");
  std::vector<double> t(samples);
  for (int k = 0; k < samples; ++k) t[k] = period * k / samples;
  return t;
}

void rethrow_first(const std::vector<std::exception_ptr>& errors) {
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

ProfileJob subharmonic_job(const TwoZoneSystem& sys, int n, int m, const MelnikovOptions& opts) {
  ProfileJob job;
  auto& p = job.profile;
  p.kind = MelnikovProfile::Kind::Subharmonic;
  p.n = n;
  p.m = m;
  p.period = sys.period();
  p.y0bar = resonant_velocity(sys, n, m);
  const TwoZoneSystem sys0 = sys.unperturbed();
  const double y0 = p.y0bar;
  const FlowOptions flow = opts.flow;
  job.eval = [sys0, y0, m, flow](double t0) { return G_m(sys0, y0, t0, m, flow); };
  return job;
}

ProfileJob heteroclinic_job(const TwoZoneSystem& sys, const MelnikovOptions& opts) {
  ProfileJob job;
  job.profile.kind = MelnikovProfile::Kind::Heteroclinic;
  job.profile.period = sys.period();
  auto orbit = std::make_shared<HeteroclinicOrbit>(sys, opts.flow);
  job.eval = [orbit](double t0) { return orbit->melnikov(t0); };
  return job;
}

}  // namespace detail

namespace {

MelnikovProfile run_parallel(detail::ProfileJob job, const MelnikovOptions& opts) {
  const auto times = detail::sample_times(job.profile.period, opts.samples);
  const int count = static_cast<int>(times.size());
  std::vector<double> values(count, 0.0);
  std::vector<std::exception_ptr> errors(count);
#pragma omp parallel for schedule(dynamic)
  for (int k = 0; k < count; ++k) {
    try {
      values[k] = job.eval(times[k]);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  detail::rethrow_first(errors);
  job.profile.samples.resize(count);
  for (int k = 0; k < count; ++k) job.profile.samples[k] = {times[k], values[k]};
  locate_zeros(job.profile, job.eval, opts);
  return job.profile;
}

}  // namespace

MelnikovProfile subharmonic_M(const TwoZoneSystem& sys, int n, int m, const MelnikovOptions& opts) {
  return run_parallel(detail::subharmonic_job(sys, n, m, opts), opts);
}

MelnikovProfile heteroclinic_M(const TwoZoneSystem& sys, const MelnikovOptions& opts) {
  return run_parallel(detail::heteroclinic_job(sys, opts), opts);
}

double mean_M(const MelnikovProfile& profile) {
  if (profile.samples.empty()) throw NumericalError(Failure::Domain, "empty Melnikov profile");
  double s = 0.0;
  for (const auto& x : profile.samples) s += x.value;
  return s / static_cast<double>(profile.samples.size());
}

void locate_zeros(MelnikovProfile& profile, const std::function<double(double)>& eval,
                  const MelnikovOptions& opts) {
  profile.zeros.clear();
  const auto& s = profile.samples;
  double peak = 0.0;
  for (const auto& x : s) peak = std::max(peak, std::abs(x.value));
  profile.identically_zero = peak < opts.zero_tol;
  if (profile.identically_zero) return;

  const std::size_t count = s.size();
  for (std::size_t k = 0; k < count; ++k) {
    const double a = s[k].t0;
    const double fa = s[k].value;
    const bool last = k + 1 == count;
    const double b = last ? profile.period : s[k + 1].t0;
    const double fb = last ? s[0].value : s[k + 1].value;
    double root;
    if (fa == 0.0) {
      root = a;
    } else if (fa * fb < 0.0) {
      boost::uintmax_t iters = 200;
      const double tol = opts.root_tol;
      auto stop = [tol](double lo, double hi) { return std::abs(hi - lo) <= tol; };
      const auto br = boost::math::tools::toms748_solve(eval, a, b, fa, fb, stop, iters);
      root = 0.5 * (br.first + br.second);
    } else {
      continue;
    }
    const double h = opts.slope_step;
    const double slope = (eval(root + h) - eval(root - h)) / (2.0 * h);
    profile.zeros.push_back({root, slope, std::abs(slope) > opts.simple_slope});
  }
}

MelnikovPeak peak_after_zero(const std::function<double(double)>& eval, double t_zero,
                             double slope, double period, int grid, double slope_step) {
  if (slope == 0.0) throw NumericalError(Failure::Domain, "zero is not simple");
  const double dir = slope > 0.0 ? 1.0 : -1.0;
  const double dt = dir * period / grid;
  const double h = slope_step;
  auto deriv = [&](double t) { return dir * (eval(t + h) - eval(t - h)) / (2.0 * h); };

  double t_prev = t_zero;
  for (int k = 1; k <= grid; ++k) {
    const double t = t_zero + k * dt;
    const double d = deriv(t);
    if (d <= 0.0) {
      double lo = t_prev, hi = t;
      boost::uintmax_t iters = 200;
      auto stop = [](double a, double b) { return std::abs(b - a) <= 1e-12; };
      const double d_lo = deriv(lo);
      double tc = hi;
      if (d == 0.0) {
        tc = t;
      } else if (d_lo > 0.0) {
        const auto br = boost::math::tools::toms748_solve(deriv, lo, hi, d_lo, d, stop, iters);
        tc = 0.5 * (br.first + br.second);
      }
      return {tc, eval(tc)};
    }
    t_prev = t;
  }
  throw NumericalError(Failure::NoZero, "no critical point of M within one period");
}

HeteroclinicOrbit::HeteroclinicOrbit(const TwoZoneSystem& sys, const FlowOptions& flow,
                                     double eta)
    : sys_(sys.unperturbed()), flow_(flow), eta_(eta) {
  const double vsep = sys_.separatrix_velocity();
  for (Zone z : {Zone::Plus, Zone::Minus}) {
    const Saddle& sd = sys_.saddle(z);
    const double norm = std::hypot(1.0, sd.rate);
    // Plus: stable branch approached from x < x_s. Minus: unstable branch leaving to x > x_s.
    const double vx = (z == Zone::Plus ? -1.0 : 1.0) / norm;
    const double vy = sd.rate / norm;
    SegmentRequest req;
    req.direction = z == Zone::Plus ? Direction::Backward : Direction::Forward;
    const auto tr = integrate_segment(sys_, {sd.x + eta_ * vx, eta_ * vy, 0.0}, z, flow_, req);
    if (!tr.reached_section || std::abs(tr.end.y - vsep) > 1e-6 * std::max(1.0, vsep))
      throw NumericalError(Failure::Truncation,
                           "separatrix shot from the saddle misses (0, sqrt(2 c1)): y = " +
                               fmt(tr.end.y));
    (z == Zone::Plus ? travel_plus_ : travel_minus_) = tr.duration;
  }
}

double HeteroclinicOrbit::half_integral(Zone z, double t0) const {
  const Saddle& sd = sys_.saddle(z);
  const double norm = std::hypot(1.0, sd.rate);
  const double vx = (z == Zone::Plus ? -1.0 : 1.0) / norm;
  const double vy = sd.rate / norm;
  const TwoZoneSystem& s0 = sys_;
  const Integrand bracket = [&s0](Zone zz, double x, double y, double t) {
    return poisson_bracket(s0, zz, x, y, t);
  };

  const bool plus = z == Zone::Plus;
  double t_start = plus ? t0 + travel_plus_ : t0 - travel_minus_;
  SegmentRequest req;
  req.direction = plus ? Direction::Backward : Direction::Forward;
  req.integrand = &bracket;
  // The travel time was measured with a different step sequence; shift the
  // start until the shot crosses the switching line at t0.
  ZoneTransit tr;
  for (int it = 0; it < 4; ++it) {
    tr = integrate_segment(sys_, {sd.x + eta_ * vx, eta_ * vy, t_start}, z, flow_, req);
    if (!tr.reached_section)
      throw NumericalError(Failure::Truncation, "separatrix shot did not reach the switching line");
    const double miss = tr.end.t - t0;
    if (std::abs(miss) < 1e-12) break;
    t_start -= miss;
  }
  const double body = plus ? -tr.integral : tr.integral;

  // Inside the eta-neighbourhood the orbit is z_s + eta e^{-lambda u} v, u >= 0,
  // with time running away from the switching line.
  const double lam = sd.rate;
  const double sgn = plus ? 1.0 : -1.0;
  auto tail_f = [&](double u) {
    const double w = eta_ * std::exp(-lam * u);
    return bracket(z, sd.x + w * vx, w * vy, t_start + sgn * u);
  };
  const double tail = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      tail_f, 0.0, 40.0 / lam, 15, 1e-14);
  return body + tail;
}

double HeteroclinicOrbit::melnikov(double t0) const {
  return half_integral(Zone::Minus, t0) + half_integral(Zone::Plus, t0);
}

}  // namespace pwm
