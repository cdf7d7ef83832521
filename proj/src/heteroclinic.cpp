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

#include "pwm/heteroclinic.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <memory>

#include <boost/math/tools/roots.hpp>

#include "pwm/errors.hpp"
#include "pwm/format.hpp"

namespace pwm {

namespace {

using Vec2 = std::array<double, 2>;

// Zone-restricted flow over [t0, t0 + T].
Vec2 strobe(const TwoZoneSystem& sys, Zone side, const Vec2& z, double t0, const FlowOptions& flow) {
  SegmentRequest req;
  req.t_stop = t0 + sys.period();
  const auto tr = integrate_segment(sys, {z[0], z[1], t0}, side, flow, req);
  if (tr.reached_section)
    throw NumericalError(Failure::NoConvergence, "saddle orbit candidate leaves its zone");
  return {tr.end.x, tr.end.y};
}

double toms(const std::function<double(double)>& f, double a, double b, double fa, double fb,
            double tol) {
  boost::uintmax_t iters = 200;
  auto stop = [tol](double lo, double hi) { return std::abs(hi - lo) <= tol; };
  const auto br = boost::math::tools::toms748_solve(f, a, b, fa, fb, stop, iters);
  return 0.5 * (br.first + br.second);
}

// Unperturbed travel time between the eta-offset point and the switching line.
double travel_time(const TwoZoneSystem& sys, Zone side, double eta, const FlowOptions& flow) {
  const TwoZoneSystem sys0 = sys.unperturbed();
  const Saddle& sd = sys0.saddle(side);
  const double norm = std::hypot(1.0, sd.rate);
  const double vx = (side == Zone::Plus ? -1.0 : 1.0) / norm;
  SegmentRequest req;
  req.direction = side == Zone::Plus ? Direction::Backward : Direction::Forward;
  const auto tr = integrate_segment(sys0, {sd.x + eta * vx, eta * sd.rate / norm, 0.0}, side, flow, req);
  return tr.duration;
}

ManifoldPoint shoot(const TwoZoneSystem& sys, Manifold which, double t0, double tau,
                    const HeteroclinicOptions& opts) {
  const bool unstable = which == Manifold::UnstableMinus;
  const Zone side = unstable ? Zone::Minus : Zone::Plus;
  const auto so = saddle_periodic_orbit(sys, side, tau, opts);
  Vec2 v = unstable ? so.v_unstable : so.v_stable;
  // Branch towards the switching line with y > 0.
  if (v[1] < 0.0) v = {-v[0], -v[1]};

  SegmentRequest req;
  req.direction = unstable ? Direction::Forward : Direction::Backward;
  PhaseState hit;
  auto crossing = [&](double s) {
    const double w = std::exp(s);
    const auto tr = integrate_segment(
        sys, {so.point.x + w * v[0], so.point.y + w * v[1], tau}, side, opts.flow, req);
    if (!tr.reached_section)
      throw NumericalError(Failure::NoCrossing, "manifold shot missed the switching line");
    hit = tr.end;
    return tr.end.t - t0;
  };

  // Crossing time moves by about -1/lambda (unstable) or +1/lambda (stable) per unit of log offset.
  const double s0 = std::log(opts.eta);
  double a = s0 - 2.0, b = s0 + 2.0;
  double fa = crossing(a), fb = crossing(b);
  for (int k = 0; k < 8 && fa * fb > 0.0; ++k) {
    const bool shift_down = unstable ? fa < 0.0 : fa > 0.0;
    if (shift_down) {
      b = a;
      fb = fa;
      a -= 2.0;
      fa = crossing(a);
    } else {
      a = b;
      fa = fb;
      b += 2.0;
      fb = crossing(b);
    }
  }
  if (fa * fb > 0.0)
    throw NumericalError(Failure::NoCrossing, "manifold shot cannot reach t0 = " + fmt(t0));
  const double s = fa == 0.0 ? a : fb == 0.0 ? b : toms(crossing, a, b, fa, fb, 1e-14);
  crossing(s);
  ManifoldPoint mp;
  mp.point = hit;
  mp.point.x = 0.0;
  mp.offset = std::exp(s);
  return mp;
}

HeteroclinicPoint make_point(const TwoZoneSystem& sys, double t0, double slope,
                             const HeteroclinicOptions& opts) {
  HeteroclinicPoint hp;
  hp.t0 = t0;
  hp.slope = slope;
  hp.z_plus = manifold_section_point(sys, Manifold::StablePlus, t0, opts).point;
  hp.z_minus = manifold_section_point(sys, Manifold::UnstableMinus, t0, opts).point;
  return hp;
}

HeteroclinicSearch finish_search(const TwoZoneSystem& sys, std::vector<MelnikovSample> samples,
                                 const HeteroclinicOptions& opts) {
  HeteroclinicSearch out;
  out.samples = std::move(samples);
  double peak = 0.0;
  for (const auto& s : out.samples) peak = std::max(peak, std::abs(s.value));
  if (peak < 1e-13)
    throw NumericalError(Failure::NoZero, "splitting distance vanishes identically (degenerate)");
  auto delta = [&](double t) { return delta_distance(sys, t, opts); };
  const std::size_t count = out.samples.size();
  for (std::size_t k = 0; k < count; ++k) {
    const bool last = k + 1 == count;
    const double a = out.samples[k].t0, fa = out.samples[k].value;
    const double b = last ? sys.period() : out.samples[k + 1].t0;
    const double fb = last ? out.samples[0].value : out.samples[k + 1].value;
    double root;
    if (fa == 0.0)
      root = a;
    else if (fa * fb < 0.0)
      root = toms(delta, a, b, fa, fb, opts.root_tol);
    else
      continue;
    const double h = opts.slope_step;
    const double slope = (delta(root + h) - delta(root - h)) / (2.0 * h);
    out.zeros.push_back(make_point(sys, root, slope, opts));
  }
  if (out.zeros.empty())
    throw NumericalError(Failure::NoZero, "splitting distance keeps one sign over a period");
  return out;
}

std::vector<double> scan_times(const TwoZoneSystem& sys, int samples) {
  if (samples < 4) throw NumericalError(Failure::Domain, "need at least 4 samples per period");
  std::vector<double> t(samples);
  for (int k = 0; k < samples; ++k) t[k] = sys.period() * k / samples;
  return t;
}

}  // namespace

SaddleOrbitPoint saddle_periodic_orbit(const TwoZoneSystem& sys, Zone side, double t0,
                                       const HeteroclinicOptions& opts) {
  const Saddle& sd = sys.saddle(side);
  Vec2 z{sd.x, 0.0};
  auto F = [&](const Vec2& p) {
    const auto q = strobe(sys, side, p, t0, opts.flow);
    return Vec2{q[0] - p[0], q[1] - p[1]};
  };
  auto jacobian = [&](const Vec2& p, const Vec2& fp) {
    std::array<Vec2, 2> cols;
    for (int j = 0; j < 2; ++j) {
      Vec2 pj = p;
      const double h = std::max(opts.fd_step, opts.fd_step * std::abs(p[j]));
      pj[j] += h;
      const auto fj = F(pj);
      cols[j] = {(fj[0] - fp[0]) / h, (fj[1] - fp[1]) / h};
    }
    return cols;  // cols[j][i] = dF_i / dz_j
  };

  SaddleOrbitPoint out;
  Vec2 f = F(z);
  double norm = std::max(std::abs(f[0]), std::abs(f[1]));
  int it = 0;
  for (; it < opts.max_iter && !(norm < opts.newton_tol); ++it) {
    const auto c = jacobian(z, f);
    const double a = c[0][0], b = c[1][0], cc = c[0][1], d = c[1][1];
    const double det = a * d - b * cc;
    if (det == 0.0 || !std::isfinite(det))
      throw NumericalError(Failure::SingularJacobian, "saddle orbit Jacobian is singular");
    const Vec2 zn{z[0] - (d * f[0] - b * f[1]) / det, z[1] - (-cc * f[0] + a * f[1]) / det};
    const Vec2 fn = F(zn);
    const double nn = std::max(std::abs(fn[0]), std::abs(fn[1]));
    if (!(nn < norm) && nn > opts.newton_tol) break;
    z = zn;
    f = fn;
    norm = nn;
  }
  if (!(norm < opts.newton_tol * 100.0))
    throw NumericalError(Failure::NoConvergence, "saddle periodic orbit: residual " + fmt(norm));

  // Monodromy = I + dF.
  const auto c = jacobian(z, f);
  const double a = 1.0 + c[0][0], b = c[1][0], cc = c[0][1], d = 1.0 + c[1][1];
  const double tr = a + d, det = a * d - b * cc;
  const double disc = tr * tr / 4.0 - det;
  if (!(disc > 0.0)) throw NumericalError(Failure::NoConvergence, "saddle orbit is not hyperbolic");
  const double mu1 = tr / 2.0 + std::sqrt(disc), mu2 = tr / 2.0 - std::sqrt(disc);
  auto eigvec = [&](double mu) {
    Vec2 v = std::abs(b) + std::abs(mu - a) > std::abs(mu - d) + std::abs(cc) ? Vec2{b, mu - a}
                                                                               : Vec2{mu - d, cc};
    const double n = std::hypot(v[0], v[1]);
    return Vec2{v[0] / n, v[1] / n};
  };
  out.point = {z[0], z[1], t0};
  out.mu_unstable = mu1;
  out.mu_stable = mu2;
  out.v_unstable = eigvec(mu1);
  out.v_stable = eigvec(mu2);
  out.residual = norm;
  out.iterations = it;
  return out;
}

ManifoldPoint manifold_section_point(const TwoZoneSystem& sys, Manifold which, double t0,
                                     const HeteroclinicOptions& opts) {
  const bool unstable = which == Manifold::UnstableMinus;
  const Zone side = unstable ? Zone::Minus : Zone::Plus;
  const double travel = travel_time(sys, side, opts.eta, opts.flow);
  const double tau = unstable ? t0 - travel : t0 + travel;
  ManifoldPoint mp = shoot(sys, which, t0, tau, opts);
  if (opts.check_linearization) {
    const double far = unstable ? tau - sys.period() : tau + sys.period();
    const ManifoldPoint ref = shoot(sys, which, t0, far, opts);
    mp.linearization = std::abs(ref.point.y - mp.point.y);
  }
  return mp;
}

double delta_distance(const TwoZoneSystem& sys, double t0, const HeteroclinicOptions& opts) {
  const auto u = manifold_section_point(sys, Manifold::UnstableMinus, t0, opts).point;
  const auto s = manifold_section_point(sys, Manifold::StablePlus, t0, opts).point;
  const double r = sys.restitution();
  return r * r * eval_H0(sys, Zone::Minus, 0.0, u.y) - eval_H0(sys, Zone::Plus, 0.0, s.y);
}

HeteroclinicSearch find_heteroclinic(const TwoZoneSystem& sys, const HeteroclinicOptions& opts) {
  const auto times = scan_times(sys, opts.samples);
  const int count = static_cast<int>(times.size());
  std::vector<MelnikovSample> samples(count);
  std::vector<std::exception_ptr> errors(count);
#pragma omp parallel for schedule(dynamic)
  for (int k = 0; k < count; ++k) {
    try {
      samples[k] = {times[k], delta_distance(sys, times[k], opts)};
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return finish_search(sys, std::move(samples), opts);
}

HeteroclinicSearch find_heteroclinic_serial(const TwoZoneSystem& sys,
                                            const HeteroclinicOptions& opts) {
  std::vector<MelnikovSample> samples;
  for (double t : scan_times(sys, opts.samples)) samples.push_back({t, delta_distance(sys, t, opts)});
  return finish_search(sys, std::move(samples), opts);
}

HeteroclinicSearch find_heteroclinic_scaled(const TwoZoneSystem& sys, double eps_tilde,
                                            double r_tilde, double delta,
                                            const HeteroclinicOptions& opts) {
  const double r = 1.0 - r_tilde * delta;
  if (!(r > 0.0 && r <= 1.0))
    throw NumericalError(Failure::Domain, "restitution 1 - r_tilde delta = " + fmt(r) +
                                              " outside (0, 1]");
  return find_heteroclinic(sys.with_parameters(eps_tilde * delta, r), opts);
}

double rho_heteroclinic(const TwoZoneSystem& sys, const MelnikovOptions& opts) {
  const auto profile = heteroclinic_M_serial(sys, opts);
  if (profile.identically_zero)
    throw NumericalError(Failure::DegenerateMelnikov, "heteroclinic Melnikov function vanishes");
  const auto it = std::find_if(profile.zeros.begin(), profile.zeros.end(),
                               [](const MelnikovZero& z) { return z.simple; });
  if (it == profile.zeros.end())
    throw NumericalError(Failure::NoZero, "heteroclinic Melnikov function has no simple zero");
  auto orbit = std::make_shared<HeteroclinicOrbit>(sys, opts.flow);
  auto eval = [orbit](double t) { return orbit->melnikov(t); };
  const auto peak = peak_after_zero(eval, it->t0, it->slope, profile.period, opts.samples,
                                    opts.slope_step);
  return peak.value / (2.0 * sys.c1());
}

}  // namespace pwm
