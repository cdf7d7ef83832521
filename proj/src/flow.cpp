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

#include "pwm/flow.hpp"

#include <cmath>
#include <string>

#include "pwm/errors.hpp"
#include "pwm/format.hpp"
#include "pwm/integrator.hpp"

namespace pwm {

namespace {

using Vec3 = dp45::Vec<3>;

constexpr int kMaxLocateIterations = 80;
constexpr double kMinStep = 1e-14;

}  // namespace

ZoneTransit integrate_segment(const TwoZoneSystem& sys, const PhaseState& start, Zone zone,
                              const FlowOptions& opts, const SegmentRequest& req) {
  const double dir = static_cast<double>(req.direction);
  const double zs = sign_of(zone);

  if (!std::isfinite(start.x) || !std::isfinite(start.y) || !std::isfinite(start.t))
    throw NumericalError(Failure::Domain, "non-finite start state");
  if (start.x * zs < 0.0)
    throw NumericalError(Failure::Domain, "start state lies outside the requested zone");
  bool on_section = start.x == 0.0;
  if (on_section && !(start.y * zs * dir > 0.0))
    throw NumericalError(Failure::Domain,
                         "start on the switching line is not moving into the requested zone");

  const Integrand* integrand = req.integrand;
  auto rhs = [&](double t, const Vec3& s, Vec3& d) {
    const auto v = vector_field(sys, zone, PhaseState{s[0], s[1], t});
    d[0] = v[0];
    d[1] = v[1];
    d[2] = integrand ? (*integrand)(zone, s[0], s[1], t) : 0.0;
  };
  const std::size_t controlled = integrand ? 3 : 2;

  Vec3 s{start.x, start.y, 0.0};
  double t = start.t;
  double h = dir * std::min(opts.h_init, opts.h_max);
  ZoneTransit out;

  for (;;) {
    bool clamped = false;
    if (std::abs(h) > opts.h_max) h = dir * opts.h_max;
    if (req.t_stop) {
      const double remaining = (*req.t_stop - t) * dir;
      if (remaining <= 0.0) {
        out.end = {s[0], s[1], t};
        out.duration = std::abs(t - start.t);
        out.integral = s[2];
        out.reached_section = false;
        return out;
      }
      if (std::abs(h) >= remaining) {
        h = dir * remaining;
        clamped = true;
      }
    }
    if (std::abs(h) < kMinStep)
      throw NumericalError(Failure::NoCrossing, "step size underflow at t = " + fmt(t));

    const auto trial = dp45::step<3>(rhs, t, s, h, controlled, opts.rtol, opts.atol);
    if (!(trial.error <= 1.0)) {
      h = std::isfinite(trial.error) ? dp45::next_step(h, trial.error) : 0.2 * h;
      continue;
    }

    if (trial.state[0] * zs <= 0.0) {
      if (on_section) {
        // Whole arc shorter than the step: shrink until an interior point is seen.
        h *= 0.5;
        continue;
      }
      // Locate x(t + h*) = 0 with full trial steps (Illinois regula falsi).
      double lo = 0.0, glo = s[0] * zs;
      double hi = h, ghi = trial.state[0] * zs;
      Vec3 hit = trial.state;
      double h_hit = h;
      int side = 0;
      bool converged = std::abs(ghi) < opts.x_tol;
      for (int it = 0; it < kMaxLocateIterations && !converged; ++it) {
        double hm = (lo * ghi - hi * glo) / (ghi - glo);
        if (!(hm != lo && hm != hi) || !std::isfinite(hm)) hm = 0.5 * (lo + hi);
        const auto probe = dp45::step<3>(rhs, t, s, hm, controlled, opts.rtol, opts.atol);
        const double gm = probe.state[0] * zs;
        hit = probe.state;
        h_hit = hm;
        if (std::abs(gm) < opts.x_tol) {
          converged = true;
          break;
        }
        if (gm > 0.0) {
          lo = hm;
          glo = gm;
          if (side == -1) ghi *= 0.5;
          side = -1;
        } else {
          hi = hm;
          ghi = gm;
          if (side == 1) glo *= 0.5;
          side = 1;
        }
        if (std::abs(hi - lo) < 1e-16 * std::max(1.0, std::abs(t))) {
          converged = true;
          break;
        }
      }
      if (!converged)
        throw NumericalError(Failure::NoCrossing, "crossing location did not converge");
      if (std::abs(hit[1]) <= opts.graze_tol)
        throw NumericalError(Failure::GrazingImpact,
                             "|y| = " + fmt(std::abs(hit[1])) + " at crossing, t = " + fmt(t + h_hit));
      t += h_hit;
      out.end = {0.0, hit[1], t};
      out.duration = std::abs(t - start.t);
      out.integral = hit[2];
      out.reached_section = true;
      out.steps += 1;
      if (req.observer) req.observer(out.end);
      return out;
    }

    t = clamped ? *req.t_stop : t + h;
    s = trial.state;
    out.steps += 1;
    on_section = false;
    if (req.observer) req.observer(PhaseState{s[0], s[1], t});

    if (!std::isfinite(s[0]) || !std::isfinite(s[1]) || std::abs(s[0]) > opts.escape_bound)
      throw NumericalError(Failure::NoCrossing, "trajectory escaped the region at t = " + fmt(t));
    if (!req.t_stop && std::abs(t - start.t) > opts.max_time)
      throw NumericalError(Failure::NoCrossing,
                           "no return to the switching line within " + fmt(opts.max_time));
    h = dp45::next_step(h, trial.error);
  }
}

ZoneTransit integrate_zone(const TwoZoneSystem& sys, const PhaseState& start, Zone zone,
                           const FlowOptions& opts) {
  return integrate_segment(sys, start, zone, opts, SegmentRequest{});
}

LinearFlowConstants linear_flow_constants(const PhaseState& p, Zone zone) {
  const double shift = sign_of(zone);
  return {0.5 * (p.x + p.y - shift) * std::exp(-p.t), 0.5 * (p.x - p.y - shift) * std::exp(p.t)};
}

PhaseState closed_form_flow_linear(const TwoZoneSystem& sys, const PhaseState& start, Zone zone,
                                   double t) {
  if (!sys.is_linear_block())
    throw NumericalError(Failure::Domain, "closed-form flow exists only for the linear block");
  if (sys.epsilon() != 0.0)
    throw NumericalError(Failure::Domain, "closed-form flow is the unperturbed one");
  const auto c = linear_flow_constants(start, zone);
  const double ep = std::exp(t), em = std::exp(-t);
  return {c.c1 * ep + c.c2 * em + sign_of(zone), c.c1 * ep - c.c2 * em, t};
}

PhaseState apply_restitution(double r, const PhaseState& p, double x_tol) {
  if (std::abs(p.x) > x_tol)
    throw NumericalError(Failure::Domain, "restitution applies only on the switching line");
  return {p.x, r * p.y, p.t};
}

ImpactSequence impact_sequence(const TwoZoneSystem& sys, double y0, double t0, int count,
                               const FlowOptions& opts, const Integrand* integrand) {
  if (!(y0 > 0.0)) throw NumericalError(Failure::Domain, "impact sequence starts on y > 0");
  ImpactSequence seq;
  seq.records.reserve(count + 1);
  seq.records.push_back({0, y0, t0});
  if (integrand) seq.segment_integrals.reserve(count);

  PhaseState state{0.0, y0, t0};
  Zone zone = Zone::Plus;
  SegmentRequest req;
  req.integrand = integrand;
  for (int i = 1; i <= count; ++i) {
    ZoneTransit tr;
    try {
      tr = integrate_segment(sys, state, zone, opts, req);
    } catch (const NumericalError& e) {
      throw NumericalError(e.kind(), std::string(e.what()) + " (impact " + std::to_string(i) + ")", i);
    }
    state = apply_restitution(sys.restitution(), tr.end);
    seq.records.push_back({i, state.y, state.t});
    if (integrand) seq.segment_integrals.push_back(tr.integral);
    zone = opposite(zone);
  }
  return seq;
}

Trajectory simulate(const TwoZoneSystem& sys, const PhaseState& start, double t_end,
                    const FlowOptions& opts, int max_impacts) {
  Trajectory traj;
  PhaseState state = start;
  Zone zone = zone_of(start.x, start.y);
  traj.samples.push_back({state, zone, false});
  traj.impacts.records.push_back({0, state.y, state.t});

  SegmentRequest req;
  req.t_stop = t_end;
  req.observer = [&](const PhaseState& p) {
    if (p.x != 0.0) traj.samples.push_back({p, zone, false});
  };

  int impacts = 0;
  while (state.t < t_end) {
    const ZoneTransit tr = integrate_segment(sys, state, zone, opts, req);
    if (!tr.reached_section) break;
    traj.samples.push_back({tr.end, zone, false});
    state = apply_restitution(sys.restitution(), tr.end);
    zone = opposite(zone);
    ++impacts;
    traj.samples.push_back({state, zone, true});
    traj.impacts.records.push_back({impacts, state.y, state.t});
    if (impacts >= max_impacts) {
      traj.impacts.truncated = true;
      break;
    }
  }
  return traj;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  for (const auto& s : traj.samples) {
    os << fmt(s.state.t) << ',' << fmt(s.state.x) << ',' << fmt(s.state.y) << ','
       << (s.zone == Zone::Plus ? "+" : "-") << ',' << (s.impact ? 1 : 0) << '\n';
  }
}

}  // namespace pwm
