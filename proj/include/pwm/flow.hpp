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

#include <functional>
#include <optional>
#include <ostream>
#include <vector>

#include "pwm/model.hpp"

namespace pwm {

/// Integrator and event-location settings.
struct FlowOptions {
  double rtol = 1e-10;
  double atol = 1e-10;
  double x_tol = 1e-12;       // |x| at a located crossing
  double graze_tol = 1e-8;    // minimum |y| for a transversal crossing
  double max_time = 200.0;    // per zone segment, guards separatrix stalls
  double escape_bound = 1e3;  // |x| beyond which the orbit is declared lost
  double h_max = 0.1;
  double h_init = 1e-3;
};

enum class Direction : int { Backward = -1, Forward = 1 };

/// Scalar integrand accumulated along a segment, e.g. {H0, H1}.
using Integrand = std::function<double(Zone, double x, double y, double t)>;

struct SegmentRequest {
  Direction direction = Direction::Forward;
  std::optional<double> t_stop;                      // stop here if no crossing earlier
  const Integrand* integrand = nullptr;
  std::function<void(const PhaseState&)> observer;   // called after every accepted step
};

struct ZoneTransit {
  PhaseState end;
  double duration = 0.0;   // |t_end - t_start|
  double integral = 0.0;   // of the integrand, in the direction of integration
  bool reached_section = false;
  int steps = 0;
};

/// Flow of one zone until the next crossing of x = 0. The returned state has
/// x set to 0 after locating the crossing to |x| < x_tol.
/// Throws GrazingImpact / NoCrossing.
ZoneTransit integrate_zone(const TwoZoneSystem& sys, const PhaseState& start, Zone zone,
                           const FlowOptions& opts = {});

/// General zone segment: optional stop time, backward direction, quadrature.
ZoneTransit integrate_segment(const TwoZoneSystem& sys, const PhaseState& start, Zone zone,
                              const FlowOptions& opts, const SegmentRequest& request);

/// Integration constants of the linear block flow in one zone.
struct LinearFlowConstants {
  double c1 = 0.0;
  double c2 = 0.0;
};

LinearFlowConstants linear_flow_constants(const PhaseState& start, Zone zone);

/// Closed-form unperturbed flow of the linear block:
/// x = C1 e^t + C2 e^-t +-1, y = C1 e^t - C2 e^-t. Evaluated at time t.
PhaseState closed_form_flow_linear(const TwoZoneSystem& sys, const PhaseState& start, Zone zone,
                                   double t);

/// y <- r y on the switching line.
PhaseState apply_restitution(double r, const PhaseState& at_impact, double x_tol = 1e-12);

struct ImpactRecord {
  int index = 0;
  double y = 0.0;  // post-restitution
  double t = 0.0;
};

struct ImpactSequence {
  std::vector<ImpactRecord> records;           // records[0] is the initial point
  std::vector<double> segment_integrals;       // one per zone segment when requested
  bool truncated = false;
};

/// Impacts of the concatenated flow started at (0, y0, t0) with y0 > 0;
/// `count` further impacts are produced (records.size() == count + 1).
/// Errors carry the index of the impact that could not be reached.
ImpactSequence impact_sequence(const TwoZoneSystem& sys, double y0, double t0, int count,
                               const FlowOptions& opts = {}, const Integrand* integrand = nullptr);

struct TrajectorySample {
  PhaseState state;
  Zone zone = Zone::Plus;
  bool impact = false;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  ImpactSequence impacts;
};

/// Concatenated flow from an arbitrary start until t_end or max_impacts.
Trajectory simulate(const TwoZoneSystem& sys, const PhaseState& start, double t_end,
                    const FlowOptions& opts = {}, int max_impacts = 1000);

/// CSV rows "t,x,y,zone,impact_flag" (no header).
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

}  // namespace pwm
