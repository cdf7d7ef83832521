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

#include <array>
#include <vector>

#include "pwm/flow.hpp"
#include "pwm/melnikov.hpp"
#include "pwm/model.hpp"

namespace pwm {

struct HeteroclinicOptions {
  FlowOptions flow = MelnikovOptions::tight_flow();
  double eta = 1e-7;          // offset from the saddle orbit along the eigenvector
  double newton_tol = 1e-12;  // |stroboscopic map(z) - z|
  int max_iter = 30;
  double fd_step = 1e-7;
  int samples = 32;           // t0 samples per period when scanning Delta
  double root_tol = 1e-10;
  double slope_step = 1e-5;
  bool check_linearization = false;
};

/// Point z(t0) of the T-periodic hyperbolic orbit near the saddle of one zone
/// with its monodromy eigen-data.
struct SaddleOrbitPoint {
  PhaseState point;
  double mu_unstable = 0.0;
  double mu_stable = 0.0;
  std::array<double, 2> v_unstable{};
  std::array<double, 2> v_stable{};
  double residual = 0.0;
  int iterations = 0;
};

/// Fixed point of the zone-restricted time-T map started at t0, by Newton
/// from the unperturbed saddle.
SaddleOrbitPoint saddle_periodic_orbit(const TwoZoneSystem& sys, Zone side, double t0,
                                       const HeteroclinicOptions& opts = {});

enum class Manifold { UnstableMinus, StablePlus };

struct ManifoldPoint {
  PhaseState point;         // on the switching line, point.t == t0
  double offset = 0.0;      // distance from the saddle orbit of the shot
  double linearization = 0.0;  // |y| change when shooting from one period further out (if checked)
};

/// Intersection with the switching line at time t0 of W^u(z-) (shot forward
/// in the minus zone) or W^s(z+) (shot backward in the plus zone).
ManifoldPoint manifold_section_point(const TwoZoneSystem& sys, Manifold which, double t0,
                                     const HeteroclinicOptions& opts = {});

/// Delta(t0) = r^2 H0(z^u(t0)) - H0(z^s(t0)).
double delta_distance(const TwoZoneSystem& sys, double t0, const HeteroclinicOptions& opts = {});

struct HeteroclinicPoint {
  double t0 = 0.0;
  double slope = 0.0;      // dDelta/dt0
  PhaseState z_plus;       // on W^s(z+)
  PhaseState z_minus;      // on W^u(z-), z_plus / r
};

struct HeteroclinicSearch {
  std::vector<MelnikovSample> samples;  // Delta on the scan grid
  std::vector<HeteroclinicPoint> zeros;
};

/// Zeros of Delta over one period, scanned in parallel and refined by a
/// bracketing solver. NoZero if Delta keeps one sign or vanishes identically.
HeteroclinicSearch find_heteroclinic(const TwoZoneSystem& sys, const HeteroclinicOptions& opts = {});
/// Serial reference of find_heteroclinic.
HeteroclinicSearch find_heteroclinic_serial(const TwoZoneSystem& sys,
                                            const HeteroclinicOptions& opts = {});
/// find_heteroclinic with eps = eps_tilde delta and r = 1 - r_tilde delta.
HeteroclinicSearch find_heteroclinic_scaled(const TwoZoneSystem& sys, double eps_tilde,
                                            double r_tilde, double delta,
                                            const HeteroclinicOptions& opts = {});

/// rho = M(t_M) / (2 c1) for the heteroclinic Melnikov function.
double rho_heteroclinic(const TwoZoneSystem& sys, const MelnikovOptions& opts = {});

}  // namespace pwm
