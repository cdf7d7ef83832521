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
#include <functional>
#include <vector>

#include "pwm/flow.hpp"
#include "pwm/melnikov.hpp"
#include "pwm/model.hpp"

namespace pwm {

struct OrbitSpec {
  int n = 1;
  int m = 1;
  double y0 = 0.0;  // seed velocity on the switching line
  double t0 = 0.0;  // seed phase
};

struct NewtonOptions {
  double tol = 1e-10;        // max-norm of the residual
  int max_iter = 50;
  double fd_step = 1e-7;     // relative and absolute floor of the Jacobian step
  int max_halvings = 12;
  double verify_tol = 1e-8;  // closure gap of the forward re-integration
  FlowOptions flow = MelnikovOptions::tight_flow();
};

struct OrbitSolution {
  int n = 1;
  int m = 1;
  double y0 = 0.0;
  double t0 = 0.0;
  double epsilon = 0.0;
  double restitution = 1.0;
  double residual = 0.0;
  int iterations = 0;
  std::vector<double> residual_history;  // max-norm before each iteration and at exit
  bool t0_pinned = false;                // unperturbed case: phase held at the seed
  int impacts_per_period = 0;
  double closure_gap = 0.0;
};

/// (H0(0, y after 2m impacts) - H0(0, y0), t after 2m impacts - t0 - nT).
/// With r < 1 the impacts include the restitution, so this is the residual of
/// the dissipative map. Flow failures are reported as ResidualUnavailable.
std::array<double, 2> periodic_residual(const TwoZoneSystem& sys, double y0, double t0, int n,
                                        int m, const FlowOptions& flow = MelnikovOptions::tight_flow());

/// Damped Newton on periodic_residual from the seed in `spec`, followed by
/// verification by forward integration over nT.
OrbitSolution find_periodic(const TwoZoneSystem& sys, const OrbitSpec& spec,
                            const NewtonOptions& opts = {});

/// find_periodic for eps = eps_tilde * delta and r = 1 - r_tilde * delta.
OrbitSolution find_periodic_dissipative(const TwoZoneSystem& sys, const OrbitSpec& spec,
                                        double eps_tilde, double r_tilde, double delta,
                                        const NewtonOptions& opts = {});

struct Verification {
  int impacts = 0;
  double closure_gap = 0.0;
};

/// Integrates (0, y0, t0) over nT and measures the return to the start.
Verification verify_periodic(const TwoZoneSystem& sys, int n, int m, double y0, double t0,
                             const FlowOptions& flow = MelnikovOptions::tight_flow());

/// Conservative seeds: (ybar, t) for every simple zero t of M^{n,m}.
std::vector<OrbitSpec> conservative_seeds(const TwoZoneSystem& sys, int n, int m,
                                          const MelnikovOptions& opts = {});

/// rho = M(t_M) / (2 m ybar^2), t_M the critical point reached from the
/// first simple zero of M^{n,m} moving in the direction in which M grows.
double rho(const TwoZoneSystem& sys, int n, int m, const MelnikovOptions& opts = {});

/// f(t0) = -2 m ratio ybar^2 + M^{n,m}(t0) (eps_tilde scaled to one).
double dissipative_f(const TwoZoneSystem& sys, int n, int m, double ratio, double t0,
                     const MelnikovOptions& opts = {});

/// Zeros of f between the first simple zero of M and the peak t_M on either
/// side of it, ordered by phase in [0, T). NoSeed if ratio >= rho.
std::vector<double> dissipative_seed(const TwoZoneSystem& sys, int n, int m, double ratio,
                                     const MelnikovOptions& opts = {});

// Continuation.

struct ContinuationOptions {
  double initial_step = 1e-2;
  double min_step = 1e-6;
  double max_step = 0.1;
  double grow = 1.3;
  int fold_failures = 3;     // consecutive failures at min_step that end a branch
  int max_points = 20000;
  double max_jump_y = 0.05;  // corrector may not move y0 further than this from the predictor
  double max_jump_t = 0.05;  // ... nor t0 further than this fraction of T
};

struct BranchPoint {
  double parameter = 0.0;
  OrbitSolution orbit;
};

struct Branch {
  std::vector<BranchPoint> points;
  bool reached_target = false;
  bool folded = false;
  double last_parameter() const { return points.empty() ? 0.0 : points.back().parameter; }
};

/// Natural-parameter continuation of a periodic orbit in a scalar parameter p
/// with secant prediction. `family(p)` builds the system at p; `start` must
/// be a solution at p_start.
Branch continue_orbit(const std::function<TwoZoneSystem(double)>& family,
                      const OrbitSolution& start, double p_start, double p_target,
                      const ContinuationOptions& copts = {}, const NewtonOptions& nopts = {});

/// Continuation in eps of a conservative orbit.
Branch continue_in_epsilon(const TwoZoneSystem& sys, const OrbitSolution& start, double eps_target,
                           const ContinuationOptions& copts = {},
                           const NewtonOptions& nopts = {});

/// Continuation in delta along eps = eps_tilde delta, r = 1 - r_tilde delta.
Branch continue_in_delta(const TwoZoneSystem& sys, const OrbitSolution& start, double delta_start,
                         double delta_target, double eps_tilde, double r_tilde,
                         const ContinuationOptions& copts = {},
                         const NewtonOptions& nopts = {});

struct ExistencePoint {
  double ratio = 0.0;
  int seed = 0;              // 1 or 2
  bool found = false;        // a starting orbit was obtained
  bool folded = false;       // the branch ended before delta_max
  double delta_end = 0.0;
  double r = 1.0;            // (r, eps) at the end of the branch
  double epsilon = 0.0;
};

struct ExistenceCurve {
  int n = 1;
  int m = 1;
  double omega = 0.0;
  double eps_tilde = 1.0;
  double rho = 0.0;
  double delta_start = 0.0;
  double delta_max = 0.0;
  std::vector<ExistencePoint> points;
};

struct ExistenceOptions {
  double eps_tilde = 1.0;
  double delta_start = 1e-3;
  double delta_max = 10.0;
  std::vector<int> seeds{1, 2};  // which dissipative seeds to continue
  ContinuationOptions continuation;
  NewtonOptions newton;
  MelnikovOptions melnikov;
};

/// For every ratio r_tilde / eps_tilde in (0, rho) and both seeds, continues
/// the dissipative orbit in delta until it folds. Ratios are swept in parallel.
ExistenceCurve existence_curve(const TwoZoneSystem& sys, int n, int m,
                               const std::vector<double>& ratios,
                               const ExistenceOptions& opts = {});
/// Serial reference of existence_curve.
ExistenceCurve existence_curve_serial(const TwoZoneSystem& sys, int n, int m,
                                      const std::vector<double>& ratios,
                                      const ExistenceOptions& opts = {});

/// Lower existence boundary of the (n,1) orbits of the linear block in the
/// (R = 1 - r, eps) plane, signed as in its closed form (negative for R > 0).
double epsilon_min_linear(double R, int n, double omega);

}  // namespace pwm
