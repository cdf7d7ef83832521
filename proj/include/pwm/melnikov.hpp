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
#include <vector>

#include "pwm/flow.hpp"
#include "pwm/model.hpp"

namespace pwm {

struct MelnikovOptions {
  int samples = 256;           // uniform t0 samples per forcing period
  double zero_tol = 1e-8;      // below this everywhere the profile is identically zero
  double root_tol = 1e-12;     // bracket width of refined zeros
  double slope_step = 1e-5;    // central-difference step for dM/dt0
  double simple_slope = 1e-6;  // |slope| above this marks a zero simple
  FlowOptions flow = tight_flow();

  static FlowOptions tight_flow() {
    FlowOptions f;
    f.rtol = 1e-12;
    f.atol = 1e-12;
    return f;
  }
};

struct MelnikovSample {
  double t0 = 0.0;
  double value = 0.0;
};

struct MelnikovZero {
  double t0 = 0.0;
  double slope = 0.0;
  bool simple = false;
};

/// Sampled Melnikov function over one forcing period with its zeros.
struct MelnikovProfile {
  enum class Kind { Subharmonic, Heteroclinic };
  Kind kind = Kind::Subharmonic;
  int n = 0;
  int m = 0;
  double period = 0.0;
  double y0bar = 0.0;  // resonant section velocity (subharmonic only)
  std::vector<MelnikovSample> samples;
  std::vector<MelnikovZero> zeros;
  bool identically_zero = false;
};

/// Energy-increment kernel: integral over [0, m alpha(y0)] of {H0, H1}
/// along the unperturbed orbit through (0, y0), the forcing shifted by t0.
/// The integral is split at the unperturbed impact times.
double G_m(const TwoZoneSystem& sys, double y0, double t0, int m,
           const FlowOptions& flow = MelnikovOptions::tight_flow());

/// M^{n,m}(t0) = G_m(ybar, t0, m) with alpha(ybar) = n T / m.
double subharmonic_M_at(const TwoZoneSystem& sys, int n, int m, double t0,
                        const MelnikovOptions& opts = {});

/// Resonant velocity ybar = alpha^{-1}(n T / m). Requires gcd(n, m) = 1.
double resonant_velocity(const TwoZoneSystem& sys, int n, int m);

/// Profile of M^{n,m} on [0, T). The t0 samples are evaluated in parallel.
MelnikovProfile subharmonic_M(const TwoZoneSystem& sys, int n, int m,
                              const MelnikovOptions& opts = {});
/// Serial reference of subharmonic_M; results are bitwise identical.
MelnikovProfile subharmonic_M_serial(const TwoZoneSystem& sys, int n, int m,
                                     const MelnikovOptions& opts = {});

/// Average of a periodic profile over one period (periodic trapezoid rule).
double mean_M(const MelnikovProfile& profile);

/// Unperturbed upper heteroclinic connection W^u(z-) = W^s(z+) through
/// z0 = (0, sqrt(2 c1)), prepared for evaluating the heteroclinic Melnikov
/// function. Each half is shot from an offset eta off the saddle along its
/// eigenvector back to the switching line; the part of the orbit inside the
/// eta-neighbourhood is integrated on the linearization.
class HeteroclinicOrbit {
 public:
  explicit HeteroclinicOrbit(const TwoZoneSystem& sys,
                             const FlowOptions& flow = MelnikovOptions::tight_flow(),
                             double eta = 1e-6);

  /// M(t0) = integral over R of {H0, H1}(phi(t; t0, z0), t).
  double melnikov(double t0) const;

  /// Unperturbed travel time from the eta-offset point to z0 (per side).
  double travel_time(Zone z) const { return z == Zone::Plus ? travel_plus_ : travel_minus_; }
  double eta() const { return eta_; }

 private:
  double half_integral(Zone z, double t0) const;

  TwoZoneSystem sys_;
  FlowOptions flow_;
  double eta_;
  double travel_plus_ = 0.0;
  double travel_minus_ = 0.0;
};

/// Heteroclinic Melnikov profile (parallel over t0) and its serial reference.
MelnikovProfile heteroclinic_M(const TwoZoneSystem& sys, const MelnikovOptions& opts = {});
MelnikovProfile heteroclinic_M_serial(const TwoZoneSystem& sys, const MelnikovOptions& opts = {});

/// Locate sign changes of the sampled periodic profile and refine each with
/// a bracketing solver on `eval`; fills profile.zeros and identically_zero.
void locate_zeros(MelnikovProfile& profile, const std::function<double(double)>& eval,
                  const MelnikovOptions& opts);

/// Critical point of a Melnikov function used for the dissipative
/// thresholds: starting at the simple zero t_zero and moving in the
/// direction in which M increases, the first point where M' vanishes.
/// Generically this is the closest local maximum.
struct MelnikovPeak {
  double t = 0.0;
  double value = 0.0;
};

MelnikovPeak peak_after_zero(const std::function<double(double)>& eval, double t_zero,
                             double slope, double period, int grid = 256,
                             double slope_step = 1e-5);

}  // namespace pwm
