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

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

namespace pwm {

/// Dormand-Prince 5(4) embedded pair. Only the trial step lives here; step
/// control and event handling are done by the zone driver in flow.cpp.
namespace dp45 {

template <std::size_t N>
using Vec = std::array<double, N>;

template <std::size_t N>
struct Trial {
  Vec<N> state;
  double error = 0.0;  // scaled RMS error of the first `controlled` components
};

// Butcher tableau.
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
inline constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b - b_hat
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

/// One trial step of size h (h may be negative). `f(t, y, dydt)`.
template <std::size_t N, class Rhs>
Trial<N> step(Rhs&& f, double t, const Vec<N>& y, double h, std::size_t controlled,
              double rtol, double atol) {
  Vec<N> k1, k2, k3, k4, k5, k6, k7, tmp;
  f(t, y, k1);
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * a21 * k1[i];
  f(t + c2 * h, tmp, k2);
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
  f(t + c3 * h, tmp, k3);
  for (std::size_t i = 0; i < N; ++i)
    tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
  f(t + c4 * h, tmp, k4);
  for (std::size_t i = 0; i < N; ++i)
    tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
  f(t + c5 * h, tmp, k5);
  for (std::size_t i = 0; i < N; ++i)
    tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
  f(t + h, tmp, k6);
  Trial<N> out;
  for (std::size_t i = 0; i < N; ++i)
    out.state[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
  f(t + h, out.state, k7);

  double acc = 0.0;
  const std::size_t nc = std::min(controlled, N);
  for (std::size_t i = 0; i < nc; ++i) {
    const double err =
        h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
    const double scale = atol + rtol * std::max(std::abs(y[i]), std::abs(out.state[i]));
    acc += (err / scale) * (err / scale);
  }
  out.error = nc ? std::sqrt(acc / double(nc)) : 0.0;
  return out;
}

/// Standard step-size update for a fifth-order pair.
inline double next_step(double h, double error) {
  constexpr double kSafety = 0.9, kMinFactor = 0.2, kMaxFactor = 5.0;
  if (error == 0.0) return h * kMaxFactor;
  const double factor = std::clamp(kSafety * std::pow(error, -0.2), kMinFactor, kMaxFactor);
  return h * factor;
}

}  // namespace dp45
}  // namespace pwm
