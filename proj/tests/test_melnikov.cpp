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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pwm/errors.hpp"
#include "pwm/flow.hpp"
#include "pwm/impact_map.hpp"
#include "pwm/melnikov.hpp"

using namespace pwm;

namespace {

// M^{n,1} for the linear block, integrated by hand along the closed-form
// unperturbed orbit: in each zone y(t) = c1 e^t - c2 e^-t, bracket = -y cos(w(t+t0)).
double linear_M_by_segments(double omega, int n, double t0) {
  const double T = 2.0 * M_PI / omega;
  const double y0 = std::tanh(n * T / 4.0);
  const double half = n * T / 2.0;
  double total = 0.0;
  for (int seg = 0; seg < 2; ++seg) {
    const double s = seg == 0 ? 1.0 : -1.0;
    const double yb = s * y0;
    // Start at (0, yb) in zone with shift s: c1 = (yb - s)/2, c2 = (-yb - s)/2.
    const double c1 = 0.5 * (yb - s), c2 = 0.5 * (-yb - s);
    const double ts = t0 + seg * half;
    // int_0^half -(c1 e^u - c2 e^-u) cos(w(u + ts)) du, by parts in closed form.
    auto prim = [&](double u, double sign) {
      const double e = std::exp(sign * u);
      const double a = omega * (u + ts);
      return e * (sign * std::cos(a) + omega * std::sin(a)) / (1.0 + omega * omega);
    };
    total -= c1 * (prim(half, 1.0) - prim(0.0, 1.0)) - c2 * (prim(half, -1.0) - prim(0.0, -1.0));
  }
  return total;
}

}  // namespace

TEST_CASE("subharmonic Melnikov function of the linear block") {
  const auto sys = TwoZoneSystem::linear_block(5.0);
  for (int n : {3, 5, 7}) {
    for (double t0 : {0.0, 0.11, 0.5, 1.0}) {
      const double m = subharmonic_M_at(sys, n, 1, t0);
      CHECK(std::abs(m + 4.0 / 26.0 * std::cos(5.0 * t0)) < 1e-9);
      CHECK(std::abs(m - linear_M_by_segments(5.0, n, t0)) < 1e-9);
    }
  }
}

TEST_CASE("Melnikov functions for m > 1 vanish under cos forcing") {
  const auto sys = TwoZoneSystem::linear_block(5.0);
  MelnikovOptions opts;
  opts.samples = 32;
  for (int m : {2, 3}) {
    const auto p = subharmonic_M(sys, 5, m, opts);
    CHECK(p.identically_zero);
    CHECK(p.zeros.empty());
    for (const auto& s : p.samples) CHECK(std::abs(s.value) < 1e-8);
  }
}

TEST_CASE("zeros of M^{5,1} are simple and sit at T/4 and 3T/4") {
  const auto sys = TwoZoneSystem::linear_block(5.0);
  const auto p = subharmonic_M(sys, 5, 1);
  REQUIRE(p.zeros.size() == 2);
  CHECK(p.zeros[0].t0 == doctest::Approx(p.period / 4.0).epsilon(1e-11));
  CHECK(p.zeros[1].t0 == doctest::Approx(3.0 * p.period / 4.0).epsilon(1e-11));
  CHECK(p.zeros[0].simple);
  CHECK(p.zeros[0].slope == doctest::Approx(20.0 / 26.0).epsilon(1e-6));
  CHECK(p.zeros[1].slope == doctest::Approx(-20.0 / 26.0).epsilon(1e-6));
  CHECK(std::abs(mean_M(p)) < 1e-10);
}

TEST_CASE("Melnikov functions have zero mean") {
  MelnikovOptions opts;
  opts.samples = 64;
  const auto nl = TwoZoneSystem::nonlinear_block(0.3, 5.0);
  CHECK(std::abs(mean_M(subharmonic_M(nl, 5, 1, opts))) < 1e-8);
  const auto mh = TwoZoneSystem::linear_block(Perturbation::multi_harmonic(5.0, 3));
  CHECK(std::abs(mean_M(subharmonic_M(mh, 5, 3, opts))) < 1e-8);
}

TEST_CASE("a third harmonic gives simple zeros for m = 3") {
  const auto sys = TwoZoneSystem::linear_block(Perturbation::multi_harmonic(5.0, 3));
  MelnikovOptions opts;
  opts.samples = 64;
  for (int n : {5, 7}) {
    const auto p = subharmonic_M(sys, n, 3, opts);
    CHECK_FALSE(p.identically_zero);
    CHECK(std::any_of(p.zeros.begin(), p.zeros.end(), [](const MelnikovZero& z) { return z.simple; }));
  }
}

TEST_CASE("parallel and serial profiles are bitwise identical") {
  const auto sys = TwoZoneSystem::nonlinear_block(0.3, 5.0);
  MelnikovOptions opts;
  opts.samples = 48;
  const auto a = subharmonic_M(sys, 5, 1, opts);
  const auto b = subharmonic_M_serial(sys, 5, 1, opts);
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t k = 0; k < a.samples.size(); ++k) CHECK(a.samples[k].value == b.samples[k].value);
  REQUIRE(a.zeros.size() == b.zeros.size());
  for (std::size_t k = 0; k < a.zeros.size(); ++k) CHECK(a.zeros[k].t0 == b.zeros[k].t0);

  const auto lin = TwoZoneSystem::linear_block(5.0);
  const auto h1 = heteroclinic_M(lin, opts);
  const auto h2 = heteroclinic_M_serial(lin, opts);
  for (std::size_t k = 0; k < h1.samples.size(); ++k) CHECK(h1.samples[k].value == h2.samples[k].value);
}

TEST_CASE("nonlinear block zeros converge under grid refinement") {
  const auto sys = TwoZoneSystem::nonlinear_block(0.3, 5.0);
  MelnikovOptions coarse, fine;
  coarse.samples = 32;
  fine.samples = 128;
  const auto a = subharmonic_M(sys, 5, 1, coarse);
  const auto b = subharmonic_M(sys, 5, 1, fine);
  REQUIRE(a.zeros.size() == b.zeros.size());
  for (std::size_t k = 0; k < a.zeros.size(); ++k) CHECK(a.zeros[k].t0 == doctest::Approx(b.zeros[k].t0).epsilon(1e-10));
}

TEST_CASE("heteroclinic Melnikov function of the linear block") {
  const auto sys = TwoZoneSystem::linear_block(5.0);
  const HeteroclinicOrbit orbit(sys);
  for (double t0 : {0.0, 0.2, 0.9}) CHECK(std::abs(orbit.melnikov(t0) + 2.0 / 26.0 * std::cos(5.0 * t0)) < 1e-10);
  CHECK(orbit.travel_time(Zone::Plus) > 10.0);
}

TEST_CASE("peak search walks to the nearest maximum") {
  auto f = [](double t) { return -std::cos(t); };
  const auto up = peak_after_zero(f, M_PI / 2.0, 1.0, 2.0 * M_PI);
  CHECK(up.t == doctest::Approx(M_PI).epsilon(1e-9));
  CHECK(up.value == doctest::Approx(1.0));
  const auto down = peak_after_zero(f, 3.0 * M_PI / 2.0, -1.0, 2.0 * M_PI);
  CHECK(down.t == doctest::Approx(M_PI).epsilon(1e-9));
}

TEST_CASE("energy bookkeeping over 2m impacts") {
  // H0 after 2m impacts - H0 before = r^2 [eps I + sum_i (H0(0, y_i) - H0(0, y_i / r))].
  for (double r : {1.0, 0.95}) {
    for (const auto& base : {TwoZoneSystem::linear_block(5.0), TwoZoneSystem::nonlinear_block(0.3, 5.0)}) {
      const auto sys = base.with_parameters(0.01, r);
      const Integrand bracket = [&sys](Zone z, double x, double y, double t) { return poisson_bracket(sys, z, x, y, t); };
      const int m = 2;
      const auto seq = impact_sequence(sys, 0.8 * sys.separatrix_velocity(), 0.4, 2 * m,
                                       MelnikovOptions::tight_flow(), &bracket);
      const double integral = std::accumulate(seq.segment_integrals.begin(), seq.segment_integrals.end(), 0.0);
      double sum = 0.0;
      for (int i = 0; i < 2 * m; ++i) {
        const double y = seq.records[i].y;
        sum += eval_H0(sys, 0.0, y) - eval_H0(sys, 0.0, y / r);
      }
      const double lhs = eval_H0(sys, 0.0, seq.records[2 * m].y) - eval_H0(sys, 0.0, seq.records[0].y);
      CHECK(std::abs(lhs - r * r * (sys.epsilon() * integral + sum)) < 1e-10);
    }
  }
}

TEST_CASE("energy change over one resonant period is eps M + O(eps^2)") {
  const auto base = TwoZoneSystem::linear_block(5.0);
  const double t0 = 0.1;
  const double yb = resonant_velocity(base, 5, 1);
  const double M = subharmonic_M_at(base, 5, 1, t0);
  std::vector<double> rem;
  for (double eps : {2e-3, 1e-3, 5e-4}) {
    const auto p = impact_map_P(base.with_epsilon(eps), {yb, t0}, 1, MelnikovOptions::tight_flow());
    rem.push_back(std::abs(0.5 * p.y * p.y - 0.5 * yb * yb - eps * M));
  }
  CHECK(std::log2(rem[0] / rem[1]) > 1.9);
  CHECK(std::log2(rem[1] / rem[2]) > 1.9);
}

TEST_CASE("resonant velocity requires coprime n, m") {
  const auto sys = TwoZoneSystem::linear_block(5.0);
  CHECK_THROWS_AS(resonant_velocity(sys, 4, 2), NumericalError);
  CHECK(resonant_velocity(sys, 5, 1) == doctest::Approx(std::tanh(M_PI / 2.0)));
}
