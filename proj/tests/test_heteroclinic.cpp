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

#include <cmath>

#include "pwm/errors.hpp"
#include "pwm/heteroclinic.hpp"

using namespace pwm;

namespace {

const TwoZoneSystem& block() {
  static const auto sys = TwoZoneSystem::linear_block(5.0);
  return sys;
}

double closed_M(double t0) { return -2.0 / 26.0 * std::cos(5.0 * t0); }

}  // namespace

TEST_CASE("saddle periodic orbit") {
  const auto z0 = saddle_periodic_orbit(block(), Zone::Plus, 0.3);
  CHECK(z0.point.x == 1.0);
  CHECK(z0.point.y == 0.0);
  CHECK(z0.mu_unstable == doctest::Approx(std::exp(block().period())).epsilon(1e-6));

  const double eps = 1e-3, w = 5.0;
  const auto sys = block().with_epsilon(eps);
  for (double t0 : {0.0, 0.7}) {
    const auto z = saddle_periodic_orbit(sys, Zone::Plus, t0);
    CHECK(z.residual < 1e-12);
    // Forced linear saddle: x = 1 + eps cos(wt)/(1+w^2), y = -eps w sin(wt)/(1+w^2).
    CHECK(z.point.x == doctest::Approx(1.0 + eps * std::cos(w * t0) / 26.0).epsilon(1e-12));
    CHECK(std::abs(z.point.y + eps * w * std::sin(w * t0) / 26.0) < 1e-12);
    CHECK(std::abs(z.point.x - 1.0) < 5e-3);
    const double h0 = eval_H0(sys, Zone::Plus, z.point.x, z.point.y);
    CHECK(std::abs(h0 - 0.5) < 10.0 * eps * eps);
    const auto zm = saddle_periodic_orbit(sys, Zone::Minus, t0);
    CHECK(zm.point.x == doctest::Approx(-1.0 + eps * std::cos(w * t0) / 26.0).epsilon(1e-12));
  }
}

TEST_CASE("unperturbed manifolds meet the switching line at (0, sqrt(2 c1))") {
  for (const auto& sys : {block(), TwoZoneSystem::nonlinear_block(0.4, 5.0)}) {
    const double v = sys.separatrix_velocity();
    const auto u = manifold_section_point(sys, Manifold::UnstableMinus, 0.2);
    const auto s = manifold_section_point(sys, Manifold::StablePlus, 0.2);
    CHECK(u.point.y == doctest::Approx(v).epsilon(1e-9));
    CHECK(s.point.y == doctest::Approx(v).epsilon(1e-9));
    CHECK(u.point.t == doctest::Approx(0.2).epsilon(1e-9));
    CHECK(std::abs(delta_distance(sys, 0.2)) < 1e-12);
  }
}

TEST_CASE("manifold points are eps-close to z0 and linearization is accurate") {
  HeteroclinicOptions opts;
  opts.check_linearization = true;
  const auto sys = TwoZoneSystem::nonlinear_block(0.4, 5.0, 1e-3);
  for (auto which : {Manifold::UnstableMinus, Manifold::StablePlus}) {
    const auto p = manifold_section_point(sys, which, 0.5, opts);
    CHECK(std::abs(p.point.y - sys.separatrix_velocity()) < 1e-2);
    CHECK(p.linearization < 1e-9);
  }
}

TEST_CASE("splitting distance over eps matches the Melnikov function") {
  const auto sys = block().with_epsilon(1e-3);
  for (double t0 : {0.0, 0.3, 0.8, 1.1}) CHECK(std::abs(delta_distance(sys, t0) / 1e-3 - closed_M(t0)) < 5e-3);
}

TEST_CASE("splitting distance remainder is second order in eps") {
  const double t0 = 0.3;
  std::vector<double> rem;
  for (double eps : {4e-3, 2e-3, 1e-3}) rem.push_back(std::abs(delta_distance(block().with_epsilon(eps), t0) - eps * closed_M(t0)));
  CHECK(std::log2(rem[0] / rem[1]) > 1.9);
  CHECK(std::log2(rem[1] / rem[2]) > 1.9);
}

TEST_CASE("dissipative splitting distance scales with delta") {
  // Delta(t0, eps_t delta, 1 - r_t delta) / delta -> -2 r_t c1 + eps_t M(t0).
  const double et = 1.0, rt = 0.03, t0 = 0.4;
  const double limit = -2.0 * rt * 0.5 + et * closed_M(t0);
  std::vector<double> err;
  for (double d : {4e-3, 2e-3, 1e-3}) {
    const auto sys = block().with_parameters(et * d, 1.0 - rt * d);
    err.push_back(std::abs(delta_distance(sys, t0) / d - limit));
  }
  CHECK(err[1] < err[0]);
  CHECK(err[2] < err[1]);
  // Richardson extrapolation removes the O(delta) term.
  CHECK(std::abs(2.0 * err[2] - err[1]) < 0.1 * err[2] + 1e-8);
}

TEST_CASE("heteroclinic point near T/4 for r = 1") {
  const auto sys = block().with_epsilon(1e-3);
  const auto res = find_heteroclinic(sys);
  REQUIRE(res.zeros.size() == 2);
  const double T = sys.period();
  CHECK(std::abs(res.zeros[0].t0 - T / 4.0) < 5e-3 * T);
  CHECK(res.zeros[0].z_plus.y == doctest::Approx(res.zeros[0].z_minus.y).epsilon(1e-9));

  const auto ser = find_heteroclinic_serial(sys);
  for (std::size_t k = 0; k < res.samples.size(); ++k) CHECK(res.samples[k].value == ser.samples[k].value);
  CHECK(res.zeros[0].t0 == ser.zeros[0].t0);
}

TEST_CASE("dissipative heteroclinic points satisfy z- = z+ / r") {
  const auto res = find_heteroclinic_scaled(block(), 1.0, 0.03, 1e-2);
  REQUIRE_FALSE(res.zeros.empty());
  const double r = 1.0 - 0.03 * 1e-2;
  for (const auto& z : res.zeros) CHECK(z.z_minus.y == doctest::Approx(z.z_plus.y / r).epsilon(1e-9));
}

TEST_CASE("degenerate splitting and rho_het") {
  try {
    find_heteroclinic(block());
    FAIL("expected NoZero");
  } catch (const NumericalError& e) {
    CHECK(e.kind() == Failure::NoZero);
  }
  CHECK(rho_heteroclinic(block()) == doctest::Approx(2.0 / 26.0).epsilon(1e-9));
  // Above rho_het the dissipation wins: no intersection.
  CHECK_THROWS_AS(find_heteroclinic_scaled(block(), 1.0, 0.2, 1e-2), NumericalError);
}
