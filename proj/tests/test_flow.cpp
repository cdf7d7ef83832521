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
#include <sstream>

#include "pwm/errors.hpp"
#include "pwm/flow.hpp"
#include "pwm/impact_map.hpp"
#include "pwm/melnikov.hpp"

using namespace pwm;

TEST_CASE("numeric flow matches the closed-form linear flow") {
  const auto sys = TwoZoneSystem::linear_block(5.0);
  FlowOptions tight = MelnikovOptions::tight_flow();
  for (Zone z : {Zone::Plus, Zone::Minus}) {
    const PhaseState start{0.0, 0.6 * sign_of(z), 0.4};
    std::vector<PhaseState> seen;
    SegmentRequest req;
    req.observer = [&](const PhaseState& p) { seen.push_back(p); };
    const auto tr = integrate_segment(sys, start, z, tight, req);
    REQUIRE(tr.reached_section);
    for (const auto& p : seen) {
      const auto ref = closed_form_flow_linear(sys, start, z, p.t);
      CHECK(std::abs(ref.x - p.x) < 1e-9);
      CHECK(std::abs(ref.y - p.y) < 1e-9);
    }
    // Transit time is half of alpha(0.6) = 2 ln(1.6 / 0.4).
    CHECK(tr.duration == doctest::Approx(std::log(1.6 / 0.4)).epsilon(1e-10));
    CHECK(tr.end.y == doctest::Approx(-0.6 * sign_of(z)).epsilon(1e-10));
  }
}

TEST_CASE("closed-form flow constants reproduce the start point") {
  const PhaseState p{0.3, -0.2, 0.7};
  const auto sys = TwoZoneSystem::linear_block(5.0);
  const auto q = closed_form_flow_linear(sys, p, Zone::Plus, p.t);
  CHECK(q.x == doctest::Approx(p.x));
  CHECK(q.y == doctest::Approx(p.y));
  CHECK_THROWS_AS(closed_form_flow_linear(sys.with_epsilon(0.1), p, Zone::Plus, 1.0), NumericalError);
}

TEST_CASE("backward integration retraces the forward transit") {
  const auto sys = TwoZoneSystem::linear_block(5.0, 0.01);
  const auto opts = MelnikovOptions::tight_flow();
  const auto fwd = integrate_zone(sys, {0.0, 0.7, 0.2}, Zone::Plus, opts);
  SegmentRequest back;
  back.direction = Direction::Backward;
  const auto bwd = integrate_segment(sys, fwd.end, Zone::Plus, opts, back);
  CHECK(bwd.end.t == doctest::Approx(0.2).epsilon(1e-9));
  CHECK(bwd.end.y == doctest::Approx(0.7).epsilon(1e-9));
}

TEST_CASE("energy is conserved by the unperturbed flow with r = 1") {
  const auto sys = TwoZoneSystem::nonlinear_block(0.4, 5.0);
  const auto traj = simulate(sys, {0.0, 0.5, 0.0}, 30.0, MelnikovOptions::tight_flow());
  const double h0 = eval_H0(sys, 0.0, 0.5);
  for (const auto& s : traj.samples) CHECK(std::abs(eval_H0(sys, s.state.x, s.state.y) - h0) < 1e-10);
  CHECK(traj.impacts.records.size() > 4);
}

TEST_CASE("restitution scales the velocity at each impact") {
  const auto sys = TwoZoneSystem::linear_block(5.0, 0.0, 0.9);
  const auto seq = impact_sequence(sys, 0.5, 0.0, 4);
  for (int i = 1; i <= 4; ++i)
    CHECK(std::abs(seq.records[i].y) == doctest::Approx(0.5 * std::pow(0.9, i)).epsilon(1e-9));
  CHECK_THROWS_AS(apply_restitution(0.9, {0.1, 1.0, 0.0}), NumericalError);
}

TEST_CASE("impact velocities alternate in sign") {
  const auto sys = TwoZoneSystem::linear_block(5.0, 0.01);
  const auto seq = impact_sequence(sys, 0.8, 0.3, 6);
  for (int i = 0; i <= 6; ++i) CHECK((seq.records[i].y > 0.0) == (i % 2 == 0));
}

TEST_CASE("an orbit started on the separatrix never returns") {
  const auto sys = TwoZoneSystem::linear_block(5.0);
  CHECK_THROWS_AS(integrate_zone(sys, {0.0, 1.0, 0.0}, Zone::Plus, {}), NumericalError);
  try {
    integrate_zone(sys, {0.0, 1.0, 0.0}, Zone::Plus, {});
  } catch (const NumericalError& e) {
    CHECK(e.kind() == Failure::NoCrossing);
  }
}

TEST_CASE("a tangential crossing is reported as grazing") {
  const auto sys = TwoZoneSystem::linear_block(5.0);
  FlowOptions opts;
  opts.graze_tol = 1e-3;
  try {
    integrate_zone(sys, {0.0, 5e-4, 0.0}, Zone::Plus, opts);
    FAIL("expected a grazing error");
  } catch (const NumericalError& e) {
    CHECK(e.kind() == Failure::GrazingImpact);
  }
}

TEST_CASE("dissipative map with r = 1 is the conservative map") {
  const auto cons = TwoZoneSystem::linear_block(5.0, 0.02, 1.0);
  const auto opts = MelnikovOptions::tight_flow();
  SectionPoint p{0.85, 0.1};
  const auto a = impact_map_P(cons, p, 2, opts);
  // Composition of the two half maps, no restitution involved.
  SectionPoint q = p;
  for (int i = 0; i < 2; ++i) q = impact_map_minus(cons, impact_map_plus(cons, q, opts), opts);
  CHECK(a.y == q.y);
  CHECK(a.t == q.t);
}

TEST_CASE("trajectory CSV rows carry zone and impact flag") {
  const auto sys = TwoZoneSystem::linear_block(5.0);
  const auto traj = simulate(sys, {0.0, 0.5, 0.0}, 3.0);
  std::ostringstream os;
  write_trajectory_csv(os, traj);
  const auto text = os.str();
  CHECK(text.find(",+,") != std::string::npos);
  CHECK(text.find(",-,1") != std::string::npos);
}
