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

// Acceptance checks 1-9. One PASS/FAIL line per criterion, nonzero exit if
// any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <numbers>
#include <string>
#include <vector>

#include "pwm/errors.hpp"
#include "pwm/flow.hpp"
#include "pwm/heteroclinic.hpp"
#include "pwm/impact_map.hpp"
#include "pwm/melnikov.hpp"
#include "pwm/orbits.hpp"

using namespace pwm;

namespace {

constexpr double kOmega = 5.0;

int failures = 0;

template <class... Args>
std::string strf(const char* format, Args... args) {
  char buf[1024];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void report(int id, bool pass, const std::string& detail) {
  std::printf("criterion %d: %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

const TwoZoneSystem& block() {
  static const auto sys = TwoZoneSystem::linear_block(kOmega);
  return sys;
}

double ybar() { return (std::exp(std::numbers::pi) - 1.0) / (std::exp(std::numbers::pi) + 1.0); }

void period_closed_form() {
  Stopwatch sw;
  double worst = 0.0;
  for (int k = 2; k <= 19; ++k) {
    const double y = 0.05 * k;
    worst = std::max(worst, std::abs(alpha(block(), y) - 2.0 * std::log((1.0 + y) / (1.0 - y))));
  }
  const double s = sw.seconds();
  report(1, worst < 1e-10 && s < 1.0, strf("max |alpha - 2 ln((1+y)/(1-y))| = %.3e (tol 1e-10), %.3f s (limit 1 s)", worst, s));
}

std::vector<MelnikovProfile> subharmonic_profiles() {
  Stopwatch sw;
  MelnikovOptions opts;
  opts.samples = 64;
  std::vector<MelnikovProfile> all;
  double worst1 = 0.0, worst_m = 0.0;
  for (int n : {3, 5, 7}) {
    for (int m : {1, 2, 3}) {
      if (std::gcd(n, m) != 1) continue;
      auto p = subharmonic_M(block(), n, m, opts);
      for (const auto& s : p.samples) {
        if (m == 1)
          worst1 = std::max(worst1, std::abs(s.value + 4.0 / (kOmega * kOmega + 1.0) * std::cos(kOmega * s.t0)));
        else
          worst_m = std::max(worst_m, std::abs(s.value));
      }
      all.push_back(std::move(p));
    }
  }
  const double s = sw.seconds();
  report(2, worst1 < 1e-8 && worst_m < 1e-8 && s < 30.0,
         strf("max |M^(n,1) - closed form| = %.3e, max |M^(n,m>1)| = %.3e (tol 1e-8), %zu profiles, %.2f s (limit 30 s)",
             worst1, worst_m, all.size(), s));
  return all;
}

void zero_mean(const std::vector<MelnikovProfile>& profiles) {
  double worst = 0.0;
  for (const auto& p : profiles) worst = std::max(worst, std::abs(mean_M(p)));
  report(3, !profiles.empty() && worst < 1e-8, strf("max |mean M| = %.3e over %zu profiles (tol 1e-8)", worst, profiles.size()));
}

void conservative_orbits() {
  Stopwatch sw;
  const double T = block().period();
  const double eps_target = 1.6565e-2;
  bool ok = true;
  std::string detail;
  for (double t_seed : {T / 4.0, 3.0 * T / 4.0}) {
    try {
      const auto start = find_periodic(block().with_epsilon(1e-3), {5, 1, ybar(), t_seed});
      const auto br = continue_in_epsilon(block(), start, eps_target);
      const auto& end = br.points.back().orbit;
      const auto v = verify_periodic(block().with_epsilon(end.epsilon), 5, 1, end.y0, end.t0);
      const bool pass = start.residual < 1e-10 && br.reached_target && v.impacts == 2 && v.closure_gap < 1e-8;
      ok = ok && pass;
      detail += strf("seed t=%.4f: residual %.1e, eps_end %.5e, impacts %d, gap %.1e; ", t_seed,
                    start.residual, end.epsilon, v.impacts, v.closure_gap);
    } catch (const NumericalError& e) {
      ok = false;
      detail += strf("seed t=%.4f: %s; ", t_seed, e.what());
    }
  }
  const double s = sw.seconds();
  report(4, ok && s < 120.0, detail + strf("%.1f s (limit 120 s)", s));
}

void dissipative_threshold() {
  const double r = rho(block(), 5, 1);
  double worst = 0.0;
  const double T = block().period();
  for (double q : {0.01, 0.03, 0.05, 0.07, 0.09}) {
    const double a = std::acos(-(kOmega * kOmega + 1.0) / 2.0 * ybar() * ybar() * q) / kOmega;
    const auto s = dissipative_seed(block(), 5, 1, q);
    worst = std::max({worst, std::abs(s[0] - a), std::abs(s[1] - (T - a))});
  }
  // Diagnostic: the shifted point t1 + T/2 is not a root of f.
  const double t1 = std::acos(-(kOmega * kOmega + 1.0) / 2.0 * ybar() * ybar() * 0.07) / kOmega;
  const double shifted = dissipative_f(block(), 5, 1, 0.07, t1 + T / 2.0);
  report(5, r >= 0.0910 && r <= 0.0918 && worst < 1e-10,
         strf("rho = %.10f (in [0.0910, 0.0918]), max seed error vs arccos = %.3e (tol 1e-10); "
              "f(t1 + T/2) = %.3e at ratio 0.07, second seed taken as T - t1",
              r, worst, shifted));
}

void dissipative_orbits() {
  Stopwatch sw;
  const double q = 0.07;
  const auto seeds = dissipative_seed(block(), 5, 1, q);
  // Targets are the fold values reported for this ratio; the criterion needs 0.8 and 3.0.
  const double targets[2] = {1.04, 4.125};
  const double needed[2] = {0.8, 3.0};
  bool ok = true;
  std::string detail;
  for (int k = 0; k < 2; ++k) {
    try {
      const auto start = find_periodic_dissipative(block(), {5, 1, ybar(), seeds[k]}, 1.0, q, 1e-3);
      const auto br = continue_in_delta(block(), start, 1e-3, targets[k], 1.0, q);
      const double reached = br.last_parameter();
      ok = ok && reached >= needed[k];
      detail += strf("seed %d: delta reached %.4f (need >= %.1f); ", k + 1, reached, needed[k]);
    } catch (const NumericalError& e) {
      ok = false;
      detail += strf("seed %d: %s; ", k + 1, e.what());
    }
  }
  const double s = sw.seconds();
  report(6, ok && s < 300.0, detail + strf("%.1f s (limit 300 s)", s));
}

void existence_tangency() {
  Stopwatch sw;
  const double r = rho(block(), 5, 1);
  const double h = 1e-6;
  const double slope = (epsilon_min_linear(h, 5, kOmega) - epsilon_min_linear(0.0, 5, kOmega)) / h;
  const double slope_err = std::abs(slope + 1.0 / r) * r;

  std::vector<double> ratios;
  for (double q = 0.0900; q < 0.0914; q += 0.0001) ratios.push_back(q);
  const auto curve = existence_curve(block(), 5, 1, ratios);
  // Lower envelope: the earlier of the two folds for every ratio.
  struct Pt { double R, eps; };
  std::vector<Pt> env;
  for (double q : ratios) {
    double best = 1e300;
    for (const auto& p : curve.points)
      if (p.ratio == q && p.found && p.folded) best = std::min(best, p.delta_end);
    if (best < 1e300) env.push_back({q * best, best});
  }
  std::sort(env.begin(), env.end(), [](const Pt& a, const Pt& b) { return a.R < b.R; });
  double worst = 0.0;
  int used = 0;
  for (const auto& p : env) {
    if (p.R > 0.02) continue;
    const double ref = std::abs(epsilon_min_linear(p.R, 5, kOmega));
    worst = std::max(worst, std::abs(p.eps - ref) / ref);
    ++used;
  }
  double fd_slope = 0.0;
  if (env.size() >= 2) fd_slope = -(env[1].eps - env[0].eps) / (env[1].R - env[0].R);
  const double fd_err = std::abs(fd_slope + 1.0 / r) * r;
  const double s = sw.seconds();
  report(7, slope_err < 0.01 && fd_err < 0.01 && used >= 4 && worst < 0.10,
         strf("closed-form slope %.6f vs -1/rho %.6f (rel %.2e), computed envelope slope %.6f (rel %.2e), "
             "tol 1%%; envelope vs closed form max rel %.2e over %d points with R <= 0.02 (tol 10%%), %.1f s",
             slope, -1.0 / r, slope_err, fd_slope, fd_err, worst, used, s));
}

void heteroclinic_splitting() {
  Stopwatch sw;
  const double eps = 1e-3;
  const auto sys = block().with_epsilon(eps);
  const double T = sys.period();
  bool ok = true;
  std::string detail;
  try {
    const auto res = find_heteroclinic(sys);
    double worst = 0.0;
    for (const auto& s : res.samples)
      worst = std::max(worst, std::abs(s.value / eps + 2.0 * std::cos(kOmega * s.t0) / (1.0 + kOmega * kOmega)));
    double zero_err = 1e300;
    for (const auto& z : res.zeros) zero_err = std::min(zero_err, std::abs(z.t0 - T / 4.0));
    ok = worst < 5e-3 && zero_err < 5e-3 * T;
    detail = strf("max |Delta/eps - closed form| = %.3e (tol 5e-3) over %zu points, |t_zero - T/4| = %.3e (tol %.3e); ",
                 worst, res.samples.size(), zero_err, 5e-3 * T);
  } catch (const NumericalError& e) {
    ok = false;
    detail = std::string(e.what()) + "; ";
  }
  const double s = sw.seconds();
  report(8, ok && s < 120.0, detail + strf("%.1f s (limit 120 s)", s));
}

void property_suite() {
  const auto tight = MelnikovOptions::tight_flow();
  // Energy bookkeeping over 2m impacts.
  double book = 0.0;
  for (double r : {1.0, 0.95}) {
    for (const auto& base : {TwoZoneSystem::linear_block(kOmega), TwoZoneSystem::nonlinear_block(0.3, kOmega)}) {
      const auto sys = base.with_parameters(0.01, r);
      const Integrand bracket = [&sys](Zone z, double x, double y, double t) { return poisson_bracket(sys, z, x, y, t); };
      const int m = 2;
      const auto seq = impact_sequence(sys, 0.8 * sys.separatrix_velocity(), 0.4, 2 * m, tight, &bracket);
      const double integral = std::accumulate(seq.segment_integrals.begin(), seq.segment_integrals.end(), 0.0);
      double sum = 0.0;
      for (int i = 0; i < 2 * m; ++i) sum += eval_H0(sys, 0.0, seq.records[i].y) - eval_H0(sys, 0.0, seq.records[i].y / r);
      const double lhs = eval_H0(sys, 0.0, seq.records[2 * m].y) - eval_H0(sys, 0.0, seq.records[0].y);
      book = std::max(book, std::abs(lhs - r * r * (sys.epsilon() * integral + sum)));
    }
  }
  // Energy change over one resonant period minus eps M.
  const double yb = resonant_velocity(block(), 5, 1);
  const double t0 = 0.1;
  const double M = subharmonic_M_at(block(), 5, 1, t0);
  std::vector<double> rem;
  for (double eps : {2e-3, 1e-3, 5e-4}) {
    const auto p = impact_map_P(block().with_epsilon(eps), {yb, t0}, 1, tight);
    rem.push_back(std::abs(0.5 * p.y * p.y - 0.5 * yb * yb - eps * M));
  }
  const double order = std::min(std::log2(rem[0] / rem[1]), std::log2(rem[1] / rem[2]));
  // Dissipative map at r = 1 against the composition of the half maps.
  const auto cons = TwoZoneSystem::linear_block(kOmega, 0.02, 1.0);
  const auto a = impact_map_P(cons, {0.85, 0.1}, 2, tight);
  SectionPoint q{0.85, 0.1};
  for (int i = 0; i < 2; ++i) q = impact_map_minus(cons, impact_map_plus(cons, q, tight), tight);
  const double map_gap = std::max(std::abs(a.y - q.y), std::abs(a.t - q.t));
  // Numeric against closed-form flow.
  double flow_err = 0.0;
  for (Zone z : {Zone::Plus, Zone::Minus}) {
    const PhaseState start{0.0, 0.6 * sign_of(z), 0.4};
    SegmentRequest req;
    req.observer = [&](const PhaseState& p) {
      const auto ref = closed_form_flow_linear(block(), start, z, p.t);
      flow_err = std::max({flow_err, std::abs(ref.x - p.x), std::abs(ref.y - p.y)});
    };
    integrate_segment(block(), start, z, tight, req);
  }
  report(9, book < 1e-7 && order >= 1.9 && map_gap == 0.0 && flow_err < 1e-9,
         strf("bookkeeping residual %.3e (tol 1e-7), remainder order %.3f (need >= 1.9), "
             "P_r=1 vs P gap %.1e (need 0), flow vs closed form %.3e (tol 1e-9)",
             book, order, map_gap, flow_err));
}

template <class F>
void guarded(int id, F&& check) {
  try {
    check();
  } catch (const std::exception& e) {
    report(id, false, std::string("unexpected error: ") + e.what());
  }
}

}  // namespace

int main() {
  guarded(1, period_closed_form);
  std::vector<MelnikovProfile> profiles;
  guarded(2, [&] { profiles = subharmonic_profiles(); });
  guarded(3, [&] { zero_mean(profiles); });
  guarded(4, conservative_orbits);
  guarded(5, dissipative_threshold);
  guarded(6, dissipative_orbits);
  guarded(7, existence_tangency);
  guarded(8, heteroclinic_splitting);
  guarded(9, property_suite);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
