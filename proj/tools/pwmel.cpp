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

// pwmel: command-line front end of the pwmelnikov library.

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pwm/config.hpp"
#include "pwm/errors.hpp"
#include "pwm/flow.hpp"
#include "pwm/format.hpp"
#include "pwm/heteroclinic.hpp"
#include "pwm/impact_map.hpp"
#include "pwm/melnikov.hpp"
#include "pwm/orbits.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace pwm;

namespace {

constexpr int kExitNumerical = 1;
constexpr int kExitConfig = 2;

struct Context {
  RunConfig cfg;
  std::string command;
};

std::ofstream open_output(const Context& ctx, const std::string& name) {
  fs::path dir(ctx.cfg.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  std::ofstream out(dir / name);
  if (!out) throw ConfigError("cannot write '" + (dir / name).string() + "'");
  return out;
}

// Echo of the run configuration as CSV comment lines.
void csv_header(std::ostream& os, const Context& ctx, const json& params,
                const std::string& columns) {
  os << "# pwmel " << ctx.command << '\n';
  os << "# config: " << config_to_json(ctx.cfg) << '\n';
  os << "# params: " << params.dump() << '\n';
  os << columns << '\n';
}

void write_json(const Context& ctx, const std::string& name, const json& j) {
  auto out = open_output(ctx, name);
  out << j.dump(2) << '\n';
}

// Doubles go through the shortest round-trip formatter so JSON and CSV agree.
json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return json::parse(fmt(v));
}

json orbit_json(const OrbitSolution& s) {
  json hist = json::array();
  for (double h : s.residual_history) hist.push_back(num(h));
  return {{"n", s.n},
          {"m", s.m},
          {"y0", num(s.y0)},
          {"t0", num(s.t0)},
          {"epsilon", num(s.epsilon)},
          {"restitution", num(s.restitution)},
          {"residual", num(s.residual)},
          {"iterations", s.iterations},
          {"residual_history", hist},
          {"t0_pinned", s.t0_pinned},
          {"impacts_per_period", s.impacts_per_period},
          {"closure_gap", num(s.closure_gap)}};
}

void write_orbit_csv(const Context& ctx, const std::string& name, const TwoZoneSystem& sys,
                     const OrbitSolution& s, const json& params) {
  const auto traj = simulate(sys, {0.0, s.y0, s.t0}, s.t0 + s.n * sys.period(),
                             flow_options(ctx.cfg.tolerances), 4 * s.m + 4);
  auto out = open_output(ctx, name);
  csv_header(out, ctx, params, "t,x,y,zone,impact");
  write_trajectory_csv(out, traj);
}

void write_branch_csv(const Context& ctx, const std::string& name, const Branch& b,
                      const std::string& parameter, const json& params) {
  auto out = open_output(ctx, name);
  csv_header(out, ctx, params, parameter + ",y0,t0,epsilon,r,residual");
  for (const auto& p : b.points)
    out << fmt(p.parameter) << ',' << fmt(p.orbit.y0) << ',' << fmt(p.orbit.t0) << ','
        << fmt(p.orbit.epsilon) << ',' << fmt(p.orbit.restitution) << ',' << fmt(p.orbit.residual)
        << '\n';
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("bad number '" + item + "' in list");
    }
  }
  return out;
}

// Subcommands ----------------------------------------------------------------

struct SimulateArgs {
  double x0 = 0.0, y0 = 0.5, t0 = 0.0, t_end = 20.0;
  int max_impacts = 1000;
};

int cmd_simulate(const Context& ctx, const SimulateArgs& a) {
  if (a.x0 == 0.0 && a.y0 == 0.0) throw ConfigError("start point (0, 0) has no zone");
  if (!(a.t_end > a.t0)) throw ConfigError("--t-end must exceed --t0");
  const auto sys = build_system(ctx.cfg.system);
  const auto traj = simulate(sys, {a.x0, a.y0, a.t0}, a.t_end, flow_options(ctx.cfg.tolerances),
                             a.max_impacts);
  const json params{{"x0", num(a.x0)}, {"y0", num(a.y0)}, {"t0", num(a.t0)}, {"t_end", num(a.t_end)}};
  auto out = open_output(ctx, "trajectory.csv");
  csv_header(out, ctx, params, "t,x,y,zone,impact");
  write_trajectory_csv(out, traj);
  const json summary{{"impacts", static_cast<int>(traj.impacts.records.size()) - 1},
                     {"truncated", traj.impacts.truncated},
                     {"samples", traj.samples.size()},
                     {"end", {{"t", num(traj.samples.back().state.t)},
                              {"x", num(traj.samples.back().state.x)},
                              {"y", num(traj.samples.back().state.y)}}}};
  std::cout << summary.dump() << '\n';
  return 0;
}

struct PeriodArgs {
  std::vector<double> y;
  int n = 0, m = 1;
};

int cmd_period(const Context& ctx, const PeriodArgs& a) {
  const auto sys = build_system(ctx.cfg.system);
  json j;
  if (a.n > 0) {
    const double yb = resonant_velocity(sys, a.n, a.m);
    j = {{"n", a.n}, {"m", a.m}, {"target", num(a.n * sys.period() / a.m)}, {"y", num(yb)}};
  } else {
    if (a.y.empty()) throw ConfigError("period needs --y or --n");
    json rows = json::array();
    for (double y : a.y) {
      if (!(y > 0.0)) throw ConfigError("--y values must be positive");
      rows.push_back({{"y", num(y)}, {"alpha", num(alpha(sys, y))}});
    }
    j = rows.size() == 1 ? rows[0] : rows;
  }
  write_json(ctx, "period.json", j);
  std::cout << j.dump() << '\n';
  return 0;
}

struct MelnikovArgs {
  int n = 5, m = 1;
  bool heteroclinic = false;
};

json zeros_json(const MelnikovProfile& p) {
  json zs = json::array();
  for (const auto& z : p.zeros) zs.push_back({{"t0", num(z.t0)}, {"slope", num(z.slope)}, {"simple", z.simple}});
  return zs;
}

int cmd_melnikov(const Context& ctx, const MelnikovArgs& a) {
  const auto sys = build_system(ctx.cfg.system);
  const auto mo = melnikov_options(ctx.cfg.tolerances);
  MelnikovProfile p;
  std::string stem;
  json params;
  if (a.heteroclinic) {
    p = heteroclinic_M(sys, mo);
    stem = "melnikov_heteroclinic";
    params = {{"kind", "heteroclinic"}};
  } else {
    p = subharmonic_M(sys, a.n, a.m, mo);
    stem = "melnikov_n" + std::to_string(a.n) + "_m" + std::to_string(a.m);
    params = {{"kind", "subharmonic"}, {"n", a.n}, {"m", a.m}};
  }
  {
    auto out = open_output(ctx, stem + ".csv");
    csv_header(out, ctx, params, "t0,M");
    for (const auto& s : p.samples) out << fmt(s.t0) << ',' << fmt(s.value) << '\n';
  }
  json j = params;
  j["period"] = num(p.period);
  if (!a.heteroclinic) j["y0bar"] = num(p.y0bar);
  j["identically_zero"] = p.identically_zero;
  j["mean"] = num(mean_M(p));
  j["zeros"] = zeros_json(p);
  if (!p.identically_zero && !p.zeros.empty()) {
    try {
      j["rho"] = num(a.heteroclinic ? rho_heteroclinic(sys, mo) : rho(sys, a.n, a.m, mo));
    } catch (const NumericalError&) {
      j["rho"] = nullptr;
    }
  }
  write_json(ctx, stem + ".json", j);
  std::cout << j.dump() << '\n';
  return 0;
}

struct OrbitArgs {
  int n = 5, m = 1;
  double eps = 1e-3;
  double ratio = 0.0;
  double delta = 1e-3;
  double eps_tilde = 1.0;
  double start = 1e-3;
  int seed_zero = 1;
};

int cmd_find_orbit(const Context& ctx, const OrbitArgs& a) {
  if (a.seed_zero != 1 && a.seed_zero != 2) throw ConfigError("--seed-zero must be 1 or 2");
  const auto sys = build_system(ctx.cfg.system);
  const auto& tol = ctx.cfg.tolerances;
  const auto mo = melnikov_options(tol);
  const auto no = newton_options(tol);
  json params{{"n", a.n}, {"m", a.m}, {"seed_zero", a.seed_zero}};

  OrbitSolution sol;
  Branch branch;
  TwoZoneSystem final_sys = sys;
  std::string parameter;
  if (a.ratio > 0.0) {
    params["ratio"] = num(a.ratio);
    params["delta"] = num(a.delta);
    params["eps_tilde"] = num(a.eps_tilde);
    const auto seeds = dissipative_seed(sys, a.n, a.m, a.ratio, mo);
    const double yb = resonant_velocity(sys, a.n, a.m);
    const double d0 = std::min(a.delta, a.start);
    const double r_tilde = a.ratio * a.eps_tilde;
    const auto s0 = find_periodic_dissipative(sys, {a.n, a.m, yb, seeds[a.seed_zero - 1]},
                                              a.eps_tilde, r_tilde, d0, no);
    branch = continue_in_delta(sys, s0, d0, a.delta, a.eps_tilde, r_tilde, {}, no);
    parameter = "delta";
    if (!branch.reached_target)
      throw NumericalError(Failure::NoConvergence,
                           "branch folded at delta = " + fmt(branch.last_parameter()));
    final_sys = sys.with_parameters(a.eps_tilde * a.delta, 1.0 - r_tilde * a.delta);
  } else {
    params["eps"] = num(a.eps);
    const auto seeds = conservative_seeds(sys, a.n, a.m, mo);
    if (static_cast<int>(seeds.size()) < a.seed_zero)
      throw NumericalError(Failure::NoZero, "Melnikov function has fewer simple zeros than requested");
    const double e0 = std::min(a.eps, a.start);
    const auto s0 = find_periodic(sys.with_parameters(e0, 1.0), seeds[a.seed_zero - 1], no);
    branch = continue_in_epsilon(sys.with_parameters(e0, 1.0), s0, a.eps, {}, no);
    parameter = "epsilon";
    if (!branch.reached_target)
      throw NumericalError(Failure::NoConvergence,
                           "branch folded at epsilon = " + fmt(branch.last_parameter()));
    final_sys = sys.with_parameters(a.eps, 1.0);
  }
  sol = branch.points.back().orbit;
  write_orbit_csv(ctx, "orbit.csv", final_sys, sol, params);
  write_branch_csv(ctx, "branch.csv", branch, parameter, params);
  json j = orbit_json(sol);
  j["params"] = params;
  write_json(ctx, "orbit.json", j);
  std::cout << j.dump() << '\n';
  return 0;
}

struct ExistenceArgs {
  int n = 5;
  std::string ratios;
  std::string seeds = "1,2";
  double delta_max = 10.0;
  double delta_start = 1e-3;
};

void write_existence(const Context& ctx, const std::string& stem, const TwoZoneSystem& sys,
                     const ExistenceCurve& c, const json& params) {
  {
    auto out = open_output(ctx, stem + ".csv");
    csv_header(out, ctx, params, "ratio,seed,found,folded,delta_end,r,epsilon");
    for (const auto& p : c.points)
      out << fmt(p.ratio) << ',' << p.seed << ',' << (p.found ? 1 : 0) << ',' << (p.folded ? 1 : 0)
          << ',' << fmt(p.delta_end) << ',' << fmt(p.r) << ',' << fmt(p.epsilon) << '\n';
  }
  if (sys.is_linear_block() && sys.perturbation().kind() == Perturbation::Kind::CosForcing) {
    // Closed-form lower boundary and the tangent line 1 - r = rho eps.
    auto out = open_output(ctx, stem + "_bounds.csv");
    csv_header(out, ctx, params, "R,eps_min,eps_line");
    for (int k = 0; k <= 200; ++k) {
      const double R = 0.5 * k / 200.0;
      out << fmt(R) << ',' << fmt(std::abs(epsilon_min_linear(R, c.n, c.omega))) << ','
          << fmt(R / c.rho) << '\n';
    }
  }
}

ExistenceCurve run_existence(const TwoZoneSystem& sys, int n, const std::vector<double>& ratios,
                             const std::vector<int>& seeds, double delta_start, double delta_max,
                             const Tolerances& tol) {
  ExistenceOptions eo;
  eo.delta_start = delta_start;
  eo.delta_max = delta_max;
  eo.seeds = seeds;
  eo.newton = newton_options(tol);
  eo.melnikov = melnikov_options(tol);
  return existence_curve(sys, n, 1, ratios, eo);
}

std::vector<double> default_ratios(double rho_value) {
  std::vector<double> r;
  for (int k = 1; k <= 18; ++k) r.push_back(0.005 * k);
  for (double q : {0.0905, 0.0908, 0.091, 0.0912, 0.0913}) r.push_back(q);
  r.erase(std::remove_if(r.begin(), r.end(), [&](double q) { return q >= rho_value; }), r.end());
  std::sort(r.begin(), r.end());
  return r;
}

int cmd_existence(const Context& ctx, const ExistenceArgs& a) {
  const auto sys = build_system(ctx.cfg.system);
  std::vector<int> seeds;
  for (double s : parse_list(a.seeds)) {
    if (s != 1.0 && s != 2.0) throw ConfigError("--seeds entries must be 1 or 2");
    seeds.push_back(static_cast<int>(s));
  }
  const auto& tol = ctx.cfg.tolerances;
  const double rho_value = rho(sys, a.n, 1, melnikov_options(tol));
  const auto ratios = a.ratios.empty() ? default_ratios(rho_value) : parse_list(a.ratios);
  for (double q : ratios)
    if (!(q > 0.0)) throw ConfigError("ratios must be positive");
  const auto c = run_existence(sys, a.n, ratios, seeds, a.delta_start, a.delta_max, tol);
  const json params{{"n", a.n}, {"m", 1}, {"delta_start", num(a.delta_start)},
                    {"delta_max", num(a.delta_max)}, {"eps_tilde", 1}};
  write_existence(ctx, "existence_curve", sys, c, params);
  json j{{"n", a.n}, {"omega", num(c.omega)}, {"rho", num(c.rho)}, {"points", c.points.size()}};
  std::cout << j.dump() << '\n';
  return 0;
}

struct HeteroclinicArgs {
  double eps = 1e-3;
  double ratio = 0.0;
  double delta = 1e-2;
  double eps_tilde = 1.0;
};

int cmd_heteroclinic(const Context& ctx, const HeteroclinicArgs& a) {
  const auto base = build_system(ctx.cfg.system);
  const auto ho = heteroclinic_options(ctx.cfg.tolerances);
  TwoZoneSystem sys = base;
  json params;
  if (a.ratio > 0.0) {
    const double r = 1.0 - a.ratio * a.eps_tilde * a.delta;
    if (!(r > 0.0)) throw ConfigError("1 - ratio * eps_tilde * delta must be positive");
    sys = base.with_parameters(a.eps_tilde * a.delta, r);
    params = {{"ratio", num(a.ratio)}, {"delta", num(a.delta)}, {"eps_tilde", num(a.eps_tilde)}};
  } else {
    sys = base.with_epsilon(a.eps);
    params = {{"eps", num(a.eps)}, {"r", num(base.restitution())}};
  }
  const auto res = find_heteroclinic(sys, ho);
  {
    auto out = open_output(ctx, "heteroclinic_delta.csv");
    csv_header(out, ctx, params, "t0,Delta");
    for (const auto& s : res.samples) out << fmt(s.t0) << ',' << fmt(s.value) << '\n';
  }
  json zs = json::array();
  for (const auto& z : res.zeros)
    zs.push_back({{"t0", num(z.t0)},
                  {"slope", num(z.slope)},
                  {"z_plus", {num(z.z_plus.x), num(z.z_plus.y)}},
                  {"z_minus", {num(z.z_minus.x), num(z.z_minus.y)}}});
  json j{{"params", params}, {"epsilon", num(sys.epsilon())}, {"r", num(sys.restitution())}, {"zeros", zs}};
  try {
    j["rho"] = num(rho_heteroclinic(base, melnikov_options(ctx.cfg.tolerances)));
  } catch (const NumericalError&) {
    j["rho"] = nullptr;
  }
  write_json(ctx, "heteroclinic.json", j);
  std::cout << j.dump() << '\n';
  return 0;
}

// Figure datasets: linear block, n = 5, m = 1, omega = 5.

int reproduce_fig6(Context ctx) {
  ctx.cfg.system = SystemSpec{};
  const auto sys = build_system(ctx.cfg.system);
  const auto& tol = ctx.cfg.tolerances;
  const auto no = newton_options(tol);
  const double eps = 1.6565e-2;
  const auto seeds = conservative_seeds(sys, 5, 1, melnikov_options(tol));
  json sols = json::array();
  for (int i = 0; i < 2; ++i) {
    const json params{{"figure", "fig6"}, {"n", 5}, {"m", 1}, {"eps", num(eps)}, {"seed_zero", i + 1}};
    const auto s0 = find_periodic(sys.with_epsilon(1e-3), seeds[i], no);
    const auto br = continue_in_epsilon(sys, s0, eps, {}, no);
    if (!br.reached_target)
      throw NumericalError(Failure::NoConvergence, "fig6 branch folded at eps = " + fmt(br.last_parameter()));
    const auto& sol = br.points.back().orbit;
    write_orbit_csv(ctx, "fig6_orbit" + std::to_string(i + 1) + ".csv", sys.with_epsilon(eps), sol, params);
    sols.push_back(orbit_json(sol));
  }
  const json j{{"figure", "fig6"}, {"orbits", sols}};
  write_json(ctx, "fig6.json", j);
  std::cout << j.dump() << '\n';
  return 0;
}

int reproduce_fig7(Context ctx) {
  ctx.cfg.system = SystemSpec{};
  const auto sys = build_system(ctx.cfg.system);
  const auto& tol = ctx.cfg.tolerances;
  const auto no = newton_options(tol);
  const double ratio = 0.07, d0 = 1e-3, d_max = 10.0;
  const auto seeds = dissipative_seed(sys, 5, 1, ratio, melnikov_options(tol));
  const double yb = resonant_velocity(sys, 5, 1);
  json out = json::array();
  for (int i = 0; i < 2; ++i) {
    const json params{{"figure", "fig7"}, {"n", 5}, {"m", 1}, {"ratio", num(ratio)},
                      {"eps_tilde", 1}, {"seed_zero", i + 1}};
    const auto s0 = find_periodic_dissipative(sys, {5, 1, yb, seeds[i]}, 1.0, ratio, d0, no);
    const auto br = continue_in_delta(sys, s0, d0, d_max, 1.0, ratio, {}, no);
    const auto& last = br.points.back();
    const auto end_sys = sys.with_parameters(last.orbit.epsilon, last.orbit.restitution);
    write_orbit_csv(ctx, "fig7_orbit" + std::to_string(i + 1) + ".csv", end_sys, last.orbit, params);
    write_branch_csv(ctx, "fig7_branch" + std::to_string(i + 1) + ".csv", br, "delta", params);
    json o = orbit_json(last.orbit);
    o["seed_t0"] = num(seeds[i]);
    o["delta_end"] = num(last.parameter);
    o["folded"] = br.folded;
    out.push_back(o);
  }
  const json j{{"figure", "fig7"}, {"ratio", num(ratio)}, {"branches", out}};
  write_json(ctx, "fig7.json", j);
  std::cout << j.dump() << '\n';
  return 0;
}

int reproduce_fig8(Context ctx) {
  ctx.cfg.system = SystemSpec{};
  const auto sys = build_system(ctx.cfg.system);
  const auto& tol = ctx.cfg.tolerances;
  const double rho_value = rho(sys, 5, 1, melnikov_options(tol));
  const auto c = run_existence(sys, 5, default_ratios(rho_value), {1}, 1e-3, 10.0, tol);
  const json params{{"figure", "fig8"}, {"n", 5}, {"m", 1}, {"seed_zero", 1}, {"eps_tilde", 1}};
  write_existence(ctx, "fig8_existence", sys, c, params);
  const json j{{"figure", "fig8"}, {"rho", num(c.rho)}, {"points", c.points.size()}};
  write_json(ctx, "fig8.json", j);
  std::cout << j.dump() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pwmel: Melnikov analysis of impacting two-zone Hamiltonian systems"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, out_dir, model, forcing;
  double omega = 0, eps = 0, restitution = 0, slenderness = 0;
  int threads = 0, k = 0;
  auto* o_config = app.add_option("--config", config_path, "JSON config file");
  auto* o_out = app.add_option("--out", out_dir, "output directory");
  auto* o_threads = app.add_option("--threads", threads, "worker threads for sweeps");
  auto* o_model = app.add_option("--model", model, "linear_block | nonlinear_block | polynomial");
  auto* o_omega = app.add_option("--omega", omega, "forcing frequency");
  auto* o_eps = app.add_option("--epsilon", eps, "perturbation size");
  auto* o_r = app.add_option("--restitution", restitution, "restitution coefficient r");
  auto* o_slender = app.add_option("--slenderness", slenderness, "nonlinear block slenderness");
  auto* o_forcing = app.add_option("--forcing", forcing, "cos | multi_harmonic | custom");
  auto* o_k = app.add_option("--k", k, "second harmonic multiple (multi_harmonic)");

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "integrate one trajectory");
  c_sim->add_option("--x0", sim.x0);
  c_sim->add_option("--y0", sim.y0);
  c_sim->add_option("--t0", sim.t0);
  c_sim->add_option("--t-end", sim.t_end);
  c_sim->add_option("--max-impacts", sim.max_impacts);

  PeriodArgs per;
  auto* c_per = app.add_subcommand("period", "unperturbed period alpha(y) or its inverse");
  c_per->add_option("--y", per.y)->delimiter(',');
  c_per->add_option("--n", per.n, "resonance n (with --m) for the inverse");
  c_per->add_option("--m", per.m);

  MelnikovArgs mel;
  auto* c_mel = app.add_subcommand("melnikov", "Melnikov profile and zeros");
  c_mel->add_option("--n", mel.n);
  c_mel->add_option("--m", mel.m);
  c_mel->add_flag("--heteroclinic", mel.heteroclinic);

  OrbitArgs orb;
  auto* c_orb = app.add_subcommand("find-orbit", "(n,m)-periodic orbit by Newton and continuation");
  c_orb->add_option("--n", orb.n);
  c_orb->add_option("--m", orb.m);
  c_orb->add_option("--eps", orb.eps);
  c_orb->add_option("--ratio", orb.ratio, "r_tilde / eps_tilde (dissipative when > 0)");
  c_orb->add_option("--delta", orb.delta);
  c_orb->add_option("--eps-tilde", orb.eps_tilde);
  c_orb->add_option("--start", orb.start, "parameter at which continuation starts");
  c_orb->add_option("--seed-zero", orb.seed_zero)->check(CLI::IsMember({1, 2}));

  ExistenceArgs ex;
  auto* c_ex = app.add_subcommand("existence-curve", "existence boundary in the (r, eps) plane");
  c_ex->add_option("--n", ex.n);
  c_ex->add_option("--ratios", ex.ratios, "comma-separated r_tilde/eps_tilde values");
  c_ex->add_option("--seeds", ex.seeds);
  c_ex->add_option("--delta-max", ex.delta_max);
  c_ex->add_option("--delta-start", ex.delta_start);

  HeteroclinicArgs het;
  auto* c_het = app.add_subcommand("heteroclinic", "splitting distance and heteroclinic points");
  c_het->add_option("--eps", het.eps);
  c_het->add_option("--ratio", het.ratio);
  c_het->add_option("--delta", het.delta);
  c_het->add_option("--eps-tilde", het.eps_tilde);

  std::string figure;
  auto* c_rep = app.add_subcommand("reproduce", "regenerate a figure dataset");
  c_rep->add_option("figure", figure)->required()->check(CLI::IsMember({"fig6", "fig7", "fig8"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    Context ctx;
    if (o_config->count()) ctx.cfg = load_config(config_path);
    auto& s = ctx.cfg.system;
    if (o_out->count()) ctx.cfg.output_dir = out_dir;
    if (o_threads->count()) ctx.cfg.threads = threads;
    if (o_model->count()) s.model = model;
    if (o_omega->count()) s.omega = omega;
    if (o_eps->count()) s.epsilon = eps;
    if (o_r->count()) s.restitution = restitution;
    if (o_slender->count()) s.slenderness = slenderness;
    if (o_forcing->count()) s.forcing = forcing;
    if (o_k->count()) s.k = k;
    validate(ctx.cfg);
    omp_set_num_threads(ctx.cfg.threads);

    auto* sub = app.get_subcommands().front();
    ctx.command = sub->get_name();
    if (sub == c_sim) return cmd_simulate(ctx, sim);
    if (sub == c_per) return cmd_period(ctx, per);
    if (sub == c_mel) return cmd_melnikov(ctx, mel);
    if (sub == c_orb) return cmd_find_orbit(ctx, orb);
    if (sub == c_ex) return cmd_existence(ctx, ex);
    if (sub == c_het) return cmd_heteroclinic(ctx, het);
    ctx.command += " " + figure;
    if (figure == "fig6") return reproduce_fig6(ctx);
    if (figure == "fig7") return reproduce_fig7(ctx);
    return reproduce_fig8(ctx);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}
