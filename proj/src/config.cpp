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

#include "pwm/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "pwm/errors.hpp"

namespace pwm {

using nlohmann::json;

namespace {

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) throw ConfigError("unknown key '" + it.key() + "' in " + where);
}

template <typename T>
void read(const json& j, const char* key, T& out, const std::string& where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("bad value for '" + std::string(key) + "' in " + where);
  }
}

json to_json(const SystemSpec& s) {
  json j{{"model", s.model},     {"omega", s.omega},         {"epsilon", s.epsilon},
         {"restitution", s.restitution}, {"forcing", s.forcing}};
  if (s.model == "nonlinear_block") j["slenderness"] = s.slenderness;
  if (s.model == "polynomial") {
    j["potential_plus"] = s.potential_plus;
    j["potential_minus"] = s.potential_minus;
  }
  if (s.forcing == "multi_harmonic") j["k"] = s.k;
  if (s.forcing == "custom") {
    json h = json::array();
    for (const auto& x : s.harmonics) h.push_back({{"multiple", x.multiple}, {"amplitude", x.amplitude}});
    j["harmonics"] = h;
    j["position_coefficients"] = s.position_coefficients;
    j["velocity_coefficient"] = s.velocity_coefficient;
  }
  return j;
}

}  // namespace

RunConfig config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  check_keys(j, {"system", "tolerances", "output_dir", "threads", "seed"}, "config");
  RunConfig cfg;
  read(j, "output_dir", cfg.output_dir, "config");
  read(j, "threads", cfg.threads, "config");
  read(j, "seed", cfg.seed, "config");

  if (j.contains("system")) {
    const json& s = j.at("system");
    check_keys(s,
               {"model", "omega", "slenderness", "potential_plus", "potential_minus", "forcing", "k",
                "harmonics", "position_coefficients", "velocity_coefficient", "epsilon",
                "restitution"},
               "system");
    auto& sp = cfg.system;
    read(s, "model", sp.model, "system");
    read(s, "omega", sp.omega, "system");
    read(s, "slenderness", sp.slenderness, "system");
    read(s, "potential_plus", sp.potential_plus, "system");
    read(s, "potential_minus", sp.potential_minus, "system");
    read(s, "forcing", sp.forcing, "system");
    read(s, "k", sp.k, "system");
    read(s, "position_coefficients", sp.position_coefficients, "system");
    read(s, "velocity_coefficient", sp.velocity_coefficient, "system");
    read(s, "epsilon", sp.epsilon, "system");
    read(s, "restitution", sp.restitution, "system");
    if (s.contains("harmonics")) {
      if (!s.at("harmonics").is_array()) throw ConfigError("system.harmonics must be an array");
      for (const auto& h : s.at("harmonics")) {
        check_keys(h, {"multiple", "amplitude"}, "system.harmonics");
        Harmonic x;
        read(h, "multiple", x.multiple, "system.harmonics");
        read(h, "amplitude", x.amplitude, "system.harmonics");
        sp.harmonics.push_back(x);
      }
    }
  }
  if (j.contains("tolerances")) {
    const json& t = j.at("tolerances");
    check_keys(t,
               {"rtol", "atol", "graze_tol", "newton_tol", "verify_tol", "zero_tol",
                "melnikov_samples", "heteroclinic_samples"},
               "tolerances");
    auto& tl = cfg.tolerances;
    read(t, "rtol", tl.rtol, "tolerances");
    read(t, "atol", tl.atol, "tolerances");
    read(t, "graze_tol", tl.graze_tol, "tolerances");
    read(t, "newton_tol", tl.newton_tol, "tolerances");
    read(t, "verify_tol", tl.verify_tol, "tolerances");
    read(t, "zero_tol", tl.zero_tol, "tolerances");
    read(t, "melnikov_samples", tl.melnikov_samples, "tolerances");
    read(t, "heteroclinic_samples", tl.heteroclinic_samples, "tolerances");
  }
  validate(cfg);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return config_from_json(ss.str());
}

std::string config_to_json(const RunConfig& cfg) {
  const auto& t = cfg.tolerances;
  json j{{"system", to_json(cfg.system)},
         {"tolerances",
          {{"rtol", t.rtol},
           {"atol", t.atol},
           {"graze_tol", t.graze_tol},
           {"newton_tol", t.newton_tol},
           {"verify_tol", t.verify_tol},
           {"zero_tol", t.zero_tol},
           {"melnikov_samples", t.melnikov_samples},
           {"heteroclinic_samples", t.heteroclinic_samples}}},
         {"output_dir", cfg.output_dir},
         {"threads", cfg.threads},
         {"seed", cfg.seed}};
  return j.dump();
}

void validate(const RunConfig& cfg) {
  const auto& t = cfg.tolerances;
  for (double v : {t.rtol, t.atol, t.graze_tol, t.newton_tol, t.verify_tol, t.zero_tol})
    if (!(v > 0.0)) throw ConfigError("tolerances must be positive");
  if (t.melnikov_samples < 4 || t.heteroclinic_samples < 4)
    throw ConfigError("sample counts must be at least 4");
  if (cfg.threads < 1) throw ConfigError("threads must be at least 1");
  if (cfg.output_dir.empty()) throw ConfigError("output_dir must not be empty");
  const auto& s = cfg.system;
  if (!(s.omega > 0.0)) throw ConfigError("omega must be positive");
  if (!(s.restitution > 0.0 && s.restitution <= 1.0)) throw ConfigError("restitution must lie in (0, 1]");
  if (!(s.epsilon >= 0.0)) throw ConfigError("epsilon must be non-negative");
  build_system(s);
}

TwoZoneSystem build_system(const SystemSpec& s) {
  try {
    Perturbation pert = Perturbation::cos_forcing(s.omega);
    if (s.model == "nonlinear_block") {
      if (s.forcing != "cos")
        throw ConfigError("nonlinear_block uses its own forcing; set forcing to \"cos\"");
      return TwoZoneSystem::nonlinear_block(s.slenderness, s.omega, s.epsilon, s.restitution);
    }
    if (s.forcing == "multi_harmonic") {
      pert = Perturbation::multi_harmonic(s.omega, s.k);
    } else if (s.forcing == "custom") {
      pert = Perturbation::custom(s.omega, s.harmonics, s.position_coefficients,
                                  s.velocity_coefficient);
    } else if (s.forcing != "cos") {
      throw ConfigError("unknown forcing '" + s.forcing + "'");
    }
    if (s.model == "linear_block") return TwoZoneSystem::linear_block(pert, s.epsilon, s.restitution);
    if (s.model == "polynomial")
      return TwoZoneSystem(Potential::polynomial(s.potential_plus),
                           Potential::polynomial(s.potential_minus), pert, s.epsilon, s.restitution);
    throw ConfigError("unknown model '" + s.model + "'");
  } catch (const NumericalError& e) {
    throw ConfigError(std::string("invalid system: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid system: ") + e.what());
  }
}

FlowOptions flow_options(const Tolerances& tol) {
  FlowOptions f;
  f.rtol = tol.rtol;
  f.atol = tol.atol;
  f.graze_tol = tol.graze_tol;
  return f;
}

MelnikovOptions melnikov_options(const Tolerances& tol) {
  MelnikovOptions m;
  m.flow = flow_options(tol);
  m.samples = tol.melnikov_samples;
  m.zero_tol = tol.zero_tol;
  return m;
}

NewtonOptions newton_options(const Tolerances& tol) {
  NewtonOptions n;
  n.flow = flow_options(tol);
  n.tol = tol.newton_tol;
  n.verify_tol = tol.verify_tol;
  return n;
}

HeteroclinicOptions heteroclinic_options(const Tolerances& tol) {
  HeteroclinicOptions h;
  h.flow = flow_options(tol);
  h.samples = tol.heteroclinic_samples;
  return h;
}

}  // namespace pwm
