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

#include "pwm/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "pwm/errors.hpp"

namespace pwm {

Zone zone_of(double x, double y) {
  if (x > 0.0) return Zone::Plus;
  if (x < 0.0) return Zone::Minus;
  if (y > 0.0) return Zone::Plus;
  if (y < 0.0) return Zone::Minus;
  throw NumericalError(Failure::Domain, "fold point (0, 0) belongs to no zone");
}

// ---------------------------------------------------------------- Potential

Potential Potential::linear_block_plus() { return Potential(Kind::LinearBlockPlus, 0.0, {}); }
Potential Potential::linear_block_minus() { return Potential(Kind::LinearBlockMinus, 0.0, {}); }

Potential Potential::nonlinear_block_plus(double slenderness) {
  if (!(slenderness > 0.0) || slenderness >= std::numbers::pi / 2)
    throw ConfigError("nonlinear block slenderness must lie in (0, pi/2)");
  return Potential(Kind::NonlinearBlockPlus, slenderness, {});
}

Potential Potential::nonlinear_block_minus(double slenderness) {
  if (!(slenderness > 0.0) || slenderness >= std::numbers::pi / 2)
    throw ConfigError("nonlinear block slenderness must lie in (0, pi/2)");
  return Potential(Kind::NonlinearBlockMinus, slenderness, {});
}

Potential Potential::polynomial(std::vector<double> coefficients) {
  if (coefficients.size() < 2) throw ConfigError("polynomial potential needs degree >= 1");
  if (coefficients.front() != 0.0) throw ConfigError("polynomial potential must vanish at x = 0");
  return Potential(Kind::Polynomial, 0.0, std::move(coefficients));
}

double Potential::value(double x) const {
  const double a = slenderness_;
  switch (kind_) {
    case Kind::LinearBlockPlus: return x - 0.5 * x * x;
    case Kind::LinearBlockMinus: return -x - 0.5 * x * x;
    case Kind::NonlinearBlockPlus: return (std::cos(a * (1.0 - x)) - std::cos(a)) / (a * a);
    case Kind::NonlinearBlockMinus: return (std::cos(a * (1.0 + x)) - std::cos(a)) / (a * a);
    case Kind::Polynomial: {
      double acc = 0.0;
      for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * x + *it;
      return acc;
    }
  }
  return 0.0;
}

double Potential::slope(double x) const {
  const double a = slenderness_;
  switch (kind_) {
    case Kind::LinearBlockPlus: return 1.0 - x;
    case Kind::LinearBlockMinus: return -1.0 - x;
    case Kind::NonlinearBlockPlus: return std::sin(a * (1.0 - x)) / a;
    case Kind::NonlinearBlockMinus: return -std::sin(a * (1.0 + x)) / a;
    case Kind::Polynomial: {
      double acc = 0.0;
      for (std::size_t i = coefficients_.size() - 1; i >= 1; --i) acc = acc * x + double(i) * coefficients_[i];
      return acc;
    }
  }
  return 0.0;
}

double Potential::curvature(double x) const {
  const double a = slenderness_;
  switch (kind_) {
    case Kind::LinearBlockPlus:
    case Kind::LinearBlockMinus: return -1.0;
    case Kind::NonlinearBlockPlus: return -std::cos(a * (1.0 - x));
    case Kind::NonlinearBlockMinus: return -std::cos(a * (1.0 + x));
    case Kind::Polynomial: {
      double acc = 0.0;
      for (std::size_t i = coefficients_.size() - 1; i >= 2; --i)
        acc = acc * x + double(i) * double(i - 1) * coefficients_[i];
      return acc;
    }
  }
  return 0.0;
}

// ------------------------------------------------------------- Perturbation

Perturbation Perturbation::cos_forcing(double omega) {
  if (!(omega > 0.0)) throw ConfigError("omega must be positive");
  Perturbation p;
  p.kind_ = Kind::CosForcing;
  p.coupling_ = Coupling::Position;
  p.omega_ = omega;
  p.harmonics_ = {{1, 1.0}};
  return p;
}

Perturbation Perturbation::multi_harmonic(double omega, int k) {
  if (!(omega > 0.0)) throw ConfigError("omega must be positive");
  if (k < 1) throw ConfigError("harmonic multiple k must be >= 1");
  Perturbation p;
  p.kind_ = Kind::MultiHarmonic;
  p.coupling_ = Coupling::Position;
  p.omega_ = omega;
  p.k_ = k;
  p.harmonics_ = {{1, 1.0}, {k, 1.0}};
  return p;
}

Perturbation Perturbation::nonlinear_block(double omega, double slenderness) {
  if (!(omega > 0.0)) throw ConfigError("omega must be positive");
  if (!(slenderness > 0.0)) throw ConfigError("slenderness must be positive");
  Perturbation p;
  p.kind_ = Kind::CosForcing;
  p.coupling_ = Coupling::NonlinearBlock;
  p.omega_ = omega;
  p.slenderness_ = slenderness;
  p.harmonics_ = {{1, 1.0}};
  return p;
}

Perturbation Perturbation::custom(double omega, std::vector<Harmonic> harmonics,
                                  std::vector<double> position_coefficients,
                                  double velocity_coefficient) {
  if (!(omega > 0.0)) throw ConfigError("omega must be positive");
  for (const auto& h : harmonics)
    if (h.multiple < 0) throw ConfigError("harmonic multiples must be non-negative");
  Perturbation p;
  p.kind_ = Kind::Custom;
  p.coupling_ = Coupling::Polynomial;
  p.omega_ = omega;
  p.harmonics_ = std::move(harmonics);
  p.position_ = std::move(position_coefficients);
  p.velocity_ = velocity_coefficient;
  return p;
}

double Perturbation::period() const noexcept { return 2.0 * std::numbers::pi / omega_; }

double Perturbation::forcing(double t) const {
  double f = 0.0;
  for (const auto& h : harmonics_) f += h.amplitude * std::cos(h.multiple * omega_ * t);
  return f;
}

double Perturbation::shape(Zone z, double x, double y) const {
  switch (coupling_) {
    case Coupling::Position: return x;
    case Coupling::NonlinearBlock: {
      const double a = slenderness_;
      return z == Zone::Plus ? (std::sin(a) - std::sin(a * (1.0 - x))) / a
                             : (std::sin(a * (1.0 + x)) - std::sin(a)) / a;
    }
    case Coupling::Polynomial: {
      double acc = 0.0;
      for (auto it = position_.rbegin(); it != position_.rend(); ++it) acc = acc * x + *it;
      return acc + velocity_ * y;
    }
  }
  return 0.0;
}

double Perturbation::shape_dx(Zone z, double x, double) const {
  switch (coupling_) {
    case Coupling::Position: return 1.0;
    case Coupling::NonlinearBlock: {
      const double a = slenderness_;
      return z == Zone::Plus ? std::cos(a * (1.0 - x)) : std::cos(a * (1.0 + x));
    }
    case Coupling::Polynomial: {
      double acc = 0.0;
      for (std::size_t i = position_.size(); i-- > 1;) acc = acc * x + double(i) * position_[i];
      return acc;
    }
  }
  return 0.0;
}

double Perturbation::shape_dy(Zone, double, double) const {
  return coupling_ == Coupling::Polynomial ? velocity_ : 0.0;
}

double Perturbation::value(Zone z, double x, double y, double t) const {
  return shape(z, x, y) * forcing(t);
}
double Perturbation::d_dx(Zone z, double x, double y, double t) const {
  return shape_dx(z, x, y) * forcing(t);
}
double Perturbation::d_dy(Zone z, double x, double y, double t) const {
  return shape_dy(z, x, y) * forcing(t);
}

// ------------------------------------------------------------ TwoZoneSystem

namespace {

// First zero of V' moving away from the origin into the zone, refined by
// bisection. Used for polynomial potentials only.
Saddle locate_saddle(const Potential& v, Zone z) {
  const double dir = sign_of(z);
  constexpr double kStep = 1e-3;
  constexpr double kReach = 100.0;
  double a = 0.0;
  double fa = v.slope(0.0);
  for (double s = kStep; s <= kReach; s += kStep) {
    const double b = dir * s;
    const double fb = v.slope(b);
    if (fa * fb < 0.0 || fb == 0.0) {
      double lo = a, hi = b, flo = fa;
      for (int i = 0; i < 200 && std::abs(hi - lo) > 1e-15; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = v.slope(mid);
        if (fm == 0.0) { lo = hi = mid; break; }
        if ((fm < 0.0) == (flo < 0.0)) { lo = mid; flo = fm; } else { hi = mid; }
      }
      const double xs = 0.5 * (lo + hi);
      const double curv = v.curvature(xs);
      if (!(curv < 0.0))
        throw ConfigError("critical point of the potential is not a hyperbolic saddle");
      return {xs, std::sqrt(-curv)};
    }
    a = b;
    fa = fb;
  }
  throw ConfigError("potential has no saddle within |x| <= 100");
}

}  // namespace

TwoZoneSystem::TwoZoneSystem(Potential plus, Potential minus, Perturbation perturbation,
                             double epsilon, double restitution)
    : plus_(std::move(plus)),
      minus_(std::move(minus)),
      perturbation_(std::move(perturbation)),
      epsilon_(epsilon),
      restitution_(restitution) {
  if (!std::isfinite(epsilon_)) throw ConfigError("epsilon must be finite");
  if (!(restitution_ > 0.0 && restitution_ <= 1.0))
    throw ConfigError("restitution coefficient must lie in (0, 1]");
  if (plus_.value(0.0) != minus_.value(0.0))
    throw ConfigError("V+(0) and V-(0) differ; H0 would be discontinuous");

  // Invisible fold on both sides: the zone flow bends back toward x = 0.
  const double sp = plus_.slope(0.0);
  const double sm = minus_.slope(0.0);
  if (sp < 0.0 || (sp == 0.0 && !(plus_.curvature(0.0) > 0.0)))
    throw ConfigError("V+ does not produce a returning flow at the origin");
  if (sm > 0.0 || (sm == 0.0 && !(minus_.curvature(0.0) > 0.0)))
    throw ConfigError("V- does not produce a returning flow at the origin");

  auto builtin = [](const Potential& v, Zone z) -> Saddle {
    switch (v.kind()) {
      case Potential::Kind::LinearBlockPlus:
      case Potential::Kind::NonlinearBlockPlus:
        if (z != Zone::Plus) throw ConfigError("plus-side potential used in the minus zone");
        return {1.0, std::sqrt(-v.curvature(1.0))};
      case Potential::Kind::LinearBlockMinus:
      case Potential::Kind::NonlinearBlockMinus:
        if (z != Zone::Minus) throw ConfigError("minus-side potential used in the plus zone");
        return {-1.0, std::sqrt(-v.curvature(-1.0))};
      case Potential::Kind::Polynomial: return locate_saddle(v, z);
    }
    return {};
  };
  saddle_plus_ = builtin(plus_, Zone::Plus);
  saddle_minus_ = builtin(minus_, Zone::Minus);

  c1_ = plus_.value(saddle_plus_.x);
  const double c1m = minus_.value(saddle_minus_.x);
  if (!(c1_ > 0.0)) throw ConfigError("saddle energy level must be positive");
  if (std::abs(c1_ - c1m) > 1e-9 * std::max(1.0, std::abs(c1_)))
    throw ConfigError("saddles of the two zones lie on different energy levels (" +
                      std::to_string(c1_) + " vs " + std::to_string(c1m) + ")");
}

TwoZoneSystem TwoZoneSystem::linear_block(double omega, double epsilon, double restitution) {
  return linear_block(Perturbation::cos_forcing(omega), epsilon, restitution);
}

TwoZoneSystem TwoZoneSystem::linear_block(Perturbation perturbation, double epsilon,
                                          double restitution) {
  return TwoZoneSystem(Potential::linear_block_plus(), Potential::linear_block_minus(),
                       std::move(perturbation), epsilon, restitution);
}

TwoZoneSystem TwoZoneSystem::nonlinear_block(double slenderness, double omega, double epsilon,
                                             double restitution) {
  return TwoZoneSystem(Potential::nonlinear_block_plus(slenderness),
                       Potential::nonlinear_block_minus(slenderness),
                       Perturbation::nonlinear_block(omega, slenderness), epsilon, restitution);
}

TwoZoneSystem TwoZoneSystem::with_parameters(double epsilon, double restitution) const {
  TwoZoneSystem copy = *this;
  if (!std::isfinite(epsilon)) throw ConfigError("epsilon must be finite");
  if (!(restitution > 0.0 && restitution <= 1.0))
    throw ConfigError("restitution coefficient must lie in (0, 1]");
  copy.epsilon_ = epsilon;
  copy.restitution_ = restitution;
  return copy;
}

TwoZoneSystem TwoZoneSystem::with_epsilon(double epsilon) const {
  return with_parameters(epsilon, restitution_);
}

double TwoZoneSystem::separatrix_velocity() const noexcept { return std::sqrt(2.0 * c1_); }

bool TwoZoneSystem::is_linear_block() const noexcept {
  return plus_.kind() == Potential::Kind::LinearBlockPlus &&
         minus_.kind() == Potential::Kind::LinearBlockMinus;
}

// --------------------------------------------------------------- evaluators

double eval_H0(const TwoZoneSystem& sys, Zone z, double x, double y) {
  return 0.5 * y * y + sys.potential(z).value(x);
}

double eval_H0(const TwoZoneSystem& sys, double x, double y) {
  return eval_H0(sys, x >= 0.0 ? Zone::Plus : Zone::Minus, x, y);
}

std::array<double, 2> vector_field(const TwoZoneSystem& sys, Zone z, const PhaseState& s) {
  const auto& h1 = sys.perturbation();
  const double eps = sys.epsilon();
  double dx = s.y;
  double dy = -sys.potential(z).slope(s.x);
  if (eps != 0.0) {
    dx += eps * h1.d_dy(z, s.x, s.y, s.t);
    dy -= eps * h1.d_dx(z, s.x, s.y, s.t);
  }
  return {dx, dy};
}

std::array<double, 2> vector_field(const TwoZoneSystem& sys, const PhaseState& s) {
  return vector_field(sys, zone_of(s.x, s.y), s);
}

double poisson_bracket(const TwoZoneSystem& sys, Zone z, double x, double y, double t) {
  const auto& h1 = sys.perturbation();
  return sys.potential(z).slope(x) * h1.d_dy(z, x, y, t) - y * h1.d_dx(z, x, y, t);
}

double poisson_bracket(const TwoZoneSystem& sys, double x, double y, double t) {
  return poisson_bracket(sys, zone_of(x, y), x, y, t);
}

}  // namespace pwm
