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
#include <utility>
#include <vector>

namespace pwm {

/// Half-plane selector: Plus is x > 0, Minus is x < 0.
enum class Zone : int { Minus = -1, Plus = 1 };

constexpr double sign_of(Zone z) noexcept { return z == Zone::Plus ? 1.0 : -1.0; }
constexpr Zone opposite(Zone z) noexcept { return z == Zone::Plus ? Zone::Minus : Zone::Plus; }

/// Point of the extended phase space.
struct PhaseState {
  double x = 0.0;
  double y = 0.0;
  double t = 0.0;
};

/// Zone owning (x, y). On the switching line the sign of y decides; the
/// fold point (0, 0) has no zone and is rejected with a Domain error.
Zone zone_of(double x, double y);

/// Potential V of one zone, with closed-form V, V' and V''.
class Potential {
 public:
  enum class Kind {
    LinearBlockPlus,
    LinearBlockMinus,
    NonlinearBlockPlus,
    NonlinearBlockMinus,
    Polynomial,
  };

  /// x - x^2/2
  static Potential linear_block_plus();
  /// -x - x^2/2
  static Potential linear_block_minus();
  /// (cos(a(1-x)) - cos a) / a^2, a = slenderness
  static Potential nonlinear_block_plus(double slenderness);
  /// (cos(a(1+x)) - cos a) / a^2
  static Potential nonlinear_block_minus(double slenderness);
  /// sum_i c_i x^i; c_0 must vanish.
  static Potential polynomial(std::vector<double> coefficients);

  double value(double x) const;
  double slope(double x) const;
  double curvature(double x) const;

  Kind kind() const noexcept { return kind_; }
  double slenderness() const noexcept { return slenderness_; }
  const std::vector<double>& coefficients() const noexcept { return coefficients_; }

 private:
  Potential(Kind kind, double slenderness, std::vector<double> coefficients)
      : kind_(kind), slenderness_(slenderness), coefficients_(std::move(coefficients)) {}

  Kind kind_;
  double slenderness_ = 0.0;
  std::vector<double> coefficients_;
};

/// One term amplitude * cos(multiple * omega * t) of the forcing.
struct Harmonic {
  int multiple = 1;
  double amplitude = 1.0;
};

/// Separable T-periodic perturbation H1(x, y, t) = g_zone(x, y) * F(t),
/// where F is a finite cosine series in omega * t.
///
/// Couplings:
///   Position        g(x, y) = x
///   NonlinearBlock  g+(x) = (sin a - sin(a(1-x))) / a,
///                   g-(x) = (sin(a(1+x)) - sin a) / a
///   Polynomial      g(x, y) = sum_i p_i x^i + v y  (same in both zones)
///
/// Every coupling agrees on x = 0 from both sides, so H1 is continuous
/// across the switching line.
class Perturbation {
 public:
  enum class Kind { CosForcing, MultiHarmonic, Custom };
  enum class Coupling { Position, NonlinearBlock, Polynomial };

  /// x cos(omega t)
  static Perturbation cos_forcing(double omega);
  /// x (cos(omega t) + cos(k omega t))
  static Perturbation multi_harmonic(double omega, int k);
  /// Forcing of the full (non-linearized) rocking block.
  static Perturbation nonlinear_block(double omega, double slenderness);
  static Perturbation custom(double omega, std::vector<Harmonic> harmonics,
                             std::vector<double> position_coefficients,
                             double velocity_coefficient);

  Kind kind() const noexcept { return kind_; }
  Coupling coupling() const noexcept { return coupling_; }
  double omega() const noexcept { return omega_; }
  double period() const noexcept;
  int k() const noexcept { return k_; }
  double slenderness() const noexcept { return slenderness_; }
  const std::vector<Harmonic>& harmonics() const noexcept { return harmonics_; }
  const std::vector<double>& position_coefficients() const noexcept { return position_; }
  double velocity_coefficient() const noexcept { return velocity_; }

  /// F(t)
  double forcing(double t) const;

  double value(Zone z, double x, double y, double t) const;
  double d_dx(Zone z, double x, double y, double t) const;
  double d_dy(Zone z, double x, double y, double t) const;

 private:
  Perturbation() = default;

  // Spatial factor g and its partials.
  double shape(Zone z, double x, double y) const;
  double shape_dx(Zone z, double x, double y) const;
  double shape_dy(Zone z, double x, double y) const;

  Kind kind_ = Kind::CosForcing;
  Coupling coupling_ = Coupling::Position;
  double omega_ = 1.0;
  int k_ = 1;
  double slenderness_ = 0.0;
  std::vector<Harmonic> harmonics_;
  std::vector<double> position_;
  double velocity_ = 0.0;
};

/// Saddle point of one zone and the rate of its hyperbolic linearization.
struct Saddle {
  double x = 0.0;
  double rate = 0.0;  // lambda, eigenvalues are +-lambda
};

/// Two-zone piecewise Hamiltonian system with impacts on x = 0.
/// Immutable once built; the with_* helpers return modified copies.
class TwoZoneSystem {
 public:
  TwoZoneSystem(Potential plus, Potential minus, Perturbation perturbation,
                double epsilon = 0.0, double restitution = 1.0);

  /// Linearized rocking block forced by x cos(omega t).
  static TwoZoneSystem linear_block(double omega, double epsilon = 0.0,
                                    double restitution = 1.0);
  static TwoZoneSystem linear_block(Perturbation perturbation, double epsilon = 0.0,
                                    double restitution = 1.0);
  static TwoZoneSystem nonlinear_block(double slenderness, double omega,
                                       double epsilon = 0.0, double restitution = 1.0);

  TwoZoneSystem with_parameters(double epsilon, double restitution) const;
  TwoZoneSystem with_epsilon(double epsilon) const;
  TwoZoneSystem unperturbed() const { return with_parameters(0.0, 1.0); }

  const Potential& potential(Zone z) const noexcept { return z == Zone::Plus ? plus_ : minus_; }
  const Perturbation& perturbation() const noexcept { return perturbation_; }
  double epsilon() const noexcept { return epsilon_; }
  double restitution() const noexcept { return restitution_; }
  double omega() const noexcept { return perturbation_.omega(); }
  double period() const noexcept { return perturbation_.period(); }
  /// Energy of the saddle level.
  double c1() const noexcept { return c1_; }
  /// sqrt(2 c1): velocity of the separatrix on the switching line.
  double separatrix_velocity() const noexcept;
  const Saddle& saddle(Zone z) const noexcept { return z == Zone::Plus ? saddle_plus_ : saddle_minus_; }
  bool is_linear_block() const noexcept;

 private:
  Potential plus_;
  Potential minus_;
  Perturbation perturbation_;
  double epsilon_;
  double restitution_;
  double c1_ = 0.0;
  Saddle saddle_plus_;
  Saddle saddle_minus_;
};

/// H0 = y^2/2 + V(x), V+ for x >= 0 and V- for x < 0.
double eval_H0(const TwoZoneSystem& sys, double x, double y);
/// H0 of a given zone (no zone selection).
double eval_H0(const TwoZoneSystem& sys, Zone z, double x, double y);

/// J grad(H0 + eps H1) of the zone owning the state.
std::array<double, 2> vector_field(const TwoZoneSystem& sys, const PhaseState& s);
/// Same, with the zone imposed (used while integrating inside a zone).
std::array<double, 2> vector_field(const TwoZoneSystem& sys, Zone z, const PhaseState& s);

/// {H0, H1} = dH0/dx dH1/dy - dH0/dy dH1/dx of the zone owning (x, y).
double poisson_bracket(const TwoZoneSystem& sys, double x, double y, double t);
double poisson_bracket(const TwoZoneSystem& sys, Zone z, double x, double y, double t);

}  // namespace pwm
