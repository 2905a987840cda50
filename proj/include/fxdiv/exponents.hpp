#pragma once

#include "fxdiv/model.hpp"
#include "fxdiv/polynomial.hpp"

namespace fxdiv {

/// Bivariate Laplace exponent psi(theta1, theta2) of X = (R, Y):
/// E[e^{theta1 R_t + theta2 Y_t}] = e^{t psi + theta1 x + theta2 l}.
/// Throws OutOfDomain when a jump transform argument reaches a pole.
double psi(const ModelDescription& model, double theta1, double theta2);
double psi(const ModelSpec& model, double theta1, double theta2);

/// d psi / d theta1.
double psi_theta1_derivative(const ModelSpec& model, double theta1,
                             double theta2);

/// The unique alpha > 0 with psi(alpha, -1) = 0.
double solve_alpha(const ModelSpec& model);

/// Laplace exponent of R under the measure tilted by (alpha, -1), stored as
/// numerator / denominator polynomials in beta.
class RationalExponent {
 public:
  RationalExponent(Polynomial numerator, Polynomial denominator,
                   double pole_guard);

  const Polynomial& numerator() const { return numerator_; }
  const Polynomial& denominator() const { return denominator_; }
  /// Largest pole location; the exponent is a Laplace exponent for
  /// beta > pole_guard.
  double pole_guard() const { return pole_guard_; }

  double operator()(double beta) const;
  double derivative(double beta) const;
  /// E[R_1] under the tilted measure.
  double mean() const { return derivative(0.0); }

 private:
  Polynomial numerator_;
  Polynomial denominator_;
  double pole_guard_;
};

/// Levy-Khintchin data of R under the tilted measure. Jumps are downward with
/// total intensity `jump_intensity` and size law `jumps`.
struct TiltedTriple {
  double drift = 0.0;
  double sigma = 0.0;
  double jump_intensity = 0.0;
  ClaimMixture jumps;

  /// c~ beta + sigma^2 beta^2 / 2 + intensity (E[e^{-beta C~}] - 1).
  double exponent(double beta) const;
  double mean() const;
  /// Per-phase intensities m_i = intensity * weight_i.
  std::vector<double> phase_intensities() const;
};

TiltedTriple tilted_triple(const ModelSpec& model, double alpha);

RationalExponent tilted_exponent(const ModelSpec& model, double alpha);
RationalExponent tilted_exponent(const TiltedTriple& triple);

}  // namespace fxdiv
