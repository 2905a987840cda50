#pragma once

#include <vector>

#include "fxdiv/exp_sum.hpp"
#include "fxdiv/exponents.hpp"
#include "fxdiv/model.hpp"

namespace fxdiv {

/// w(y) = e^{-decay y} (k0 + k1 y) on y <= 0.
struct ExpAffinePenalty {
  double k0 = 0.0;
  double k1 = 0.0;
  double decay = 0.0;

  double operator()(double y) const;
  double left_derivative_at_zero() const { return k1 - decay * k0; }
};

/// kappa_w = sigma^2/2 w'(0-) + E[R_1] w(0) - L w, all under the tilted law.
/// Throws SolverError(TiltExceedsRate) when decay reaches a tilted claim rate.
double kappa(const ExpAffinePenalty& penalty, const TiltedTriple& triple,
             const RationalExponent& psi_r);
/// Same with decay 0.
double kappa(const PenaltySpec& penalty, const TiltedTriple& triple,
             const RationalExponent& psi_r);

/// Discounted penalty at ruin,
///   G(x) = e^l E_{x,l}[e^{-Y_tau} w(R_tau)] = E^tilt_x[e^{alpha (x - R_tau)} w(R_tau)],
/// for an affine penalty. G = e^{alpha x} G~ where G~ is the undiscounted
/// Gerber-Shiu function of w~(y) = e^{-alpha y} w(y) under the tilted law.
class GerberShiuFn {
 public:
  GerberShiuFn(PenaltySpec penalty, double alpha, TiltedTriple triple,
               RationalExponent psi_r, std::vector<double> roots, ExpSum w);

  const PenaltySpec& penalty() const { return penalty_; }
  double alpha() const { return alpha_; }
  /// G on [0, inf) as an exponential sum.
  const ExpSum& discounted() const { return g_; }
  /// G~ on [0, inf).
  const ExpSum& tilted() const { return g_tilted_; }
  /// kappa of w~.
  double kappa() const { return kappa_; }

  /// G~(x) rebuilt as F_{w~}(x) - W(x) kappa with the convolution done term
  /// by term. Independent of the linear solve behind tilted().
  double representation(double x) const;

  /// G(x) for x >= 0, w(x) for x < 0.
  double operator()(double x) const;

 private:
  PenaltySpec penalty_;
  double alpha_;
  TiltedTriple triple_;
  RationalExponent psi_r_;
  ExpSum w_;
  double kappa_ = 0.0;
  ExpSum g_tilted_;
  ExpSum g_;
};

double gerber_shiu(const GerberShiuFn& gfn, double x);
/// order in {1, 2}; requires x > 0.
double gerber_shiu_derivatives(const GerberShiuFn& gfn, double x, int order);

}  // namespace fxdiv
