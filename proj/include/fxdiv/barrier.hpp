#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "fxdiv/exp_sum.hpp"
#include "fxdiv/exponents.hpp"
#include "fxdiv/gerber_shiu.hpp"
#include "fxdiv/model.hpp"
#include "fxdiv/scale.hpp"

namespace fxdiv {

/// Everything the barrier search needs, derived once from a model.
struct BarrierComponents {
  ModelSpec model;
  double alpha;
  TiltedTriple triple;
  RationalExponent psi_r;
  std::vector<double> roots;
  ExpSum w_alpha;
  ExpSum delta;
  GerberShiuFn gerber_shiu;
  CompleteMonotonicityCertificate monotonicity;
};

/// With use_penalty = false the Gerber-Shiu branch is built for w = 0.
BarrierComponents build_components(const ModelSpec& model,
                                   bool use_penalty = true);

/// H(y) = (1 - G'(y)) / Delta'(y), y >= 0.
double h_function(const BarrierComponents& c, double y);

/// Delta''(a) (1 - G'(a)) + Delta'(a) G''(a); H'(a) has the opposite sign.
double stationarity(const BarrierComponents& c, double a);

/// Largest maximizer of H on [0, inf).
double optimal_barrier(const BarrierComponents& c);

/// F(x) on the whole line: inner(x) on [0, barrier], inner(barrier) + x -
/// barrier above, below_k0 + below_k1 x for x < 0. barrier may be +inf.
struct PiecewiseValue {
  ExpSum inner;
  double barrier = std::numeric_limits<double>::infinity();
  double below_k0 = 0.0;
  double below_k1 = 0.0;

  /// order in {0, 1, 2}; at x = barrier the left limit is returned.
  double operator()(double x, int order = 0) const;
};

/// (c - rho sigma delta) F' + sigma^2/2 F'' - (p - delta^2/2) F
///   + (lambda_bar + theta E[e^Z]) E[F(x - C)] - (lambda_bar + theta) F,
/// i.e. e^l times the generator of X applied to e^{-l} F(x).
double apply_generator(const ModelSpec& model, const PiecewiseValue& f,
                       double x);

struct VerificationGrid {
  double x_max = 20.0;
  int points = 200;
  double monotone_step = 1e-3;
  double monotone_tolerance = 1e-9;
  double generator_tolerance = 1e-8;
};

struct Certificate {
  bool passed = false;
  /// Largest violation measure found (H increase, generator value).
  double worst = 0.0;
  /// Location of `worst`.
  double witness = 0.0;
};

struct OptimalityReport {
  Certificate monotone;      // H nonincreasing on [a*, x_max]
  Certificate generator;     // generator <= tol on (a*, x_max]
  Certificate monotonicity;  // complete-monotonicity shortcut, zero penalty only
  bool monotonicity_applicable = false;
  /// max |generator| on (0, a*); zero by construction.
  double interior_residual = 0.0;
  /// |F'(a*) - 1|.
  double smooth_fit_residual = 0.0;
  /// Verdict: the generator inequality is necessary and sufficient.
  bool optimal = false;
};

class BarrierSolution {
 public:
  BarrierSolution(BarrierComponents components, double barrier);

  const BarrierComponents& components() const { return c_; }
  double alpha() const { return c_.alpha; }
  const ExpSum& w_alpha() const { return c_.w_alpha; }
  const ExpSum& delta() const { return c_.delta; }
  const GerberShiuFn& gerber_shiu() const { return c_.gerber_shiu; }
  double a_star() const { return a_; }
  /// (1 - G'(a)) / Delta'(a).
  double scale_factor() const { return k_; }
  double value_on_barrier() const { return inner_(a_); }
  /// F on [0, a*]: K Delta + G.
  const ExpSum& inner() const { return inner_; }
  PiecewiseValue piecewise() const;

  double F(double x, int order = 0) const { return piecewise()(x, order); }

 private:
  BarrierComponents c_;
  double a_;
  double k_;
  ExpSum inner_;
};

/// Solution for an arbitrary barrier a >= 0 (used for suboptimal checks).
BarrierSolution make_barrier_solution(BarrierComponents components, double a);

BarrierSolution solve(const ModelSpec& model, bool use_penalty = true);

struct ValueResult {
  double value;
  /// x < 0: the value is the penalty e^{-l} w(x).
  bool negative_reserve;
};

ValueResult value_function(const BarrierSolution& sol, double x, double l);

OptimalityReport verify_optimality(const BarrierSolution& sol,
                                   const VerificationGrid& grid = {});

}  // namespace fxdiv
