#pragma once

#include <array>
#include <complex>
#include <vector>

#include "fxdiv/barrier.hpp"
#include "fxdiv/model.hpp"

namespace fxdiv {

/// Monic cubic s^3 + a2 s^2 + a1 s + a0 governing g(x) = int_0^x F(y) e^{gamma y} dy
/// on the continuation region, for a single exponential claim rate gamma.
struct CubicProblem {
  double a2 = 0.0;
  double a1 = 0.0;
  double a0 = 0.0;
  double gamma = 0.0;
  /// Real roots: nonnegative ascending, then negative descending. A
  /// conjugate pair is stored once, with positive imaginary part, after the
  /// real root.
  std::vector<std::complex<double>> roots;
};

/// Zero penalty and one claim phase only; otherwise UnsupportedModel.
CubicProblem build_cubic(const ModelSpec& model);
/// Same coefficients without validation (the cubic exists for any inputs).
CubicProblem build_cubic(const ModelDescription& model);
CubicProblem cubic_from_roots(const std::vector<double>& roots, double gamma);

/// e^{s x} for real s, or Re / Im of it for a complex root.
struct OdeBasis {
  std::complex<double> s;
  bool imaginary_part = false;

  double operator()(double x, int order) const;
};

class OdeSolution {
 public:
  OdeSolution(CubicProblem cubic, std::vector<OdeBasis> basis,
              std::array<double, 3> coefficients, double a_star,
              bool derivative_check);

  const CubicProblem& cubic() const { return cubic_; }
  const std::vector<OdeBasis>& basis() const { return basis_; }
  const std::array<double, 3>& coefficients() const { return c_; }
  double a_star() const { return a_; }
  /// F' > 1 and F'' < 0 held on a 1000-point grid of [0, a*).
  bool derivative_check() const { return check_; }

  double g(double x, int order = 0) const;
  /// F = e^{-gamma x} g' on [0, a*], linear with slope 1 above.
  double F(double x, int order = 0) const;

 private:
  CubicProblem cubic_;
  std::vector<OdeBasis> basis_;
  std::array<double, 3> c_;
  double a_;
  bool check_;
};

/// g(0) = g'(0) = 0, F'(a) = 1, with a* the first sign change of F''_a(a).
/// Throws NoSignChange or SingularSystem.
OdeSolution solve_boundary(const CubicProblem& cubic);

struct RouteCheck {
  double max_abs = 0.0;
  double relative = 0.0;
  bool passed = false;
};

/// max |F_scale - F_ode| over n points of [0, a*] of the scale route,
/// relative to F(a*); passes below 1e-6.
RouteCheck cross_check(const BarrierSolution& scale, const OdeSolution& ode,
                       int n = 1000);

}  // namespace fxdiv
