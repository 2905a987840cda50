#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls the solver's own formulas except where an input (W) is passed in.

#include <cstdint>
#include <functional>
#include <vector>

#include "fxdiv/exp_sum.hpp"
#include "fxdiv/model.hpp"

namespace oracle {

/// psi(theta1, theta2) written out from the model description.
double psi(const fxdiv::ModelDescription& m, double t1, double t2);

/// Root of psi(., -1) by plain bisection on [0, min claim rate).
double bisect_alpha(const fxdiv::ModelDescription& m);

/// Law of R under the (alpha, -1) tilt: drift, diffusion and per-phase
/// (intensity, rate) of the downward jumps.
struct TiltedLaw {
  double drift = 0.0;
  double sigma = 0.0;
  std::vector<double> intensity;
  std::vector<double> rate;

  double density(double z) const;  // sum_i m_i r_i e^{-r_i z}
  double total_intensity() const;
  double mean() const;
};

TiltedLaw tilted_law(const fxdiv::ModelDescription& m, double alpha);

/// w~(y) = e^{-alpha y} (k0 + k1 y).
struct Penalty {
  double k0 = 0.0;
  double k1 = 0.0;
  double decay = 0.0;

  double operator()(double y) const;
  double slope0() const { return k1 - decay * k0; }
};

/// kappa_w by nested adaptive Gauss-Kronrod quadrature.
double kappa_quadrature(const TiltedLaw& law, const Penalty& w);

/// e^{alpha x} (F_w~(x) - W(x) kappa_w~) with every integral by quadrature.
double gerber_shiu_quadrature(const TiltedLaw& law, const fxdiv::ExpSum& w_alpha,
                              double alpha, double k0, double k1, double x);

struct McResult {
  double mean = 0.0;
  double std_error = 0.0;
};

/// E^tilt_x[e^{alpha (x - R_tau)} w(R_tau)] by exact simulation: Gaussian
/// increments between jumps with a bridge test for creeping. Paths that
/// reach `upper` are stopped with value zero.
McResult gerber_shiu_monte_carlo(const TiltedLaw& law, double alpha, double k0,
                                 double k1, double x, std::uint64_t paths,
                                 std::uint64_t seed, double upper = 30.0);

/// Central difference of f at x.
double central_difference(const std::function<double(double)>& f, double x,
                          int order, double h);

/// Valid model for property tests: one or two claim phases, rho in
/// [-0.9, 0.9], theta >= 0, zero or affine penalty.
fxdiv::ModelDescription random_model(std::uint64_t seed, bool allow_penalty);

fxdiv::ModelDescription example1();
fxdiv::ModelDescription example2_printed();
fxdiv::ModelDescription example2_root_implied();

}  // namespace oracle
