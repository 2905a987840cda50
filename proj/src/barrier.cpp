#include "fxdiv/barrier.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace fxdiv {

namespace {

constexpr double kGridStep = 1e-3;
constexpr double kInitialWindow = 4.0;
constexpr double kMaxWindow = 65536.0;

// E[F(x - C)] for a single exponential claim phase of rate g.
double phase_expectation(const PiecewiseValue& f, double g, double x) {
  double acc = 0.0;
  double z0 = 0.0;
  if (x > f.barrier) {
    // Linear piece: F(x - z) = F(a) + (d - z) for z in [0, d].
    const double d = x - f.barrier;
    const double top = f.inner(f.barrier);
    const double e = std::exp(-g * d);
    acc += (top + d) * (1.0 - e) - (1.0 - e * (1.0 + g * d)) / g;
    z0 = d;
  }
  const double u = x - z0;
  const double tail = std::exp(-g * x);
  for (const auto& t : f.inner.terms()) {
    const double k = g + t.rate;
    if (std::abs(k) <= 1e-13 * g) {
      acc += t.coefficient * g * tail * u;
    } else {
      acc += t.coefficient * g *
             (std::exp(t.rate * u - g * z0) - tail) / k;
    }
  }
  // Below zero the value is the affine penalty.
  acc += tail * (f.below_k0 - f.below_k1 / g);
  return acc;
}

}  // namespace

BarrierComponents build_components(const ModelSpec& model, bool use_penalty) {
  const double alpha = solve_alpha(model);
  TiltedTriple triple = tilted_triple(model, alpha);
  RationalExponent psi_r = tilted_exponent(triple);
  std::vector<double> roots = scale_roots(psi_r);
  ExpSum w = scale_function(psi_r, roots);
  ExpSum d = delta(w, alpha);
  const PenaltySpec penalty =
      use_penalty ? model.penalty() : PenaltySpec::zero();
  GerberShiuFn gs(penalty, alpha, triple, psi_r, roots, w);
  CompleteMonotonicityCertificate cm = check_complete_monotonicity(triple);
  return BarrierComponents{model,
                           alpha,
                           std::move(triple),
                           std::move(psi_r),
                           std::move(roots),
                           std::move(w),
                           std::move(d),
                           std::move(gs),
                           std::move(cm)};
}

double h_function(const BarrierComponents& c, double y) {
  const double dp = c.delta(y, 1);
  if (!(dp > 0.0)) {
    throw SolverError(ErrorCode::DegenerateDerivative,
                      fmt::format("Delta'({}) = {} is not positive", y, dp));
  }
  return (1.0 - gerber_shiu_derivatives(c.gerber_shiu, y, 1)) / dp;
}

double stationarity(const BarrierComponents& c, double a) {
  const double g1 = gerber_shiu_derivatives(c.gerber_shiu, a, 1);
  const double g2 = gerber_shiu_derivatives(c.gerber_shiu, a, 2);
  return c.delta(a, 2) * (1.0 - g1) + c.delta(a, 1) * g2;
}

double optimal_barrier(const BarrierComponents& c) {
  const double top_rate = c.delta.max_rate();
  double window = kInitialWindow;
  std::size_t best = 0;
  std::size_t n = 0;
  for (;;) {
    n = static_cast<std::size_t>(std::llround(window / kGridStep));
    std::vector<double> h(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
      const double y = static_cast<double>(i) * kGridStep;
      // Past the overflow point H is below any representable positive gap.
      h[i] = top_rate * y > 700.0 ? 0.0 : h_function(c, y);
    }
    best = 0;
    for (std::size_t i = 1; i <= n; ++i) {
      if (h[i] >= h[best]) best = i;
    }
    const std::size_t half = n / 2;
    bool settled = best < half;
    for (std::size_t i = half; settled && i < n; ++i) {
      if (h[i + 1] > h[i]) settled = false;
    }
    if (settled) break;
    window *= 2.0;
    if (window > kMaxWindow) {
      throw SolverError(
          ErrorCode::WindowExhausted,
          fmt::format("H still increasing on [0, {}]; grid argmax {}, "
                      "H(argmax) = {}",
                      window / 2.0, static_cast<double>(best) * kGridStep,
                      h[best]));
    }
  }

  // H' = -s / Delta'^2: the maximizer is where s crosses from - to +.
  auto s = [&](double a) { return stationarity(c, a); };
  double lo = 0.0;
  double hi = 0.0;
  if (best == 0) {
    if (s(0.0) >= 0.0) return 0.0;
    hi = kGridStep;
  } else {
    lo = static_cast<double>(best - 1) * kGridStep;
    hi = static_cast<double>(std::min(best + 1, n)) * kGridStep;
  }
  if (!(s(lo) < 0.0 && s(hi) > 0.0)) {
    return static_cast<double>(best) * kGridStep;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-13 * (1.0 + hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (s(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double PiecewiseValue::operator()(double x, int order) const {
  if (x < 0.0) {
    if (order == 0) return below_k0 + below_k1 * x;
    return order == 1 ? below_k1 : 0.0;
  }
  if (x <= barrier) return inner(x, order);
  if (order == 0) return inner(barrier) + (x - barrier);
  return order == 1 ? 1.0 : 0.0;
}

double apply_generator(const ModelSpec& model, const PiecewiseValue& f,
                       double x) {
  const auto& s = model.surplus();
  const auto& e = model.exchange();
  const double drift = s.premium - model.dependence().rho * s.sigma * e.delta;
  const double rate = e.drift - 0.5 * e.delta * e.delta;

  double expectation = 0.0;
  for (const auto& ph : s.claims.phases) {
    expectation += ph.weight * phase_expectation(f, ph.rate, x);
  }
  const double f0 = f(x, 0);
  return drift * f(x, 1) + 0.5 * s.sigma * s.sigma * f(x, 2) - rate * f0 +
         model.discounted_claim_intensity() * expectation -
         model.total_claim_intensity() * f0;
}

BarrierSolution::BarrierSolution(BarrierComponents components, double barrier)
    : c_(std::move(components)), a_(barrier) {
  const double g1 = gerber_shiu_derivatives(c_.gerber_shiu, a_, 1);
  k_ = (1.0 - g1) / c_.delta(a_, 1);
  inner_ = c_.delta.scaled(k_) + c_.gerber_shiu.discounted();
}

PiecewiseValue BarrierSolution::piecewise() const {
  const auto& w = c_.gerber_shiu.penalty();
  return PiecewiseValue{inner_, a_, w(0.0), w.left_derivative_at_zero()};
}

BarrierSolution make_barrier_solution(BarrierComponents components, double a) {
  return BarrierSolution(std::move(components), a);
}

BarrierSolution solve(const ModelSpec& model, bool use_penalty) {
  BarrierComponents c = build_components(model, use_penalty);
  const double a = optimal_barrier(c);
  return BarrierSolution(std::move(c), a);
}

ValueResult value_function(const BarrierSolution& sol, double x, double l) {
  return {std::exp(-l) * sol.F(x), x < 0.0};
}

OptimalityReport verify_optimality(const BarrierSolution& sol,
                                   const VerificationGrid& grid) {
  const auto& c = sol.components();
  const double a = sol.a_star();
  const PiecewiseValue f = sol.piecewise();
  OptimalityReport r;

  r.monotone.worst = -std::numeric_limits<double>::infinity();
  if (a < grid.x_max) {
    const auto n = static_cast<int>(
        std::ceil((grid.x_max - a) / grid.monotone_step));
    double prev = h_function(c, a);
    for (int i = 1; i <= n; ++i) {
      const double y = a + (grid.x_max - a) * i / n;
      const double h = h_function(c, y);
      if (h - prev > r.monotone.worst) {
        r.monotone.worst = h - prev;
        r.monotone.witness = y;
      }
      prev = h;
    }
  } else {
    r.monotone.worst = 0.0;
  }
  r.monotone.passed = r.monotone.worst <= grid.monotone_tolerance;

  r.generator.worst = -std::numeric_limits<double>::infinity();
  for (int i = 1; i <= grid.points; ++i) {
    const double x = a + (grid.x_max - a) * i / grid.points;
    const double g = apply_generator(c.model, f, x);
    if (g > r.generator.worst) {
      r.generator.worst = g;
      r.generator.witness = x;
    }
  }
  r.generator.passed = r.generator.worst <= grid.generator_tolerance;

  if (a > 0.0) {
    for (int i = 1; i <= grid.points; ++i) {
      const double x = a * i / (grid.points + 1);
      r.interior_residual =
          std::max(r.interior_residual, std::abs(apply_generator(c.model, f, x)));
    }
  }

  r.monotonicity_applicable = c.gerber_shiu.penalty().is_zero();
  r.monotonicity.passed = r.monotonicity_applicable && c.monotonicity.passed;
  r.smooth_fit_residual = std::abs(sol.inner()(a, 1) - 1.0);
  r.optimal = r.generator.passed;
  return r;
}

}  // namespace fxdiv
