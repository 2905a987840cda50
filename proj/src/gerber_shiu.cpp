#include "fxdiv/gerber_shiu.hpp"

#include <fmt/format.h>

#include <Eigen/Dense>
#include <cmath>

namespace fxdiv {

namespace {

struct ActivePhase {
  double intensity;
  double rate;
};

std::vector<ActivePhase> active_phases(const TiltedTriple& triple) {
  std::vector<ActivePhase> out;
  for (const auto& ph : triple.jumps.phases) {
    const double m = triple.jump_intensity * ph.weight;
    if (m > 0.0) out.push_back({m, ph.rate});
  }
  return out;
}

void check_decay(const ExpAffinePenalty& w, const std::vector<ActivePhase>& ph) {
  for (const auto& p : ph) {
    if (p.rate - w.decay <= 1e-9) {
      throw SolverError(ErrorCode::TiltExceedsRate,
                        fmt::format("penalty decay {} reaches tilted claim "
                                    "rate {}",
                                    w.decay, p.rate));
    }
  }
}

// int_0^inf e^{-r u} (w(-u) - w(0)) du for the exponential-affine w.
double tail_transform(const ExpAffinePenalty& w, double r) {
  const double d = r - w.decay;
  return w.k0 / d - w.k1 / (d * d) - w.k0 / r;
}

// int_0^x e^{s (x - y)} e^{r y} dy
double exp_convolution(double s, double r, double x) {
  if (std::abs(r - s) <= 1e-12 * (1.0 + std::abs(s))) {
    return x * std::exp(s * x);
  }
  return (std::exp(r * x) - std::exp(s * x)) / (r - s);
}

}  // namespace

double ExpAffinePenalty::operator()(double y) const {
  return std::exp(-decay * y) * (k0 + k1 * y);
}

double kappa(const ExpAffinePenalty& penalty, const TiltedTriple& triple,
             const RationalExponent& psi_r) {
  const auto phases = active_phases(triple);
  check_decay(penalty, phases);
  double integral = 0.0;
  for (const auto& p : phases) {
    integral += p.intensity * tail_transform(penalty, p.rate);
  }
  return 0.5 * triple.sigma * triple.sigma *
             penalty.left_derivative_at_zero() +
         psi_r.mean() * penalty.k0 - integral;
}

double kappa(const PenaltySpec& penalty, const TiltedTriple& triple,
             const RationalExponent& psi_r) {
  if (penalty.is_zero()) return 0.0;
  return kappa(ExpAffinePenalty{penalty.k0, penalty.k1, 0.0}, triple, psi_r);
}

GerberShiuFn::GerberShiuFn(PenaltySpec penalty, double alpha,
                           TiltedTriple triple, RationalExponent psi_r,
                           std::vector<double> roots, ExpSum w)
    : penalty_(penalty),
      alpha_(alpha),
      triple_(std::move(triple)),
      psi_r_(std::move(psi_r)),
      w_(std::move(w)) {
  if (penalty_.is_zero()) return;

  const ExpAffinePenalty wt{penalty_.k0, penalty_.k1, alpha_};
  kappa_ = fxdiv::kappa(wt, triple_, psi_r_);

  // G~ is bounded and vanishes at infinity, so it lives on the negative
  // zeros. Rows: continuity at 0 (creeping), then one moment condition per
  // claim phase matching the overshoot transform of w~.
  const auto phases = active_phases(triple_);
  const std::vector<double> neg(roots.begin() + 1, roots.end());
  const auto n = static_cast<Eigen::Index>(neg.size());
  if (static_cast<Eigen::Index>(phases.size()) + 1 != n) {
    throw SolverError(ErrorCode::SingularSystem,
                      "zero count does not match the claim phases");
  }
  Eigen::MatrixXd a(n, n);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index k = 0; k < n; ++k) a(0, k) = 1.0;
  rhs(0) = wt.k0;
  for (Eigen::Index i = 1; i < n; ++i) {
    const double r = phases[static_cast<std::size_t>(i - 1)].rate;
    for (Eigen::Index k = 0; k < n; ++k) {
      a(i, k) = 1.0 / (r + neg[static_cast<std::size_t>(k)]);
    }
    const double d = r - wt.decay;
    rhs(i) = wt.k0 / d - wt.k1 / (d * d);
  }
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  if (!lu.isInvertible()) {
    throw SolverError(ErrorCode::SingularSystem,
                      "Gerber-Shiu coefficient system is singular");
  }
  const Eigen::VectorXd coef = lu.solve(rhs);

  std::vector<ExpSum::Term> terms;
  for (Eigen::Index k = 0; k < n; ++k) {
    terms.push_back({coef(k), neg[static_cast<std::size_t>(k)]});
  }
  g_tilted_ = ExpSum(std::move(terms));
  g_ = g_tilted_.shifted(alpha_);
}

double GerberShiuFn::representation(double x) const {
  if (penalty_.is_zero()) return 0.0;
  const ExpAffinePenalty wt{penalty_.k0, penalty_.k1, alpha_};
  const double slope = wt.left_derivative_at_zero();

  // J(y) = j0 + sum_i b_i e^{-r_i y}
  const double j0 = slope * psi_r_.mean();
  std::vector<ExpSum::Term> jumps;
  for (const auto& p : active_phases(triple_)) {
    const double b = p.intensity * p.rate *
                     (tail_transform(wt, p.rate) + slope / (p.rate * p.rate));
    jumps.push_back({b, -p.rate});
  }

  double conv = 0.0;
  for (const auto& t : w_.terms()) {
    double inner = j0 * exp_convolution(t.rate, 0.0, x);
    for (const auto& j : jumps) {
      inner += j.coefficient * exp_convolution(t.rate, j.rate, x);
    }
    conv += t.coefficient * inner;
  }
  const double f = wt.k0 + slope * x - conv;
  return f - w_(x) * kappa_;
}

double GerberShiuFn::operator()(double x) const {
  if (x < 0.0) return penalty_(x);
  return g_.empty() ? 0.0 : g_(x);
}

double gerber_shiu(const GerberShiuFn& gfn, double x) { return gfn(x); }

double gerber_shiu_derivatives(const GerberShiuFn& gfn, double x, int order) {
  if (gfn.discounted().empty()) return 0.0;
  return gfn.discounted()(x, order);
}

}  // namespace fxdiv
