#include "fxdiv/exponents.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace fxdiv {

double psi(const ModelDescription& m, double theta1, double theta2) {
  const auto& s = m.surplus;
  const auto& e = m.exchange;
  const auto& d = m.dependence;
  const double claims = s.claims.laplace(theta1);
  double value = s.premium * theta1 + e.drift * theta2 +
                 0.5 * s.sigma * s.sigma * theta1 * theta1 +
                 0.5 * e.delta * e.delta * theta2 * theta2 +
                 d.rho * s.sigma * e.delta * theta1 * theta2 +
                 s.lambda_bar * (claims - 1.0);
  if (d.theta > 0.0) {
    if (!e.jumps) {
      throw SolverError(ErrorCode::OutOfDomain,
                        "common shocks without an exchange jump law");
    }
    value += d.theta * (claims * e.jumps->laplace(theta2) - 1.0);
  }
  return value;
}

double psi(const ModelSpec& model, double theta1, double theta2) {
  return psi(model.description(), theta1, theta2);
}

double psi_theta1_derivative(const ModelSpec& model, double theta1,
                             double theta2) {
  const auto& s = model.surplus();
  const auto& d = model.dependence();
  double weight = s.lambda_bar;
  if (d.theta > 0.0) weight += d.theta * model.exchange().jumps->laplace(theta2);
  return s.premium + s.sigma * s.sigma * theta1 +
         d.rho * s.sigma * model.exchange().delta * theta2 +
         weight * s.claims.laplace_derivative(theta1);
}

double solve_alpha(const ModelSpec& model) {
  auto f = [&](double a) { return psi(model, a, -1.0); };
  double lo = 0.0;
  double hi = 1.0;
  double f_hi = f(hi);
  while (!(f_hi > 0.0)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12 || !std::isfinite(f_hi)) {
      throw SolverError(
          ErrorCode::BracketFailure,
          fmt::format("psi(., -1) has no sign change below {}; last value {}",
                      hi, f_hi));
    }
    f_hi = f(hi);
  }

  // Newton from the right end: psi(., -1) is convex, so iterates stay in the
  // bracket; bisection is the fallback when a step leaves it.
  double x = hi;
  for (int it = 0; it < 200; ++it) {
    const double fx = f(x);
    if (fx > 0.0) {
      hi = x;
    } else {
      lo = x;
    }
    const double slope = psi_theta1_derivative(model, x, -1.0);
    double next = x - fx / slope;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - x);
    x = next;
    if (std::abs(fx) <= 1e-12 &&
        step <= 4.0 * std::numeric_limits<double>::epsilon() * x) {
      break;
    }
    if (hi - lo < 1e-14) break;
  }
  return x;
}

RationalExponent::RationalExponent(Polynomial numerator,
                                   Polynomial denominator, double pole_guard)
    : numerator_(std::move(numerator)),
      denominator_(std::move(denominator)),
      pole_guard_(pole_guard) {}

double RationalExponent::operator()(double beta) const {
  const double den = denominator_(beta);
  if (den == 0.0) {
    throw SolverError(ErrorCode::OutOfDomain,
                      fmt::format("tilted exponent has a pole at {}", beta));
  }
  return numerator_(beta) / den;
}

double RationalExponent::derivative(double beta) const {
  const double den = denominator_(beta);
  if (den == 0.0) {
    throw SolverError(ErrorCode::OutOfDomain,
                      fmt::format("tilted exponent has a pole at {}", beta));
  }
  const double num = numerator_(beta);
  return (numerator_.derivative()(beta) * den -
          num * denominator_.derivative()(beta)) /
         (den * den);
}

double TiltedTriple::exponent(double beta) const {
  double v = drift * beta + 0.5 * sigma * sigma * beta * beta;
  if (jump_intensity > 0.0) v += jump_intensity * (jumps.laplace(beta) - 1.0);
  return v;
}

std::vector<double> TiltedTriple::phase_intensities() const {
  std::vector<double> m;
  m.reserve(jumps.phases.size());
  for (const auto& ph : jumps.phases) m.push_back(jump_intensity * ph.weight);
  return m;
}

double TiltedTriple::mean() const {
  return drift - jump_intensity * jumps.mean();
}

TiltedTriple tilted_triple(const ModelSpec& model, double alpha) {
  const auto& s = model.surplus();
  TiltedTriple t;
  t.drift = s.premium + alpha * s.sigma * s.sigma -
            model.dependence().rho * s.sigma * model.exchange().delta;
  t.sigma = s.sigma;

  // Tilted jump density per phase: Lambda_d w_i g_i e^{-(g_i + alpha) z}.
  double total_weight = 0.0;
  std::vector<double> raw;
  for (const auto& ph : s.claims.phases) {
    raw.push_back(ph.weight * ph.rate / (ph.rate + alpha));
    total_weight += raw.back();
  }
  t.jump_intensity = model.discounted_claim_intensity() * total_weight;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    t.jumps.phases.push_back(
        {raw[i] / total_weight, s.claims.phases[i].rate + alpha});
  }
  return t;
}

RationalExponent tilted_exponent(const TiltedTriple& triple) {
  // psi_R(b) = b * [c~ + sigma^2 b / 2 - sum_i m_i / (r_i + b)]
  std::vector<double> rates;
  std::vector<double> intensities;
  for (const auto& ph : triple.jumps.phases) {
    const double m = triple.jump_intensity * ph.weight;
    if (m > 0.0) {
      rates.push_back(ph.rate);
      intensities.push_back(m);
    }
  }

  Polynomial denominator{1.0};
  for (double r : rates) denominator = denominator * Polynomial{r, 1.0};

  Polynomial inner =
      Polynomial{triple.drift, 0.5 * triple.sigma * triple.sigma} * denominator;
  for (std::size_t i = 0; i < rates.size(); ++i) {
    Polynomial others{intensities[i]};
    for (std::size_t j = 0; j < rates.size(); ++j) {
      if (j != i) others = others * Polynomial{rates[j], 1.0};
    }
    inner = inner - others;
  }
  Polynomial numerator = inner * Polynomial{0.0, 1.0};

  double guard = -std::numeric_limits<double>::infinity();
  for (double r : rates) guard = std::max(guard, -r);
  return RationalExponent(std::move(numerator), std::move(denominator), guard);
}

RationalExponent tilted_exponent(const ModelSpec& model, double alpha) {
  return tilted_exponent(tilted_triple(model, alpha));
}

}  // namespace fxdiv
