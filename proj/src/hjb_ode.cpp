#include "fxdiv/hjb_ode.hpp"

#include <fmt/format.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "fxdiv/polynomial.hpp"

namespace fxdiv {

namespace {

constexpr double kScanStep = 0.05;
constexpr double kScanLimit = 64.0;

bool is_real(std::complex<double> z) {
  return std::abs(z.imag()) <= 1e-9 * (1.0 + std::abs(z.real()));
}

std::vector<std::complex<double>> ordered_roots(double a2, double a1,
                                                double a0) {
  std::vector<double> real;
  std::vector<std::complex<double>> pair;
  for (auto z : roots(Polynomial{a0, a1, a2, 1.0})) {
    if (is_real(z)) {
      real.push_back(z.real());
    } else if (z.imag() > 0.0) {
      pair.push_back(z);
    }
  }
  std::sort(real.begin(), real.end(), [](double x, double y) {
    if ((x < 0.0) != (y < 0.0)) return x >= 0.0;
    return x >= 0.0 ? x < y : x > y;
  });
  std::vector<std::complex<double>> out(real.begin(), real.end());
  out.insert(out.end(), pair.begin(), pair.end());
  return out;
}

std::vector<OdeBasis> make_basis(const CubicProblem& cubic) {
  std::vector<OdeBasis> b;
  for (auto s : cubic.roots) {
    if (s.imag() == 0.0) {
      b.push_back({s, false});
    } else {
      b.push_back({s, true});
      b.push_back({s, false});
    }
  }
  if (b.size() != 3) {
    throw SolverError(ErrorCode::SingularSystem,
                      fmt::format("cubic yields {} basis functions", b.size()));
  }
  return b;
}

// F^{(order)} from g', g'', g''' at x.
double f_from_g(double gamma, double x, double g1, double g2, double g3,
                int order) {
  const double e = std::exp(-gamma * x);
  switch (order) {
    case 0:
      return e * g1;
    case 1:
      return e * (g2 - gamma * g1);
    default:
      return e * (g3 - 2.0 * gamma * g2 + gamma * gamma * g1);
  }
}

double basis_f(const OdeBasis& b, double gamma, double x, int order) {
  return f_from_g(gamma, x, b(x, 1), b(x, 2), b(x, 3), order);
}

std::array<double, 3> coefficients_for(const std::vector<OdeBasis>& basis,
                                       double gamma, double a) {
  Eigen::Matrix3d m;
  for (int i = 0; i < 3; ++i) {
    const auto& b = basis[static_cast<std::size_t>(i)];
    m(0, i) = b(0.0, 0);
    m(1, i) = b(0.0, 1);
    m(2, i) = basis_f(b, gamma, a, 1);
  }
  const Eigen::FullPivLU<Eigen::Matrix3d> lu(m);
  if (!lu.isInvertible()) {
    throw SolverError(ErrorCode::SingularSystem,
                      fmt::format("boundary system singular at a = {}", a));
  }
  const Eigen::Vector3d c = lu.solve(Eigen::Vector3d(0.0, 0.0, 1.0));
  return {c(0), c(1), c(2)};
}

double curvature_at(const std::vector<OdeBasis>& basis, double gamma,
                    double a) {
  const auto c = coefficients_for(basis, gamma, a);
  double v = 0.0;
  for (std::size_t i = 0; i < 3; ++i) v += c[i] * basis_f(basis[i], gamma, a, 2);
  return v;
}

}  // namespace

CubicProblem build_cubic(const ModelSpec& model) {
  return build_cubic(model.description());
}

CubicProblem build_cubic(const ModelDescription& model) {
  const auto& s = model.surplus;
  if (s.claims.phases.size() != 1) {
    throw SolverError(ErrorCode::UnsupportedModel,
                      "the ODE route needs a single exponential claim phase");
  }
  if (!model.penalty.is_zero()) {
    throw SolverError(ErrorCode::UnsupportedModel,
                      "the ODE route assumes a zero penalty");
  }
  const double c = s.premium;
  const double sigma = s.sigma;
  const double g = s.claims.phases.front().rate;
  const double p = model.exchange.drift;
  const double d = model.exchange.delta;
  const double rho = model.dependence.rho;
  const double theta = model.dependence.theta;
  const double lambda = s.lambda_bar + theta;
  const double ez = theta > 0.0 ? model.exchange.jumps->laplace(-1.0) : 1.0;
  const double v = sigma * sigma;

  CubicProblem cubic;
  cubic.gamma = g;
  cubic.a2 = 2.0 * (c - d * rho * sigma - g * v) / v;
  cubic.a1 = 2.0 *
             (0.5 * (d * d + v * g * g) - p - lambda - g * c +
              rho * g * d * sigma) /
             v;
  cubic.a0 = 2.0 * (s.lambda_bar + theta * ez) * g / v;
  cubic.roots = ordered_roots(cubic.a2, cubic.a1, cubic.a0);
  return cubic;
}

CubicProblem cubic_from_roots(const std::vector<double>& r, double gamma) {
  if (r.size() != 3) {
    throw SolverError(ErrorCode::InvalidParameter, "a cubic needs three roots");
  }
  CubicProblem cubic;
  cubic.gamma = gamma;
  cubic.a2 = -(r[0] + r[1] + r[2]);
  cubic.a1 = r[0] * r[1] + r[0] * r[2] + r[1] * r[2];
  cubic.a0 = -r[0] * r[1] * r[2];
  std::vector<double> sorted = r;
  std::sort(sorted.begin(), sorted.end(), [](double x, double y) {
    if ((x < 0.0) != (y < 0.0)) return x >= 0.0;
    return x >= 0.0 ? x < y : x > y;
  });
  cubic.roots.assign(sorted.begin(), sorted.end());
  return cubic;
}

double OdeBasis::operator()(double x, int order) const {
  if (s.imag() == 0.0) {
    return std::pow(s.real(), order) * std::exp(s.real() * x);
  }
  const std::complex<double> z = std::pow(s, order) * std::exp(s * x);
  return imaginary_part ? z.imag() : z.real();
}

OdeSolution::OdeSolution(CubicProblem cubic, std::vector<OdeBasis> basis,
                         std::array<double, 3> coefficients, double a_star,
                         bool derivative_check)
    : cubic_(std::move(cubic)),
      basis_(std::move(basis)),
      c_(coefficients),
      a_(a_star),
      check_(derivative_check) {}

double OdeSolution::g(double x, int order) const {
  double v = 0.0;
  for (std::size_t i = 0; i < 3; ++i) v += c_[i] * basis_[i](x, order);
  return v;
}

double OdeSolution::F(double x, int order) const {
  if (x > a_) {
    if (order == 0) return F(a_) + (x - a_);
    return order == 1 ? 1.0 : 0.0;
  }
  return f_from_g(cubic_.gamma, x, g(x, 1), g(x, 2), g(x, 3), order);
}

OdeSolution solve_boundary(const CubicProblem& cubic) {
  const auto basis = make_basis(cubic);
  const double gamma = cubic.gamma;
  double top = 0.0;
  for (const auto& b : basis) top = std::max(top, std::abs(b.s.real()));

  auto phi = [&](double a) { return curvature_at(basis, gamma, a); };
  const double f0 = phi(0.0);
  double a_star = 0.0;
  if (f0 != 0.0) {
    double lo = 0.0;
    double hi = -1.0;
    double prev = f0;
    for (int k = 1; kScanStep * k <= kScanLimit; ++k) {
      const double a = kScanStep * k;
      if (top * a > 700.0) break;
      const double v = phi(a);
      if ((v > 0.0) != (prev > 0.0) || v == 0.0) {
        hi = a;
        break;
      }
      lo = a;
      prev = v;
    }
    if (hi < 0.0) {
      throw SolverError(ErrorCode::NoSignChange,
                        fmt::format("F''_a(a) keeps the sign of {} on [0, {}]",
                                    f0, kScanLimit));
    }
    const bool rising = phi(lo) < 0.0;
    for (int it = 0; it < 200 && hi - lo > 1e-13 * (1.0 + hi); ++it) {
      const double mid = 0.5 * (lo + hi);
      if ((phi(mid) < 0.0) == rising) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    a_star = 0.5 * (lo + hi);
  }

  const auto coef = coefficients_for(basis, gamma, a_star);
  OdeSolution probe(cubic, basis, coef, a_star, true);
  bool ok = true;
  for (int i = 0; i < 1000 && a_star > 0.0; ++i) {
    const double x = a_star * i / 1000.0;
    if (!(probe.F(x, 1) > 1.0 && probe.F(x, 2) < 0.0)) {
      ok = false;
      break;
    }
  }
  return OdeSolution(cubic, basis, coef, a_star, ok);
}

RouteCheck cross_check(const BarrierSolution& scale, const OdeSolution& ode,
                       int n) {
  RouteCheck r;
  const double a = scale.a_star();
  for (int i = 0; i < n; ++i) {
    const double x = n > 1 ? a * i / (n - 1) : 0.0;
    r.max_abs = std::max(r.max_abs, std::abs(scale.F(x) - ode.F(x)));
  }
  r.relative = r.max_abs / std::abs(scale.value_on_barrier());
  r.passed = r.relative < 1e-6;
  return r;
}

}  // namespace fxdiv
