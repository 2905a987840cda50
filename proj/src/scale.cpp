#include "fxdiv/scale.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace fxdiv {

std::vector<double> scale_roots(const RationalExponent& psi_r) {
  const Polynomial& num = psi_r.numerator();
  const auto& c = num.coefficients();
  double scale = 0.0;
  for (double v : c) scale = std::max(scale, std::abs(v));
  if (c.size() < 2 || std::abs(c[0]) > 1e-12 * scale) {
    throw SolverError(ErrorCode::MissingOriginRoot,
                      "tilted exponent does not vanish at the origin");
  }

  const Polynomial reduced = num.deflate(0.0);
  const Polynomial dreduced = reduced.derivative();
  std::vector<double> out;
  for (const auto& z : roots(reduced)) {
    if (std::abs(z.imag()) > 1e-8 * (1.0 + std::abs(z.real()))) {
      throw SolverError(ErrorCode::ComplexRoot,
                        fmt::format("tilted exponent has a complex zero {}{:+}i",
                                    z.real(), z.imag()));
    }
    double r = z.real();
    for (int it = 0; it < 20; ++it) {
      const double d = dreduced(r);
      if (d == 0.0) break;
      const double step = reduced(r) / d;
      // Near a multiple zero d is pure rounding; only accept improving steps.
      if (!(std::abs(reduced(r - step)) < std::abs(reduced(r)))) break;
      r -= step;
      if (std::abs(step) <= 1e-16 * (1.0 + std::abs(r))) break;
    }
    out.push_back(r);
  }
  std::sort(out.begin(), out.end(), std::greater<>());

  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!(out[i] < 0.0)) {
      throw SolverError(ErrorCode::DegenerateDerivative,
                        fmt::format("non-negative zero {} besides the origin; "
                                    "the tilted mean is not positive",
                                    out[i]));
    }
    if (i > 0 && std::abs(out[i] - out[i - 1]) <=
                     1e-9 * (1.0 + std::abs(out[i]))) {
      throw SolverError(ErrorCode::RepeatedRoot,
                        fmt::format("repeated zero near {}", out[i]));
    }
  }
  out.insert(out.begin(), 0.0);
  return out;
}

ExpSum scale_function(const RationalExponent& psi_r,
                      const std::vector<double>& roots) {
  const Polynomial dnum = psi_r.numerator().derivative();
  std::vector<ExpSum::Term> terms;
  terms.reserve(roots.size());
  for (double s : roots) {
    // At a zero of the numerator, psi_R'(s) = N'(s) / D(s).
    const double slope = dnum(s) / psi_r.denominator()(s);
    terms.push_back({1.0 / slope, s});
  }
  return ExpSum(std::move(terms));
}

ExpSum scale_function(const RationalExponent& psi_r) {
  return scale_function(psi_r, scale_roots(psi_r));
}

ExpSum delta(const ExpSum& w_alpha, double alpha) {
  return w_alpha.shifted(alpha);
}

CompleteMonotonicityCertificate check_complete_monotonicity(
    const TiltedTriple& triple) {
  CompleteMonotonicityCertificate cert;
  if (triple.jump_intensity == 0.0) {
    cert.passed = true;
    cert.reason = "no jumps under the tilted measure";
  } else {
    cert.passed = std::all_of(
        triple.jumps.phases.begin(), triple.jumps.phases.end(),
        [](const Phase& ph) { return ph.weight > 0.0 && ph.rate > 0.0; });
    cert.reason = cert.passed
                      ? fmt::format("tilted jump density is a positive mixture "
                                    "of {} exponential(s)",
                                    triple.jumps.phases.size())
                      : "tilted jump mixture has a non-positive component";
  }
  cert.delta_prime_strictly_convex = cert.passed;
  return cert;
}

}  // namespace fxdiv
