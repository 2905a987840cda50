#pragma once

#include <string>
#include <vector>

#include "fxdiv/exp_sum.hpp"
#include "fxdiv/exponents.hpp"

namespace fxdiv {

/// Zeros of the tilted exponent: 0 first, then the strictly negative simple
/// zeros in decreasing order.
std::vector<double> scale_roots(const RationalExponent& psi_r);

/// W^alpha(x) = sum_k e^{s_k x} / psi_R'(s_k) for x >= 0 (zero for x < 0),
/// the inverse Laplace transform of 1 / psi_R.
ExpSum scale_function(const RationalExponent& psi_r);
ExpSum scale_function(const RationalExponent& psi_r,
                      const std::vector<double>& roots);

/// Delta(x) = e^{alpha x} W^alpha(x).
ExpSum delta(const ExpSum& w_alpha, double alpha);

struct CompleteMonotonicityCertificate {
  bool passed = false;
  /// Consequence recorded with the certificate: Delta' is strictly convex,
  /// so without a penalty the barrier strategy is optimal.
  bool delta_prime_strictly_convex = false;
  std::string reason;
};

/// A positive mixture of exponential densities is completely monotone.
CompleteMonotonicityCertificate check_complete_monotonicity(
    const TiltedTriple& triple);

}  // namespace fxdiv
