#pragma once

#include <vector>

namespace fxdiv {

/// f(x) = sum_k coefficient_k * exp(rate_k * x), with pairwise distinct rates.
///
/// Carrier for the scale function, Delta, the Gerber-Shiu function and the
/// value function below the barrier. Derivatives, products with e^{a x} and
/// Laplace transforms are exact.
class ExpSum {
 public:
  struct Term {
    double coefficient = 0.0;
    double rate = 0.0;

    bool operator==(const Term&) const = default;
  };

  ExpSum() = default;
  /// Terms with equal rates are merged.
  explicit ExpSum(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  /// Value of the `order`-th derivative at x. Throws SolverError(Overflow)
  /// when rate_k * x exceeds 700 for some k.
  double operator()(double x, int order = 0) const;

  ExpSum derivative(int order = 1) const;
  ExpSum scaled(double k) const;
  /// e^{shift x} f(x).
  ExpSum shifted(double shift) const;
  /// int_0^inf e^{-beta x} f(x) dx; requires beta > max rate.
  double laplace(double beta) const;
  double max_rate() const;

  ExpSum operator+(const ExpSum& other) const;

  bool operator==(const ExpSum&) const = default;

 private:
  std::vector<Term> terms_;
};

}  // namespace fxdiv
