#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

namespace fxdiv {

/// Real polynomial with coefficients in ascending order of degree.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coefficients);
  Polynomial(std::initializer_list<double> coefficients);

  /// prod_i (x - r_i) scaled by `leading`.
  static Polynomial from_roots(const std::vector<double>& roots,
                               double leading = 1.0);

  const std::vector<double>& coefficients() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  double leading() const { return c_.empty() ? 0.0 : c_.back(); }

  double operator()(double x) const;
  std::complex<double> operator()(std::complex<double> z) const;
  Polynomial derivative() const;

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial operator*(double k) const;

  /// Quotient of synthetic division by (x - root); the remainder is dropped.
  Polynomial deflate(double root) const;

  bool operator==(const Polynomial&) const = default;

 private:
  void trim();

  std::vector<double> c_;
};

/// All complex roots: companion-matrix eigenvalues, each Newton-polished on
/// the original polynomial.
std::vector<std::complex<double>> roots(const Polynomial& p);

}  // namespace fxdiv
