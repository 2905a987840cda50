#include "fxdiv/polynomial.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fxdiv {

Polynomial::Polynomial(std::vector<double> coefficients)
    : c_(std::move(coefficients)) {
  trim();
}

Polynomial::Polynomial(std::initializer_list<double> coefficients)
    : c_(coefficients) {
  trim();
}

Polynomial Polynomial::from_roots(const std::vector<double>& roots,
                                  double leading) {
  Polynomial p{leading};
  for (double r : roots) p = p * Polynomial{-r, 1.0};
  return p;
}

void Polynomial::trim() {
  while (c_.size() > 1 && c_.back() == 0.0) c_.pop_back();
}

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::complex<double> Polynomial::operator()(std::complex<double> z) const {
  std::complex<double> acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return Polynomial{0.0};
  std::vector<double> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) {
    d[i - 1] = static_cast<double>(i) * c_[i];
  }
  return Polynomial(std::move(d));
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  std::vector<double> out(std::max(c_.size(), other.c_.size()), 0.0);
  for (std::size_t i = 0; i < c_.size(); ++i) out[i] += c_[i];
  for (std::size_t i = 0; i < other.c_.size(); ++i) out[i] += other.c_[i];
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  return *this + other * -1.0;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  if (c_.empty() || other.c_.empty()) return Polynomial{0.0};
  std::vector<double> out(c_.size() + other.c_.size() - 1, 0.0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    for (std::size_t j = 0; j < other.c_.size(); ++j) {
      out[i + j] += c_[i] * other.c_[j];
    }
  }
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator*(double k) const {
  std::vector<double> out = c_;
  for (double& v : out) v *= k;
  return Polynomial(std::move(out));
}

Polynomial Polynomial::deflate(double root) const {
  if (c_.size() <= 1) return Polynomial{0.0};
  std::vector<double> q(c_.size() - 1);
  double carry = 0.0;
  for (std::size_t i = c_.size() - 1; i >= 1; --i) {
    carry = carry * root + c_[i];
    q[i - 1] = carry;
  }
  return Polynomial(std::move(q));
}

std::vector<std::complex<double>> roots(const Polynomial& p) {
  const int n = p.degree();
  if (n < 1) return {};
  const auto& c = p.coefficients();
  if (c.back() == 0.0) throw std::invalid_argument("zero leading coefficient");

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -c[i] / c.back();

  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("companion eigenvalue iteration failed");
  }

  const Polynomial dp = p.derivative();
  std::vector<std::complex<double>> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    std::complex<double> z = solver.eigenvalues()[i];
    if (std::abs(z.imag()) < 1e-14 * (1.0 + std::abs(z.real()))) z = z.real();
    // Newton polish; keep the iterate only while the residual improves.
    double best = std::abs(p(z));
    for (int it = 0; it < 50 && best > 0.0; ++it) {
      const std::complex<double> d = dp(z);
      if (d == 0.0) break;
      const std::complex<double> next = z - p(z) / d;
      const double r = std::abs(p(next));
      if (!(r < best)) break;
      z = next;
      best = r;
    }
    out.push_back(z);
  }
  return out;
}

}  // namespace fxdiv
