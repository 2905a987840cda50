#include "fxdiv/exp_sum.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fxdiv/error.hpp"

namespace fxdiv {

namespace {
constexpr double kExponentLimit = 700.0;
}

ExpSum::ExpSum(std::vector<Term> terms) {
  for (const auto& t : terms) {
    auto it = std::find_if(terms_.begin(), terms_.end(),
                           [&](const Term& u) { return u.rate == t.rate; });
    if (it == terms_.end()) {
      terms_.push_back(t);
    } else {
      it->coefficient += t.coefficient;
    }
  }
}

double ExpSum::operator()(double x, int order) const {
  double acc = 0.0;
  for (const auto& t : terms_) {
    const double e = t.rate * x;
    if (e > kExponentLimit) {
      throw SolverError(ErrorCode::Overflow,
                        fmt::format("exponential sum evaluated at x = {} "
                                    "overflows (rate {})",
                                    x, t.rate));
    }
    acc += t.coefficient * std::pow(t.rate, order) * std::exp(e);
  }
  return acc;
}

ExpSum ExpSum::derivative(int order) const {
  ExpSum out;
  for (const auto& t : terms_) {
    out.terms_.push_back({t.coefficient * std::pow(t.rate, order), t.rate});
  }
  return out;
}

ExpSum ExpSum::scaled(double k) const {
  ExpSum out = *this;
  for (auto& t : out.terms_) t.coefficient *= k;
  return out;
}

ExpSum ExpSum::shifted(double shift) const {
  ExpSum out = *this;
  for (auto& t : out.terms_) t.rate += shift;
  return out;
}

double ExpSum::laplace(double beta) const {
  double acc = 0.0;
  for (const auto& t : terms_) {
    if (!(beta > t.rate)) {
      throw std::domain_error("Laplace transform outside its half-plane");
    }
    acc += t.coefficient / (beta - t.rate);
  }
  return acc;
}

double ExpSum::max_rate() const {
  double r = -std::numeric_limits<double>::infinity();
  for (const auto& t : terms_) r = std::max(r, t.rate);
  return r;
}

ExpSum ExpSum::operator+(const ExpSum& other) const {
  std::vector<Term> all = terms_;
  all.insert(all.end(), other.terms_.begin(), other.terms_.end());
  return ExpSum(std::move(all));
}

}  // namespace fxdiv
