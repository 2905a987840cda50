#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "fxdiv/exp_sum.hpp"
#include "fxdiv/scale.hpp"
#include "oracles.hpp"

using namespace fxdiv;

namespace {

struct Scale {
  double alpha;
  RationalExponent psi_r;
  std::vector<double> roots;
  ExpSum w;
};

Scale build(const ModelDescription& d) {
  const ModelSpec m = validate(d);
  const double a = solve_alpha(m);
  RationalExponent r = tilted_exponent(m, a);
  auto roots = scale_roots(r);
  ExpSum w = scale_function(r, roots);
  return {a, std::move(r), std::move(roots), std::move(w)};
}

double coefficient_at(const ExpSum& f, double rate) {
  for (const auto& t : f.terms()) {
    if (std::abs(t.rate - rate) < 1e-6) return t.coefficient;
  }
  return NAN;
}

}  // namespace

TEST(ScaleRoots, ExampleOne) {
  const Scale s = build(oracle::example1());
  ASSERT_EQ(s.roots.size(), 3u);
  EXPECT_EQ(s.roots[0], 0.0);
  EXPECT_NEAR(s.roots[1], -0.630984, 1e-5);
  EXPECT_NEAR(s.roots[2], -4.352991, 1e-5);
}

TEST(ScaleRoots, ExampleTwoRootImplied) {
  const Scale s = build(oracle::example2_root_implied());
  ASSERT_EQ(s.roots.size(), 3u);
  EXPECT_NEAR(s.roots[1], -1.22745, 1e-4);
  EXPECT_NEAR(s.roots[2], -5.644632, 1e-4);
}

TEST(ScaleRoots, KnownFactorization) {
  // beta (beta + 1)(beta + 2) sigma^2 / 2 over a constant denominator
  const RationalExponent r(Polynomial::from_roots({0.0, -1.0, -2.0}, 0.5),
                           Polynomial{1.0}, -INFINITY);
  const auto roots = scale_roots(r);
  ASSERT_EQ(roots.size(), 3u);
  EXPECT_EQ(roots[0], 0.0);
  EXPECT_NEAR(roots[1], -1.0, 1e-14);
  EXPECT_NEAR(roots[2], -2.0, 1e-14);
}

TEST(ScaleRoots, Failures) {
  const RationalExponent repeated(Polynomial::from_roots({0.0, -1.0, -1.0}),
                                  Polynomial{1.0}, -INFINITY);
  try {
    scale_roots(repeated);
    FAIL();
  } catch (const SolverError& e) {
    EXPECT_EQ(e.code(), ErrorCode::RepeatedRoot);
  }
  const RationalExponent complex(
      Polynomial{0.0, 5.0, 2.0, 1.0}, Polynomial{1.0}, -INFINITY);  // b(b^2+2b+5)
  try {
    scale_roots(complex);
    FAIL();
  } catch (const SolverError& e) {
    EXPECT_EQ(e.code(), ErrorCode::ComplexRoot);
  }
  const RationalExponent shifted(Polynomial{1.0, 1.0, 1.0}, Polynomial{1.0},
                                 -INFINITY);
  try {
    scale_roots(shifted);
    FAIL();
  } catch (const SolverError& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingOriginRoot);
  }
}

TEST(ScaleFunction, ExampleOneCoefficients) {
  const Scale s = build(oracle::example1());
  EXPECT_NEAR(coefficient_at(s.w, 0.0), 1.695139, 1e-4);
  EXPECT_NEAR(coefficient_at(s.w, -0.630984), -1.445168, 1e-4);
  EXPECT_NEAR(coefficient_at(s.w, -4.352991), -0.249971, 1e-4);
  EXPECT_NEAR(s.w(0.0), 0.0, 1e-12);
}

TEST(ScaleFunction, PartialFractionIdentityAtOne) {
  const Scale s = build(oracle::example1());
  double sum = 0.0;
  for (const auto& t : s.w.terms()) sum += t.coefficient / (1.0 - t.rate);
  EXPECT_NEAR(s.psi_r(1.0) * sum, 1.0, 1e-10);
}

TEST(ScaleFunction, LaplaceIdentityOnRandomModels) {
  std::mt19937_64 rng(5);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Scale s = build(oracle::random_model(seed, false));
    std::uniform_real_distribution<double> beta(0.1, 10.0);
    for (int i = 0; i < 20; ++i) {
      const double b = s.w.max_rate() + beta(rng);
      EXPECT_NEAR(s.psi_r(b) * s.w.laplace(b), 1.0, 1e-9) << "seed " << seed;
    }
    EXPECT_NEAR(s.w(0.0), 0.0, 1e-8);
  }
}

TEST(ScaleFunction, NonnegativeAndNondecreasing) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Scale s = build(oracle::random_model(seed, false));
    double prev = 0.0;
    for (double x = 0.0; x <= 50.0; x += 0.01) {
      const double v = s.w(x);
      EXPECT_GE(v, -1e-12);
      EXPECT_GE(v, prev - 1e-12);
      prev = v;
    }
  }
}

TEST(Delta, ExampleOne) {
  const Scale s = build(oracle::example1());
  const ExpSum d = delta(s.w, s.alpha);
  EXPECT_NEAR(coefficient_at(d, 0.327991), 1.695139, 1e-4);
  EXPECT_NEAR(coefficient_at(d, -0.302992), -1.445168, 1e-4);
  EXPECT_NEAR(coefficient_at(d, -4.024999), -0.249971, 1e-4);
  EXPECT_NEAR(d(0.0), 0.0, 1e-12);
}

TEST(Delta, ExampleTwoRootImplied) {
  const Scale s = build(oracle::example2_root_implied());
  const ExpSum d = delta(s.w, s.alpha);
  EXPECT_NEAR(coefficient_at(d, 0.557360), 0.738215, 1e-4);
  EXPECT_NEAR(coefficient_at(d, -1.22745 + 0.557360), -0.490573, 1e-4);
  EXPECT_NEAR(coefficient_at(d, -5.644632 + 0.557360), -0.2476417475, 1e-4);
}

TEST(Delta, ThirdDerivativePositive) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Scale s = build(oracle::random_model(seed, false));
    const ExpSum d = delta(s.w, s.alpha);
    for (double x = 0.01; x <= 50.0; x += 0.01) {
      ASSERT_GT(d(x, 3), 0.0) << "seed " << seed << " x " << x;
      ASSERT_GT(d(x, 1), 0.0);
    }
  }
}

TEST(Delta, DerivativesMatchFiniteDifferences) {
  const Scale s = build(oracle::example1());
  const ExpSum d = delta(s.w, s.alpha);
  auto f = [&](double x) { return d(x); };
  for (double x : {0.2, 0.84, 1.7, 5.0}) {
    EXPECT_NEAR(oracle::central_difference(f, x, 1, 1e-5) / d(x, 1), 1.0, 1e-6);
    EXPECT_NEAR(oracle::central_difference(f, x, 2, 1e-4), d(x, 2),
                1e-6 * std::max(1.0, std::abs(d(x, 2))));
  }
}

TEST(CompleteMonotonicity, Certificates) {
  for (const auto& d : {oracle::example1(), oracle::example2_root_implied()}) {
    const ModelSpec m = validate(d);
    const auto cert = check_complete_monotonicity(tilted_triple(m, solve_alpha(m)));
    EXPECT_TRUE(cert.passed);
    EXPECT_TRUE(cert.delta_prime_strictly_convex);
  }
  TiltedTriple two;
  two.drift = 1.0;
  two.sigma = 1.0;
  two.jump_intensity = 1.0;
  two.jumps.phases = {{0.3, 1.0}, {0.7, 4.0}};
  EXPECT_TRUE(check_complete_monotonicity(two).passed);
  two.jumps.phases[0].weight = -0.1;
  EXPECT_FALSE(check_complete_monotonicity(two).passed);
}

TEST(ExpSum, Algebra) {
  const ExpSum f({{1.0, 0.5}, {2.0, -1.0}, {3.0, 0.5}});
  ASSERT_EQ(f.terms().size(), 2u);
  EXPECT_DOUBLE_EQ(f(0.0), 6.0);
  EXPECT_DOUBLE_EQ(f(0.0, 1), 4.0 * 0.5 - 2.0);
  EXPECT_DOUBLE_EQ(f.derivative(2)(0.0), f(0.0, 2));
  EXPECT_DOUBLE_EQ(f.scaled(2.0)(1.0), 2.0 * f(1.0));
  EXPECT_NEAR(f.shifted(0.25)(2.0), std::exp(0.5) * f(2.0), 1e-12);
  EXPECT_NEAR(f.laplace(1.0), 4.0 / 0.5 + 2.0 / 2.0, 1e-14);
  EXPECT_THROW(f.laplace(0.5), std::domain_error);
  EXPECT_THROW(f(2000.0), SolverError);
  EXPECT_NO_THROW(ExpSum({{1.0, -3.0}})(1e4));
}
