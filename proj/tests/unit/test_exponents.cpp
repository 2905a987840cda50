#include <gtest/gtest.h>

#include <random>

#include "fxdiv/exponents.hpp"
#include "fxdiv/polynomial.hpp"
#include "oracles.hpp"

using namespace fxdiv;

namespace {
const ModelSpec kEx1 = validate(oracle::example1());
}

TEST(Psi, OriginAndExampleOne) {
  EXPECT_DOUBLE_EQ(psi(kEx1, 0.0, 0.0), 0.0);
  EXPECT_NEAR(psi(kEx1, 0.0, -1.0), -0.1, 1e-14);
  EXPECT_NEAR(psi(kEx1, 0.32799143, -1.0), 0.0, 1e-6);
}

TEST(Psi, OutOfDomain) {
  EXPECT_THROW(psi(kEx1, -2.0, -1.0), SolverError);
  const ModelSpec m = validate(oracle::example2_printed());
  EXPECT_THROW(psi(m, 0.0, -5.0), SolverError);
}

TEST(Psi, MatchesOracleOnRandomModels) {
  std::mt19937_64 rng(3);
  for (std::uint64_t s = 1; s <= 20; ++s) {
    const auto d = oracle::random_model(s, false);
    const ModelSpec m = validate(d);
    std::uniform_real_distribution<double> t1(-0.9 * m.surplus().claims.min_rate(), 3.0);
    std::uniform_real_distribution<double> t2(-0.9, 1.0);
    for (int i = 0; i < 5; ++i) {
      const double a = t1(rng);
      const double b = t2(rng);
      EXPECT_NEAR(psi(m, a, b), oracle::psi(d, a, b), 1e-12);
    }
  }
}

TEST(Psi, ConvexInFirstArgument) {
  for (std::uint64_t s = 1; s <= 10; ++s) {
    const ModelSpec m = validate(oracle::random_model(s, false));
    const double lo = -0.9 * m.surplus().claims.min_rate();
    const double h = 1e-3;
    for (double t = lo + h; t < 4.0; t += 0.05) {
      const double d2 = psi(m, t + h, -1.0) - 2 * psi(m, t, -1.0) + psi(m, t - h, -1.0);
      EXPECT_GE(d2 / (h * h), -1e-6) << "t=" << t;
    }
  }
}

TEST(SolveAlpha, ExampleOne) {
  const double a = solve_alpha(kEx1);
  EXPECT_NEAR(a, 0.32799143, 1e-6);
  EXPECT_NEAR(psi(kEx1, a, -1.0), 0.0, 1e-12);
}

TEST(SolveAlpha, ExampleTwoPrintedDiffersFromPrintedAlpha) {
  const auto d = oracle::example2_printed();
  const double a = solve_alpha(validate(d));
  EXPECT_NEAR(a, oracle::bisect_alpha(d), 1e-12);
  EXPECT_NEAR(a, 0.2531187, 1e-6);
  // The printed 0.557360 is a root only of the root-implied parameters.
  EXPECT_GT(std::abs(psi(validate(d), 0.557360, -1.0)), 0.1);
  EXPECT_NEAR(solve_alpha(validate(oracle::example2_root_implied())), 0.557360, 1e-6);
}

TEST(SolveAlpha, RandomModelsAgreeWithBisection) {
  for (std::uint64_t s = 1; s <= 30; ++s) {
    const auto d = oracle::random_model(s, false);
    const ModelSpec m = validate(d);
    const double a = solve_alpha(m);
    EXPECT_GT(a, 0.0);
    EXPECT_NEAR(psi(m, a, -1.0), 0.0, 1e-10);
    EXPECT_NEAR(a, oracle::bisect_alpha(d), 1e-10);
    EXPECT_LT(psi(m, 0.99 * a, -1.0), 0.0);
    EXPECT_GT(psi(m, 1.01 * a, -1.0), 0.0);
  }
}

TEST(TiltedExponent, ExampleOne) {
  const double a = solve_alpha(kEx1);
  const RationalExponent r = tilted_exponent(kEx1, a);
  EXPECT_NEAR(r(0.0), 0.0, 1e-14);
  EXPECT_NEAR(r.mean(), 1.0 / 1.695139, 1e-5);
  EXPECT_EQ(r.numerator().degree(), r.denominator().degree() + 2);
  EXPECT_NEAR(r.pole_guard(), -(2.0 + a), 1e-15);
  // (c + alpha sigma^2 - rho delta sigma) b + b^2/2 - (lambda g/(g+alpha)) b/(g+alpha+b)
  for (double b : {0.1, 0.7, 2.5}) {
    const double expect = (1.3 + a - 0.3) * b + 0.5 * b * b -
                          (2.0 * 2.0 / (2.0 + a)) * b / (2.0 + a + b);
    EXPECT_NEAR(r(b), expect, 1e-12);
  }
}

TEST(TiltedExponent, ShiftIdentityOnRandomModels) {
  std::mt19937_64 rng(11);
  for (std::uint64_t s = 1; s <= 20; ++s) {
    const auto d = oracle::random_model(s, false);
    const ModelSpec m = validate(d);
    const double a = solve_alpha(m);
    const RationalExponent r = tilted_exponent(m, a);
    const TiltedTriple t = tilted_triple(m, a);
    std::uniform_real_distribution<double> beta(r.pole_guard() + 0.1, 4.0);
    for (int i = 0; i < 5; ++i) {
      const double b = beta(rng);
      EXPECT_NEAR(r(b), psi(m, b + a, -1.0), 1e-10);
      EXPECT_NEAR(t.exponent(b), r(b), 1e-10);
    }
    EXPECT_NEAR(r.mean(), t.mean(), 1e-10);
    EXPECT_GT(r.mean(), 0.0);
  }
}

TEST(TiltedTriple, RatesShiftedByAlpha) {
  const double a = solve_alpha(kEx1);
  const TiltedTriple t = tilted_triple(kEx1, a);
  ASSERT_EQ(t.jumps.phases.size(), 1u);
  EXPECT_NEAR(t.jumps.phases[0].rate, 2.327991, 1e-6);
  EXPECT_NEAR(t.jump_intensity, 2.0 * 2.0 / (2.0 + a), 1e-14);
  for (const auto& ph : t.jumps.phases) EXPECT_GT(ph.weight, 0.0);
}

TEST(TiltedTriple, ZeroTiltWeighsCommonShocks) {
  const ModelSpec m = validate(oracle::example2_printed());
  const TiltedTriple t = tilted_triple(m, 0.0);
  EXPECT_NEAR(t.jump_intensity, 0.5 + 2.0 * 1.25, 1e-14);
  EXPECT_EQ(t.jumps, m.surplus().claims);
}

TEST(Polynomial, Arithmetic) {
  const Polynomial p = Polynomial::from_roots({1.0, -2.0});
  EXPECT_EQ(p, (Polynomial{-2.0, 1.0, 1.0}));
  EXPECT_EQ(p.derivative(), (Polynomial{1.0, 2.0}));
  EXPECT_EQ(p - p, Polynomial{0.0});
  EXPECT_EQ((p - p).degree(), 0);
  EXPECT_EQ(p.deflate(1.0), (Polynomial{2.0, 1.0}));
  EXPECT_DOUBLE_EQ(p(3.0), 10.0);
}

TEST(Polynomial, RootsOfKnownFactors) {
  const auto r = roots(Polynomial::from_roots({-1.0, -2.0, -3.5, 0.25}));
  std::vector<double> re;
  for (auto z : r) {
    EXPECT_NEAR(z.imag(), 0.0, 1e-12);
    re.push_back(z.real());
  }
  std::sort(re.begin(), re.end());
  EXPECT_NEAR(re[0], -3.5, 1e-12);
  EXPECT_NEAR(re[1], -2.0, 1e-12);
  EXPECT_NEAR(re[2], -1.0, 1e-12);
  EXPECT_NEAR(re[3], 0.25, 1e-12);
}

TEST(Polynomial, ComplexRoots) {
  const auto r = roots(Polynomial{5.0, -2.0, 1.0});  // 1 +- 2i
  ASSERT_EQ(r.size(), 2u);
  for (auto z : r) {
    EXPECT_NEAR(z.real(), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(z.imag()), 2.0, 1e-12);
  }
}
