#include <gtest/gtest.h>

#include <cstring>
#include <set>

#include "fxdiv/barrier.hpp"
#include "fxdiv/monte_carlo.hpp"
#include "fxdiv/philox.hpp"
#include "oracles.hpp"

using namespace fxdiv;

namespace {

const ModelSpec& ex1() {
  static const ModelSpec m = validate(oracle::example1());
  return m;
}

const BarrierSolution& ex1_solution() {
  static const BarrierSolution sol = solve(ex1());
  return sol;
}

ModelDescription near_deterministic(double delta) {
  ModelDescription m;
  m.surplus = {1.0, 1e-6, 0.0, {{{1.0, 1.0}}}};
  m.exchange = {0.6, delta, std::nullopt};
  return m;
}

// Dividends at rate c from the hitting time of a until the horizon.
double annuity(double c, double q, double x, double a, double l, double horizon) {
  const double ta = (a - x) / c;
  return std::exp(-l) * (c / q) * (std::exp(-q * ta) - std::exp(-q * horizon));
}

}  // namespace

TEST(Philox, KnownAnswerVectors) {
  EXPECT_EQ(philox4x32({0, 0, 0, 0}, {0, 0}),
            (PhiloxCounter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  EXPECT_EQ(philox4x32({~0u, ~0u, ~0u, ~0u}, {~0u, ~0u}),
            (PhiloxCounter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
  EXPECT_EQ(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                       {0xa4093822, 0x299f31d0}),
            (PhiloxCounter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(Philox, StreamsAreDistinctAndUniform) {
  PhiloxStream a(1, 0), b(1, 1), c(2, 0);
  std::set<double> seen;
  double sum = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double u = a.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
    seen.insert(u);
  }
  EXPECT_NEAR(sum / 10000, 0.5, 0.01);
  EXPECT_EQ(seen.size(), 10000u);
  EXPECT_NE(b.uniform(), PhiloxStream(1, 0).uniform());
  EXPECT_NE(c.uniform(), PhiloxStream(1, 0).uniform());
  PhiloxStream n(9, 9);
  double m1 = 0.0, m2 = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double z = n.normal();
    m1 += z;
    m2 += z * z;
  }
  EXPECT_NEAR(m1 / 1e5, 0.0, 0.02);
  EXPECT_NEAR(m2 / 1e5, 1.0, 0.02);
}

TEST(SimulatePath, NegativeStartIsImmediateRuin) {
  auto d = oracle::example1();
  d.penalty = PenaltySpec::affine(-1.0, 0.5);
  SimConfig cfg;
  cfg.barrier = 1.0;
  cfg.x = -0.4;
  cfg.l = 0.3;
  const PathOutcome o = simulate_path(validate(d), cfg, 0);
  EXPECT_TRUE(o.ruined);
  EXPECT_EQ(o.dividends, 0.0);
  EXPECT_DOUBLE_EQ(o.penalty, std::exp(-0.3) * -1.2);
}

TEST(SimulatePath, LumpAboveBarrier) {
  SimConfig cfg;
  cfg.barrier = 1.0;
  cfg.x = 6.0;
  cfg.l = 0.2;
  cfg.horizon = 1e-12;
  const PathOutcome o = simulate_path(ex1(), cfg, 3);
  EXPECT_NEAR(o.dividends, 5.0 * std::exp(-0.2), 1e-4);
}

TEST(SimulatePath, RejectsBadConfig) {
  SimConfig cfg;
  cfg.dt = 0.05;
  EXPECT_THROW(simulate_path(ex1(), cfg, 0), SolverError);
  cfg.dt = 1e-3;
  cfg.barrier = -1.0;
  EXPECT_THROW(simulate_path(ex1(), cfg, 0), SolverError);
}

TEST(SimulatePath, DeterministicAnnuity) {
  const ModelSpec m = validate(near_deterministic(0.0));
  SimConfig cfg;
  cfg.barrier = 1.0;
  cfg.x = 0.5;
  cfg.l = 0.3;
  cfg.dt = 1e-3;
  const PathOutcome o = simulate_path(m, cfg, 0);
  const double expect = annuity(1.0, 0.6, 0.5, 1.0, 0.3, default_horizon(m));
  EXPECT_FALSE(o.ruined);
  EXPECT_NEAR(o.dividends, expect, 2e-3);
}

TEST(EstimateValue, StochasticDiscountAnnuity) {
  const ModelSpec m = validate(near_deterministic(0.5));
  SimConfig cfg;
  cfg.barrier = 1.0;
  cfg.x = 0.5;
  cfg.paths = 2000;
  cfg.dt = 1e-2;
  const Estimate e = estimate_value(m, cfg);
  const double expect = annuity(1.0, 0.6 - 0.125, 0.5, 1.0, 0.0, e.horizon);
  EXPECT_NEAR(e.mean, expect, 3.0 * e.std_error + 1e-2);
}

TEST(EstimateValue, RequiresEnoughPaths) {
  SimConfig cfg;
  cfg.paths = 999;
  try {
    estimate_value(ex1(), cfg);
    FAIL();
  } catch (const SolverError& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidConfig);
  }
}

TEST(EstimateValue, ReproducibleAcrossThreadCounts) {
  SimConfig cfg;
  cfg.barrier = 0.84;
  cfg.x = 0.5;
  cfg.paths = 2000;
  cfg.dt = 1e-2;
  cfg.threads = 1;
  const Estimate a = estimate_value(ex1(), cfg);
  cfg.threads = 3;
  const Estimate b = estimate_value(ex1(), cfg);
  EXPECT_EQ(std::memcmp(&a.mean, &b.mean, sizeof(double)), 0);
  EXPECT_EQ(std::memcmp(&a.std_error, &b.std_error, sizeof(double)), 0);
}

TEST(EstimateValue, StandardErrorScaling) {
  SimConfig cfg;
  cfg.barrier = ex1_solution().a_star();
  cfg.x = cfg.barrier;
  cfg.dt = 1e-2;
  cfg.paths = 1000;
  const Estimate small = estimate_value(ex1(), cfg);
  cfg.paths = 100000;
  const Estimate large = estimate_value(ex1(), cfg);
  const double ratio = small.std_error / large.std_error;
  EXPECT_GT(ratio, 6.0);
  EXPECT_LT(ratio, 16.0);
}

TEST(EstimateValue, AgreesWithAnalyticValue) {
  SimConfig cfg;
  cfg.barrier = ex1_solution().a_star();
  cfg.x = cfg.barrier;
  cfg.paths = 20000;
  const Estimate e = estimate_value(ex1(), cfg);
  EXPECT_NEAR(e.mean, ex1_solution().value_on_barrier(), 3.0 * e.std_error);
}

TEST(EstimateValue, StepHalvingConsistent) {
  SimConfig cfg;
  cfg.barrier = ex1_solution().a_star();
  cfg.x = cfg.barrier;
  cfg.paths = 20000;
  cfg.dt = 2e-3;
  const Estimate coarse = estimate_value(ex1(), cfg);
  cfg.dt = 1e-3;
  const Estimate fine = estimate_value(ex1(), cfg);
  const double se = std::hypot(coarse.std_error, fine.std_error);
  EXPECT_LT(std::abs(coarse.mean - fine.mean), 3.0 * se);
}

TEST(EstimateValue, OtherBarriersDoNotBeatOptimum) {
  const auto& sol = ex1_solution();
  const double a = sol.a_star();
  for (double b : {0.5 * a, 2.0 * a}) {
    SimConfig cfg;
    cfg.barrier = b;
    cfg.x = a;
    cfg.paths = 20000;
    const Estimate e = estimate_value(ex1(), cfg);
    EXPECT_GE(value_function(sol, a, 0.0).value, e.mean - 3.0 * e.std_error);
    // Analytic value of the alternative barrier is strictly lower.
    const BarrierSolution alt = make_barrier_solution(sol.components(), b);
    EXPECT_LT(alt.F(a), sol.F(a));
    EXPECT_NEAR(e.mean, alt.F(a), 3.0 * e.std_error);
  }
}

TEST(EstimateValue, PenaltyAccrued) {
  auto d = oracle::example1();
  d.penalty = PenaltySpec::affine(-1.0, 0.0);
  const ModelSpec m = validate(d);
  const BarrierSolution sol = solve(m);
  SimConfig cfg;
  cfg.barrier = sol.a_star();
  cfg.x = 0.5;
  cfg.paths = 20000;
  const Estimate e = estimate_value(m, cfg);
  EXPECT_NEAR(e.mean, sol.F(0.5), 3.0 * e.std_error);
}
