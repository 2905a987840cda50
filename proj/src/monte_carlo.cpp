#include "fxdiv/monte_carlo.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>
#include <vector>

#include "fxdiv/exponents.hpp"
#include "fxdiv/philox.hpp"

namespace fxdiv {

namespace {

double sample_mixture(const ClaimMixture& m, PhiloxStream& rng) {
  const double u = rng.uniform();
  double acc = 0.0;
  for (const auto& ph : m.phases) {
    acc += ph.weight;
    if (u < acc) return rng.exponential(ph.rate);
  }
  return rng.exponential(m.phases.back().rate);
}

void check_config(const SimConfig& cfg) {
  if (!(cfg.dt > 0.0 && cfg.dt <= 1e-2)) {
    throw SolverError(ErrorCode::InvalidConfig,
                      fmt::format("dt = {} must lie in (0, 0.01]", cfg.dt));
  }
  if (!(cfg.barrier >= 0.0) || !std::isfinite(cfg.barrier)) {
    throw SolverError(ErrorCode::InvalidConfig,
                      fmt::format("barrier = {} must be >= 0", cfg.barrier));
  }
  if (!std::isfinite(cfg.x) || !std::isfinite(cfg.l)) {
    throw SolverError(ErrorCode::InvalidConfig, "start point must be finite");
  }
}

}  // namespace

double default_horizon(const ModelSpec& model) {
  return std::log(1e4) / -psi(model, 0.0, -1.0);
}

PathOutcome simulate_path(const ModelSpec& model, const SimConfig& cfg,
                          std::uint64_t index) {
  check_config(cfg);
  const auto& s = model.surplus();
  const auto& e = model.exchange();
  const double rho = model.dependence().rho;
  const double theta = model.dependence().theta;
  const double c = s.premium;
  const double sigma = s.sigma;
  const double var = sigma * sigma;
  const double perp = std::sqrt(std::max(0.0, 1.0 - rho * rho));
  const double a = cfg.barrier;
  const double horizon = cfg.horizon > 0.0 ? cfg.horizon : default_horizon(model);
  const double rate = model.total_claim_intensity();
  const auto& w = model.penalty();

  PathOutcome out;
  double r = cfg.x;
  double y = cfg.l;
  if (r < 0.0) {
    out.penalty = std::exp(-y) * w(r);
    out.ruined = true;
    return out;
  }
  if (r > a) {
    out.dividends = (r - a) * std::exp(-y);
    r = a;
  }

  PhiloxStream rng(cfg.seed, index);
  constexpr double kNever = std::numeric_limits<double>::infinity();
  double t = 0.0;
  double next_jump = rate > 0.0 ? rng.exponential(rate) : kNever;
  while (t < horizon) {
    const bool jump = next_jump - t <= cfg.dt && next_jump <= horizon;
    const double h = jump ? next_jump - t : std::min(cfg.dt, horizon - t);

    const double db = std::sqrt(h) * rng.normal();
    const double dperp = std::sqrt(h) * rng.normal();
    double r1 = r + c * h + sigma * db;
    const double y1 = y + e.drift * h + e.delta * (rho * db + perp * dperp);

    // Running maximum of the free path given its endpoints; the reflected
    // path pays exactly the excess of that maximum over a.
    const double top =
        0.5 * (r + r1 + std::sqrt((r1 - r) * (r1 - r) -
                                  2.0 * var * h * std::log(rng.uniform())));
    if (top > a) {
      const double paid = top - a;
      if (top - paid < 0.0) {
        throw SolverError(ErrorCode::InvalidConfig,
                          "dividend would cause ruin");
      }
      // Payment instant and the driving Brownian values there, interpolated
      // from the position of the maximum.
      const double up = top - r;
      const double down = top - r1;
      const double tm = up + down > 0.0 ? h * up / (up + down) : 0.5 * h;
      const double b_at = (top - r - c * tm) / sigma;
      const double y_pay = y + e.drift * tm +
                           e.delta * (rho * b_at + perp * dperp * tm / h);
      out.dividends += paid * std::exp(-y_pay);
      r1 -= paid;
    }

    // Diffusive ruin: at the end point, or inside the step via the bridge.
    if (r1 <= 0.0 ||
        rng.uniform() < std::exp(-2.0 * r * r1 / (var * h))) {
      out.penalty = std::exp(-y1) * w(0.0);
      out.ruined = true;
      return out;
    }
    r = r1;
    y = y1;

    if (jump) {
      t = next_jump;
      const bool common = rng.uniform() * rate < theta;
      r -= sample_mixture(s.claims, rng);
      if (common) y -= sample_mixture(*e.jumps, rng);
      if (r < 0.0) {
        out.penalty = std::exp(-y) * w(r);
        out.ruined = true;
        return out;
      }
      next_jump = t + rng.exponential(rate);
    } else {
      t += h;
    }
  }
  return out;
}

Estimate estimate_value(const ModelSpec& model, const SimConfig& cfg) {
  check_config(cfg);
  if (cfg.paths < 1000) {
    throw SolverError(ErrorCode::InvalidConfig,
                      fmt::format("paths = {} must be at least 1000", cfg.paths));
  }
  SimConfig run = cfg;
  if (!(run.horizon > 0.0)) run.horizon = default_horizon(model);

  const std::uint64_t n = run.paths;
  std::vector<double> totals(n);
  std::vector<char> ruined(n);
  unsigned workers = run.threads ? run.threads : std::thread::hardware_concurrency();
  workers = static_cast<unsigned>(
      std::clamp<std::uint64_t>(workers ? workers : 1, 1, n));

  auto work = [&](unsigned id) {
    for (std::uint64_t i = id; i < n; i += workers) {
      const PathOutcome o = simulate_path(model, run, i);
      totals[i] = o.dividends + o.penalty;
      ruined[i] = o.ruined;
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned id = 0; id < workers; ++id) pool.emplace_back(work, id);
    for (auto& th : pool) th.join();
  }

  double sum = 0.0;
  std::uint64_t ruins = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    sum += totals[i];
    ruins += ruined[i] ? 1 : 0;
  }
  const double mean = sum / static_cast<double>(n);
  double ss = 0.0;
  for (double v : totals) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));

  Estimate est;
  est.mean = mean;
  est.std_error = sd / std::sqrt(static_cast<double>(n));
  est.paths = n;
  est.horizon = run.horizon;
  est.ruin_fraction = static_cast<double>(ruins) / static_cast<double>(n);
  return est;
}

}  // namespace fxdiv
