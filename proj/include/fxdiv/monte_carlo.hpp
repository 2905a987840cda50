#pragma once

#include <cstdint>

#include "fxdiv/model.hpp"

namespace fxdiv {

struct SimConfig {
  double dt = 1e-3;
  /// Non-positive means default_horizon(model).
  double horizon = 0.0;
  std::uint64_t paths = 100000;
  std::uint64_t seed = 42;
  double barrier = 0.0;
  double x = 0.0;
  double l = 0.0;
  /// 0 means one worker per hardware thread.
  unsigned threads = 0;
};

/// T with e^{psi(0,-1) T} = 1e-4.
double default_horizon(const ModelSpec& model);

struct PathOutcome {
  double dividends = 0.0;  // sum of e^{-Y} dL
  double penalty = 0.0;    // e^{-Y_T} w(R_T) at ruin
  bool ruined = false;
};

/// One path of the barrier strategy. Deterministic in (cfg.seed, index).
/// Throws SolverError(InvalidConfig) for dt outside (0, 1e-2] or a negative
/// barrier.
PathOutcome simulate_path(const ModelSpec& model, const SimConfig& cfg,
                          std::uint64_t index);

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t paths = 0;
  double horizon = 0.0;
  double ruin_fraction = 0.0;
};

/// Requires cfg.paths >= 1000. Paths run in parallel; the totals are summed
/// in path order, so the result does not depend on the thread count.
Estimate estimate_value(const ModelSpec& model, const SimConfig& cfg);

}  // namespace fxdiv
