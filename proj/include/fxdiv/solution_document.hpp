#pragma once

#include <array>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fxdiv/barrier.hpp"
#include "fxdiv/hjb_ode.hpp"
#include "fxdiv/model.hpp"

namespace fxdiv {

struct CertificateEntry {
  bool passed = false;
  double worst = 0.0;
  double witness = 0.0;

  bool operator==(const CertificateEntry&) const = default;
};

struct ScaleSection {
  double alpha = 0.0;
  std::vector<double> psi_numerator;
  std::vector<double> psi_denominator;
  std::vector<double> roots;
  std::vector<ExpSum::Term> w_alpha;
  std::vector<ExpSum::Term> delta;
  double kappa = 0.0;
  std::vector<ExpSum::Term> gerber_shiu;
  double a_star = 0.0;
  double value_at_barrier = 0.0;

  CertificateEntry monotone;
  CertificateEntry generator;
  bool monotonicity_passed = false;
  bool monotonicity_applicable = false;
  double interior_residual = 0.0;
  double smooth_fit_residual = 0.0;
  bool optimal = false;

  bool operator==(const ScaleSection&) const = default;
};

struct OdeSection {
  double a2 = 0.0;
  double a1 = 0.0;
  double a0 = 0.0;
  double gamma = 0.0;
  /// (real, imaginary) per stored root.
  std::vector<std::array<double, 2>> roots;
  std::array<double, 3> coefficients{};
  double a_star = 0.0;
  double value_at_barrier = 0.0;
  bool derivative_check = false;

  bool operator==(const OdeSection&) const = default;
};

struct CrossCheckSection {
  double max_abs = 0.0;
  double relative = 0.0;
  bool passed = false;

  bool operator==(const CrossCheckSection&) const = default;
};

struct SolutionDocument {
  ModelDescription model;
  std::string route;
  double a_star = 0.0;
  double value_at_barrier = 0.0;
  std::optional<ScaleSection> scale;
  std::optional<OdeSection> ode;
  std::optional<CrossCheckSection> cross_check;

  /// Scale certificate (ii), ODE derivative check and route agreement,
  /// whichever are present.
  bool verified() const;

  bool operator==(const SolutionDocument&) const = default;
};

ScaleSection make_scale_section(const BarrierSolution& sol,
                                const OptimalityReport& report);
OdeSection make_ode_section(const OdeSolution& ode);

nlohmann::json to_json(const SolutionDocument& doc);
SolutionDocument solution_from_json(const nlohmann::json& j);

/// Shortest round-trip decimal.
std::string format_double(double v);

/// Rows x, F, F', F'', 1/Delta'(x), H(x) for x = from + i step,
/// i < floor((to - from) / step) + 1.
void write_sweep_csv(const BarrierSolution& sol, double from, double to,
                     double step, std::ostream& out);

}  // namespace fxdiv
