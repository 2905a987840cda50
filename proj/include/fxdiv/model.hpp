#pragma once

#include <optional>
#include <vector>

#include "fxdiv/error.hpp"

namespace fxdiv {

/// One exponential component of a hyperexponential jump-size law.
struct Phase {
  double weight = 1.0;
  double rate = 1.0;

  bool operator==(const Phase&) const = default;
};

/// Finite positive mixture of exponential densities, sum_i w_i r_i e^{-r_i z}.
struct ClaimMixture {
  std::vector<Phase> phases;

  double mean() const;
  /// E[e^{-s Z}] = sum_i w_i r_i / (r_i + s); finite for s > -min rate.
  double laplace(double s) const;
  /// d/ds E[e^{-s Z}].
  double laplace_derivative(double s) const;
  double min_rate() const;

  bool operator==(const ClaimMixture&) const = default;
};

struct SurplusSpec {
  double premium = 0.0;     // c
  double sigma = 0.0;       // diffusion coefficient, must be > 0
  double lambda_bar = 0.0;  // intensity of claims not shared with Y
  ClaimMixture claims;

  bool operator==(const SurplusSpec&) const = default;
};

/// Exponent Y of the exchange rate. Jumps of Y are -Z with Z drawn from
/// `jumps`; they only occur at common shocks.
struct ExchangeSpec {
  double drift = 0.0;  // p
  double delta = 0.0;
  std::optional<ClaimMixture> jumps;

  bool operator==(const ExchangeSpec&) const = default;
};

/// Brownian correlation plus a common Poisson clock of intensity theta whose
/// events hit R with a claim C and Y with a jump -Z simultaneously.
struct DependenceSpec {
  double rho = 0.0;
  double theta = 0.0;

  bool operator==(const DependenceSpec&) const = default;
};

/// Penalty w on (-inf, 0]: zero, or w(x) = k0 + k1 x with k0 <= 0, k1 >= 0.
struct PenaltySpec {
  enum class Kind { Zero, Affine };

  Kind kind = Kind::Zero;
  double k0 = 0.0;
  double k1 = 0.0;

  static PenaltySpec zero() { return {}; }
  static PenaltySpec affine(double k0, double k1) {
    return {Kind::Affine, k0, k1};
  }

  bool is_zero() const { return kind == Kind::Zero; }
  double operator()(double x) const;
  double left_derivative_at_zero() const;

  bool operator==(const PenaltySpec&) const = default;
};

/// Raw, unvalidated model description (what a JSON document maps to).
struct ModelDescription {
  SurplusSpec surplus;
  ExchangeSpec exchange;
  DependenceSpec dependence;
  PenaltySpec penalty;

  bool operator==(const ModelDescription&) const = default;
};

struct ValidationOptions {
  bool require_net_profit = true;
};

/// A model description that passed validation. Immutable.
class ModelSpec {
 public:
  const ModelDescription& description() const { return desc_; }
  const SurplusSpec& surplus() const { return desc_.surplus; }
  const ExchangeSpec& exchange() const { return desc_.exchange; }
  const DependenceSpec& dependence() const { return desc_.dependence; }
  const PenaltySpec& penalty() const { return desc_.penalty; }

  /// lambda = lambda_bar + theta.
  double total_claim_intensity() const;
  /// E[e^{Z}] for the exchange-rate jump law, or 1 when Y has no jumps.
  double exchange_jump_factor() const;
  /// Intensity weighting the claim transform after the tilt by (., -1):
  /// lambda_bar + theta * E[e^Z].
  double discounted_claim_intensity() const;

  bool operator==(const ModelSpec&) const = default;

 private:
  explicit ModelSpec(ModelDescription desc) : desc_(std::move(desc)) {}
  friend ModelSpec validate(const ModelDescription&, const ValidationOptions&);

  ModelDescription desc_;
};

/// Checks every invariant of the supported model class and throws
/// ValidationError listing all violations.
ModelSpec validate(const ModelDescription& desc,
                   const ValidationOptions& options = {});

}  // namespace fxdiv
