#include "fxdiv/model.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>

#include "fxdiv/exponents.hpp"

namespace fxdiv {

double ClaimMixture::mean() const {
  double m = 0.0;
  for (const auto& ph : phases) m += ph.weight / ph.rate;
  return m;
}

double ClaimMixture::laplace(double s) const {
  double v = 0.0;
  for (const auto& ph : phases) {
    const double denom = ph.rate + s;
    if (!(denom > 0.0)) {
      throw SolverError(ErrorCode::OutOfDomain,
                        fmt::format("jump transform evaluated at {} which is "
                                    "at or beyond the pole -{}",
                                    s, ph.rate));
    }
    v += ph.weight * ph.rate / denom;
  }
  return v;
}

double ClaimMixture::laplace_derivative(double s) const {
  double v = 0.0;
  for (const auto& ph : phases) {
    const double denom = ph.rate + s;
    if (!(denom > 0.0)) {
      throw SolverError(ErrorCode::OutOfDomain,
                        "jump transform derivative outside its domain");
    }
    v -= ph.weight * ph.rate / (denom * denom);
  }
  return v;
}

double ClaimMixture::min_rate() const {
  double r = std::numeric_limits<double>::infinity();
  for (const auto& ph : phases) r = std::min(r, ph.rate);
  return r;
}

double PenaltySpec::operator()(double x) const {
  if (kind == Kind::Zero) return 0.0;
  return k0 + k1 * x;
}

double PenaltySpec::left_derivative_at_zero() const {
  return kind == Kind::Zero ? 0.0 : k1;
}

double ModelSpec::total_claim_intensity() const {
  return desc_.surplus.lambda_bar + desc_.dependence.theta;
}

double ModelSpec::exchange_jump_factor() const {
  if (!desc_.exchange.jumps) return 1.0;
  return desc_.exchange.jumps->laplace(-1.0);
}

double ModelSpec::discounted_claim_intensity() const {
  const double theta = desc_.dependence.theta;
  if (theta == 0.0) return desc_.surplus.lambda_bar;
  return desc_.surplus.lambda_bar + theta * exchange_jump_factor();
}

namespace {

bool finite(double v) { return std::isfinite(v); }

void check_mixture(const ClaimMixture& mix, std::string_view name,
                   std::vector<Violation>& out) {
  if (mix.phases.empty()) {
    out.push_back({ErrorCode::MalformedMixture,
                   fmt::format("{} has no phases", name)});
    return;
  }
  double total = 0.0;
  for (std::size_t i = 0; i < mix.phases.size(); ++i) {
    const auto& ph = mix.phases[i];
    if (!finite(ph.weight) || !(ph.weight > 0.0) || ph.weight > 1.0) {
      out.push_back({ErrorCode::MalformedMixture,
                     fmt::format("{} phase {} weight {} not in (0,1]", name,
                                 i, ph.weight)});
    }
    if (!finite(ph.rate) || !(ph.rate > 0.0)) {
      out.push_back({ErrorCode::MalformedMixture,
                     fmt::format("{} phase {} rate {} not positive", name, i,
                                 ph.rate)});
    }
    total += ph.weight;
  }
  if (!(std::abs(total - 1.0) <= 1e-12)) {
    out.push_back({ErrorCode::MalformedMixture,
                   fmt::format("{} weights sum to {}, expected 1", name,
                               total)});
  }
  for (std::size_t i = 0; i < mix.phases.size(); ++i) {
    for (std::size_t j = i + 1; j < mix.phases.size(); ++j) {
      const double a = mix.phases[i].rate;
      const double b = mix.phases[j].rate;
      if (std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b))) {
        out.push_back({ErrorCode::MalformedMixture,
                       fmt::format("{} phases {} and {} share rate {}; merge "
                                   "them",
                                   name, i, j, a)});
      }
    }
  }
}

}  // namespace

ModelSpec validate(const ModelDescription& desc,
                   const ValidationOptions& options) {
  std::vector<Violation> v;
  const auto& s = desc.surplus;
  const auto& e = desc.exchange;
  const auto& d = desc.dependence;
  const auto& w = desc.penalty;

  if (!finite(s.premium)) {
    v.push_back({ErrorCode::InvalidParameter, "premium is not finite"});
  }
  if (!finite(s.sigma) || !(s.sigma > 0.0)) {
    v.push_back({ErrorCode::InvalidParameter,
                 fmt::format("sigma = {} must be > 0", s.sigma)});
  }
  if (!finite(s.lambda_bar) || s.lambda_bar < 0.0) {
    v.push_back({ErrorCode::InvalidParameter,
                 fmt::format("lambdaBar = {} must be >= 0", s.lambda_bar)});
  }
  const std::size_t before_claims = v.size();
  check_mixture(s.claims, "claim mixture", v);
  const bool claims_ok = v.size() == before_claims;

  if (!finite(e.drift)) {
    v.push_back({ErrorCode::InvalidParameter, "exchange drift not finite"});
  }
  if (!finite(e.delta) || e.delta < 0.0) {
    v.push_back({ErrorCode::InvalidParameter,
                 fmt::format("delta = {} must be >= 0", e.delta)});
  }
  bool jumps_ok = true;
  if (e.jumps) {
    const std::size_t before = v.size();
    check_mixture(*e.jumps, "exchange jump mixture", v);
    for (std::size_t i = 0; i < e.jumps->phases.size(); ++i) {
      const double eta = e.jumps->phases[i].rate;
      if (finite(eta) && !(eta > 1.0)) {
        v.push_back({ErrorCode::EtaNotAboveOne,
                     fmt::format("exchange jump phase {} rate {} must exceed "
                                 "1 so that E[e^Z] is finite",
                                 i, eta)});
      }
    }
    jumps_ok = v.size() == before;
  }

  if (!finite(d.rho) || d.rho < -1.0 || d.rho > 1.0) {
    v.push_back({ErrorCode::InvalidParameter,
                 fmt::format("rho = {} not in [-1,1]", d.rho)});
  }
  if (!finite(d.theta) || d.theta < 0.0) {
    v.push_back({ErrorCode::InvalidParameter,
                 fmt::format("theta = {} must be >= 0", d.theta)});
  }
  if (d.theta > 0.0 && !e.jumps) {
    v.push_back({ErrorCode::InvalidParameter,
                 "common shocks (theta > 0) need an exchange jump mixture"});
    jumps_ok = false;
  }

  if (w.kind == PenaltySpec::Kind::Affine) {
    if (!finite(w.k0) || w.k0 > 0.0) {
      v.push_back({ErrorCode::InvalidParameter,
                   fmt::format("penalty k0 = {} must be <= 0", w.k0)});
    }
    if (!finite(w.k1) || w.k1 < 0.0) {
      v.push_back({ErrorCode::InvalidParameter,
                   fmt::format("penalty k1 = {} must be >= 0", w.k1)});
    }
  }

  if (claims_ok && options.require_net_profit && finite(s.premium)) {
    const double drift =
        s.premium - (s.lambda_bar + std::max(d.theta, 0.0)) * s.claims.mean();
    if (!(drift > 0.0)) {
      v.push_back({ErrorCode::NonPositiveDrift,
                   fmt::format("E[R_1] = {} must be > 0", drift)});
    }
  }

  if (claims_ok && jumps_ok) {
    const double at_origin = psi(desc, 0.0, -1.0);
    if (!(at_origin < 0.0)) {
      v.push_back({ErrorCode::AssumptionTwoViolated,
                   fmt::format("ψ(0,−1) < 0 is required for a finite value "
                               "function, got ψ(0,−1) = {}",
                               at_origin)});
    }
  }

  if (!v.empty()) throw ValidationError(std::move(v));
  return ModelSpec(desc);
}

}  // namespace fxdiv
