#include "fxdiv/error.hpp"

#include <algorithm>

namespace fxdiv {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::AssumptionTwoViolated: return "AssumptionTwoViolated";
    case ErrorCode::EtaNotAboveOne: return "EtaNotAboveOne";
    case ErrorCode::NonPositiveDrift: return "NonPositiveDrift";
    case ErrorCode::MalformedMixture: return "MalformedMixture";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::BracketFailure: return "BracketFailure";
    case ErrorCode::RepeatedRoot: return "RepeatedRoot";
    case ErrorCode::ComplexRoot: return "ComplexRoot";
    case ErrorCode::MissingOriginRoot: return "MissingOriginRoot";
    case ErrorCode::TiltExceedsRate: return "TiltExceedsRate";
    case ErrorCode::DegenerateDerivative: return "DegenerateDerivative";
    case ErrorCode::WindowExhausted: return "WindowExhausted";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::UnsupportedModel: return "UnsupportedModel";
    case ErrorCode::NoSignChange: return "NoSignChange";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

namespace {

std::string summarize(const std::vector<Violation>& violations) {
  std::string out = "model rejected:";
  for (const auto& v : violations) {
    out += "\n  ";
    out += to_string(v.code);
    out += ": ";
    out += v.message;
  }
  return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : std::runtime_error(summarize(violations)),
      violations_(std::move(violations)) {}

bool ValidationError::has(ErrorCode code) const noexcept {
  return std::any_of(violations_.begin(), violations_.end(),
                     [code](const Violation& v) { return v.code == code; });
}

}  // namespace fxdiv
