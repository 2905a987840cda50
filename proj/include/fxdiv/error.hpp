#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fxdiv {

enum class ErrorCode {
  // model validation
  AssumptionTwoViolated,
  EtaNotAboveOne,
  NonPositiveDrift,
  MalformedMixture,
  InvalidParameter,
  // numerics
  OutOfDomain,
  BracketFailure,
  RepeatedRoot,
  ComplexRoot,
  MissingOriginRoot,
  TiltExceedsRate,
  DegenerateDerivative,
  WindowExhausted,
  Overflow,
  // ODE route
  UnsupportedModel,
  NoSignChange,
  SingularSystem,
  // simulation
  InvalidConfig,
};

std::string_view to_string(ErrorCode code);

/// Raised by the solver when an operation cannot produce a result.
class SolverError : public std::runtime_error {
 public:
  SolverError(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct Violation {
  ErrorCode code;
  std::string message;
};

/// Structured rejection from model validation: every violated invariant is
/// listed, not just the first one found.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<Violation> violations);

  const std::vector<Violation>& violations() const noexcept {
    return violations_;
  }
  bool has(ErrorCode code) const noexcept;

 private:
  std::vector<Violation> violations_;
};

}  // namespace fxdiv
