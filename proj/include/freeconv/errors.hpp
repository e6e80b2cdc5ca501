#pragma once

#include <stdexcept>
#include <string>

namespace freeconv {

enum class ErrorCode {
  NonUnitMass,
  InvalidSupport,
  DuplicatePosition,
  BadParameters,
  SupportViolation,
  DomainMismatch,
  NotSelfMap,
  InversionDiverged,
  OutsideInversionInterval,
  MaxIterations,
  NotAdmissible,
  SolverFailure,
  BadWeights,
  NonConvergent,
  BadExponent,
  ZeroFirstMoment,
  ZeroOfEta,
  DeltaZero,
  NotBooleanInfDiv,
  OscillatoryLimit,
  InvalidSpecFile,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace freeconv
