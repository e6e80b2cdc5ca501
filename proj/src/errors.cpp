#include "freeconv/errors.hpp"

namespace freeconv {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonUnitMass: return "NonUnitMass";
    case ErrorCode::InvalidSupport: return "InvalidSupport";
    case ErrorCode::DuplicatePosition: return "DuplicatePosition";
    case ErrorCode::BadParameters: return "BadParameters";
    case ErrorCode::SupportViolation: return "SupportViolation";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::NotSelfMap: return "NotSelfMap";
    case ErrorCode::InversionDiverged: return "InversionDiverged";
    case ErrorCode::OutsideInversionInterval: return "OutsideInversionInterval";
    case ErrorCode::MaxIterations: return "MaxIterations";
    case ErrorCode::NotAdmissible: return "NotAdmissible";
    case ErrorCode::SolverFailure: return "SolverFailure";
    case ErrorCode::BadWeights: return "BadWeights";
    case ErrorCode::NonConvergent: return "NonConvergent";
    case ErrorCode::BadExponent: return "BadExponent";
    case ErrorCode::ZeroFirstMoment: return "ZeroFirstMoment";
    case ErrorCode::ZeroOfEta: return "ZeroOfEta";
    case ErrorCode::DeltaZero: return "DeltaZero";
    case ErrorCode::NotBooleanInfDiv: return "NotBooleanInfDiv";
    case ErrorCode::OscillatoryLimit: return "OscillatoryLimit";
    case ErrorCode::InvalidSpecFile: return "InvalidSpecFile";
  }
  return "Error";
}

}  // namespace freeconv
