#include "besov/error.hpp"

namespace besov {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::NotInBesov: return "NotInBesov";
    case ErrorCode::NotInE: return "NotInE";
    case ErrorCode::NotInW: return "NotInW";
    case ErrorCode::NotInH1: return "NotInH1";
    case ErrorCode::MissingDerivative: return "MissingDerivative";
    case ErrorCode::MissingBoundary: return "MissingBoundary";
    case ErrorCode::TooCloseToBoundary: return "TooCloseToBoundary";
    case ErrorCode::TailDivergence: return "TailDivergence";
    case ErrorCode::SingularShift: return "SingularShift";
    case ErrorCode::NotDiagonalizable: return "NotDiagonalizable";
    case ErrorCode::SectorViolation: return "SectorViolation";
    case ErrorCode::StripViolation: return "StripViolation";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace besov
