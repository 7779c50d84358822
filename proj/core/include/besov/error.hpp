#pragma once

#include <stdexcept>
#include <string>

namespace besov {

enum class ErrorCode {
  BudgetExceeded,
  NotInBesov,
  NotInE,
  NotInW,
  NotInH1,
  MissingDerivative,
  MissingBoundary,
  TooCloseToBoundary,
  TailDivergence,
  SingularShift,
  NotDiagonalizable,
  SectorViolation,
  StripViolation,
  InvalidArgument,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace besov
