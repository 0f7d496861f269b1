#pragma once

#include <stdexcept>
#include <string>

namespace barrierlab {

enum class ErrorCode {
  PoleAtNonPositiveInteger,
  PoleAtPositiveInteger,
  OnBranchCut,
  NoConvergence,
  NearCriticalPoint,
  BudgetExhausted,
  TailBoundViolated,
  SlowConvergence,
  Overflow,
  InvalidArgument,
  OutOfDomain,
  IllConditioned,
  ParseError,
  BarrierProximity,
  ZeroOnBoundary,
  NonIntegerWinding,
  RayDivergence,
  BranchPointTooClose,
  NoInteriorMinimum,
};

const char* to_string(ErrorCode code);

class NumericError : public std::runtime_error {
 public:
  NumericError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace barrierlab
