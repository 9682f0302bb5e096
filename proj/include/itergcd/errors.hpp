#pragma once

#include <stdexcept>
#include <string>

namespace itergcd {

enum class ErrorCode {
  InvalidArgument,
  NotCoprime,
  CapExceeded,
  NoPeriodFound,
  BudgetExceeded,
  ValidationMismatch,
  PoleError,
  DegreeCapExceeded,
  NonpositiveExponentGap,
  NotInvertible,
  NotFree,
  DegenerateData,
  RootWitnessInvalid,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + msg), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode c, const std::string& msg) { throw Error(c, msg); }

}  // namespace itergcd
