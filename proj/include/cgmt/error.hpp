#pragma once

#include <stdexcept>
#include <string>

namespace cgmt {

enum class ErrorCode {
  ParseError,
  NotPrefixClosed,
  Condition1,
  Condition2,
  Condition3,
  PrunedViolation,
  PrefixTooShort,
  DepthCapExceeded,
  DepthTooLarge,
  NotACover,
  LengthViolation,
  NotExtendible,
  PreconditionMeasure,
  NoStableIndex,
  DensityViolated,
  PromiseViolated,
  BudgetExceeded,
  InvalidArgument,
};

const char* error_name(ErrorCode code);

// Process exit status for the CLI. Codes of one family share a status.
int exit_status(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string witness = {});

  ErrorCode code() const { return code_; }
  const std::string& witness() const { return witness_; }

 private:
  ErrorCode code_;
  std::string witness_;
};

}  // namespace cgmt
