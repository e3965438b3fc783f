#include "cgmt/error.hpp"

namespace cgmt {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotPrefixClosed: return "NotPrefixClosed";
    case ErrorCode::Condition1: return "Condition1";
    case ErrorCode::Condition2: return "Condition2";
    case ErrorCode::Condition3: return "Condition3";
    case ErrorCode::PrunedViolation: return "PrunedViolation";
    case ErrorCode::PrefixTooShort: return "PrefixTooShort";
    case ErrorCode::DepthCapExceeded: return "DepthCapExceeded";
    case ErrorCode::DepthTooLarge: return "DepthTooLarge";
    case ErrorCode::NotACover: return "NotACover";
    case ErrorCode::LengthViolation: return "LengthViolation";
    case ErrorCode::NotExtendible: return "NotExtendible";
    case ErrorCode::PreconditionMeasure: return "PreconditionMeasure";
    case ErrorCode::NoStableIndex: return "NoStableIndex";
    case ErrorCode::DensityViolated: return "DensityViolated";
    case ErrorCode::PromiseViolated: return "PromiseViolated";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

int exit_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return 2;
    case ErrorCode::NotPrefixClosed: return 3;
    case ErrorCode::Condition1:
    case ErrorCode::Condition2:
    case ErrorCode::Condition3:
    case ErrorCode::PrunedViolation: return 4;
    case ErrorCode::PrefixTooShort:
    case ErrorCode::DepthCapExceeded:
    case ErrorCode::DepthTooLarge: return 5;
    case ErrorCode::NotACover:
    case ErrorCode::LengthViolation: return 6;
    case ErrorCode::NotExtendible: return 7;
    case ErrorCode::PreconditionMeasure: return 8;
    case ErrorCode::NoStableIndex: return 9;
    case ErrorCode::DensityViolated: return 10;
    case ErrorCode::PromiseViolated: return 11;
    case ErrorCode::BudgetExceeded: return 12;
    case ErrorCode::InvalidArgument: return 13;
  }
  return 1;
}

Error::Error(ErrorCode code, const std::string& message, std::string witness)
    : std::runtime_error(std::string(error_name(code)) + ": " + message),
      code_(code),
      witness_(std::move(witness)) {}

}  // namespace cgmt
