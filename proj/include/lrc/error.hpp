#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lrc {

enum class ErrorCode {
  kNotPrime,
  kReducible,
  kBadModulus,
  kTooLarge,
  kDivideByZero,
  kFieldMismatch,
  kDimensionMismatch,
  kFieldTooSmall,
  kTooLargeToCheck,
  kBadParams,
  kBudgetExceeded,
  kRepairImpossible,
  kNotACodeword,
  kRNoLessThanK,
  kNoWitnessFound,
  kInputNotVerified,
  kDimensionTooSmall,
  kInfeasible,
  kRetriesExhausted,
  kBadFamily,
  kParse,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotPrime: return "NotPrime";
    case ErrorCode::kReducible: return "Reducible";
    case ErrorCode::kBadModulus: return "BadModulus";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kDivideByZero: return "DivideByZero";
    case ErrorCode::kFieldMismatch: return "FieldMismatch";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kFieldTooSmall: return "FieldTooSmall";
    case ErrorCode::kTooLargeToCheck: return "TooLargeToCheck";
    case ErrorCode::kBadParams: return "BadParams";
    case ErrorCode::kBudgetExceeded: return "BudgetExceeded";
    case ErrorCode::kRepairImpossible: return "RepairImpossible";
    case ErrorCode::kNotACodeword: return "NotACodeword";
    case ErrorCode::kRNoLessThanK: return "RNoLessThanK";
    case ErrorCode::kNoWitnessFound: return "NoWitnessFound";
    case ErrorCode::kInputNotVerified: return "InputNotVerified";
    case ErrorCode::kDimensionTooSmall: return "DimensionTooSmall";
    case ErrorCode::kInfeasible: return "Infeasible";
    case ErrorCode::kRetriesExhausted: return "RetriesExhausted";
    case ErrorCode::kBadFamily: return "BadFamily";
    case ErrorCode::kParse: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI exit-code mapping) can branch on the kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace lrc
