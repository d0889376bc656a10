#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cyclonum {

enum class ErrorKind {
  InvalidArgument,
  SizeCapExceeded,
  DivisionByZero,
  ZeroArgument,
  NotInSubfield,
  OutOfRange,
  PrecisionBudgetExceeded,
  RoundingResidualTooLarge,
  NaturalOrderingUnavailable,
  NonIntegerLeadingTerm,
  MethodInapplicable,
  TheoremViolation,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::SizeCapExceeded: return "SizeCapExceeded";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::ZeroArgument: return "ZeroArgument";
    case ErrorKind::NotInSubfield: return "NotInSubfield";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::PrecisionBudgetExceeded: return "PrecisionBudgetExceeded";
    case ErrorKind::RoundingResidualTooLarge: return "RoundingResidualTooLarge";
    case ErrorKind::NaturalOrderingUnavailable: return "NaturalOrderingUnavailable";
    case ErrorKind::NonIntegerLeadingTerm: return "NonIntegerLeadingTerm";
    case ErrorKind::MethodInapplicable: return "MethodInapplicable";
    case ErrorKind::TheoremViolation: return "TheoremViolation";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace cyclonum
