#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace singlab {

enum class ErrorKind {
  Parse,
  VariableMismatch,
  Budget,
  DegreeZero,
  ZeroPolynomial,
  NotCritical,
  NotIsolated,
  OrderTooLow,
  InvalidGerm,
  DegenerateParameter,
  BoxEscape,
  UnsupportedDimension,
  InconsistentDegree,
  InsufficientAcceptance,
  IdentityViolation,
  DegeneratePoint,
  PathOutsideBox,
  GcdNotOne,
  NotABranch,
  NonBinomialElement,
  DimensionTooLarge,
  RegularizationBudget,
  TruncationInsufficient,
  OrderMismatch,
  Precondition,
  Schema,
  Io,
};

constexpr std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::VariableMismatch: return "VariableMismatch";
    case ErrorKind::Budget: return "BudgetExceeded";
    case ErrorKind::DegreeZero: return "DegreeZero";
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::NotCritical: return "NotCritical";
    case ErrorKind::NotIsolated: return "NotIsolated";
    case ErrorKind::OrderTooLow: return "OrderTooLow";
    case ErrorKind::InvalidGerm: return "InvalidGerm";
    case ErrorKind::DegenerateParameter: return "DegenerateParameter";
    case ErrorKind::BoxEscape: return "BoxEscape";
    case ErrorKind::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorKind::InconsistentDegree: return "InconsistentDegree";
    case ErrorKind::InsufficientAcceptance: return "InsufficientAcceptance";
    case ErrorKind::IdentityViolation: return "IdentityViolation";
    case ErrorKind::DegeneratePoint: return "DegeneratePoint";
    case ErrorKind::PathOutsideBox: return "PathOutsideBox";
    case ErrorKind::GcdNotOne: return "GcdNotOne";
    case ErrorKind::NotABranch: return "NotABranch";
    case ErrorKind::NonBinomialElement: return "NonBinomialElement";
    case ErrorKind::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorKind::RegularizationBudget: return "RegularizationBudget";
    case ErrorKind::TruncationInsufficient: return "TruncationInsufficient";
    case ErrorKind::OrderMismatch: return "OrderMismatch";
    case ErrorKind::Precondition: return "Precondition";
    case ErrorKind::Schema: return "SchemaError";
    case ErrorKind::Io: return "IoError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace singlab
