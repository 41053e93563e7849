#ifndef WEBJETS_ERRORS_HPP
#define WEBJETS_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace webjets {

enum class ErrorKind {
  ParseError,
  VariableMismatch,
  NonzeroConstantTerm,
  NonUnitLinearTerm,
  NotDivisible,
  OrderTooHigh,
  NonUnitDerivative,
  BadLinearPart,
  MuMismatch,
  FlatWeb,
  RankDeficient,
  Inconsistent,
  NonLinearSystem,
  ShapeMismatch,
  NonConstantTopCoefficient,
  SingularSample,
  SymbolOutOfRange,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::VariableMismatch: return "VariableMismatch";
    case ErrorKind::NonzeroConstantTerm: return "NonzeroConstantTerm";
    case ErrorKind::NonUnitLinearTerm: return "NonUnitLinearTerm";
    case ErrorKind::NotDivisible: return "NotDivisible";
    case ErrorKind::OrderTooHigh: return "OrderTooHigh";
    case ErrorKind::NonUnitDerivative: return "NonUnitDerivative";
    case ErrorKind::BadLinearPart: return "BadLinearPart";
    case ErrorKind::MuMismatch: return "MuMismatch";
    case ErrorKind::FlatWeb: return "FlatWeb";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::Inconsistent: return "Inconsistent";
    case ErrorKind::NonLinearSystem: return "NonLinearSystem";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NonConstantTopCoefficient: return "NonConstantTopCoefficient";
    case ErrorKind::SingularSample: return "SingularSample";
    case ErrorKind::SymbolOutOfRange: return "SymbolOutOfRange";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-checkable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace webjets

#endif  // WEBJETS_ERRORS_HPP
