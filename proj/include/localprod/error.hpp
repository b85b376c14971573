#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace localprod {

enum class ErrorKind {
  InvalidArgument,
  DimensionMismatch,
  NegativeBaseOddRoot,
  Overflow,
  DomainError,
  NonFiniteIntegrand,
  DegenerateScale,
  UnsupportedSheetReduction,
  HypothesisViolated,
  PairingNotAntisymmetric,
  ConstraintUnsatisfiable,
  InvalidConfig,
  ValidationError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above so
/// callers (notably the CLI) can map it to an exit code without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace localprod
