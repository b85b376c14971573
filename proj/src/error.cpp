#include "localprod/error.hpp"

namespace localprod {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NegativeBaseOddRoot: return "NegativeBaseOddRoot";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::NonFiniteIntegrand: return "NonFiniteIntegrand";
    case ErrorKind::DegenerateScale: return "DegenerateScale";
    case ErrorKind::UnsupportedSheetReduction: return "UnsupportedSheetReduction";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::PairingNotAntisymmetric: return "PairingNotAntisymmetric";
    case ErrorKind::ConstraintUnsatisfiable: return "ConstraintUnsatisfiable";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace localprod
