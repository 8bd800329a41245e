#include "mennicke/error.hpp"

namespace mennicke {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedDescriptor: return "MalformedDescriptor";
    case ErrorCode::NonPrimeCharacteristic: return "NonPrimeCharacteristic";
    case ErrorCode::ModulusTooSmall: return "ModulusTooSmall";
    case ErrorCode::MalformedElement: return "MalformedElement";
    case ErrorCode::MalformedInput: return "MalformedInput";
    case ErrorCode::UnsupportedRing: return "UnsupportedRing";
    case ErrorCode::NotFinite: return "NotFinite";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotUnimodular: return "NotUnimodular";
    case ErrorCode::NotRightInvertible: return "NotRightInvertible";
    case ErrorCode::IndexOutOfBounds: return "IndexOutOfBounds";
    case ErrorCode::LeftOpOnRow: return "LeftOpOnRow";
    case ErrorCode::RangeConditionViolated: return "RangeConditionViolated";
    case ErrorCode::OracleFailure: return "OracleFailure";
    case ErrorCode::SubsetUnimodularizationExhausted: return "SubsetUnimodularizationExhausted";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace mennicke
