#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mennicke {

enum class ErrorCode {
  MalformedDescriptor,
  NonPrimeCharacteristic,
  ModulusTooSmall,
  MalformedElement,
  MalformedInput,
  UnsupportedRing,
  NotFinite,
  PreconditionViolated,
  DimensionMismatch,
  NotUnimodular,
  NotRightInvertible,
  IndexOutOfBounds,
  LeftOpOnRow,
  RangeConditionViolated,
  OracleFailure,
  SubsetUnimodularizationExhausted,
  CapExceeded,
  HypothesisViolated,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto an exit status without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mennicke
