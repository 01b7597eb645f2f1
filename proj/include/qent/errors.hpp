#pragma once

#include <stdexcept>
#include <string>

namespace qent {

enum class ErrorCode {
  BadShape,
  DimensionMismatch,
  NotNormalized,
  ZeroVector,
  NotUnitary,
  InvalidDensity,
  BadSiteIndex,
  BadSplit,
  BadSubset,
  InvalidOracle,
  TooLarge,
  ZeroContraction,
  InvalidConfig,
  WrongShape,
  OutOfRange,
  InvalidDistribution,
  ParseError,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qent
