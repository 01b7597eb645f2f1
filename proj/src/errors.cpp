#include "qent/errors.hpp"

namespace qent {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::BadShape: return "BadShape";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::InvalidDensity: return "InvalidDensity";
    case ErrorCode::BadSiteIndex: return "BadSiteIndex";
    case ErrorCode::BadSplit: return "BadSplit";
    case ErrorCode::BadSubset: return "BadSubset";
    case ErrorCode::InvalidOracle: return "InvalidOracle";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::ZeroContraction: return "ZeroContraction";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::WrongShape: return "WrongShape";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::InvalidDistribution: return "InvalidDistribution";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace qent
