#pragma once

#include <stdexcept>
#include <string>

namespace hdro {

enum class ErrorCode {
  kNegativeWeight,
  kWeightsNotNormalized,
  kPointOutOfRange,
  kQOutOfRange,
  kEmptyInput,
  kMismatchedInterval,
  kOutOfRange,
  kNonIntegerSupport,
  kInvalidProblem,
  kCappedOnNonSki,
  kEpsNonPositive,
  kUnknownName,
  kEpsTooLarge,
  kInvalidBRange,
  kGridTooLarge,
  kNoKnownBound,
  kDegreeZero,
  kNoPositivePoints,
  kDegeneratePoints,
  kConfigInvalid,
  kParseError,
};

const char* ErrorCodeName(ErrorCode code);

// All library failures are reported through this type.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void Fail(ErrorCode code, const std::string& what);

}  // namespace hdro
