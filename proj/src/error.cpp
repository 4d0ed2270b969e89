#include "hdro/error.hpp"

namespace hdro {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNegativeWeight: return "NegativeWeight";
    case ErrorCode::kWeightsNotNormalized: return "WeightsNotNormalized";
    case ErrorCode::kPointOutOfRange: return "PointOutOfRange";
    case ErrorCode::kQOutOfRange: return "QOutOfRange";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kMismatchedInterval: return "MismatchedInterval";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kNonIntegerSupport: return "NonIntegerSupport";
    case ErrorCode::kInvalidProblem: return "InvalidProblem";
    case ErrorCode::kCappedOnNonSki: return "CappedOnNonSki";
    case ErrorCode::kEpsNonPositive: return "EpsNonPositive";
    case ErrorCode::kUnknownName: return "UnknownName";
    case ErrorCode::kEpsTooLarge: return "EpsTooLarge";
    case ErrorCode::kInvalidBRange: return "InvalidBRange";
    case ErrorCode::kGridTooLarge: return "GridTooLarge";
    case ErrorCode::kNoKnownBound: return "NoKnownBound";
    case ErrorCode::kDegreeZero: return "DegreeZero";
    case ErrorCode::kNoPositivePoints: return "NoPositivePoints";
    case ErrorCode::kDegeneratePoints: return "DegeneratePoints";
    case ErrorCode::kConfigInvalid: return "ConfigInvalid";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + what),
      code_(code) {}

void Fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace hdro
