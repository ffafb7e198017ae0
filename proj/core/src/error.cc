#include "bincs/error.h"

namespace bincs {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kDuplicateEdge: return "DuplicateEdge";
    case ErrorCode::kIrregularColumn: return "IrregularColumn";
    case ErrorCode::kDuplicateColumn: return "DuplicateColumn";
    case ErrorCode::kDuplicateIndexInT: return "DuplicateIndexInT";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kInconsistentHeader: return "InconsistentHeader";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kInfeasibleDegree: return "InfeasibleDegree";
    case ErrorCode::kConstructionFailed: return "ConstructionFailed";
    case ErrorCode::kInfeasibleParameters: return "InfeasibleParameters";
    case ErrorCode::kSideConditionViolated: return "SideConditionViolated";
    case ErrorCode::kParameterOutOfBranch: return "ParameterOutOfBranch";
    case ErrorCode::kInvalidRange: return "InvalidRange";
    case ErrorCode::kNotSymmetric: return "NotSymmetric";
    case ErrorCode::kKTooLarge: return "KTooLarge";
    case ErrorCode::kRankDeficient: return "RankDeficient";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code) {}

}  // namespace bincs
