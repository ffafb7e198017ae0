#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bincs {

enum class ErrorCode {
  kInvalidArgument,
  kIndexOutOfRange,
  kDuplicateEdge,
  kIrregularColumn,
  kDuplicateColumn,
  kDuplicateIndexInT,
  kParseError,
  kInconsistentHeader,
  kIoError,
  kInfeasibleDegree,
  kConstructionFailed,
  kInfeasibleParameters,
  kSideConditionViolated,
  kParameterOutOfBranch,
  kInvalidRange,
  kNotSymmetric,
  kKTooLarge,
  kRankDeficient,
};

std::string_view to_string(ErrorCode code);

// All library failures are reported through this exception. The code is the
// stable, testable part; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bincs
