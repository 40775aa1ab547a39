#ifndef MINSUM_ERROR_HPP
#define MINSUM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace minsum {

enum class ErrorCode {
  SelfLoop,
  DuplicateEdge,
  NonPositiveWeight,
  Disconnected,
  InvalidParameter,
  HasLeaves,
  NotConverged,
  RangeViolation,
  NonStochasticMatrix,
  ZeroDenominator,
  NotRegular,
  UnequalWeights,
  TooEarly,
  NotCycle,
  VertexInRemovedSet,
  InvalidDepth,
  SingularSystem,
  IoError,
};

/// Library error carrying a machine-checkable code plus a human message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

const char* error_code_name(ErrorCode code);

}  // namespace minsum

#endif
