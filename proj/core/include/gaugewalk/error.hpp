#pragma once

#include <stdexcept>
#include <string>

namespace gaugewalk {

enum class ErrorCode {
  DegreeOverflow,
  WindowUnderflow,
  NotClosed,
  FluxNotQuantized,
  SampleCoverage,
  PathEscapesWindow,
  WindowMismatch,
  NotHomogeneous,
  NotRational,
  UnsupportedTopology,
  AxisOutOfRange,
  BoundaryReached,
  NonUnitaryFactor,
  UnsupportedForMatrix,
  NotReduced,
  Unsupported,
  NotNumericallyUnitary,
  InvalidArgument,
  ParseError,
  Internal,
};

const char* to_string(ErrorCode code) noexcept;

/// Every domain failure in the library is reported through this type.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void raise(ErrorCode code, const std::string& what);

}  // namespace gaugewalk
