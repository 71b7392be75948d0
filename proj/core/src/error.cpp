#include "gaugewalk/error.hpp"

namespace gaugewalk {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DegreeOverflow: return "DegreeOverflow";
    case ErrorCode::WindowUnderflow: return "WindowUnderflow";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::FluxNotQuantized: return "FluxNotQuantized";
    case ErrorCode::SampleCoverage: return "SampleCoverage";
    case ErrorCode::PathEscapesWindow: return "PathEscapesWindow";
    case ErrorCode::WindowMismatch: return "WindowMismatch";
    case ErrorCode::NotHomogeneous: return "NotHomogeneous";
    case ErrorCode::NotRational: return "NotRational";
    case ErrorCode::UnsupportedTopology: return "UnsupportedTopology";
    case ErrorCode::AxisOutOfRange: return "AxisOutOfRange";
    case ErrorCode::BoundaryReached: return "BoundaryReached";
    case ErrorCode::NonUnitaryFactor: return "NonUnitaryFactor";
    case ErrorCode::UnsupportedForMatrix: return "UnsupportedForMatrix";
    case ErrorCode::NotReduced: return "NotReduced";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::NotNumericallyUnitary: return "NotNumericallyUnitary";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void raise(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace gaugewalk
