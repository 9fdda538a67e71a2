#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace treeweights {

// Stable, machine-readable failure codes. The CLI prints these names verbatim.
enum class ErrorCode {
  DanglingEndpoint,
  DuplicateId,
  SelfLoopContraction,
  Disconnected,
  EnumerationGuardExceeded,
  MalformedSector,
  NotASpanningTree,
  UnknownEdge,
  UnknownVertex,
  BadPartition,
  DuplicateVertex,
  MissingVertex,
  EmptyBlock,
  NotTransBlock,
  NotAdmissible,
  TrivialPartition,
  ParseError,
  BadDimension,
  OutOfRange,
  NotSymmetric,
  InvariantViolation,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DanglingEndpoint: return "DanglingEndpoint";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::SelfLoopContraction: return "SelfLoopContraction";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::EnumerationGuardExceeded: return "EnumerationGuardExceeded";
    case ErrorCode::MalformedSector: return "MalformedSector";
    case ErrorCode::NotASpanningTree: return "NotASpanningTree";
    case ErrorCode::UnknownEdge: return "UnknownEdge";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::BadPartition: return "BadPartition";
    case ErrorCode::DuplicateVertex: return "DuplicateVertex";
    case ErrorCode::MissingVertex: return "MissingVertex";
    case ErrorCode::EmptyBlock: return "EmptyBlock";
    case ErrorCode::NotTransBlock: return "NotTransBlock";
    case ErrorCode::NotAdmissible: return "NotAdmissible";
    case ErrorCode::TrivialPartition: return "TrivialPartition";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::BadDimension: return "BadDimension";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised by build_trace when the edge at `step` is not trans-block for the
// partition reached after the previous steps.
class NotAdmissibleError : public Error {
 public:
  NotAdmissibleError(std::size_t step, const std::string& what)
      : Error(ErrorCode::NotAdmissible, "step " + std::to_string(step) + ": " + what),
        step_(step) {}

  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace treeweights
