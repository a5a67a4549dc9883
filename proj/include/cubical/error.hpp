#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cubical {

enum class ErrorCode {
  SameHyperplane,
  LengthMismatch,
  InvalidWall,
  InconsistentPocset,
  InvalidComplex,
  CapacityExceeded,
  NotAVertex,
  EmptyInput,
  EmptyConvexSet,
  NotDisjoint,
  ComplementaryPair,
  NotDistinct,
  PreconditionFailed,
  OrderViolated,
  NotAPath,
  NotDistancePreserving,
  LeafNotCovered,
  NotOrderPreserving,
  VertexSetNotPreserved,
  NotATree,
  ParseError,
  InvariantViolation,
  InternalInvariant,
};

inline std::string_view errorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::SameHyperplane: return "SameHyperplane";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::InvalidWall: return "InvalidWall";
    case ErrorCode::InconsistentPocset: return "InconsistentPocset";
    case ErrorCode::InvalidComplex: return "InvalidComplex";
    case ErrorCode::CapacityExceeded: return "CapacityExceeded";
    case ErrorCode::NotAVertex: return "NotAVertex";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::EmptyConvexSet: return "EmptyConvexSet";
    case ErrorCode::NotDisjoint: return "NotDisjoint";
    case ErrorCode::ComplementaryPair: return "ComplementaryPair";
    case ErrorCode::NotDistinct: return "NotDistinct";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::OrderViolated: return "OrderViolated";
    case ErrorCode::NotAPath: return "NotAPath";
    case ErrorCode::NotDistancePreserving: return "NotDistancePreserving";
    case ErrorCode::LeafNotCovered: return "LeafNotCovered";
    case ErrorCode::NotOrderPreserving: return "NotOrderPreserving";
    case ErrorCode::VertexSetNotPreserved: return "VertexSetNotPreserved";
    case ErrorCode::NotATree: return "NotATree";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::InternalInvariant: return "InternalInvariant";
  }
  return "Unknown";
}

/// Domain error raised by library operations.
///
/// `witness()` carries the offending objects in their text form (bit-strings
/// for vertices, "3+" for halfspaces, decimal indices for hyperplanes).
/// `index()` is set when the failure is located at a position in an input
/// sequence.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::vector<std::string> witness = {},
        std::optional<std::size_t> index = std::nullopt)
      : std::runtime_error(std::string(errorCodeName(code)) + ": " + message),
        code_(code),
        witness_(std::move(witness)),
        index_(index) {}

  ErrorCode code() const noexcept { return code_; }
  const std::vector<std::string>& witness() const noexcept { return witness_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

  /// Parse and document-format errors map to exit code 2 in the CLI.
  bool isParseError() const noexcept {
    return code_ == ErrorCode::ParseError || code_ == ErrorCode::InvariantViolation;
  }

 private:
  ErrorCode code_;
  std::vector<std::string> witness_;
  std::optional<std::size_t> index_;
};

/// Checks an internal consistency claim (e.g. two characterisations agree).
inline void ensure(bool condition, const std::string& what) {
  if (!condition) throw Error(ErrorCode::InternalInvariant, what);
}

}  // namespace cubical
