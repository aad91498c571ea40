#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace funspace {

/// Failure categories raised by the library. The CLI maps these onto exit
/// statuses, so new kinds must be added to `exit_status_for` as well.
enum class ErrorKind {
  InvalidArgument,   // malformed parameters, failed type invariants
  InvalidSet,        // cell index out of range
  GridMismatch,      // operands live on different grids
  AlignmentError,    // sub-box or shift not aligned with the cell lattice
  InvalidThreshold,  // negative level for a distribution function
  DomainError,       // evaluation point outside the admissible interval
  Divergent,         // B_{p,q;w} is infinite for the requested parameters
  ResolutionError,   // probe finer than the grid can represent
  InvalidSequence,   // set sequence not nested / not shrinking
  NotApplicable,     // operation requires a Banach function space
  ParseError,        // malformed JSON/CSV input
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace funspace
