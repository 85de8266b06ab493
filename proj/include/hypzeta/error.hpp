#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hypzeta {

enum class ErrorCode {
  InvalidArgument,
  NonReducedWord,
  BadLetter,
  NotHyperbolic,
  FixedPointAtInfinity,
  DiscsNotSeparated,
  OutsideDomain,
  CutoffUncertain,
  NodeEscapes,
  NoConvergence,
  NoBracket,
  NonElementaryRequired,
  DomainTooClose,
  IncompletePrimitives,
  InvalidCover,
  BoundaryZero,
  MaxDepth,
  LostZero,
  IllConditioned,
  ParseError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hypzeta
