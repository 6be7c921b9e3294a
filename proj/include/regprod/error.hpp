#pragma once

#include <stdexcept>
#include <string>

namespace regprod {

enum class ErrorKind {
  kDomain,            // argument outside the function's domain (|q| >= 1, s <= 0, ...)
  kPole,              // evaluation exactly at a pole
  kInvalidSequence,   // spec violates its own invariants (r <= 1, nonpositive term, ...)
  kBoundViolation,    // certified correction bound fails at some index
  kNonconvergence,    // series or extrapolation failed to contract
  kPrecision,         // requested precision infeasible (term cap, short table)
  kRouteInapplicable, // route does not apply to the sequence
  kBranch,            // complex result not real within its error tag
  kInternal,          // self-check mismatch between equivalent forms
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace regprod
