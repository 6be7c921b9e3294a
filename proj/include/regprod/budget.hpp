#pragma once

#include <algorithm>
#include <cmath>

#include "regprod/bigreal.hpp"

namespace regprod {

/// Requested accuracy of a computation.
///
/// `digits` is the requested number of decimal digits; the absolute error
/// target is 10^-digits. Computations run at `working_digits()`, which adds
/// max(10, 20%) guard digits. The error budget is split evenly between
/// series truncation and rounding.
struct PrecisionBudget {
  int digits = 12;

  static PrecisionBudget for_digits(int digits) { return PrecisionBudget{digits}; }

  int guard_digits() const { return std::max(10, static_cast<int>(std::ceil(0.2 * digits))); }
  int working_digits() const { return digits + guard_digits(); }
  Precision working() const { return Precision::from_digits(working_digits()); }

  /// Absolute error target 10^-digits.
  BigReal tolerance() const { return pow10(-digits, working()); }
  /// Largest truncation error the budget admits (half the tolerance).
  BigReal truncation_limit() const { return tolerance() / 2; }
  /// Truncation target actually aimed for: half an ulp of the working digits.
  /// Always below truncation_limit(); used whenever the term supply is unbounded.
  BigReal truncation_target() const { return pow10(-working_digits(), working()) / 2; }

  /// Same request at twice the digits (used for error-bound soundness checks).
  PrecisionBudget doubled() const { return PrecisionBudget{2 * digits}; }
};

/// A real value with a certified (or, where labelled, estimated) absolute error bound.
struct TaggedReal {
  BigReal value;
  BigReal error_bound;
  long terms_used = 0;
};

/// Rounding bound for an accumulation of `operations` roundings on values of magnitude <= `scale`.
inline BigReal rounding_bound(long operations, const BigReal& scale) {
  BigReal magnitude = max(abs(scale), BigReal(1L, scale.precision()));
  return scale.epsilon() * magnitude * (8 * (operations + 16));
}

}  // namespace regprod
