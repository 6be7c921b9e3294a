#pragma once

#include "regprod/bigreal.hpp"

namespace regprod {

/// Bound on |sum_{n>N} ln(1 + e_n)| when |e_n| <= K rho^n:
///   K rho^{N+1} / ((1 - rho)(1 - K rho^{N+1})).
/// Infinite when K rho^{N+1} >= 1.
BigReal log_product_tail_bound(const BigReal& k, const BigReal& rho, long n);

/// Smallest N >= 0 with log_product_tail_bound(k, rho, N) <= target.
/// Throws Error(kNonconvergence) if K rho^n >= 1 for every n <= cap and
/// Error(kPrecision) if the bound first meets the target beyond `cap`.
long log_product_tail_terms(const BigReal& k, const BigReal& rho, const BigReal& target, long cap);

}  // namespace regprod
