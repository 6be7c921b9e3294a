#pragma once

#include <gmpxx.h>

#include "regprod/bigcomplex.hpp"
#include "regprod/budget.hpp"

namespace regprod {

/// Complex series value; the truncation bound is folded into value.error().
struct SeriesValue {
  BigComplex value;
  long terms_used = 0;
};

/// (a; a)_inf = prod_{n>=1} (1 - a^n) by direct multiplication, truncated where
/// |a|^{N+1} / ((1 - |a|)(1 - |a|^{N+1})) bounds the log of the remainder.
/// Throws Error(kDomain) for |a| >= 1.
SeriesValue q_pochhammer_inf(const BigComplex& a, const PrecisionBudget& budget);

/// (a; a)_inf = sum_{k in Z} (-1)^k a^{k(3k-1)/2} (pentagonal number theorem).
/// Throws Error(kDomain) for |a| >= 1.
SeriesValue q_pochhammer_pentagonal(const BigComplex& a, const PrecisionBudget& budget);

/// Pentagonal series for |a| > 1/2, direct product otherwise.
SeriesValue q_pochhammer(const BigComplex& a, const PrecisionBudget& budget);

/// theta_1'(0, q) = 2 sum_{n>=0} (-1)^n (2n+1) q^{(n+1/2)^2} for the nome q,
/// with q^{(n+1/2)^2} = exp((n+1/2)^2 Log q) on the principal branch.
/// Returns 0 for q = 0; throws Error(kDomain) for |q| >= 1.
SeriesValue theta1_prime_zero(const BigComplex& q, const PrecisionBudget& budget);

/// exp(w Log z) with the principal logarithm. z = 0 gives 0 when Re w > 0
/// and throws Error(kDomain) otherwise.
BigComplex principal_power(const BigComplex& z, const BigComplex& w, const PrecisionBudget& budget);

/// Regularized Fibonacci product from the theta expression
///   exp(i pi/24) 5^{1/4} exp(-ln^2 5 / (8 ln phi)) (theta_1'(0, -i/phi) / 2)^{1/3}.
/// Throws Error(kBranch) if the imaginary part exceeds the error tag.
TaggedReal delta_via_theta(const PrecisionBudget& budget);

/// Fibonacci factorial constant c = prod (1 - (-phi^-2)^n) by both q-Pochhammer
/// routes; throws Error(kInternal) if they disagree beyond their combined tags
/// plus the budget tolerance.
TaggedReal fibonacci_factorial_constant(const PrecisionBudget& budget);

/// Euler-Maclaurin parameters: `terms` explicit summands, `corrections` Bernoulli terms.
struct EulerMaclaurinParams {
  long terms = 30;
  long corrections = 12;

  /// 30 / 12 up to 30 working digits, scaled linearly with working digits beyond.
  static EulerMaclaurinParams defaults(const PrecisionBudget& budget);
};

/// zeta'(0) by the Euler-Maclaurin formula for zeta(s), differentiated term by
/// term in s and evaluated at s = 0. The truncation bound is the first omitted
/// Bernoulli term, |B_{2M+2}| / ((2M+2)(2M+1) N^{2M+1}).
TaggedReal riemann_zeta_prime_zero(const PrecisionBudget& budget);
TaggedReal riemann_zeta_prime_zero(const PrecisionBudget& budget, EulerMaclaurinParams params);

/// Exact Bernoulli number B_{2k}, k >= 1, from tangent numbers. Values are
/// cached in a shared, internally synchronized table.
mpq_class bernoulli_b2n(long k);

}  // namespace regprod
