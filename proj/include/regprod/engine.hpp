#pragma once

// Regularized zeta derivative and regularized product for a sequence
// a_n = C r^n delta_n. The leading part sum (nL + B) e^{-s(nL + B)} has a
// closed form whose Laurent expansion at s = 0 is
//   -1/(L s^2) + (L/12 + B/2 + B^2/(2L)) + O(s),   L = ln r, B = ln C,
// and the remaining sum of ln(a_n) a_n^{-s} - ln(C r^n)(C r^n)^{-s}
// converges at s = 0 to sum ln delta_n.

#include <string>

#include "regprod/bigreal.hpp"
#include "regprod/budget.hpp"
#include "regprod/sequences.hpp"

namespace regprod {

struct LaurentData {
  BigReal principal_coeff;  // coefficient of s^-2, equal to -1/L
  BigReal constant_term;    // L/12 + B/2 + B^2/(2L)
  BigReal log_growth;       // L
  BigReal log_amplitude;    // B
};

enum class Route { kClosedForm, kTheta, kExtrapolation };

/// CLI spelling: "closed-form", "theta", "extrapolation".
const char* route_name(Route route) noexcept;

struct RegularizedResult {
  BigReal zeta_prime_0;
  BigReal delta;
  Route route = Route::kClosedForm;
  BigReal error_bound;  // absolute, on delta
  long terms_used = 0;
  int working_digits = 0;
};

/// -sum_{n>=1} (nL + B) e^{-s(nL + B)} in closed form:
/// -e^{-sB} [L q/(1-q)^2 + B q/(1-q)],  q = e^{-sL}.
/// Throws Error(kPole) at s = 0 and Error(kDomain) for L <= 0.
BigReal meromorphic_term(const BigReal& log_growth, const BigReal& log_amplitude, const BigReal& s,
                         const PrecisionBudget& budget);

/// Principal part and constant term of meromorphic_term at s = 0. Throws Error(kDomain) for L <= 0.
LaurentData laurent_constant(const BigReal& log_growth, const BigReal& log_amplitude);

/// sum_n ln delta_n, truncated at the smallest N whose certified remainder
/// K rho^{N+1} / ((1 - rho)(1 - K rho^{N+1})) meets the budget.
TaggedReal tail_log_sum(const SequenceSpec& spec, const PrecisionBudget& budget);

/// Laurent constant minus tail_log_sum.
TaggedReal regularized_zeta_prime_0(const SequenceSpec& spec, const PrecisionBudget& budget);

/// delta = exp(-zeta'(0)). For Fibonacci the value is also rebuilt as
/// 5^{1/4} exp(-ln^2 5 / (8 ln phi)) c / phi^{1/12} from an independent
/// evaluation of c, and a mismatch beyond twice the tolerance throws Error(kInternal).
RegularizedResult regularized_product(const SequenceSpec& spec, const PrecisionBudget& budget);

/// 5^{1/4} exp(-ln^2 5 / (8 ln phi)) c / phi^{1/12} for a given Fibonacci factorial constant c.
BigReal fibonacci_delta_from_constant(const BigReal& c);

}  // namespace regprod
