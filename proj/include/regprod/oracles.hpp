#pragma once

// Independent numerical routes for the regularized constant: direct
// summation of zeta'(s) on s > 0 and polynomial extrapolation to s = 0.

#include <optional>
#include <string>
#include <vector>

#include "regprod/bigreal.hpp"
#include "regprod/budget.hpp"
#include "regprod/engine.hpp"
#include "regprod/sequences.hpp"

namespace regprod {

struct OracleOptions {
  /// Cap on direct-summation terms (REGPROD_MAX_TERMS in the CLI).
  long max_terms = 1'000'000;
  /// Tolerance the extrapolation route is held to; it is a structural check.
  double extrapolation_tolerance = 1e-6;
};

/// zeta'(s) = -sum ln(a_n) a_n^{-s} for s > 0, truncated where the tail envelope
/// e^{-s(B - K')} sum_{n>N} (nL + |B| + K') e^{-snL} meets the budget; K'
/// bounds |ln delta_n| past the point where K rho^n <= 1/2.
/// Throws Error(kDomain) for s <= 0 and Error(kPrecision) past the term cap.
TaggedReal zeta_prime_direct(const SequenceSpec& spec, const BigReal& s, const PrecisionBudget& budget,
                             const OracleOptions& options = {});

/// sum_n [ln(a_n) a_n^{-s} - ln(C r^n)(C r^n)^{-s}], the convergent part of the
/// split, by direct summation with the same truncation envelope.
TaggedReal corrected_sum_direct(const SequenceSpec& spec, const BigReal& s, const PrecisionBudget& budget,
                                const OracleOptions& options = {});

struct ExtrapolationReport {
  std::vector<BigReal> sample_points;  // strictly decreasing, positive
  std::vector<BigReal> sample_values;  // h(s_k) = zeta'(s_k) + 1/(L s_k^2)
  BigReal limit;
  /// Heuristic: |T_kk - T_{k-1,k-1}| of the Neville diagonal plus propagated sample error.
  BigReal estimated_error;
  bool converged = false;
  long terms_used = 0;
};

/// Neville extrapolation to x = 0 of samples (x_k, y_k). Returns the diagonal
/// T_00, T_11, ..., T_nn (T_kk uses the first k+1 samples).
std::vector<BigReal> neville_diagonal_at_zero(const std::vector<BigReal>& xs, const std::vector<BigReal>& ys);

/// Samples h(s) at s_k = 2^{-k}/4, k = 0..8, and extrapolates to s = 0.
/// Runs at a fixed 20-digit budget independent of the caller's request.
/// Throws Error(kNonconvergence) if the diagonal does not contract.
ExtrapolationReport regularized_constant_by_extrapolation(const SequenceSpec& spec, const OracleOptions& options = {});

struct RouteValue {
  Route route = Route::kClosedForm;
  BigReal value;        // delta
  BigReal error_bound;  // absolute; estimated for the extrapolation route
  long terms_used = 0;
};

struct VerificationReport {
  std::string sequence;
  int digits = 0;
  std::vector<RouteValue> routes;
  /// Routes that applied but failed, as "route: message".
  std::vector<std::string> failures;
  BigReal max_disagreement;
  bool pass = false;
};

/// Routes applicable to a spec: closed form always, theta for Fibonacci,
/// extrapolation for unbounded sequences.
std::vector<Route> applicable_routes(const SequenceSpec& spec);

/// Delta by one route. Throws Error(kRouteInapplicable) if the route does not apply.
RouteValue compute_route(const SequenceSpec& spec, Route route, const PrecisionBudget& budget,
                         const OracleOptions& options = {});

/// Pairwise agreement of route values: max |v_i - v_j| and whether every pair
/// lies within the sum of its two bounds.
std::pair<BigReal, bool> compare_routes(const std::vector<RouteValue>& routes, Precision p);

/// Every applicable route, pairwise comparison, pass flag. Route failures are
/// recorded in the report (and fail it) rather than thrown.
VerificationReport cross_route_verify(const SequenceSpec& spec, const PrecisionBudget& budget,
                                      const OracleOptions& options = {});

}  // namespace regprod
