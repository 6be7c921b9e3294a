#include "regprod/oracles.hpp"

#include <cmath>

#include "regprod/error.hpp"
#include "regprod/special_functions.hpp"

namespace regprod {

namespace {

// Budget for the sampled direct sums; the extrapolation route is checked at
// 1e-6 so this leaves ample room for cancellation against 1/(L s^2).
const PrecisionBudget kStructuralBudget{20};
constexpr int kSchedulePoints = 9;

// Tail envelope of the direct sum past index n, see zeta_prime_direct.
struct Envelope {
  BigReal l;
  BigReal b;
  BigReal k_prime;
  BigReal s;
  long first_index = 1;  // envelope valid for n >= first_index

  BigReal tail_after(long n) const {
    const BigReal x = exp(-s * l);
    const BigReal one_minus_x = -expm1(-s * l);
    const BigReal x_next = pow(x, n + 1);
    const BigReal s0 = x_next / one_minus_x;
    const BigReal s1 = x_next * ((n + 1) - x * n) / (one_minus_x * one_minus_x);
    return exp(-s * (b - k_prime)) * (l * s1 + (abs(b) + k_prime) * s0);
  }
};

Envelope make_envelope(const SequenceSpec& spec, const BigReal& s, Precision p) {
  const BigReal k = spec.correction_k(p);
  const BigReal rho = spec.correction_rho(p);
  long n0 = 1;
  BigReal head = k * rho;
  while (head > 0.5) {
    head *= rho;
    ++n0;
  }
  return Envelope{spec.log_growth(p), spec.log_amplitude(p), -log1p(-head), s.at(p), n0};
}

long truncation_index(const Envelope& env, const BigReal& target, long cap) {
  const Precision search{96};
  const Envelope low{env.l.at(search), env.b.at(search), env.k_prime.at(search), env.s.at(search), env.first_index};
  const BigReal target_low = target.at(search);
  long hi = std::max(env.first_index, 16L);
  while (!(low.tail_after(hi) <= target_low)) {
    if (hi > cap) {
      throw Error(ErrorKind::kPrecision, "direct summation needs more than " + std::to_string(cap) +
                                             " terms (set REGPROD_MAX_TERMS to raise the cap)");
    }
    hi *= 2;
  }
  long lo = std::max(env.first_index, hi / 2);
  while (lo < hi) {
    const long mid = lo + (hi - lo) / 2;
    if (low.tail_after(mid) <= target_low) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  long n = hi;
  while (!(env.tail_after(n) <= target)) ++n;
  if (n > cap) {
    throw Error(ErrorKind::kPrecision, "direct summation needs more than " + std::to_string(cap) +
                                           " terms (set REGPROD_MAX_TERMS to raise the cap)");
  }
  return n;
}

void require_positive_s(const BigReal& s) {
  if (!(s > 0L)) throw Error(ErrorKind::kDomain, "direct summation converges only for s > 0");
}

void require_terms(const SequenceSpec& spec, long n) {
  if (const auto available = spec.max_index(); available && n > *available) {
    throw Error(ErrorKind::kPrecision, "direct summation needs " + std::to_string(n) + " terms; table '" +
                                           spec.name() + "' has " + std::to_string(*available));
  }
}

}  // namespace

TaggedReal zeta_prime_direct(const SequenceSpec& spec, const BigReal& s, const PrecisionBudget& budget,
                             const OracleOptions& options) {
  require_positive_s(s);
  const Precision p = max(budget.working(), s.precision());
  const Envelope env = make_envelope(spec, s, p);
  const long n = truncation_index(env, budget.truncation_target(), options.max_terms);
  require_terms(spec, n);

  const BigReal sp = s.at(p);
  BigReal sum(p);
  BigReal largest(p);
  SequenceSpec::Cursor cursor(spec, p);
  for (long i = 1; i <= n; ++i) {
    const BigReal log_a = log(cursor.next());
    const BigReal term = log_a * exp(-sp * log_a);
    sum -= term;
    largest = max(largest, abs(term));
  }
  BigReal error = env.tail_after(n) + rounding_bound(4 * n, max(abs(sum), largest) * (1L + abs(log(sp))));
  return TaggedReal{std::move(sum), std::move(error), n};
}

TaggedReal corrected_sum_direct(const SequenceSpec& spec, const BigReal& s, const PrecisionBudget& budget,
                                const OracleOptions& options) {
  require_positive_s(s);
  const Precision p = max(budget.working(), s.precision());
  const Envelope env = make_envelope(spec, s, p);
  const long n = truncation_index(env, budget.truncation_target(), options.max_terms);
  require_terms(spec, n);

  const BigReal sp = s.at(p);
  BigReal sum(p);
  BigReal largest(p);
  SequenceSpec::Cursor cursor(spec, p);
  BigReal log_leading = env.b;  // ln(C r^n) = nL + B
  for (long i = 1; i <= n; ++i) {
    log_leading += env.l;
    const BigReal log_a = log(cursor.next());
    const BigReal term = log_a * exp(-sp * log_a) - log_leading * exp(-sp * log_leading);
    sum += term;
    largest = max(largest, abs(log_a));
  }
  // Both halves of each tail term are dominated by the same envelope.
  BigReal error = env.tail_after(n) * 2 + rounding_bound(8 * n, largest);
  return TaggedReal{std::move(sum), std::move(error), n};
}

std::vector<BigReal> neville_diagonal_at_zero(const std::vector<BigReal>& xs, const std::vector<BigReal>& ys) {
  if (xs.size() != ys.size() || xs.empty()) {
    throw Error(ErrorKind::kDomain, "extrapolation needs matching, nonempty sample vectors");
  }
  // column[i] holds P_{i..i+j}(0) after pass j.
  std::vector<BigReal> column = ys;
  std::vector<BigReal> diagonal{column.front()};
  for (size_t j = 1; j < xs.size(); ++j) {
    for (size_t i = 0; i + j < xs.size(); ++i) {
      const BigReal& xi = xs[i];
      const BigReal& xk = xs[i + j];
      column[i] = (xi * column[i + 1] - xk * column[i]) / (xi - xk);
    }
    diagonal.push_back(column.front());
  }
  return diagonal;
}

ExtrapolationReport regularized_constant_by_extrapolation(const SequenceSpec& spec, const OracleOptions& options) {
  if (spec.max_index()) {
    throw Error(ErrorKind::kRouteInapplicable, "extrapolation needs an unbounded sequence; '" + spec.name() +
                                                   "' is a finite table");
  }
  const PrecisionBudget& budget = kStructuralBudget;
  const Precision p = budget.working();
  const BigReal l = spec.log_growth(p);

  ExtrapolationReport report;
  std::vector<BigReal> sample_errors;
  for (int k = 0; k < kSchedulePoints; ++k) {
    const BigReal s = ldexp(BigReal(1L, p), -(k + 2));
    const TaggedReal direct = zeta_prime_direct(spec, s, budget, options);
    report.sample_points.push_back(s);
    report.sample_values.push_back(direct.value + 1L / (l * s * s));
    sample_errors.push_back(direct.error_bound);
    report.terms_used += direct.terms_used;
  }

  const std::vector<BigReal> diagonal = neville_diagonal_at_zero(report.sample_points, report.sample_values);
  const BigReal first_step = abs(diagonal[1] - diagonal[0]);
  const BigReal last_step = abs(diagonal.back() - diagonal[diagonal.size() - 2]);
  if (!(last_step < first_step)) {
    throw Error(ErrorKind::kNonconvergence, "extrapolation diagonal does not contract for '" + spec.name() + "'");
  }

  // Sample errors propagate through the Lagrange weights at 0.
  BigReal propagated(p);
  const auto& xs = report.sample_points;
  for (size_t k = 0; k < xs.size(); ++k) {
    BigReal weight(1L, p);
    for (size_t j = 0; j < xs.size(); ++j) {
      if (j != k) weight *= xs[j] / (xs[j] - xs[k]);
    }
    propagated += abs(weight) * sample_errors[k];
  }

  report.limit = diagonal.back();
  report.estimated_error = last_step + propagated;
  report.converged = report.estimated_error <= options.extrapolation_tolerance;
  return report;
}

std::vector<Route> applicable_routes(const SequenceSpec& spec) {
  std::vector<Route> routes{Route::kClosedForm};
  if (spec.is_fibonacci()) routes.push_back(Route::kTheta);
  if (!spec.max_index()) routes.push_back(Route::kExtrapolation);
  return routes;
}

RouteValue compute_route(const SequenceSpec& spec, Route route, const PrecisionBudget& budget,
                         const OracleOptions& options) {
  switch (route) {
    case Route::kClosedForm: {
      RegularizedResult result = regularized_product(spec, budget);
      return RouteValue{route, std::move(result.delta), std::move(result.error_bound), result.terms_used};
    }
    case Route::kTheta: {
      if (!spec.is_fibonacci()) {
        throw Error(ErrorKind::kRouteInapplicable, "the theta route applies only to the Fibonacci numbers");
      }
      TaggedReal result = delta_via_theta(budget);
      return RouteValue{route, std::move(result.value), std::move(result.error_bound), result.terms_used};
    }
    case Route::kExtrapolation: {
      const ExtrapolationReport report = regularized_constant_by_extrapolation(spec, options);
      const Precision p = budget.working();
      const BigReal delta = exp(-report.limit.at(p));
      const BigReal spread = max(report.estimated_error.at(p), BigReal(options.extrapolation_tolerance, p));
      return RouteValue{route, delta, delta * expm1(spread), report.terms_used};
    }
  }
  throw Error(ErrorKind::kRouteInapplicable, "unknown route");
}

std::pair<BigReal, bool> compare_routes(const std::vector<RouteValue>& routes, Precision p) {
  BigReal worst(p);
  bool within = true;
  for (size_t i = 0; i < routes.size(); ++i) {
    for (size_t j = i + 1; j < routes.size(); ++j) {
      const BigReal gap = abs(routes[i].value - routes[j].value);
      worst = max(worst, gap);
      if (gap > routes[i].error_bound + routes[j].error_bound) within = false;
    }
  }
  return {worst.at(p), within};
}

VerificationReport cross_route_verify(const SequenceSpec& spec, const PrecisionBudget& budget,
                                      const OracleOptions& options) {
  VerificationReport report;
  report.sequence = spec.name();
  report.digits = budget.digits;
  for (Route route : applicable_routes(spec)) {
    try {
      report.routes.push_back(compute_route(spec, route, budget, options));
    } catch (const Error& e) {
      report.failures.push_back(std::string(route_name(route)) + ": " + e.what());
    }
  }
  auto [worst, within] = compare_routes(report.routes, budget.working());
  report.max_disagreement = std::move(worst);
  report.pass = within && report.failures.empty();
  return report;
}

}  // namespace regprod
