#include "regprod/engine.hpp"

#include "regprod/error.hpp"
#include "regprod/special_functions.hpp"
#include "regprod/truncation.hpp"

namespace regprod {

namespace {

// Upper limit on the tail index for unbounded sequences; far beyond any 1000-digit request.
constexpr long kTailCap = 50'000'000;

}  // namespace

const char* route_name(Route route) noexcept {
  switch (route) {
    case Route::kClosedForm:
      return "closed-form";
    case Route::kTheta:
      return "theta";
    case Route::kExtrapolation:
      return "extrapolation";
  }
  return "unknown";
}

BigReal meromorphic_term(const BigReal& log_growth, const BigReal& log_amplitude, const BigReal& s,
                         const PrecisionBudget& budget) {
  if (!(log_growth > 0L)) throw Error(ErrorKind::kDomain, "meromorphic term needs L = ln r > 0");
  if (s.is_zero()) throw Error(ErrorKind::kPole, "meromorphic term has a double pole at s = 0");
  const Precision p = max(budget.working(), s.precision());
  const BigReal l = log_growth.at(p);
  const BigReal b = log_amplitude.at(p);
  const BigReal sp = s.at(p);

  const BigReal q = exp(-sp * l);
  const BigReal one_minus_q = -expm1(-sp * l);
  const BigReal geometric = q / one_minus_q;  // sum q^n
  const BigReal weighted = geometric / one_minus_q;  // sum n q^n
  return -exp(-sp * b) * (l * weighted + b * geometric);
}

LaurentData laurent_constant(const BigReal& log_growth, const BigReal& log_amplitude) {
  if (!(log_growth > 0L)) throw Error(ErrorKind::kDomain, "Laurent data needs L = ln r > 0");
  const BigReal& l = log_growth;
  const BigReal& b = log_amplitude;
  LaurentData out{-1L / l, l / 12 + b / 2 + b * b / (2L * l), l, b};
  return out;
}

TaggedReal tail_log_sum(const SequenceSpec& spec, const PrecisionBudget& budget) {
  const Precision p = budget.working();
  const BigReal k = spec.correction_k(p);
  const BigReal rho = spec.correction_rho(p);

  long n = 0;
  BigReal remainder(p);
  const auto available = spec.max_index();
  try {
    n = log_product_tail_terms(k, rho, budget.truncation_target(), kTailCap);
    remainder = log_product_tail_bound(k, rho, n);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kPrecision || !available) throw;
    n = *available + 1;  // forces the table branch below
  }
  if (available && n > *available) {
    n = *available;
    remainder = log_product_tail_bound(k, rho, n);
    if (!(remainder <= budget.truncation_limit())) {
      throw Error(ErrorKind::kPrecision, "table '" + spec.name() + "' has too few terms for " +
                                             std::to_string(budget.digits) + " digits (remainder bound " +
                                             remainder.to_bound_string() + ")");
    }
  }

  BigReal sum(p);
  BigReal largest(p);
  for (const BigReal& term : spec.log_corrections(n, p)) {
    sum += term;
    largest = max(largest, abs(term));
  }
  BigReal error = remainder + rounding_bound(2 * n, max(largest, abs(sum)));
  return TaggedReal{std::move(sum), std::move(error), n};
}

TaggedReal regularized_zeta_prime_0(const SequenceSpec& spec, const PrecisionBudget& budget) {
  const Precision p = budget.working();
  const LaurentData laurent = laurent_constant(spec.log_growth(p), spec.log_amplitude(p));
  TaggedReal tail = tail_log_sum(spec, budget);
  BigReal value = laurent.constant_term - tail.value;
  BigReal error = tail.error_bound + rounding_bound(12, max(abs(laurent.constant_term), abs(value)));
  return TaggedReal{std::move(value), std::move(error), tail.terms_used};
}

BigReal fibonacci_delta_from_constant(const BigReal& c) {
  const Precision p = c.precision();
  const BigReal ln5 = log(BigReal(5L, p));
  const BigReal ln_phi = log(golden_mean(p));
  return sqrt(sqrt(BigReal(5L, p))) * exp(-(ln5 * ln5) / (8L * ln_phi)) * c / exp(ln_phi / 12);
}

RegularizedResult regularized_product(const SequenceSpec& spec, const PrecisionBudget& budget) {
  const TaggedReal zeta = regularized_zeta_prime_0(spec, budget);
  RegularizedResult out;
  out.zeta_prime_0 = zeta.value;
  out.delta = exp(-zeta.value);
  out.route = Route::kClosedForm;
  out.error_bound = out.delta * expm1(zeta.error_bound) + rounding_bound(4, out.delta);
  out.terms_used = zeta.terms_used;
  out.working_digits = budget.working_digits();

  if (spec.is_fibonacci()) {
    const Precision p = budget.working();
    const BigReal ratio = -1L / pow(golden_mean(p), 2);
    const BigComplex c = q_pochhammer(BigComplex::real(ratio), budget).value;
    const BigReal rebuilt = fibonacci_delta_from_constant(c.re());
    if (abs(rebuilt - out.delta) > budget.tolerance() * 2) {
      throw Error(ErrorKind::kInternal, "closed-form self-check failed: exp(-zeta'(0)) and the product form differ by " +
                                            abs(rebuilt - out.delta).to_bound_string());
    }
  }
  return out;
}

}  // namespace regprod
