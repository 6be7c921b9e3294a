#include "regprod/oracles.hpp"

#include "regprod/error.hpp"
#include "test_support.hpp"

using namespace regprod;
using regprod::testing::check_close;
using regprod::testing::digits;
using regprod::testing::polynomial_limit_at_zero;

namespace {

const Precision kHp = digits(70);

BigReal phi() { return (sqrt(BigReal(5L, kHp)) + 1) / 2; }

// -sum_{n<=200} ln(f_n) / f_n with exact integer terms. The omitted terms are
// below n phi^{-n} * 3, so the remainder is far under 1e-35.
BigReal fibonacci_partial_sum_at_one() {
  mpz_class prev = 0, cur = 1;
  BigReal sum(kHp);
  for (long n = 1; n <= 200; ++n) {
    const BigReal f(cur, kHp);
    sum -= log(f) / f;
    mpz_class next = cur + prev;
    prev = cur;
    cur = next;
  }
  return sum;
}

}  // namespace

TEST_CASE("zeta_prime_direct at s = 1") {
  const PrecisionBudget budget{30};
  const BigReal one(1L, kHp);

  const TaggedReal fib = zeta_prime_direct(SequenceSpec::fibonacci(), one, budget);
  check_close(fib.value, fibonacci_partial_sum_at_one(), fib.error_bound + pow10(-35, kHp));
  CHECK(fib.error_bound <= budget.tolerance());

  const TaggedReal geo = zeta_prime_direct(SequenceSpec::geometric("g", "2", "1"), one, budget);
  check_close(geo.value, -2L * log(BigReal(2L, kHp)), geo.error_bound);
}

TEST_CASE("zeta_prime_direct rejects s <= 0 and respects the term cap") {
  const PrecisionBudget budget{12};
  for (const char* s : {"0", "-0.5"}) {
    try {
      zeta_prime_direct(SequenceSpec::fibonacci(), BigReal::parse(s, kHp), budget);
      FAIL("accepted s <= 0");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kDomain);
    }
  }
  OracleOptions tight;
  tight.max_terms = 100;
  try {
    zeta_prime_direct(SequenceSpec::fibonacci(), BigReal::parse("0.001", kHp), budget, tight);
    FAIL("cap ignored");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kPrecision);
  }
}

TEST_CASE("split identity at finite s") {
  const PrecisionBudget budget{25};
  const SequenceSpec specs[] = {SequenceSpec::fibonacci(), SequenceSpec::lucas_numbers(),
                                SequenceSpec::lucas("pell", LucasParams{2, -1, LucasVariant::kU}),
                                SequenceSpec::geometric("g", "3", "0.5")};
  for (const SequenceSpec& spec : specs) {
    const Precision p = budget.working();
    for (const char* s_text : {"1", "0.5", "0.25", "0.125"}) {
      const BigReal s = BigReal::parse(s_text, p);
      const TaggedReal direct = zeta_prime_direct(spec, s, budget);
      const TaggedReal corrected = corrected_sum_direct(spec, s, budget);
      const BigReal split = meromorphic_term(spec.log_growth(p), spec.log_amplitude(p), s, budget) - corrected.value;
      const BigReal split_rounding = abs(split) * split.epsilon() * 64;
      INFO(spec.name(), " s=", s_text);
      CHECK(abs(direct.value - split) <= direct.error_bound + corrected.error_bound + split_rounding);
    }
  }
}

TEST_CASE("Neville diagonal reproduces polynomials") {
  const Precision p = digits(30);
  std::vector<BigReal> xs, ys;
  for (long k = 0; k < 6; ++k) {
    const BigReal x = ldexp(BigReal(1L, p), static_cast<long>(-k));
    xs.push_back(x);
    ys.push_back(3L + x * 2 - x * x * x * 5);
  }
  const std::vector<BigReal> diagonal = neville_diagonal_at_zero(xs, ys);
  REQUIRE(diagonal.size() == 6);
  for (size_t k = 3; k < diagonal.size(); ++k) check_close(diagonal[k], BigReal(3L, p), pow10(-27, p));
  check_close(diagonal.back(), polynomial_limit_at_zero(xs, ys), pow10(-27, p));
  CHECK_THROWS_AS(neville_diagonal_at_zero({}, {}), Error);
}

TEST_CASE("extrapolation to s = 0") {
  SUBCASE("pure geometric recovers L/12 with shrinking error") {
    const SequenceSpec spec = SequenceSpec::geometric("g", "2", "1");
    const ExtrapolationReport r = regularized_constant_by_extrapolation(spec);
    const BigReal target = log(BigReal(2L, kHp)) / 12;
    CHECK(abs(r.limit - target) <= BigReal(1e-8, kHp));
    CHECK(r.converged);
    for (size_t k = 1; k < r.sample_points.size(); ++k) {
      CHECK(r.sample_points[k] > 0L);
      CHECK(r.sample_points[k] < r.sample_points[k - 1]);
    }
    BigReal previous(kHp);
    for (size_t k = 3; k <= 8; ++k) {
      const std::vector<BigReal> xs(r.sample_points.begin(), r.sample_points.begin() + static_cast<long>(k) + 1);
      const std::vector<BigReal> ys(r.sample_values.begin(), r.sample_values.begin() + static_cast<long>(k) + 1);
      const BigReal err = abs(polynomial_limit_at_zero(xs, ys) - target);
      INFO("k=", k, " err=", err.to_bound_string());
      if (k > 3) CHECK(err < previous);
      previous = err;
    }
  }
  SUBCASE("Fibonacci and Lucas agree with the closed form") {
    const PrecisionBudget budget{20};
    for (const SequenceSpec& spec : {SequenceSpec::fibonacci(), SequenceSpec::lucas_numbers()}) {
      const ExtrapolationReport r = regularized_constant_by_extrapolation(spec);
      const TaggedReal closed = regularized_zeta_prime_0(spec, budget);
      INFO(spec.name());
      CHECK(abs(r.limit - closed.value) <= max(r.estimated_error, BigReal(1e-6, kHp)));
      CHECK(r.converged);
      CHECK(r.estimated_error.is_finite());
    }
  }
  SUBCASE("tables are refused") {
    std::vector<std::string> terms;
    for (long n = 1; n <= 8; ++n) terms.push_back(std::to_string(1L << n));
    const SequenceSpec t = SequenceSpec::table("t", terms, "2", "1", "1", "0.5");
    try {
      regularized_constant_by_extrapolation(t);
      FAIL("table accepted");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kRouteInapplicable);
    }
  }
}

TEST_CASE("routes") {
  CHECK(applicable_routes(SequenceSpec::fibonacci()).size() == 3);
  CHECK(applicable_routes(SequenceSpec::lucas_numbers()).size() == 2);
  try {
    compute_route(SequenceSpec::lucas_numbers(), Route::kTheta, PrecisionBudget{12});
    FAIL("theta accepted for Lucas");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kRouteInapplicable);
  }

  const Precision p = digits(20);
  std::vector<RouteValue> close{{Route::kClosedForm, BigReal(1L, p), BigReal(0.1, p), 0},
                                {Route::kTheta, BigReal(1.15, p), BigReal(0.1, p), 0}};
  CHECK(compare_routes(close, p).second);
  close[1].value = BigReal(1.25, p);
  const auto [gap, within] = compare_routes(close, p);
  CHECK_FALSE(within);
  check_close(gap, BigReal(0.25, p), pow10(-15, p));
}

TEST_CASE("cross_route_verify") {
  const BigReal quoted = BigReal::parse("0.8992126807", kHp);
  for (int d : {12, 30, 60}) {
    const VerificationReport r = cross_route_verify(SequenceSpec::fibonacci(), PrecisionBudget{d});
    INFO(d, " digits");
    CHECK(r.pass);
    CHECK(r.failures.empty());
    REQUIRE(r.routes.size() == 3);
    for (const RouteValue& v : r.routes) CHECK(abs(v.value - quoted) <= BigReal(1e-10, kHp));
  }
  for (const SequenceSpec& spec : {SequenceSpec::geometric("g", "2", "3"), SequenceSpec::lucas_numbers()}) {
    const VerificationReport r = cross_route_verify(spec, PrecisionBudget{30});
    INFO(spec.name());
    CHECK(r.pass);
    CHECK(r.routes.size() == 2);
  }
}
