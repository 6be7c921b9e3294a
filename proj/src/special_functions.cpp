#include "regprod/special_functions.hpp"

#include <cmath>
#include <mutex>
#include <shared_mutex>
#include <vector>

#include "regprod/error.hpp"
#include "regprod/truncation.hpp"

namespace regprod {

namespace {

constexpr long kSeriesCap = 50'000'000;

// |a| enlarged by its tag, i.e. a modulus valid for every point the tag admits.
BigReal radius(const BigComplex& a) { return modulus(a) + a.error(); }

BigComplex at(const BigComplex& z, Precision p) { return BigComplex(z.re().at(p), z.im().at(p), z.error().at(p)); }

BigComplex constant(const BigReal& x) { return BigComplex(x, BigReal(x.precision()), x.epsilon() * abs(x)); }

void require_inside_unit_disc(const BigComplex& a, const char* what) {
  if (!(radius(a) < 1L)) throw Error(ErrorKind::kDomain, std::string(what) + " needs |a| < 1");
}

}  // namespace

SeriesValue q_pochhammer_inf(const BigComplex& a_in, const PrecisionBudget& budget) {
  const Precision p = budget.working();
  const BigComplex a = at(a_in, p);
  require_inside_unit_disc(a, "q-Pochhammer product");
  const BigComplex one = BigComplex::real(BigReal(1L, p));
  if (a.is_zero() && a.error().is_zero()) return SeriesValue{one, 0};

  const BigReal m = radius(a);
  const BigReal unit(1L, p);
  const long n = log_product_tail_terms(unit, m, budget.truncation_target(), kSeriesCap);
  const BigReal tail = log_product_tail_bound(unit, m, n);

  BigComplex product = one;
  BigComplex power = a;
  for (long k = 1; k <= n; ++k) {
    product = product * (one - power);
    power = power * a;
  }
  return SeriesValue{product.widened(modulus(product) * expm1(tail)), n};
}

SeriesValue q_pochhammer_pentagonal(const BigComplex& a_in, const PrecisionBudget& budget) {
  const Precision p = budget.working();
  const BigComplex a = at(a_in, p);
  require_inside_unit_disc(a, "pentagonal series");
  const BigComplex one = BigComplex::real(BigReal(1L, p));
  if (a.is_zero() && a.error().is_zero()) return SeriesValue{one, 0};

  const BigReal m = radius(a);
  const BigReal target = budget.truncation_target();
  // Remainder after k = K: 2 m^{e(K+1)} / (1 - m), e(k) = k(3k-1)/2.
  auto remainder = [&](long k) {
    const long e = (k + 1) * (3 * (k + 1) - 1) / 2;
    return pow(m, e) * 2 / (1L - m);
  };

  BigComplex sum = one;
  BigComplex a_k = one;      // a^k
  BigComplex minus = one;    // a^{k(3k-1)/2}
  long k = 0;
  long terms = 1;
  do {
    // e(k+1) - e(k) = 3k + 1
    minus = minus * ipow(a_k, 3) * a;
    a_k = a_k * a;
    ++k;
    const BigComplex plus = minus * a_k;  // a^{k(3k+1)/2}
    const BigComplex pair = minus + plus;
    sum = (k % 2 == 1) ? sum - pair : sum + pair;
    terms += 2;
    if (k > kSeriesCap) throw Error(ErrorKind::kPrecision, "pentagonal series exceeds the term cap");
  } while (!(remainder(k) <= target));
  return SeriesValue{sum.widened(remainder(k)), terms};
}

SeriesValue q_pochhammer(const BigComplex& a, const PrecisionBudget& budget) {
  if (modulus(a) > BigReal(0.5, a.precision())) return q_pochhammer_pentagonal(a, budget);
  return q_pochhammer_inf(a, budget);
}

BigComplex principal_power(const BigComplex& z_in, const BigComplex& w_in, const PrecisionBudget& budget) {
  const Precision p = budget.working();
  const BigComplex z = at(z_in, p);
  const BigComplex w = at(w_in, p);
  if (z.is_zero()) {
    if (w.re() > 0L) return BigComplex(p);
    throw Error(ErrorKind::kDomain, "0^w is undefined for Re(w) <= 0");
  }
  return exp(w * principal_log(z));
}

SeriesValue theta1_prime_zero(const BigComplex& q_in, const PrecisionBudget& budget) {
  const Precision p = budget.working();
  const BigComplex q = at(q_in, p);
  require_inside_unit_disc(q, "theta function nome");
  if (q.is_zero() && q.error().is_zero()) return SeriesValue{BigComplex(p), 0};

  const BigReal m = radius(q);
  const BigReal target = budget.truncation_target();
  // Terms (2n+1)|q|^{n(n+1)}; the ratio of consecutive terms past M is at
  // most ((2M+5)/(2M+3)) |q|^{2M+4}, so the tail is a dominated geometric series.
  auto remainder = [&](long last) -> BigReal {
    const long next = last + 1;
    const BigReal first = pow(m, next * (next + 1)) * (2 * next + 1);
    const BigReal ratio = pow(m, 2 * next + 2) * (2 * next + 3) / (2 * next + 1);
    if (!(ratio < 1L)) {
      BigReal inf(p);
      mpfr_set_inf(inf.get(), 1);
      return inf;
    }
    return first / (1L - ratio);
  };

  const BigComplex one = BigComplex::real(BigReal(1L, p));
  const BigComplex q2 = q * q;
  BigComplex power = one;  // q^{n(n+1)}
  BigComplex step = one;   // q^{2n}
  BigComplex sum = one;
  long n = 0;
  while (!(remainder(n) <= target)) {
    step = step * q2;       // q^{2(n+1)}
    power = power * step;   // q^{(n+1)(n+2)}
    ++n;
    const BigComplex term = power * (2 * n + 1);
    sum = (n % 2 == 1) ? sum - term : sum + term;
    if (n > kSeriesCap) throw Error(ErrorKind::kPrecision, "theta series exceeds the term cap");
  }

  const BigComplex quarter = principal_power(q, constant(BigReal(0.25, p)), budget);
  const BigComplex value = quarter * sum.widened(remainder(n)) * 2L;
  return SeriesValue{value, n + 1};
}

TaggedReal delta_via_theta(const PrecisionBudget& budget) {
  const Precision p = budget.working();
  const BigReal phi = golden_mean(p);
  const BigReal inv_phi = 1L / phi;
  const BigComplex nome(BigReal(p), -inv_phi, inv_phi.epsilon() * inv_phi);

  const SeriesValue theta = theta1_prime_zero(nome, budget);
  const BigComplex half = theta.value * BigReal(0.5, p);
  const BigComplex root = principal_power(half, constant(BigReal(1L, p) / 3), budget);
  const BigComplex minus_one = BigComplex::real(BigReal(-1L, p));
  const BigComplex twenty_fourth = principal_power(minus_one, constant(BigReal(1L, p) / 24), budget);

  const BigReal ln5 = log(BigReal(5L, p));
  const BigReal scalar = sqrt(sqrt(BigReal(5L, p))) * exp(-(ln5 * ln5) / (8L * log(phi)));
  const BigComplex delta = twenty_fourth * root * scalar;
  const BigReal tag = delta.error() + rounding_bound(8, scalar);

  if (abs(delta.im()) > tag) {
    throw Error(ErrorKind::kBranch, "theta route is not real within its tag: imaginary part " +
                                        delta.im().to_bound_string() + " vs tag " + tag.to_bound_string());
  }
  return TaggedReal{delta.re(), tag, theta.terms_used};
}

TaggedReal fibonacci_factorial_constant(const PrecisionBudget& budget) {
  const Precision p = budget.working();
  const BigComplex a = constant(-1L / pow(golden_mean(p), 2));
  const SeriesValue direct = q_pochhammer_inf(a, budget);
  const SeriesValue pentagonal = q_pochhammer_pentagonal(a, budget);
  const BigReal gap = modulus(direct.value - pentagonal.value);
  const BigReal allowed = direct.value.error() + pentagonal.value.error() + budget.tolerance();
  if (gap > allowed) {
    throw Error(ErrorKind::kInternal,
                "q-Pochhammer routes disagree on the Fibonacci factorial constant by " + gap.to_bound_string());
  }
  return TaggedReal{direct.value.re(), max(direct.value.error(), pentagonal.value.error()) + abs(direct.value.im()),
                    direct.terms_used};
}

EulerMaclaurinParams EulerMaclaurinParams::defaults(const PrecisionBudget& budget) {
  const long digits = budget.working_digits();
  EulerMaclaurinParams params;
  params.terms = std::max(30L, digits);
  params.corrections = std::max(12L, static_cast<long>(std::ceil(0.4 * static_cast<double>(digits))));
  return params;
}

TaggedReal riemann_zeta_prime_zero(const PrecisionBudget& budget) {
  return riemann_zeta_prime_zero(budget, EulerMaclaurinParams::defaults(budget));
}

TaggedReal riemann_zeta_prime_zero(const PrecisionBudget& budget, EulerMaclaurinParams params) {
  if (params.terms < 2 || params.corrections < 1) {
    throw Error(ErrorKind::kDomain, "Euler-Maclaurin needs at least 2 terms and 1 correction");
  }
  const Precision p = budget.working();
  const long n = params.terms;
  const BigReal big_n(n, p);
  const BigReal ln_n = log(big_n);

  // d/ds of sum_{j<N} j^{-s}, N^{1-s}/(s-1) and N^{-s}/2 at s = 0.
  BigReal value(p);
  for (long j = 2; j < n; ++j) value -= log(BigReal(j, p));
  value += big_n * ln_n - big_n - ln_n / 2;

  // d/ds [B_{2k}/(2k)! s(s+1)...(s+2k-2) N^{-s-2k+1}] at s = 0 is B_{2k}/(2k(2k-1)) N^{1-2k}.
  const BigReal inv_n_sq = 1L / (big_n * big_n);
  BigReal n_power = 1L / big_n;  // N^{1-2k}
  for (long k = 1; k <= params.corrections; ++k) {
    value += BigReal(bernoulli_b2n(k), p) * n_power / (2 * k * (2 * k - 1));
    n_power *= inv_n_sq;
  }

  const long m = params.corrections + 1;
  const BigReal omitted = abs(BigReal(bernoulli_b2n(m), p)) * n_power / (2 * m * (2 * m - 1));
  BigReal error = omitted + rounding_bound(n + 2 * params.corrections, big_n * ln_n);
  return TaggedReal{std::move(value), std::move(error), n};
}

mpq_class bernoulli_b2n(long k) {
  if (k < 1) throw Error(ErrorKind::kDomain, "bernoulli_b2n needs k >= 1");
  static std::shared_mutex mutex;
  static std::vector<mpq_class> table;  // table[i] = B_{2(i+1)}
  {
    std::shared_lock lock(mutex);
    if (static_cast<long>(table.size()) >= k) return table[static_cast<size_t>(k - 1)];
  }
  std::unique_lock lock(mutex);
  if (static_cast<long>(table.size()) < k) {
    const long count = std::max(k, 2 * static_cast<long>(table.size()));
    // Tangent numbers T_1..T_count (Brent-Harvey), then
    // B_{2j} = (-1)^{j-1} 2j T_j / (4^j (4^j - 1)).
    std::vector<mpz_class> tangent(static_cast<size_t>(count + 1));
    tangent[1] = 1;
    for (long j = 2; j <= count; ++j) tangent[j] = (j - 1) * tangent[j - 1];
    for (long i = 2; i <= count; ++i) {
      for (long j = i; j <= count; ++j) tangent[j] = (j - i) * tangent[j - 1] + (j - i + 2) * tangent[j];
    }
    std::vector<mpq_class> fresh;
    fresh.reserve(static_cast<size_t>(count));
    for (long j = 1; j <= count; ++j) {
      mpz_class four_j;
      mpz_ui_pow_ui(four_j.get_mpz_t(), 4, static_cast<unsigned long>(j));
      mpq_class b(2 * j * tangent[j], four_j * (four_j - 1));
      b.canonicalize();
      if (j % 2 == 0) b = -b;
      fresh.push_back(std::move(b));
    }
    table = std::move(fresh);
  }
  return table[static_cast<size_t>(k - 1)];
}

}  // namespace regprod
