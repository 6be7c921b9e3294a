#include "regprod/truncation.hpp"

#include <cmath>

#include "regprod/error.hpp"

namespace regprod {

BigReal log_product_tail_bound(const BigReal& k, const BigReal& rho, long n) {
  const BigReal head = k * pow(rho, n + 1);
  if (!(head < 1L)) {
    BigReal inf(rho.precision());
    mpfr_set_inf(inf.get(), 1);
    return inf;
  }
  return head / ((1L - rho) * (1L - head));
}

long log_product_tail_terms(const BigReal& k, const BigReal& rho, const BigReal& target, long cap) {
  // The search runs at modest precision; MPFR's exponent range keeps rho^N representable.
  const Precision search{96};
  const BigReal k_s = k.at(search);
  const BigReal rho_s = rho.at(search);
  const BigReal target_s = target.at(search);

  const BigReal log_rho = log(rho_s);
  const double estimate = ((log(target_s) - log(k_s) + log(1L - rho_s)) / log_rho).to_double() - 1.0;
  long n = estimate > 0.0 ? static_cast<long>(std::floor(estimate)) : 0L;

  const BigReal first_ok = log(k_s) / (-log_rho);  // K rho^m < 1 for m > first_ok
  if (first_ok.to_double() >= static_cast<double>(cap)) {
    throw Error(ErrorKind::kNonconvergence, "correction bound K rho^n stays >= 1 for all probed n");
  }
  while (!(log_product_tail_bound(k_s, rho_s, n) <= target_s)) {
    ++n;
    if (n > cap) throw Error(ErrorKind::kPrecision, "truncation index exceeds the term cap");
  }
  while (n > 0 && log_product_tail_bound(k_s, rho_s, n - 1) <= target_s) --n;
  // Confirm at full precision; the search precision may be a hair optimistic.
  while (!(log_product_tail_bound(k, rho, n) <= target)) {
    ++n;
    if (n > cap) throw Error(ErrorKind::kPrecision, "truncation index exceeds the term cap");
  }
  return n;
}

}  // namespace regprod
