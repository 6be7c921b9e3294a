#include "regprod/bigreal.hpp"

#include <cmath>
#include <memory>
#include <regex>
#include <stdexcept>

namespace regprod {

namespace {

constexpr double kLog2Of10 = 3.32192809488736234787;

struct MpfrString {
  char* text = nullptr;
  ~MpfrString() {
    if (text != nullptr) mpfr_free_str(text);
  }
};

// Digits of |x| rounded to `significant` places and the decimal exponent e
// such that |x| = 0.digits * 10^e.
std::pair<std::string, long> decimal_digits(mpfr_srcptr x, int significant, mpfr_rnd_t rnd) {
  mpfr_exp_t exponent = 0;
  MpfrString s;
  s.text = mpfr_get_str(nullptr, &exponent, 10, static_cast<size_t>(significant), x, rnd);
  std::string digits = s.text;
  if (!digits.empty() && digits.front() == '-') digits.erase(0, 1);
  return {digits, static_cast<long>(exponent)};
}

Precision wider(const BigReal& a, const BigReal& b) { return max(a.precision(), b.precision()); }

}  // namespace

Precision Precision::from_digits(int digits) {
  if (digits < 1) digits = 1;
  return Precision{static_cast<mpfr_prec_t>(std::ceil(digits * kLog2Of10)) + 8};
}

int Precision::digits() const { return static_cast<int>(std::floor(static_cast<double>(bits - 8) / kLog2Of10)); }

BigReal::BigReal(Precision p) {
  mpfr_init2(value_, p.bits);
  mpfr_set_zero(value_, 1);
}

BigReal::BigReal(long v, Precision p) {
  mpfr_init2(value_, p.bits);
  mpfr_set_si(value_, v, MPFR_RNDN);
}

BigReal::BigReal(double v, Precision p) {
  mpfr_init2(value_, p.bits);
  mpfr_set_d(value_, v, MPFR_RNDN);
}

BigReal::BigReal(const mpz_class& v, Precision p) {
  mpfr_init2(value_, p.bits);
  mpfr_set_z(value_, v.get_mpz_t(), MPFR_RNDN);
}

BigReal::BigReal(const mpq_class& v, Precision p) {
  mpfr_init2(value_, p.bits);
  mpfr_set_q(value_, v.get_mpq_t(), MPFR_RNDN);
}

BigReal BigReal::parse(std::string_view text, Precision p) {
  static const std::regex kDecimal(R"([+-]?([0-9]+(\.[0-9]*)?|\.[0-9]+)([eE][+-]?[0-9]+)?)");
  std::string s(text);
  if (!std::regex_match(s, kDecimal)) throw std::invalid_argument("not a decimal number: '" + s + "'");
  BigReal out(p);
  if (mpfr_set_str(out.value_, s.c_str(), 10, MPFR_RNDN) != 0) {
    throw std::invalid_argument("not a decimal number: '" + s + "'");
  }
  return out;
}

BigReal::BigReal(const BigReal& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigReal::BigReal(BigReal&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

BigReal& BigReal::operator=(const BigReal& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigReal& BigReal::operator=(BigReal&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

BigReal::~BigReal() { mpfr_clear(value_); }

BigReal BigReal::at(Precision p) const {
  BigReal out(p);
  mpfr_set(out.value_, value_, MPFR_RNDN);
  return out;
}

long BigReal::exponent2() const {
  if (is_zero()) return mpfr_get_emin();
  return static_cast<long>(mpfr_get_exp(value_));
}

BigReal BigReal::epsilon() const {
  BigReal out(1L, precision());
  mpfr_mul_2si(out.value_, out.value_, 1 - static_cast<long>(precision().bits), MPFR_RNDN);
  return out;
}

BigReal BigReal::operator-() const {
  BigReal out(precision());
  mpfr_neg(out.value_, value_, MPFR_RNDN);
  return out;
}

// Compound assignment widens the left operand when the right one is more precise.
#define REGPROD_COMPOUND(op, fn)                                              \
  BigReal& BigReal::operator op(const BigReal& rhs) {                         \
    if (mpfr_get_prec(rhs.value_) > mpfr_get_prec(value_)) *this = at(rhs.precision()); \
    fn(value_, value_, rhs.value_, MPFR_RNDN);                                \
    return *this;                                                             \
  }
REGPROD_COMPOUND(+=, mpfr_add)
REGPROD_COMPOUND(-=, mpfr_sub)
REGPROD_COMPOUND(*=, mpfr_mul)
REGPROD_COMPOUND(/=, mpfr_div)
#undef REGPROD_COMPOUND

BigReal& BigReal::operator+=(long rhs) {
  mpfr_add_si(value_, value_, rhs, MPFR_RNDN);
  return *this;
}
BigReal& BigReal::operator-=(long rhs) {
  mpfr_sub_si(value_, value_, rhs, MPFR_RNDN);
  return *this;
}
BigReal& BigReal::operator*=(long rhs) {
  mpfr_mul_si(value_, value_, rhs, MPFR_RNDN);
  return *this;
}
BigReal& BigReal::operator/=(long rhs) {
  mpfr_div_si(value_, value_, rhs, MPFR_RNDN);
  return *this;
}

BigReal operator+(const BigReal& a, const BigReal& b) {
  BigReal out(wider(a, b));
  mpfr_add(out.value_, a.value_, b.value_, MPFR_RNDN);
  return out;
}
BigReal operator-(const BigReal& a, const BigReal& b) {
  BigReal out(wider(a, b));
  mpfr_sub(out.value_, a.value_, b.value_, MPFR_RNDN);
  return out;
}
BigReal operator*(const BigReal& a, const BigReal& b) {
  BigReal out(wider(a, b));
  mpfr_mul(out.value_, a.value_, b.value_, MPFR_RNDN);
  return out;
}
BigReal operator/(const BigReal& a, const BigReal& b) {
  BigReal out(wider(a, b));
  mpfr_div(out.value_, a.value_, b.value_, MPFR_RNDN);
  return out;
}
BigReal operator-(long a, const BigReal& b) {
  BigReal out(b.precision());
  mpfr_si_sub(out.value_, a, b.value_, MPFR_RNDN);
  return out;
}
BigReal operator/(long a, const BigReal& b) {
  BigReal out(b.precision());
  mpfr_si_div(out.value_, a, b.value_, MPFR_RNDN);
  return out;
}

namespace {
std::partial_ordering from_cmp(int c) {
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}
}  // namespace

std::partial_ordering operator<=>(const BigReal& a, const BigReal& b) {
  if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
  return from_cmp(mpfr_cmp(a.value_, b.value_));
}
std::partial_ordering operator<=>(const BigReal& a, long b) {
  if (mpfr_nan_p(a.value_)) return std::partial_ordering::unordered;
  return from_cmp(mpfr_cmp_si(a.value_, b));
}
std::partial_ordering operator<=>(const BigReal& a, double b) {
  if (mpfr_nan_p(a.value_) || std::isnan(b)) return std::partial_ordering::unordered;
  return from_cmp(mpfr_cmp_d(a.value_, b));
}

std::string BigReal::to_decimal(int significant) const {
  if (significant < 1) significant = 1;
  if (mpfr_nan_p(value_)) return "nan";
  if (mpfr_inf_p(value_)) return is_negative() ? "-inf" : "inf";
  if (is_zero()) return significant == 1 ? "0" : "0." + std::string(static_cast<size_t>(significant - 1), '0');

  auto [digits, e] = decimal_digits(value_, significant, MPFR_RNDN);
  std::string out = is_negative() ? "-" : "";
  const long n = static_cast<long>(digits.size());
  if (e > 0 && e <= n) {
    out += digits.substr(0, static_cast<size_t>(e));
    if (e < n) out += "." + digits.substr(static_cast<size_t>(e));
  } else if (e <= 0 && e > -6) {
    out += "0." + std::string(static_cast<size_t>(-e), '0') + digits;
  } else {
    out += digits.substr(0, 1);
    if (n > 1) out += "." + digits.substr(1);
    out += "e" + std::to_string(e - 1);
  }
  return out;
}

std::string BigReal::to_bound_string(int significant) const {
  if (significant < 1) significant = 1;
  if (!is_finite()) return is_negative() ? "-inf" : "inf";
  if (is_zero()) return "0";
  auto [digits, e] = decimal_digits(value_, significant, is_negative() ? MPFR_RNDD : MPFR_RNDU);
  std::string out = is_negative() ? "-" : "";
  out += digits.substr(0, 1);
  if (digits.size() > 1) out += "." + digits.substr(1);
  out += "e" + std::to_string(e - 1);
  return out;
}

#define REGPROD_UNARY(name, fn)              \
  BigReal name(const BigReal& x) {           \
    BigReal out(x.precision());              \
    fn(out.get(), x.get(), MPFR_RNDN);       \
    return out;                              \
  }
REGPROD_UNARY(abs, mpfr_abs)
REGPROD_UNARY(sqrt, mpfr_sqrt)
REGPROD_UNARY(cbrt, mpfr_cbrt)
REGPROD_UNARY(exp, mpfr_exp)
REGPROD_UNARY(expm1, mpfr_expm1)
REGPROD_UNARY(log, mpfr_log)
REGPROD_UNARY(log1p, mpfr_log1p)
REGPROD_UNARY(sin, mpfr_sin)
REGPROD_UNARY(cos, mpfr_cos)
#undef REGPROD_UNARY

BigReal pow(const BigReal& x, const BigReal& y) {
  BigReal out(wider(x, y));
  mpfr_pow(out.get(), x.get(), y.get(), MPFR_RNDN);
  return out;
}

BigReal pow(const BigReal& x, long n) {
  BigReal out(x.precision());
  mpfr_pow_si(out.get(), x.get(), n, MPFR_RNDN);
  return out;
}

BigReal atan2(const BigReal& y, const BigReal& x) {
  BigReal out(wider(x, y));
  mpfr_atan2(out.get(), y.get(), x.get(), MPFR_RNDN);
  return out;
}

BigReal min(const BigReal& a, const BigReal& b) { return (b < a) ? b : a; }
BigReal max(const BigReal& a, const BigReal& b) { return (a < b) ? b : a; }

BigReal ldexp(const BigReal& x, long e) {
  BigReal out(x.precision());
  mpfr_mul_2si(out.get(), x.get(), e, MPFR_RNDN);
  return out;
}

BigReal pi(Precision p) {
  BigReal out(p);
  mpfr_const_pi(out.get(), MPFR_RNDN);
  return out;
}

BigReal golden_mean(Precision p) {
  BigReal five(5L, p);
  return (sqrt(five) + 1) / 2;
}

BigReal pow10(long e, Precision p) {
  BigReal out(p);
  mpfr_ui_pow_ui(out.get(), 10, static_cast<unsigned long>(e < 0 ? -e : e), MPFR_RNDN);
  if (e < 0) mpfr_ui_div(out.get(), 1, out.get(), MPFR_RNDN);
  return out;
}

}  // namespace regprod
