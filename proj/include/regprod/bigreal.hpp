#pragma once

// Arbitrary-precision real numbers backed by MPFR.
//
// Every value owns its precision; there is no process-wide default. The
// result of a binary operation takes the larger precision of its operands,
// and operations against built-in integers or doubles take the precision of
// the BigReal operand. All operations round to nearest.

#include <mpfr.h>

#include <compare>
#include <gmpxx.h>
#include <string>
#include <string_view>

namespace regprod {

/// Working precision in bits.
struct Precision {
  mpfr_prec_t bits = 64;

  /// Smallest precision holding `digits` decimal digits, plus a few guard bits.
  static Precision from_digits(int digits);
  /// Decimal digits carried by this precision (rounded down).
  int digits() const;

  auto operator<=>(const Precision&) const = default;
};

inline Precision max(Precision a, Precision b) { return a.bits >= b.bits ? a : b; }

class BigReal {
 public:
  BigReal() : BigReal(Precision{}) {}
  explicit BigReal(Precision p);
  BigReal(long v, Precision p);
  BigReal(int v, Precision p) : BigReal(static_cast<long>(v), p) {}
  BigReal(double v, Precision p);
  BigReal(const mpz_class& v, Precision p);
  BigReal(const mpq_class& v, Precision p);

  /// Parses a plain decimal literal (`[+-]digits[.digits][e[+-]digits]`).
  /// Throws std::invalid_argument on anything else.
  static BigReal parse(std::string_view text, Precision p);

  BigReal(const BigReal& other);
  BigReal(BigReal&& other) noexcept;
  BigReal& operator=(const BigReal& other);
  BigReal& operator=(BigReal&& other) noexcept;
  ~BigReal();

  Precision precision() const { return Precision{mpfr_get_prec(value_)}; }
  /// Copy rounded (or widened) to `p`.
  BigReal at(Precision p) const;

  mpfr_srcptr get() const { return value_; }
  mpfr_ptr get() { return value_; }

  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  bool is_negative() const { return mpfr_sgn(value_) < 0; }
  int sign() const { return mpfr_sgn(value_); }
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  /// Base-2 exponent e with value = m * 2^e, 0.5 <= |m| < 1. Zero maps to a very small exponent.
  long exponent2() const;
  /// Unit roundoff of this value's precision, 2^(1 - bits).
  BigReal epsilon() const;

  BigReal operator-() const;
  BigReal& operator+=(const BigReal& rhs);
  BigReal& operator-=(const BigReal& rhs);
  BigReal& operator*=(const BigReal& rhs);
  BigReal& operator/=(const BigReal& rhs);
  BigReal& operator+=(long rhs);
  BigReal& operator-=(long rhs);
  BigReal& operator*=(long rhs);
  BigReal& operator/=(long rhs);

  friend BigReal operator+(const BigReal& a, const BigReal& b);
  friend BigReal operator-(const BigReal& a, const BigReal& b);
  friend BigReal operator*(const BigReal& a, const BigReal& b);
  friend BigReal operator/(const BigReal& a, const BigReal& b);
  friend BigReal operator+(BigReal a, long b) { return a += b; }
  friend BigReal operator-(BigReal a, long b) { return a -= b; }
  friend BigReal operator*(BigReal a, long b) { return a *= b; }
  friend BigReal operator/(BigReal a, long b) { return a /= b; }
  friend BigReal operator+(long a, BigReal b) { return b += a; }
  friend BigReal operator-(long a, const BigReal& b);
  friend BigReal operator*(long a, BigReal b) { return b *= a; }
  friend BigReal operator/(long a, const BigReal& b);

  friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
  friend std::partial_ordering operator<=>(const BigReal& a, const BigReal& b);
  friend bool operator==(const BigReal& a, long b) { return mpfr_cmp_si(a.value_, b) == 0; }
  friend std::partial_ordering operator<=>(const BigReal& a, long b);
  friend std::partial_ordering operator<=>(const BigReal& a, double b);

  /// Decimal string with exactly `significant` significant digits, rounded to nearest.
  /// Fixed notation for moderate exponents, scientific otherwise.
  std::string to_decimal(int significant) const;
  /// Scientific string with `significant` digits, rounded away from zero. Used for error bounds.
  std::string to_bound_string(int significant = 2) const;

 private:
  mpfr_t value_;
};

// Elementary functions. Results carry the argument's precision.
BigReal abs(const BigReal& x);
BigReal sqrt(const BigReal& x);
BigReal cbrt(const BigReal& x);
BigReal exp(const BigReal& x);
BigReal expm1(const BigReal& x);
BigReal log(const BigReal& x);
BigReal log1p(const BigReal& x);
BigReal pow(const BigReal& x, const BigReal& y);
BigReal pow(const BigReal& x, long n);
BigReal sin(const BigReal& x);
BigReal cos(const BigReal& x);
BigReal atan2(const BigReal& y, const BigReal& x);
BigReal min(const BigReal& a, const BigReal& b);
BigReal max(const BigReal& a, const BigReal& b);
/// Multiplies by 2^e exactly.
BigReal ldexp(const BigReal& x, long e);

BigReal pi(Precision p);
BigReal golden_mean(Precision p);
/// 10^e at precision p.
BigReal pow10(long e, Precision p);

}  // namespace regprod
