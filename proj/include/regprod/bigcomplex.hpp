#pragma once

#include <string>

#include "regprod/bigreal.hpp"

namespace regprod {

/// Complex value with an absolute error tag: the true value lies within
/// `error` of (re, im) in modulus. Arithmetic propagates the tag
/// conservatively, including a rounding term for the operation itself.
class BigComplex {
 public:
  BigComplex() = default;
  explicit BigComplex(Precision p) : re_(p), im_(p), error_(p) {}
  BigComplex(BigReal re, BigReal im);
  BigComplex(BigReal re, BigReal im, BigReal error);
  static BigComplex real(const BigReal& re) { return BigComplex(re, BigReal(re.precision())); }

  const BigReal& re() const { return re_; }
  const BigReal& im() const { return im_; }
  const BigReal& error() const { return error_; }
  Precision precision() const { return max(re_.precision(), im_.precision()); }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

  /// Returns a copy with `extra` added to the error tag.
  BigComplex widened(const BigReal& extra) const;

  BigComplex operator-() const { return BigComplex(-re_, -im_, error_); }

  friend BigComplex operator+(const BigComplex& a, const BigComplex& b);
  friend BigComplex operator-(const BigComplex& a, const BigComplex& b);
  friend BigComplex operator*(const BigComplex& a, const BigComplex& b);
  friend BigComplex operator*(const BigComplex& a, const BigReal& b);
  friend BigComplex operator*(const BigComplex& a, long b);
  friend BigComplex operator/(const BigComplex& a, const BigComplex& b);
  BigComplex& operator+=(const BigComplex& b) { return *this = *this + b; }
  BigComplex& operator*=(const BigComplex& b) { return *this = *this * b; }

  std::string to_string(int significant) const;

 private:
  BigReal re_;
  BigReal im_;
  BigReal error_;
};

/// |z| (rounded; no tag).
BigReal modulus(const BigComplex& z);
/// Principal argument in (-pi, pi].
BigReal argument(const BigComplex& z);
/// z^n for n >= 0 by binary powering with tag propagation.
BigComplex ipow(const BigComplex& z, unsigned long n);
/// Principal logarithm ln|z| + i Arg z. Requires the tag disc to exclude 0;
/// the tag assumes the disc does not straddle the branch cut.
BigComplex principal_log(const BigComplex& z);
BigComplex exp(const BigComplex& z);

}  // namespace regprod
