#include "regprod/bigcomplex.hpp"

#include "regprod/error.hpp"

namespace regprod {

namespace {

BigReal hypot_of(const BigReal& a, const BigReal& b) {
  BigReal out(max(a.precision(), b.precision()));
  mpfr_hypot(out.get(), a.get(), b.get(), MPFR_RNDN);
  return out;
}

// Rounding contribution of one complex operation producing magnitude `m`.
BigReal op_rounding(const BigReal& m) { return m.epsilon() * m * 4; }

}  // namespace

BigComplex::BigComplex(BigReal re, BigReal im)
    : re_(std::move(re)), im_(std::move(im)), error_(max(re_.precision(), im_.precision())) {}

BigComplex::BigComplex(BigReal re, BigReal im, BigReal error)
    : re_(std::move(re)), im_(std::move(im)), error_(std::move(error)) {}

BigComplex BigComplex::widened(const BigReal& extra) const { return BigComplex(re_, im_, error_ + abs(extra)); }

BigComplex operator+(const BigComplex& a, const BigComplex& b) {
  BigComplex out(a.re_ + b.re_, a.im_ + b.im_);
  out.error_ = a.error_ + b.error_ + op_rounding(modulus(out));
  return out;
}

BigComplex operator-(const BigComplex& a, const BigComplex& b) {
  BigComplex out(a.re_ - b.re_, a.im_ - b.im_);
  out.error_ = a.error_ + b.error_ + op_rounding(modulus(out));
  return out;
}

BigComplex operator*(const BigComplex& a, const BigComplex& b) {
  BigComplex out(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
  const BigReal ma = modulus(a);
  const BigReal mb = modulus(b);
  out.error_ = ma * b.error_ + mb * a.error_ + a.error_ * b.error_ + op_rounding(ma * mb);
  return out;
}

BigComplex operator*(const BigComplex& a, const BigReal& b) {
  BigComplex out(a.re_ * b, a.im_ * b);
  out.error_ = a.error_ * abs(b) + op_rounding(modulus(out));
  return out;
}

BigComplex operator*(const BigComplex& a, long b) {
  BigComplex out(a.re_ * b, a.im_ * b);
  out.error_ = a.error_ * (b < 0 ? -b : b) + op_rounding(modulus(out));
  return out;
}

BigComplex operator/(const BigComplex& a, const BigComplex& b) {
  const BigReal denom = b.re_ * b.re_ + b.im_ * b.im_;
  if (denom.is_zero()) throw Error(ErrorKind::kDomain, "complex division by zero");
  BigComplex out((a.re_ * b.re_ + a.im_ * b.im_) / denom, (a.im_ * b.re_ - a.re_ * b.im_) / denom);
  const BigReal mb = sqrt(denom);
  if (!(b.error_ < mb)) throw Error(ErrorKind::kDomain, "complex division: divisor tag disc contains zero");
  const BigReal mq = modulus(out);
  out.error_ = (a.error_ + mq * b.error_) / (mb - b.error_) + op_rounding(mq);
  return out;
}

std::string BigComplex::to_string(int significant) const {
  std::string im = im_.to_decimal(significant);
  if (!im.empty() && im.front() == '-') return re_.to_decimal(significant) + " - " + im.substr(1) + "i";
  return re_.to_decimal(significant) + " + " + im + "i";
}

BigReal modulus(const BigComplex& z) { return hypot_of(z.re(), z.im()); }

BigReal argument(const BigComplex& z) { return atan2(z.im(), z.re()); }

BigComplex ipow(const BigComplex& z, unsigned long n) {
  BigComplex result = BigComplex::real(BigReal(1L, z.precision()));
  BigComplex base = z;
  while (n > 0) {
    if ((n & 1UL) != 0) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

BigComplex principal_log(const BigComplex& z) {
  const BigReal m = modulus(z);
  if (m.is_zero()) throw Error(ErrorKind::kDomain, "logarithm of zero");
  if (!(z.error() < m)) throw Error(ErrorKind::kDomain, "logarithm: tag disc contains zero");
  const BigReal rel = z.error() / m;
  BigComplex out(log(m), argument(z));
  const BigReal magnitude = abs(out.re()) + 4;  // |Arg| <= pi < 4
  out = out.widened(rel / (1 - rel) + op_rounding(magnitude));
  return out;
}

BigComplex exp(const BigComplex& z) {
  const BigReal scale = exp(z.re());
  BigComplex out(scale * cos(z.im()), scale * sin(z.im()));
  return out.widened(scale * expm1(z.error()) + op_rounding(scale) * 2);
}

}  // namespace regprod
