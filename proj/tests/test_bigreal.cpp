#include "regprod/bigcomplex.hpp"
#include "regprod/bigreal.hpp"
#include "regprod/budget.hpp"

#include <random>

#include "test_support.hpp"

using namespace regprod;
using regprod::testing::digits;
using regprod::testing::num;

TEST_CASE("precision carries through arithmetic") {
  const BigReal a(1L, digits(50));
  const BigReal b(3L, digits(20));
  CHECK((a / b).precision() == digits(50));
  CHECK((b / 3).precision() == digits(20));
  CHECK(digits(50).digits() >= 50);
}

TEST_CASE("decimal formatting has exactly the requested significant digits") {
  const BigReal third = BigReal(1L, digits(40)) / 3;
  CHECK(third.to_decimal(10) == "0.3333333333");
  CHECK((third * 3).to_decimal(6) == "1.00000");
  CHECK(BigReal(2L, digits(30)).to_decimal(1) == "2");
  CHECK(num("2.5066282746310005").to_decimal(10) == "2.506628275");
  CHECK(num("0.94387431268169349664").to_decimal(10) == "0.9438743127");
  CHECK(num("123456.789").to_decimal(4) == "1.235e5");
  CHECK(num("-0.000123456").to_decimal(3) == "-0.000123");
  CHECK(num("0.00000123456").to_decimal(3) == "0.00000123");
  CHECK(num("0.000000123456").to_decimal(3) == "1.23e-7");
  CHECK(num("9.9996").to_decimal(4) == "10.00");
  CHECK(BigReal(digits(20)).to_decimal(3) == "0.00");
}

TEST_CASE("bound strings round up") {
  CHECK(num("1.21e-22").to_bound_string() == "1.3e-22");
  CHECK(num("1.2e-22").to_bound_string() == "1.2e-22");
  CHECK(BigReal(digits(20)).to_bound_string() == "0");
}

TEST_CASE("digit counts stay exact over random magnitudes") {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> mantissa(1.0, 10.0);
  std::uniform_int_distribution<int> exponent(-5, 8);
  std::uniform_int_distribution<int> count(1, 40);
  for (int trial = 0; trial < 500; ++trial) {
    const BigReal x = BigReal(mantissa(rng), digits(60)) * pow10(exponent(rng), digits(60));
    const int d = count(rng);
    const std::string s = x.to_decimal(d);
    int significant = 0;
    bool leading = true;
    for (char ch : s.substr(0, s.find('e'))) {
      if (ch < '0' || ch > '9') continue;
      if (leading && ch == '0') continue;
      leading = false;
      ++significant;
    }
    INFO(s);
    CHECK(significant == d);
    // Parsing the string back lands within half a unit in the last place.
    const BigReal back = BigReal::parse(s, digits(60));
    CHECK(abs(back - x) <= abs(x) * pow10(1 - d, digits(60)));
  }
}

TEST_CASE("parse accepts plain decimals only") {
  CHECK(BigReal::parse("1e3", digits(20)) == 1000L);
  CHECK(BigReal::parse("-.5", digits(20)) == BigReal(-0.5, digits(20)));
  CHECK_THROWS_AS(BigReal::parse("0x10", digits(20)), std::invalid_argument);
  CHECK_THROWS_AS(BigReal::parse("1,5", digits(20)), std::invalid_argument);
  CHECK_THROWS_AS(BigReal::parse("", digits(20)), std::invalid_argument);
  CHECK_THROWS_AS(BigReal::parse("inf", digits(20)), std::invalid_argument);
}

TEST_CASE("budget guard digits") {
  CHECK(PrecisionBudget{12}.working_digits() == 22);
  CHECK(PrecisionBudget{100}.working_digits() == 120);
  CHECK(PrecisionBudget{1000}.working_digits() == 1200);
  const PrecisionBudget b{30};
  CHECK(b.truncation_target() < b.truncation_limit());
}

TEST_CASE("complex tags cover perturbed inputs") {
  const Precision p = digits(40);
  const BigComplex z(BigReal(0.3, p), BigReal(-0.7, p), BigReal(1e-20, p));
  const BigComplex w(BigReal(0.3, p) + BigReal(1e-20, p), BigReal(-0.7, p));
  const BigComplex zp = ipow(z, 7);
  const BigComplex wp = ipow(w, 7);
  CHECK(modulus(zp - wp) - wp.error() <= zp.error());

  const BigComplex lz = exp(principal_log(z));
  CHECK(modulus(lz - z) <= lz.error() + z.error());
}

TEST_CASE("principal argument range") {
  const Precision p = digits(30);
  const BigComplex minus_one = BigComplex::real(BigReal(-1L, p));
  regprod::testing::check_close(argument(minus_one), pi(p), pow10(-28, p), "Arg(-1)");
  const BigComplex down(BigReal(p), BigReal(-2L, p));
  regprod::testing::check_close(argument(down), -pi(p) / 2, pow10(-28, p), "Arg(-2i)");
}
