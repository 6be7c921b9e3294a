#include "regprod/sequences.hpp"

#include <cmath>
#include <stdexcept>

#include "regprod/error.hpp"

namespace regprod {

namespace {

// Precision used to validate user-supplied decimal data at construction.
const Precision kValidation = Precision::from_digits(60);

constexpr long kProbedPrefix = 64;

BigReal parse_field(const std::string& text, const char* field, Precision p) {
  try {
    return BigReal::parse(text, p);
  } catch (const std::invalid_argument&) {
    throw Error(ErrorKind::kInvalidSequence, std::string(field) + ": not a decimal number: '" + text + "'");
  }
}

void require_growth(const BigReal& r, const BigReal& c) {
  if (!(r > 1L)) throw Error(ErrorKind::kInvalidSequence, "growth ratio r must exceed 1 (r <= 1)");
  if (!(c > 0L)) throw Error(ErrorKind::kInvalidSequence, "amplitude C must be positive");
}

}  // namespace

std::pair<mpz_class, mpz_class> lucas_uv(long p, long q, unsigned long n) {
  const mpz_class big_p(p);
  const mpz_class big_q(q);
  const mpz_class d = big_p * big_p - 4 * big_q;
  mpz_class u = 0;
  mpz_class v = 2;
  mpz_class qk = 1;  // Q^k
  if (n == 0) return {u, v};

  int top = 63;
  while (((n >> top) & 1UL) == 0) --top;
  for (int bit = top; bit >= 0; --bit) {
    // k -> 2k
    mpz_class u2 = u * v;
    mpz_class v2 = v * v - 2 * qk;
    qk *= qk;
    u = std::move(u2);
    v = std::move(v2);
    if (((n >> bit) & 1UL) != 0) {
      // k -> k + 1; both numerators are even.
      mpz_class u1 = big_p * u + v;
      mpz_class v1 = d * u + big_p * v;
      mpz_divexact_ui(u1.get_mpz_t(), u1.get_mpz_t(), 2);
      mpz_divexact_ui(v1.get_mpz_t(), v1.get_mpz_t(), 2);
      u = std::move(u1);
      v = std::move(v1);
      qk *= big_q;
    }
  }
  return {u, v};
}

mpz_class lucas_term(const LucasParams& params, long n) {
  if (params.discriminant() <= 0) {
    throw Error(ErrorKind::kInvalidSequence, "Lucas parameters need D = P^2 - 4Q > 0");
  }
  if (n < 1) throw Error(ErrorKind::kDomain, "term index must be >= 1");
  auto [u, v] = lucas_uv(params.p, params.q, static_cast<unsigned long>(n));
  mpz_class term = params.variant == LucasVariant::kU ? u : v;
  if (term <= 0) {
    throw Error(ErrorKind::kInvalidSequence, "nonpositive term at index " + std::to_string(n));
  }
  return term;
}

SequenceSpec SequenceSpec::fibonacci() { return lucas("fibonacci", LucasParams{1, -1, LucasVariant::kU}); }

SequenceSpec SequenceSpec::lucas_numbers() { return lucas("lucas", LucasParams{1, -1, LucasVariant::kV}); }

SequenceSpec SequenceSpec::lucas(std::string name, LucasParams params) {
  if (params.discriminant() <= 0) {
    throw Error(ErrorKind::kInvalidSequence, "Lucas parameters need D = P^2 - 4Q > 0");
  }
  // With D > 0 the roots are real; alpha > |beta| exactly when P > 0.
  if (params.p <= 0) {
    throw Error(ErrorKind::kInvalidSequence, "Lucas parameters need P > 0 (dominant positive root)");
  }
  SequenceSpec spec(std::move(name), Lucas{params});
  if (!(spec.dominant_root(kValidation) > 1L)) {
    throw Error(ErrorKind::kInvalidSequence, "dominant root must exceed 1 (r <= 1)");
  }
  for (long n = 1; n <= kProbedPrefix; ++n) lucas_term(params, n);
  return spec;
}

SequenceSpec SequenceSpec::geometric(std::string name, std::string growth_ratio, std::string amplitude) {
  require_growth(parse_field(growth_ratio, "growth_ratio", kValidation),
                 parse_field(amplitude, "amplitude", kValidation));
  return SequenceSpec(std::move(name), Geometric{std::move(growth_ratio), std::move(amplitude)});
}

SequenceSpec SequenceSpec::table(std::string name, std::vector<std::string> terms, std::string growth_ratio,
                                 std::string amplitude, std::string correction_k, std::string correction_rho) {
  const BigReal r = parse_field(growth_ratio, "growth_ratio", kValidation);
  const BigReal c = parse_field(amplitude, "amplitude", kValidation);
  const BigReal k = parse_field(correction_k, "correction_K", kValidation);
  const BigReal rho = parse_field(correction_rho, "correction_rho", kValidation);
  require_growth(r, c);
  if (!(k > 0L)) throw Error(ErrorKind::kInvalidSequence, "correction_K must be positive");
  if (!(rho > 0L && rho < 1L)) throw Error(ErrorKind::kInvalidSequence, "correction_rho must lie in (0, 1)");
  if (terms.size() < 8) throw Error(ErrorKind::kInvalidSequence, "table needs at least 8 terms");

  // Slack of a few ulps at validation precision; decimal data is otherwise taken at face value.
  const BigReal slack = k.epsilon() * 64;
  BigReal leading = c;
  BigReal rho_n = BigReal(1L, kValidation);
  for (size_t i = 0; i < terms.size(); ++i) {
    const long n = static_cast<long>(i) + 1;
    const BigReal a = parse_field(terms[i], "terms", kValidation);
    if (!(a > 0L)) throw Error(ErrorKind::kInvalidSequence, "nonpositive term at index " + std::to_string(n));
    leading *= r;
    rho_n *= rho;
    const BigReal deviation = abs(a / leading - 1L);
    if (deviation > k * rho_n * (1L + slack)) {
      throw Error(ErrorKind::kBoundViolation, "term " + std::to_string(n) + " violates |a_n/(C r^n) - 1| <= K rho^n");
    }
  }
  return SequenceSpec(std::move(name), Table{std::move(terms), std::move(growth_ratio), std::move(amplitude),
                                             std::move(correction_k), std::move(correction_rho)});
}

SequenceKind SequenceSpec::kind() const {
  if (const auto* lucas = std::get_if<Lucas>(&data_)) {
    return lucas->params.variant == LucasVariant::kU ? SequenceKind::kLucasU : SequenceKind::kLucasV;
  }
  if (std::holds_alternative<Geometric>(data_)) return SequenceKind::kGeometric;
  return SequenceKind::kTable;
}

std::optional<LucasParams> SequenceSpec::lucas_params() const {
  if (const auto* lucas = std::get_if<Lucas>(&data_)) return lucas->params;
  return std::nullopt;
}

bool SequenceSpec::is_fibonacci() const {
  const auto params = lucas_params();
  return params && *params == LucasParams{1, -1, LucasVariant::kU};
}

std::optional<long> SequenceSpec::max_index() const {
  if (const auto* table = std::get_if<Table>(&data_)) return static_cast<long>(table->terms.size());
  return std::nullopt;
}

BigReal SequenceSpec::dominant_root(Precision p) const {
  const LucasParams params = std::get<Lucas>(data_).params;
  return (sqrt(BigReal(params.discriminant(), p)) + params.p) / 2;
}

BigReal SequenceSpec::root_ratio(Precision p) const {
  const LucasParams params = std::get<Lucas>(data_).params;
  // beta = 2Q / (P + sqrt D) avoids cancellation.
  const BigReal alpha = dominant_root(p);
  const BigReal beta = BigReal(2 * params.q, p) / (sqrt(BigReal(params.discriminant(), p)) + params.p);
  return beta / alpha;
}

BigReal SequenceSpec::growth_ratio(Precision p) const {
  return std::visit(
      [&](const auto& d) -> BigReal {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Lucas>) {
          return dominant_root(p);
        } else {
          return BigReal::parse(d.growth_ratio, p);
        }
      },
      data_);
}

BigReal SequenceSpec::amplitude(Precision p) const {
  return std::visit(
      [&](const auto& d) -> BigReal {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Lucas>) {
          if (d.params.variant == LucasVariant::kV) return BigReal(1L, p);
          return 1L / sqrt(BigReal(d.params.discriminant(), p));
        } else {
          return BigReal::parse(d.amplitude, p);
        }
      },
      data_);
}

BigReal SequenceSpec::log_growth(Precision p) const { return log(growth_ratio(p)); }

BigReal SequenceSpec::log_amplitude(Precision p) const {
  if (const auto* lucas = std::get_if<Lucas>(&data_)) {
    if (lucas->params.variant == LucasVariant::kV) return BigReal(p);
    return -log(BigReal(lucas->params.discriminant(), p)) / 2;
  }
  return log(amplitude(p));
}

BigReal SequenceSpec::correction_k(Precision p) const {
  if (const auto* table = std::get_if<Table>(&data_)) return BigReal::parse(table->correction_k, p);
  return BigReal(1L, p);
}

BigReal SequenceSpec::correction_rho(Precision p) const {
  if (const auto* table = std::get_if<Table>(&data_)) return BigReal::parse(table->correction_rho, p);
  if (std::holds_alternative<Lucas>(data_)) {
    BigReal rho = abs(root_ratio(p));
    // Q = 0 makes the correction vanish; any rho in (0, 1) certifies it.
    if (rho.is_zero()) return BigReal(0.5, p);
    return rho;
  }
  return BigReal(0.5, p);  // geometric: delta_n = 1 exactly
}

BigReal SequenceSpec::term(long n, Precision p) const {
  if (n < 1) throw Error(ErrorKind::kDomain, "term index must be >= 1");
  return std::visit(
      [&](const auto& d) -> BigReal {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Lucas>) {
          return BigReal(lucas_term(d.params, n), p);
        } else if constexpr (std::is_same_v<T, Geometric>) {
          return BigReal::parse(d.amplitude, p) * pow(BigReal::parse(d.growth_ratio, p), n);
        } else {
          if (n > static_cast<long>(d.terms.size())) {
            throw Error(ErrorKind::kPrecision, "table '" + name_ + "' has only " + std::to_string(d.terms.size()) +
                                                   " terms; index " + std::to_string(n) + " requested");
          }
          return BigReal::parse(d.terms[static_cast<size_t>(n - 1)], p);
        }
      },
      data_);
}

std::vector<BigReal> SequenceSpec::log_corrections(long count, Precision p) const {
  std::vector<BigReal> out;
  out.reserve(static_cast<size_t>(std::max(0L, count)));
  if (const auto* lucas = std::get_if<Lucas>(&data_)) {
    const BigReal ratio = root_ratio(p);
    BigReal power = ratio;
    const bool minus = lucas->params.variant == LucasVariant::kU;
    for (long n = 1; n <= count; ++n) {
      out.push_back(log1p(minus ? -power : power));
      power *= ratio;
    }
  } else if (std::holds_alternative<Geometric>(data_)) {
    out.assign(static_cast<size_t>(std::max(0L, count)), BigReal(p));
  } else {
    const BigReal r = growth_ratio(p);
    BigReal leading = amplitude(p);
    for (long n = 1; n <= count; ++n) {
      leading *= r;
      out.push_back(log(term(n, p) / leading));
    }
  }
  return out;
}

SequenceSpec::Cursor::Cursor(const SequenceSpec& spec, Precision p)
    : spec_(&spec), precision_(p), prev_(p), current_(p), ratio_(p) {
  if (const auto* lucas = std::get_if<Lucas>(&spec.data_)) {
    const bool u = lucas->params.variant == LucasVariant::kU;
    prev_ = BigReal(u ? 0L : 2L, p);
    current_ = BigReal(u ? 1L : lucas->params.p, p);
  } else if (std::holds_alternative<Geometric>(spec.data_)) {
    ratio_ = spec.growth_ratio(p);
    current_ = spec.amplitude(p);
  }
}

const BigReal& SequenceSpec::Cursor::next() {
  ++index_;
  if (const auto* lucas = std::get_if<Lucas>(&spec_->data_)) {
    if (index_ == 1) return current_;
    BigReal following = current_ * lucas->params.p - prev_ * lucas->params.q;
    prev_ = std::move(current_);
    current_ = std::move(following);
  } else if (std::holds_alternative<Geometric>(spec_->data_)) {
    current_ *= ratio_;
  } else {
    current_ = spec_->term(index_, precision_);
  }
  return current_;
}

TaggedReal binet_term(const SequenceSpec& spec, long n, const PrecisionBudget& budget) {
  const auto params = spec.lucas_params();
  if (!params) throw Error(ErrorKind::kInvalidSequence, "Binet form requires a Lucas-family sequence");
  if (n < 1) throw Error(ErrorKind::kDomain, "term index must be >= 1");

  // Magnitude alpha^n costs n log10(alpha) extra digits for a fixed absolute error.
  const double alpha = (static_cast<double>(params->p) + std::sqrt(static_cast<double>(params->discriminant()))) / 2;
  const int extra = static_cast<int>(std::ceil(static_cast<double>(n) * std::log10(alpha))) + 2;
  const Precision p = Precision::from_digits(budget.working_digits() + extra);

  const BigReal sqrt_d = sqrt(BigReal(params->discriminant(), p));
  const BigReal a = (sqrt_d + params->p) / 2;
  const BigReal b = BigReal(2 * params->q, p) / (sqrt_d + params->p);
  BigReal value = params->variant == LucasVariant::kU ? (pow(a, n) - pow(b, n)) / sqrt_d : pow(a, n) + pow(b, n);
  BigReal bound = rounding_bound(16, value);
  return TaggedReal{value.at(budget.working()), bound.at(budget.working()), 1};
}

BigReal correction_factor(const SequenceSpec& spec, long n, const PrecisionBudget& budget) {
  const Precision p = budget.working();
  const BigReal leading = spec.amplitude(p) * pow(spec.growth_ratio(p), n);
  const BigReal delta = spec.term(n, p) / leading;
  if (!(delta > 0L)) throw Error(ErrorKind::kBoundViolation, "correction factor is not positive");
  const BigReal allowed = spec.correction_k(p) * pow(spec.correction_rho(p), n);
  if (abs(delta - 1L) > allowed + rounding_bound(8, delta)) {
    throw Error(ErrorKind::kBoundViolation,
                "correction bound violated at index " + std::to_string(n) + " for '" + spec.name() + "'");
  }
  return delta;
}

}  // namespace regprod
