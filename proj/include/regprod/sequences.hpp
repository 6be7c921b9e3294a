#pragma once

// Positive, geometrically growing sequences a_n ~ C r^n together with a
// certified bound |a_n / (C r^n) - 1| <= K rho^n on the correction factor.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "regprod/bigreal.hpp"
#include "regprod/budget.hpp"

namespace regprod {

enum class LucasVariant { kU, kV };

/// X_n = P X_{n-1} - Q X_{n-2}, with U_0 = 0, U_1 = 1 or V_0 = 2, V_1 = P.
struct LucasParams {
  long p = 1;
  long q = -1;
  LucasVariant variant = LucasVariant::kU;

  long discriminant() const { return p * p - 4 * q; }
  bool operator==(const LucasParams&) const = default;
};

/// Exact term by index doubling. Throws Error(kInvalidSequence) if D <= 0,
/// n < 1, or the term is not strictly positive.
mpz_class lucas_term(const LucasParams& params, long n);

/// Both U_n and V_n by fast doubling; valid for any n >= 0 and any sign of the terms.
std::pair<mpz_class, mpz_class> lucas_uv(long p, long q, unsigned long n);

enum class SequenceKind { kLucasU, kLucasV, kGeometric, kTable };

class SequenceSpec {
 public:
  static SequenceSpec fibonacci();
  /// Lucas numbers 1, 3, 4, 7, 11, ... = V(1, -1).
  static SequenceSpec lucas_numbers();
  /// Rejects D <= 0, a dominated root pair, r <= 1, or a term <= 0 among the first 64.
  static SequenceSpec lucas(std::string name, LucasParams params);
  /// a_n = amplitude * growth_ratio^n; both given as decimal strings.
  static SequenceSpec geometric(std::string name, std::string growth_ratio, std::string amplitude);
  /// Explicit terms a_1..a_m (m >= 8) with user-certified asymptotics.
  /// Every term is checked against the declared bound; a violation throws
  /// Error(kBoundViolation) naming the 1-based term index.
  static SequenceSpec table(std::string name, std::vector<std::string> terms, std::string growth_ratio,
                            std::string amplitude, std::string correction_k, std::string correction_rho);

  const std::string& name() const { return name_; }
  SequenceKind kind() const;
  std::optional<LucasParams> lucas_params() const;
  /// U(1, -1), whatever the name.
  bool is_fibonacci() const;
  /// Number of available terms; empty for unbounded sequences.
  std::optional<long> max_index() const;

  BigReal growth_ratio(Precision p) const;
  BigReal amplitude(Precision p) const;
  /// L = ln r.
  BigReal log_growth(Precision p) const;
  /// B = ln C.
  BigReal log_amplitude(Precision p) const;
  BigReal correction_k(Precision p) const;
  BigReal correction_rho(Precision p) const;

  /// a_n rounded to precision p. Lucas terms are exact integers before rounding.
  BigReal term(long n, Precision p) const;
  /// ln(delta_n) for n = 1..count, using the closed form of delta_n where one
  /// exists (Lucas: 1 -/+ (beta/alpha)^n, geometric: 1).
  std::vector<BigReal> log_corrections(long count, Precision p) const;

  /// Streams a_1, a_2, ... at precision p without materializing exact integers.
  /// Lucas terms follow the recurrence in floating point (dominant solution,
  /// relative error grows at most linearly in n).
  class Cursor {
   public:
    Cursor(const SequenceSpec& spec, Precision p);
    /// Next term; throws Error(kPrecision) past the end of a table.
    const BigReal& next();
    long index() const { return index_; }

   private:
    const SequenceSpec* spec_;
    Precision precision_;
    long index_ = 0;
    BigReal prev_;
    BigReal current_;
    BigReal ratio_;
  };

 private:
  struct Lucas {
    LucasParams params;
  };
  struct Geometric {
    std::string growth_ratio;
    std::string amplitude;
  };
  struct Table {
    std::vector<std::string> terms;
    std::string growth_ratio;
    std::string amplitude;
    std::string correction_k;
    std::string correction_rho;
  };

  SequenceSpec(std::string name, std::variant<Lucas, Geometric, Table> data)
      : name_(std::move(name)), data_(std::move(data)) {}

  // beta / alpha for Lucas kinds.
  BigReal root_ratio(Precision p) const;
  BigReal dominant_root(Precision p) const;

  std::string name_;
  std::variant<Lucas, Geometric, Table> data_;
};

/// (alpha^n - beta^n) / sqrt(D) (or alpha^n + beta^n for V) to the budget's
/// absolute error; for Fibonacci this is (phi^n - (-phi)^-n) / sqrt 5.
/// Throws Error(kInvalidSequence) for non-Lucas specs.
TaggedReal binet_term(const SequenceSpec& spec, long n, const PrecisionBudget& budget);

/// delta_n = a_n / (C r^n), computed from the term itself and checked
/// against |delta_n - 1| <= K rho^n (Error(kBoundViolation) otherwise).
BigReal correction_factor(const SequenceSpec& spec, long n, const PrecisionBudget& budget);

}  // namespace regprod
