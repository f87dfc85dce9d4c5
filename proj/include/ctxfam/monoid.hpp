#pragma once

#include <gmpxx.h>

#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace ctxfam {

/// Annotation domains: Booleans under disjunction, naturals and
/// non-negative rationals under addition.
enum class MonoidKind { Boolean, Natural, Rational };

/// a + b = 0 forces a = b = 0. Holds for every supported kind.
constexpr bool is_positive(MonoidKind) noexcept { return true; }

/// a + b = a + c forces b = c. Fails for the Booleans (1 + 1 = 1 + 0).
constexpr bool is_cancellative(MonoidKind kind) noexcept {
  return kind != MonoidKind::Boolean;
}

/// "B", "N" or "Q".
std::string_view kind_name(MonoidKind kind) noexcept;

std::optional<MonoidKind> parse_kind(std::string_view text) noexcept;

/// An exact element of one of the supported monoids.
///
/// All payloads are held as a reduced GMP rational; the kind restricts which
/// values are admissible (0/1 for B, integers for N) and is checked on every
/// binary operation. Values are immutable.
class MonoidValue {
 public:
  static MonoidValue zero(MonoidKind kind);
  static MonoidValue one(MonoidKind kind);
  static MonoidValue boolean(bool value);
  static MonoidValue natural(const mpz_class& value);
  static MonoidValue rational(const mpq_class& value);

  /// Parses `0`/`1` for B, decimal digits for N, `p/q` or digits for Q.
  /// Throws ContractError on malformed or out-of-kind text.
  static MonoidValue parse(std::string_view text, MonoidKind kind);

  MonoidKind kind() const noexcept { return kind_; }
  bool is_zero() const { return sgn(value_) == 0; }
  const mpq_class& as_rational() const noexcept { return value_; }

  std::string to_string() const;

  friend bool operator==(const MonoidValue& a, const MonoidValue& b) {
    return a.kind_ == b.kind_ && a.value_ == b.value_;
  }

 private:
  MonoidValue(MonoidKind kind, mpq_class value);

  MonoidKind kind_;
  mpq_class value_;
};

MonoidValue add(const MonoidValue& a, const MonoidValue& b);

inline MonoidValue operator+(const MonoidValue& a, const MonoidValue& b) { return add(a, b); }

/// a <= b iff a + c = b for some c.
bool natural_leq(const MonoidValue& a, const MonoidValue& b);

/// Fold of add; the empty sum is zero of `kind`.
MonoidValue sum(std::span<const MonoidValue> values, MonoidKind kind);

/// The unique c with b + c = a, for cancellative kinds and b <= a.
MonoidValue subtract(const MonoidValue& a, const MonoidValue& b);

/// Re-interprets `value` in `kind`; throws ContractError if it is not
/// representable there (e.g. 1/2 as a natural).
MonoidValue convert(const MonoidValue& value, MonoidKind kind);

}  // namespace ctxfam
