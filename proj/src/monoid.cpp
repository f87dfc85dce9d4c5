#include "ctxfam/monoid.hpp"

#include <cctype>

#include "ctxfam/errors.hpp"

namespace ctxfam {

namespace {

void require_same_kind(const MonoidValue& a, const MonoidValue& b, const char* op) {
  if (a.kind() != b.kind()) {
    throw ContractError(std::string(op) + ": kind mismatch (" + std::string(kind_name(a.kind())) +
                        " vs " + std::string(kind_name(b.kind())) + ")");
  }
}

bool all_digits(std::string_view text) {
  if (text.empty()) return false;
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

std::string_view kind_name(MonoidKind kind) noexcept {
  switch (kind) {
    case MonoidKind::Boolean: return "B";
    case MonoidKind::Natural: return "N";
    case MonoidKind::Rational: return "Q";
  }
  return "?";
}

std::optional<MonoidKind> parse_kind(std::string_view text) noexcept {
  if (text == "B") return MonoidKind::Boolean;
  if (text == "N") return MonoidKind::Natural;
  if (text == "Q") return MonoidKind::Rational;
  return std::nullopt;
}

MonoidValue::MonoidValue(MonoidKind kind, mpq_class value) : kind_(kind), value_(std::move(value)) {
  value_.canonicalize();
}

MonoidValue MonoidValue::zero(MonoidKind kind) { return MonoidValue(kind, mpq_class(0)); }

MonoidValue MonoidValue::one(MonoidKind kind) { return MonoidValue(kind, mpq_class(1)); }

MonoidValue MonoidValue::boolean(bool value) {
  return MonoidValue(MonoidKind::Boolean, mpq_class(value ? 1 : 0));
}

MonoidValue MonoidValue::natural(const mpz_class& value) {
  if (sgn(value) < 0) throw ContractError("natural value must be non-negative");
  return MonoidValue(MonoidKind::Natural, mpq_class(value));
}

MonoidValue MonoidValue::rational(const mpq_class& value) {
  mpq_class v(value);
  v.canonicalize();
  if (sgn(v) < 0) throw ContractError("rational value must be non-negative");
  return MonoidValue(MonoidKind::Rational, v);
}

MonoidValue MonoidValue::parse(std::string_view text, MonoidKind kind) {
  const std::string s(text);
  switch (kind) {
    case MonoidKind::Boolean:
      if (s == "0" || s == "1") return boolean(s == "1");
      throw ContractError("expected 0 or 1 for monoid B, got '" + s + "'");
    case MonoidKind::Natural:
      if (!all_digits(text)) throw ContractError("expected a natural number, got '" + s + "'");
      return natural(mpz_class(s));
    case MonoidKind::Rational: {
      const auto slash = text.find('/');
      if (slash == std::string_view::npos) {
        if (!all_digits(text)) throw ContractError("expected p/q or digits, got '" + s + "'");
        return rational(mpq_class(mpz_class(s)));
      }
      const auto num = text.substr(0, slash);
      const auto den = text.substr(slash + 1);
      if (!all_digits(num) || !all_digits(den)) {
        throw ContractError("expected p/q or digits, got '" + s + "'");
      }
      const mpz_class d(std::string{den});
      if (sgn(d) == 0) throw ContractError("zero denominator in '" + s + "'");
      return rational(mpq_class(mpz_class(std::string{num}), d));
    }
  }
  throw ContractError("unknown monoid kind");
}

std::string MonoidValue::to_string() const { return value_.get_str(); }

MonoidValue add(const MonoidValue& a, const MonoidValue& b) {
  require_same_kind(a, b, "add");
  if (a.kind() == MonoidKind::Boolean) return MonoidValue::boolean(!a.is_zero() || !b.is_zero());
  if (a.kind() == MonoidKind::Natural) {
    return MonoidValue::natural(a.as_rational().get_num() + b.as_rational().get_num());
  }
  return MonoidValue::rational(a.as_rational() + b.as_rational());
}

bool natural_leq(const MonoidValue& a, const MonoidValue& b) {
  require_same_kind(a, b, "natural_leq");
  if (a.kind() == MonoidKind::Boolean) return a.is_zero() || !b.is_zero();
  return a.as_rational() <= b.as_rational();
}

MonoidValue sum(std::span<const MonoidValue> values, MonoidKind kind) {
  MonoidValue total = MonoidValue::zero(kind);
  for (const auto& v : values) total = add(total, v);
  return total;
}

MonoidValue subtract(const MonoidValue& a, const MonoidValue& b) {
  require_same_kind(a, b, "subtract");
  if (!is_cancellative(a.kind())) throw ContractError("subtract: monoid B is not cancellative");
  if (a.as_rational() < b.as_rational()) throw ContractError("subtract: result would be negative");
  const mpq_class diff = a.as_rational() - b.as_rational();
  if (a.kind() == MonoidKind::Natural) return MonoidValue::natural(diff.get_num());
  return MonoidValue::rational(diff);
}

MonoidValue convert(const MonoidValue& value, MonoidKind kind) {
  if (value.kind() == kind) return value;
  switch (kind) {
    case MonoidKind::Boolean: return MonoidValue::boolean(!value.is_zero());
    case MonoidKind::Natural:
      if (value.as_rational().get_den() != 1) {
        throw ContractError("value " + value.to_string() + " is not a natural number");
      }
      return MonoidValue::natural(value.as_rational().get_num());
    case MonoidKind::Rational: return MonoidValue::rational(value.as_rational());
  }
  throw ContractError("unknown monoid kind");
}

}  // namespace ctxfam
