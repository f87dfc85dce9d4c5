#pragma once

#include <compare>
#include <string>

#include "ctxfam/varset.hpp"

namespace ctxfam {

/// A functional dependency lhs -> rhs. A dependency with lhs == rhs is a
/// context dependency (CD): it only asserts that lhs is a context.
struct FD {
  VarSet lhs;
  VarSet rhs;

  /// Both sides are normalised with make_varset; both must be nonempty.
  static FD make(VarSet lhs, VarSet rhs);
  static FD unary(const Variable& x, const Variable& y);
  static FD cd(VarSet vars);

  bool is_unary() const { return lhs.size() == 1 && rhs.size() == 1; }
  bool is_cd() const { return lhs == rhs; }
  bool is_binary_cd() const { return is_cd() && lhs.size() == 2; }
  VarSet vars() const;

  /// `x y -> z`
  std::string to_string() const;

  friend auto operator<=>(const FD&, const FD&) = default;
  friend bool operator==(const FD&, const FD&) = default;
};

}  // namespace ctxfam
