#pragma once

#include <compare>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ctxfam/fd.hpp"
#include "ctxfam/monoid.hpp"
#include "ctxfam/varset.hpp"

namespace ctxfam {

/// Values of an assignment listed in the order of its (sorted) domain.
using Tuple = std::vector<Value>;

/// A finite map from variables to values.
class Assignment {
 public:
  Assignment() = default;
  /// `values[i]` is the value of `vars[i]`; `vars` must already be a VarSet.
  Assignment(VarSet vars, Tuple values);
  static Assignment from_pairs(std::vector<std::pair<Variable, Value>> bindings);

  const VarSet& domain() const noexcept { return vars_; }
  const Tuple& values() const noexcept { return values_; }

  /// Throws DomainError if `var` is unbound.
  const Value& at(const Variable& var) const;

  /// Throws DomainError unless `sub` is a subset of the domain.
  Assignment restrict(const VarSet& sub) const;

  /// `x=0 y=1`
  std::string to_string() const;

  friend auto operator<=>(const Assignment&, const Assignment&) = default;
  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  VarSet vars_;
  Tuple values_;
};

/// Positions of the members of `sub` inside `super`. Throws DomainError
/// unless sub is a subset of super.
std::vector<std::size_t> positions_of(const VarSet& sub, const VarSet& super);

/// Picks the entries of `tuple` at `positions`.
Tuple project(const Tuple& tuple, const std::vector<std::size_t>& positions);

/// A finite K-relation stored sparsely: only assignments with a nonzero
/// annotation are kept, so the key set is the support. Rows are ordered
/// lexicographically by value tuple over the sorted variable list.
class KRelation {
 public:
  using Rows = std::map<Tuple, MonoidValue>;

  KRelation(VarSet vars, MonoidKind kind);

  /// Adds `weight` to the annotation of the row (missing rows count as 0).
  /// Zero weights are ignored. Throws on arity or kind mismatch.
  void add_row(Tuple values, const MonoidValue& weight);
  void add_row(const Assignment& row, const MonoidValue& weight);

  const VarSet& vars() const noexcept { return vars_; }
  MonoidKind kind() const noexcept { return kind_; }
  const Rows& rows() const noexcept { return rows_; }
  std::size_t size() const noexcept { return rows_.size(); }
  bool empty() const noexcept { return rows_.empty(); }

  /// Zero when the row is not in the support.
  MonoidValue annotation(const Tuple& values) const;
  MonoidValue total() const;

  friend bool operator==(const KRelation& a, const KRelation& b) {
    return a.kind_ == b.kind_ && a.vars_ == b.vars_ && a.rows_ == b.rows_;
  }

 private:
  VarSet vars_;
  MonoidKind kind_;
  Rows rows_;
};

/// Sums annotations over all extensions of each assignment on `sub`.
/// Throws DomainError unless sub is a subset of Vars(R).
KRelation marginalise(const KRelation& relation, const VarSet& sub);

std::set<Assignment> support(const KRelation& relation);

/// The support as a Boolean relation.
KRelation support_relation(const KRelation& relation);

/// The relation annotating each of `rows` (tuples over `vars`) with `c`.
/// Throws ContractError when c is zero.
KRelation scalar_fill(const MonoidValue& c, const VarSet& vars, const std::vector<Tuple>& rows);

/// Pointwise sum; requires equal variables and kind.
KRelation add_relations(const KRelation& r, const KRelation& s);

/// Equal marginals on the shared variables. Requires equal kind.
bool consistent(const KRelation& r, const KRelation& s);

/// Evaluates the dependency on the support. Throws DomainError if the
/// dependency mentions a variable outside the relation.
bool satisfies_fd(const KRelation& relation, const FD& fd);

/// Re-annotates every row in `kind` (see convert()).
KRelation convert(const KRelation& relation, MonoidKind kind);

}  // namespace ctxfam
