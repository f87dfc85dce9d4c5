#include "ctxfam/relation.hpp"

#include <algorithm>

#include "ctxfam/errors.hpp"

namespace ctxfam {

Assignment::Assignment(VarSet vars, Tuple values) : vars_(std::move(vars)), values_(std::move(values)) {
  if (vars_.size() != values_.size()) throw ContractError("assignment arity mismatch");
  if (!std::is_sorted(vars_.begin(), vars_.end()) ||
      std::adjacent_find(vars_.begin(), vars_.end()) != vars_.end()) {
    throw ContractError("assignment domain must be a sorted variable set");
  }
}

Assignment Assignment::from_pairs(std::vector<std::pair<Variable, Value>> bindings) {
  std::sort(bindings.begin(), bindings.end());
  VarSet vars;
  Tuple values;
  for (auto& [var, val] : bindings) {
    if (!vars.empty() && vars.back() == var) throw ContractError("variable '" + var + "' bound twice");
    vars.push_back(var);
    values.push_back(val);
  }
  return Assignment(std::move(vars), std::move(values));
}

const Value& Assignment::at(const Variable& var) const {
  const auto it = std::lower_bound(vars_.begin(), vars_.end(), var);
  if (it == vars_.end() || *it != var) throw DomainError("variable '" + var + "' is not bound");
  return values_[static_cast<std::size_t>(it - vars_.begin())];
}

Assignment Assignment::restrict(const VarSet& sub) const {
  return Assignment(sub, project(values_, positions_of(sub, vars_)));
}

std::string Assignment::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (i) out += ' ';
    out += vars_[i] + "=" + values_[i];
  }
  return out;
}

std::vector<std::size_t> positions_of(const VarSet& sub, const VarSet& super) {
  std::vector<std::size_t> out;
  out.reserve(sub.size());
  for (const auto& v : sub) {
    const auto it = std::lower_bound(super.begin(), super.end(), v);
    if (it == super.end() || *it != v) {
      throw DomainError("variable '" + v + "' is not in {" + join(super, ",") + "}");
    }
    out.push_back(static_cast<std::size_t>(it - super.begin()));
  }
  return out;
}

Tuple project(const Tuple& tuple, const std::vector<std::size_t>& positions) {
  Tuple out;
  out.reserve(positions.size());
  for (auto p : positions) out.push_back(tuple[p]);
  return out;
}

KRelation::KRelation(VarSet vars, MonoidKind kind) : vars_(std::move(vars)), kind_(kind) {
  if (!std::is_sorted(vars_.begin(), vars_.end()) ||
      std::adjacent_find(vars_.begin(), vars_.end()) != vars_.end()) {
    throw ContractError("relation variables must form a sorted set");
  }
}

void KRelation::add_row(Tuple values, const MonoidValue& weight) {
  if (values.size() != vars_.size()) {
    throw ContractError("row arity " + std::to_string(values.size()) + " does not match {" +
                        join(vars_, ",") + "}");
  }
  if (weight.kind() != kind_) throw ContractError("row weight kind mismatch");
  if (weight.is_zero()) return;
  auto it = rows_.find(values);
  if (it == rows_.end()) {
    rows_.emplace(std::move(values), weight);
  } else {
    it->second = add(it->second, weight);
  }
}

void KRelation::add_row(const Assignment& row, const MonoidValue& weight) {
  if (row.domain() != vars_) throw ContractError("assignment domain does not match relation");
  add_row(row.values(), weight);
}

MonoidValue KRelation::annotation(const Tuple& values) const {
  const auto it = rows_.find(values);
  return it == rows_.end() ? MonoidValue::zero(kind_) : it->second;
}

MonoidValue KRelation::total() const {
  MonoidValue t = MonoidValue::zero(kind_);
  for (const auto& [row, w] : rows_) t = add(t, w);
  return t;
}

KRelation marginalise(const KRelation& relation, const VarSet& sub) {
  const auto pos = positions_of(sub, relation.vars());
  KRelation out(sub, relation.kind());
  for (const auto& [row, w] : relation.rows()) out.add_row(project(row, pos), w);
  return out;
}

std::set<Assignment> support(const KRelation& relation) {
  std::set<Assignment> out;
  for (const auto& [row, w] : relation.rows()) out.emplace(relation.vars(), row);
  return out;
}

KRelation support_relation(const KRelation& relation) { return convert(relation, MonoidKind::Boolean); }

KRelation scalar_fill(const MonoidValue& c, const VarSet& vars, const std::vector<Tuple>& rows) {
  if (c.is_zero()) throw ContractError("scalar_fill: zero annotation would leave the support empty");
  KRelation out(vars, c.kind());
  for (const auto& row : rows) {
    if (row.size() != vars.size()) throw ContractError("scalar_fill: row arity mismatch");
    if (out.rows().count(row)) continue;
    out.add_row(row, c);
  }
  return out;
}

KRelation add_relations(const KRelation& r, const KRelation& s) {
  if (r.vars() != s.vars()) throw DomainError("add_relations: variable sets differ");
  if (r.kind() != s.kind()) throw ContractError("add_relations: kind mismatch");
  KRelation out = r;
  for (const auto& [row, w] : s.rows()) out.add_row(row, w);
  return out;
}

bool consistent(const KRelation& r, const KRelation& s) {
  if (r.kind() != s.kind()) throw ContractError("consistent: kind mismatch");
  const auto shared = intersect(r.vars(), s.vars());
  return marginalise(r, shared) == marginalise(s, shared);
}

bool satisfies_fd(const KRelation& relation, const FD& fd) {
  const auto lhs = positions_of(fd.lhs, relation.vars());
  const auto rhs = positions_of(fd.rhs, relation.vars());
  std::map<Tuple, Tuple> seen;
  for (const auto& [row, w] : relation.rows()) {
    auto key = project(row, lhs);
    auto image = project(row, rhs);
    const auto [it, inserted] = seen.emplace(std::move(key), image);
    if (!inserted && it->second != image) return false;
  }
  return true;
}

KRelation convert(const KRelation& relation, MonoidKind kind) {
  KRelation out(relation.vars(), kind);
  for (const auto& [row, w] : relation.rows()) out.add_row(row, convert(w, kind));
  return out;
}

}  // namespace ctxfam
