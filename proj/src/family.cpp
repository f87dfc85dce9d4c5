#include "ctxfam/family.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "ctxfam/errors.hpp"
#include "ctxfam/lp.hpp"

namespace ctxfam {

ContextSet::ContextSet(std::vector<VarSet> maximal) : maximal_(std::move(maximal)) {
  for (auto& c : maximal_) c = make_varset(std::move(c));
  for (std::size_t i = 0; i < maximal_.size(); ++i) {
    for (std::size_t j = 0; j < maximal_.size(); ++j) {
      if (i != j && is_subset(maximal_[i], maximal_[j])) {
        throw ContractError("context {" + join(maximal_[i], ",") + "} is not maximal (contained in {" +
                            join(maximal_[j], ",") + "})");
      }
    }
  }
}

ContextSet ContextSet::from_any(std::vector<VarSet> contexts) {
  for (auto& c : contexts) c = make_varset(std::move(c));
  std::vector<VarSet> kept;
  for (std::size_t i = 0; i < contexts.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < contexts.size() && !dominated; ++j) {
      if (i == j) continue;
      if (contexts[i] == contexts[j]) {
        dominated = j < i;
      } else {
        dominated = is_subset(contexts[i], contexts[j]);
      }
    }
    if (!dominated) kept.push_back(contexts[i]);
  }
  return ContextSet(std::move(kept));
}

bool ContextSet::contains(const VarSet& context) const { return covering(context).has_value(); }

std::optional<std::size_t> ContextSet::covering(const VarSet& context) const {
  for (std::size_t i = 0; i < maximal_.size(); ++i) {
    if (is_subset(context, maximal_[i])) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> ContextSet::index_of(const VarSet& context) const {
  for (std::size_t i = 0; i < maximal_.size(); ++i) {
    if (maximal_[i] == context) return i;
  }
  return std::nullopt;
}

VarSet ContextSet::variables() const {
  VarSet out;
  for (const auto& c : maximal_) out = unite(out, c);
  return out;
}

std::string ConsistencyViolation::describe(const ContextSet& contexts) const {
  std::string where = overlap.empty() ? std::string("the empty assignment")
                                      : Assignment(overlap, row).to_string();
  return "contexts {" + join(contexts[first], ",") + "} and {" + join(contexts[second], ",") +
         "} disagree at " + where + ": " + first_mass.to_string() + " vs " + second_mass.to_string();
}

KRelation ContextualFamily::relation_at(const VarSet& context) const {
  const auto idx = contexts_.covering(context);
  if (!idx) throw ContextError("{" + join(context, ",") + "} is not a context of the family");
  return marginalise(relations_[*idx], context);
}

std::size_t ContextualFamily::assignment_count() const {
  std::size_t n = 0;
  for (const auto& r : relations_) n += r.size();
  return n;
}

namespace {

std::optional<ConsistencyViolation> compare_pair(const KRelation& a, const KRelation& b, std::size_t i,
                                                 std::size_t j) {
  const auto overlap = intersect(a.vars(), b.vars());
  const auto ma = marginalise(a, overlap);
  const auto mb = marginalise(b, overlap);
  if (ma == mb) return std::nullopt;
  std::vector<Tuple> keys;
  for (const auto& [row, w] : ma.rows()) keys.push_back(row);
  for (const auto& [row, w] : mb.rows()) keys.push_back(row);
  std::sort(keys.begin(), keys.end());
  for (const auto& key : keys) {
    auto wa = ma.annotation(key);
    auto wb = mb.annotation(key);
    if (!(wa == wb)) return ConsistencyViolation{i, j, overlap, key, std::move(wa), std::move(wb)};
  }
  // Both marginals empty or equal on every key; unreachable when ma != mb.
  throw std::logic_error("marginal comparison found no differing row");
}

struct Join {
  VarSet vars;
  std::vector<Tuple> rows;
};

Join join_supports(const ContextualFamily& family) {
  Join acc{{}, {Tuple{}}};
  for (const auto& rel : family.relations()) {
    const auto shared = intersect(acc.vars, rel.vars());
    const auto merged = unite(acc.vars, rel.vars());
    const auto acc_shared = positions_of(shared, acc.vars);
    const auto rel_shared = positions_of(shared, rel.vars());
    std::map<Tuple, std::vector<const Tuple*>> index;
    for (const auto& [row, w] : rel.rows()) index[project(row, rel_shared)].push_back(&row);
    Join next{merged, {}};
    for (const auto& row : acc.rows) {
      const auto it = index.find(project(row, acc_shared));
      if (it == index.end()) continue;
      for (const Tuple* other : it->second) {
        Tuple combined;
        combined.reserve(merged.size());
        std::size_t p = 0, q = 0;
        for (const auto& v : merged) {
          if (p < acc.vars.size() && acc.vars[p] == v) {
            combined.push_back(row[p]);
            ++p;
            if (q < rel.vars().size() && rel.vars()[q] == v) ++q;
          } else {
            combined.push_back((*other)[q]);
            ++q;
          }
        }
        next.rows.push_back(std::move(combined));
      }
    }
    acc = std::move(next);
  }
  std::sort(acc.rows.begin(), acc.rows.end());
  acc.rows.erase(std::unique(acc.rows.begin(), acc.rows.end()), acc.rows.end());
  return acc;
}

MonoidValue weight_from_rational(const mpq_class& q, MonoidKind kind) {
  if (kind == MonoidKind::Natural) return MonoidValue::natural(q.get_num());
  return MonoidValue::rational(q);
}

}  // namespace

LocalCheck check_local_consistency(ContextSet contexts, MonoidKind kind, std::vector<KRelation> relations) {
  std::vector<std::optional<KRelation>> slots(contexts.size());
  for (auto& rel : relations) {
    if (rel.kind() != kind) {
      throw ContractError("relation over {" + join(rel.vars(), ",") + "} has kind " +
                          std::string(kind_name(rel.kind())) + ", family has kind " +
                          std::string(kind_name(kind)));
    }
    const auto idx = contexts.index_of(rel.vars());
    if (!idx) throw ContractError("relation over {" + join(rel.vars(), ",") + "} is not a maximal context");
    if (slots[*idx]) throw ContractError("duplicate relation for context {" + join(rel.vars(), ",") + "}");
    slots[*idx] = std::move(rel);
  }
  std::vector<KRelation> ordered;
  ordered.reserve(slots.size());
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i]) throw ContractError("missing relation for context {" + join(contexts[i], ",") + "}");
    ordered.push_back(std::move(*slots[i]));
  }
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    for (std::size_t j = i + 1; j < ordered.size(); ++j) {
      if (auto v = compare_pair(ordered[i], ordered[j], i, j)) return *v;
    }
  }
  return ContextualFamily(std::move(contexts), kind, std::move(ordered));
}

ContextualFamily make_family(ContextSet contexts, MonoidKind kind, std::vector<KRelation> relations) {
  const ContextSet copy = contexts;
  auto result = check_local_consistency(std::move(contexts), kind, std::move(relations));
  if (auto* v = std::get_if<ConsistencyViolation>(&result)) {
    throw ContractError("not locally consistent: " + v->describe(copy));
  }
  return std::get<ContextualFamily>(std::move(result));
}

ContextualFamily project_family(const KRelation& global, const ContextSet& contexts) {
  std::vector<KRelation> parts;
  for (const auto& c : contexts.maximal()) parts.push_back(marginalise(global, c));
  return make_family(contexts, global.kind(), std::move(parts));
}

GlobalConsistency check_global_consistency(const ContextualFamily& family) {
  const Join joined = join_supports(family);
  const MonoidKind kind = family.kind();
  GlobalConsistency out;

  if (kind == MonoidKind::Boolean) {
    KRelation witness(joined.vars, kind);
    for (const auto& row : joined.rows) witness.add_row(row, MonoidValue::one(kind));
    for (std::size_t i = 0; i < family.contexts().size(); ++i) {
      const auto& given = family.relation(i);
      const auto proj = marginalise(witness, given.vars());
      if (proj == given) continue;
      for (const auto& [row, w] : given.rows()) {
        if (!proj.rows().count(row)) {
          out.detail = "row " + Assignment(given.vars(), row).to_string() + " of context {" +
                       join(given.vars(), ",") + "} extends to no row of the support join";
          return out;
        }
      }
      throw std::logic_error("join projection exceeds the given relation");
    }
    out.consistent = true;
    out.witness = std::move(witness);
    return out;
  }

  // One unknown per join row; one equation per (context, support row).
  lp::EqualitySystem system(joined.rows.size());
  for (const auto& given : family.relations()) {
    const auto pos = positions_of(given.vars(), joined.vars);
    std::map<Tuple, std::vector<std::size_t>> extensions;
    for (std::size_t r = 0; r < joined.rows.size(); ++r) extensions[project(joined.rows[r], pos)].push_back(r);
    for (const auto& [row, w] : given.rows()) {
      std::vector<mpq_class> coeffs(joined.rows.size(), mpq_class(0));
      const auto it = extensions.find(row);
      if (it == extensions.end()) {
        out.detail = "row " + Assignment(given.vars(), row).to_string() + " of context {" +
                     join(given.vars(), ",") + "} extends to no row of the support join";
        return out;
      }
      for (auto r : it->second) coeffs[r] = 1;
      system.add_row(std::move(coeffs), w.as_rational());
    }
  }

  std::vector<mpq_class> weights;
  if (kind == MonoidKind::Natural) {
    auto sol = lp::solve_nonnegative_integer(system);
    if (sol) {
      for (auto& z : *sol) weights.emplace_back(z);
    }
  } else if (auto sol = lp::solve_nonnegative(system)) {
    weights = std::move(*sol);
  }
  if (weights.size() != joined.rows.size()) {
    out.detail = std::string("no non-negative") + (kind == MonoidKind::Natural ? " integer" : "") +
                 " weighting of the " + std::to_string(joined.rows.size()) +
                 " support-join rows reproduces every marginal";
    return out;
  }
  KRelation witness(joined.vars, kind);
  for (std::size_t r = 0; r < joined.rows.size(); ++r) {
    witness.add_row(joined.rows[r], weight_from_rational(weights[r], kind));
  }
  for (const auto& given : family.relations()) {
    if (!(marginalise(witness, given.vars()) == given)) {
      throw std::logic_error("global witness does not reproduce a marginal");
    }
  }
  out.consistent = true;
  out.witness = std::move(witness);
  return out;
}

ContextualFamily family_support(const ContextualFamily& family) {
  std::vector<KRelation> parts;
  for (const auto& r : family.relations()) parts.push_back(support_relation(r));
  auto checked = check_local_consistency(family.contexts(), MonoidKind::Boolean, std::move(parts));
  if (std::holds_alternative<ConsistencyViolation>(checked)) {
    throw std::logic_error("support of a contextual family is not locally consistent");
  }
  return std::get<ContextualFamily>(std::move(checked));
}

ContextualFamily add_families(const ContextualFamily& f, const ContextualFamily& g) {
  if (!(f.contexts() == g.contexts())) throw ContractError("add_families: context sets differ");
  if (f.kind() != g.kind()) throw ContractError("add_families: kind mismatch");
  std::vector<KRelation> parts;
  for (std::size_t i = 0; i < f.contexts().size(); ++i) {
    parts.push_back(add_relations(f.relation(i), g.relation(i)));
  }
  auto checked = check_local_consistency(f.contexts(), f.kind(), std::move(parts));
  if (std::holds_alternative<ConsistencyViolation>(checked)) {
    throw std::logic_error("sum of contextual families is not locally consistent");
  }
  return std::get<ContextualFamily>(std::move(checked));
}

LocalCheck scalar_family(const MonoidValue& c, const ContextualFamily& family) {
  if (family.kind() != MonoidKind::Boolean) throw ContractError("scalar_family expects a Boolean family");
  std::vector<KRelation> parts;
  for (const auto& r : family.relations()) {
    std::vector<Tuple> rows;
    for (const auto& [row, w] : r.rows()) rows.push_back(row);
    parts.push_back(scalar_fill(c, r.vars(), rows));
  }
  return check_local_consistency(family.contexts(), c.kind(), std::move(parts));
}

bool family_satisfies(const ContextualFamily& family, const FD& fd) {
  return satisfies_fd(family.relation_at(fd.vars()), fd);
}

}  // namespace ctxfam
