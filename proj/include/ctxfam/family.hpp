#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ctxfam/fd.hpp"
#include "ctxfam/monoid.hpp"
#include "ctxfam/relation.hpp"
#include "ctxfam/varset.hpp"

namespace ctxfam {

/// A downward-closed set of contexts, represented by its maximal members in
/// a fixed order.
class ContextSet {
 public:
  ContextSet() = default;

  /// Every entry must be maximal: no duplicates and no entry contained in
  /// another. Throws ContractError otherwise.
  explicit ContextSet(std::vector<VarSet> maximal);

  /// Keeps the maximal members of `contexts`, in order of first appearance.
  static ContextSet from_any(std::vector<VarSet> contexts);

  std::size_t size() const noexcept { return maximal_.size(); }
  const VarSet& operator[](std::size_t i) const { return maximal_[i]; }
  const std::vector<VarSet>& maximal() const noexcept { return maximal_; }

  /// True for any subset of a maximal context.
  bool contains(const VarSet& context) const;

  /// First maximal context containing `context`.
  std::optional<std::size_t> covering(const VarSet& context) const;

  std::optional<std::size_t> index_of(const VarSet& context) const;

  VarSet variables() const;

  friend bool operator==(const ContextSet&, const ContextSet&) = default;

 private:
  std::vector<VarSet> maximal_;
};

/// The first pair of maximal-context relations whose marginals on the
/// shared variables disagree, with the disagreeing row.
struct ConsistencyViolation {
  std::size_t first;
  std::size_t second;
  VarSet overlap;
  Tuple row;
  MonoidValue first_mass;
  MonoidValue second_mass;

  std::string describe(const ContextSet& contexts) const;
};

/// A locally consistent family with one K-relation per maximal context.
/// Instances only come out of validation, so the invariant always holds.
class ContextualFamily {
 public:
  const ContextSet& contexts() const noexcept { return contexts_; }
  MonoidKind kind() const noexcept { return kind_; }
  const std::vector<KRelation>& relations() const noexcept { return relations_; }
  const KRelation& relation(std::size_t i) const { return relations_.at(i); }

  /// The relation on any member of the downward closure, obtained by
  /// marginalising the first covering maximal relation. Throws ContextError
  /// if `context` is not in the context set.
  KRelation relation_at(const VarSet& context) const;

  /// Number of assignments over all maximal contexts.
  std::size_t assignment_count() const;

  friend bool operator==(const ContextualFamily&, const ContextualFamily&) = default;

 private:
  friend std::variant<ContextualFamily, ConsistencyViolation> check_local_consistency(
      ContextSet, MonoidKind, std::vector<KRelation>);

  ContextualFamily(ContextSet contexts, MonoidKind kind, std::vector<KRelation> relations)
      : contexts_(std::move(contexts)), kind_(kind), relations_(std::move(relations)) {}

  ContextSet contexts_;
  MonoidKind kind_ = MonoidKind::Boolean;
  std::vector<KRelation> relations_;
};

using LocalCheck = std::variant<ContextualFamily, ConsistencyViolation>;

/// Matches relations to maximal contexts by their variable sets and checks
/// every pair. Throws ContractError for a missing or duplicate context
/// relation, an unknown variable set, or a kind mismatch.
LocalCheck check_local_consistency(ContextSet contexts, MonoidKind kind, std::vector<KRelation> relations);

/// check_local_consistency, throwing ContractError with the violation text.
ContextualFamily make_family(ContextSet contexts, MonoidKind kind, std::vector<KRelation> relations);

/// Every maximal relation is the marginal of `global`.
ContextualFamily project_family(const KRelation& global, const ContextSet& contexts);

struct GlobalConsistency {
  bool consistent = false;
  /// A relation over all variables whose marginals are the family.
  std::optional<KRelation> witness;
  std::string detail;
};

/// B: join the supports and compare every projection. N, Q: exact
/// feasibility over the support join (integral for N).
GlobalConsistency check_global_consistency(const ContextualFamily& family);

ContextualFamily family_support(const ContextualFamily& family);

/// Contextwise sum. Throws ContractError on a context-set or kind mismatch.
ContextualFamily add_families(const ContextualFamily& f, const ContextualFamily& g);

/// Annotates every assignment of a Boolean family with `c` and re-validates.
/// May legitimately report a violation.
LocalCheck scalar_family(const MonoidValue& c, const ContextualFamily& family);

/// Throws ContextError when Vars(fd) is not a context of the family.
bool family_satisfies(const ContextualFamily& family, const FD& fd);

}  // namespace ctxfam
