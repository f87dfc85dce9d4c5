#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ctxfam/fd.hpp"
#include "ctxfam/varset.hpp"

namespace ctxfam {

/// Proof systems.
///  - Cr:        reflexivity + cycle rule (unary FDs and CDs)
///  - Full:      Cr + contextual chain rule
///  - Classical: Armstrong's axioms, inside one covering context
///  - Nra:       reflexivity + augmentation + contextual chain rule, inside
///               one covering context
enum class RuleSet { Cr, Full, Classical, Nra };

std::string_view rule_set_name(RuleSet rules) noexcept;
std::optional<RuleSet> parse_rule_set(std::string_view text) noexcept;

/// Attribute closure of `x` under Armstrong's axioms.
VarSet classical_closure(std::span<const FD> sigma, const VarSet& x);

/// One cycle-rule application yields x -> y: the unary FDs of sigma contain
/// a path from x to y and the dependency y -> x.
bool cycle_rule_derives(std::span<const FD> sigma, const Variable& x, const Variable& y);

/// A contextual chain x_1 -> ... -> x_n with witnesses c_1 ... c_{n-1}.
struct ChainInstance {
  std::vector<Variable> xs;
  std::vector<Variable> cs;
};

/// Searches for one contextual-chain-rule application concluding x -> y.
///
/// Unary FDs are read from sigma (a -> a always holds); a context is any
/// subset of Vars(theta) for theta in sigma or of {x, y}. The search is a
/// reachability problem over pairs (x_i, c_i) with c_i -> y; an edge
/// (a, c) -> (b, d) requires a -> b and the contexts {a, c, b}, {c, b, d} and
/// {c, d, y}; the first pair needs {x, c, y} and the last needs a -> y and
/// {a, c, y}. `max_length` bounds n (0: unbounded). Returns the shortest
/// instance, ties broken by variable order.
std::optional<ChainInstance> find_chain_instance(std::span<const FD> sigma, const Variable& x, const Variable& y,
                                                 std::size_t max_length = 0);

bool chain_rule_derives(std::span<const FD> sigma, const Variable& x, const Variable& y,
                        std::size_t max_length = 0);

/// Sigma plus the reflexivity instances available without new contexts: for
/// every theta and every nonempty L subset of Vars(theta) with |L| <= 3, the
/// CD L -> L and L -> v for each v in L.
std::vector<FD> reflexivity_expand(std::span<const FD> sigma);

/// Least fixpoint of single rule applications over variable pairs (Cr or
/// Full). Contains v -> v for every variable of sigma. Throws
/// UnsupportedError on a non-unary, non-CD member of sigma.
std::set<FD> derivation_closure(std::span<const FD> sigma, RuleSet rules);

enum class RuleName { Premise, Reflexivity, Augmentation, Transitivity, Cycle, Chain };

struct TraceStep {
  FD fd;
  RuleName rule;
  /// 0-based indices of earlier steps.
  std::vector<std::size_t> antecedents;
  /// Set for unary chain-rule steps.
  std::optional<ChainInstance> chain;
};

struct DerivationTrace {
  std::vector<TraceStep> steps;

  /// `i. <fd>  [premise | reflexivity | cycle(j,...) | chain(j,...) | ...]`,
  /// 1-based, one line per step.
  std::string to_string() const;
};

struct Derivation {
  bool derivable = false;
  std::optional<DerivationTrace> trace;
};

/// Decides sigma |- goal. Cr/Full: membership in derivation_closure, for a
/// unary goal or any goal whose rhs is inside its lhs. Classical/Nra: needs
/// a CD of sigma covering every variable, then attribute closure decides.
Derivation derives(std::span<const FD> sigma, const FD& goal, RuleSet rules);

/// Replays a trace: every step must be a premise, a reflexivity instance or
/// a verified application of a rule in `rules`, must stay within the
/// contexts of sigma and the goal, and the last step must be the goal.
/// Returns a description of the first problem, or nullopt.
std::optional<std::string> check_trace(const DerivationTrace& trace, std::span<const FD> sigma, const FD& goal,
                                       RuleSet rules);

}  // namespace ctxfam
