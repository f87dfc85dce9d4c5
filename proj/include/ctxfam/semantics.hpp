#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <span>

#include "ctxfam/family.hpp"
#include "ctxfam/fd.hpp"

namespace ctxfam {

/// The maximal sets among Vars(theta) for theta in sigma, plus Vars(goal)
/// when given.
ContextSet dependency_contexts(std::span<const FD> sigma, const FD* goal = nullptr);

/// A family over dependency_contexts(sigma, goal) that satisfies sigma and
/// violates `goal`.
///
/// Without a path from x to y in the unary FDs, the family is the marginal
/// of a two-row global relation: all zeros, and zeros on the variables
/// reachable from x with ones elsewhere. Otherwise every context holds the
/// two constant rows with weight b, except {x, y}, which holds all four
/// binary rows with weight a, where a + a = b (1 and 2 for N and Q).
///
/// Throws UnsupportedError unless sigma has only unary FDs and CDs on at most
/// two variables and the goal is a unary FD between distinct variables.
/// Throws ContractError when the goal is derivable with the cycle rule.
ContextualFamily build_counterexample(std::span<const FD> sigma, const FD& goal, MonoidKind kind);

struct OracleBounds {
  std::size_t domain = 2;
  std::size_t max_rows = 4;
};

struct OracleVerdict {
  bool holds = false;
  /// False for a "holds" verdict outside unary FDs + binary CDs or below the
  /// bounds d = 2, r = 4; such a verdict only covers the searched space.
  bool conclusive = false;
  std::optional<ContextualFamily> counterexample;
};

/// Exhaustive search for a Boolean family over dependency_contexts(sigma,
/// goal), with values 0 .. d-1 and 1 .. r rows per context, that satisfies
/// sigma and violates goal. Contexts outside the connected component of the
/// goal's context are filled with a single all-zero row. Throws
/// UnsupportedError when a context has more than 64 tuples.
OracleVerdict semantic_entails_oracle(std::span<const FD> sigma, const FD& goal, OracleBounds bounds = {});

/// A Boolean family over `contexts` satisfying sigma, found by backtracking
/// with candidate orders shuffled by `rng`. Gives up after `step_limit`
/// placements.
std::optional<ContextualFamily> random_satisfying_family(std::span<const FD> sigma, const ContextSet& contexts,
                                                         OracleBounds bounds, std::mt19937_64& rng,
                                                         std::size_t step_limit = 20000);

}  // namespace ctxfam
