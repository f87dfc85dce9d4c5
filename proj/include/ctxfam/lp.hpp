#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <vector>

namespace ctxfam::lp {

/// A system A x = b over the rationals, stored densely.
struct EqualitySystem {
  explicit EqualitySystem(std::size_t columns) : columns(columns) {}

  /// `coefficients` must have exactly `columns` entries.
  void add_row(std::vector<mpq_class> coefficients, mpq_class rhs);

  std::size_t columns;
  std::vector<std::vector<mpq_class>> rows;
  std::vector<mpq_class> rhs;
};

/// Exact feasibility of A x = b, x >= 0 by phase-one simplex with Bland's
/// rule. Returns a basic solution when feasible.
std::optional<std::vector<mpq_class>> solve_nonnegative(const EqualitySystem& system);

/// Same system restricted to integral x, by branch and bound over the exact
/// relaxation. The feasible region must be bounded; UnsupportedError is
/// thrown if `node_limit` relaxations are exhausted.
std::optional<std::vector<mpz_class>> solve_nonnegative_integer(const EqualitySystem& system,
                                                                std::size_t node_limit = 200000);

/// Least common multiple of the denominators (1 for an empty vector).
mpz_class denominator_lcm(const std::vector<mpq_class>& values);

}  // namespace ctxfam::lp
