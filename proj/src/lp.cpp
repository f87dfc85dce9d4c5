#include "ctxfam/lp.hpp"

#include "ctxfam/errors.hpp"

namespace ctxfam::lp {

void EqualitySystem::add_row(std::vector<mpq_class> coefficients, mpq_class value) {
  if (coefficients.size() != columns) throw ContractError("linear row has wrong width");
  rows.push_back(std::move(coefficients));
  rhs.push_back(std::move(value));
}

namespace {

// Phase-one tableau. Columns [0, n) are the structural variables, [n, n+m)
// the artificials, and the last column is the right-hand side. Row m is the
// reduced-cost row of the artificial objective.
class PhaseOne {
 public:
  explicit PhaseOne(const EqualitySystem& sys) : m_(sys.rows.size()), n_(sys.columns) {
    const std::size_t width = n_ + m_ + 1;
    tableau_.assign(m_ + 1, std::vector<mpq_class>(width, mpq_class(0)));
    basis_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      const bool flip = sgn(sys.rhs[i]) < 0;
      for (std::size_t j = 0; j < n_; ++j) {
        tableau_[i][j] = flip ? mpq_class(-sys.rows[i][j]) : sys.rows[i][j];
      }
      tableau_[i][n_ + i] = 1;
      tableau_[i][width - 1] = flip ? mpq_class(-sys.rhs[i]) : sys.rhs[i];
      basis_[i] = n_ + i;
      for (std::size_t j = 0; j < n_; ++j) tableau_[m_][j] -= tableau_[i][j];
      tableau_[m_][width - 1] -= tableau_[i][width - 1];
    }
  }

  std::optional<std::vector<mpq_class>> run() {
    const std::size_t rhs = n_ + m_;
    for (;;) {
      // Bland: lowest-index column with negative reduced cost enters.
      std::size_t enter = rhs;
      for (std::size_t j = 0; j < rhs; ++j) {
        if (sgn(tableau_[m_][j]) < 0) {
          enter = j;
          break;
        }
      }
      if (enter == rhs) break;
      std::size_t leave = m_;
      mpq_class best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (sgn(tableau_[i][enter]) <= 0) continue;
        mpq_class ratio = tableau_[i][rhs] / tableau_[i][enter];
        if (leave == m_ || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          best = ratio;
          leave = i;
        }
      }
      // The artificial objective is bounded below by zero.
      if (leave == m_) break;
      pivot(leave, enter);
    }
    if (sgn(tableau_[m_][rhs]) != 0) return std::nullopt;
    std::vector<mpq_class> x(n_, mpq_class(0));
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) x[basis_[i]] = tableau_[i][rhs];
    }
    return x;
  }

 private:
  void pivot(std::size_t row, std::size_t col) {
    const std::size_t width = tableau_[row].size();
    const mpq_class p = tableau_[row][col];
    for (std::size_t j = 0; j < width; ++j) tableau_[row][j] /= p;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == row || sgn(tableau_[i][col]) == 0) continue;
      const mpq_class factor = tableau_[i][col];
      for (std::size_t j = 0; j < width; ++j) {
        if (sgn(tableau_[row][j]) != 0) tableau_[i][j] -= factor * tableau_[row][j];
      }
    }
    basis_[row] = col;
  }

  std::size_t m_;
  std::size_t n_;
  std::vector<std::vector<mpq_class>> tableau_;
  std::vector<std::size_t> basis_;
};

struct Branching {
  std::size_t nodes = 0;
  std::size_t limit;
};

std::optional<std::vector<mpz_class>> branch(const EqualitySystem& sys, std::size_t original_columns,
                                             Branching& state) {
  if (++state.nodes > state.limit) {
    throw UnsupportedError("integer feasibility search exceeded its node limit");
  }
  auto relaxed = solve_nonnegative(sys);
  if (!relaxed) return std::nullopt;
  std::size_t fractional = original_columns;
  for (std::size_t j = 0; j < original_columns; ++j) {
    if ((*relaxed)[j].get_den() != 1) {
      fractional = j;
      break;
    }
  }
  if (fractional == original_columns) {
    std::vector<mpz_class> out;
    out.reserve(original_columns);
    for (std::size_t j = 0; j < original_columns; ++j) out.push_back((*relaxed)[j].get_num());
    return out;
  }
  const mpq_class& v = (*relaxed)[fractional];
  mpz_class down;
  mpz_fdiv_q(down.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());

  // Each branch appends one slack column and one bounding row.
  for (int side = 0; side < 2; ++side) {
    EqualitySystem child(sys.columns + 1);
    for (std::size_t i = 0; i < sys.rows.size(); ++i) {
      auto row = sys.rows[i];
      row.emplace_back(0);
      child.add_row(std::move(row), sys.rhs[i]);
    }
    std::vector<mpq_class> bound(sys.columns + 1, mpq_class(0));
    bound[fractional] = 1;
    bound[sys.columns] = side == 0 ? 1 : -1;
    child.add_row(std::move(bound), side == 0 ? mpq_class(down) : mpq_class(down + 1));
    if (auto found = branch(child, original_columns, state)) return found;
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::vector<mpq_class>> solve_nonnegative(const EqualitySystem& system) {
  for (const auto& row : system.rows) {
    if (row.size() != system.columns) throw ContractError("linear row has wrong width");
  }
  PhaseOne solver(system);
  return solver.run();
}

std::optional<std::vector<mpz_class>> solve_nonnegative_integer(const EqualitySystem& system,
                                                                std::size_t node_limit) {
  Branching state{0, node_limit};
  return branch(system, system.columns, state);
}

mpz_class denominator_lcm(const std::vector<mpq_class>& values) {
  mpz_class l = 1;
  for (const auto& v : values) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  }
  return l;
}

}  // namespace ctxfam::lp
