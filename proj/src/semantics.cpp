#include "ctxfam/semantics.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <limits>

#include "ctxfam/errors.hpp"
#include "ctxfam/fdlogic.hpp"

namespace ctxfam {

ContextSet dependency_contexts(std::span<const FD> sigma, const FD* goal) {
  std::vector<VarSet> ordered;
  for (const auto& fd : sigma) ordered.push_back(fd.vars());
  if (goal) ordered.push_back(goal->vars());
  return ContextSet::from_any(std::move(ordered));
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

void require_counterexample_fragment(std::span<const FD> sigma, const FD& goal) {
  for (const auto& fd : sigma) {
    const bool ok = (fd.is_unary()) || (fd.is_cd() && fd.lhs.size() <= 2);
    if (!ok) throw UnsupportedError("'" + fd.to_string() + "' is not a unary FD or a CD on at most two variables");
  }
  if (!goal.is_unary() || goal.lhs == goal.rhs) {
    throw UnsupportedError("the goal must be a unary FD between distinct variables");
  }
}

MonoidValue weight_of(MonoidKind kind, long n) {
  switch (kind) {
    case MonoidKind::Boolean: return MonoidValue::boolean(true);
    case MonoidKind::Natural: return MonoidValue::natural(n);
    case MonoidKind::Rational: return MonoidValue::rational(n);
  }
  return MonoidValue::one(kind);
}

Tuple constant_tuple(std::size_t arity, const char* value) { return Tuple(arity, value); }

bool fd_in_fragment(const FD& fd) { return fd.is_unary() || (fd.is_cd() && fd.lhs.size() <= 2); }

// Boolean relations over the tuples of one context, as bitmasks. Tuple t
// over sorted variables v_0 .. v_{k-1} has index sum t_i d^(k-1-i).
class MaskSpace {
 public:
  MaskSpace(const ContextSet& contexts, std::size_t domain) : contexts_(contexts), domain_(domain) {
    if (domain_ < 1) throw ContractError("domain size must be positive");
    for (std::size_t i = 0; i < contexts_.size(); ++i) {
      std::size_t tuples = 1;
      for (std::size_t k = 0; k < contexts_[i].size(); ++k) {
        tuples *= domain_;
        if (tuples > 64) {
          throw UnsupportedError("context {" + join(contexts_[i], ",") + "} has more than 64 tuples at domain " +
                                 std::to_string(domain_));
        }
      }
      tuples_.push_back(tuples);
    }
    const std::size_t n = contexts_.size();
    overlap_.assign(n * n, {});
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j) overlap_[i * n + j] = intersect(contexts_[i], contexts_[j]);
      }
    }
  }

  std::size_t size() const { return contexts_.size(); }
  std::size_t tuples(std::size_t i) const { return tuples_[i]; }
  const VarSet& overlap(std::size_t i, std::size_t j) const { return overlap_[i * size() + j]; }

  // Index of the restriction of tuple t of context i to `sub`.
  std::vector<std::size_t> projection_table(std::size_t i, const VarSet& sub) const {
    const auto pos = positions_of(sub, contexts_[i]);
    std::vector<std::size_t> out(tuples_[i]);
    for (std::size_t t = 0; t < tuples_[i]; ++t) {
      const auto digits = decode(i, t);
      std::size_t key = 0;
      for (auto p : pos) key = key * domain_ + digits[p];
      out[t] = key;
    }
    return out;
  }

  std::uint64_t project(std::uint64_t mask, const std::vector<std::size_t>& table) const {
    std::uint64_t out = 0;
    for (; mask; mask &= mask - 1) out |= std::uint64_t{1} << table[std::countr_zero(mask)];
    return out;
  }

  bool satisfies(std::uint64_t mask, const std::vector<std::size_t>& lhs, const std::vector<std::size_t>& rhs) const {
    std::size_t seen[64];
    std::fill(std::begin(seen), std::end(seen), kNone);
    for (; mask; mask &= mask - 1) {
      const auto t = static_cast<std::size_t>(std::countr_zero(mask));
      auto& r = seen[lhs[t]];
      if (r == kNone) r = rhs[t];
      else if (r != rhs[t]) return false;
    }
    return true;
  }

  std::vector<std::size_t> decode(std::size_t i, std::size_t t) const {
    std::vector<std::size_t> digits(contexts_[i].size());
    for (std::size_t k = digits.size(); k-- > 0;) {
      digits[k] = t % domain_;
      t /= domain_;
    }
    return digits;
  }

  // All masks with 1 .. r bits, ordered by size and then lexicographically.
  std::vector<std::uint64_t> masks(std::size_t i, std::size_t r) const {
    std::vector<std::uint64_t> out;
    const std::size_t t = tuples_[i];
    std::vector<std::size_t> pick;
    for (std::size_t size = 1; size <= std::min(r, t); ++size) {
      pick.resize(size);
      for (std::size_t k = 0; k < size; ++k) pick[k] = k;
      for (;;) {
        std::uint64_t m = 0;
        for (auto p : pick) m |= std::uint64_t{1} << p;
        out.push_back(m);
        if (out.size() > 4'000'000) throw UnsupportedError("oracle bounds give too many candidate relations");
        std::size_t k = size;
        while (k > 0 && pick[k - 1] == t - size + k - 1) --k;
        if (k == 0) break;
        ++pick[k - 1];
        for (std::size_t l = k; l < size; ++l) pick[l] = pick[l - 1] + 1;
      }
    }
    return out;
  }

  KRelation relation(std::size_t i, std::uint64_t mask) const {
    KRelation rel(contexts_[i], MonoidKind::Boolean);
    for (; mask; mask &= mask - 1) {
      const auto digits = decode(i, static_cast<std::size_t>(std::countr_zero(mask)));
      Tuple row;
      for (auto d : digits) row.push_back(std::to_string(d));
      rel.add_row(std::move(row), MonoidValue::one(MonoidKind::Boolean));
    }
    return rel;
  }

 private:
  const ContextSet& contexts_;
  std::size_t domain_;
  std::vector<std::size_t> tuples_;
  std::vector<VarSet> overlap_;
};

// Backtracking over the contexts in `active` with forward checking on the
// overlap projections; the next context is the one with fewest live
// candidates (lowest index on ties).
class FamilySearch {
 public:
  FamilySearch(const MaskSpace& space, std::vector<std::size_t> active, std::vector<std::vector<std::uint64_t>> cands)
      : space_(space), active_(std::move(active)), cands_(std::move(cands)) {
    const std::size_t n = space_.size();
    proj_.assign(n * n, {});
    for (auto i : active_) {
      for (auto j : active_) {
        if (i == j || space_.overlap(i, j).empty()) continue;
        const auto table = space_.projection_table(i, space_.overlap(i, j));
        auto& out = proj_[i * n + j];
        for (auto m : cands_[i]) out.push_back(space_.project(m, table));
      }
    }
    neighbours_.resize(n);
    for (auto i : active_) {
      for (auto j : active_) {
        if (i != j && !space_.overlap(i, j).empty()) neighbours_[i].push_back(j);
      }
    }
    choice_.assign(n, kNone);
  }

  // Returns the chosen mask index per context, or nothing.
  std::optional<std::vector<std::size_t>> run(std::size_t step_limit) {
    limit_ = step_limit;
    steps_ = 0;
    std::vector<std::vector<std::uint32_t>> live(space_.size());
    for (auto i : active_) {
      if (cands_[i].empty()) return std::nullopt;
      live[i].resize(cands_[i].size());
      for (std::uint32_t k = 0; k < live[i].size(); ++k) live[i][k] = k;
    }
    if (!descend(live, active_.size())) return std::nullopt;
    return choice_;
  }

  bool exhausted() const { return limit_ != 0 && steps_ >= limit_; }

 private:
  bool descend(std::vector<std::vector<std::uint32_t>>& live, std::size_t remaining) {
    if (remaining == 0) return true;
    std::size_t next = kNone;
    for (auto i : active_) {
      if (choice_[i] != kNone) continue;
      if (next == kNone || live[i].size() < live[next].size()) next = i;
    }
    const std::size_t n = space_.size();
    const auto options = live[next];
    for (auto k : options) {
      if (limit_ != 0 && ++steps_ > limit_) return false;
      choice_[next] = k;
      std::vector<std::pair<std::size_t, std::vector<std::uint32_t>>> saved;
      bool ok = true;
      for (auto j : neighbours_[next]) {
        if (choice_[j] != kNone) continue;
        const auto want = proj_[next * n + j][k];
        const auto& theirs = proj_[j * n + next];
        std::vector<std::uint32_t> kept;
        for (auto c : live[j]) {
          if (theirs[c] == want) kept.push_back(c);
        }
        saved.emplace_back(j, std::move(live[j]));
        live[j] = std::move(kept);
        if (live[j].empty()) {
          ok = false;
          break;
        }
      }
      if (ok && descend(live, remaining - 1)) return true;
      for (auto& [j, old] : saved) live[j] = std::move(old);
      choice_[next] = kNone;
      if (limit_ != 0 && steps_ > limit_) return false;
    }
    return false;
  }

  const MaskSpace& space_;
  std::vector<std::size_t> active_;
  std::vector<std::vector<std::uint64_t>> cands_;
  std::vector<std::vector<std::uint64_t>> proj_;
  std::vector<std::vector<std::size_t>> neighbours_;
  std::vector<std::size_t> choice_;
  std::size_t limit_ = 0;
  std::size_t steps_ = 0;
};

// Candidates of context i that satisfy every dependency of sigma living in it.
std::vector<std::uint64_t> satisfying_masks(const MaskSpace& space, const ContextSet& contexts, std::size_t i,
                                            std::span<const FD> sigma, std::size_t max_rows) {
  std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> checks;
  for (const auto& fd : sigma) {
    if (fd.is_cd() || !is_subset(fd.vars(), contexts[i])) continue;
    checks.emplace_back(space.projection_table(i, fd.lhs), space.projection_table(i, fd.rhs));
  }
  std::vector<std::uint64_t> out;
  for (auto m : space.masks(i, max_rows)) {
    if (std::all_of(checks.begin(), checks.end(),
                    [&](const auto& c) { return space.satisfies(m, c.first, c.second); })) {
      out.push_back(m);
    }
  }
  return out;
}

}  // namespace

ContextualFamily build_counterexample(std::span<const FD> sigma, const FD& goal, MonoidKind kind) {
  require_counterexample_fragment(sigma, goal);
  if (derives(sigma, goal, RuleSet::Cr).derivable) {
    throw ContractError("'" + goal.to_string() + "' is derivable, so no counterexample exists");
  }
  const ContextSet contexts = dependency_contexts(sigma, &goal);
  const Variable& x = goal.lhs[0];
  const Variable& y = goal.rhs[0];

  // Variables reachable from x along the unary FDs.
  VarSet reach{x};
  for (bool grew = true; grew;) {
    grew = false;
    for (const auto& fd : sigma) {
      if (fd.is_unary() && !fd.is_cd() && contains(reach, fd.lhs[0]) && !contains(reach, fd.rhs[0])) {
        reach = unite(reach, fd.rhs);
        grew = true;
      }
    }
  }

  if (!contains(reach, y)) {
    const VarSet all = contexts.variables();
    KRelation global(all, kind);
    const auto a = weight_of(kind, 1);
    global.add_row(constant_tuple(all.size(), "0"), a);
    Tuple split;
    for (const auto& v : all) split.push_back(contains(reach, v) ? "0" : "1");
    global.add_row(std::move(split), a);
    return project_family(global, contexts);
  }

  const auto a = weight_of(kind, 1);
  const auto b = weight_of(kind, 2);
  const VarSet xy = goal.vars();
  std::vector<KRelation> relations;
  for (const auto& c : contexts.maximal()) {
    if (c == xy) {
      std::vector<Tuple> rows{{"0", "0"}, {"0", "1"}, {"1", "0"}, {"1", "1"}};
      relations.push_back(scalar_fill(a, c, rows));
    } else {
      relations.push_back(scalar_fill(b, c, {constant_tuple(c.size(), "0"), constant_tuple(c.size(), "1")}));
    }
  }
  return make_family(contexts, kind, std::move(relations));
}

OracleVerdict semantic_entails_oracle(std::span<const FD> sigma, const FD& goal, OracleBounds bounds) {
  OracleVerdict verdict;
  const bool fragment = std::all_of(sigma.begin(), sigma.end(), fd_in_fragment) && goal.is_unary();
  const bool conclusive = fragment && bounds.domain >= 2 && bounds.max_rows >= 4;
  if (is_subset(goal.rhs, goal.lhs)) {
    verdict.holds = true;
    verdict.conclusive = true;
    return verdict;
  }
  const ContextSet contexts = dependency_contexts(sigma, &goal);
  const MaskSpace space(contexts, bounds.domain);
  const std::size_t goal_ctx = *contexts.covering(goal.vars());

  // Connected component of the goal context in the overlap graph.
  std::vector<bool> in_component(contexts.size(), false);
  std::vector<std::size_t> active;
  std::deque<std::size_t> queue{goal_ctx};
  in_component[goal_ctx] = true;
  while (!queue.empty()) {
    const auto i = queue.front();
    queue.pop_front();
    active.push_back(i);
    for (std::size_t j = 0; j < contexts.size(); ++j) {
      if (!in_component[j] && !space.overlap(i, j).empty()) {
        in_component[j] = true;
        queue.push_back(j);
      }
    }
  }
  std::sort(active.begin(), active.end());

  std::vector<std::vector<std::uint64_t>> cands(contexts.size());
  for (auto i : active) cands[i] = satisfying_masks(space, contexts, i, sigma, bounds.max_rows);
  {
    const auto lhs = space.projection_table(goal_ctx, goal.lhs);
    const auto rhs = space.projection_table(goal_ctx, goal.rhs);
    std::erase_if(cands[goal_ctx], [&](std::uint64_t m) { return space.satisfies(m, lhs, rhs); });
  }

  FamilySearch search(space, active, std::move(cands));
  const auto found = search.run(0);
  if (!found) {
    verdict.holds = true;
    verdict.conclusive = conclusive;
    return verdict;
  }
  // Recover the masks: the search reports indices into the filtered lists.
  std::vector<KRelation> relations;
  for (std::size_t i = 0; i < contexts.size(); ++i) {
    if (!in_component[i]) {
      relations.push_back(space.relation(i, 1));
      continue;
    }
    auto list = satisfying_masks(space, contexts, i, sigma, bounds.max_rows);
    if (i == goal_ctx) {
      const auto lhs = space.projection_table(goal_ctx, goal.lhs);
      const auto rhs = space.projection_table(goal_ctx, goal.rhs);
      std::erase_if(list, [&](std::uint64_t m) { return space.satisfies(m, lhs, rhs); });
    }
    relations.push_back(space.relation(i, list[(*found)[i]]));
  }
  verdict.counterexample = make_family(contexts, MonoidKind::Boolean, std::move(relations));
  verdict.conclusive = true;
  return verdict;
}

std::optional<ContextualFamily> random_satisfying_family(std::span<const FD> sigma, const ContextSet& contexts,
                                                         OracleBounds bounds, std::mt19937_64& rng,
                                                         std::size_t step_limit) {
  const MaskSpace space(contexts, bounds.domain);
  std::vector<std::size_t> active(contexts.size());
  std::vector<std::vector<std::uint64_t>> cands(contexts.size());
  for (std::size_t i = 0; i < contexts.size(); ++i) {
    active[i] = i;
    cands[i] = satisfying_masks(space, contexts, i, sigma, bounds.max_rows);
    std::shuffle(cands[i].begin(), cands[i].end(), rng);
  }
  const auto shuffled = cands;
  FamilySearch search(space, active, std::move(cands));
  const auto found = search.run(step_limit == 0 ? 1 : step_limit);
  if (!found) return std::nullopt;
  std::vector<KRelation> relations;
  for (std::size_t i = 0; i < contexts.size(); ++i) relations.push_back(space.relation(i, shuffled[i][(*found)[i]]));
  return make_family(contexts, MonoidKind::Boolean, std::move(relations));
}

}  // namespace ctxfam
