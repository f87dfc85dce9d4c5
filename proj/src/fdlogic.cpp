#include "ctxfam/fdlogic.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>

#include "ctxfam/errors.hpp"

namespace ctxfam {

std::string_view rule_set_name(RuleSet rules) noexcept {
  switch (rules) {
    case RuleSet::Cr: return "cr";
    case RuleSet::Full: return "full";
    case RuleSet::Classical: return "classical";
    case RuleSet::Nra: return "nra";
  }
  return "?";
}

std::optional<RuleSet> parse_rule_set(std::string_view text) noexcept {
  if (text == "cr") return RuleSet::Cr;
  if (text == "full") return RuleSet::Full;
  if (text == "classical") return RuleSet::Classical;
  if (text == "nra") return RuleSet::Nra;
  return std::nullopt;
}

VarSet classical_closure(std::span<const FD> sigma, const VarSet& x) {
  VarSet closure = make_varset(x);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& fd : sigma) {
      if (is_subset(fd.lhs, closure) && !is_subset(fd.rhs, closure)) {
        closure = unite(closure, fd.rhs);
        changed = true;
      }
    }
  }
  return closure;
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

bool is_reflexive(const FD& fd) { return is_subset(fd.rhs, fd.lhs); }

void require_unary_fragment(std::span<const FD> sigma) {
  for (const auto& fd : sigma) {
    if (!fd.is_unary() && !fd.is_cd()) {
      throw UnsupportedError("'" + fd.to_string() + "' is neither a unary FD nor a CD");
    }
  }
}

struct Justification {
  RuleName rule;
  // Cycle: vertices of the path x = v_0 -> ... -> v_{k-1} = y.
  std::vector<std::size_t> path;
  // Chain: x_1..x_n and c_1..c_{n-1}.
  std::vector<std::size_t> xs;
  std::vector<std::size_t> cs;
};

// Unary dependency reasoning over variable indices. Contexts are the
// subsets of Vars(theta), theta in sigma, stored as a dense cube of triples
// (repetition allowed, so pairs and singletons are covered too).
class UnaryEngine {
 public:
  UnaryEngine(std::span<const FD> sigma, const VarSet& extra) {
    VarSet all = extra;
    for (const auto& fd : sigma) all = unite(all, fd.vars());
    names_ = all;
    n_ = names_.size();
    ctx_.assign(n_ * n_ * n_, 0);
    fd_.assign(n_ * n_, 0);
    premise_.assign(n_ * n_, 0);
    for (std::size_t v = 0; v < n_; ++v) fd_[v * n_ + v] = 1;
    for (const auto& fd : sigma) {
      std::vector<std::size_t> members;
      for (const auto& v : fd.vars()) members.push_back(index(v));
      for (auto a : members)
        for (auto b : members)
          for (auto c : members) ctx_[(a * n_ + b) * n_ + c] = 1;
      if (fd.is_unary()) {
        const auto a = index(fd.lhs[0]);
        const auto b = index(fd.rhs[0]);
        fd_[a * n_ + b] = 1;
        premise_[a * n_ + b] = 1;
      }
    }
  }

  std::size_t size() const { return n_; }
  const Variable& name(std::size_t i) const { return names_[i]; }
  std::size_t index(const Variable& v) const {
    const auto it = std::lower_bound(names_.begin(), names_.end(), v);
    if (it == names_.end() || *it != v) return kNone;
    return static_cast<std::size_t>(it - names_.begin());
  }
  bool ctx(std::size_t a, std::size_t b, std::size_t c) const { return ctx_[(a * n_ + b) * n_ + c] != 0; }
  bool fd(std::size_t a, std::size_t b) const { return fd_[a * n_ + b] != 0; }
  bool premise(std::size_t a, std::size_t b) const { return premise_[a * n_ + b] != 0; }
  const std::map<std::pair<std::size_t, std::size_t>, Justification>& justifications() const { return just_; }

  // Path from x to y over non-reflexive dependencies (vertex list), if any.
  std::optional<std::vector<std::size_t>> path(std::size_t x, std::size_t y) const {
    std::vector<std::size_t> parent(n_, kNone);
    std::vector<bool> seen(n_, false);
    std::deque<std::size_t> queue{x};
    seen[x] = true;
    while (!queue.empty()) {
      const auto v = queue.front();
      queue.pop_front();
      if (v == y) break;
      for (std::size_t w = 0; w < n_; ++w) {
        if (w == v || seen[w] || !fd(v, w)) continue;
        seen[w] = true;
        parent[w] = v;
        queue.push_back(w);
      }
    }
    if (!seen[y]) return std::nullopt;
    std::vector<std::size_t> out;
    for (auto v = y; v != x; v = parent[v]) out.push_back(v);
    out.push_back(x);
    std::reverse(out.begin(), out.end());
    return out;
  }

  std::vector<std::vector<bool>> reachability() const {
    std::vector<std::vector<bool>> reach(n_, std::vector<bool>(n_, false));
    for (std::size_t x = 0; x < n_; ++x) {
      std::deque<std::size_t> queue{x};
      reach[x][x] = true;
      while (!queue.empty()) {
        const auto v = queue.front();
        queue.pop_front();
        for (std::size_t w = 0; w < n_; ++w) {
          if (!reach[x][w] && fd(v, w)) {
            reach[x][w] = true;
            queue.push_back(w);
          }
        }
      }
    }
    return reach;
  }

  // Reverse breadth-first search from the sink for target y. dist counts the
  // (x_i, c_i) pairs left on the chain; next is the successor pair or kNone
  // for the sink.
  struct ChainSearch {
    std::vector<std::size_t> witnesses;
    std::vector<std::size_t> dist;
    std::vector<std::size_t> next;
  };

  ChainSearch chain_search(std::size_t y) const {
    ChainSearch s;
    for (std::size_t c = 0; c < n_; ++c) {
      if (fd(c, y)) s.witnesses.push_back(c);
    }
    s.dist.assign(n_ * n_, 0);
    s.next.assign(n_ * n_, kNone);
    std::deque<std::size_t> queue;
    for (std::size_t a = 0; a < n_; ++a) {
      if (!fd(a, y)) continue;
      for (auto c : s.witnesses) {
        if (!ctx(a, c, y)) continue;
        s.dist[a * n_ + c] = 1;
        queue.push_back(a * n_ + c);
      }
    }
    while (!queue.empty()) {
      const auto node = queue.front();
      queue.pop_front();
      const auto b = node / n_;
      const auto c2 = node % n_;
      for (std::size_t a = 0; a < n_; ++a) {
        if (!fd(a, b)) continue;
        for (auto c1 : s.witnesses) {
          const auto pred = a * n_ + c1;
          if (s.dist[pred] != 0) continue;
          if (!ctx(a, c1, b) || !ctx(c1, b, c2) || !ctx(c1, c2, y)) continue;
          s.dist[pred] = s.dist[node] + 1;
          s.next[pred] = node;
          queue.push_back(pred);
        }
      }
    }
    return s;
  }

  // Shortest chain from x; n - 1 = number of pairs must not exceed
  // max_length - 1 when max_length > 0.
  std::optional<Justification> chain_from(const ChainSearch& s, std::size_t x, std::size_t y,
                                          std::size_t max_length) const {
    std::size_t best = kNone;
    for (auto c : s.witnesses) {
      const auto d = s.dist[x * n_ + c];
      if (d == 0 || !ctx(x, c, y)) continue;
      if (max_length > 0 && d + 1 > max_length) continue;
      if (best == kNone || d < s.dist[best]) best = x * n_ + c;
    }
    if (best == kNone) return std::nullopt;
    Justification j{RuleName::Chain, {}, {}, {}};
    for (auto node = best; node != kNone; node = s.next[node]) {
      j.xs.push_back(node / n_);
      j.cs.push_back(node % n_);
    }
    j.xs.push_back(y);
    return j;
  }

  // Runs passes until no rule adds a dependency. New dependencies found in a
  // pass only become usable in the next one, so justifications are
  // well-founded.
  void saturate(bool with_chain) {
    for (;;) {
      std::vector<std::pair<std::pair<std::size_t, std::size_t>, Justification>> found;
      std::vector<bool> taken(n_ * n_, false);
      const auto reach = reachability();
      for (std::size_t x = 0; x < n_; ++x) {
        for (std::size_t y = 0; y < n_; ++y) {
          if (x == y || fd(x, y) || !reach[x][y] || !fd(y, x)) continue;
          found.push_back({{x, y}, Justification{RuleName::Cycle, *path(x, y), {}, {}}});
          taken[x * n_ + y] = true;
        }
      }
      if (with_chain) {
        for (std::size_t y = 0; y < n_; ++y) {
          const auto search = chain_search(y);
          for (std::size_t x = 0; x < n_; ++x) {
            if (x == y || fd(x, y) || taken[x * n_ + y]) continue;
            if (auto j = chain_from(search, x, y, 0)) found.push_back({{x, y}, std::move(*j)});
          }
        }
      }
      if (found.empty()) return;
      for (auto& [pair, j] : found) {
        fd_[pair.first * n_ + pair.second] = 1;
        just_.emplace(pair, std::move(j));
      }
    }
  }

 private:
  VarSet names_;
  std::size_t n_ = 0;
  std::vector<unsigned char> ctx_;
  std::vector<unsigned char> fd_;
  std::vector<unsigned char> premise_;
  std::map<std::pair<std::size_t, std::size_t>, Justification> just_;
};

class TraceBuilder {
 public:
  TraceBuilder(const UnaryEngine& engine, std::span<const FD> sigma)
      : engine_(engine), sigma_(sigma.begin(), sigma.end()) {}

  std::size_t unary(std::size_t a, std::size_t b) {
    const FD fd = FD::unary(engine_.name(a), engine_.name(b));
    if (auto it = memo_.find(fd); it != memo_.end()) return it->second;
    if (a == b) return push({fd, sigma_.count(fd) ? RuleName::Premise : RuleName::Reflexivity, {}, {}});
    if (engine_.premise(a, b)) return push({fd, RuleName::Premise, {}, {}});
    const auto& j = engine_.justifications().at({a, b});
    std::vector<std::size_t> ante;
    if (j.rule == RuleName::Cycle) {
      for (std::size_t i = 0; i + 1 < j.path.size(); ++i) ante.push_back(unary(j.path[i], j.path[i + 1]));
      ante.push_back(unary(b, a));
      return push({fd, RuleName::Cycle, std::move(ante), {}});
    }
    const auto& xs = j.xs;
    const auto& cs = j.cs;
    const std::size_t n = xs.size();
    const std::size_t y = xs.back();
    for (std::size_t i = 0; i + 1 < n; ++i) ante.push_back(unary(xs[i], xs[i + 1]));
    for (auto c : cs) ante.push_back(unary(c, y));
    ante.push_back(context({xs[0], cs[0], y}));
    for (std::size_t i = 0; i + 1 < n; ++i) {
      ante.push_back(context({xs[i], cs[i], xs[i + 1]}));
      if (i + 1 < n - 1) ante.push_back(context({cs[i], xs[i + 1], cs[i + 1]}));
    }
    for (std::size_t i = 0; i + 2 < n; ++i) ante.push_back(context({cs[i], cs[i + 1], y}));
    std::vector<std::size_t> unique;
    for (auto k : ante) {
      if (std::find(unique.begin(), unique.end(), k) == unique.end()) unique.push_back(k);
    }
    ante = std::move(unique);
    ChainInstance inst;
    for (auto v : xs) inst.xs.push_back(engine_.name(v));
    for (auto v : cs) inst.cs.push_back(engine_.name(v));
    return push({fd, RuleName::Chain, std::move(ante), std::move(inst)});
  }

  DerivationTrace finish() { return DerivationTrace{std::move(steps_)}; }

 private:
  std::size_t context(std::initializer_list<std::size_t> members) {
    std::vector<Variable> names;
    for (auto v : members) names.push_back(engine_.name(v));
    const FD cd = FD::cd(std::move(names));
    if (auto it = memo_.find(cd); it != memo_.end()) return it->second;
    return push({cd, sigma_.count(cd) ? RuleName::Premise : RuleName::Reflexivity, {}, {}});
  }

  std::size_t push(TraceStep step) {
    memo_.emplace(step.fd, steps_.size());
    steps_.push_back(std::move(step));
    return steps_.size() - 1;
  }

  const UnaryEngine& engine_;
  std::set<FD> sigma_;
  std::map<FD, std::size_t> memo_;
  std::vector<TraceStep> steps_;
};

const FD* covering_cd(std::span<const FD> sigma, const FD& goal) {
  VarSet all = goal.vars();
  for (const auto& fd : sigma) all = unite(all, fd.vars());
  for (const auto& fd : sigma) {
    if (fd.is_cd() && is_subset(all, fd.lhs)) return &fd;
  }
  return nullptr;
}

Derivation derive_in_single_context(std::span<const FD> sigma, const FD& goal, RuleSet rules) {
  if (!covering_cd(sigma, goal)) {
    throw UnsupportedError("rule set '" + std::string(rule_set_name(rules)) +
                           "' needs a CD covering every variable of the premises and the goal");
  }
  Derivation out;
  const VarSet closure = classical_closure(sigma, goal.lhs);
  if (!is_subset(goal.rhs, closure)) return out;
  out.derivable = true;

  std::vector<TraceStep> steps;
  std::map<FD, std::size_t> memo;
  auto push = [&](TraceStep step) {
    if (auto it = memo.find(step.fd); it != memo.end() && step.rule != RuleName::Transitivity &&
                                      step.rule != RuleName::Chain) {
      return it->second;
    }
    memo.emplace(step.fd, steps.size());
    steps.push_back(std::move(step));
    return steps.size() - 1;
  };
  // X -> Y and Y -> Z give X -> Z; Nra needs the CD on X Y Z first.
  auto compose = [&](std::size_t first, std::size_t second) {
    const FD& a = steps[first].fd;
    const FD& b = steps[second].fd;
    const FD result = FD::make(a.lhs, b.rhs);
    if (rules == RuleSet::Classical) return push({result, RuleName::Transitivity, {first, second}, {}});
    const FD cd = FD::cd(unite(unite(a.lhs, a.rhs), b.rhs));
    const auto cd_step = push({cd, RuleName::Reflexivity, {}, {}});
    return push({result, RuleName::Chain, {first, second, cd_step}, {}});
  };

  if (is_reflexive(goal)) {
    push({goal, RuleName::Reflexivity, {}, {}});
    return {true, DerivationTrace{std::move(steps)}};
  }
  VarSet current = goal.lhs;
  std::optional<std::size_t> reach;
  while (!is_subset(goal.rhs, current)) {
    const FD* next = nullptr;
    for (const auto& fd : sigma) {
      if (is_subset(fd.lhs, current) && !is_subset(fd.rhs, current)) {
        next = &fd;
        break;
      }
    }
    const auto premise = push({*next, RuleName::Premise, {}, {}});
    const VarSet grown = unite(current, next->rhs);
    const auto widened = push({FD::make(current, grown), RuleName::Augmentation, {premise}, {}});
    reach = reach ? compose(*reach, widened) : widened;
    current = grown;
  }
  if (current != goal.rhs) {
    const auto narrow = push({FD::make(current, goal.rhs), RuleName::Reflexivity, {}, {}});
    compose(*reach, narrow);
  }
  out.trace = DerivationTrace{std::move(steps)};
  return out;
}

std::string rule_label(const TraceStep& step) {
  auto with_refs = [&](const char* name) {
    std::string s = name;
    s += '(';
    for (std::size_t i = 0; i < step.antecedents.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(step.antecedents[i] + 1);
    }
    return s + ')';
  };
  switch (step.rule) {
    case RuleName::Premise: return "premise";
    case RuleName::Reflexivity: return "reflexivity";
    case RuleName::Augmentation: return with_refs("augmentation");
    case RuleName::Transitivity: return with_refs("transitivity");
    case RuleName::Cycle: return with_refs("cycle");
    case RuleName::Chain: return with_refs("chain");
  }
  return "?";
}

bool rule_allowed(RuleName rule, RuleSet rules) {
  switch (rule) {
    case RuleName::Premise:
    case RuleName::Reflexivity: return true;
    case RuleName::Cycle: return rules == RuleSet::Cr || rules == RuleSet::Full;
    case RuleName::Chain: return rules == RuleSet::Full || rules == RuleSet::Nra;
    case RuleName::Augmentation: return rules == RuleSet::Classical || rules == RuleSet::Nra;
    case RuleName::Transitivity: return rules == RuleSet::Classical;
  }
  return false;
}

std::optional<std::string> check_unary_chain(const TraceStep& step, const std::vector<TraceStep>& steps) {
  const auto& inst = *step.chain;
  const std::size_t n = inst.xs.size();
  if (n < 2 || inst.cs.size() != n - 1) return "malformed chain instance";
  if (!(step.fd == FD::unary(inst.xs.front(), inst.xs.back()))) return "chain conclusion is not x_1 -> x_n";
  std::set<FD> available;
  for (auto a : step.antecedents) available.insert(steps[a].fd);
  std::vector<FD> needed;
  const auto& y = inst.xs.back();
  for (std::size_t i = 0; i + 1 < n; ++i) needed.push_back(FD::unary(inst.xs[i], inst.xs[i + 1]));
  for (const auto& c : inst.cs) needed.push_back(FD::unary(c, y));
  needed.push_back(FD::cd({inst.xs[0], inst.cs[0], y}));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    needed.push_back(FD::cd({inst.xs[i], inst.cs[i], inst.xs[i + 1]}));
    if (i + 2 < n) needed.push_back(FD::cd({inst.cs[i], inst.xs[i + 1], inst.cs[i + 1]}));
  }
  for (std::size_t i = 0; i + 2 < n; ++i) needed.push_back(FD::cd({inst.cs[i], inst.cs[i + 1], y}));
  for (const auto& fd : needed) {
    if (!available.count(fd)) return "chain premise '" + fd.to_string() + "' is not among the antecedents";
  }
  return std::nullopt;
}

}  // namespace

bool cycle_rule_derives(std::span<const FD> sigma, const Variable& x, const Variable& y) {
  if (x == y) return true;
  UnaryEngine engine(sigma, make_varset({x, y}));
  const auto ix = engine.index(x);
  const auto iy = engine.index(y);
  return engine.fd(iy, ix) && engine.path(ix, iy).has_value();
}

std::optional<ChainInstance> find_chain_instance(std::span<const FD> sigma, const Variable& x, const Variable& y,
                                                 std::size_t max_length) {
  UnaryEngine engine(sigma, make_varset({x, y}));
  const auto ix = engine.index(x);
  const auto iy = engine.index(y);
  const auto search = engine.chain_search(iy);
  auto j = engine.chain_from(search, ix, iy, max_length);
  if (!j) {
    // {x, y} itself is a context; only the degenerate instance x -> y with
    // c_1 = y can use it, and that needs x -> y already.
    if (x != y && engine.fd(ix, iy) && (max_length == 0 || max_length >= 2)) return ChainInstance{{x, y}, {y}};
    if (x == y) return ChainInstance{{x, x}, {x}};
    return std::nullopt;
  }
  ChainInstance out;
  for (auto v : j->xs) out.xs.push_back(engine.name(v));
  for (auto v : j->cs) out.cs.push_back(engine.name(v));
  return out;
}

bool chain_rule_derives(std::span<const FD> sigma, const Variable& x, const Variable& y, std::size_t max_length) {
  return find_chain_instance(sigma, x, y, max_length).has_value();
}

std::vector<FD> reflexivity_expand(std::span<const FD> sigma) {
  std::set<FD> out(sigma.begin(), sigma.end());
  for (const auto& theta : sigma) {
    const VarSet vars = theta.vars();
    const std::size_t k = vars.size();
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i; j < k; ++j) {
        for (std::size_t l = j; l < k; ++l) {
          const VarSet sub = make_varset({vars[i], vars[j], vars[l]});
          out.insert(FD::cd(sub));
          for (const auto& v : sub) out.insert(FD::make(sub, {v}));
        }
      }
    }
  }
  return {out.begin(), out.end()};
}

std::set<FD> derivation_closure(std::span<const FD> sigma, RuleSet rules) {
  if (rules != RuleSet::Cr && rules != RuleSet::Full) {
    throw UnsupportedError("derivation_closure supports the cr and full rule sets");
  }
  require_unary_fragment(sigma);
  UnaryEngine engine(sigma, {});
  engine.saturate(rules == RuleSet::Full);
  std::set<FD> out;
  for (std::size_t a = 0; a < engine.size(); ++a) {
    for (std::size_t b = 0; b < engine.size(); ++b) {
      if (engine.fd(a, b)) out.insert(FD::unary(engine.name(a), engine.name(b)));
    }
  }
  return out;
}

Derivation derives(std::span<const FD> sigma, const FD& goal, RuleSet rules) {
  if (rules == RuleSet::Classical || rules == RuleSet::Nra) return derive_in_single_context(sigma, goal, rules);
  require_unary_fragment(sigma);
  if (is_reflexive(goal)) {
    return {true, DerivationTrace{{TraceStep{goal, RuleName::Reflexivity, {}, {}}}}};
  }
  if (!goal.is_unary()) throw UnsupportedError("rule set '" + std::string(rule_set_name(rules)) +
                                               "' decides unary goals only, got '" + goal.to_string() + "'");
  UnaryEngine engine(sigma, goal.vars());
  engine.saturate(rules == RuleSet::Full);
  const auto x = engine.index(goal.lhs[0]);
  const auto y = engine.index(goal.rhs[0]);
  if (!engine.fd(x, y)) return {};
  TraceBuilder builder(engine, sigma);
  builder.unary(x, y);
  return {true, builder.finish()};
}

std::string DerivationTrace::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    out += std::to_string(i + 1) + ". " + steps[i].fd.to_string() + "  [" + rule_label(steps[i]) + "]\n";
  }
  return out;
}

std::optional<std::string> check_trace(const DerivationTrace& trace, std::span<const FD> sigma, const FD& goal,
                                       RuleSet rules) {
  if (trace.steps.empty()) return "empty trace";
  if (!(trace.steps.back().fd == goal)) return "last step is not the goal";
  std::vector<VarSet> contexts{goal.vars()};
  for (const auto& fd : sigma) contexts.push_back(fd.vars());
  const std::set<FD> premises(sigma.begin(), sigma.end());

  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& step = trace.steps[i];
    const std::string where = "step " + std::to_string(i + 1) + ": ";
    if (!rule_allowed(step.rule, rules)) return where + "rule not in the rule set";
    for (auto a : step.antecedents) {
      if (a >= i) return where + "refers forward";
    }
    const VarSet vars = step.fd.vars();
    if (std::none_of(contexts.begin(), contexts.end(), [&](const VarSet& c) { return is_subset(vars, c); })) {
      return where + "introduces a new context {" + join(vars, ",") + "}";
    }
    auto ante = [&](std::size_t k) -> const FD& { return trace.steps[step.antecedents[k]].fd; };
    switch (step.rule) {
      case RuleName::Premise:
        if (!premises.count(step.fd)) return where + "not a premise";
        break;
      case RuleName::Reflexivity:
        if (!is_reflexive(step.fd)) return where + "not a reflexivity instance";
        break;
      case RuleName::Augmentation: {
        if (step.antecedents.size() != 1) return where + "augmentation takes one antecedent";
        const FD& base = ante(0);
        const VarSet z = intersect(step.fd.lhs, step.fd.rhs);
        if (unite(base.lhs, z) != step.fd.lhs || unite(base.rhs, z) != step.fd.rhs) {
          return where + "not an augmentation of step " + std::to_string(step.antecedents[0] + 1);
        }
        break;
      }
      case RuleName::Transitivity:
        if (step.antecedents.size() != 2 || ante(0).rhs != ante(1).lhs || ante(0).lhs != step.fd.lhs ||
            ante(1).rhs != step.fd.rhs) {
          return where + "not a transitivity instance";
        }
        break;
      case RuleName::Cycle: {
        const auto k = step.antecedents.size();
        if (k == 0 || !step.fd.is_unary()) return where + "malformed cycle step";
        for (std::size_t j = 0; j < k; ++j) {
          if (!ante(j).is_unary()) return where + "cycle antecedent is not unary";
          if (j + 1 < k && ante(j).rhs != ante(j + 1).lhs) return where + "cycle antecedents do not chain";
        }
        if (ante(0).lhs != step.fd.lhs || ante(k - 1).rhs != step.fd.lhs || ante(k - 1).lhs != step.fd.rhs) {
          return where + "conclusion is not the inverted cycle";
        }
        break;
      }
      case RuleName::Chain: {
        if (step.chain) {
          if (auto problem = check_unary_chain(step, trace.steps)) return where + *problem;
          break;
        }
        // Contextual transitivity over sets: X -> Y, Y -> Z, CD XYZ.
        if (step.antecedents.size() != 3 || ante(0).rhs != ante(1).lhs || ante(0).lhs != step.fd.lhs ||
            ante(1).rhs != step.fd.rhs || !ante(2).is_cd() ||
            ante(2).lhs != unite(unite(ante(0).lhs, ante(0).rhs), ante(1).rhs)) {
          return where + "not a contextual transitivity instance";
        }
        break;
      }
    }
  }
  return std::nullopt;
}

}  // namespace ctxfam
