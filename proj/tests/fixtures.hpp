#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "ctxfam/family.hpp"
#include "ctxfam/fd.hpp"
#include "ctxfam/format.hpp"
#include "ctxfam/realisability.hpp"
#include "ctxfam/semantics.hpp"

namespace fixtures {

inline const char* kTeaching = R"(monoid B
context Student Teacher
Alice Charlie
Bob David
context Teacher Course
Charlie Math
David CS
context Course Student
Math Alice
CS Alice
CS Bob
)";

inline const char* kTeachingExtended = R"(monoid B
context Student Teacher
Alice Charlie
Bob David
context Teacher Course
Charlie Math
David CS
context Course Student
Math Alice
CS Alice
CS Bob
Math Bob
)";

inline const char* kFiveContexts = R"(monoid B
context a b
0 0
1 1
context b c
0 0
0 1
1 1
context c a
0 1
1 0
context a bp
0 0
1 1
context bp c
0 0
1 1
)";

inline ctxfam::ContextualFamily teaching() { return ctxfam::parse_family(kTeaching); }
inline ctxfam::ContextualFamily teaching_extended() { return ctxfam::parse_family(kTeachingExtended); }
inline ctxfam::ContextualFamily five_contexts() { return ctxfam::parse_family(kFiveContexts); }

/// Maximal contexts {v0 v1}, {v1 v2}, ..., {v_{n-1} v0}.
inline ctxfam::ContextSet cycle_contexts(std::size_t n) {
  std::vector<ctxfam::VarSet> cs;
  for (std::size_t i = 0; i < n; ++i) {
    cs.push_back(ctxfam::make_varset({"v" + std::to_string(i), "v" + std::to_string((i + 1) % n)}));
  }
  return ctxfam::ContextSet(cs);
}

/// A random locally consistent Boolean family (may be empty-free only).
inline std::optional<ctxfam::ContextualFamily> random_boolean_family(const ctxfam::ContextSet& contexts,
                                                                      std::mt19937_64& rng, std::size_t domain,
                                                                      std::size_t max_rows) {
  return ctxfam::random_satisfying_family({}, contexts, {domain, max_rows}, rng);
}

inline ctxfam::MonoidValue random_positive(std::mt19937_64& rng, ctxfam::MonoidKind kind) {
  std::uniform_int_distribution<int> num(1, 6), den(1, 4);
  switch (kind) {
    case ctxfam::MonoidKind::Boolean: return ctxfam::MonoidValue::boolean(true);
    case ctxfam::MonoidKind::Natural: return ctxfam::MonoidValue::natural(num(rng));
    case ctxfam::MonoidKind::Rational: return ctxfam::MonoidValue::rational(mpq_class(num(rng), den(rng)));
  }
  return ctxfam::MonoidValue::one(kind);
}

/// Sum of random weighted lifts of cycles through random edges of the
/// family's overlap projection graph. The family must cover every edge.
inline ctxfam::ContextualFamily random_cycle_sum(const ctxfam::ContextualFamily& family,
                                                 const ctxfam::CycleOrdering& ordering, ctxfam::MonoidKind kind,
                                                 std::mt19937_64& rng) {
  const auto graph = ctxfam::build_opg(family, ordering);
  std::optional<ctxfam::ContextualFamily> total;
  for (std::size_t e = 0; e < graph.edges().size(); ++e) {
    if (rng() % 2 == 0 && !(e + 1 == graph.edges().size() && !total)) continue;
    const auto cycle = ctxfam::find_simple_cycle_through(graph, e);
    const auto sub = ctxfam::cycle_family(family, graph, cycle);
    auto lifted = ctxfam::lift_uniform(sub, ordering, random_positive(rng, kind));
    total = total ? ctxfam::add_families(*total, lifted) : lifted;
  }
  return *total;
}

inline std::vector<std::string> variables(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::string(1, static_cast<char>('a' + i)));
  return out;
}

/// Random unary FDs between distinct variables plus random CDs on
/// `cd_arity` distinct variables, over the first `n` letters.
inline std::vector<ctxfam::FD> random_sigma(std::mt19937_64& rng, std::size_t n, std::size_t fds, std::size_t cds,
                                            std::size_t cd_arity = 2) {
  const auto vs = variables(n);
  std::vector<ctxfam::FD> out;
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::size_t i = 0; i < fds; ++i) {
    const auto a = pick(rng), b = pick(rng);
    if (a != b) out.push_back(ctxfam::FD::unary(vs[a], vs[b]));
  }
  for (std::size_t i = 0; i < cds && n >= cd_arity; ++i) {
    std::vector<std::string> members = vs;
    std::shuffle(members.begin(), members.end(), rng);
    members.resize(cd_arity);
    out.push_back(ctxfam::FD::cd(ctxfam::make_varset(members)));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace fixtures
