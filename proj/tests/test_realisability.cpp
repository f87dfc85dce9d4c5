#include <doctest.h>

#include <random>
#include <set>

#include "ctxfam/errors.hpp"
#include "ctxfam/realisability.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace ctxfam;

namespace {

CycleOrdering ordering_of(const ContextualFamily& f) { return std::get<CycleOrdering>(classify_chordless_cycle(f.contexts())); }

std::string value_of(const OverlapProjectionGraph& g, std::size_t v) {
  const auto label = g.vertex_label(v);
  return label.substr(label.find(':') + 1);
}

std::size_t edge_between(const OverlapProjectionGraph& g, const std::string& from, const std::string& to) {
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    if (value_of(g, g.edges()[e].from) == from && value_of(g, g.edges()[e].to) == to) return e;
  }
  FAIL("no such edge");
  return 0;
}

std::vector<std::string> cycle_values(const OverlapProjectionGraph& g, const std::vector<std::size_t>& cycle) {
  std::vector<std::string> out;
  for (auto e : cycle) out.push_back(value_of(g, g.edges()[e].from));
  return out;
}

ContextualFamily triangle() {
  return parse_family("monoid B\ncontext x y\n0 0\ncontext y z\n0 0\ncontext x z\n0 0\n");
}

}  // namespace

TEST_CASE("chordless cycle classification") {
  const auto ord = classify_chordless_cycle(fixtures::teaching().contexts());
  REQUIRE(std::holds_alternative<CycleOrdering>(ord));
  CHECK(std::get<CycleOrdering>(ord).length() == 3);
  CHECK(std::holds_alternative<NotChordless>(classify_chordless_cycle(fixtures::five_contexts().contexts())));
  CHECK(std::holds_alternative<NotChordless>(
      classify_chordless_cycle(ContextSet({make_varset({"x", "y"}), make_varset({"y", "z"})}))));
  CHECK(std::holds_alternative<CycleOrdering>(classify_chordless_cycle(fixtures::cycle_contexts(6))));
}

TEST_CASE("overlap projection graph of the teaching family") {
  const auto f = fixtures::teaching();
  const auto g = build_opg(f, ordering_of(f));
  CHECK(g.vertices().size() == 6);
  CHECK(g.edges().size() == 7);
  // Cyclically n-partite: edges go from boundary i-1 to boundary i.
  for (const auto& e : g.edges()) {
    const auto n = g.ordering().length();
    CHECK(g.vertices()[e.from].boundary == (e.position + n - 1) % n);
    CHECK(g.vertices()[e.to].boundary == e.position);
  }
  const auto cover = has_edge_cycle_cover(g);
  CHECK_FALSE(cover.covered);
  REQUIRE(cover.uncovered.size() == 1);
  CHECK(cover.uncovered[0] == edge_between(g, "CS", "Alice"));
  CHECK_THROWS_AS(find_simple_cycle_through(g, cover.uncovered[0]), ContractError);

  const auto c = find_simple_cycle_through(g, edge_between(g, "Bob", "David"));
  const auto vals = cycle_values(g, c);
  CHECK(std::set<std::string>(vals.begin(), vals.end()) == std::set<std::string>{"Bob", "David", "CS"});
  CHECK(to_dot(g) == to_dot(build_opg(f, ordering_of(f))));
}

TEST_CASE("extension covers every edge") {
  const auto f = fixtures::teaching_extended();
  const auto g = build_opg(f, ordering_of(f));
  CHECK(has_edge_cycle_cover(g).covered);
  const auto c = find_simple_cycle_through(g, edge_between(g, "CS", "Alice"));
  CHECK(c.size() == 6);
  const auto vals = cycle_values(g, c);
  CHECK(std::set<std::string>(vals.begin(), vals.end()) ==
        std::set<std::string>{"CS", "Alice", "Charlie", "Math", "Bob", "David"});

  const auto sub = cycle_family(f, g, c);
  CHECK(is_simply_cyclic(sub, ordering_of(f)));
  const auto half = lift_uniform(sub, ordering_of(f), MonoidValue::rational(mpq_class(1, 2)));
  for (const auto& r : half.relations()) {
    CHECK(r.size() == 2);
    CHECK(r.total() == MonoidValue::rational(1));
  }
  CHECK_THROWS_AS(lift_uniform(sub, ordering_of(f), MonoidValue::zero(MonoidKind::Rational)), ContractError);
  CHECK_THROWS_AS(lift_uniform(f, ordering_of(f), MonoidValue::one(MonoidKind::Natural)), ContractError);
}

TEST_CASE("graph special cases") {
  std::vector<KRelation> empty;
  const auto cs = fixtures::cycle_contexts(3);
  for (const auto& c : cs.maximal()) empty.emplace_back(c, MonoidKind::Boolean);
  const auto none = make_family(cs, MonoidKind::Boolean, empty);
  const auto g0 = build_opg(none, ordering_of(none));
  CHECK(g0.vertices().empty());
  CHECK(g0.edges().empty());
  CHECK(decompose_cycles(make_family(cs, MonoidKind::Rational,
                                     {KRelation(cs[0], MonoidKind::Rational), KRelation(cs[1], MonoidKind::Rational),
                                      KRelation(cs[2], MonoidKind::Rational)}))
            .empty());

  // Two disjoint triangles over {0, 1}.
  const auto two = parse_family("monoid B\ncontext v0 v1\n0 0\n1 1\ncontext v1 v2\n0 0\n1 1\ncontext v0 v2\n0 0\n1 1\n");
  const auto g = build_opg(two, ordering_of(two));
  CHECK(g.vertices().size() == 6);
  CHECK(g.edges().size() == 6);
  CHECK(has_edge_cycle_cover(g).covered);
  for (std::size_t e = 0; e < g.edges().size(); ++e) CHECK(find_simple_cycle_through(g, e).size() == 3);

  const auto t = triangle();
  const auto tg = build_opg(t, ordering_of(t));
  CHECK(find_simple_cycle_through(tg, 0).size() == 3);
  const auto lifted = lift_uniform(t, ordering_of(t), MonoidValue::natural(1));
  for (const auto& r : lifted.relations()) CHECK(r.size() == 1);
}

TEST_CASE("realisability over chordless cycles") {
  CHECK_FALSE(realisable_chordless(fixtures::teaching(), MonoidKind::Natural));
  CHECK(realisable_chordless(fixtures::teaching_extended(), MonoidKind::Natural));
  CHECK(realisable_chordless(triangle(), MonoidKind::Rational));
  CHECK_THROWS_AS(realisable_chordless(fixtures::teaching(), MonoidKind::Boolean), UnsupportedError);
  CHECK_THROWS_AS(realisable_chordless(fixtures::five_contexts(), MonoidKind::Rational), UnsupportedError);

  const auto ext = fixtures::teaching_extended();
  const auto r = realise(ext, MonoidKind::Natural, MonoidValue::natural(1));
  CHECK(r.kind() == MonoidKind::Natural);
  CHECK(family_support(r) == ext);
  CHECK_THROWS_AS(realise(fixtures::teaching(), MonoidKind::Natural, MonoidValue::natural(1)), ContractError);

  const auto third = realise(triangle(), MonoidKind::Rational, MonoidValue::rational(mpq_class(1, 3)));
  for (const auto& rel : third.relations()) CHECK(natural_leq(MonoidValue::rational(mpq_class(1, 3)), rel.total()));
}

TEST_CASE("cycle decomposition round-trips") {
  const auto ext = fixtures::teaching_extended();
  const auto q = realise(ext, MonoidKind::Rational, MonoidValue::rational(1));
  const auto parts = decompose_cycles(q);
  CHECK_FALSE(parts.empty());
  for (const auto& p : parts) {
    CHECK_FALSE(p.weight.is_zero());
    CHECK(is_simply_cyclic(p.cycle, ordering_of(ext)));
  }
  CHECK(recompose_cycles(parts, q.contexts(), MonoidKind::Rational) == q);

  const auto t = lift_uniform(triangle(), ordering_of(triangle()), MonoidValue::rational(1));
  const auto single = decompose_cycles(t);
  REQUIRE(single.size() == 1);
  CHECK(single[0].weight == MonoidValue::rational(1));
}

TEST_CASE("linear realisability") {
  CHECK_FALSE(realisable_lp(fixtures::five_contexts(), MonoidKind::Rational).feasible);
  CHECK_FALSE(realisable_lp(fixtures::teaching(), MonoidKind::Natural).feasible);
  const auto tri = parse_family("monoid B\ncontext a b\n0 0\n1 1\ncontext b c\n0 0\n0 1\n1 1\ncontext c a\n0 1\n1 0\n");
  const auto lp = realisable_lp(tri, MonoidKind::Natural);
  REQUIRE(lp.feasible);
  CHECK(family_support(*lp.witness) == tri);
  CHECK(lp.witness->kind() == MonoidKind::Natural);
}

TEST_CASE("graph criterion, linear feasibility and enumeration agree on random cycles") {
  std::mt19937_64 rng(5);
  int realisable = 0, total = 0;
  for (int i = 0; i < 150; ++i) {
    const auto n = 3 + rng() % 2;
    const auto f = fixtures::random_boolean_family(fixtures::cycle_contexts(n), rng, 2, 3);
    if (!f) continue;
    ++total;
    const bool graph = realisable_chordless(*f, MonoidKind::Rational);
    const auto lp = realisable_lp(*f, MonoidKind::Rational);
    CHECK(graph == lp.feasible);
    if (f->assignment_count() <= 9) CHECK(graph == oracle::realisable_by_enumeration(*f, 3));
    if (graph) {
      ++realisable;
      const auto r = realise(*f, MonoidKind::Natural, MonoidValue::natural(1));
      CHECK(family_support(r) == *f);
    }
  }
  CHECK(total > 80);
  CHECK(realisable > 10);
  CHECK(realisable < total);
}
