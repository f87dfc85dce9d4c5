#include <doctest.h>

#include <random>

#include "ctxfam/errors.hpp"
#include "ctxfam/family.hpp"
#include "ctxfam/lp.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace ctxfam;

namespace {

std::vector<KRelation> teaching_relations(MonoidKind kind, bool drop_cs_bob = false, bool drop_cs_alice = false) {
  const auto one = MonoidValue::one(kind);
  KRelation st(make_varset({"Student", "Teacher"}), kind);
  st.add_row({"Alice", "Charlie"}, one);
  st.add_row({"Bob", "David"}, one);
  KRelation tc(make_varset({"Course", "Teacher"}), kind);
  tc.add_row({"Math", "Charlie"}, one);
  tc.add_row({"CS", "David"}, one);
  KRelation cs(make_varset({"Course", "Student"}), kind);
  cs.add_row({"Math", "Alice"}, one);
  if (!drop_cs_alice) cs.add_row({"CS", "Alice"}, one);
  if (!drop_cs_bob) cs.add_row({"CS", "Bob"}, one);
  return {st, tc, cs};
}

ContextSet teaching_contexts() {
  return ContextSet({make_varset({"Student", "Teacher"}), make_varset({"Course", "Teacher"}),
                     make_varset({"Course", "Student"})});
}

}  // namespace

TEST_CASE("context sets") {
  const auto cs = teaching_contexts();
  CHECK(cs.contains(make_varset({"Teacher"})));
  CHECK(cs.contains({}));
  CHECK_FALSE(cs.contains(make_varset({"Course", "Student", "Teacher"})));
  CHECK(cs.covering(make_varset({"Course"})) == 1u);
  CHECK_THROWS_AS(ContextSet({make_varset({"x", "y"}), make_varset({"x"})}), ContractError);
  const auto any = ContextSet::from_any({make_varset({"x"}), make_varset({"x", "y"}), make_varset({"y", "z"}),
                                        make_varset({"x", "y"})});
  CHECK(any.size() == 2);
  CHECK(any[0] == make_varset({"x", "y"}));
}

TEST_CASE("local consistency") {
  auto ok = check_local_consistency(teaching_contexts(), MonoidKind::Boolean, teaching_relations(MonoidKind::Boolean));
  REQUIRE(std::holds_alternative<ContextualFamily>(ok));

  // Dropping (CS, Bob) leaves Bob without a course.
  auto bad =
      check_local_consistency(teaching_contexts(), MonoidKind::Boolean, teaching_relations(MonoidKind::Boolean, true));
  REQUIRE(std::holds_alternative<ConsistencyViolation>(bad));
  const auto& v = std::get<ConsistencyViolation>(bad);
  CHECK(v.first == 0);
  CHECK(v.second == 2);
  CHECK(v.overlap == make_varset({"Student"}));
  CHECK(v.row == Tuple{"Bob"});
  // Hand oracle: Student marginals {Alice, Bob} vs {Alice}.
  std::vector<oracle::Table> tables;
  for (const auto& r : teaching_relations(MonoidKind::Boolean, true)) tables.push_back(oracle::table_of(r));
  CHECK_FALSE(oracle::pairwise_consistent(tables, true));

  std::vector<KRelation> empty;
  const auto contexts = teaching_contexts();
  for (const auto& c : contexts.maximal()) empty.emplace_back(c, MonoidKind::Natural);
  CHECK(std::holds_alternative<ContextualFamily>(check_local_consistency(teaching_contexts(), MonoidKind::Natural, empty)));

  CHECK_THROWS_AS(make_family(teaching_contexts(), MonoidKind::Natural, teaching_relations(MonoidKind::Natural)),
                  ContractError);
  auto rels = teaching_relations(MonoidKind::Boolean);
  rels.pop_back();
  CHECK_THROWS_AS(make_family(teaching_contexts(), MonoidKind::Boolean, rels), ContractError);
}

TEST_CASE("relation_at marginalises the covering relation") {
  const auto f = fixtures::teaching();
  const auto teacher = f.relation_at(make_varset({"Teacher"}));
  CHECK(teacher.size() == 2);
  CHECK_THROWS_AS(f.relation_at(make_varset({"Course", "Student", "Teacher"})), ContextError);
  CHECK(f.assignment_count() == 7);
}

TEST_CASE("global consistency") {
  const auto f = fixtures::teaching();
  CHECK_FALSE(check_global_consistency(f).consistent);
  CHECK_FALSE(oracle::globally_consistent_boolean(f));

  KRelation global(make_varset({"x", "y", "z"}), MonoidKind::Natural);
  global.add_row({"0", "0", "1"}, MonoidValue::natural(2));
  global.add_row({"1", "0", "0"}, MonoidValue::natural(1));
  const auto projected = project_family(global, ContextSet({make_varset({"x", "y"}), make_varset({"y", "z"})}));
  const auto g = check_global_consistency(projected);
  REQUIRE(g.consistent);
  CHECK(project_family(*g.witness, projected.contexts()) == projected);

  const auto minus = make_family(teaching_contexts(), MonoidKind::Natural, teaching_relations(MonoidKind::Natural, false, true));
  const auto r = check_global_consistency(minus);
  REQUIRE(r.consistent);
  CHECK(project_family(*r.witness, minus.contexts()) == minus);
  CHECK(oracle::globally_consistent_boolean(family_support(minus)));
}

TEST_CASE("global consistency agrees with brute force on random Boolean families") {
  std::mt19937_64 rng(11);
  int checked = 0;
  for (int i = 0; i < 120; ++i) {
    const auto n = 3 + rng() % 2;
    const auto f = fixtures::random_boolean_family(fixtures::cycle_contexts(n), rng, 2, 3);
    if (!f) continue;
    ++checked;
    CHECK(check_global_consistency(*f).consistent == oracle::globally_consistent_boolean(*f));
  }
  CHECK(checked > 50);
}

TEST_CASE("supports, sums and scalars") {
  const auto ext = fixtures::teaching_extended();
  const auto one_n = MonoidValue::one(MonoidKind::Natural);
  auto scaled = scalar_family(one_n, fixtures::teaching());
  CHECK(std::holds_alternative<ConsistencyViolation>(scaled));
  CHECK(std::holds_alternative<ContextualFamily>(scalar_family(MonoidValue::boolean(true), fixtures::teaching())));

  const auto q = MonoidValue::rational(mpq_class(1, 2));
  KRelation half(make_varset({"x"}), MonoidKind::Rational);
  half.add_row({"0"}, q);
  half.add_row({"1"}, q);
  const auto hf = make_family(ContextSet({make_varset({"x"})}), MonoidKind::Rational, {half});
  CHECK(family_support(hf).relation(0).size() == 2);
  CHECK(family_support(ext) == ext);

  std::vector<KRelation> zeros;
  for (const auto& c : hf.contexts().maximal()) zeros.emplace_back(c, MonoidKind::Rational);
  const auto zero = make_family(hf.contexts(), MonoidKind::Rational, zeros);
  CHECK(add_families(hf, zero) == hf);
  CHECK(add_families(hf, hf).relation(0).annotation({"0"}) == MonoidValue::rational(1));
  CHECK_THROWS_AS(add_families(hf, ext), ContractError);
}

TEST_CASE("family satisfaction") {
  const auto f = fixtures::teaching();
  CHECK(family_satisfies(f, FD::unary("Teacher", "Course")));
  CHECK(family_satisfies(f, FD::unary("Student", "Teacher")));
  CHECK_FALSE(family_satisfies(f, FD::unary("Course", "Student")));
  CHECK(family_satisfies(f, FD::unary("Course", "Student")) == oracle::satisfies(f, FD::unary("Course", "Student")));
  CHECK_THROWS_AS(family_satisfies(f, FD::cd(make_varset({"Course", "Student", "Teacher"}))), ContextError);
}

TEST_CASE("exact simplex") {
  // x + y = 1, x - y = 0 -> (1/2, 1/2).
  lp::EqualitySystem s(2);
  s.add_row({1, 1}, 1);
  s.add_row({1, -1}, 0);
  const auto x = lp::solve_nonnegative(s);
  REQUIRE(x);
  CHECK((*x)[0] == mpq_class(1, 2));
  CHECK(!lp::solve_nonnegative_integer(s));

  lp::EqualitySystem t(2);
  t.add_row({1, 1}, -1);
  CHECK(!lp::solve_nonnegative(t));

  // 2x + 3y = 7 has the integral point (2, 1).
  lp::EqualitySystem u(2);
  u.add_row({2, 3}, 7);
  const auto z = lp::solve_nonnegative_integer(u);
  REQUIRE(z);
  CHECK(2 * (*z)[0] + 3 * (*z)[1] == 7);
  CHECK(lp::denominator_lcm({mpq_class(1, 4), mpq_class(5, 6)}) == 12);
}
