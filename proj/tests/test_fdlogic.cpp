#include <doctest.h>

#include <random>

#include "ctxfam/errors.hpp"
#include "ctxfam/fdlogic.hpp"
#include "ctxfam/format.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace ctxfam;

namespace {

std::vector<FD> fds(const char* text) { return parse_fd_document(text); }

bool has(const std::set<FD>& closure, const char* fd) { return closure.count(parse_fd(fd)) > 0; }

}  // namespace

TEST_CASE("attribute closure") {
  CHECK(classical_closure(fds("x -> y\ny -> z"), make_varset({"x"})) == make_varset({"x", "y", "z"}));
  CHECK(classical_closure({}, make_varset({"x"})) == make_varset({"x"}));
  CHECK(classical_closure(fds("x y -> z"), make_varset({"x"})) == make_varset({"x"}));
}

TEST_CASE("single cycle-rule applications") {
  CHECK(cycle_rule_derives(fds("x -> y\ny -> z\nz -> x"), "x", "z"));
  CHECK_FALSE(cycle_rule_derives(fds("x -> y"), "y", "x"));
  CHECK(cycle_rule_derives(fds("x -> y\ny -> x"), "x", "y"));
  CHECK_FALSE(cycle_rule_derives(fds("x -> y\ny -> z"), "x", "z"));
}

TEST_CASE("single chain-rule applications") {
  CHECK(chain_rule_derives(fds("x -> y\ny -> z\ncd x y z"), "x", "z"));
  CHECK_FALSE(chain_rule_derives(fds("x -> y\ny -> z\ncd x y\ncd y z\ncd x z"), "x", "z"));
  const auto four = fds(R"(x1 -> x2
x2 -> x3
x3 -> x4
c1 -> x4
c2 -> x4
c3 -> x4
cd x1 c1 x4
cd x1 c1 x2
cd c1 x2 c2
cd x2 c2 x3
cd c2 x3 c3
cd x3 c3 x4
cd c1 c2 x4
cd c2 c3 x4)");
  const auto inst = find_chain_instance(four, "x1", "x4");
  REQUIRE(inst);
  CHECK(inst->xs.front() == "x1");
  CHECK(inst->xs.back() == "x4");
  CHECK(inst->cs.size() + 1 == inst->xs.size());
  CHECK(oracle::chain_instance_exists(four, "x1", "x4", 4));
  CHECK_FALSE(chain_rule_derives(four, "x1", "x4", 3) != oracle::chain_instance_exists(four, "x1", "x4", 3));
}

TEST_CASE("chain rule matches direct instantiation") {
  std::mt19937_64 rng(3);
  int positive = 0;
  for (int i = 0; i < 60; ++i) {
    const auto n = 3 + rng() % 3;
    auto sigma = fixtures::random_sigma(rng, n, 2 + rng() % 5, 1 + rng() % 3, 3);
    const auto binary = fixtures::random_sigma(rng, n, 0, rng() % 3, 2);
    sigma.insert(sigma.end(), binary.begin(), binary.end());
    for (const auto& x : fixtures::variables(n)) {
      for (const auto& y : fixtures::variables(n)) {
        if (x == y) continue;
        for (std::size_t len : {2u, 3u, 4u}) {
          const bool mine = chain_rule_derives(sigma, x, y, len);
          CHECK(mine == oracle::chain_instance_exists(sigma, x, y, len));
          positive += mine;
        }
      }
    }
  }
  CHECK(positive > 20);
}

TEST_CASE("contextual transitivity is a chain instance") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 50; ++i) {
    auto vs = fixtures::variables(6);
    std::shuffle(vs.begin(), vs.end(), rng);
    auto sigma = fixtures::random_sigma(rng, 6, 4, 2, 3);
    sigma.push_back(FD::unary(vs[0], vs[1]));
    sigma.push_back(FD::unary(vs[1], vs[2]));
    sigma.push_back(FD::cd(make_varset({vs[0], vs[1], vs[2]})));
    CHECK(chain_rule_derives(sigma, vs[0], vs[2]));
  }
}

TEST_CASE("reflexivity expansion") {
  const auto wxyz = reflexivity_expand(fds("cd w x y z"));
  const std::set<FD> got(wxyz.begin(), wxyz.end());
  for (const char* t : {"cd w x y", "cd w x z", "cd w y z", "cd x y z", "cd w x", "cd y", "w x y -> w"}) {
    CHECK(got.count(parse_fd(t)) == 1);
  }
  CHECK(reflexivity_expand({}).empty());
  const auto xy = reflexivity_expand(fds("cd x y"));
  const std::set<FD> small(xy.begin(), xy.end());
  for (const char* t : {"x -> x", "y -> y", "x y -> x", "x y -> y"}) CHECK(small.count(parse_fd(t)) == 1);
  for (const auto& fd : small) CHECK(is_subset(fd.vars(), make_varset({"x", "y"})));
}

TEST_CASE("derivation closure") {
  const auto cyc = derivation_closure(fds("x -> y\ny -> z\nz -> x\ncd x y\ncd y z\ncd x z"), RuleSet::Cr);
  CHECK(has(cyc, "x -> z"));
  CHECK(has(cyc, "z -> y"));
  CHECK(has(cyc, "y -> x"));
  const auto tr = derivation_closure(fds("x -> y\ny -> z\ncd x y\ncd y z\ncd x z"), RuleSet::Full);
  CHECK_FALSE(has(tr, "x -> z"));
  CHECK(derivation_closure({}, RuleSet::Full).empty());
  for (const auto& fd : derivation_closure(fds("cd x y"), RuleSet::Cr)) CHECK(fd.lhs == fd.rhs);
  CHECK_THROWS_AS(derivation_closure(fds("x y -> z"), RuleSet::Cr), UnsupportedError);
  CHECK_THROWS_AS(derivation_closure(fds("x -> y"), RuleSet::Classical), UnsupportedError);
}

TEST_CASE("cycle closure matches the fixpoint oracle") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 100; ++i) {
    const auto sigma = fixtures::random_sigma(rng, 2 + rng() % 5, rng() % 8, rng() % 3);
    CHECK(derivation_closure(sigma, RuleSet::Cr) == oracle::cycle_closure(sigma));
  }
}

TEST_CASE("derivations and their traces") {
  const auto contextual = fds("x -> y\ny -> z\ncd x y z");
  const auto goal = parse_fd("x -> z");
  const auto d = derives(contextual, goal, RuleSet::Full);
  REQUIRE(d.derivable);
  CHECK(d.trace->steps.back().rule == RuleName::Chain);
  CHECK_FALSE(check_trace(*d.trace, contextual, goal, RuleSet::Full));
  CHECK(check_trace(*d.trace, contextual, goal, RuleSet::Cr));

  const auto binary = fds("x -> y\ny -> z\ncd x y\ncd y z\ncd x z");
  CHECK_FALSE(derives(binary, goal, RuleSet::Full).derivable);
  CHECK_FALSE(derives(binary, goal, RuleSet::Cr).derivable);

  const auto refl = derives({}, parse_fd("x -> x"), RuleSet::Cr);
  REQUIRE(refl.derivable);
  CHECK(refl.trace->to_string() == "1. x -> x  [reflexivity]\n");

  const auto cyc = fds("x -> y\ny -> z\nz -> x");
  const auto c = derives(cyc, goal, RuleSet::Cr);
  REQUIRE(c.derivable);
  CHECK(c.trace->to_string() == "1. x -> y  [premise]\n2. y -> z  [premise]\n3. z -> x  [premise]\n4. x -> z  [cycle(1,2,3)]\n");

  for (auto rules : {RuleSet::Classical, RuleSet::Nra}) {
    const auto r = derives(contextual, goal, rules);
    REQUIRE(r.derivable);
    CHECK_FALSE(check_trace(*r.trace, contextual, goal, rules));
    const auto wide = derives(fds("x -> y\ny -> z w\ncd x y z w"), parse_fd("x -> z w"), rules);
    REQUIRE(wide.derivable);
    CHECK_FALSE(check_trace(*wide.trace, fds("x -> y\ny -> z w\ncd x y z w"), parse_fd("x -> z w"), rules));
    CHECK_THROWS_AS(derives(binary, goal, rules), UnsupportedError);
  }
  CHECK_FALSE(derives(fds("x -> y\ncd x y z"), goal, RuleSet::Classical).derivable);
  CHECK_THROWS_AS(derives(binary, parse_fd("x y -> z"), RuleSet::Cr), UnsupportedError);
}

TEST_CASE("tampered traces are rejected") {
  const auto sigma = fds("x -> y\ny -> z\ncd x y\ncd y z\ncd x z");
  const auto goal = parse_fd("x -> z");
  DerivationTrace fake;
  fake.steps.push_back({parse_fd("x -> y"), RuleName::Premise, {}, {}});
  fake.steps.push_back({parse_fd("y -> z"), RuleName::Premise, {}, {}});
  fake.steps.push_back({goal, RuleName::Transitivity, {0, 1}, {}});
  CHECK(check_trace(fake, sigma, goal, RuleSet::Full));
  // Even classical transitivity may not leave the given contexts.
  fake.steps.insert(fake.steps.begin() + 2, {parse_fd("cd x y z"), RuleName::Reflexivity, {}, {}});
  CHECK(check_trace(fake, sigma, goal, RuleSet::Classical));
  DerivationTrace wrong;
  wrong.steps.push_back({goal, RuleName::Premise, {}, {}});
  CHECK(check_trace(wrong, sigma, goal, RuleSet::Full));
}

TEST_CASE("every derivable unary goal has a replayable trace") {
  std::mt19937_64 rng(33);
  int derived = 0;
  for (int i = 0; i < 40; ++i) {
    const auto n = 3 + rng() % 4;
    auto sigma = fixtures::random_sigma(rng, n, 3 + rng() % 6, 1 + rng() % 3, 3);
    const auto binary = fixtures::random_sigma(rng, n, 0, rng() % 3, 2);
    sigma.insert(sigma.end(), binary.begin(), binary.end());
    for (auto rules : {RuleSet::Cr, RuleSet::Full}) {
      const auto closure = derivation_closure(sigma, rules);
      for (const auto& x : fixtures::variables(n)) {
        for (const auto& y : fixtures::variables(n)) {
          const auto goal = FD::unary(x, y);
          const auto d = derives(sigma, goal, rules);
          const bool in_closure = closure.count(goal) > 0 || x == y;
          CHECK(d.derivable == in_closure);
          if (!d.derivable) continue;
          ++derived;
          const auto problem = check_trace(*d.trace, sigma, goal, rules);
          CHECK_MESSAGE(!problem, *problem);
        }
      }
    }
  }
  CHECK(derived > 100);
}

TEST_CASE("closure is deterministic and at least as strong as cr") {
  std::mt19937_64 rng(44);
  const auto sigma = fixtures::random_sigma(rng, 12, 30, 10, 3);
  const auto full = derivation_closure(sigma, RuleSet::Full);
  CHECK(full == derivation_closure(sigma, RuleSet::Full));
  for (const auto& fd : derivation_closure(sigma, RuleSet::Cr)) CHECK(full.count(fd) == 1);
}
