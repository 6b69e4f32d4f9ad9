#include <doctest.h>

#include "cwb/holog.hpp"
#include "formula_gen.hpp"
#include "oracles/naive_holog.hpp"

using namespace cwb;
using namespace cwb::holog;

namespace {

EvalConfig small_world(Nat cutoff, Nat slack, Nat set_base) {
  EvalConfig cfg;
  cfg.cutoff = cutoff;
  cfg.witness_slack = slack;
  cfg.set_base = set_base;
  return cfg;
}

std::vector<HSet> subsets(Nat base) {
  std::vector<HSet> out;
  for (Nat mask = 0; mask < (Nat{1} << base); ++mask) {
    std::set<Nat> xs;
    for (Nat i = 0; i < base; ++i)
      if (mask >> i & 1) xs.insert(i);
    out.push_back(nat_set(xs));
  }
  return out;
}

}  // namespace

TEST_CASE("parse and show round trip") {
  for (auto text : {"0 = 0", "forall x. exists y. y = S x", "x in Y:1 -> exists X:1. x in X:1",
                    "exists x <= 5. x + x = 4", "~(0 = 1)", "(k @ 0 @ 1)!", "R(x, S y)",
                    "forall x. x = 0 \\/ x != 0", "X:1 = Y:1 <-> top"}) {
    auto f = parse(text);
    CHECK(alpha_equal(parse(show(f)), f));
  }
  support::FormulaGen gen(1);
  gen.sets = true;
  for (int i = 0; i < 200; ++i) {
    auto f = gen.formula({"a"}, {"Y"}, 3);
    CHECK(alpha_equal(parse(show(f)), f));
  }
  CHECK_THROWS_AS(parse("forall x x = x"), syntax_error);
  CHECK_THROWS_AS(parse("x in y"), syntax_error);
}

TEST_CASE("impredicative definitions of the connectives") {
  CHECK(show(expand_impredicative(top())) == "forall X:1. x in X:1 -> x in X:1");
  CHECK(alpha_equal(expand_impredicative(parse("a = b")), parse("forall X:1. a in X:1 -> b in X:1")));
  CHECK(alpha_equal(expand_impredicative(bot()), parse("forall X:1. x in X:1")));
  // A /\ B as forall Z ((A -> B -> Z) -> Z), Z filled by a membership
  auto conj = expand_impredicative(parse("x in Y:1 /\\ z in Y:1"));
  CHECK(alpha_equal(conj, parse("forall Z:1. (x in Y:1 -> z in Y:1 -> x1 in Z:1) -> x1 in Z:1")));
}

TEST_CASE("impredicative expansion preserves bounded truth exhaustively") {
  auto cfg = small_world(2, 0, 3);
  support::FormulaGen gen(7);
  gen.sets = true;
  gen.arithmetic = false;  // Leibniz equality needs terms inside the set base
  gen.max_numeral = 2;
  auto sets = subsets(3);
  int formulas = 0;
  for (int i = 0; i < 40; ++i) {
    auto f = gen.formula({"a"}, {"Y"}, 2);
    auto g = expand_impredicative(f);
    auto fill = expand_fill_variable(f);
    for (Nat a = 0; a <= 2; ++a)
      for (auto& y : sets)
        for (Nat filler = 0; filler <= 2; ++filler) {
          Env env{{"a", nat_value(a)}, {"Y", set_value(y)}, {fill, nat_value(filler)}};
          Tri lhs = eval_bounded(f, env, cfg);
          REQUIRE(lhs != Tri::Unknown);
          CHECK(eval_bounded(g, env, cfg) == lhs);
        }
    ++formulas;
  }
  CHECK(formulas == 40);
}

TEST_CASE("first-order sugar") {
  CHECK(show(desugar_first_order(bot())) == "0 = 1");
  CHECK(show(desugar_first_order(top())) == "0 = 0");
  auto d = desugar_first_order(parse("0 = 0 \\/ bot"));
  CHECK(alpha_equal(d, parse("exists n. (n = 0 -> 0 = 0) /\\ ((n = 0 -> 0 = 1) -> 0 = 1)")));
  auto core = parse("forall x. x = 0 -> S x = 1");
  CHECK(alpha_equal(desugar_first_order(core), core));
  CHECK_THROWS(desugar_first_order(parse("exists X:1. 0 in X:1")));
}

TEST_CASE("desugaring preserves bounded truth on a generated corpus") {
  auto cfg = small_world(16, 1, 17);
  support::FormulaGen gen(99);
  std::mt19937_64 rng(4);
  for (int i = 0; i < 50; ++i) {
    auto f = gen.formula({"a", "b"}, {}, 3);
    auto d = desugar_first_order(f);
    for (int j = 0; j < 4; ++j) {
      Env env{{"a", nat_value(rng() % 17)}, {"b", nat_value(rng() % 17)}};
      CHECK(eval_bounded(d, env, cfg) == eval_bounded(f, env, cfg));
    }
  }
}

TEST_CASE("bounded evaluation") {
  EvalConfig cfg = small_world(8, 1, 9);
  CHECK(eval_bounded(parse("0 = 0"), {}, cfg) == Tri::True);
  CHECK(eval_bounded(parse("exists y. y = S (S 0)"), {}, cfg) == Tri::True);
  auto succ_total = parse("forall x. exists y. y = S x");
  CHECK(eval_bounded(succ_total, {}, cfg) == Tri::True);
  auto tight = small_world(8, 0, 9);
  CHECK(eval_bounded(succ_total, {}, tight) == Tri::False);
  tight.policy = Truncation::Flag;
  CHECK(eval_bounded(succ_total, {}, tight) == Tri::Unknown);
  CHECK(eval_bounded(parse("exists x <= 3. x * x = 9"), {}, cfg) == Tri::True);
  CHECK(eval_bounded(parse("exists x <= 2. x * x = 9"), {}, cfg) == Tri::False);
  CHECK_THROWS_AS(eval_bounded(parse("x = 0"), {}, cfg), unbound_variable);
}

TEST_CASE("bounded evaluation agrees with the reference evaluator") {
  auto cfg = small_world(6, 1, 4);
  oracle::World w{6, 7, 4};
  support::FormulaGen gen(2024);
  gen.sets = true;
  std::mt19937_64 rng(8);
  auto sets = subsets(4);
  for (int i = 0; i < 300; ++i) {
    auto f = gen.formula({"a"}, {"Y"}, 3);
    Nat a = rng() % 7;
    const HSet& y = sets[rng() % sets.size()];
    Env env{{"a", nat_value(a)}, {"Y", set_value(y)}};
    oracle::Assignment as;
    as.nats["a"] = a;
    as.sets["Y"] = y.nats;
    CHECK(eval_bounded(f, env, cfg) == tri(oracle::truth(f, as, w)));
  }
}

TEST_CASE("combinator atoms are stable under more budget") {
  std::vector<std::string> texts = {"k @ x @ y = x", "(s @ k @ k @ x)!", "rec @ 3 @ k @ 0 = 3",
                                    "suc @ x = S x", "s @ k @ (k @ y) @ x = x"};
  for (auto& t : texts) {
    auto f = parse("forall x <= 4. forall y <= 4. " + t);
    EvalConfig low = small_world(4, 1, 5);
    low.budget = 3;
    EvalConfig high = low;
    high.budget = 100000;
    Tri a = eval_bounded(f, {}, low), b = eval_bounded(f, {}, high);
    CHECK(b == Tri::True);
    if (a != Tri::Unknown) CHECK(a == b);
  }
}

TEST_CASE("definedness obligations") {
  auto ob = wf_partial_terms(parse("R(f(x))"));
  REQUIRE(ob.size() == 1);
  CHECK(show(ob[0].term) == "f(x)");
  CHECK(ob[0].rule == "down-rel");
  CHECK(wf_partial_terms(parse("x = y")).empty());
  auto inner = wf_partial_terms(parse("(k @ (s @ x))!"));
  for (auto& o : inner) CHECK(show(o.term) != "k @ (s @ x)");
}

TEST_CASE("axiom lists") {
  auto ha = arithmetic_axioms(Theory::HA);
  auto has = [](const std::vector<Axiom>& xs, const std::string& text) {
    for (auto& a : xs)
      if (alpha_equal(a.formula, parse(text))) return true;
    return false;
  };
  CHECK(has(ha, "forall y. S y != 0"));
  CHECK_FALSE(has(ha, "forall x. forall y. (s @ x @ y)!"));
  auto hahp = arithmetic_axioms(Theory::HAHP);
  CHECK(has(hahp, "forall x. forall y. (s @ x @ y)!"));
  CHECK(has(hahp, "forall y. S y != 0"));
  auto ind = induction("x", parse("x = x"));
  CHECK(free_vars(ind).empty());
  EvalConfig cfg = small_world(8, 1, 9);
  for (auto& a : ha) CHECK(eval_bounded(a.formula, {}, cfg) == Tri::True);
  CHECK(eval_bounded(ind, {}, cfg) == Tri::True);
}

TEST_CASE("capture-avoiding substitution") {
  auto f = parse("forall y. x = y");
  auto g = subst(f, "x", var("y"));
  CHECK(alpha_equal(g, parse("forall z. y = z")));
  CHECK_FALSE(alpha_equal(g, parse("forall y. y = y")));
  auto f2 = parse("forall w. x = w");
  CHECK(alpha_equal(subst(f, "x", var("y")), subst(f2, "x", var("y"))));
  CHECK(alpha_key(parse("exists a. a = 0")) == alpha_key(parse("exists b. b = 0")));
}

TEST_CASE("theory tags") {
  CHECK(theory_of(parse("forall x. x = x")) == Theory::HA);
  CHECK(theory_of(parse("exists X:1. 0 in X:1")) == Theory::HAH);
  CHECK(theory_of(parse("(k @ 0)!")) == Theory::HAHP);
  CHECK(extends(Theory::HAHPeps, Theory::HA));
  CHECK_FALSE(extends(Theory::HA, Theory::HAH));
  CHECK_THROWS_AS(check_theory(parse("(k @ 0)!"), Theory::HAH), syntax_error);
}
