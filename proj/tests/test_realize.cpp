#include <doctest.h>

#include "cwb/realize.hpp"
#include "formula_gen.hpp"
#include "oracles/naive_holog.hpp"

using namespace cwb;
using pca::Nat;
using realize::Agreement;

namespace {

realize::Config config(Nat cutoff) {
  realize::Config cfg;
  cfg.eval.cutoff = cutoff;
  cfg.eval.set_base = cutoff + 1;
  return cfg;
}

pca::CodeP vp(Nat a, pca::CodeP b) { return pca::ap({pca::vpair(), pca::num(a), b}); }

Agreement thm5(const std::string& text, Nat cutoff = 16) {
  return realize::check_relevant_soundness(holog::parse(text), {}, config(cutoff)).verdict;
}

Agreement thm1(const std::string& text, const holog::Env& env = {}, Nat cutoff = 4) {
  auto cfg = config(cutoff);
  return realize::check_irrelevant_equiv(holog::parse(text), env, cfg).verdict;
}

}  // namespace

TEST_CASE("clauses of the realizability relation") {
  auto cfg = config(8);
  auto a = holog::parse("exists x. x = 2");
  CHECK(realize::realizes(vp(2, pca::num(0)), vp(2, pca::num(7)), a, {}, cfg) == Tri::True);
  CHECK(realize::realizes(vp(2, pca::num(0)), vp(3, pca::num(0)), a, {}, cfg) == Tri::False);
  CHECK(realize::realizes(vp(3, pca::num(0)), vp(3, pca::num(0)), a, {}, cfg) == Tri::False);
  CHECK(realize::realizes(pca::num(0), pca::num(5), holog::parse("1 = 1"), {}, cfg) == Tri::True);
  CHECK(realize::realizes(pca::num(0), pca::num(0), holog::parse("1 = 2"), {}, cfg) == Tri::False);

  auto conj = holog::parse("0 = 0 /\\ exists y. y = 1");
  auto good = pca::ap({pca::vpair(), pca::num(0), vp(1, pca::num(0))});
  CHECK(realize::realizes(good, good, conj, {}, cfg) == Tri::True);

  // pointwise over 0..cutoff: lambda x. <x+1, 0>
  auto succ = holog::parse("forall x. exists y. y = S x");
  auto code = pca::abstract("x", pca::ap({pca::vpair(), pca::app(pca::Suc(), pca::var("x")), pca::num(0)}));
  CHECK(realize::realizes(code, code, succ, {}, cfg) == Tri::True);
  auto wrong = pca::abstract("x", pca::ap({pca::vpair(), pca::var("x"), pca::num(0)}));
  CHECK(realize::realizes(wrong, wrong, succ, {}, cfg) == Tri::False);

  auto imp = holog::parse("0 = 1 -> 0 = 0");
  CHECK(realize::realizes(pca::K(), pca::K(), imp, {}, cfg) == Tri::True);
  CHECK_THROWS_AS(realize::realizes(pca::K(), pca::K(), holog::parse("0 = 0 \\/ 0 = 1"), {}, cfg),
                  realize::unsupported);
}

TEST_CASE("canonical realizers carry epsilon oracles") {
  auto cfg = config(16);
  auto c = realize::canonical_realizer(holog::parse("exists y. y * y = 9"), cfg.eval);
  REQUIRE(c);
  CHECK(c->params.empty());
  REQUIRE(c->epsilons.size() == 1);
  c->bind(cfg.eval);
  auto o = pca::eval(pca::app(pca::vpr0(), c->code), 100000, &c->bindings);
  REQUIRE(o.ok());
  CHECK(pca::as_num(o.value) == std::optional<Nat>(3));

  auto open = realize::canonical_realizer(holog::parse("exists y. y = S x"), cfg.eval);
  REQUIRE(open->params.size() == 1);
  CHECK(open->params[0] == "x");
  open->bind(cfg.eval);
  auto at4 = pca::eval(pca::app(pca::vpr0(), pca::app(open->code, pca::num(4))), 100000, &open->bindings);
  REQUIRE(at4.ok());
  CHECK(pca::as_num(at4.value) == std::optional<Nat>(5));
}

TEST_CASE("combining the two sides") {
  CHECK(realize::combine(Tri::True, Tri::True) == Agreement::AgreeTrue);
  CHECK(realize::combine(Tri::False, Tri::False) == Agreement::AgreeFalse);
  CHECK(realize::combine(Tri::True, Tri::False) == Agreement::Disagree);
  CHECK(realize::combine(Tri::Unknown, Tri::True) == Agreement::Unknown);
  CHECK(realize::to_string(Agreement::AgreeTrue) == "agree-true");
  CHECK(realize::to_string(Agreement::Disagree) == "disagree");
}

TEST_CASE("soundness of the relevant reading on examples") {
  CHECK(thm5("forall x. 0 + x = x") == Agreement::AgreeTrue);
  CHECK(thm5("0 = S 0") == Agreement::AgreeFalse);
  CHECK(thm5("exists y. S y = 0") == Agreement::AgreeFalse);
  CHECK(thm5("exists y. y * y = 49") == Agreement::AgreeTrue);
  CHECK(thm5("forall x. x = 0 \\/ exists y. x = S y") == Agreement::AgreeTrue);
  CHECK(thm5("forall x. exists y. x = y + y \\/ x = S (y + y)") == Agreement::AgreeTrue);
  CHECK(thm5("~(0 = 1)") == Agreement::AgreeTrue);
  CHECK(thm5("forall x. x = 0") == Agreement::AgreeFalse);
  auto rep = realize::check_relevant_soundness(holog::parse("exists y. y = 3"), {}, config(16));
  CHECK_FALSE(rep.realizer.empty());
  CHECK_FALSE(rep.trace.empty());
  CHECK_THROWS(realize::check_relevant_soundness(holog::parse("exists X:1. 0 in X:1"), {}, config(4)));
}

TEST_CASE("soundness with free variables") {
  auto cfg = config(12);
  auto f = holog::parse("exists y. y = x + x");
  for (Nat x = 0; x <= 5; ++x) {
    holog::Env env{{"x", holog::nat_value(x)}};
    CHECK(realize::check_relevant_soundness(f, env, cfg).verdict == Agreement::AgreeTrue);
  }
  holog::Env far{{"x", holog::nat_value(9)}};
  // the witness 18 lies beyond the search bound
  auto rep = realize::check_relevant_soundness(f, far, cfg);
  CHECK(rep.verdict != Agreement::Disagree);
}

TEST_CASE("no disagreement on generated first-order sentences") {
  support::FormulaGen gen(55);
  gen.max_numeral = 2;
  auto cfg = config(6);
  int decided = 0;
  for (int i = 0; i < 60; ++i) {
    auto f = gen.formula({}, {}, 2);
    INFO(holog::show(f));
    auto rep = realize::check_relevant_soundness(f, {}, cfg);
    CHECK(rep.verdict != Agreement::Disagree);
    decided += rep.verdict == Agreement::AgreeTrue || rep.verdict == Agreement::AgreeFalse;
  }
  CHECK(decided >= 30);
}

TEST_CASE("equivalence of the irrelevant reading on examples") {
  CHECK(thm1("0 = 0") == Agreement::AgreeTrue);
  CHECK(thm1("0 = 1") == Agreement::AgreeFalse);
  holog::Env env{{"x", holog::nat_value(1)}, {"Y", holog::set_value(holog::nat_set({1, 2}))}};
  CHECK(thm1("x in Y:1", env) == Agreement::AgreeTrue);
  CHECK(thm1("0 in Y:1", env) == Agreement::AgreeFalse);
  CHECK(thm1("forall z. z in Y:1 -> z in Y:1", env) == Agreement::AgreeTrue);
  CHECK(thm1("exists X:1. 0 in X:1") == Agreement::AgreeTrue);
  CHECK(thm1("forall X:1. 0 in X:1") == Agreement::AgreeFalse);
  CHECK(thm1("forall z. z = 0 \\/ ~(z = 0)") == Agreement::AgreeTrue);
}

TEST_CASE("irrelevant reading agrees with the reference evaluator") {
  support::FormulaGen gen(77);
  gen.sets = true;
  gen.arithmetic = false;
  gen.max_numeral = 2;
  auto cfg = config(2);
  cfg.eval.witness_slack = 0;
  oracle::World w{2, 2, 3};
  int compared = 0;
  for (int i = 0; i < 25; ++i) {
    auto f = gen.formula({}, {"Y"}, 2);
    INFO(holog::show(f));
    holog::Env env{{"Y", holog::set_value(holog::nat_set({1}))}};
    oracle::Assignment as;
    as.sets["Y"] = {1};
    auto rep = realize::check_irrelevant_equiv(f, env, cfg);
    CHECK(rep.verdict != Agreement::Disagree);
    if (rep.verdict == Agreement::Unknown) continue;
    CHECK((rep.verdict == Agreement::AgreeTrue) == oracle::truth(f, as, w));
    ++compared;
  }
  CHECK(compared >= 15);
}

TEST_CASE("choice over a finite domain") {
  model::World w;
  w.set_base = 4;
  auto above = realize::choice_instance(4, [](Nat x, Nat y) { return y == (x + 1) % 4; }, w);
  CHECK(above.total);
  CHECK(above.found);
  CHECK_FALSE(above.tracker.empty());
  CHECK(above.hypotheses >= 1);
  auto every = realize::choice_instance(4, [](Nat x, Nat y) { return x <= y; }, w);
  CHECK(every.total);
  CHECK(every.found);
  auto partial = realize::choice_instance(3, [](Nat x, Nat) { return x != 1; }, w);
  CHECK_FALSE(partial.total);
}
