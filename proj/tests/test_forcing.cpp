#include <doctest.h>

#include "cwb/forcing.hpp"

using namespace cwb;
using namespace cwb::forcing;
using pca::Nat;

namespace {

holog::FormulaP always() { return holog::parse("x = x /\\ y = y"); }

ConditionSpace space(Nat domain, std::size_t size, const holog::FormulaP& govern = always()) {
  return ConditionSpace::build(domain, size, govern, holog::EvalConfig{});
}

// Least y <= bound with body[z := code, y := y], by bounded evaluation.
// The cutoff must cover the components of the code.
std::optional<Nat> least_witness(const Merged& m, Nat code, Nat bound, Nat cutoff = 20) {
  holog::EvalConfig cfg;
  cfg.cutoff = cutoff;
  for (Nat y = 0; y <= bound; ++y) {
    holog::Env env{{m.z, holog::nat_value(code)}, {m.y, holog::nat_value(y)}};
    if (holog::eval_bounded(m.body, env, cfg) == Tri::True) return y;
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("condition spaces") {
  auto s = space(4, 2);
  // empty, 16 singletons, 6 pairs of first components times 16
  CHECK(s.conditions.size() == 1 + 16 + 6 * 16);
  CHECK(s.conditions[0].empty());
  for (std::size_t p = 0; p < s.conditions.size(); ++p) {
    CHECK(s.extends(0, p));
    CHECK(s.extends(p, p));
  }
  auto small = space(2, 1, holog::parse("x = y"));
  REQUIRE(small.conditions.size() == 3);
  CHECK(small.member(1, 1, 2) != small.member(1, 1, 1));
  CHECK_FALSE(small.extends(1, 2));
  CHECK(small.show(0) == "{}");
  CHECK(s.relation(kCond, {holog::nat_value(5)}) == Tri::True);
  CHECK(s.relation(kCond, {holog::nat_value(500)}) == Tri::False);
}

TEST_CASE("forcing clauses") {
  auto atomic = holog::parse("0 = 1");
  CHECK(holog::alpha_equal(force("p", atomic, 9), atomic));
  auto rel = force("p", holog::parse("R(x, y)"), 9);
  CHECK(holog::alpha_equal(
      rel, holog::parse("forall q <= 9. cond(q) /\\ sub(p, q) -> exists r <= 9. cond(r) /\\ sub(q, r) /\\ mem(x, y, r)")));
  auto conj = force("p", holog::parse("R(0, 1) /\\ 0 = 0"), 9);
  REQUIRE(conj->kind == holog::Formula::Kind::And);
  CHECK(holog::alpha_equal(conj->r, holog::parse("0 = 0")));
  CHECK(holog::alpha_equal(conj->l, force("p", holog::parse("R(0, 1)"), 9)));
  CHECK_THROWS_AS(force("p", holog::parse("Q(0, 1)"), 9), forcing_error);
}

TEST_CASE("forced truth at conditions") {
  auto s = space(2, 2);
  auto cfg = forcing_config(s, holog::EvalConfig{});
  auto forced = force("p", holog::parse("R(0, 1)"), s.conditions.size() - 1);
  for (std::size_t p = 0; p < s.conditions.size(); ++p) {
    INFO(s.show(p));
    Tri t = holog::eval_bounded(forced, {{"p", holog::nat_value(p)}}, cfg);
    // any condition without <0,1> extends to one that fixes 0 elsewhere
    bool has = false;
    for (auto& [x, y] : s.conditions[p]) has = has || (x == 0 && y == 1);
    CHECK(t == tri(has));
  }
}

TEST_CASE("meta-lemmas on examples") {
  auto s = space(4, 2);
  for (auto text : {"R(0, 1)", "0 = 0", "R(0, 0) \\/ ~R(0, 0)", "forall x. exists y. R(x, y)",
                    "exists x. R(x, x) -> R(x, x)"}) {
    INFO(text);
    auto rep = check_meta_lemmas(holog::parse(text), s, holog::EvalConfig{});
    CHECK_FALSE(rep.counterexample.has_value());
    CHECK_FALSE(rep.unknown);
    CHECK(rep.conditions == s.conditions.size());
    CHECK(rep.checks > 0);
  }
  CHECK(check_meta_lemmas(holog::parse("0 = 0"), s, {}).base_applicable);
  CHECK_FALSE(check_meta_lemmas(holog::parse("R(0, 1)"), s, {}).base_applicable);
}

TEST_CASE("generated suite") {
  auto suite = generate_suite(20, 4, 7);
  CHECK(suite.size() == 20);
  auto again = generate_suite(20, 4, 7);
  for (std::size_t i = 0; i < suite.size(); ++i) CHECK(holog::alpha_equal(suite[i], again[i]));
  bool mentions_r = false;
  for (auto& f : suite) mentions_r = mentions_r || holog::show(f).find("R(") != std::string::npos;
  CHECK(mentions_r);
}

TEST_CASE("merging epsilon bodies") {
  auto m = merge_epsilons({holog::parse("y = x"), holog::parse("y = S x")});
  REQUIRE(m.params.size() == 2);
  CHECK(m.params[0] == std::vector<std::string>{"x"});
  CHECK(m.params[1] == std::vector<std::string>{"x"});
  CHECK(least_witness(m, pca::tuple({1, 3}), 20) == std::optional<Nat>(4));
  CHECK(least_witness(m, pca::tuple({0, 3}), 20) == std::optional<Nat>(3));
  // each merged witness satisfies its own body
  for (Nat x = 0; x < 5; ++x)
    for (Nat i = 0; i < 2; ++i) {
      auto y = least_witness(m, pca::tuple({i, x}), 20);
      REQUIRE(y);
      CHECK(*y == x + i);
    }
  auto two = merge_epsilons({holog::parse("y = a + b"), holog::parse("y * y = c")});
  CHECK(least_witness(two, pca::tuple({0, 2, 5}), 20, 40) == std::optional<Nat>(7));
  CHECK(least_witness(two, pca::tuple({1, 16}), 20) == std::optional<Nat>(4));
  CHECK_THROWS_AS(merge_epsilons({}), forcing_error);
}

TEST_CASE("pairs spelled arithmetically") {
  holog::EvalConfig cfg;
  cfg.cutoff = 64;
  for (Nat a = 0; a < 5; ++a)
    for (Nat b = 0; b < 5; ++b) {
      auto f = pair_eq(holog::numeral(pca::pair(a, b)), holog::numeral(a), holog::numeral(b));
      CHECK(holog::eval_bounded(f, {}, cfg) == Tri::True);
      auto g = pair_eq(holog::numeral(pca::pair(a, b) + 1), holog::numeral(a), holog::numeral(b));
      CHECK(holog::eval_bounded(g, {}, cfg) == Tri::False);
    }
}
