#include <doctest.h>

#include <random>

#include "cwb/holog.hpp"
#include "cwb/pca.hpp"
#include "oracles/naive_eval.hpp"
#include "support.hpp"

using namespace cwb::pca;

namespace {

constexpr Nat kBudget = 100000;

Nat value_num(const Outcome& o) {
  REQUIRE(o.ok());
  auto n = as_num(o.value);
  REQUIRE(n.has_value());
  return *n;
}

// npair 0 5 on the first round, npair 1 (npr1 t) afterwards
CodeP two_round_program() {
  auto t = var("t");
  auto first = ap({npair(), num(0), num(5)});
  auto later = ap({npair(), num(1), app(npr1(), t)});
  return abstract("t", ap({cond(), t, first, later}));
}

}  // namespace

TEST_CASE("cantor pairing matches the diagonal walk") {
  CHECK(pair(0, 0) == 0);
  CHECK(pair(0, 1) == 2);
  CHECK(pair(1, 0) == 1);
  CHECK(unpair(pair(7, 9)) == std::pair<Nat, Nat>{7, 9});
  for (Nat a = 0; a < 40; ++a)
    for (Nat b = 0; b < 40; ++b) CHECK(pair(a, b) == oracle::cantor(a, b));
  for (Nat n = 0; n < 2000; ++n) CHECK(unpair(n) == oracle::uncantor(n));
}

TEST_CASE("tuples nest to the right") {
  CHECK(tuple({4}) == 4);
  CHECK(tuple({1, 2, 3}) == pair(1, pair(2, 3)));
  CHECK(untuple(tuple({5, 0, 8, 2}), 4) == std::vector<Nat>{5, 0, 8, 2});
  CHECK_THROWS_AS(pair(UINT64_MAX, 1), overflow);
}

TEST_CASE("combinator equations on fixed inputs") {
  CHECK(value_num(eval(ap({K(), num(3), num(5)}), kBudget)) == 3);
  CHECK(value_num(eval(ap({S(), K(), K(), num(5)}), kBudget)) == 5);
  CHECK(value_num(eval(ap({Rec(), num(4), K(), num(0)}), kBudget)) == 4);
  CHECK(value_num(eval(ap({add(), num(2), num(3)}), kBudget)) == 5);
  CHECK(value_num(eval(ap({mul(), num(2), num(3)}), kBudget)) == 6);
  CHECK(value_num(eval(ap({pred(), num(7)}), kBudget)) == 6);
  CHECK(value_num(eval(ap({sub(), num(7), num(3)}), kBudget)) == 4);
  CHECK(value_num(eval(ap({sub(), num(3), num(7)}), kBudget)) == 0);
  CHECK(value_num(eval(ap({iszero(), num(0)}), kBudget)) == 0);
  CHECK(value_num(eval(ap({iszero(), num(2)}), kBudget)) == 1);
  CHECK(value_num(eval(ap({eqnum(), num(4), num(4)}), kBudget)) == 0);
  CHECK(value_num(eval(ap({eqnum(), num(4), num(5)}), kBudget)) != 0);
}

TEST_CASE("library codes agree with the reference reducer") {
  for (Nat a = 0; a < 6; ++a)
    for (Nat b = 0; b < 6; ++b) {
      for (auto op : {add(), mul(), sub(), eqnum(), npair()}) {
        auto term = ap({op, num(a), num(b)});
        auto fast = eval(term, kBudget);
        auto slow = oracle::reduce(term, 10 * kBudget);
        REQUIRE(slow.status == oracle::Status::Value);
        REQUIRE(fast.ok());
        CHECK(show(fast.value) == oracle::text(slow.value));
      }
      CHECK(value_num(eval(ap({npair(), num(a), num(b)}), kBudget)) == oracle::cantor(a, b));
    }
  for (Nat n = 0; n < 30; ++n) {
    auto [x, y] = oracle::uncantor(n);
    CHECK(value_num(eval(ap({npr0(), num(n)}), kBudget)) == x);
    CHECK(value_num(eval(ap({npr1(), num(n)}), kBudget)) == y);
  }
}

TEST_CASE("value pairing projects back") {
  auto p = ap({vpair(), K(), num(7)});
  CHECK(show(eval(app(vpr0(), p), kBudget).value) == "k");
  CHECK(value_num(eval(app(vpr1(), p), kBudget)) == 7);
}

TEST_CASE("stuck terms are not divergence") {
  auto o = eval(app(num(3), num(1)), kBudget);
  CHECK(o.stuck());
  CHECK(o.undefined());
  auto loop = eval(omega(), 1000);
  CHECK(loop.diverged());
  CHECK_FALSE(loop.oracle_undefined);
  CHECK(eval(app(Suc(), K()), kBudget).stuck());
}

TEST_CASE("values are normal forms") {
  CHECK(is_value(K()));
  CHECK(is_value(app(K(), num(1))));
  CHECK(is_value(ap({S(), K(), K()})));
  CHECK(is_value(ap({Rec(), num(0), K()})));
  CHECK_FALSE(is_value(ap({K(), num(1), num(2)})));
  CHECK_FALSE(is_value(app(Suc(), num(1))));
  CHECK_FALSE(is_value(app(K(), app(Suc(), num(1)))));
}

TEST_CASE("random evaluations agree with the reference reducer") {
  std::mt19937_64 rng(11);
  int compared = 0;
  for (int i = 0; i < 400; ++i) {
    auto term = app(support::random_body(rng, 4, "x"), support::random_value(rng, 2));
    term = subst(term, "x", support::random_value(rng, 1));
    auto fast = eval(term, 2000);
    auto slow = oracle::reduce(term, 2000);
    if (fast.ok() && slow.status == oracle::Status::Value) {
      CHECK(show(fast.value) == oracle::text(slow.value));
      ++compared;
    } else if (fast.stuck()) {
      CHECK(slow.status != oracle::Status::Value);
    }
  }
  CHECK(compared > 50);
}

TEST_CASE("evaluation is deterministic and budget monotone") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    auto term = app(support::random_body(rng, 4), support::random_value(rng, 2));
    term = subst(term, "x", num(rng() % 5));
    auto a = eval(term, 500);
    auto b = eval(term, 500);
    CHECK(show(a) == show(b));
    auto more = eval(term, 50000);
    if (a.ok()) {
      REQUIRE(more.ok());
      CHECK(equal(a.value, more.value));
    }
  }
}

TEST_CASE("bracket abstraction") {
  CHECK(show(abstract("x", var("x"))) == "s k k");
  CHECK(show(abstract("x", num(3))) == "k 3");
  CHECK(show(abstract("x", Suc())) == "k suc");
  CHECK(value_num(apply(abstract("x", app(Suc(), var("x"))), num(4), kBudget)) == 5);
  CHECK_THROWS_AS(abstract("x", app(var("x"), var("y"))), unbound_variable);
  auto nested = lambda({"x", "y"}, ap({add(), var("x"), var("y")}));
  CHECK(value_num(apply(nested, {num(2), num(9)}, kBudget)) == 11);
}

TEST_CASE("beta law on generated bodies") {
  std::mt19937_64 rng(23);
  int decided = 0;
  for (int i = 0; i < 300; ++i) {
    auto body = support::random_body(rng, 4);
    auto arg = support::random_value(rng, 2);
    auto lhs = apply(abstract("x", body), arg, 20000);
    auto rhs = eval(subst(body, "x", arg), 20000);
    auto same = kleene_equal(lhs, rhs);
    if (same) {
      CHECK(*same);
      ++decided;
    }
  }
  CHECK(decided > 250);
}

TEST_CASE("text syntax") {
  CHECK(value_num(eval(parse("(\\x. suc x) 4"), kBudget)) == 5);
  CHECK(value_num(eval(parse("add 2 3"), kBudget)) == 5);
  CHECK(value_num(eval(parse("fst (pair 4 k)"), kBudget)) == 4);
  CHECK(show(parse("s (k k) k")) == "s (k k) k");
  CHECK_THROWS_AS(parse("(k"), parse_error);
  CHECK_THROWS_AS(parse("\\x. y"), parse_error);
}

TEST_CASE("goedel numbering round trips") {
  for (int n = 0; n < 2000; ++n) CHECK(godel(ungodel(Big(n))) == Big(n));
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    auto c = app(support::random_value(rng, 3), support::random_value(rng, 3));
    CHECK(equal(ungodel(godel(c)), c));
  }
}

TEST_CASE("oracle protocol") {
  auto immediate = abstract("t", ap({npair(), num(1), num(42)}));
  Oracle none = undefined_oracle();
  CHECK(value_num(eval_oracle(immediate, 0, none, kBudget)) == 42);
  CHECK(none.queries == 0);

  Oracle f = table_oracle({{5, 9}});
  CHECK(value_num(eval_oracle(two_round_program(), 0, f, kBudget)) == 9);
  CHECK(f.queries == 1);
  Oracle g = table_oracle({{5, 7}});
  CHECK(value_num(eval_oracle(two_round_program(), 0, g, kBudget)) == 7);

  Oracle gap = undefined_oracle();
  auto o = eval_oracle(two_round_program(), 0, gap, kBudget);
  CHECK(o.diverged());
  CHECK(o.oracle_undefined);

  auto forever = abstract("t", ap({npair(), num(0), num(0)}));
  Oracle zero = table_oracle({{0, 0}});
  CHECK(eval_oracle(forever, 0, zero, 20000).diverged());

  auto bad = abstract("t", num(pair(2, 0)));
  CHECK(eval_oracle(bad, 0, none, kBudget).stuck());
}

TEST_CASE("oracles bound to free variables") {
  Oracle f = table_oracle({{3, 10}});
  OracleBindings b{{"f", &f}};
  CHECK(value_num(eval(app(var("f"), app(Suc(), num(2))), kBudget, &b)) == 10);
  CHECK(eval(app(var("f"), num(4)), kBudget, &b).undefined());
  CHECK(eval(app(var("g"), num(4)), kBudget, &b).stuck());
  // memoized per oracle
  eval(app(var("f"), num(3)), kBudget, &b);
  CHECK(f.queries == 2);
}

TEST_CASE("epsilon oracles by bounded search") {
  namespace h = cwb::holog;
  h::EvalConfig cfg;
  auto two = h::eps("y", h::eq(h::var("y"), h::numeral(2)));
  auto e = h::epsilon(two, 64, cfg);
  CHECK(e.query(0) == std::optional<Nat>(2));
  auto half = h::epsilon("y", {"x"}, h::eq(h::add(h::var("y"), h::var("y")), h::var("x")), 64, cfg);
  CHECK(half.query(4) == std::optional<Nat>(2));
  CHECK_FALSE(half.query(5).has_value());
  auto none = h::epsilon(h::eps("y", h::eq(h::succ(h::var("y")), h::zero())), 64, cfg);
  CHECK_FALSE(none.query(0).has_value());
}
