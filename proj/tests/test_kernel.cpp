#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "cwb/kernel.hpp"

using namespace cwb::kernel;

namespace {

std::string read_corpus() {
  std::ifstream in(std::string(CWB_CORPUS_DIR) + "/kernel/rules.judg");
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Parsed {
  Context ctx;
  TermP term, type;
};

Parsed parse_judgment(const Judgment& j) {
  Parsed p;
  auto built = build_context(parse_context(j.ctx_text), p.ctx);
  REQUIRE(built.accepted);
  p.term = parse_term(j.term_text, p.ctx.names());
  p.type = parse_term(j.type_text, p.ctx.names());
  return p;
}

bool accepts(const std::string& ctx_text, const std::string& term, const std::string& type) {
  Context ctx;
  if (!build_context(parse_context(ctx_text), ctx).accepted) return false;
  return check(ctx, parse_term(term, ctx.names()), parse_term(type, ctx.names())).accepted;
}

const std::string kChurch = "(Pi (D : Prop), D -> (D -> D) -> D)";

}  // namespace

TEST_CASE("golden corpus") {
  auto judgments = parse_corpus(read_corpus());
  std::size_t accepting = 0, rejecting = 0;
  std::set<std::string> annotated, labels;
  for (auto& j : judgments) {
    auto r = run_judgment(j);
    INFO(j.label << ": " << r.detail);
    CHECK(r.matches);
    (j.expect_accept ? accepting : rejecting)++;
    annotated.insert(j.rules.begin(), j.rules.end());
    CHECK(labels.insert(j.label).second);
  }
  CHECK(accepting >= 40);
  CHECK(rejecting >= 15);
  for (auto& rule : rule_names()) {
    INFO(rule);
    CHECK(annotated.count(rule) == 1);
  }
}

TEST_CASE("universes") {
  CHECK(accepts("", "0", "Nat"));
  CHECK(accepts("", "Prop", "Type"));
  CHECK_FALSE(accepts("", "Prop", "Prop"));
  CHECK_FALSE(accepts("", "Prop", "Set"));
  CHECK_FALSE(accepts("", "Set", "Prop"));
  CHECK(accepts("", "Nat", "Set"));
  CHECK(accepts("", "Nat", "Type"));
  auto v = infer({}, parse_term("Prop"));
  REQUIRE(v.accepted);
  CHECK(show(v.type) == "Type");
  auto bad = infer({}, parse_term("Type"));
  CHECK_FALSE(bad.accepted);
}

TEST_CASE("church numerals support only the weak eliminator") {
  CHECK(accepts("", "fun (C : Prop) (c : C) (f : C -> C) => f (f c)", kChurch));
  CHECK(accepts("C : Prop, c : C, f : C -> C", "fun (n : " + kChurch + ") => n C c f", kChurch + " -> C"));
  CHECK_FALSE(accepts("P : " + kChurch + " -> Prop",
                      "fun (n : " + kChurch + ") => n (fun (m : " + kChurch + ") => P m)",
                      kChurch + " -> Prop"));
  CHECK_FALSE(accepts("", "fun (n : " + kChurch + ") => n Nat 0 (fun (k : Nat) => S k)", kChurch + " -> Nat"));
}

TEST_CASE("reduction") {
  Context ctx;
  auto z = whnf(ctx, parse_term("ind_nat {fun (k : Nat) => Nat} 7 (fun (k r : Nat) => S r) 0"));
  CHECK(show(z) == "7");
  auto beta = whnf(ctx, parse_term("(fun (x : Nat) => S x) 2"));
  CHECK(syntactic_equal(beta, parse_term("S 2")));
  auto cls = parse_term(
      "ind_quot {fun (q : Quot Nat (fun (x y : Nat) => Fin 1)) => Nat} (fun (x : Nat) => S x) "
      "(fun (x x' : Nat) (r : Fin 1) => refl 0) (cls {Quot Nat (fun (x y : Nat) => Fin 1)} 4)");
  CHECK(syntactic_equal(normalize(ctx, cls), parse_term("5")));
  CHECK(conv(ctx, parse_term("(fun (m n : Nat) => ind_nat {fun (k : Nat) => Nat} m (fun (k r : Nat) => S r) n) 2 2"),
             parse_term("4")));
}

TEST_CASE("conversion is an equivalence on corpus terms") {
  auto judgments = parse_corpus(read_corpus());
  std::vector<std::pair<Context, TermP>> terms;
  for (auto& j : judgments) {
    if (!j.expect_accept || !j.ctx_text.empty()) continue;
    auto p = parse_judgment(j);
    terms.push_back({p.ctx, p.term});
    terms.push_back({p.ctx, p.type});
  }
  REQUIRE(terms.size() > 20);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    CHECK(conv(terms[i].first, terms[i].second, terms[i].second));
    for (std::size_t j = i + 1; j < terms.size() && j < i + 6; ++j)
      CHECK(conv({}, terms[i].second, terms[j].second) == conv({}, terms[j].second, terms[i].second));
  }
}

TEST_CASE("subject reduction on the corpus") {
  int checked = 0;
  for (auto& j : parse_corpus(read_corpus())) {
    if (!j.expect_accept) continue;
    auto p = parse_judgment(j);
    INFO(j.label);
    auto head = whnf(p.ctx, p.term);
    CHECK(check(p.ctx, head, p.type).accepted);
    auto full = normalize(p.ctx, p.term);
    CHECK(check(p.ctx, full, p.type).accepted);
    ++checked;
  }
  CHECK(checked >= 40);
}

TEST_CASE("cumulativity on corpus types") {
  auto prop = sort(Sort::Prop), set = sort(Sort::Set), type = sort(Sort::Type);
  int types = 0;
  for (auto& j : parse_corpus(read_corpus())) {
    if (!j.expect_accept) continue;
    auto p = parse_judgment(j);
    INFO(j.label);
    if (!infer(p.ctx, p.type).accepted) continue;
    bool at_prop = check(p.ctx, p.type, prop).accepted;
    bool at_set = check(p.ctx, p.type, set).accepted;
    bool at_type = check(p.ctx, p.type, type).accepted;
    if (at_prop) CHECK(at_set);
    if (at_set) CHECK(at_type);
    ++types;
  }
  CHECK(types >= 30);
}

TEST_CASE("h-proposition obligations") {
  Context ctx;
  auto unit_motive = parse_term("fun (t : Trunc Nat) => Fin 1");
  auto unit_h = parse_term(
      "fun (t : Trunc Nat) (c c' : Fin 1) => ind_fin {fun (k : Fin 1) => Id (Fin 1) k c'} 1 "
      "(ind_fin {fun (k : Fin 1) => Id (Fin 1) (fin 0 1) k} 1 (refl (fin 0 1)) c') c");
  CHECK(check_hprop_obligation(ctx, unit_motive, unit_h).accepted);

  auto nat_motive = parse_term("fun (t : Trunc Nat) => Nat");
  auto nat_h = parse_term("fun (t : Trunc Nat) (c c' : Nat) => refl c");
  CHECK_FALSE(check_hprop_obligation(ctx, nat_motive, nat_h).accepted);

  Context with_points;
  REQUIRE(build_context(parse_context("a : Nat, b : Nat"), with_points).accepted);
  auto id_motive = parse_term("fun (t : Trunc Nat) => Id Nat a b", with_points.names());
  auto id_h = parse_term(
      "fun (t : Trunc Nat) (p q : Id Nat a b) => "
      "ind_id {fun (x y : Nat) (e : Id Nat x y) => Id (Id Nat x y) e e} (fun (x : Nat) => refl (refl x)) a b p",
      with_points.names());
  CHECK(check_hprop_obligation(with_points, id_motive, id_h).accepted);
}

TEST_CASE("rejections name a rule and a location") {
  Context ctx;
  auto v = infer(ctx, parse_term("S Prop"));
  CHECK_FALSE(v.accepted);
  CHECK_FALSE(v.rule.empty());
  CHECK_FALSE(v.location.empty());
  CHECK_THROWS_AS(parse_term("fun (x : Nat) => y"), parse_error);
}
