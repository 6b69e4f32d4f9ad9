// Acceptance runner: one PASS/FAIL line per criterion. Thresholds and time
// limits are pinned below; timings are wall clock on the build machine.
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "cwb/cli.hpp"
#include "cwb/forcing.hpp"
#include "cwb/kernel.hpp"
#include "cwb/model.hpp"
#include "cwb/pca.hpp"
#include "cwb/realize.hpp"
#include "cwb/translate.hpp"
#include "formula_gen.hpp"
#include "support.hpp"

using namespace cwb;
using pca::Nat;

namespace {

constexpr Nat kBudget = 100000;
constexpr int kAxiomTriples = 10000;
constexpr double kAxiomSeconds = 10.0;
constexpr double kAxiomInconclusive = 0.01;  // share of S triples that may exhaust the budget
constexpr int kBetaPairs = 1000;
constexpr int kBetaDecidedMin = 800;
constexpr Nat kPairSide = 512;
constexpr Nat kSurjectBound = 10000;
constexpr double kPairSeconds = 1.0;
constexpr std::size_t kKernelAccept = 40, kKernelReject = 15;
constexpr double kKernelSeconds = 5.0;
constexpr std::size_t kHahFormulas = 100;
constexpr std::size_t kThm1Min = 20;
constexpr std::size_t kThm5True = 30, kThm5False = 15;
constexpr Nat kThm5Cutoff = 64;
constexpr double kThm5Seconds = 60.0;
constexpr Nat kChoiceDomain = 4;
constexpr std::size_t kForcingFormulas = 50;
constexpr Nat kForcingDomain = 4;
constexpr std::size_t kForcingCondition = 2;
constexpr std::uint32_t kForcingSeed = 20240601;
constexpr double kForcingSeconds = 60.0;
constexpr int kOracleSamples = 1000;
// pairing is unary arithmetic, quadratic in the encoded result
constexpr Nat kOracleBudget = 1000000;
constexpr Nat kOracleInput = 32;
constexpr Nat kPerBound = 65;
constexpr std::size_t kSmallElements = 4;

using Clock = std::chrono::steady_clock;

struct Result {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const std::function<Result()>& body) {
  auto start = Clock::now();
  Result r;
  try {
    r = body();
  } catch (const std::exception& e) {
    r = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (!r.pass) ++failures;
  std::ostringstream line;
  line.setf(std::ios::fixed);
  line.precision(2);
  line << (r.pass ? "PASS" : "FAIL") << "  C" << id << " " << name << ": " << r.detail << " [" << secs << " s]";
  std::cout << line.str() << std::endl;
}

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string corpus(const std::string& rel) { return std::string(CWB_CORPUS_DIR) + "/" + rel; }

// ---- C1 ----
Result pca_axioms() {
  auto start = Clock::now();
  std::mt19937_64 rng(101);
  int violations = 0, inconclusive = 0;
  for (int i = 0; i < kAxiomTriples; ++i) {
    auto a = support::random_value(rng, 2), b = support::random_value(rng, 2), c = support::random_value(rng, 2);
    auto k = pca::apply(pca::K(), {a, b}, kBudget);
    if (!k.ok() || !pca::equal(k.value, a)) ++violations;
    auto sab = pca::eval(pca::ap({pca::S(), a, b}), kBudget);
    if (!sab.ok() || !pca::is_value(sab.value)) ++violations;
    auto lhs = pca::apply(pca::S(), {a, b, c}, kBudget);
    auto rhs = pca::eval(pca::ap({pca::app(a, c), pca::app(b, c)}), kBudget);
    auto same = pca::kleene_equal(lhs, rhs);
    if (!same) ++inconclusive;
    else if (!*same) ++violations;
    Nat n = rng() % 6;
    auto rec0 = pca::apply(pca::Rec(), {a, b, pca::num(0)}, kBudget);
    if (!rec0.ok() || !pca::equal(rec0.value, a)) ++violations;
    auto step = pca::apply(pca::Rec(), {a, b, pca::num(n + 1)}, kBudget);
    auto unfolded = pca::eval(pca::ap({b, pca::num(n), pca::ap({pca::Rec(), a, b, pca::num(n)})}), kBudget);
    auto rec_same = pca::kleene_equal(step, unfolded);
    if (rec_same && !*rec_same) ++violations;
    auto suc = pca::apply(pca::Suc(), pca::num(n), kBudget);
    if (!suc.ok() || pca::as_num(suc.value) != std::optional<Nat>(n + 1)) ++violations;
  }
  double secs = seconds_since(start);
  bool ok = violations == 0 && inconclusive <= kAxiomInconclusive * kAxiomTriples && secs < kAxiomSeconds;
  return {ok, std::to_string(kAxiomTriples) + " triples, " + std::to_string(violations) + " violations, " +
                  std::to_string(inconclusive) + " out of budget"};
}

// ---- C2 ----
Result beta_law() {
  std::mt19937_64 rng(202);
  int decided = 0, violations = 0;
  for (int i = 0; i < kBetaPairs; ++i) {
    auto body = support::random_body(rng, 4);
    auto arg = support::random_value(rng, 2);
    auto lhs = pca::apply(pca::abstract("x", body), arg, kBudget);
    auto rhs = pca::eval(pca::subst(body, "x", arg), kBudget);
    auto same = pca::kleene_equal(lhs, rhs);
    if (!same) continue;
    ++decided;
    if (!*same) ++violations;
  }
  return {violations == 0 && decided >= kBetaDecidedMin,
          std::to_string(kBetaPairs) + " pairs, " + std::to_string(decided) + " decided, " +
              std::to_string(violations) + " violations"};
}

// ---- C3 ----
Result pairing() {
  auto start = Clock::now();
  std::size_t bad = 0;
  std::vector<bool> hit(kSurjectBound, false);
  for (Nat a = 0; a < kPairSide; ++a)
    for (Nat b = 0; b < kPairSide; ++b) {
      Nat n = pca::pair(a, b);
      if (pca::unpair(n) != std::make_pair(a, b)) ++bad;
      if (n < kSurjectBound) hit[n] = true;
    }
  for (Nat n = 0; n < kSurjectBound; ++n) {
    auto [a, b] = pca::unpair(n);
    if (pca::pair(a, b) != n) ++bad;
    if (!hit[n]) ++bad;
  }
  double secs = seconds_since(start);
  return {bad == 0 && secs < kPairSeconds,
          "a,b < " + std::to_string(kPairSide) + ", n < " + std::to_string(kSurjectBound) + ", " +
              std::to_string(bad) + " mismatches"};
}

// ---- C4 ----
Result kernel_corpus() {
  auto start = Clock::now();
  auto judgments = kernel::parse_corpus(slurp(corpus("kernel/rules.judg")));
  std::size_t accept = 0, reject = 0, matched = 0;
  std::set<std::string> annotated;
  for (auto& j : judgments) {
    auto r = kernel::run_judgment(j);
    matched += r.matches;
    (j.expect_accept ? accept : reject)++;
    annotated.insert(j.rules.begin(), j.rules.end());
  }
  std::size_t missing = 0;
  for (auto& rule : kernel::rule_names()) missing += annotated.count(rule) == 0;
  double secs = seconds_since(start);
  bool ok = accept >= kKernelAccept && reject >= kKernelReject && missing == 0 && matched == judgments.size() &&
            secs < kKernelSeconds;
  return {ok, std::to_string(accept) + " accepting, " + std::to_string(reject) + " rejecting, " +
                  std::to_string(matched) + "/" + std::to_string(judgments.size()) + " match, " +
                  std::to_string(missing) + " rules unannotated"};
}

// ---- C5 ----
bool accepts(const std::string& ctx_text, const std::string& term, const std::string& type) {
  kernel::Context ctx;
  if (!kernel::build_context(kernel::parse_context(ctx_text), ctx).accepted) return false;
  return kernel::check(ctx, kernel::parse_term(term, ctx.names()), kernel::parse_term(type, ctx.names())).accepted;
}

Result church() {
  const std::string nat = "(Pi (D : Prop), D -> (D -> D) -> D)";
  bool weak = accepts("C : Prop, c : C, f : C -> C", "fun (n : " + nat + ") => n C c f", nat + " -> C");
  bool dependent = accepts("P : " + nat + " -> Prop", "fun (n : " + nat + ") => n (fun (m : " + nat + ") => P m)",
                           nat + " -> Prop");
  return {weak && !dependent, std::string("weak eliminator ") + (weak ? "accepted" : "rejected") +
                                  ", dependent motive " + (dependent ? "accepted" : "rejected")};
}

// ---- C6 ----
Result hah_translations() {
  auto formulas = support::hah_corpus();
  std::size_t irrelevant = 0, relevant = 0;
  std::string first_bad;
  for (auto& f : formulas) {
    auto ctx = translate::ctx_of(f);
    irrelevant += kernel::check(ctx, translate::translate(f, translate::Mode::Irrelevant),
                                kernel::sort(kernel::Sort::Prop))
                      .accepted;
    auto v = kernel::check(ctx, translate::translate(f, translate::Mode::Relevant), kernel::sort(kernel::Sort::Set));
    relevant += v.accepted;
    if (!v.accepted && first_bad.empty()) first_bad = holog::show(f) + " (" + v.rule + ")";
  }
  std::string detail = std::to_string(formulas.size()) + " formulas, " + std::to_string(irrelevant) +
                       " irrelevant at Prop, " + std::to_string(relevant) + " relevant at Set";
  if (!first_bad.empty()) detail += "; first rejected: " + first_bad;
  return {formulas.size() == kHahFormulas && irrelevant == kHahFormulas && relevant == kHahFormulas, detail};
}

// ---- C7, C8 ----
struct ManifestStats {
  std::size_t entries = 0, disagree = 0, failed = 0, unknown = 0, expect_true = 0, expect_false = 0;
  std::string text;
};

ManifestStats run_harness(const std::string& file, Nat cutoff) {
  ManifestStats s;
  s.text = slurp(corpus(file));
  cli::RunConfig cfg;
  cfg.cutoff = cutoff;
  cfg.budget = kBudget;
  for (auto& e : cli::run_manifest(s.text, file, cfg)) {
    ++s.entries;
    s.disagree += e.verdict.find("disagree") != std::string::npos;
    s.failed += cli::is_failure(e.verdict);
    s.unknown += e.verdict == "unknown";
  }
  std::istringstream in(s.text);
  for (std::string line; std::getline(in, line);) {
    if (line.rfind("assert-agree", 0) != 0) continue;
    std::istringstream words(line.substr(0, line.find(" : ")));
    std::string directive, label, harness, truth;
    words >> directive >> label >> harness >> truth;
    (truth == "true" ? s.expect_true : s.expect_false)++;
  }
  return s;
}

Result thm1_harness() {
  auto s = run_harness("harness/thm1.manifest", kThm5Cutoff);
  bool covers = s.text.find(" in ") != std::string::npos && s.text.find("->") != std::string::npos &&
                s.text.find("forall") != std::string::npos;
  return {s.entries >= kThm1Min && s.disagree == 0 && s.failed == 0 && covers,
          std::to_string(s.entries) + " sentences, " + std::to_string(s.disagree) + " disagree, " +
              std::to_string(s.failed) + " failed"};
}

Result thm5_harness() {
  auto start = Clock::now();
  auto s = run_harness("harness/thm5.manifest", kThm5Cutoff);
  double secs = seconds_since(start);
  // unflagged unknowns are reported as unexpected-unknown and counted in failed
  return {s.expect_true >= kThm5True && s.expect_false >= kThm5False && s.disagree == 0 && s.failed == 0 &&
              secs < kThm5Seconds,
          std::to_string(s.expect_true) + " true, " + std::to_string(s.expect_false) + " false at cutoff " +
              std::to_string(kThm5Cutoff) + ", " + std::to_string(s.disagree) + " disagree, " +
              std::to_string(s.unknown) + " flagged unknown, " + std::to_string(s.failed) + " failed"};
}

// ---- C9 ----
Result choice() {
  model::World w;
  auto rep = realize::choice_instance(kChoiceDomain, [](Nat x, Nat y) { return y == (x + 1) % kChoiceDomain; }, w);
  return {rep.total && rep.found, "domain {0.." + std::to_string(kChoiceDomain - 1) + "}, " +
                                      std::to_string(rep.hypotheses) + " realized premises, tracker " +
                                      (rep.found ? rep.tracker : std::string("not found"))};
}

// ---- C10 ----
Result forcing_lemmas() {
  auto start = Clock::now();
  auto govern = holog::parse("x = x /\\ y = y");
  auto space = forcing::ConditionSpace::build(kForcingDomain, kForcingCondition, govern, {});
  auto suite = forcing::generate_suite(kForcingFormulas, kForcingDomain, kForcingSeed);
  std::size_t counterexamples = 0, unknown = 0, checks = 0;
  std::string first;
  for (auto& f : suite) {
    auto rep = forcing::check_meta_lemmas(f, space, {});
    checks += rep.checks;
    unknown += rep.unknown;
    if (rep.counterexample) {
      ++counterexamples;
      if (first.empty()) first = holog::show(f) + ": " + *rep.counterexample;
    }
  }
  double secs = seconds_since(start);
  std::string detail = std::to_string(suite.size()) + " formulas, " + std::to_string(space.conditions.size()) +
                       " conditions, " + std::to_string(checks) + " checks, " + std::to_string(counterexamples) +
                       " counterexamples, " + std::to_string(unknown) + " unknown";
  if (!first.empty()) detail += "; " + first;
  return {suite.size() >= kForcingFormulas && counterexamples == 0 && unknown == 0 && secs < kForcingSeconds,
          detail};
}

// ---- C11 ----
// A numeric code built by composing successor, addition, multiplication and
// predecessor with constants.
pca::CodeP random_numeric(std::mt19937_64& rng, int depth) {
  switch (depth <= 0 ? rng() % 2 : rng() % 6) {
    case 0: return pca::I();
    case 1: return pca::app(pca::K(), pca::num(rng() % 20));
    case 2: return pca::ap({pca::S(), pca::app(pca::K(), pca::Suc()), random_numeric(rng, depth - 1)});
    case 3: return pca::ap({pca::S(), pca::app(pca::K(), pca::app(pca::add(), pca::num(rng() % 10))),
                            random_numeric(rng, depth - 1)});
    case 4: return pca::ap({pca::S(), pca::app(pca::K(), pca::app(pca::mul(), pca::num(rng() % 3))),
                            random_numeric(rng, depth - 1)});
    default: return pca::ap({pca::S(), pca::app(pca::K(), pca::pred()), random_numeric(rng, depth - 1)});
  }
}

Result oracle_protocol() {
  std::mt19937_64 rng(303);
  int equal = 0, queried = 0;
  for (int i = 0; i < kOracleSamples; ++i) {
    auto g = random_numeric(rng, 3);
    Nat b = rng() % kOracleInput;
    auto program = pca::abstract("t", pca::ap({pca::npair(), pca::num(1), pca::app(g, pca::var("t"))}));
    pca::Oracle none = pca::undefined_oracle();
    auto via_oracle = pca::eval_oracle(program, b, none, kOracleBudget);
    auto direct = pca::apply(g, pca::num(b), kOracleBudget);
    auto same = pca::kleene_equal(via_oracle, direct);
    equal += same && *same;
    queried += none.queries != 0;
  }
  auto t = pca::var("t");
  auto two_round = pca::abstract("t", pca::ap({pca::cond(), t, pca::ap({pca::npair(), pca::num(0), pca::num(5)}),
                                               pca::ap({pca::npair(), pca::num(1), pca::app(pca::npr1(), t)})}));
  pca::Oracle nine = pca::table_oracle({{5, 9}});
  auto out = pca::eval_oracle(two_round, 0, nine, kBudget);
  bool two_ok = out.ok() && pca::as_num(out.value) == std::optional<Nat>(9) && nine.queries == 1;
  return {equal == kOracleSamples && queried == 0 && two_ok,
          std::to_string(equal) + "/" + std::to_string(kOracleSamples) + " query-free samples equal apply, " +
              "two-round example " + (two_ok ? "returns 9" : "fails")};
}

// ---- C12 ----
std::size_t per_law_violations(const model::Per& r, Nat bound) {
  std::size_t bad = 0;
  for (Nat i = 0; i < bound; ++i)
    for (Nat j = 0; j < bound; ++j) {
      Tri ij = r.relation(i, j);
      if (ij != r.relation(j, i)) ++bad;
      if (ij != Tri::True) continue;
      for (Nat k = 0; k < bound; ++k)
        if (r.relation(j, k) == Tri::True && r.relation(i, k) != Tri::True) ++bad;
    }
  return bad;
}

model::Family constant(model::AssemblyP a) {
  return [a](const model::ElemP&) { return a; };
}

Result model_invariants() {
  using namespace model;
  World w;
  w.nat_bound = 8;
  w.set_base = 3;
  std::size_t per_bad = 0;
  for (Nat n = 0; n <= 5; ++n) per_bad += per_law_violations(Per::fin(n), 8);
  per_bad += per_law_violations(Per::nat(kPerBound), kPerBound);
  per_bad += per_law_violations(Per::parity(kPerBound), kPerBound);

  auto parity = [w](const ElemP& x, const ElemP& y) { return subsingleton(tri(x->n % 2 == y->n % 2), w); };
  auto arity = [w](const ElemP& label) { return fin(label->n, w); };
  std::vector<AssemblyP> suite{fin(0, w), fin(3, w), nat(w), subsingleton(Tri::True, w),
                               subsingleton(Tri::False, w), nabla_subsing(w),
                               sigma(fin(2, w), constant(fin(3, w)), w), pi(fin(2, w), constant(fin(2, w)), w),
                               pi(fin(0, w), constant(fin(2, w)), w), wtype(fin(2, w), arity, w),
                               quot(fin(4, w), parity, w), trunc(fin(2, w), w), power_assembly(1, w)};
  std::size_t elements = 0, unrealized = 0;
  for (auto& a : suite)
    for (auto& e : a->enumerate()) {
      ++elements;
      auto r = a->find_realizer(e);
      if (!r || a->realizes(*r, e) != Tri::True) ++unrealized;
    }
  auto base = fin(2, w), higher = pi(base, constant(fin(2, w)), w);
  bool levels = sigma(base, constant(fin(3, w)), w)->level == base->level &&
                pi(base, constant(fin(3, w)), w)->level == base->level + 1 &&
                wtype(base, arity, w)->level == base->level + 1 &&
                sigma(higher, constant(base), w)->level == higher->level &&
                pi(base, constant(higher), w)->level == higher->level + 1;
  return {per_bad == 0 && unrealized == 0 && levels,
          std::to_string(per_bad) + " PER law violations, " + std::to_string(elements) + " elements, " +
              std::to_string(unrealized) + " without realizer, levels " + (levels ? "ok" : "wrong")};
}

// ---- C13 ----
Result preservation() {
  using namespace model;
  World w;
  w.nat_bound = 8;
  w.set_base = 3;
  auto yes = subsingleton(Tri::True, w), no = subsingleton(Tri::False, w);
  auto parity = [w](const ElemP& x, const ElemP& y) { return subsingleton(tri(x->n % 2 == y->n % 2), w); };
  struct Case {
    std::string name;
    AssemblyP a;
    Category target;
  };
  std::vector<Case> cases{
      {"sigma(1,1)", sigma(yes, constant(yes), w), Category::Subsing},
      {"sigma(1,0)", sigma(yes, constant(no), w), Category::Subsing},
      {"pi(fin2,1)", pi(fin(2, w), constant(yes), w), Category::Subsing},
      {"pi(0,0)", pi(no, constant(no), w), Category::Subsing},
      {"w(1,0)", wtype(yes, constant(no), w), Category::Subsing},
      {"w(0,1)", wtype(no, constant(yes), w), Category::Subsing},
      {"quot(1)", quot(yes, [w](const ElemP&, const ElemP&) { return subsingleton(Tri::True, w); }, w),
       Category::Subsing},
      {"sigma(fin2,fin2)", sigma(fin(2, w), constant(fin(2, w)), w), Category::Per},
      {"sigma(fin2,fin1)", sigma(fin(2, w), constant(fin(1, w)), w), Category::Per},
      {"pi(fin1,fin3)", pi(fin(1, w), constant(fin(3, w)), w), Category::Per},
      {"pi(fin2,fin2)", pi(fin(2, w), constant(fin(2, w)), w), Category::Per},
      {"w(fin1,fin0)", wtype(fin(1, w), constant(fin(0, w)), w), Category::Per},
      {"w(fin2,fin0)", wtype(fin(2, w), constant(fin(0, w)), w), Category::Per},
      {"quot(fin4,parity)", quot(fin(4, w), parity, w), Category::Per},
      {"quot(fin3,total)", quot(fin(3, w), [w](const ElemP&, const ElemP&) { return subsingleton(Tri::True, w); }, w),
       Category::Per},
  };
  std::size_t found = 0, too_big = 0;
  std::string missing;
  for (auto& c : cases) {
    if (c.a->enumerate().size() > kSmallElements) {
      ++too_big;
      continue;
    }
    if (iso_to_small(c.a, c.target)) ++found;
    else missing += " " + c.name;
  }
  return {found + too_big == cases.size() && too_big == 0,
          std::to_string(found) + "/" + std::to_string(cases.size()) + " isomorphisms found" +
              (missing.empty() ? "" : "; missing:" + missing)};
}

}  // namespace

int main() {
  report(1, "pca-axioms", pca_axioms);
  report(2, "beta-law", beta_law);
  report(3, "pairing", pairing);
  report(4, "kernel-corpus", kernel_corpus);
  report(5, "church-numerals", church);
  report(6, "hah-translations", hah_translations);
  report(7, "thm1-harness", thm1_harness);
  report(8, "thm5-harness", thm5_harness);
  report(9, "choice-instance", choice);
  report(10, "forcing-meta-lemmas", forcing_lemmas);
  report(11, "oracle-protocol", oracle_protocol);
  report(12, "model-invariants", model_invariants);
  report(13, "preservation", preservation);
  std::cout << (13 - failures) << "/13 criteria pass" << std::endl;
  return failures == 0 ? 0 : 1;
}
