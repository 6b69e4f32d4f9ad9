#pragma once
// Type checker for an extensional calculus with Prop, Set : Type, finite
// types, naturals, Sigma, Pi, W, identity, truncation and quotients.
// Variables are de Bruijn indices; binder names are kept for printing.
// Eliminator motives are lambdas whose body is checked as an open type, so
// a motive may land in Set or Type without forming a Pi into Type.
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "cwb/pca.hpp"

namespace cwb::kernel {

using Nat = std::uint64_t;

enum class Sort { Prop, Set, Type };
std::string to_string(Sort s);

struct Term;
using TermP = std::shared_ptr<const Term>;

struct Term {
  enum class Kind {
    Sort, Var, Pi, Lam, App, Sigma, Pair, IndSigma, W, Tree, IndW,
    Fin, FinEl, IndFin, Nat, Zero, Succ, IndNat, Id, Refl, IndId, Transport,
    Trunc, TrIn, IndTrunc, Quot, Cls, QuotAx, IndQuot, Propext
  };
  Kind kind;
  Sort sort = Sort::Prop;
  std::size_t index = 0;  // Var
  std::string name;       // binder or variable name
  Nat n = 0, k = 0;       // Fin n, FinEl k n, IndFin n
  // Field use per kind:
  //   Pi Lam Sigma W: a domain, b body (one binder)
  //   App: a function, b argument
  //   Pair: a Sigma annotation, b first, c second
  //   Tree: a W annotation, b label, c subtree map
  //   Id: a type, b lhs, c rhs;  Refl/TrIn/Succ: a
  //   Trunc: a;  Quot: a type, b relation;  Cls: a Quot annotation, b element
  //   QuotAx: a Quot annotation
  //   Ind*: a motive, then b, c (IndFin keeps cases in args)
  //   Transport: a motive, b path, c transported term
  TermP a, b, c;
  std::vector<TermP> args;
};

// ---- constructors ----
TermP sort(Sort s);
TermP var(std::size_t index, const std::string& name = "");
TermP pi(const std::string& x, TermP dom, TermP body);
TermP arrow(TermP dom, TermP cod);  // cod is shifted under the binder
TermP lam(const std::string& x, TermP dom, TermP body);
TermP app(TermP f, TermP a);
TermP apps(TermP f, const std::vector<TermP>& as);
TermP sigma(const std::string& x, TermP dom, TermP body);
TermP product(TermP a, TermP b);
TermP pair(TermP sigma_type, TermP a, TermP b);
TermP ind_sigma(TermP motive, TermP f);
TermP wtype(const std::string& x, TermP dom, TermP body);
TermP tree(TermP w_type, TermP label, TermP sub);
TermP ind_w(TermP motive, TermP f);
TermP fin(Nat n);
TermP fin_el(Nat k, Nat n);
TermP ind_fin(TermP motive, Nat n, std::vector<TermP> cases);
TermP nat();
TermP zero();
TermP succ(TermP n);
TermP numeral(Nat n);
TermP ind_nat(TermP motive, TermP base, TermP step);
TermP id(TermP type, TermP lhs, TermP rhs);
TermP refl(TermP a);
TermP ind_id(TermP motive, TermP f);
TermP transport(TermP motive, TermP path, TermP t);
TermP trunc(TermP a);
TermP tr_in(TermP a);
TermP ind_trunc(TermP motive, TermP f, TermP h);
TermP quot(TermP type, TermP relation);
TermP cls(TermP quot_type, TermP a);
TermP quot_ax(TermP quot_type);
TermP ind_quot(TermP motive, TermP f, TermP h);
TermP propext();

// ---- de Bruijn operations ----
TermP shift(const TermP& t, long d, std::size_t cutoff = 0);
// Replaces index j by s and lowers the indices above it; s lives in the
// context with entry j removed.
TermP subst(const TermP& t, std::size_t j, const TermP& s);
TermP instantiate(const TermP& body, const TermP& arg);
bool syntactic_equal(const TermP& a, const TermP& b);  // ignores names
bool occurs(std::size_t index, const TermP& t);

// ---- contexts ----
struct Hint {
  TermP lhs, rhs;     // at depth `depth`
  std::size_t depth;
  TermP proof;
};

struct Context {
  std::vector<std::pair<std::string, TermP>> vars;  // types relative to prefix
  std::vector<Hint> hints;
  std::size_t depth() const { return vars.size(); }
  TermP type_of(std::size_t index) const;  // shifted to the current depth
  Context extend(const std::string& x, TermP type) const;
  std::vector<std::string> names() const;
};

// ---- verdicts ----
struct Verdict {
  bool accepted = false;
  TermP type;
  std::string rule;      // rejected: violated rule
  std::string location;  // rejected: subterm
  std::string reason;
  std::set<std::string> rules_used;  // accepted: rules of the derivation
};

class type_error : public std::runtime_error {
 public:
  type_error(std::string rule, std::string location, const std::string& reason)
      : std::runtime_error(reason), rule(std::move(rule)), location(std::move(location)) {}
  std::string rule, location;
};

struct Options {
  std::size_t hint_fuel = 64;
  std::size_t reduction_fuel = 100000;
};

Verdict infer(const Context& ctx, const TermP& t, const Options& opt = {});
Verdict check(const Context& ctx, const TermP& t, const TermP& ty, const Options& opt = {});
// Adds a hint after checking that proof : Id A lhs rhs.
Verdict add_hint(Context& ctx, const TermP& proof, const Options& opt = {});
// h : Pi (t : Trunc A), Pi (c c' : C t), Id (C t) c c'  for motive C over Trunc A.
Verdict check_hprop_obligation(const Context& ctx, const TermP& motive, const TermP& h,
                               const Options& opt = {});

TermP whnf(const Context& ctx, const TermP& t, const Options& opt = {});
TermP normalize(const Context& ctx, const TermP& t, const Options& opt = {});
bool conv(const Context& ctx, const TermP& a, const TermP& b, const Options& opt = {});

// ---- text syntax ----
class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& msg, std::size_t line, std::size_t col)
      : std::runtime_error(msg), line(line), col(col) {}
  std::size_t line, col;
};

std::string show(const TermP& t, const std::vector<std::string>& names = {});
bool is_reserved(const std::string& word);
TermP parse_term(const std::string& text, const std::vector<std::string>& scope = {});

// `x : A, y : B, hint p` (possibly empty)
struct ContextEntry {
  bool hint = false;
  std::string name;
  TermP term;  // type of the variable, or the hint proof
};
std::vector<ContextEntry> parse_context(const std::string& text);
// Checks the entries in order and builds the context.
Verdict build_context(const std::vector<ContextEntry>& entries, Context& out,
                      const Options& opt = {});
std::string show(const Context& ctx);

// One corpus line:
//   assert-type <label> [rule, ...] : <ctx> |- <term> : <type>
//   assert-fail <label> [rule] : <ctx> |- <term> : <type>
struct Judgment {
  bool expect_accept = true;
  std::string label;
  std::vector<std::string> rules;
  std::string ctx_text, term_text, type_text;
  std::size_t line = 0;
};
std::vector<Judgment> parse_corpus(const std::string& text);

struct JudgmentResult {
  Judgment judgment;
  Verdict verdict;
  bool matches = false;  // accepted iff expected, annotated rules present
  std::string detail;
};
JudgmentResult run_judgment(const Judgment& j, const Options& opt = {});

// Every rule name the checker can report.
const std::vector<std::string>& rule_names();

}  // namespace cwb::kernel
