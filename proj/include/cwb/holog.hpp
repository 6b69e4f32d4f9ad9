#pragma once
// Monadic higher-order arithmetic: sorted terms, formulas with partial-term
// atoms, derived connectives, axiom lists and a bounded three-valued
// evaluator.
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "cwb/pca.hpp"
#include "cwb/tri.hpp"

namespace cwb::holog {

using pca::Nat;

enum class Theory { HA, HAH, HAHP, HAHPeps, HAHPR, HAHPf };
std::string to_string(Theory t);
// Language inclusion: every formula of `sub` is a formula of `super`.
bool extends(Theory super, Theory sub);

struct Term;
struct Formula;
using TermP = std::shared_ptr<const Term>;
using FormulaP = std::shared_ptr<const Formula>;

struct Term {
  enum class Kind { Var, Zero, Succ, Add, Mul, App, Const, Eps, Fun };
  Kind kind;
  std::string name;  // Var, Fun; Eps: the chosen variable
  int sort = 0;      // Var only
  TermP a, b;
  pca::Const c = pca::Const::K;
  // Eps: body over params + name; args instantiate params.
  std::vector<std::string> params;
  FormulaP body;
  std::vector<TermP> args;  // Eps, Fun
};

struct Formula {
  enum class Kind { Eq, Elem, Defined, Rel, Bot, Top, Or, And, Imp, Exists, Forall };
  Kind kind;
  int sort = 0;      // Eq: operand sort; quantifiers: bound variable sort
  TermP a, b;        // Eq, Elem (a in b), Defined (a)
  std::string name;  // Rel symbol or bound variable
  std::vector<TermP> args;  // Rel
  FormulaP l, r;            // connectives; quantifier body in l
  std::optional<Nat> range; // sort-0 quantifier over 0..range exactly
};

class syntax_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class unbound_variable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class resource_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---- terms ----
TermP var(const std::string& name, int sort = 0);
TermP zero();
TermP succ(TermP t);
TermP numeral(Nat n);  // S^n 0
TermP add(TermP a, TermP b);
TermP mul(TermP a, TermP b);
TermP app(TermP f, TermP a);
TermP constant(pca::Const c);
TermP fun(const std::string& name, std::vector<TermP> args);
// eps y. body, parameters are the free variables of body other than y.
TermP eps(const std::string& y, FormulaP body);
TermP eps_at(const std::string& y, std::vector<std::string> params, FormulaP body,
             std::vector<TermP> args);
int sort_of(const TermP& t);

// ---- formulas ----
FormulaP eq(TermP a, TermP b);
FormulaP elem(TermP a, TermP b);
FormulaP defined(TermP a);
FormulaP rel(const std::string& name, std::vector<TermP> args);
FormulaP bot();
FormulaP top();
FormulaP or_(FormulaP a, FormulaP b);
FormulaP and_(FormulaP a, FormulaP b);
FormulaP imp(FormulaP a, FormulaP b);
FormulaP neg(FormulaP a);                 // a -> bot
FormulaP iff(FormulaP a, FormulaP b);     // (a -> b) /\ (b -> a)
FormulaP neq(TermP a, TermP b);
FormulaP kleene_eq(TermP a, TermP b);     // (a! \/ b!) -> a = b
FormulaP exists(const std::string& x, int sort, FormulaP body,
                std::optional<Nat> range = std::nullopt);
FormulaP forall(const std::string& x, int sort, FormulaP body,
                std::optional<Nat> range = std::nullopt);
// <a,b> in X spelled with + and *: exists p (p+p = (a+b)*S(a+b) + (b+b) /\ p in X)
FormulaP pair_in(TermP a, TermP b, TermP set);

// ---- structure ----
using VarList = std::vector<std::pair<std::string, int>>;
VarList free_vars(const FormulaP& f);  // ordered by first occurrence
VarList free_vars(const TermP& t);
bool occurs_free(const std::string& x, const FormulaP& f);
std::set<std::string> all_names(const FormulaP& f);
std::string fresh(const std::string& base, const std::set<std::string>& avoid);
TermP subst(const TermP& t, const std::string& x, const TermP& v);
FormulaP subst(const FormulaP& f, const std::string& x, const TermP& v);
bool alpha_equal(const FormulaP& a, const FormulaP& b);
bool alpha_equal(const TermP& a, const TermP& b);
// Canonical text with bound variables renamed; equal iff alpha-equal.
std::string alpha_key(const FormulaP& f);
std::size_t size(const FormulaP& f);
bool first_order(const FormulaP& f);

Theory theory_of(const FormulaP& f);
// Throws syntax_error when f uses symbols outside the language of `tag`.
void check_theory(const FormulaP& f, Theory tag);

std::string show(const TermP& t);
std::string show(const FormulaP& f);
TermP parse_term(const std::string& text);
FormulaP parse(const std::string& text);

// ---- derived connectives ----
// Rewrites into in, -> and forall only; the nullary proposition is
// simulated by `fill in X` for a fresh sort-1 X and a sort-0 variable named
// `fill` (renamed when it clashes).
FormulaP expand_impredicative(const FormulaP& f, const std::string& fill = "x");
std::string expand_fill_variable(const FormulaP& f, const std::string& fill = "x");
// Removes \/, bot and top from first-order formulas.
FormulaP desugar_first_order(const FormulaP& f);

// ---- partial terms ----
struct Obligation {
  TermP term;       // must be defined
  std::string rule; // "down-fun" or "down-rel"
};
std::vector<Obligation> wf_partial_terms(const FormulaP& f);

// ---- axioms ----
struct Axiom {
  std::string name;
  FormulaP formula;
};
std::vector<Axiom> arithmetic_axioms(Theory tag);
FormulaP induction(const std::string& x, const FormulaP& a);
FormulaP extensionality(int n);
FormulaP comprehension(int n, const std::string& z, const FormulaP& p);
std::vector<Axiom> epsilon_axioms(const TermP& eps_term);
std::vector<Axiom> relation_axioms(const std::string& r, const std::string& x,
                                   const std::string& y, const FormulaP& a);
std::vector<Axiom> function_axioms(const std::string& f, const std::string& x,
                                   const std::string& y, const FormulaP& a);

// ---- semantic values ----
struct HSet {
  int level = 1;          // elements have sort level-1
  std::set<Nat> nats;     // level 1
  std::set<HSet> sets;    // level >= 2
  bool operator<(const HSet& o) const;
  bool operator==(const HSet& o) const;
};

struct Value {
  int sort = 0;
  pca::CodeP code;  // sort 0
  HSet set;         // sort >= 1
};

Value nat_value(Nat n);
Value code_value(pca::CodeP c);
Value set_value(HSet s);
HSet nat_set(std::set<Nat> xs);
bool value_equal(const Value& a, const Value& b);
bool value_less(const Value& a, const Value& b);
std::string show(const Value& v);
std::string show(const HSet& s);

using Env = std::map<std::string, Value>;

enum class Truncation { Exact, Flag };

struct EvalConfig {
  Nat cutoff = 64;
  Nat budget = 100000;
  Truncation policy = Truncation::Exact;
  // Exists at sort 0 searches 0..cutoff+witness_slack.
  Nat witness_slack = 1;
  // Sort-1 universe: subsets of 0..set_base-1; defaults to cutoff+1.
  std::optional<Nat> set_base;
  std::function<Tri(const std::string&, const std::vector<Value>&)> rel;
  std::function<std::optional<Nat>(const std::string&, const std::vector<Nat>&)> fun;
  pca::OracleBindings* oracles = nullptr;
};

// Enumerates the finite universe of a higher sort.
const std::vector<HSet>& universe(int sort, const EvalConfig& cfg);

struct TermResult {
  enum class Kind { Defined, Undefined, Unknown };
  Kind kind = Kind::Unknown;
  Value value;
};
TermResult eval_term(const TermP& t, const Env& env, const EvalConfig& cfg);
Tri eval_bounded(const FormulaP& f, const Env& env, const EvalConfig& cfg);

// Least witness y <= bound with body[params := args, y] true. nullopt when
// no witness was found; throws nothing for Unknown, which is reported as
// `unknown` through the optional flag.
struct WitnessSearch {
  std::optional<Nat> witness;
  bool unknown = false;
};
WitnessSearch least_witness(const std::string& y, const FormulaP& body, const Env& env,
                            Nat bound, const EvalConfig& cfg);

// Oracle for eps y. body: argument is the tuple of parameter values (the
// value itself for one parameter, ignored for none).
pca::Oracle epsilon(const std::string& y, const std::vector<std::string>& params,
                    const FormulaP& body, Nat search_cutoff, const EvalConfig& cfg);
pca::Oracle epsilon(const TermP& eps_term, Nat search_cutoff, const EvalConfig& cfg);

}  // namespace cwb::holog
