#pragma once
// Combinator codes over k, s, suc, rec and numerals, with a step-budgeted
// evaluator, Cantor pairing, bracket abstraction and the oracle protocol.
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace cwb::pca {

using Nat = std::uint64_t;
using Big = boost::multiprecision::cpp_int;

enum class Const { K, S, Suc, Rec };

struct Code;
using CodeP = std::shared_ptr<const Code>;

struct Code {
  enum class Kind { Const, Num, App, Var };
  Kind kind;
  Const c = Const::K;
  Nat n = 0;
  std::string name;  // Var only; open terms exist only before abstraction
  CodeP fun, arg;
};

CodeP K();
CodeP S();
CodeP Suc();
CodeP Rec();
CodeP num(Nat n);
CodeP var(const std::string& name);
CodeP app(CodeP f, CodeP a);
// Left-nested application: ap({f, a, b}) = (f a) b.
CodeP ap(std::initializer_list<CodeP> xs);
CodeP ap(const std::vector<CodeP>& xs);

bool equal(const CodeP& a, const CodeP& b);
bool less(const CodeP& a, const CodeP& b);  // total order, used for sets/maps
std::string show(const CodeP& c);
std::size_t size(const CodeP& c);
bool closed(const CodeP& c);
bool occurs(const std::string& x, const CodeP& c);
CodeP subst(const CodeP& c, const std::string& x, const CodeP& v);

// Normal forms: constants, numerals, and constants applied to fewer values
// than their arity (k a; s a; s a b; rec a; rec a b).
bool is_value(const CodeP& c);
std::optional<Nat> as_num(const CodeP& c);

struct CodeLess {
  bool operator()(const CodeP& a, const CodeP& b) const { return less(a, b); }
};

// ---- pairing on naturals ----
class overflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

Nat pair(Nat a, Nat b);
std::pair<Nat, Nat> unpair(Nat n);
// Right-nested tuples: <a0,...,an-1> = <a0,<a1,...>>; a singleton is itself.
Nat tuple(const std::vector<Nat>& xs);
std::vector<Nat> untuple(Nat n, std::size_t len);

// ---- evaluation ----
struct Oracle {
  std::function<std::optional<Nat>(Nat)> fn;
  std::map<Nat, std::optional<Nat>> memo;
  std::size_t queries = 0;
  std::optional<Nat> query(Nat x);
};

Oracle undefined_oracle();
Oracle table_oracle(std::map<Nat, Nat> table);

struct Outcome {
  enum class Kind { Value, Diverged, Stuck };
  Kind kind = Kind::Diverged;
  CodeP value;
  Nat steps = 0;
  std::string reason;
  // Diverged because an oracle had no answer, not because the budget ran out.
  bool oracle_undefined = false;

  bool ok() const { return kind == Kind::Value; }
  bool diverged() const { return kind == Kind::Diverged; }
  bool stuck() const { return kind == Kind::Stuck; }
  // Definitely undefined in the bounded world (stuck or oracle gap).
  bool undefined() const { return stuck() || (diverged() && oracle_undefined); }
};

std::string show(const Outcome& o);

// Free variables of an open code may be bound to oracles; applying such a
// variable to a numeral queries the oracle (the relativized algebra).
using OracleBindings = std::map<std::string, Oracle*>;

Outcome eval(const CodeP& t, Nat budget, OracleBindings* oracles = nullptr);
Outcome apply(const CodeP& f, const CodeP& a, Nat budget,
              OracleBindings* oracles = nullptr);
Outcome apply(const CodeP& f, const std::vector<CodeP>& args, Nat budget,
              OracleBindings* oracles = nullptr);

// Kleene equality of two outcomes: both values and equal, or both without a
// value. Returns nullopt if either side ran out of budget.
std::optional<bool> kleene_equal(const Outcome& a, const Outcome& b);

// ---- bracket abstraction ----
class unbound_variable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rejects free variables other than x.
CodeP abstract(const std::string& x, const CodeP& body);
// Allows other free variables to remain (used for nested binders).
CodeP abstract_open(const std::string& x, const CodeP& body);
// lambda({x,y}, b) = abstract_open(x, abstract_open(y, b)).
CodeP lambda(const std::vector<std::string>& xs, const CodeP& body);

// ---- library codes ----
CodeP I();
CodeP add();   // add y n = n + y
CodeP mul();   // mul y n = n * y
CodeP pred();
CodeP sub();   // sub m n = m - n (truncated)
CodeP iszero();  // 0 on zero, 1 otherwise
CodeP cond();    // cond n a b = a if n = 0 else b
CodeP eqnum();   // 0 iff equal
// Arithmetic Cantor pairing on numerals, rec based.
CodeP npair();
CodeP npr0();
CodeP npr1();
// Combinatory pairing on arbitrary values: pairing f a b = f a b style.
CodeP vpair();
CodeP vpr0();
CodeP vpr1();
CodeP omega();  // a code with no value

// ---- oracle protocol ----
Outcome eval_oracle(const CodeP& a, Nat b, Oracle& f, Nat budget);

// ---- Goedel numbering (closed codes only) ----
Big godel(const CodeP& c);
CodeP ungodel(const Big& n);

// ---- text syntax ----
class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& msg, std::size_t line, std::size_t col)
      : std::runtime_error(msg), line(line), col(col) {}
  std::size_t line, col;
};

// `k s suc rec`, decimal numerals, juxtaposition, parentheses, `\x y. body`;
// library names add mul pred sub pair fst snd npair npr0 npr1 I.
CodeP parse(const std::string& text);

}  // namespace cwb::pca
