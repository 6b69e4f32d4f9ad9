#pragma once
// Forcing over finite approximations of a binary relation R, the
// meta-lemma checks on a finite condition poset, and the merging of
// finitely many epsilon bodies into one.
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cwb/holog.hpp"

namespace cwb::forcing {

using pca::Nat;

class forcing_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class resource_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Condition = std::vector<std::pair<Nat, Nat>>;  // sorted, first components distinct

// All conditions over domain 0..domain-1 with at most max_size pairs, each
// pair satisfying the governing formula in x and y. Conditions are coded by
// their index; index 0 is the empty condition.
struct ConditionSpace {
  Nat domain = 4;
  std::size_t max_size = 2;
  holog::FormulaP govern;  // free in x and y
  std::vector<Condition> conditions;

  static ConditionSpace build(Nat domain, std::size_t max_size, const holog::FormulaP& govern,
                              const holog::EvalConfig& cfg, std::size_t limit = 20000);
  bool extends(std::size_t sub, std::size_t super) const;
  bool member(Nat x, Nat y, std::size_t p) const;
  std::string show(std::size_t p) const;
  // Interprets the guard relations cond(P), sub(P,Q) and mem(x,y,P).
  Tri relation(const std::string& name, const std::vector<holog::Value>& args) const;
};

// Names of the guard relations and of the forced relation symbol.
inline const std::string kRelation = "R";
inline const std::string kCond = "cond";
inline const std::string kSub = "sub";
inline const std::string kMem = "mem";

// P ||- A as a formula in the condition variable p; condition quantifiers
// range over codes 0..max_code guarded by cond and sub. R-free atoms are
// unchanged. Relation symbols other than R are rejected.
holog::FormulaP force(const std::string& p, const holog::FormulaP& a, Nat max_code);

// The evaluation config for forced formulas over a space: objects range
// over the domain exactly and the guard relations are interpreted.
holog::EvalConfig forcing_config(const ConditionSpace& space, const holog::EvalConfig& base);

struct LemmaReport {
  std::size_t conditions = 0;
  std::size_t checks = 0;
  bool base_applicable = false;  // the formula is R-free
  std::optional<std::string> counterexample;
  bool unknown = false;          // some instance evaluated to unknown
};

// Monotonicity, density and (for R-free formulas) the base lemma, checked
// exhaustively over the space and all assignments of the free variables in
// the domain.
LemmaReport check_meta_lemmas(const holog::FormulaP& a, const ConditionSpace& space,
                              const holog::EvalConfig& base);

// Deterministic suite of formulas over R, equality, connectives and
// quantifiers, with numerals below the domain bound.
std::vector<holog::FormulaP> generate_suite(std::size_t count, Nat domain, std::uint32_t seed);

// C[z,y] := /\_i forall xs (z = <i,xs> -> B_i[xs,y]) with tuples coded as
// in pca::tuple. Each body's parameters are its free variables other than y.
struct Merged {
  holog::FormulaP body;  // free in z and y
  std::string z, y;
  std::vector<std::vector<std::string>> params;
};
Merged merge_epsilons(const std::vector<holog::FormulaP>& bodies, const std::string& y = "y");
// z = <a,b> spelled with + and *.
holog::FormulaP pair_eq(const holog::TermP& z, const holog::TermP& a, const holog::TermP& b);

}  // namespace cwb::forcing
