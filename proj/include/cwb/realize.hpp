#pragma once
// Realizability of arithmetic formulas: the clause-wise relation for the
// proof-relevant reading, canonical realizers with epsilon oracles, and the
// two equivalence harnesses comparing the model against bounded truth.
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "cwb/holog.hpp"
#include "cwb/model.hpp"
#include "cwb/pca.hpp"
#include "cwb/translate.hpp"

namespace cwb::realize {

using pca::CodeP;
using pca::Nat;

class unsupported : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---- level conversions between holog values and model elements ----
model::ElemP to_elem(const holog::Value& v);
holog::Value to_value(const model::ElemP& e, int sort);
// The context point of A: g applied to each free variable's value, in
// ctx_of order.
model::Env point_of(const holog::FormulaP& a, const holog::Env& env, const model::World& w);

struct Config {
  holog::EvalConfig eval;
  // Realizers tried for implication hypotheses: numerals 0..pool_bound and
  // the canonical realizer of the hypothesis.
  Nat pool_bound = 3;
};

// Epsilon constants of a canonical realizer, bound as oracles.
struct Canonical {
  CodeP code;                       // lambda over the free variables
  std::vector<std::string> params;  // free variables, in order
  struct Eps {
    std::string name;  // oracle variable in code
    std::string y;
    std::vector<std::string> params;
    holog::FormulaP body;
  };
  std::vector<Eps> epsilons;
  // Instantiated oracles; rebuilt by bind().
  std::map<std::string, pca::Oracle> oracles;
  pca::OracleBindings bindings;

  void bind(const holog::EvalConfig& cfg);
};

// Clauses: = is truth, /\ componentwise on projections, -> over related
// hypothesis realizers, exists by equal first projections, forall
// pointwise over 0..cutoff. Input must be first-order without \/, bot, top.
Tri realizes(const CodeP& z, const CodeP& z2, const holog::FormulaP& a, const holog::Env& env,
             const Config& cfg);

std::shared_ptr<Canonical> canonical_realizer(const holog::FormulaP& a, const holog::EvalConfig& cfg);

enum class Agreement { AgreeTrue, AgreeFalse, Disagree, Unknown };
std::string to_string(Agreement a);
Agreement combine(Tri model_side, Tri truth_side);

struct Report {
  Agreement verdict = Agreement::Unknown;
  Tri model_side = Tri::Unknown;
  Tri truth_side = Tri::Unknown;
  std::string realizer;            // shown code
  std::vector<std::string> trace;  // evaluation and oracle steps
  std::string detail;
};

// Canonical realizer applied to the free variables, checked against the
// clauses, compared with eval_bounded. Epsilon searches use the same bound
// as the evaluator's existential search.
Report check_relevant_soundness(const holog::FormulaP& a, const holog::Env& env, const Config& cfg);

// Inhabitation of the denotation of the proof-irrelevant translation at the
// context point, compared with eval_bounded at witness slack 0 over the
// same finite world (naturals 0..cutoff, sets over 0..cutoff; the configured
// set base is ignored).
Report check_irrelevant_equiv(const holog::FormulaP& a, const holog::Env& env, const Config& cfg);
model::World world_of(const holog::EvalConfig& cfg);

// ---- choice over a finite domain ----
struct ChoiceReport {
  bool total = false;   // every x has some y with <x,y> in Z
  bool found = false;   // tracker found
  std::string tracker;
  std::size_t hypotheses = 0;  // realized elements of the premise
};
// Premise: Pi (x : Fin n) Sigma (y : Fin n) Z(x,y). Conclusion:
// Sigma (F : Fin n -> Fin n) Pi (x : Fin n) Z(x, F x). The map sends h to
// (fst o h, snd o h); a tracker is searched among the uniform
// projection code, tables and small codes.
ChoiceReport choice_instance(Nat n, const std::function<bool(Nat, Nat)>& z, const model::World& w);

}  // namespace cwb::realize
