#pragma once
// Interpretation of higher-order arithmetic formulas as types: a
// proof-relevant reading landing in Set and a proof-irrelevant one in Prop.
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cwb/holog.hpp"
#include "cwb/kernel.hpp"

namespace cwb::translate {

enum class Mode { Relevant, Irrelevant };
std::string to_string(Mode m);
kernel::Sort target_sort(Mode m);

class unsupported : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// P^n Nat with P B := B -> Prop
kernel::TermP power_type(int n);

// Arithmetic on Nat by recursion on the first argument, so that the
// defining equations of + and * hold by conversion.
kernel::TermP add_fn();
kernel::TermP mul_fn();
kernel::TermP pred_fn();
// Sigma (b : Fin 2), ind_fin {_ => Set} 2 A B b
kernel::TermP sum_type(const kernel::TermP& a, const kernel::TermP& b);

// One entry per free variable, ordered by first occurrence. Names that
// clash with kernel keywords get a trailing underscore.
kernel::Context ctx_of(const holog::FormulaP& a);
std::string kernel_name(const std::string& holog_name);

// Throws unsupported for atoms outside the pure higher-order language
// (application, definedness, function symbols, epsilon terms, relation
// symbols) and for range-bounded quantifiers.
kernel::TermP translate(const holog::FormulaP& a, Mode mode);
kernel::TermP translate_term(const holog::TermP& t, const std::vector<std::string>& scope);

// Removes every truncation former and truncation introduction.
kernel::TermP erase_truncations(const kernel::TermP& t);

struct AxiomInstance {
  std::string name;
  holog::FormulaP formula;
  kernel::Context ctx;
  kernel::TermP type;
  std::optional<kernel::TermP> inhabitant;
};

// Arithmetic axioms, an extensionality and a comprehension instance, and an
// induction instance, translated in the given mode, with inhabitants for
// the ones provable by a short term.
std::vector<AxiomInstance> axiom_instances(Mode mode);

}  // namespace cwb::translate
