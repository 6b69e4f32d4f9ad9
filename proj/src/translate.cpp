#include "cwb/translate.hpp"

#include <functional>
#include <map>

namespace cwb::translate {

namespace k = cwb::kernel;
namespace h = cwb::holog;
using HK = h::Formula::Kind;
using TK = h::Term::Kind;

std::string to_string(Mode m) { return m == Mode::Relevant ? "relevant" : "irrelevant"; }

k::Sort target_sort(Mode m) { return m == Mode::Relevant ? k::Sort::Set : k::Sort::Prop; }

k::TermP power_type(int n) {
  k::TermP t = k::nat();
  for (int i = 0; i < n; ++i) t = k::arrow(t, k::sort(k::Sort::Prop));
  return t;
}

namespace {

k::TermP nat_motive() { return k::lam("k", k::nat(), k::nat()); }

}  // namespace

k::TermP add_fn() {
  // fun m n => ind_nat {_ => Nat} n (fun k r => S r) m
  auto step = k::lam("k", k::nat(), k::lam("r", k::nat(), k::succ(k::var(0, "r"))));
  auto body = k::app(k::ind_nat(nat_motive(), k::var(0, "n"), step), k::var(1, "m"));
  return k::lam("m", k::nat(), k::lam("n", k::nat(), body));
}

k::TermP mul_fn() {
  // fun m n => ind_nat {_ => Nat} 0 (fun k r => add r n) m
  auto step = k::lam("k", k::nat(),
                     k::lam("r", k::nat(), k::apps(add_fn(), {k::var(0, "r"), k::var(2, "n")})));
  auto body = k::app(k::ind_nat(nat_motive(), k::zero(), step), k::var(1, "m"));
  return k::lam("m", k::nat(), k::lam("n", k::nat(), body));
}

k::TermP pred_fn() {
  auto step = k::lam("k", k::nat(), k::lam("r", k::nat(), k::var(1, "k")));
  return k::lam("m", k::nat(), k::app(k::ind_nat(nat_motive(), k::zero(), step), k::var(0, "m")));
}

k::TermP sum_type(const k::TermP& a, const k::TermP& b) {
  auto motive = k::lam("k", k::fin(2), k::sort(k::Sort::Set));
  auto cases = k::ind_fin(motive, 2, {k::shift(a, 1), k::shift(b, 1)});
  return k::sigma("b", k::fin(2), k::app(cases, k::var(0, "b")));
}

std::string kernel_name(const std::string& holog_name) {
  std::string n = holog_name;
  while (k::is_reserved(n)) n += "_";
  return n;
}

k::Context ctx_of(const h::FormulaP& a) {
  k::Context ctx;
  for (auto& [x, s] : h::free_vars(a)) ctx.vars.emplace_back(kernel_name(x), power_type(s));
  return ctx;
}

namespace {

k::TermP lookup(const std::string& name, const std::vector<std::string>& scope) {
  std::string kn = kernel_name(name);
  for (std::size_t i = scope.size(); i-- > 0;)
    if (scope[i] == kn) return k::var(scope.size() - 1 - i, kn);
  throw unsupported("translate: unbound variable " + name);
}

class Translator {
 public:
  explicit Translator(Mode mode) : mode_(mode) {}

  k::TermP wrap(k::TermP t) const { return mode_ == Mode::Irrelevant ? k::trunc(std::move(t)) : t; }

  k::TermP go(const h::FormulaP& f, std::vector<std::string>& scope) {
    switch (f->kind) {
      case HK::Eq:
        if (f->sort == 0) return wrap(k::id(k::nat(), translate_term(f->a, scope), translate_term(f->b, scope)));
        return wrap(k::id(power_type(f->sort), translate_term(f->a, scope), translate_term(f->b, scope)));
      case HK::Elem: return wrap(k::app(translate_term(f->b, scope), translate_term(f->a, scope)));
      case HK::Bot: return wrap(k::fin(0));
      case HK::Top: return wrap(k::fin(1));
      case HK::Or: return wrap(sum_type(go(f->l, scope), go(f->r, scope)));
      case HK::And: return k::product(go(f->l, scope), go(f->r, scope));
      case HK::Imp: return k::arrow(go(f->l, scope), go(f->r, scope));
      case HK::Exists:
      case HK::Forall: {
        if (f->range) throw unsupported("translate: range-bounded quantifier");
        std::string x = kernel_name(f->name);
        scope.push_back(x);
        k::TermP body = go(f->l, scope);
        scope.pop_back();
        if (f->kind == HK::Forall) return k::pi(x, power_type(f->sort), body);
        return wrap(k::sigma(x, power_type(f->sort), body));
      }
      case HK::Defined: throw unsupported("translate: definedness atom outside the pure language");
      case HK::Rel: throw unsupported("translate: relation symbol " + f->name);
    }
    throw unsupported("translate: unknown formula");
  }

 private:
  Mode mode_;
};

}  // namespace

k::TermP translate_term(const h::TermP& t, const std::vector<std::string>& scope) {
  switch (t->kind) {
    case TK::Var: return lookup(t->name, scope);
    case TK::Zero: return k::zero();
    case TK::Succ: return k::succ(translate_term(t->a, scope));
    case TK::Add: return k::apps(add_fn(), {translate_term(t->a, scope), translate_term(t->b, scope)});
    case TK::Mul: return k::apps(mul_fn(), {translate_term(t->a, scope), translate_term(t->b, scope)});
    case TK::App: throw unsupported("translate: application term");
    case TK::Const: throw unsupported("translate: combinator constant");
    case TK::Eps: throw unsupported("translate: epsilon term");
    case TK::Fun: throw unsupported("translate: function symbol " + t->name);
  }
  throw unsupported("translate: unknown term");
}

k::TermP translate(const h::FormulaP& a, Mode mode) {
  std::vector<std::string> scope = ctx_of(a).names();
  Translator tr(mode);
  return tr.go(a, scope);
}

k::TermP erase_truncations(const k::TermP& t) {
  using KK = k::Term::Kind;
  if (t->kind == KK::Trunc || t->kind == KK::TrIn) return erase_truncations(t->a);
  k::Term out = *t;
  if (t->a) out.a = erase_truncations(t->a);
  if (t->b) out.b = erase_truncations(t->b);
  if (t->c) out.c = erase_truncations(t->c);
  for (auto& x : out.args) x = erase_truncations(x);
  return std::make_shared<const k::Term>(std::move(out));
}

// ---------------------------------------------------------------- axioms

namespace {

std::string expand(std::string text) {
  const std::vector<std::pair<std::string, std::string>> macros = {
      {"$ADD", "(" + k::show(add_fn()) + ")"},
      {"$MUL", "(" + k::show(mul_fn()) + ")"},
      {"$PRED", "(" + k::show(pred_fn()) + ")"},
      // Nat -> Set sending 0 to the empty type and successors to the unit type
      {"$DISC", "(fun (m : Nat) => ind_nat {fun (k : Nat) => Set} (Fin 0) (fun (k : Nat) (r : Set) => Fin 1) m)"},
  };
  for (auto& [key, value] : macros) {
    for (std::size_t pos; (pos = text.find(key)) != std::string::npos;) text.replace(pos, key.size(), value);
  }
  return text;
}

struct Proof {
  const char* relevant;
  const char* irrelevant;
};

const std::map<std::string, Proof>& proofs() {
  static const std::map<std::string, Proof> table = {
      {"succ-nonzero",
       {"fun (y : Nat) (e : Id Nat (S y) 0) => transport {fun (m : Nat) => $DISC m} e (fin 0 1)",
        "fun (y : Nat) (h : Trunc (Id Nat (S y) 0)) => tr (ind_trunc {fun (t : Trunc (Id Nat (S y) 0)) => Fin 0} "
        "(fun (e : Id Nat (S y) 0) => transport {fun (m : Nat) => $DISC m} e (fin 0 1)) "
        "(fun (t : Trunc (Id Nat (S y) 0)) (c c' : Fin 0) => ind_fin {fun (k : Fin 0) => Id (Fin 0) k c'} 0 c) h)"}},
      {"succ-injective",
       {"fun (x y : Nat) (e : Id Nat (S x) (S y)) => transport {fun (m : Nat) => Id Nat x ($PRED m)} e (refl x)",
        "fun (x y : Nat) (h : Trunc (Id Nat (S x) (S y))) => tr (ind_trunc {fun (t : Trunc (Id Nat (S x) (S y))) => Id Nat x y} "
        "(fun (e : Id Nat (S x) (S y)) => transport {fun (m : Nat) => Id Nat x ($PRED m)} e (refl x)) "
        "(fun (t : Trunc (Id Nat (S x) (S y))) (c c' : Id Nat x y) => refl c) h)"}},
      {"add-zero", {"fun (y : Nat) => refl y", "fun (y : Nat) => tr (refl y)"}},
      {"add-succ",
       {"fun (x y : Nat) => refl (S ($ADD x y))", "fun (x y : Nat) => tr (refl (S ($ADD x y)))"}},
      {"mul-zero", {"fun (y : Nat) => refl 0", "fun (y : Nat) => tr (refl 0)"}},
      {"mul-succ",
       {"fun (x y : Nat) => refl ($MUL (S x) y)", "fun (x y : Nat) => tr (refl ($MUL (S x) y))"}},
      {"comprehension-0",
       {nullptr,
        "tr (pair {Sig (X : Nat -> Prop), Pi (z : Nat), (Trunc (X z) -> Trunc (Id Nat z z)) * (Trunc (Id Nat z z) -> Trunc (X z))} "
        "(fun (z : Nat) => Id Nat z z) "
        "(fun (z : Nat) => pair {(Trunc (Id Nat z z) -> Trunc (Id Nat z z)) * (Trunc (Id Nat z z) -> Trunc (Id Nat z z))} "
        "(fun (h : Trunc (Id Nat z z)) => h) (fun (h : Trunc (Id Nat z z)) => h)))"}},
      {"induction-0",
       {"fun (p : Id Nat 0 0 * (Pi (x : Nat), Id Nat x x -> Id Nat (S x) (S x))) (x : Nat) => refl x",
        "fun (p : Trunc (Id Nat 0 0) * (Pi (x : Nat), Trunc (Id Nat x x) -> Trunc (Id Nat (S x) (S x)))) (x : Nat) => tr (refl x)"}},
  };
  return table;
}

}  // namespace

std::vector<AxiomInstance> axiom_instances(Mode mode) {
  std::vector<std::pair<std::string, h::FormulaP>> formulas;
  for (auto& ax : h::arithmetic_axioms(h::Theory::HAH)) formulas.emplace_back(ax.name, ax.formula);
  auto z = h::var("z");
  formulas.emplace_back("comprehension-0", h::comprehension(0, "z", h::eq(z, z)));
  auto x = h::var("x");
  formulas.emplace_back("induction-0", h::induction("x", h::eq(x, x)));

  std::vector<AxiomInstance> out;
  for (auto& [name, f] : formulas) {
    AxiomInstance inst;
    inst.name = name;
    inst.formula = f;
    inst.ctx = ctx_of(f);
    inst.type = translate(f, mode);
    auto it = proofs().find(name);
    if (it != proofs().end()) {
      const char* text = mode == Mode::Relevant ? it->second.relevant : it->second.irrelevant;
      if (text) inst.inhabitant = k::parse_term(expand(text), inst.ctx.names());
    }
    out.push_back(std::move(inst));
  }
  return out;
}

}  // namespace cwb::translate
