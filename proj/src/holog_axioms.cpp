#include "cwb/holog.hpp"

namespace cwb::holog {

// ---------------------------------------------------------------- expansion

namespace {

struct Expander {
  std::string fill;
  std::set<std::string> avoid;

  std::string fresh_set() {
    std::string x = fresh("X", avoid);
    avoid.insert(x);
    return x;
  }

  // fill in X
  FormulaP prop(const std::string& x) { return elem(var(fill), var(x, 1)); }

  FormulaP run(const FormulaP& f) {
    switch (f->kind) {
      case Formula::Kind::Bot: {
        auto x = fresh_set();
        return forall(x, 1, prop(x));
      }
      case Formula::Kind::Top: {
        auto x = fresh_set();
        return forall(x, 1, imp(prop(x), prop(x)));
      }
      case Formula::Kind::Or: {
        auto a = run(f->l), b = run(f->r);
        auto x = fresh_set();
        return forall(x, 1, imp(imp(a, prop(x)), imp(imp(b, prop(x)), prop(x))));
      }
      case Formula::Kind::And: {
        auto a = run(f->l), b = run(f->r);
        auto x = fresh_set();
        return forall(x, 1, imp(imp(a, imp(b, prop(x))), prop(x)));
      }
      case Formula::Kind::Exists: {
        auto body = run(f->l);
        auto x = fresh_set();
        return forall(x, 1,
                      imp(forall(f->name, f->sort, imp(body, prop(x)), f->range), prop(x)));
      }
      case Formula::Kind::Eq: {
        std::string x = fresh("X", avoid);
        avoid.insert(x);
        return forall(x, f->sort + 1, imp(elem(f->a, var(x, f->sort + 1)),
                                          elem(f->b, var(x, f->sort + 1))));
      }
      case Formula::Kind::Imp: return imp(run(f->l), run(f->r));
      case Formula::Kind::Forall: return forall(f->name, f->sort, run(f->l), f->range);
      default: return f;
    }
  }
};

}  // namespace

std::string expand_fill_variable(const FormulaP& f, const std::string& fill) {
  return fresh(fill, all_names(f));
}

FormulaP expand_impredicative(const FormulaP& f, const std::string& fill) {
  Expander e;
  e.avoid = all_names(f);
  e.fill = fresh(fill, e.avoid);
  e.avoid.insert(e.fill);
  return e.run(f);
}

FormulaP desugar_first_order(const FormulaP& f) {
  if (!first_order(f)) throw syntax_error("desugar: formula is not first-order");
  std::set<std::string> avoid = all_names(f);
  std::function<FormulaP(const FormulaP&)> go = [&](const FormulaP& g) -> FormulaP {
    switch (g->kind) {
      case Formula::Kind::Bot: return eq(zero(), numeral(1));
      case Formula::Kind::Top: return eq(zero(), zero());
      case Formula::Kind::Or: {
        auto a = go(g->l), b = go(g->r);
        std::string n = fresh("n", avoid);
        avoid.insert(n);
        auto nv = var(n);
        auto is0 = eq(nv, zero());
        return exists(n, 0, and_(imp(is0, a), imp(imp(is0, eq(zero(), numeral(1))), b)));
      }
      case Formula::Kind::And: return and_(go(g->l), go(g->r));
      case Formula::Kind::Imp: return imp(go(g->l), go(g->r));
      case Formula::Kind::Exists: return exists(g->name, g->sort, go(g->l), g->range);
      case Formula::Kind::Forall: return forall(g->name, g->sort, go(g->l), g->range);
      default: return g;
    }
  };
  return go(f);
}

// ---------------------------------------------------------------- partial terms

namespace {

bool partial_symbol(const TermP& t) {
  return t->kind == Term::Kind::App || t->kind == Term::Kind::Fun || t->kind == Term::Kind::Eps;
}

void collect_partial(const TermP& t, const std::string& rule, std::vector<Obligation>& out,
                     std::set<std::string>& seen, bool include_self) {
  if (include_self && partial_symbol(t)) {
    std::string key = show(t);
    if (seen.insert(key).second) out.push_back({t, rule});
  }
  switch (t->kind) {
    case Term::Kind::Succ: collect_partial(t->a, "down-fun", out, seen, true); break;
    case Term::Kind::Add:
    case Term::Kind::Mul:
    case Term::Kind::App:
      collect_partial(t->a, "down-fun", out, seen, true);
      collect_partial(t->b, "down-fun", out, seen, true);
      break;
    case Term::Kind::Fun:
    case Term::Kind::Eps:
      for (auto& a : t->args) collect_partial(a, "down-fun", out, seen, true);
      break;
    default: break;
  }
}

void walk(const FormulaP& f, std::vector<Obligation>& out, std::set<std::string>& seen) {
  switch (f->kind) {
    case Formula::Kind::Eq:
    case Formula::Kind::Elem:
      collect_partial(f->a, "down-rel", out, seen, true);
      collect_partial(f->b, "down-rel", out, seen, true);
      return;
    case Formula::Kind::Rel:
      for (auto& a : f->args) collect_partial(a, "down-rel", out, seen, true);
      return;
    case Formula::Kind::Defined:
      // the atom asserts definedness of the term itself
      collect_partial(f->a, "down-fun", out, seen, false);
      return;
    case Formula::Kind::Or:
    case Formula::Kind::And:
    case Formula::Kind::Imp:
      walk(f->l, out, seen);
      walk(f->r, out, seen);
      return;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: walk(f->l, out, seen); return;
    default: return;
  }
}

}  // namespace

std::vector<Obligation> wf_partial_terms(const FormulaP& f) {
  std::vector<Obligation> out;
  std::set<std::string> seen;
  walk(f, out, seen);
  return out;
}

// ---------------------------------------------------------------- axioms

FormulaP induction(const std::string& x, const FormulaP& a) {
  auto base = subst(a, x, zero());
  auto step = forall(x, 0, imp(a, subst(a, x, succ(var(x)))));
  return imp(and_(base, step), forall(x, 0, a));
}

FormulaP extensionality(int n) {
  auto X = var("X", n + 1), Y = var("Y", n + 1), z = var("z", n);
  return forall("X", n + 1,
                forall("Y", n + 1,
                       imp(forall("z", n, iff(elem(z, X), elem(z, Y))), eq(X, Y))));
}

FormulaP comprehension(int n, const std::string& z, const FormulaP& p) {
  std::set<std::string> avoid = all_names(p);
  avoid.insert(z);
  std::string x = fresh("X", avoid);
  return exists(x, n + 1, forall(z, n, iff(elem(var(z, n), var(x, n + 1)), p)));
}

std::vector<Axiom> arithmetic_axioms(Theory tag) {
  auto x = var("x"), y = var("y"), z = var("z");
  std::vector<Axiom> out = {
      {"succ-nonzero", forall("y", 0, neq(succ(y), zero()))},
      {"succ-injective", forall("x", 0, forall("y", 0, imp(eq(succ(x), succ(y)), eq(x, y))))},
      {"add-zero", forall("y", 0, eq(add(zero(), y), y))},
      {"add-succ", forall("x", 0, forall("y", 0, eq(add(succ(x), y), succ(add(x, y)))))},
      {"mul-zero", forall("y", 0, eq(mul(zero(), y), zero()))},
      // S(x) * y = x*y + y
      {"mul-succ", forall("x", 0, forall("y", 0, eq(mul(succ(x), y), add(mul(x, y), y))))},
  };
  if (extends(tag, Theory::HAH) && tag != Theory::HA) out.push_back({"extensionality-0", extensionality(0)});
  if (extends(tag, Theory::HAHP)) {
    auto K = constant(pca::Const::K), S = constant(pca::Const::S);
    auto Suc = constant(pca::Const::Suc), Rec = constant(pca::Const::Rec);
    out.push_back({"k", forall("x", 0, forall("y", 0, eq(app(app(K, x), y), x)))});
    out.push_back({"s-defined", forall("x", 0, forall("y", 0, defined(app(app(S, x), y))))});
    out.push_back({"s", forall("x", 0, forall("y", 0, forall("z", 0,
                       kleene_eq(app(app(app(S, x), y), z), app(app(x, z), app(y, z))))))});
    out.push_back({"suc", forall("x", 0, eq(app(Suc, x), succ(x)))});
    out.push_back({"rec-zero", forall("x", 0, forall("y", 0, eq(app(app(app(Rec, x), y), zero()), x)))});
    out.push_back({"rec-succ", forall("x", 0, forall("y", 0, forall("z", 0,
                       kleene_eq(app(app(app(Rec, x), y), succ(z)),
                                 app(app(y, z), app(app(app(Rec, x), y), z))))))});
  }
  return out;
}

std::vector<Axiom> epsilon_axioms(const TermP& e) {
  if (e->kind != Term::Kind::Eps) throw syntax_error("epsilon_axioms: not an eps term");
  // eps applied to its own parameters
  auto self = eps_at(e->name, e->params, e->body, [&] {
    std::vector<TermP> a;
    for (auto& p : e->params) a.push_back(var(p));
    return a;
  }());
  FormulaP ex = exists(e->name, 0, e->body);
  FormulaP total = imp(ex, defined(self));
  FormulaP sound = imp(defined(self), subst(e->body, e->name, self));
  for (auto it = e->params.rbegin(); it != e->params.rend(); ++it) {
    total = forall(*it, 0, total);
    sound = forall(*it, 0, sound);
  }
  return {{"eps-total", total}, {"eps-sound", sound}};
}

std::vector<Axiom> relation_axioms(const std::string& r, const std::string& x,
                                   const std::string& y, const FormulaP& a) {
  auto xv = var(x), yv = var(y);
  std::set<std::string> avoid = all_names(a);
  avoid.insert(x);
  avoid.insert(y);
  std::string y2 = fresh(y + "'", avoid);
  auto y2v = var(y2);
  FormulaP functional = forall(x, 0, forall(y, 0, forall(y2, 0,
      imp(and_(rel(r, {xv, yv}), rel(r, {xv, y2v})), eq(yv, y2v)))));
  FormulaP total = forall(x, 0, imp(exists(y, 0, a), exists(y, 0, rel(r, {xv, yv}))));
  FormulaP sound = forall(x, 0, forall(y, 0, imp(rel(r, {xv, yv}), a)));
  return {{"R-functional", functional}, {"R-total", total}, {"R-sound", sound}};
}

std::vector<Axiom> function_axioms(const std::string& f, const std::string& x,
                                   const std::string& y, const FormulaP& a) {
  auto fx = fun(f, {var(x)});
  FormulaP total = forall(x, 0, imp(exists(y, 0, a), defined(fx)));
  FormulaP sound = forall(x, 0, imp(defined(fx), subst(a, y, fx)));
  return {{"f-total", total}, {"f-sound", sound}};
}

}  // namespace cwb::holog
