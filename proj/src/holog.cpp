#include "cwb/holog.hpp"

#include <algorithm>
#include <functional>

namespace cwb::holog {

std::string to_string(Theory t) {
  switch (t) {
    case Theory::HA: return "HA";
    case Theory::HAH: return "HAH";
    case Theory::HAHP: return "HAHP";
    case Theory::HAHPeps: return "HAHPeps";
    case Theory::HAHPR: return "HAHPR";
    case Theory::HAHPf: return "HAHPf";
  }
  return "?";
}

namespace {

enum Feature : unsigned { kHigher = 1, kPca = 2, kEps = 4, kRel = 8, kFun = 16 };

unsigned allowed(Theory t) {
  switch (t) {
    case Theory::HA: return 0;
    case Theory::HAH: return kHigher;
    case Theory::HAHP: return kHigher | kPca;
    case Theory::HAHPeps: return kHigher | kPca | kEps;
    case Theory::HAHPR: return kHigher | kPca | kRel;
    case Theory::HAHPf: return kHigher | kPca | kFun;
  }
  return 0;
}

unsigned features(const TermP& t);

unsigned features(const FormulaP& f) {
  unsigned m = 0;
  switch (f->kind) {
    case Formula::Kind::Eq:
      m = features(f->a) | features(f->b);
      if (f->sort > 0) m |= kHigher;
      break;
    case Formula::Kind::Elem: m = features(f->a) | features(f->b) | kHigher; break;
    case Formula::Kind::Defined: m = features(f->a) | kPca; break;
    case Formula::Kind::Rel:
      m = kRel;
      for (auto& a : f->args) m |= features(a);
      break;
    case Formula::Kind::Bot:
    case Formula::Kind::Top: break;
    case Formula::Kind::Or:
    case Formula::Kind::And:
    case Formula::Kind::Imp: m = features(f->l) | features(f->r); break;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      m = features(f->l);
      if (f->sort > 0) m |= kHigher;
      break;
  }
  return m;
}

unsigned features(const TermP& t) {
  switch (t->kind) {
    case Term::Kind::Var: return t->sort > 0 ? unsigned{kHigher} : 0u;
    case Term::Kind::Zero: return 0;
    case Term::Kind::Succ: return features(t->a);
    case Term::Kind::Add:
    case Term::Kind::Mul: return features(t->a) | features(t->b);
    case Term::Kind::App: return features(t->a) | features(t->b) | kPca;
    case Term::Kind::Const: return kPca;
    case Term::Kind::Eps: {
      unsigned m = kEps | kPca;
      for (auto& a : t->args) m |= features(a);
      return m;
    }
    case Term::Kind::Fun: {
      unsigned m = kFun | kPca;
      for (auto& a : t->args) m |= features(a);
      return m;
    }
  }
  return 0;
}

std::shared_ptr<Term> mk(Term::Kind k) {
  auto t = std::make_shared<Term>();
  t->kind = k;
  return t;
}

std::shared_ptr<Formula> mkf(Formula::Kind k) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  return f;
}

}  // namespace

bool extends(Theory super, Theory sub) {
  return (allowed(sub) & ~allowed(super)) == 0;
}

// ---------------------------------------------------------------- terms

TermP var(const std::string& name, int sort) {
  auto t = mk(Term::Kind::Var);
  t->name = name;
  t->sort = sort;
  return t;
}

TermP zero() {
  static TermP z = mk(Term::Kind::Zero);
  return z;
}

TermP succ(TermP a) {
  auto t = mk(Term::Kind::Succ);
  t->a = std::move(a);
  return t;
}

TermP numeral(Nat n) {
  TermP t = zero();
  for (Nat i = 0; i < n; ++i) t = succ(t);
  return t;
}

TermP add(TermP a, TermP b) {
  auto t = mk(Term::Kind::Add);
  t->a = std::move(a);
  t->b = std::move(b);
  return t;
}

TermP mul(TermP a, TermP b) {
  auto t = mk(Term::Kind::Mul);
  t->a = std::move(a);
  t->b = std::move(b);
  return t;
}

TermP app(TermP f, TermP a) {
  auto t = mk(Term::Kind::App);
  t->a = std::move(f);
  t->b = std::move(a);
  return t;
}

TermP constant(pca::Const c) {
  auto t = mk(Term::Kind::Const);
  t->c = c;
  return t;
}

TermP fun(const std::string& name, std::vector<TermP> args) {
  auto t = mk(Term::Kind::Fun);
  t->name = name;
  t->args = std::move(args);
  return t;
}

TermP eps(const std::string& y, FormulaP body) {
  std::vector<std::string> params;
  std::vector<TermP> args;
  for (auto& [x, s] : free_vars(body)) {
    if (x == y) continue;
    if (s != 0) throw syntax_error("eps: parameter " + x + " is not of sort 0");
    params.push_back(x);
    args.push_back(var(x));
  }
  return eps_at(y, std::move(params), std::move(body), std::move(args));
}

TermP eps_at(const std::string& y, std::vector<std::string> params, FormulaP body,
             std::vector<TermP> args) {
  if (params.size() != args.size()) throw syntax_error("eps: parameter/argument count mismatch");
  for (auto& [x, s] : free_vars(body)) {
    if (x != y && std::find(params.begin(), params.end(), x) == params.end())
      throw syntax_error("eps: body variable " + x + " is not a parameter");
    if (s != 0) throw syntax_error("eps: body variable " + x + " is not of sort 0");
  }
  if (!first_order(body)) throw syntax_error("eps: body is not first-order");
  auto t = mk(Term::Kind::Eps);
  t->name = y;
  t->params = std::move(params);
  t->body = std::move(body);
  t->args = std::move(args);
  return t;
}

int sort_of(const TermP& t) { return t->kind == Term::Kind::Var ? t->sort : 0; }

// ---------------------------------------------------------------- formulas

FormulaP eq(TermP a, TermP b) {
  int sa = sort_of(a), sb = sort_of(b);
  if (sa != sb) throw syntax_error("=: operands of sorts " + std::to_string(sa) + " and " + std::to_string(sb));
  auto f = mkf(Formula::Kind::Eq);
  f->sort = sa;
  f->a = std::move(a);
  f->b = std::move(b);
  return f;
}

FormulaP elem(TermP a, TermP b) {
  int sa = sort_of(a), sb = sort_of(b);
  if (sb != sa + 1)
    throw syntax_error("in: element of sort " + std::to_string(sa) + " and set of sort " + std::to_string(sb));
  auto f = mkf(Formula::Kind::Elem);
  f->sort = sa;
  f->a = std::move(a);
  f->b = std::move(b);
  return f;
}

FormulaP defined(TermP a) {
  auto f = mkf(Formula::Kind::Defined);
  f->sort = sort_of(a);
  f->a = std::move(a);
  return f;
}

FormulaP rel(const std::string& name, std::vector<TermP> args) {
  auto f = mkf(Formula::Kind::Rel);
  f->name = name;
  f->args = std::move(args);
  return f;
}

FormulaP bot() {
  static FormulaP f = mkf(Formula::Kind::Bot);
  return f;
}

FormulaP top() {
  static FormulaP f = mkf(Formula::Kind::Top);
  return f;
}

namespace {
FormulaP binary(Formula::Kind k, FormulaP a, FormulaP b) {
  auto f = mkf(k);
  f->l = std::move(a);
  f->r = std::move(b);
  return f;
}
FormulaP quant(Formula::Kind k, const std::string& x, int sort, FormulaP body,
               std::optional<Nat> range) {
  if (range && sort != 0) throw syntax_error("range bound on a higher-sort quantifier");
  auto f = mkf(k);
  f->name = x;
  f->sort = sort;
  f->l = std::move(body);
  f->range = range;
  return f;
}
}  // namespace

FormulaP or_(FormulaP a, FormulaP b) { return binary(Formula::Kind::Or, std::move(a), std::move(b)); }
FormulaP and_(FormulaP a, FormulaP b) { return binary(Formula::Kind::And, std::move(a), std::move(b)); }
FormulaP imp(FormulaP a, FormulaP b) { return binary(Formula::Kind::Imp, std::move(a), std::move(b)); }
FormulaP neg(FormulaP a) { return imp(std::move(a), bot()); }
FormulaP iff(FormulaP a, FormulaP b) { return and_(imp(a, b), imp(b, a)); }
FormulaP neq(TermP a, TermP b) { return neg(eq(std::move(a), std::move(b))); }

FormulaP kleene_eq(TermP a, TermP b) {
  return imp(or_(defined(a), defined(b)), eq(a, b));
}

FormulaP exists(const std::string& x, int sort, FormulaP body, std::optional<Nat> range) {
  return quant(Formula::Kind::Exists, x, sort, std::move(body), range);
}

FormulaP forall(const std::string& x, int sort, FormulaP body, std::optional<Nat> range) {
  return quant(Formula::Kind::Forall, x, sort, std::move(body), range);
}

FormulaP pair_in(TermP a, TermP b, TermP set) {
  std::set<std::string> avoid;
  for (auto& [n, s] : free_vars(a)) avoid.insert(n);
  for (auto& [n, s] : free_vars(b)) avoid.insert(n);
  for (auto& [n, s] : free_vars(set)) avoid.insert(n);
  std::string p = fresh("p", avoid);
  TermP pv = var(p);
  TermP s = add(a, b);
  FormulaP code = eq(add(pv, pv), add(mul(s, succ(s)), add(b, b)));
  return exists(p, 0, and_(code, elem(pv, set)));
}

// ---------------------------------------------------------------- structure

namespace {

void fv_term(const TermP& t, VarList& out, const std::set<std::string>& bound);

void push_unique(VarList& out, const std::string& x, int s) {
  for (auto& [n, _] : out)
    if (n == x) return;
  out.emplace_back(x, s);
}

void fv_term(const TermP& t, VarList& out, const std::set<std::string>& bound) {
  switch (t->kind) {
    case Term::Kind::Var:
      if (!bound.count(t->name)) push_unique(out, t->name, t->sort);
      return;
    case Term::Kind::Zero:
    case Term::Kind::Const: return;
    case Term::Kind::Succ: fv_term(t->a, out, bound); return;
    case Term::Kind::Add:
    case Term::Kind::Mul:
    case Term::Kind::App:
      fv_term(t->a, out, bound);
      fv_term(t->b, out, bound);
      return;
    case Term::Kind::Eps:
    case Term::Kind::Fun:
      for (auto& a : t->args) fv_term(a, out, bound);
      return;
  }
}

void fv_formula(const FormulaP& f, VarList& out, std::set<std::string>& bound) {
  switch (f->kind) {
    case Formula::Kind::Eq:
    case Formula::Kind::Elem:
      fv_term(f->a, out, bound);
      fv_term(f->b, out, bound);
      return;
    case Formula::Kind::Defined: fv_term(f->a, out, bound); return;
    case Formula::Kind::Rel:
      for (auto& a : f->args) fv_term(a, out, bound);
      return;
    case Formula::Kind::Bot:
    case Formula::Kind::Top: return;
    case Formula::Kind::Or:
    case Formula::Kind::And:
    case Formula::Kind::Imp:
      fv_formula(f->l, out, bound);
      fv_formula(f->r, out, bound);
      return;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      bool had = bound.count(f->name) > 0;
      bound.insert(f->name);
      fv_formula(f->l, out, bound);
      if (!had) bound.erase(f->name);
      return;
    }
  }
}

void names_term(const TermP& t, std::set<std::string>& out) {
  switch (t->kind) {
    case Term::Kind::Var: out.insert(t->name); return;
    case Term::Kind::Succ: names_term(t->a, out); return;
    case Term::Kind::Add:
    case Term::Kind::Mul:
    case Term::Kind::App:
      names_term(t->a, out);
      names_term(t->b, out);
      return;
    case Term::Kind::Eps:
    case Term::Kind::Fun:
      for (auto& a : t->args) names_term(a, out);
      return;
    default: return;
  }
}

void names_formula(const FormulaP& f, std::set<std::string>& out) {
  switch (f->kind) {
    case Formula::Kind::Eq:
    case Formula::Kind::Elem:
      names_term(f->a, out);
      names_term(f->b, out);
      return;
    case Formula::Kind::Defined: names_term(f->a, out); return;
    case Formula::Kind::Rel:
      for (auto& a : f->args) names_term(a, out);
      return;
    case Formula::Kind::Or:
    case Formula::Kind::And:
    case Formula::Kind::Imp:
      names_formula(f->l, out);
      names_formula(f->r, out);
      return;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      out.insert(f->name);
      names_formula(f->l, out);
      return;
    default: return;
  }
}

}  // namespace

VarList free_vars(const FormulaP& f) {
  VarList out;
  std::set<std::string> bound;
  fv_formula(f, out, bound);
  return out;
}

VarList free_vars(const TermP& t) {
  VarList out;
  fv_term(t, out, {});
  return out;
}

bool occurs_free(const std::string& x, const FormulaP& f) {
  for (auto& [n, s] : free_vars(f))
    if (n == x) return true;
  return false;
}

std::set<std::string> all_names(const FormulaP& f) {
  std::set<std::string> out;
  names_formula(f, out);
  return out;
}

std::string fresh(const std::string& base, const std::set<std::string>& avoid) {
  if (!avoid.count(base)) return base;
  for (int i = 1;; ++i) {
    std::string c = base + std::to_string(i);
    if (!avoid.count(c)) return c;
  }
}

TermP subst(const TermP& t, const std::string& x, const TermP& v) {
  switch (t->kind) {
    case Term::Kind::Var: return t->name == x ? v : t;
    case Term::Kind::Zero:
    case Term::Kind::Const: return t;
    case Term::Kind::Succ: {
      auto a = subst(t->a, x, v);
      return a == t->a ? t : succ(a);
    }
    case Term::Kind::Add:
    case Term::Kind::Mul:
    case Term::Kind::App: {
      auto a = subst(t->a, x, v);
      auto b = subst(t->b, x, v);
      if (a == t->a && b == t->b) return t;
      auto n = std::make_shared<Term>(*t);
      n->a = a;
      n->b = b;
      return n;
    }
    case Term::Kind::Eps:
    case Term::Kind::Fun: {
      bool changed = false;
      std::vector<TermP> args;
      for (auto& a : t->args) {
        args.push_back(subst(a, x, v));
        changed |= args.back() != a;
      }
      if (!changed) return t;
      auto n = std::make_shared<Term>(*t);
      n->args = std::move(args);
      return n;
    }
  }
  return t;
}

FormulaP subst(const FormulaP& f, const std::string& x, const TermP& v) {
  switch (f->kind) {
    case Formula::Kind::Eq:
    case Formula::Kind::Elem:
    case Formula::Kind::Defined: {
      auto n = std::make_shared<Formula>(*f);
      n->a = subst(f->a, x, v);
      if (f->b) n->b = subst(f->b, x, v);
      return n;
    }
    case Formula::Kind::Rel: {
      auto n = std::make_shared<Formula>(*f);
      for (auto& a : n->args) a = subst(a, x, v);
      return n;
    }
    case Formula::Kind::Bot:
    case Formula::Kind::Top: return f;
    case Formula::Kind::Or:
    case Formula::Kind::And:
    case Formula::Kind::Imp: {
      auto n = std::make_shared<Formula>(*f);
      n->l = subst(f->l, x, v);
      n->r = subst(f->r, x, v);
      return n;
    }
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      if (f->name == x) return f;
      if (!occurs_free(x, f->l)) return f;
      auto n = std::make_shared<Formula>(*f);
      bool capture = false;
      for (auto& [name, s] : free_vars(v))
        if (name == f->name) capture = true;
      if (capture) {
        std::set<std::string> avoid = all_names(f->l);
        for (auto& [name, s] : free_vars(v)) avoid.insert(name);
        avoid.insert(x);
        std::string y = fresh(f->name, avoid);
        n->name = y;
        n->l = subst(f->l, f->name, var(y, f->sort));
      }
      n->l = subst(n->l, x, v);
      return n;
    }
  }
  return f;
}

namespace {

// Renames bound variables to positional names for comparison.
TermP canon_term(const TermP& t, const std::map<std::string, std::string>& ren);

FormulaP canon(const FormulaP& f, std::map<std::string, std::string> ren, int depth) {
  switch (f->kind) {
    case Formula::Kind::Eq:
    case Formula::Kind::Elem:
    case Formula::Kind::Defined: {
      auto n = std::make_shared<Formula>(*f);
      n->a = canon_term(f->a, ren);
      if (f->b) n->b = canon_term(f->b, ren);
      return n;
    }
    case Formula::Kind::Rel: {
      auto n = std::make_shared<Formula>(*f);
      for (auto& a : n->args) a = canon_term(a, ren);
      return n;
    }
    case Formula::Kind::Bot:
    case Formula::Kind::Top: return f;
    case Formula::Kind::Or:
    case Formula::Kind::And:
    case Formula::Kind::Imp: {
      auto n = std::make_shared<Formula>(*f);
      n->l = canon(f->l, ren, depth);
      n->r = canon(f->r, ren, depth);
      return n;
    }
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      auto n = std::make_shared<Formula>(*f);
      std::string b = "_b" + std::to_string(depth);
      ren[f->name] = b;
      n->name = b;
      n->l = canon(f->l, ren, depth + 1);
      return n;
    }
  }
  return f;
}

TermP canon_term(const TermP& t, const std::map<std::string, std::string>& ren) {
  switch (t->kind) {
    case Term::Kind::Var: {
      auto it = ren.find(t->name);
      return it == ren.end() ? t : var(it->second, t->sort);
    }
    case Term::Kind::Zero:
    case Term::Kind::Const: return t;
    case Term::Kind::Succ: return succ(canon_term(t->a, ren));
    case Term::Kind::Add:
    case Term::Kind::Mul:
    case Term::Kind::App: {
      auto n = std::make_shared<Term>(*t);
      n->a = canon_term(t->a, ren);
      n->b = canon_term(t->b, ren);
      return n;
    }
    case Term::Kind::Eps: {
      auto n = std::make_shared<Term>(*t);
      std::map<std::string, std::string> inner;
      for (std::size_t i = 0; i < t->params.size(); ++i) {
        inner[t->params[i]] = "_p" + std::to_string(i);
        n->params[i] = "_p" + std::to_string(i);
      }
      inner[t->name] = "_y";
      n->name = "_y";
      n->body = canon(t->body, inner, 0);
      for (auto& a : n->args) a = canon_term(a, ren);
      return n;
    }
    case Term::Kind::Fun: {
      auto n = std::make_shared<Term>(*t);
      for (auto& a : n->args) a = canon_term(a, ren);
      return n;
    }
  }
  return t;
}

}  // namespace

std::string alpha_key(const FormulaP& f) { return show(canon(f, {}, 0)); }

bool alpha_equal(const FormulaP& a, const FormulaP& b) { return alpha_key(a) == alpha_key(b); }

bool alpha_equal(const TermP& a, const TermP& b) {
  return show(canon_term(a, {})) == show(canon_term(b, {}));
}

std::size_t size(const FormulaP& f) {
  switch (f->kind) {
    case Formula::Kind::Or:
    case Formula::Kind::And:
    case Formula::Kind::Imp: return 1 + size(f->l) + size(f->r);
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: return 1 + size(f->l);
    default: return 1;
  }
}

bool first_order(const FormulaP& f) {
  switch (f->kind) {
    case Formula::Kind::Elem: return false;
    case Formula::Kind::Eq: return f->sort == 0 && (features(f->a) & kHigher) == 0 &&
                                   (features(f->b) & kHigher) == 0;
    case Formula::Kind::Defined: return (features(f->a) & kHigher) == 0;
    case Formula::Kind::Rel:
      for (auto& a : f->args)
        if (features(a) & kHigher) return false;
      return true;
    case Formula::Kind::Or:
    case Formula::Kind::And:
    case Formula::Kind::Imp: return first_order(f->l) && first_order(f->r);
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: return f->sort == 0 && first_order(f->l);
    default: return true;
  }
}

Theory theory_of(const FormulaP& f) {
  unsigned m = features(f);
  for (Theory t : {Theory::HA, Theory::HAH, Theory::HAHP, Theory::HAHPeps, Theory::HAHPR,
                   Theory::HAHPf})
    if ((m & ~allowed(t)) == 0) return t;
  throw syntax_error("formula mixes symbols of incompatible extensions");
}

void check_theory(const FormulaP& f, Theory tag) {
  unsigned extra = features(f) & ~allowed(tag);
  if (!extra) return;
  std::string what;
  if (extra & kHigher) what = "higher-sort variables";
  else if (extra & kPca) what = "application or combinator constants";
  else if (extra & kEps) what = "eps constants";
  else if (extra & kRel) what = "the relation symbol";
  else what = "the partial function symbol";
  throw syntax_error("formula uses " + what + ", not in the language of " + to_string(tag));
}

}  // namespace cwb::holog
