#include <atomic>

#include "cwb/model.hpp"

namespace cwb::model {

namespace k = cwb::kernel;
using K = k::Term::Kind;

namespace {

class Denoter {
 public:
  explicit Denoter(const World& w) : w_(w) {}

  ElemP eval(const k::Context& ctx, const Env& env, const k::TermP& t) const {
    switch (t->kind) {
      case K::Sort:
        if (t->sort == k::Sort::Prop) return type_elem(nabla_subsing(w_));
        if (t->sort == k::Sort::Set) return type_elem(nabla_per(w_));
        throw unsupported("the sort Type has no finite interpretation");
      case K::Var: {
        if (t->index >= env.size()) throw unsupported("unbound variable in denotation");
        return env[env.size() - 1 - t->index];
      }
      case K::Pi: {
        AssemblyP dom = type(ctx, env, t->a);
        return type_elem(pi(dom, family(ctx, env, t->name, t->a, t->b), w_));
      }
      case K::Sigma: {
        AssemblyP dom = type(ctx, env, t->a);
        return type_elem(sigma(dom, family(ctx, env, t->name, t->a, t->b), w_));
      }
      case K::W: {
        AssemblyP dom = type(ctx, env, t->a);
        return type_elem(wtype(dom, family(ctx, env, t->name, t->a, t->b), w_));
      }
      case K::Lam: {
        AssemblyP dom = type(ctx, env, t->a);
        k::Context inner = ctx.extend(t->name, t->a);
        auto body = t->b;
        Denoter self = *this;
        return fun_elem(dom, [self, inner, env, body](const ElemP& x) {
          Env e = env;
          e.push_back(x);
          return self.eval(inner, e, body);
        });
      }
      case K::App: return model::apply(eval(ctx, env, t->a), eval(ctx, env, t->b));
      case K::Pair: return pair_elem(eval(ctx, env, t->b), eval(ctx, env, t->c));
      case K::IndSigma: {
        AssemblyP dom = type(ctx, env, motive_domain(t->a));
        ElemP f = eval(ctx, env, t->b);
        return fun_elem(dom, [f](const ElemP& p) {
          if (p->kind != Elem::Kind::Pair) throw unsupported("Sigma eliminator on a non-pair");
          return model::apply(model::apply(f, p->a), p->b);
        });
      }
      case K::Tree: {
        ElemP label = eval(ctx, env, t->b);
        ElemP sub = eval(ctx, env, t->c);
        std::vector<std::pair<ElemP, ElemP>> children;
        for (auto& b : sub->dom->enumerate()) children.emplace_back(b, model::apply(sub, b));
        return tree_elem(label, std::move(children));
      }
      case K::IndW: return ind_w(ctx, env, t);
      case K::Fin: return type_elem(fin(t->n, w_));
      case K::FinEl: return class_elem(t->k, "fin" + std::to_string(t->n));
      case K::IndFin: {
        std::vector<ElemP> cases;
        for (auto& c : t->args) cases.push_back(eval(ctx, env, c));
        return fun_elem(fin(t->n, w_), [cases](const ElemP& x) {
          if (x->kind != Elem::Kind::Class || x->n >= cases.size())
            throw unsupported("Fin eliminator outside its range");
          return cases[x->n];
        });
      }
      case K::Nat: return type_elem(nat(w_));
      case K::Zero: return class_elem(0, "nat");
      case K::Succ: {
        ElemP n = eval(ctx, env, t->a);
        return class_elem(n->n + 1, "nat");
      }
      case K::IndNat: {
        ElemP base = eval(ctx, env, t->b), step = eval(ctx, env, t->c);
        return fun_elem(nat(w_), [base, step](const ElemP& n) {
          ElemP r = base;
          for (Nat i = 0; i < n->n; ++i)
            r = model::apply(model::apply(step, class_elem(i, "nat")), r);
          return r;
        });
      }
      case K::Id: {
        AssemblyP a = type(ctx, env, t->a);
        return type_elem(subsing_eq(a, eval(ctx, env, t->b), eval(ctx, env, t->c), w_));
      }
      case K::Refl:
      case K::TrIn: return star();
      case K::IndId: {
        // motive: fun x x' e => C; the eliminator is fun x x' e => f x
        const k::TermP& m = t->a;
        AssemblyP a = type(ctx, env, m->a);
        ElemP f = eval(ctx, env, t->b);
        World w = w_;
        return fun_elem(a, [a, f, w](const ElemP& x) {
          return fun_elem(a, [a, f, w, x](const ElemP& x2) {
            return fun_elem(subsing_eq(a, x, x2, w), [f, x](const ElemP&) { return model::apply(f, x); });
          });
        });
      }
      case K::Transport: return eval(ctx, env, t->c);
      case K::Trunc: return type_elem(trunc(type(ctx, env, t->a), w_));
      case K::IndTrunc: {
        k::TermP dom = k::whnf(ctx, motive_domain(t->a));
        if (dom->kind != K::Trunc) throw unsupported("truncation eliminator over a non-truncation");
        AssemblyP inner = type(ctx, env, dom->a);
        ElemP f = eval(ctx, env, t->b);
        return fun_elem(trunc(inner, w_), [inner, f](const ElemP&) {
          const auto& xs = inner->enumerate();
          if (xs.empty()) throw unsupported("truncation eliminator without an enumerated witness");
          return representative_independent(f, xs, "truncation");
        });
      }
      case K::Quot: {
        AssemblyP a = type(ctx, env, t->a);
        ElemP rel = eval(ctx, env, t->b);
        return type_elem(quot(a, [rel](const ElemP& x, const ElemP& y) {
          ElemP r = model::apply(model::apply(rel, x), y);
          if (r->kind != Elem::Kind::Type) throw unsupported("quotient relation is not type-valued");
          return r->type;
        }, w_));
      }
      case K::Cls: {
        AssemblyP q = type(ctx, env, t->a);
        ElemP x = eval(ctx, env, t->b);
        for (auto& c : q->enumerate())
          for (auto& m : c->items)
            if (compare(m, x) == 0) return c;
        throw unsupported("class of an element outside the enumerated quotient");
      }
      case K::IndQuot: {
        AssemblyP q = type(ctx, env, motive_domain(t->a));
        ElemP f = eval(ctx, env, t->b);
        return fun_elem(q, [f](const ElemP& c) {
          if (c->kind != Elem::Kind::Set || c->items.empty()) throw unsupported("quotient eliminator on a non-class");
          return representative_independent(f, c->items, "quotient");
        });
      }
      case K::QuotAx:
      case K::Propext: {
        // Proofs of propositions: the unique element of the denoted type.
        k::Verdict v = k::infer(ctx, t);
        if (!v.accepted) throw unsupported("ill-typed proof term: " + v.reason);
        AssemblyP ty = type(ctx, env, v.type);
        const auto& xs = ty->enumerate();
        if (xs.empty()) throw unsupported("proof term of an uninhabited proposition");
        return xs.front();
      }
    }
    throw unsupported("unknown kernel term");
  }

  AssemblyP type(const k::Context& ctx, const Env& env, const k::TermP& t) const {
    ElemP e = eval(ctx, env, t);
    if (e->kind != Elem::Kind::Type) throw unsupported("not a type: " + k::show(t, ctx.names()));
    return e->type;
  }

 private:
  World w_;

  static k::TermP motive_domain(const k::TermP& motive) {
    if (motive->kind != K::Lam) throw unsupported("motive is not a lambda");
    return motive->a;
  }

  Family family(const k::Context& ctx, const Env& env, const std::string& x, const k::TermP& dom,
                const k::TermP& body) const {
    k::Context inner = ctx.extend(x, dom);
    Denoter self = *this;
    return [self, inner, env, body](const ElemP& v) {
      Env e = env;
      e.push_back(v);
      return self.type(inner, e, body);
    };
  }

  // f applied to the first member, checked against every other member.
  static ElemP representative_independent(const ElemP& f, const std::vector<ElemP>& members,
                                          const std::string& what) {
    ElemP out = model::apply(f, members.front());
    for (std::size_t i = 1; i < members.size(); ++i)
      if (equal(out, model::apply(f, members[i])) == Tri::False)
        throw unsupported(what + " eliminator depends on the chosen representative");
    return out;
  }

  ElemP ind_w(const k::Context& ctx, const Env& env, const k::TermP& t) const {
    k::TermP dom = k::whnf(ctx, motive_domain(t->a));
    if (dom->kind != K::W) throw unsupported("W eliminator over a non-W type");
    AssemblyP wty = type(ctx, env, dom);
    Family fiber = family(ctx, env, dom->name, dom->a, dom->b);
    ElemP f = eval(ctx, env, t->b);
    auto rec = std::make_shared<std::function<ElemP(const ElemP&)>>();
    *rec = [f, fiber, rec](const ElemP& tree) -> ElemP {
      if (tree->kind != Elem::Kind::Tree) throw unsupported("W eliminator on a non-tree");
      AssemblyP branches = fiber(tree->a);
      auto graph = tree->graph;
      ElemP d = fun_elem(branches, [graph](const ElemP& b) -> ElemP {
        for (auto& [key, child] : graph)
          if (compare(key, b) == 0) return child;
        throw unsupported("branch outside the tree");
      });
      std::weak_ptr<std::function<ElemP(const ElemP&)>> weak = rec;
      ElemP ih = fun_elem(branches, [d, weak](const ElemP& b) {
        auto self = weak.lock();
        return (*self)(model::apply(d, b));
      });
      return model::apply(model::apply(model::apply(f, tree->a), d), ih);
    };
    // The recursion must outlive this call; the element keeps it alive.
    return fun_elem(wty, [rec](const ElemP& tree) { return (*rec)(tree); });
  }
};

std::atomic<std::size_t> fresh_counter{0};

std::string fresh(const char* base) { return std::string(base) + "#" + std::to_string(fresh_counter++); }

// Realizer of t given an open code for the realizer of the context point.
std::optional<CodeP> compile(const k::TermP& t, const CodeP& ctx_code) {
  switch (t->kind) {
    case K::Var: {
      CodeP c = ctx_code;
      for (std::size_t i = 0; i < t->index; ++i) c = pca::app(pca::vpr0(), c);
      return pca::app(pca::vpr1(), c);
    }
    case K::Zero: return pca::num(0);
    case K::Succ: {
      auto a = compile(t->a, ctx_code);
      if (!a) return std::nullopt;
      return pca::app(pca::Suc(), *a);
    }
    case K::FinEl: return pca::num(t->k);
    case K::Lam: {
      std::string x = fresh("x");
      auto body = compile(t->b, pca::ap({pca::vpair(), ctx_code, pca::var(x)}));
      if (!body) return std::nullopt;
      return pca::abstract_open(x, *body);
    }
    case K::App: {
      auto f = compile(t->a, ctx_code), a = compile(t->b, ctx_code);
      if (!f || !a) return std::nullopt;
      return pca::app(*f, *a);
    }
    case K::Pair: {
      auto a = compile(t->b, ctx_code), b = compile(t->c, ctx_code);
      if (!a || !b) return std::nullopt;
      return pca::ap({pca::vpair(), *a, *b});
    }
    case K::Tree: {
      auto a = compile(t->b, ctx_code), b = compile(t->c, ctx_code);
      if (!a || !b) return std::nullopt;
      return pca::ap({pca::vpair(), *a, *b});
    }
    case K::IndSigma: {
      auto f = compile(t->b, ctx_code);
      if (!f) return std::nullopt;
      std::string p = fresh("p");
      return pca::abstract_open(p, pca::ap({*f, pca::app(pca::vpr0(), pca::var(p)),
                                            pca::app(pca::vpr1(), pca::var(p))}));
    }
    case K::IndNat: {
      auto b = compile(t->b, ctx_code), s = compile(t->c, ctx_code);
      if (!b || !s) return std::nullopt;
      return pca::ap({pca::Rec(), *b, *s});
    }
    case K::IndFin: {
      std::vector<CodeP> cases;
      for (auto& c : t->args) {
        auto r = compile(c, ctx_code);
        if (!r) return std::nullopt;
        cases.push_back(*r);
      }
      std::string x = fresh("k");
      CodeP chain = pca::num(0);
      for (std::size_t i = cases.size(); i-- > 0;)
        chain = pca::ap({pca::cond(), pca::ap({pca::eqnum(), pca::var(x), pca::num(i)}), cases[i], chain});
      return pca::abstract_open(x, chain);
    }
    case K::IndId: {
      auto f = compile(t->b, ctx_code);
      if (!f) return std::nullopt;
      std::string x = fresh("x"), y = fresh("y"), e = fresh("e");
      return pca::lambda({x, y, e}, pca::app(*f, pca::var(x)));
    }
    case K::Transport: return compile(t->c, ctx_code);
    case K::Cls: return compile(t->b, ctx_code);
    case K::IndQuot: return compile(t->b, ctx_code);
    case K::Refl:
    case K::TrIn:
    case K::Sort:
    case K::Pi:
    case K::Sigma:
    case K::W:
    case K::Fin:
    case K::Nat:
    case K::Id:
    case K::Trunc:
    case K::Quot: return pca::num(0);
    case K::QuotAx:
    case K::Propext: return pca::lambda({fresh("a"), fresh("b"), fresh("c")}, pca::num(0));
    case K::IndTrunc:
    case K::IndW: return std::nullopt;
  }
  return std::nullopt;
}

Env env_of_point(const ElemP& point, std::size_t depth) {
  Env env(depth);
  ElemP cur = point;
  for (std::size_t i = depth; i-- > 0;) {
    if (cur->kind != Elem::Kind::Pair) throw unsupported("malformed context point");
    env[i] = cur->b;
    cur = cur->a;
  }
  return env;
}

}  // namespace

ElemP context_point(const Env& env) {
  ElemP p = star();
  for (auto& x : env) p = pair_elem(p, x);
  return p;
}

AssemblyP denote_context(const k::Context& ctx, const World& w) {
  AssemblyP cur = subsingleton(Tri::True, w);
  for (std::size_t i = 0; i < ctx.vars.size(); ++i) {
    k::Context prefix;
    prefix.vars.assign(ctx.vars.begin(), ctx.vars.begin() + i);
    k::TermP ty = ctx.vars[i].second;
    Denoter d(w);
    cur = sigma(cur, [d, prefix, ty, i](const ElemP& point) {
      return d.type(prefix, env_of_point(point, i), ty);
    }, w);
  }
  return cur;
}

ElemP denote(const k::Context& ctx, const Env& env, const k::TermP& t, const World& w) {
  return Denoter(w).eval(ctx, env, t);
}

AssemblyP denote_type(const k::Context& ctx, const Env& env, const k::TermP& t, const World& w) {
  return Denoter(w).type(ctx, env, t);
}

std::optional<CodeP> compile_tracker(const k::Context&, const k::TermP& t) {
  std::string g = fresh("g");
  auto body = compile(t, pca::var(g));
  if (!body) return std::nullopt;
  return pca::abstract_open(g, *body);
}

SemMorphism denote_morphism(const k::Context& ctx, const k::TermP& t, const k::TermP& type,
                            const World& w) {
  SemMorphism m;
  m.dom = denote_context(ctx, w);
  std::size_t depth = ctx.vars.size();
  Denoter d(w);
  m.cod = [d, ctx, type, depth](const ElemP& p) { return d.type(ctx, env_of_point(p, depth), type); };
  m.map = [d, ctx, t, depth](const ElemP& p) { return d.eval(ctx, env_of_point(p, depth), t); };
  if (auto code = compile_tracker(ctx, t))
    if (tracks(m, *code) == Tri::True) m.tracker = code;
  return m;
}

}  // namespace cwb::model
