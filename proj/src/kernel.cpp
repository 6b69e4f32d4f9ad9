#include "cwb/kernel.hpp"

#include <algorithm>
#include <functional>

namespace cwb::kernel {

using K = Term::Kind;

std::string to_string(Sort s) {
  switch (s) {
    case Sort::Prop: return "Prop";
    case Sort::Set: return "Set";
    case Sort::Type: return "Type";
  }
  return "?";
}

const std::vector<std::string>& rule_names() {
  static const std::vector<std::string> names = {
      "start",   "weakening", "axiom_P",   "axiom_S",    "cumul_P",    "cumul_S",
      "convers", "reflection", "Fin-F",    "Fin-I",      "Fin-E",      "Fin-beta",
      "Nat-F",   "Nat-I0",    "Nat-IS",    "Nat-E",      "Nat-beta0",  "Nat-betaS",
      "Sigma-F", "Sigma-I",   "Sigma-E",   "Sigma-beta", "Pi-F",       "Pi-I",
      "Pi-E",    "Pi-beta",   "W-F",       "W-I",        "W-E",        "W-beta",
      "Id-F",    "Id-I",      "Id-E",      "Id-beta",    "Trunc-F",    "Trunc-I",
      "Trunc-E", "Trunc-beta", "Quot-F",   "Quot-I",     "Quot-E",     "Quot-I=",
      "Quot-beta", "propext"};
  return names;
}

// ---------------------------------------------------------------- constructors

namespace {

TermP make(Term t) { return std::make_shared<const Term>(std::move(t)); }

Term node(K kind, TermP a = nullptr, TermP b = nullptr, TermP c = nullptr) {
  Term t;
  t.kind = kind;
  t.a = std::move(a);
  t.b = std::move(b);
  t.c = std::move(c);
  return t;
}

TermP binder(K kind, const std::string& x, TermP dom, TermP body) {
  Term t = node(kind, std::move(dom), std::move(body));
  t.name = x;
  return make(std::move(t));
}

bool binds(K kind) { return kind == K::Pi || kind == K::Lam || kind == K::Sigma || kind == K::W; }

}  // namespace

TermP sort(Sort s) {
  Term t = node(K::Sort);
  t.sort = s;
  return make(std::move(t));
}
TermP var(std::size_t index, const std::string& name) {
  Term t = node(K::Var);
  t.index = index;
  t.name = name;
  return make(std::move(t));
}
TermP pi(const std::string& x, TermP dom, TermP body) { return binder(K::Pi, x, dom, body); }
TermP arrow(TermP dom, TermP cod) { return pi("_", std::move(dom), shift(cod, 1)); }
TermP lam(const std::string& x, TermP dom, TermP body) { return binder(K::Lam, x, dom, body); }
TermP app(TermP f, TermP a) { return make(node(K::App, std::move(f), std::move(a))); }
TermP apps(TermP f, const std::vector<TermP>& as) {
  for (auto& a : as) f = app(f, a);
  return f;
}
TermP sigma(const std::string& x, TermP dom, TermP body) { return binder(K::Sigma, x, dom, body); }
TermP product(TermP a, TermP b) { return sigma("_", std::move(a), shift(b, 1)); }
TermP pair(TermP s, TermP a, TermP b) { return make(node(K::Pair, s, a, b)); }
TermP ind_sigma(TermP motive, TermP f) { return make(node(K::IndSigma, motive, f)); }
TermP wtype(const std::string& x, TermP dom, TermP body) { return binder(K::W, x, dom, body); }
TermP tree(TermP w, TermP label, TermP sub) { return make(node(K::Tree, w, label, sub)); }
TermP ind_w(TermP motive, TermP f) { return make(node(K::IndW, motive, f)); }
TermP fin(Nat n) {
  Term t = node(K::Fin);
  t.n = n;
  return make(std::move(t));
}
TermP fin_el(Nat k, Nat n) {
  Term t = node(K::FinEl);
  t.n = n;
  t.k = k;
  return make(std::move(t));
}
TermP ind_fin(TermP motive, Nat n, std::vector<TermP> cases) {
  Term t = node(K::IndFin, motive);
  t.n = n;
  t.args = std::move(cases);
  return make(std::move(t));
}
TermP nat() { return make(node(K::Nat)); }
TermP zero() { return make(node(K::Zero)); }
TermP succ(TermP n) { return make(node(K::Succ, n)); }
TermP numeral(Nat n) {
  TermP t = zero();
  for (Nat i = 0; i < n; ++i) t = succ(t);
  return t;
}
TermP ind_nat(TermP motive, TermP base, TermP step) { return make(node(K::IndNat, motive, base, step)); }
TermP id(TermP type, TermP lhs, TermP rhs) { return make(node(K::Id, type, lhs, rhs)); }
TermP refl(TermP a) { return make(node(K::Refl, a)); }
TermP ind_id(TermP motive, TermP f) { return make(node(K::IndId, motive, f)); }
TermP transport(TermP motive, TermP path, TermP t) { return make(node(K::Transport, motive, path, t)); }
TermP trunc(TermP a) { return make(node(K::Trunc, a)); }
TermP tr_in(TermP a) { return make(node(K::TrIn, a)); }
TermP ind_trunc(TermP motive, TermP f, TermP h) { return make(node(K::IndTrunc, motive, f, h)); }
TermP quot(TermP type, TermP relation) { return make(node(K::Quot, type, relation)); }
TermP cls(TermP q, TermP a) { return make(node(K::Cls, q, a)); }
TermP quot_ax(TermP q) { return make(node(K::QuotAx, q)); }
TermP ind_quot(TermP motive, TermP f, TermP h) { return make(node(K::IndQuot, motive, f, h)); }
TermP propext() { return make(node(K::Propext)); }

// ---------------------------------------------------------------- de Bruijn

namespace {

template <class F>
TermP map_vars(const TermP& t, std::size_t depth, const F& f) {
  switch (t->kind) {
    case K::Var: return f(t, depth);
    case K::Sort:
    case K::Fin:
    case K::FinEl:
    case K::Nat:
    case K::Zero:
    case K::Propext: return t;
    default: break;
  }
  Term out = *t;
  if (t->a) out.a = map_vars(t->a, depth, f);
  if (t->b) out.b = map_vars(t->b, binds(t->kind) ? depth + 1 : depth, f);
  if (t->c) out.c = map_vars(t->c, depth, f);
  for (auto& x : out.args) x = map_vars(x, depth, f);
  return make(std::move(out));
}

}  // namespace

TermP shift(const TermP& t, long d, std::size_t cutoff) {
  if (d == 0) return t;
  return map_vars(t, 0, [&](const TermP& v, std::size_t depth) -> TermP {
    if (v->index < cutoff + depth) return v;
    return var(static_cast<std::size_t>(static_cast<long>(v->index) + d), v->name);
  });
}

TermP subst(const TermP& t, std::size_t j, const TermP& s) {
  return map_vars(t, 0, [&](const TermP& v, std::size_t depth) -> TermP {
    if (v->index == j + depth) return shift(s, static_cast<long>(depth));
    if (v->index > j + depth) return var(v->index - 1, v->name);
    return v;
  });
}

TermP instantiate(const TermP& body, const TermP& arg) { return subst(body, 0, arg); }

bool syntactic_equal(const TermP& a, const TermP& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->sort != b->sort || a->index != b->index || a->n != b->n ||
      a->k != b->k || a->args.size() != b->args.size())
    return false;
  if (!syntactic_equal(a->a, b->a) || !syntactic_equal(a->b, b->b) || !syntactic_equal(a->c, b->c))
    return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!syntactic_equal(a->args[i], b->args[i])) return false;
  return true;
}

bool occurs(std::size_t index, const TermP& t) {
  bool found = false;
  map_vars(t, 0, [&](const TermP& v, std::size_t depth) -> TermP {
    if (v->index == index + depth) found = true;
    return v;
  });
  return found;
}

// ---------------------------------------------------------------- contexts

TermP Context::type_of(std::size_t index) const {
  const auto& entry = vars.at(vars.size() - 1 - index);
  return shift(entry.second, static_cast<long>(index + 1));
}

Context Context::extend(const std::string& x, TermP type) const {
  Context out = *this;
  out.vars.emplace_back(x, std::move(type));
  return out;
}

std::vector<std::string> Context::names() const {
  std::vector<std::string> out;
  for (auto& v : vars) out.push_back(v.first);
  return out;
}

// ---------------------------------------------------------------- checker

namespace {

bool sort_leq(Sort a, Sort b) { return static_cast<int>(a) <= static_cast<int>(b); }

class Checker {
 public:
  explicit Checker(const Options& opt) : opt_(opt), fuel_(opt.reduction_fuel), hint_fuel_(opt.hint_fuel) {}

  std::set<std::string> used;

  [[noreturn]] void fail(const std::string& rule, const Context& ctx, const TermP& at,
                         const std::string& reason) {
    throw type_error(rule, at ? show(at, ctx.names()) : "", reason);
  }

  void tick() {
    if (fuel_ == 0) throw type_error("convers", "", "reduction fuel exhausted");
    --fuel_;
  }

  // ---- reduction ----

  static void spine(const TermP& t, TermP& head, std::vector<TermP>& args) {
    TermP cur = t;
    while (cur->kind == K::App) {
      args.push_back(cur->b);
      cur = cur->a;
    }
    std::reverse(args.begin(), args.end());
    head = cur;
  }

  static std::size_t major_index(K kind) {
    switch (kind) {
      case K::IndSigma:
      case K::IndW:
      case K::IndFin:
      case K::IndNat:
      case K::IndTrunc:
      case K::IndQuot: return 0;
      case K::IndId: return 2;
      default: return static_cast<std::size_t>(-1);
    }
  }

  // One elimination step on a head whose major premise is in whnf.
  std::optional<TermP> iota(const TermP& head, const TermP& major, const std::vector<TermP>& args,
                            std::size_t m) {
    auto rest = [&](TermP r) {
      for (std::size_t i = m + 1; i < args.size(); ++i) r = app(r, args[i]);
      return r;
    };
    switch (head->kind) {
      case K::IndFin:
        if (major->kind == K::FinEl && major->k < head->args.size()) {
          used.insert("Fin-beta");
          return rest(head->args[major->k]);
        }
        break;
      case K::IndNat:
        if (major->kind == K::Zero) {
          used.insert("Nat-beta0");
          return rest(head->b);
        }
        if (major->kind == K::Succ) {
          used.insert("Nat-betaS");
          return rest(apps(head->c, {major->a, app(head, major->a)}));
        }
        break;
      case K::IndSigma:
        if (major->kind == K::Pair) {
          used.insert("Sigma-beta");
          return rest(apps(head->b, {major->b, major->c}));
        }
        break;
      case K::IndW:
        if (major->kind == K::Tree) {
          auto w = whnf_plain(major->a);
          if (w->kind != K::W) break;
          used.insert("W-beta");
          TermP dom = instantiate(w->b, major->b);
          TermP rec = lam("b", dom, app(shift(head, 1), app(shift(major->c, 1), var(0, "b"))));
          return rest(apps(head->b, {major->b, major->c, rec}));
        }
        break;
      case K::IndId:
        if (major->kind == K::Refl) {
          used.insert("Id-beta");
          return rest(app(head->b, args[0]));
        }
        break;
      case K::IndTrunc:
        if (major->kind == K::TrIn) {
          used.insert("Trunc-beta");
          return rest(app(head->b, major->a));
        }
        break;
      case K::IndQuot:
        if (major->kind == K::Cls) {
          used.insert("Quot-beta");
          return rest(app(head->b, major->b));
        }
        break;
      default: break;
    }
    return std::nullopt;
  }

  // whnf without hints; used inside iota where no context is at hand
  TermP whnf_plain(const TermP& t) {
    Context empty;
    return whnf(empty, t, false);
  }

  TermP whnf(const Context& ctx, TermP t, bool hints = true) {
    for (;;) {
      bool progressed = false;
      if (t->kind == K::App) {
        TermP head;
        std::vector<TermP> args;
        spine(t, head, args);
        TermP h = whnf(ctx, head, hints);
        if (h->kind == K::Lam) {
          tick();
          used.insert("Pi-beta");
          TermP r = instantiate(h->b, args[0]);
          for (std::size_t i = 1; i < args.size(); ++i) r = app(r, args[i]);
          t = r;
          continue;
        }
        std::size_t m = major_index(h->kind);
        if (m != static_cast<std::size_t>(-1) && m < args.size()) {
          TermP major = whnf(ctx, args[m], hints);
          if (auto r = iota(h, major, args, m)) {
            tick();
            t = *r;
            continue;
          }
        }
        if (h != head) t = apps(h, args);
      } else if (t->kind == K::Transport) {
        // a constant family transports trivially
        if (t->a->kind == K::Lam && !occurs(0, t->a->b)) {
          tick();
          used.insert("reflection");
          t = t->c;
          continue;
        }
        TermP e = whnf(ctx, t->b, hints);
        if (e->kind == K::Refl) {
          tick();
          used.insert("Id-beta");
          t = t->c;
          continue;
        }
      }
      if (hints && !ctx.hints.empty()) {
        for (auto& hint : ctx.hints) {
          long d = static_cast<long>(ctx.depth() - hint.depth);
          if (syntactic_equal(t, shift(hint.lhs, d))) {
            if (hint_fuel_ == 0) throw type_error("reflection", "", "hint fuel exhausted");
            --hint_fuel_;
            used.insert("reflection");
            t = shift(hint.rhs, d);
            progressed = true;
            break;
          }
        }
      }
      if (!progressed) return t;
    }
  }

  TermP normalize(const Context& ctx, const TermP& t0) {
    TermP t = whnf(ctx, t0);
    switch (t->kind) {
      case K::Var:
      case K::Sort:
      case K::Fin:
      case K::FinEl:
      case K::Nat:
      case K::Zero:
      case K::Propext: return t;
      default: break;
    }
    Term out = *t;
    if (t->a) out.a = normalize(ctx, t->a);
    if (t->b) out.b = binds(t->kind) ? normalize(ctx.extend(t->name, t->a), t->b) : normalize(ctx, t->b);
    if (t->c) out.c = normalize(ctx, t->c);
    for (auto& x : out.args) x = normalize(ctx, x);
    return make(std::move(out));
  }

  bool conv(const Context& ctx, const TermP& a0, const TermP& b0) {
    return conv_struct(ctx, a0, b0) || same_identity_proof(ctx, a0, b0);
  }

  // Any two proofs of one equation are equal.
  bool same_identity_proof(const Context& ctx, const TermP& a, const TermP& b) {
    auto saved = used;
    bool ok = false;
    try {
      TermP ta = whnf(ctx, infer(ctx, a));
      if (ta->kind == K::Id) {
        TermP tb = whnf(ctx, infer(ctx, b));
        ok = tb->kind == K::Id && conv_struct(ctx, ta, tb);
      }
    } catch (const type_error&) {
      ok = false;
    }
    used = std::move(saved);
    if (ok) used.insert("reflection");
    return ok;
  }

  bool conv_struct(const Context& ctx, const TermP& a0, const TermP& b0) {
    if (syntactic_equal(a0, b0)) return true;
    TermP a = whnf(ctx, a0), b = whnf(ctx, b0);
    if (syntactic_equal(a, b)) return true;
    if (a->kind != b->kind) {
      // eta
      if (a->kind == K::Lam)
        return conv(ctx.extend(a->name, a->a), a->b, app(shift(b, 1), var(0)));
      if (b->kind == K::Lam)
        return conv(ctx.extend(b->name, b->a), app(shift(a, 1), var(0)), b->b);
      return false;
    }
    if (a->sort != b->sort || a->index != b->index || a->n != b->n || a->k != b->k ||
        a->args.size() != b->args.size())
      return false;
    if (binds(a->kind)) return conv(ctx, a->a, b->a) && conv(ctx.extend(a->name, a->a), a->b, b->b);
    auto field = [&](const TermP& x, const TermP& y) {
      if (!x || !y) return !x && !y;
      return conv(ctx, x, y);
    };
    if (!field(a->a, b->a) || !field(a->b, b->b) || !field(a->c, b->c)) return false;
    for (std::size_t i = 0; i < a->args.size(); ++i)
      if (!conv(ctx, a->args[i], b->args[i])) return false;
    return true;
  }

  // Sorts compare by cumulativity, Pi codomains covariantly.
  bool subtype(const Context& ctx, const TermP& have, const TermP& want) {
    TermP h = whnf(ctx, have), w = whnf(ctx, want);
    if (h->kind == K::Sort && w->kind == K::Sort) {
      if (!sort_leq(h->sort, w->sort)) return false;
      note_cumul(h->sort, w->sort);
      return true;
    }
    if (h->kind == K::Pi && w->kind == K::Pi)
      return conv(ctx, h->a, w->a) && subtype(ctx.extend(h->name, h->a), h->b, w->b);
    return conv(ctx, h, w);
  }

  void note_cumul(Sort from, Sort to) {
    if (from == Sort::Prop && to != Sort::Prop) used.insert("cumul_P");
    if (from != Sort::Type && to == Sort::Type) used.insert("cumul_S");
  }

  // ---- typing ----

  void check(const Context& ctx, const TermP& t, const TermP& want, const std::string& rule) {
    TermP have = infer(ctx, t);
    if (syntactic_equal(have, want)) return;
    if (!subtype(ctx, have, want)) {
      TermP h = whnf(ctx, have), w = whnf(ctx, want);
      if (rule == "convers" && h->kind == K::Sort && w->kind == K::Sort) {
        if (t->kind == K::Sort) fail(t->sort == Sort::Prop ? "axiom_P" : "axiom_S", ctx, t,
                                     to_string(t->sort) + " does not have type " + to_string(w->sort));
        fail(w->sort == Sort::Prop ? "cumul_P" : "cumul_S", ctx, t,
             "a type in " + to_string(h->sort) + " is not in " + to_string(w->sort));
      }
      fail(rule, ctx, t,
           "type mismatch: expected " + show(want, ctx.names()) + ", got " + show(have, ctx.names()));
    }
    used.insert("convers");
  }

  Sort type_sort(const Context& ctx, const TermP& ty, const std::string& rule) {
    TermP s = whnf(ctx, infer(ctx, ty));
    if (s->kind != K::Sort) fail(rule, ctx, ty, "not a type");
    return s->sort;
  }

  // Motive `fun (x : D) => C` with C a type; returns D.
  TermP motive_domain(const Context& ctx, const TermP& motive, const std::string& rule, Sort* out = nullptr) {
    if (motive->kind != K::Lam) fail(rule, ctx, motive, "motive must be a lambda");
    type_sort(ctx, motive->a, rule);
    Sort s = type_sort(ctx.extend(motive->name, motive->a), motive->b, rule);
    if (out) *out = s;
    return motive->a;
  }

  static TermP apply_motive(const TermP& motive, const TermP& arg) { return instantiate(motive->b, arg); }

  TermP infer(const Context& ctx, const TermP& t) {
    switch (t->kind) {
      case K::Sort:
        if (t->sort == Sort::Prop) {
          used.insert("axiom_P");
          return sort(Sort::Type);
        }
        if (t->sort == Sort::Set) {
          used.insert("axiom_S");
          return sort(Sort::Type);
        }
        fail("axiom_S", ctx, t, "Type has no type");
      case K::Var:
        if (t->index >= ctx.depth()) fail("start", ctx, t, "unbound variable");
        used.insert(t->index == 0 ? "start" : "weakening");
        return ctx.type_of(t->index);
      case K::Pi: {
        type_sort(ctx, t->a, "Pi-F");
        Sort sb = type_sort(ctx.extend(t->name, t->a), t->b, "Pi-F");
        used.insert("Pi-F");
        return sort(sb);
      }
      case K::Sigma: {
        Sort sa = type_sort(ctx, t->a, "Sigma-F");
        Sort sb = type_sort(ctx.extend(t->name, t->a), t->b, "Sigma-F");
        Sort s = std::max(sa, sb);
        note_cumul(sa, s);
        note_cumul(sb, s);
        used.insert("Sigma-F");
        return sort(s);
      }
      case K::W: {
        Sort sa = type_sort(ctx, t->a, "W-F");
        type_sort(ctx.extend(t->name, t->a), t->b, "W-F");
        used.insert("W-F");
        return sort(sa);
      }
      case K::Lam: {
        type_sort(ctx, t->a, "Pi-I");
        Context inner = ctx.extend(t->name, t->a);
        TermP body = infer(inner, t->b);
        type_sort(inner, body, "Pi-I");
        used.insert("Pi-I");
        return pi(t->name, t->a, body);
      }
      case K::App: {
        TermP ft = whnf(ctx, infer(ctx, t->a));
        if (ft->kind != K::Pi)
          fail("Pi-E", ctx, t, "applying a term of non-function type " + show(ft, ctx.names()));
        check(ctx, t->b, ft->a, "Pi-E");
        used.insert("Pi-E");
        return instantiate(ft->b, t->b);
      }
      case K::Pair: {
        type_sort(ctx, t->a, "Sigma-I");
        TermP s = whnf(ctx, t->a);
        if (s->kind != K::Sigma) fail("Sigma-I", ctx, t, "pair annotation is not a Sigma type");
        check(ctx, t->b, s->a, "Sigma-I");
        check(ctx, t->c, instantiate(s->b, t->b), "Sigma-I");
        used.insert("Sigma-I");
        return t->a;
      }
      case K::IndSigma: {
        TermP dom = motive_domain(ctx, t->a, "Sigma-E");
        TermP s = whnf(ctx, dom);
        if (s->kind != K::Sigma) fail("Sigma-E", ctx, t, "motive is not over a Sigma type");
        TermP inner = apply_motive(shift(t->a, 2), pair(shift(dom, 2), var(1, s->name), var(0, "y")));
        check(ctx, t->b, pi(s->name, s->a, pi("y", s->b, inner)), "Sigma-E");
        used.insert("Sigma-E");
        return pi("p", dom, apply_motive(shift(t->a, 1), var(0, "p")));
      }
      case K::Tree: {
        type_sort(ctx, t->a, "W-I");
        TermP w = whnf(ctx, t->a);
        if (w->kind != K::W) fail("W-I", ctx, t, "tree annotation is not a W type");
        check(ctx, t->b, w->a, "W-I");
        check(ctx, t->c, arrow(instantiate(w->b, t->b), t->a), "W-I");
        used.insert("W-I");
        return t->a;
      }
      case K::IndW: {
        TermP dom = motive_domain(ctx, t->a, "W-E");
        TermP w = whnf(ctx, dom);
        if (w->kind != K::W) fail("W-E", ctx, t, "motive is not over a W type");
        TermP b_at_a = w->b;  // under a
        TermP ih = pi("b", shift(b_at_a, 1),
                      apply_motive(shift(t->a, 3), app(var(1, "d"), var(0, "b"))));
        TermP concl = apply_motive(shift(t->a, 2), tree(shift(dom, 2), var(1, "a"), var(0, "d")));
        TermP ftype = pi("a", w->a, pi("d", arrow(b_at_a, shift(dom, 1)), arrow(ih, concl)));
        check(ctx, t->b, ftype, "W-E");
        used.insert("W-E");
        return pi("t", dom, apply_motive(shift(t->a, 1), var(0, "t")));
      }
      case K::Fin: used.insert("Fin-F"); return sort(Sort::Set);
      case K::FinEl:
        if (t->k >= t->n) fail("Fin-I", ctx, t, "element index out of range");
        used.insert("Fin-I");
        return fin(t->n);
      case K::IndFin: {
        TermP dom = motive_domain(ctx, t->a, "Fin-E");
        if (!conv(ctx, dom, fin(t->n))) fail("Fin-E", ctx, t, "motive domain does not match");
        if (t->args.size() != t->n) fail("Fin-E", ctx, t, "wrong number of cases");
        for (Nat i = 0; i < t->n; ++i) check(ctx, t->args[i], apply_motive(t->a, fin_el(i, t->n)), "Fin-E");
        used.insert("Fin-E");
        return pi("k", fin(t->n), apply_motive(shift(t->a, 1), var(0, "k")));
      }
      case K::Nat: used.insert("Nat-F"); return sort(Sort::Set);
      case K::Zero: used.insert("Nat-I0"); return nat();
      case K::Succ:
        check(ctx, t->a, nat(), "Nat-IS");
        used.insert("Nat-IS");
        return nat();
      case K::IndNat: {
        TermP dom = motive_domain(ctx, t->a, "Nat-E");
        if (!conv(ctx, dom, nat())) fail("Nat-E", ctx, t, "motive is not over Nat");
        check(ctx, t->b, apply_motive(t->a, zero()), "Nat-E");
        TermP c1 = shift(t->a, 1);
        check(ctx, t->c,
              pi("n", nat(), pi("_", apply_motive(c1, var(0, "n")),
                                apply_motive(shift(t->a, 2), succ(var(1, "n"))))),
              "Nat-E");
        used.insert("Nat-E");
        return pi("n", nat(), apply_motive(c1, var(0, "n")));
      }
      case K::Id:
        type_sort(ctx, t->a, "Id-F");
        check(ctx, t->b, t->a, "Id-F");
        check(ctx, t->c, t->a, "Id-F");
        used.insert("Id-F");
        return sort(Sort::Prop);
      case K::Refl: {
        TermP ty = infer(ctx, t->a);
        used.insert("Id-I");
        return id(ty, t->a, t->a);
      }
      case K::IndId: {
        const TermP& m = t->a;
        if (m->kind != K::Lam || m->b->kind != K::Lam || m->b->b->kind != K::Lam)
          fail("Id-E", ctx, m, "motive must bind two points and a path");
        TermP ty = m->a;
        type_sort(ctx, ty, "Id-E");
        Context c1 = ctx.extend(m->name, ty);
        if (!conv(c1, m->b->a, shift(ty, 1))) fail("Id-E", ctx, m, "second point has the wrong type");
        Context c2 = c1.extend(m->b->name, m->b->a);
        if (!conv(c2, m->b->b->a, id(shift(ty, 2), var(1), var(0))))
          fail("Id-E", ctx, m, "path binder has the wrong type");
        Context c3 = c2.extend(m->b->b->name, m->b->b->a);
        type_sort(c3, m->b->b->b, "Id-E");
        auto motive3 = [&](const TermP& x, const TermP& y, const TermP& e, long depth) {
          TermP mm = shift(m, depth);
          return instantiate(instantiate(instantiate(mm->b, x)->b, y)->b, e);
        };
        TermP fty = pi("x", ty, motive3(var(0, "x"), var(0, "x"), refl(var(0, "x")), 1));
        check(ctx, t->b, fty, "Id-E");
        used.insert("Id-E");
        return pi("x", ty,
                  pi("x'", shift(ty, 1),
                     pi("e", id(shift(ty, 2), var(1, "x"), var(0, "x'")),
                        motive3(var(2, "x"), var(1, "x'"), var(0, "e"), 3))));
      }
      case K::Transport: {
        TermP dom = motive_domain(ctx, t->a, "Id-E");
        TermP et = whnf(ctx, infer(ctx, t->b));
        if (et->kind != K::Id) fail("Id-E", ctx, t->b, "transport along a non-path");
        if (!conv(ctx, et->a, dom)) fail("Id-E", ctx, t, "path type does not match motive domain");
        check(ctx, t->c, apply_motive(t->a, et->b), "Id-E");
        used.insert("Id-E");
        return apply_motive(t->a, et->c);
      }
      case K::Trunc:
        type_sort(ctx, t->a, "Trunc-F");
        used.insert("Trunc-F");
        return sort(Sort::Prop);
      case K::TrIn: {
        TermP ty = infer(ctx, t->a);
        used.insert("Trunc-I");
        return trunc(ty);
      }
      case K::IndTrunc: {
        TermP dom = motive_domain(ctx, t->a, "Trunc-E");
        TermP tr = whnf(ctx, dom);
        if (tr->kind != K::Trunc) fail("Trunc-E", ctx, t, "motive is not over a truncation");
        check(ctx, t->b, pi("x", tr->a, apply_motive(shift(t->a, 1), tr_in(var(0, "x")))), "Trunc-E");
        check(ctx, t->c, hprop_type(t->a, dom), "Trunc-E");
        used.insert("Trunc-E");
        return pi("t", dom, apply_motive(shift(t->a, 1), var(0, "t")));
      }
      case K::Quot: {
        Sort sa = type_sort(ctx, t->a, "Quot-F");
        TermP rt = whnf(ctx, infer(ctx, t->b));
        bool ok = rt->kind == K::Pi && conv(ctx, rt->a, t->a);
        if (ok) {
          Context c1 = ctx.extend(rt->name, rt->a);
          TermP inner = whnf(c1, rt->b);
          ok = inner->kind == K::Pi && conv(c1, inner->a, shift(t->a, 1));
          if (ok) {
            TermP s = whnf(c1.extend(inner->name, inner->a), inner->b);
            ok = s->kind == K::Sort;
          }
        }
        if (!ok) fail("Quot-F", ctx, t->b, "relation must have type A -> A -> sort");
        used.insert("Quot-F");
        return sort(sa);
      }
      case K::Cls: {
        type_sort(ctx, t->a, "Quot-I");
        TermP q = whnf(ctx, t->a);
        if (q->kind != K::Quot) fail("Quot-I", ctx, t, "class annotation is not a quotient");
        check(ctx, t->b, q->a, "Quot-I");
        used.insert("Quot-I");
        return t->a;
      }
      case K::QuotAx: {
        type_sort(ctx, t->a, "Quot-I=");
        TermP q = whnf(ctx, t->a);
        if (q->kind != K::Quot) fail("Quot-I=", ctx, t, "annotation is not a quotient");
        used.insert("Quot-I=");
        return quot_ax_type(t->a, q);
      }
      case K::IndQuot: {
        TermP dom = motive_domain(ctx, t->a, "Quot-E");
        TermP q = whnf(ctx, dom);
        if (q->kind != K::Quot) fail("Quot-E", ctx, t, "motive is not over a quotient");
        check(ctx, t->b, pi("x", q->a, apply_motive(shift(t->a, 1), cls(shift(dom, 1), var(0, "x")))),
              "Quot-E");
        TermP q3 = shift(dom, 3), m3 = shift(t->a, 3), f3 = shift(t->b, 3);
        TermP path = apps(quot_ax(q3), {var(2, "x"), var(1, "x'"), var(0, "r")});
        TermP lhs = transport(m3, path, app(f3, var(2, "x")));
        TermP rhs = app(f3, var(1, "x'"));
        TermP hty = pi("x", q->a,
                       pi("x'", shift(q->a, 1),
                          pi("r", apps(shift(q->b, 2), {var(1, "x"), var(0, "x'")}),
                             id(apply_motive(m3, cls(q3, var(1, "x'"))), lhs, rhs))));
        check(ctx, t->c, hty, "Quot-E");
        used.insert("Quot-E");
        return pi("q", dom, apply_motive(shift(t->a, 1), var(0, "q")));
      }
      case K::Propext: {
        used.insert("propext");
        TermP p = var(1, "P"), p2 = var(0, "P'");
        TermP iff = product(arrow(p, p2), arrow(p2, p));
        return pi("P", sort(Sort::Prop),
                  pi("P'", sort(Sort::Prop), arrow(iff, id(sort(Sort::Prop), p, p2))));
      }
    }
    fail("convers", ctx, t, "unknown term");
  }

  static TermP hprop_type(const TermP& motive, const TermP& dom) {
    TermP ct = apply_motive(shift(motive, 1), var(0, "t"));
    return pi("t", dom, pi("c", ct, pi("c'", shift(ct, 1), id(shift(ct, 2), var(1, "c"), var(0, "c'")))));
  }

  static TermP quot_ax_type(const TermP& annot, const TermP& q) {
    TermP q2 = shift(annot, 2);
    return pi("a", q->a,
              pi("a'", shift(q->a, 1),
                 arrow(apps(shift(q->b, 2), {var(1, "a"), var(0, "a'")}),
                       id(q2, cls(q2, var(1, "a")), cls(q2, var(0, "a'"))))));
  }

 private:
  Options opt_;
  std::size_t fuel_;
  std::size_t hint_fuel_;
};

Verdict run(const Options& opt, const std::function<TermP(Checker&)>& body) {
  Checker ch(opt);
  Verdict v;
  try {
    v.type = body(ch);
    v.accepted = true;
  } catch (const type_error& e) {
    v.accepted = false;
    v.rule = e.rule;
    v.location = e.location;
    v.reason = e.what();
  }
  v.rules_used = std::move(ch.used);
  return v;
}

}  // namespace

Verdict infer(const Context& ctx, const TermP& t, const Options& opt) {
  return run(opt, [&](Checker& ch) { return ch.infer(ctx, t); });
}

Verdict check(const Context& ctx, const TermP& t, const TermP& ty, const Options& opt) {
  return run(opt, [&](Checker& ch) {
    if (!(ty->kind == K::Sort && ty->sort == Sort::Type)) ch.type_sort(ctx, ty, "convers");
    ch.check(ctx, t, ty, "convers");
    return ty;
  });
}

Verdict add_hint(Context& ctx, const TermP& proof, const Options& opt) {
  Verdict v = run(opt, [&](Checker& ch) {
    TermP ty = ch.whnf(ctx, ch.infer(ctx, proof));
    if (ty->kind != K::Id) ch.fail("reflection", ctx, proof, "hint is not a proof of an equation");
    ch.used.insert("reflection");
    return ty;
  });
  if (v.accepted) ctx.hints.push_back({v.type->b, v.type->c, ctx.depth(), proof});
  return v;
}

Verdict build_context(const std::vector<ContextEntry>& entries, Context& out, const Options& opt) {
  out = Context{};
  Verdict total;
  total.accepted = true;
  for (auto& e : entries) {
    Verdict v;
    if (e.hint) {
      v = add_hint(out, e.term, opt);
    } else {
      v = run(opt, [&](Checker& ch) {
        ch.type_sort(out, e.term, "start");
        return e.term;
      });
      if (v.accepted) out.vars.emplace_back(e.name, e.term);
    }
    total.rules_used.insert(v.rules_used.begin(), v.rules_used.end());
    if (!v.accepted) {
      v.rules_used = total.rules_used;
      return v;
    }
  }
  return total;
}

Verdict check_hprop_obligation(const Context& ctx, const TermP& motive, const TermP& h,
                               const Options& opt) {
  return run(opt, [&](Checker& ch) {
    TermP dom = ch.motive_domain(ctx, motive, "Trunc-E");
    if (ch.whnf(ctx, dom)->kind != K::Trunc) ch.fail("Trunc-E", ctx, motive, "motive is not over a truncation");
    TermP ty = Checker::hprop_type(motive, dom);
    ch.check(ctx, h, ty, "Trunc-E");
    return ty;
  });
}

TermP whnf(const Context& ctx, const TermP& t, const Options& opt) {
  Checker ch(opt);
  return ch.whnf(ctx, t);
}

TermP normalize(const Context& ctx, const TermP& t, const Options& opt) {
  Checker ch(opt);
  return ch.normalize(ctx, t);
}

bool conv(const Context& ctx, const TermP& a, const TermP& b, const Options& opt) {
  Checker ch(opt);
  try {
    return ch.conv(ctx, a, b);
  } catch (const type_error&) {
    return false;
  }
}

}  // namespace cwb::kernel
