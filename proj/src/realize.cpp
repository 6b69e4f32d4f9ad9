#include "cwb/realize.hpp"

#include <algorithm>

namespace cwb::realize {

namespace h = cwb::holog;
using FK = h::Formula::Kind;
using pca::Outcome;

// ---------------------------------------------------------------- levels

model::ElemP to_elem(const h::Value& v) {
  if (v.sort == 0) {
    auto n = v.code ? pca::as_num(v.code) : std::nullopt;
    if (!n) throw unsupported("sort-0 value is not a numeral");
    return model::nat_elem(*n);
  }
  std::vector<model::ElemP> items;
  if (v.set.level == 1) {
    for (Nat n : v.set.nats) items.push_back(model::nat_elem(n));
  } else {
    for (auto& s : v.set.sets) items.push_back(to_elem(h::set_value(s)));
  }
  return model::set_elem(std::move(items));
}

h::Value to_value(const model::ElemP& e, int sort) {
  if (sort == 0) {
    if (e->kind != model::Elem::Kind::Nat) throw unsupported("expected a natural");
    return h::nat_value(e->n);
  }
  if (e->kind != model::Elem::Kind::Set) throw unsupported("expected a set");
  h::HSet s;
  s.level = sort;
  for (auto& x : e->items) {
    if (sort == 1) s.nats.insert(to_value(x, 0).code ? *pca::as_num(to_value(x, 0).code) : 0);
    else s.sets.insert(to_value(x, sort - 1).set);
  }
  return h::set_value(s);
}

model::Env point_of(const h::FormulaP& a, const h::Env& env, const model::World& w) {
  model::Env out;
  for (auto& [x, sort] : h::free_vars(a)) {
    auto it = env.find(x);
    if (it == env.end()) throw unsupported("no value for free variable " + x);
    out.push_back(model::g(sort, to_elem(it->second), w));
  }
  return out;
}

model::World world_of(const h::EvalConfig& cfg) {
  model::World w;
  w.budget = cfg.budget;
  w.nat_bound = cfg.cutoff;
  w.set_base = cfg.set_base.value_or(std::min<Nat>(cfg.cutoff + 1, 16));
  return w;
}

// ---------------------------------------------------------------- canonical realizers

namespace {

std::string code_var(const std::string& x) { return "v:" + x; }

CodeP tuple_code(const std::vector<std::string>& xs) {
  if (xs.empty()) return pca::num(0);
  CodeP acc = pca::var(code_var(xs.back()));
  for (std::size_t i = xs.size() - 1; i-- > 0;) acc = pca::ap({pca::npair(), pca::var(code_var(xs[i])), acc});
  return acc;
}

struct Builder {
  Canonical& out;
  std::size_t hyps = 0;

  CodeP go(const h::FormulaP& f) {
    switch (f->kind) {
      case FK::Eq: return pca::num(0);
      case FK::And: return pca::ap({pca::vpair(), go(f->l), go(f->r)});
      case FK::Imp: return pca::abstract_open("hyp#" + std::to_string(hyps++), go(f->r));
      case FK::Forall: return pca::abstract_open(code_var(f->name), go(f->l));
      case FK::Exists: {
        Canonical::Eps e;
        e.name = "eps#" + std::to_string(out.epsilons.size());
        e.y = f->name;
        for (auto& [x, sort] : h::free_vars(f)) e.params.push_back(x);
        e.body = f->l;
        out.epsilons.push_back(e);
        CodeP witness = pca::app(pca::var(e.name), tuple_code(e.params));
        CodeP inner = pca::app(pca::abstract_open(code_var(f->name), go(f->l)), witness);
        return pca::ap({pca::vpair(), witness, inner});
      }
      default:
        throw unsupported("canonical realizer: formula outside the desugared first-order fragment: " + h::show(f));
    }
  }
};

void require_first_order(const h::FormulaP& f) {
  if (!h::first_order(f)) throw unsupported("formula is not first-order: " + h::show(f));
}

}  // namespace

void Canonical::bind(const h::EvalConfig& cfg) {
  oracles.clear();
  bindings.clear();
  for (auto& e : epsilons)
    oracles.emplace(e.name, h::epsilon(e.y, e.params, e.body, cfg.cutoff + cfg.witness_slack, cfg));
  for (auto& [name, o] : oracles) bindings[name] = &o;
}

std::shared_ptr<Canonical> canonical_realizer(const h::FormulaP& a, const h::EvalConfig& cfg) {
  require_first_order(a);
  auto out = std::make_shared<Canonical>();
  for (auto& [x, sort] : h::free_vars(a)) out->params.push_back(x);
  Builder b{*out};
  CodeP body = b.go(a);
  std::vector<std::string> names;
  for (auto& x : out->params) names.push_back(code_var(x));
  out->code = pca::lambda(names, body);
  out->bind(cfg);
  return out;
}

// ---------------------------------------------------------------- clauses

namespace {

struct Step {
  Tri status = Tri::Unknown;
  CodeP value;
};

Step run(const CodeP& c, const Config& cfg) {
  Outcome o = pca::eval(c, cfg.eval.budget, cfg.eval.oracles);
  if (o.ok()) return {Tri::True, o.value};
  return {o.undefined() ? Tri::False : Tri::Unknown, nullptr};
}

Tri truncate(Tri t, const Config& cfg) {
  if (t == Tri::True && cfg.eval.policy == h::Truncation::Flag) return Tri::Unknown;
  return t;
}

CodeP applied(const Canonical& c, const h::Env& env) {
  CodeP code = c.code;
  for (auto& x : c.params) {
    auto it = env.find(x);
    if (it == env.end()) throw unsupported("no value for free variable " + x);
    code = pca::app(code, it->second.code);
  }
  return code;
}

// Realizers tried for an implication hypothesis.
std::vector<CodeP> hypothesis_pool(const h::FormulaP& a, const h::Env& env, const Config& cfg,
                                   std::shared_ptr<Canonical>& keep) {
  std::vector<CodeP> pool;
  for (Nat i = 0; i <= cfg.pool_bound; ++i) pool.push_back(pca::num(i));
  keep = canonical_realizer(a, cfg.eval);
  pca::OracleBindings merged = keep->bindings;
  if (cfg.eval.oracles)
    for (auto& [k, v] : *cfg.eval.oracles) merged.emplace(k, v);
  Outcome o = pca::eval(applied(*keep, env), cfg.eval.budget, &merged);
  if (o.ok() && std::none_of(pool.begin(), pool.end(), [&](const CodeP& c) { return pca::equal(c, o.value); }))
    pool.push_back(o.value);
  return pool;
}

}  // namespace

Tri realizes(const CodeP& z, const CodeP& z2, const h::FormulaP& a, const h::Env& env, const Config& cfg) {
  switch (a->kind) {
    case FK::Eq: return h::eval_bounded(a, env, cfg.eval);
    case FK::And: {
      Step l = run(pca::app(pca::vpr0(), z), cfg), l2 = run(pca::app(pca::vpr0(), z2), cfg);
      Step r = run(pca::app(pca::vpr1(), z), cfg), r2 = run(pca::app(pca::vpr1(), z2), cfg);
      Tri ok = tri_and(tri_and(l.status, l2.status), tri_and(r.status, r2.status));
      if (ok != Tri::True) return ok;
      Tri left = realizes(l.value, l2.value, a->l, env, cfg);
      if (left == Tri::False) return left;
      return tri_and(left, realizes(r.value, r2.value, a->r, env, cfg));
    }
    case FK::Imp: {
      std::shared_ptr<Canonical> keep;
      auto pool = hypothesis_pool(a->l, env, cfg, keep);
      Tri all = Tri::True;
      for (auto& x : pool)
        for (auto& x2 : pool) {
          Tri hyp = realizes(x, x2, a->l, env, cfg);
          if (hyp == Tri::False) continue;
          Step zx = run(pca::app(z, x), cfg), zx2 = run(pca::app(z2, x2), cfg);
          Tri con = tri_and(zx.status, zx2.status);
          if (con == Tri::True) con = realizes(zx.value, zx2.value, a->r, env, cfg);
          all = tri_and(all, tri_imp(hyp, con));
          if (all == Tri::False) return all;
        }
      return truncate(all, cfg);
    }
    case FK::Exists: {
      Step w = run(pca::app(pca::vpr0(), z), cfg), w2 = run(pca::app(pca::vpr0(), z2), cfg);
      Tri ok = tri_and(w.status, w2.status);
      if (ok != Tri::True) return ok;
      auto n = pca::as_num(w.value), n2 = pca::as_num(w2.value);
      if (!n || !n2 || *n != *n2) return Tri::False;
      if (a->range && *n > *a->range) return Tri::False;
      Step b = run(pca::app(pca::vpr1(), z), cfg), b2 = run(pca::app(pca::vpr1(), z2), cfg);
      ok = tri_and(b.status, b2.status);
      if (ok != Tri::True) return ok;
      h::Env inner = env;
      inner[a->name] = h::nat_value(*n);
      return realizes(b.value, b2.value, a->l, inner, cfg);
    }
    case FK::Forall: {
      Nat bound = a->range.value_or(cfg.eval.cutoff);
      Tri all = Tri::True;
      for (Nat n = 0; n <= bound; ++n) {
        Step s = run(pca::app(z, pca::num(n)), cfg), s2 = run(pca::app(z2, pca::num(n)), cfg);
        Tri step = tri_and(s.status, s2.status);
        if (step == Tri::True) {
          h::Env inner = env;
          inner[a->name] = h::nat_value(n);
          step = realizes(s.value, s2.value, a->l, inner, cfg);
        }
        all = tri_and(all, step);
        if (all == Tri::False) return all;
      }
      return a->range ? all : truncate(all, cfg);
    }
    default:
      throw unsupported("realizes: formula outside the desugared first-order fragment: " + h::show(a));
  }
}

// ---------------------------------------------------------------- harnesses

std::string to_string(Agreement a) {
  switch (a) {
    case Agreement::AgreeTrue: return "agree-true";
    case Agreement::AgreeFalse: return "agree-false";
    case Agreement::Disagree: return "disagree";
    default: return "unknown";
  }
}

Agreement combine(Tri model_side, Tri truth_side) {
  if (model_side == Tri::Unknown || truth_side == Tri::Unknown) return Agreement::Unknown;
  if (model_side != truth_side) return Agreement::Disagree;
  return model_side == Tri::True ? Agreement::AgreeTrue : Agreement::AgreeFalse;
}

Report check_relevant_soundness(const h::FormulaP& input, const h::Env& env, const Config& cfg) {
  require_first_order(input);
  h::FormulaP a = h::desugar_first_order(input);
  Report rep;
  auto canon = canonical_realizer(a, cfg.eval);
  rep.realizer = pca::show(canon->code);
  Config local = cfg;
  local.eval.oracles = &canon->bindings;
  rep.trace.push_back("r_A = " + rep.realizer);
  Outcome o = pca::eval(applied(*canon, env), cfg.eval.budget, &canon->bindings);
  rep.trace.push_back("r_A x = " + pca::show(o));
  if (o.ok()) {
    rep.model_side = realizes(o.value, o.value, a, env, local);
  } else {
    rep.model_side = o.undefined() ? Tri::False : Tri::Unknown;
  }
  for (auto& [name, oracle] : canon->oracles)
    for (auto& [arg, val] : oracle.memo)
      rep.trace.push_back(name + "(" + std::to_string(arg) + ") = " + (val ? std::to_string(*val) : "undefined"));
  h::EvalConfig truth = cfg.eval;
  truth.oracles = nullptr;
  rep.truth_side = h::eval_bounded(input, env, truth);
  rep.verdict = combine(rep.model_side, rep.truth_side);
  rep.detail = "realized=" + cwb::to_string(rep.model_side) + " eval=" + cwb::to_string(rep.truth_side);
  return rep;
}

namespace {

// x <= r spelled as exists d (x + d = r)
h::FormulaP unrange(const h::FormulaP& f) {
  switch (f->kind) {
    case FK::And: return h::and_(unrange(f->l), unrange(f->r));
    case FK::Or: return h::or_(unrange(f->l), unrange(f->r));
    case FK::Imp: return h::imp(unrange(f->l), unrange(f->r));
    case FK::Exists:
    case FK::Forall: {
      h::FormulaP body = unrange(f->l);
      if (!f->range) {
        return f->kind == FK::Exists ? h::exists(f->name, f->sort, body) : h::forall(f->name, f->sort, body);
      }
      std::string d = h::fresh("d", h::all_names(f));
      h::FormulaP bounded = h::exists(d, 0, h::eq(h::add(h::var(f->name), h::var(d)), h::numeral(*f->range)));
      if (f->kind == FK::Exists) return h::exists(f->name, 0, h::and_(bounded, body));
      return h::forall(f->name, 0, h::imp(bounded, body));
    }
    default: return f;
  }
}

}  // namespace

Report check_irrelevant_equiv(const h::FormulaP& a, const h::Env& env, const Config& cfg) {
  Report rep;
  model::World w = world_of(cfg.eval);
  h::FormulaP pure = unrange(a);
  kernel::TermP type;
  try {
    type = translate::translate(pure, translate::Mode::Irrelevant);
  } catch (const translate::unsupported& e) {
    throw unsupported(e.what());
  }
  kernel::Context ctx = translate::ctx_of(pure);
  rep.realizer = kernel::show(type, ctx.names());
  rep.trace.push_back("A* = " + rep.realizer);
  try {
    model::AssemblyP denoted = model::denote_type(ctx, point_of(pure, env, w), type, w);
    rep.trace.push_back("category = " + model::to_string(denoted->category));
    rep.model_side = denoted->inhabited();
  } catch (const model::unsupported& e) {
    throw unsupported(e.what());
  }
  h::EvalConfig truth = cfg.eval;
  truth.witness_slack = 0;
  // the model's Nat -> Prop ranges over every map on 0..nat_bound
  truth.set_base = w.nat_bound + 1;
  rep.truth_side = h::eval_bounded(a, env, truth);
  rep.verdict = combine(rep.model_side, rep.truth_side);
  rep.detail = "inhabited=" + cwb::to_string(rep.model_side) + " eval=" + cwb::to_string(rep.truth_side);
  return rep;
}

// ---------------------------------------------------------------- choice

ChoiceReport choice_instance(Nat n, const std::function<bool(Nat, Nat)>& z, const model::World& w) {
  using namespace model;
  ChoiceReport rep;
  rep.total = true;
  for (Nat x = 0; x < n; ++x) {
    bool some = false;
    for (Nat y = 0; y < n; ++y) some = some || z(x, y);
    rep.total = rep.total && some;
  }
  AssemblyP dom = fin(n, w);
  auto rel = [z, w](const ElemP& x, const ElemP& y) { return subsingleton(tri(z(x->n, y->n)), w); };
  AssemblyP premise = pi(dom, [dom, rel, w](const ElemP& x) {
    return sigma(dom, [rel, x](const ElemP& y) { return rel(x, y); }, w);
  }, w);
  AssemblyP functions = pi(dom, [dom](const ElemP&) { return dom; }, w);
  AssemblyP conclusion = sigma(functions, [dom, rel, w](const ElemP& f) {
    return pi(dom, [f, rel](const ElemP& x) { return rel(x, model::apply(f, x)); }, w);
  }, w);
  rep.hypotheses = premise->enumerate().size();

  SemMorphism m;
  m.dom = premise;
  m.cod = [conclusion](const ElemP&) { return conclusion; };
  m.map = [dom](const ElemP& hfun) {
    ElemP f = fun_elem(dom, [hfun](const ElemP& x) { return model::apply(hfun, x)->a; });
    ElemP proof = fun_elem(dom, [hfun](const ElemP& x) { return model::apply(hfun, x)->b; });
    return pair_elem(f, proof);
  };
  // lambda h. <lambda x. fst (h x), lambda x. snd (h x)>
  auto hv = pca::var("h"), xv = pca::var("x");
  m.tracker = pca::lambda(
      {"h"}, pca::ap({pca::vpair(), pca::lambda({"x"}, pca::app(pca::vpr0(), pca::app(hv, xv))),
                      pca::lambda({"x"}, pca::app(pca::vpr1(), pca::app(hv, xv)))}));
  if (auto t = find_tracker(m)) {
    rep.found = true;
    rep.tracker = pca::show(*t);
  }
  return rep;
}

}  // namespace cwb::realize
