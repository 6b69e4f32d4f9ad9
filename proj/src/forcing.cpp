#include "cwb/forcing.hpp"

#include <algorithm>
#include <memory>
#include <random>
#include <set>
#include <sstream>

namespace cwb::forcing {

namespace h = cwb::holog;
using FK = h::Formula::Kind;

// ---------------------------------------------------------------- conditions

ConditionSpace ConditionSpace::build(Nat domain, std::size_t max_size, const h::FormulaP& govern,
                                     const h::EvalConfig& cfg, std::size_t limit) {
  ConditionSpace s;
  s.domain = domain;
  s.max_size = max_size;
  s.govern = govern;
  std::vector<std::pair<Nat, Nat>> allowed;
  for (Nat x = 0; x < domain; ++x)
    for (Nat y = 0; y < domain; ++y) {
      h::Env env{{"x", h::nat_value(x)}, {"y", h::nat_value(y)}};
      Tri t = h::eval_bounded(govern, env, cfg);
      if (t == Tri::Unknown) throw forcing_error("governing formula undecided at <" + std::to_string(x) + "," + std::to_string(y) + ">");
      if (t == Tri::True) allowed.emplace_back(x, y);
    }
  // Breadth-first by size so that codes grow with the condition.
  std::vector<Condition> layer{{}};
  s.conditions.push_back({});
  for (std::size_t size = 1; size <= max_size; ++size) {
    std::vector<Condition> next;
    for (auto& c : layer)
      for (auto& p : allowed) {
        if (!c.empty() && p <= c.back()) continue;
        if (std::any_of(c.begin(), c.end(), [&](auto& q) { return q.first == p.first; })) continue;
        Condition d = c;
        d.push_back(p);
        next.push_back(d);
      }
    for (auto& c : next) s.conditions.push_back(c);
    if (s.conditions.size() > limit) throw resource_error("more than " + std::to_string(limit) + " conditions");
    layer = std::move(next);
  }
  return s;
}

bool ConditionSpace::extends(std::size_t sub, std::size_t super) const {
  const auto& a = conditions.at(sub);
  const auto& b = conditions.at(super);
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool ConditionSpace::member(Nat x, Nat y, std::size_t p) const {
  const auto& c = conditions.at(p);
  return std::binary_search(c.begin(), c.end(), std::make_pair(x, y));
}

std::string ConditionSpace::show(std::size_t p) const {
  std::ostringstream out;
  out << "{";
  const auto& c = conditions.at(p);
  for (std::size_t i = 0; i < c.size(); ++i) out << (i ? "," : "") << "<" << c[i].first << "," << c[i].second << ">";
  out << "}";
  return out.str();
}

Tri ConditionSpace::relation(const std::string& name, const std::vector<h::Value>& args) const {
  std::vector<Nat> ns;
  for (auto& v : args) {
    auto n = v.sort == 0 && v.code ? pca::as_num(v.code) : std::nullopt;
    if (!n) return Tri::False;
    ns.push_back(*n);
  }
  auto code_ok = [&](Nat c) { return c < conditions.size(); };
  if (name == kCond && ns.size() == 1) return tri(code_ok(ns[0]));
  if (name == kSub && ns.size() == 2) return tri(code_ok(ns[0]) && code_ok(ns[1]) && extends(ns[0], ns[1]));
  if (name == kMem && ns.size() == 3) return tri(code_ok(ns[2]) && member(ns[0], ns[1], ns[2]));
  throw forcing_error("uninterpreted relation " + name + "/" + std::to_string(ns.size()));
}

// ---------------------------------------------------------------- translation

namespace {

class Forcer {
 public:
  Forcer(const h::FormulaP& a, Nat max_code) : avoid_(h::all_names(a)), max_code_(max_code) {}

  void reserve(const std::string& name) { avoid_.insert(name); }

  h::FormulaP go(const std::string& p, const h::FormulaP& a) {
    switch (a->kind) {
      case FK::Eq:
      case FK::Elem:
      case FK::Defined:
      case FK::Bot:
      case FK::Top: return a;
      case FK::Rel: {
        if (a->name != kRelation)
          throw forcing_error("relation symbol " + a->name + " is not the forced relation");
        if (a->args.size() != 2) throw forcing_error("R must be binary");
        return every(p, [&](const std::string& p1) {
          return some(p1, [&](const std::string& p2) {
            return h::rel(kMem, {a->args[0], a->args[1], h::var(p2)});
          });
        });
      }
      case FK::Or:
        return every(p, [&](const std::string& p1) {
          return some(p1, [&](const std::string& p2) { return h::or_(go(p2, a->l), go(p2, a->r)); });
        });
      case FK::And: return h::and_(go(p, a->l), go(p, a->r));
      case FK::Imp:
        return every(p, [&](const std::string& p1) { return h::imp(go(p1, a->l), go(p1, a->r)); });
      case FK::Exists:
        return every(p, [&](const std::string& p1) {
          return some(p1, [&](const std::string& p2) {
            return h::exists(a->name, a->sort, go(p2, a->l), a->range);
          });
        });
      case FK::Forall:
        return every(p, [&](const std::string& p1) {
          return h::forall(a->name, a->sort, go(p1, a->l), a->range);
        });
    }
    throw forcing_error("unknown formula");
  }

 private:
  std::set<std::string> avoid_;
  Nat max_code_;

  std::string fresh_condition() {
    std::string name = h::fresh("P", avoid_);
    avoid_.insert(name);
    return name;
  }

  h::FormulaP guard(const std::string& from, const std::string& to) {
    return h::and_(h::rel(kCond, {h::var(to)}), h::rel(kSub, {h::var(from), h::var(to)}));
  }

  // forall (P' >= P) body
  template <class F>
  h::FormulaP every(const std::string& p, F body) {
    std::string q = fresh_condition();
    return h::forall(q, 0, h::imp(guard(p, q), body(q)), max_code_);
  }

  // exists (P'' >= P') body
  template <class F>
  h::FormulaP some(const std::string& p, F body) {
    std::string q = fresh_condition();
    return h::exists(q, 0, h::and_(guard(p, q), body(q)), max_code_);
  }
};

bool mentions_relation(const h::FormulaP& f) {
  if (!f) return false;
  if (f->kind == FK::Rel && f->name == kRelation) return true;
  return mentions_relation(f->l) || mentions_relation(f->r);
}

void reject_guards(const h::FormulaP& f) {
  if (!f) return;
  if (f->kind == FK::Rel && (f->name == kCond || f->name == kSub || f->name == kMem))
    throw forcing_error("relation symbol " + f->name + " is reserved for condition guards");
  reject_guards(f->l);
  reject_guards(f->r);
}

}  // namespace

h::FormulaP force(const std::string& p, const h::FormulaP& a, Nat max_code) {
  reject_guards(a);
  Forcer f(a, max_code);
  f.reserve(p);
  return f.go(p, a);
}

h::EvalConfig forcing_config(const ConditionSpace& space, const h::EvalConfig& base) {
  if (space.domain == 0) throw forcing_error("empty domain");
  h::EvalConfig cfg = base;
  cfg.cutoff = space.domain - 1;
  cfg.witness_slack = 0;
  cfg.set_base = space.domain;
  cfg.policy = h::Truncation::Exact;
  auto shared = std::make_shared<ConditionSpace>(space);
  cfg.rel = [shared](const std::string& name, const std::vector<h::Value>& args) {
    return shared->relation(name, args);
  };
  return cfg;
}

// ---------------------------------------------------------------- meta-lemmas

LemmaReport check_meta_lemmas(const h::FormulaP& a, const ConditionSpace& space, const h::EvalConfig& base) {
  LemmaReport rep;
  rep.conditions = space.conditions.size();
  rep.base_applicable = !mentions_relation(a);
  h::EvalConfig cfg = forcing_config(space, base);
  auto names = h::all_names(a);
  std::string p = h::fresh("P", names);
  h::FormulaP forced = force(p, a, space.conditions.size() - 1);

  auto vars = h::free_vars(a);
  for (auto& [x, sort] : vars)
    if (sort != 0) throw forcing_error("free variable " + x + " of higher sort");
  std::size_t assignments = 1;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    assignments *= space.domain;
    if (assignments > 100000) throw resource_error("too many assignments of free variables");
  }
  const std::size_t n = space.conditions.size();
  for (std::size_t code = 0; code < assignments && !rep.counterexample; ++code) {
    h::Env env;
    std::string where;
    std::size_t rest = code;
    for (auto& [x, sort] : vars) {
      Nat v = rest % space.domain;
      rest /= space.domain;
      env[x] = h::nat_value(v);
      where += " " + x + "=" + std::to_string(v);
    }
    std::vector<Tri> table(n);
    for (std::size_t c = 0; c < n; ++c) {
      h::Env e = env;
      e[p] = h::nat_value(c);
      table[c] = h::eval_bounded(forced, e, cfg);
      rep.unknown = rep.unknown || table[c] == Tri::Unknown;
    }
    auto fail = [&](const std::string& lemma, const std::string& what) {
      rep.counterexample = lemma + ":" + where + " " + what;
    };
    for (std::size_t c = 0; c < n && !rep.counterexample; ++c) {
      // monotonicity
      for (std::size_t d = 0; d < n && !rep.counterexample; ++d) {
        if (!space.extends(c, d)) continue;
        ++rep.checks;
        if (tri_imp(table[c], table[d]) == Tri::False)
          fail("monotonicity", "P=" + space.show(c) + " P'=" + space.show(d));
      }
      // density
      Tri dense = Tri::True;
      for (std::size_t d = 0; d < n; ++d) {
        if (!space.extends(c, d)) continue;
        Tri some = Tri::False;
        for (std::size_t e = 0; e < n; ++e)
          if (space.extends(d, e)) some = tri_or(some, table[e]);
        dense = tri_and(dense, some);
      }
      ++rep.checks;
      if (tri_imp(dense, table[c]) == Tri::False) fail("density", "P=" + space.show(c));
      // base formula
      if (rep.base_applicable && !rep.counterexample) {
        ++rep.checks;
        Tri truth = h::eval_bounded(a, env, cfg);
        if (tri_iff(table[c], truth) == Tri::False) fail("base", "P=" + space.show(c));
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------- suite

namespace {

struct Gen {
  std::mt19937 rng;
  Nat domain;

  std::size_t pick(std::size_t n) { return rng() % n; }

  h::TermP term(const std::vector<std::string>& bound) {
    if (!bound.empty() && pick(2) == 0) return h::var(bound[pick(bound.size())]);
    return h::numeral(pick(domain));
  }

  h::FormulaP atom(const std::vector<std::string>& bound) {
    switch (pick(5)) {
      case 0:
      case 1:
      case 2: return h::rel(kRelation, {term(bound), term(bound)});
      case 3: return h::eq(term(bound), term(bound));
      default: return pick(2) ? h::top() : h::bot();
    }
  }

  h::FormulaP formula(int depth, std::vector<std::string>& bound) {
    if (depth == 0 || pick(4) == 0) return atom(bound);
    switch (pick(6)) {
      case 0: return h::and_(formula(depth - 1, bound), formula(depth - 1, bound));
      case 1: return h::or_(formula(depth - 1, bound), formula(depth - 1, bound));
      case 2: return h::imp(formula(depth - 1, bound), formula(depth - 1, bound));
      case 3: return h::neg(formula(depth - 1, bound));
      default: {
        static const char* names[] = {"x", "y", "z", "u"};
        std::string x = names[bound.size() % 4];
        bound.push_back(x);
        h::FormulaP body = formula(depth - 1, bound);
        bound.pop_back();
        return pick(2) ? h::exists(x, 0, body) : h::forall(x, 0, body);
      }
    }
  }
};

}  // namespace

std::vector<h::FormulaP> generate_suite(std::size_t count, Nat domain, std::uint32_t seed) {
  std::vector<h::FormulaP> out;
  auto r = [](Nat a, Nat b) { return h::rel(kRelation, {h::numeral(a), h::numeral(b)}); };
  out.push_back(r(0, 1));
  out.push_back(h::eq(h::zero(), h::zero()));
  out.push_back(h::or_(r(0, 0), h::neg(r(0, 0))));
  Gen gen{std::mt19937(seed), std::max<Nat>(domain, 1)};
  std::set<std::string> seen;
  for (auto& f : out) seen.insert(h::alpha_key(f));
  std::size_t attempts = 0;
  while (out.size() < count && attempts++ < count * 100) {
    std::vector<std::string> bound;
    h::FormulaP f = gen.formula(3, bound);
    if (seen.insert(h::alpha_key(f)).second) out.push_back(f);
  }
  return out;
}

// ---------------------------------------------------------------- epsilon merging

h::FormulaP pair_eq(const h::TermP& z, const h::TermP& a, const h::TermP& b) {
  auto s = h::add(a, b);
  return h::eq(h::add(z, z), h::add(h::mul(s, h::succ(s)), h::add(b, b)));
}

Merged merge_epsilons(const std::vector<h::FormulaP>& bodies, const std::string& y) {
  if (bodies.empty()) throw forcing_error("merge_epsilons: no bodies");
  std::set<std::string> avoid{y};
  for (auto& b : bodies) {
    if (!h::first_order(b)) throw forcing_error("merge_epsilons: body is not first-order");
    auto names = h::all_names(b);
    avoid.insert(names.begin(), names.end());
  }
  Merged m;
  m.y = y;
  m.z = h::fresh("z", avoid);
  avoid.insert(m.z);
  h::FormulaP conj;
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    std::vector<std::string> params;
    for (auto& [x, sort] : h::free_vars(bodies[i]))
      if (x != y) params.push_back(x);
    m.params.push_back(params);
    // z = <i, x0, ..., xk> through intermediate codes w1, ...
    std::vector<h::TermP> parts{h::numeral(i)};
    for (auto& x : params) parts.push_back(h::var(x));
    std::vector<std::string> inter;
    h::FormulaP chain;
    h::TermP cur = h::var(m.z);
    for (std::size_t j = 0; j + 1 < parts.size(); ++j) {
      h::TermP rest;
      if (j + 2 == parts.size()) {
        rest = parts.back();
      } else {
        std::string w = h::fresh("w", avoid);
        avoid.insert(w);
        inter.push_back(w);
        rest = h::var(w);
      }
      h::FormulaP link = pair_eq(cur, parts[j], rest);
      chain = chain ? h::and_(chain, link) : link;
      cur = rest;
    }
    if (!chain) chain = h::eq(h::var(m.z), parts[0]);
    h::FormulaP clause = h::imp(chain, bodies[i]);
    for (std::size_t j = inter.size(); j-- > 0;) clause = h::forall(inter[j], 0, clause);
    for (std::size_t j = params.size(); j-- > 0;) clause = h::forall(params[j], 0, clause);
    conj = conj ? h::and_(conj, clause) : clause;
  }
  m.body = conj;
  return m;
}

}  // namespace cwb::forcing
