#include "cwb/model.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace cwb::model {

using pca::Outcome;

// ---------------------------------------------------------------- elements

namespace {

std::shared_ptr<Elem> make(Elem::Kind k) {
  auto e = std::make_shared<Elem>();
  e->kind = k;
  return e;
}

int cmp_nat(Nat x, Nat y) { return x < y ? -1 : (x > y ? 1 : 0); }

std::vector<std::pair<ElemP, ElemP>> graph_of(const ElemP& f) {
  if (!f->graph.empty() || !f->dom) return f->graph;
  std::vector<std::pair<ElemP, ElemP>> g;
  for (auto& x : f->dom->enumerate()) g.emplace_back(x, f->fn(x));
  return g;
}

}  // namespace

ElemP nat_elem(Nat n) {
  auto e = make(Elem::Kind::Nat);
  e->n = n;
  return e;
}

ElemP set_elem(std::vector<ElemP> items) {
  std::sort(items.begin(), items.end(), ElemLess{});
  items.erase(std::unique(items.begin(), items.end(),
                          [](const ElemP& x, const ElemP& y) { return compare(x, y) == 0; }),
              items.end());
  auto e = make(Elem::Kind::Set);
  e->items = std::move(items);
  return e;
}

ElemP class_elem(Nat rep, const std::string& tag) {
  auto e = make(Elem::Kind::Class);
  e->n = rep;
  e->tag = tag;
  return e;
}

ElemP star() {
  static const ElemP s = class_elem(0, "subsing");
  return s;
}

ElemP pair_elem(ElemP a, ElemP b) {
  auto e = make(Elem::Kind::Pair);
  e->a = std::move(a);
  e->b = std::move(b);
  return e;
}

ElemP fun_elem(AssemblyP dom, std::function<ElemP(const ElemP&)> fn) {
  auto e = make(Elem::Kind::Fun);
  e->dom = std::move(dom);
  e->fn = std::move(fn);
  return e;
}

namespace {

ElemP fun_table(AssemblyP dom, std::vector<std::pair<ElemP, ElemP>> graph) {
  auto e = make(Elem::Kind::Fun);
  e->dom = std::move(dom);
  std::sort(graph.begin(), graph.end(),
            [](auto& x, auto& y) { return compare(x.first, y.first) < 0; });
  e->graph = graph;
  e->fn = [graph](const ElemP& x) -> ElemP {
    for (auto& [k, v] : graph)
      if (compare(k, x) == 0) return v;
    throw unsupported("function applied outside its domain: " + show(x));
  };
  return e;
}

}  // namespace

ElemP tree_elem(ElemP label, std::vector<std::pair<ElemP, ElemP>> children) {
  auto e = make(Elem::Kind::Tree);
  e->a = std::move(label);
  std::sort(children.begin(), children.end(),
            [](auto& x, auto& y) { return compare(x.first, y.first) < 0; });
  e->graph = std::move(children);
  return e;
}

ElemP type_elem(AssemblyP type) {
  auto e = make(Elem::Kind::Type);
  e->type = std::move(type);
  return e;
}

int compare(const ElemP& x, const ElemP& y) {
  if (x == y) return 0;
  if (x->kind != y->kind) return x->kind < y->kind ? -1 : 1;
  switch (x->kind) {
    case Elem::Kind::Nat: return cmp_nat(x->n, y->n);
    case Elem::Kind::Class:
      if (x->tag != y->tag) return x->tag < y->tag ? -1 : 1;
      return cmp_nat(x->n, y->n);
    case Elem::Kind::Set: {
      for (std::size_t i = 0; i < x->items.size() && i < y->items.size(); ++i)
        if (int c = compare(x->items[i], y->items[i])) return c;
      return cmp_nat(x->items.size(), y->items.size());
    }
    case Elem::Kind::Pair:
      if (int c = compare(x->a, y->a)) return c;
      return compare(x->b, y->b);
    case Elem::Kind::Tree: {
      if (int c = compare(x->a, y->a)) return c;
      for (std::size_t i = 0; i < x->graph.size() && i < y->graph.size(); ++i) {
        if (int c = compare(x->graph[i].first, y->graph[i].first)) return c;
        if (int c = compare(x->graph[i].second, y->graph[i].second)) return c;
      }
      return cmp_nat(x->graph.size(), y->graph.size());
    }
    case Elem::Kind::Fun: {
      auto gx = graph_of(x), gy = graph_of(y);
      for (std::size_t i = 0; i < gx.size() && i < gy.size(); ++i) {
        if (int c = compare(gx[i].first, gy[i].first)) return c;
        if (int c = compare(gx[i].second, gy[i].second)) return c;
      }
      return cmp_nat(gx.size(), gy.size());
    }
    case Elem::Kind::Type: {
      // Subsingletons are identified by inhabitation.
      auto cx = x->type->category, cy = y->type->category;
      if (cx == Category::Subsing && cy == Category::Subsing) {
        Tri ix = x->type->inhabited(), iy = y->type->inhabited();
        if (ix != Tri::Unknown && iy != Tri::Unknown) return cmp_nat(ix == Tri::True, iy == Tri::True);
      }
      auto px = x->type.get(), py = y->type.get();
      return px < py ? -1 : (px > py ? 1 : 0);
    }
  }
  return 0;
}

Tri equal(const ElemP& x, const ElemP& y) {
  if (x == y) return Tri::True;
  if (x->kind != y->kind) return Tri::False;
  switch (x->kind) {
    case Elem::Kind::Pair: return tri_and(equal(x->a, y->a), equal(x->b, y->b));
    case Elem::Kind::Fun: {
      auto dom = x->dom ? x->dom : y->dom;
      if (!dom) return tri(compare(x, y) == 0);
      Tri all = Tri::True;
      for (auto& d : dom->enumerate()) {
        all = tri_and(all, equal(model::apply(x, d), model::apply(y, d)));
        if (all == Tri::False) return all;
      }
      return all;
    }
    case Elem::Kind::Tree: {
      Tri all = equal(x->a, y->a);
      if (x->graph.size() != y->graph.size()) return Tri::False;
      for (std::size_t i = 0; i < x->graph.size() && all != Tri::False; ++i)
        all = tri_and(all, tri_and(equal(x->graph[i].first, y->graph[i].first),
                                   equal(x->graph[i].second, y->graph[i].second)));
      return all;
    }
    case Elem::Kind::Type: {
      auto cx = x->type->category, cy = y->type->category;
      if (cx == Category::Subsing && cy == Category::Subsing)
        return tri_iff(x->type->inhabited(), y->type->inhabited());
      return x->type == y->type ? Tri::True : Tri::Unknown;
    }
    default: return tri(compare(x, y) == 0);
  }
}

ElemP apply(const ElemP& f, const ElemP& x) {
  if (f->kind != Elem::Kind::Fun) throw unsupported("application of a non-function " + show(f));
  return f->fn(x);
}

std::string show(const ElemP& e) {
  std::ostringstream out;
  switch (e->kind) {
    case Elem::Kind::Nat: out << e->n; break;
    case Elem::Kind::Class:
      if (e->tag == "subsing") out << "*";
      else out << "[" << e->n << "]";
      break;
    case Elem::Kind::Set: {
      out << "{";
      for (std::size_t i = 0; i < e->items.size(); ++i) out << (i ? "," : "") << show(e->items[i]);
      out << "}";
      break;
    }
    case Elem::Kind::Pair: out << "<" << show(e->a) << "," << show(e->b) << ">"; break;
    case Elem::Kind::Tree: {
      out << "tree(" << show(e->a);
      for (auto& [b, t] : e->graph) out << "; " << show(b) << "->" << show(t);
      out << ")";
      break;
    }
    case Elem::Kind::Fun: {
      if (e->dom && e->dom->complete && e->dom->enumerate().size() <= 8) {
        out << "fun{";
        bool first = true;
        for (auto& [k, v] : graph_of(e)) {
          out << (first ? "" : ",") << show(k) << "->" << show(v);
          first = false;
        }
        out << "}";
      } else {
        out << "fun";
      }
      break;
    }
    case Elem::Kind::Type: out << "type(" << e->type->name << ")"; break;
  }
  return out.str();
}

// ---------------------------------------------------------------- hierarchy

bool at_level(const ElemP& x, int n) {
  if (x->kind == Elem::Kind::Nat) return n == 0;
  if (x->kind != Elem::Kind::Set || n < 1) return false;
  return std::all_of(x->items.begin(), x->items.end(),
                     [n](const ElemP& y) { return at_level(y, n - 1); });
}

ElemP iota(int n, const ElemP& x) {
  if (!at_level(x, n)) throw unsupported("iota: element not at level " + std::to_string(n));
  if (n == 0) return set_elem({x});
  std::vector<ElemP> out;
  for (auto& y : x->items) out.push_back(iota(n - 1, y));
  return set_elem(std::move(out));
}

ElemP lift(const ElemP& x, int from, int to) {
  ElemP cur = x;
  for (int n = from; n < to; ++n) cur = iota(n, cur);
  return cur;
}

ElemP set_pair(int n, const ElemP& a, const ElemP& b) {
  if (n == 0) {
    if (a->kind != Elem::Kind::Nat || b->kind != Elem::Kind::Nat)
      throw unsupported("set_pair: level 0 needs naturals");
    return nat_elem(pca::pair(a->n, b->n));
  }
  if (!at_level(a, n) || !at_level(b, n)) throw unsupported("set_pair: operands not at level");
  std::vector<ElemP> out;
  ElemP left = lift(nat_elem(0), 0, n - 1), right = lift(nat_elem(1), 0, n - 1);
  for (auto& x : a->items) out.push_back(set_pair(n - 1, left, x));
  for (auto& y : b->items) out.push_back(set_pair(n - 1, right, y));
  return set_elem(std::move(out));
}

namespace {

bool bounded_by(const ElemP& x, Nat base) {
  if (x->kind == Elem::Kind::Nat) return x->n < base;
  return std::all_of(x->items.begin(), x->items.end(),
                     [base](const ElemP& y) { return bounded_by(y, base); });
}

std::vector<ElemP> subsets(const std::vector<ElemP>& xs) {
  if (xs.size() > 16) throw resource_error("power set of more than 16 elements");
  std::vector<ElemP> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << xs.size()); ++mask) {
    std::vector<ElemP> items;
    for (std::size_t i = 0; i < xs.size(); ++i)
      if (mask >> i & 1) items.push_back(xs[i]);
    out.push_back(set_elem(std::move(items)));
  }
  return out;
}

}  // namespace

SemSet power_set(int n, Nat base) {
  SemSet s;
  s.level = n;
  s.member = [n, base](const ElemP& x) { return tri(at_level(x, n) && bounded_by(x, base)); };
  s.enumerate = [n, base]() {
    std::vector<ElemP> cur;
    for (Nat i = 0; i < base; ++i) cur.push_back(nat_elem(i));
    for (int k = 0; k < n; ++k) cur = subsets(cur);
    return cur;
  };
  return s;
}

// ---------------------------------------------------------------- PERs

std::vector<Nat> Per::dom() const {
  std::vector<Nat> out;
  for (Nat m = 0; m < sample; ++m)
    if (relation(m, m) == Tri::True) out.push_back(m);
  return out;
}

std::vector<Nat> Per::class_of(Nat n) const {
  std::vector<Nat> out;
  for (Nat m = 0; m < sample; ++m)
    if (relation(n, m) == Tri::True) out.push_back(m);
  return out;
}

std::vector<std::vector<Nat>> Per::quotient() const {
  std::vector<std::vector<Nat>> out;
  std::set<Nat> seen;
  for (Nat m : dom()) {
    if (seen.count(m)) continue;
    auto c = class_of(m);
    seen.insert(c.begin(), c.end());
    out.push_back(std::move(c));
  }
  return out;
}

std::optional<Nat> Per::representative(Nat n) const {
  if (relation(n, n) != Tri::True) return std::nullopt;
  for (Nat m = 0; m < sample && m <= n; ++m)
    if (relation(m, n) == Tri::True) return m;
  return n;
}

Per Per::fin(Nat n) {
  return {"fin" + std::to_string(n), [n](Nat i, Nat j) { return tri(i == j && i < n); }, n, true};
}

Per Per::nat(Nat sample) {
  return {"nat", [](Nat i, Nat j) { return tri(i == j); }, sample, false};
}

Per Per::parity(Nat sample) {
  return {"parity", [](Nat i, Nat j) { return tri(i % 2 == j % 2); }, std::max<Nat>(sample, 2), true};
}

Per Per::total(Tri inhabited, Nat sample) {
  return {"subsing", [inhabited](Nat, Nat) { return inhabited; }, sample, inhabited != Tri::Unknown};
}

// ---------------------------------------------------------------- assemblies

std::string to_string(Category c) {
  switch (c) {
    case Category::Subsing: return "subsingleton";
    case Category::Per: return "per";
    default: return "assembly";
  }
}

const std::vector<ElemP>& Assembly::enumerate() const {
  std::call_once(once_, [this] {
    if (list) cache_ = list();
  });
  return cache_;
}

Tri Assembly::inhabited() const {
  if (inhabited_fn) return inhabited_fn();
  if (!enumerate().empty()) return Tri::True;
  return complete ? Tri::False : Tri::Unknown;
}

namespace {

using Mutable = std::shared_ptr<Assembly>;

Mutable fresh_assembly(const World& w) {
  auto a = std::make_shared<Assembly>();
  a->world = w;
  return a;
}

// Outcome of a realizer computation as a three-valued definedness.
Tri defined(const Outcome& o) {
  if (o.ok()) return Tri::True;
  return o.undefined() ? Tri::False : Tri::Unknown;
}

Outcome run(const CodeP& f, const CodeP& a, Nat budget) { return pca::apply(f, a, budget); }

std::optional<Nat> numeral_of(const CodeP& c) { return pca::as_num(c); }


// Memoised family lookup shared by the constructions.
Family memoize(Family fam) {
  struct State {
    std::mutex mu;
    std::map<ElemP, AssemblyP, ElemLess> cache;
  };
  auto st = std::make_shared<State>();
  return [fam, st](const ElemP& x) {
    {
      std::lock_guard lock(st->mu);
      auto it = st->cache.find(x);
      if (it != st->cache.end()) return it->second;
    }
    AssemblyP out = fam(x);
    std::lock_guard lock(st->mu);
    st->cache.emplace(x, out);
    return out;
  };
}

// Per-element memo of found realizers.
struct RealizerCache {
  std::mutex mu;
  std::map<ElemP, std::optional<CodeP>, ElemLess> cache;

  template <class F>
  std::optional<CodeP> get(const ElemP& e, F compute) {
    {
      std::lock_guard lock(mu);
      auto it = cache.find(e);
      if (it != cache.end()) return it->second;
    }
    auto r = compute();
    std::lock_guard lock(mu);
    cache.emplace(e, r);
    return r;
  }
};

Category join(Category x, Category y) { return std::max(x, y); }

void guard(std::size_t n, const World& w, const std::string& what) {
  if (n > w.max_elements) throw resource_error(what + ": more than " + std::to_string(w.max_elements) + " elements");
}

}  // namespace

CodeP normal(const CodeP& c, Nat budget) {
  Outcome o = pca::eval(c, budget);
  if (!o.ok()) throw resource_error("realizer has no value: " + pca::show(c) + " (" + pca::show(o) + ")");
  return o.value;
}

AssemblyP per_assembly(const Per& r, const World& w) {
  auto a = fresh_assembly(w);
  a->level = 1;
  a->category = r.name == "subsing" ? Category::Subsing : Category::Per;
  a->name = r.name;
  a->complete = r.classes_exhaustive;
  a->member = [r](const ElemP& e) {
    if (e->kind != Elem::Kind::Class || e->tag != r.name) return Tri::False;
    return r.relation(e->n, e->n);
  };
  a->list = [r]() {
    std::vector<ElemP> out;
    for (auto& c : r.quotient()) out.push_back(class_elem(c.front(), r.name));
    return out;
  };
  a->realizes = [r](const CodeP& code, const ElemP& e) {
    auto m = numeral_of(code);
    if (!m || e->kind != Elem::Kind::Class) return Tri::False;
    return r.relation(*m, e->n);
  };
  a->find_realizer = [r](const ElemP& e) -> std::optional<CodeP> {
    if (e->kind != Elem::Kind::Class || r.relation(e->n, e->n) != Tri::True) return std::nullopt;
    return pca::num(e->n);
  };
  a->samples = [r](const ElemP& e) {
    std::vector<CodeP> out;
    if (e->kind != Elem::Kind::Class) return out;
    for (Nat m : r.class_of(e->n)) out.push_back(pca::num(m));
    if (out.empty() && r.relation(e->n, e->n) == Tri::True) out.push_back(pca::num(e->n));
    return out;
  };
  a->key = pca::I();
  if (a->category == Category::Subsing) {
    Tri inh = r.relation(0, 0);
    a->inhabited_fn = [inh] { return inh; };
  }
  return a;
}

AssemblyP fin(Nat n, const World& w) { return per_assembly(Per::fin(n), w); }
AssemblyP nat(const World& w) { return per_assembly(Per::nat(w.nat_bound + 1), w); }
AssemblyP subsingleton(Tri inhabited, const World& w) { return per_assembly(Per::total(inhabited), w); }

AssemblyP embed_per_to_assembly(const Per& r, const World& w) { return per_assembly(r, w); }

Per embed_subsing_to_per(const AssemblyP& s) { return Per::total(s->inhabited()); }

namespace {

void total_realizability(Mutable& a) {
  a->realizes = [](const CodeP&, const ElemP&) { return Tri::True; };
  a->find_realizer = [](const ElemP&) -> std::optional<CodeP> { return pca::num(0); };
  a->samples = [](const ElemP&) {
    return std::vector<CodeP>{pca::num(0), pca::num(1), pca::K(), pca::I()};
  };
}

}  // namespace

AssemblyP nabla(const SemSet& s, const World& w) {
  auto a = fresh_assembly(w);
  a->level = s.level;
  a->name = "nabla";
  a->member = s.member;
  a->list = s.enumerate;
  a->complete = static_cast<bool>(s.enumerate);
  total_realizability(a);
  if (s.enumerate && s.enumerate().size() <= 1) a->key = pca::app(pca::K(), pca::num(0));
  return a;
}

AssemblyP nabla_subsing(const World& w) {
  auto a = fresh_assembly(w);
  a->level = 1;
  a->name = "Subsing";
  a->member = [](const ElemP& e) {
    return tri(e->kind == Elem::Kind::Type && e->type->category == Category::Subsing);
  };
  a->list = [w]() {
    return std::vector<ElemP>{type_elem(subsingleton(Tri::False, w)), type_elem(subsingleton(Tri::True, w))};
  };
  total_realizability(a);
  return a;
}

AssemblyP nabla_per(const World& w) {
  auto a = fresh_assembly(w);
  a->level = 1;
  a->name = "PER";
  a->complete = false;
  a->member = [](const ElemP& e) {
    return tri(e->kind == Elem::Kind::Type && e->type->category != Category::Assem);
  };
  a->list = [w]() {
    std::vector<ElemP> out;
    for (Nat n = 0; n < 4; ++n) out.push_back(type_elem(fin(n, w)));
    out.push_back(type_elem(nat(w)));
    return out;
  };
  total_realizability(a);
  return a;
}

// ---------------------------------------------------------------- Sigma

AssemblyP sigma(AssemblyP dom, Family fam_in, const World& w) {
  Family fam = memoize(fam_in);
  auto a = fresh_assembly(w);
  const auto& ds = dom->enumerate();
  AssemblyP first = ds.empty() ? nullptr : fam(ds.front());
  a->level = std::max(dom->level, first ? first->level : dom->level);
  a->category = join(dom->category, first ? first->category : Category::Subsing);
  a->name = "Sigma(" + dom->name + ")";
  a->complete = dom->complete && (!first || first->complete);
  a->member = [dom, fam](const ElemP& e) {
    if (e->kind != Elem::Kind::Pair) return Tri::False;
    Tri in_a = dom->member(e->a);
    if (in_a == Tri::False) return in_a;
    return tri_and(in_a, fam(e->a)->member(e->b));
  };
  a->list = [dom, fam, w]() {
    std::vector<ElemP> out;
    for (auto& x : dom->enumerate()) {
      AssemblyP fiber = fam(x);
      for (auto& y : fiber->enumerate()) {
        out.push_back(pair_elem(x, y));
        guard(out.size(), w, "sigma");
      }
    }
    return out;
  };
  a->realizes = [dom, fam, w](const CodeP& p, const ElemP& e) {
    if (e->kind != Elem::Kind::Pair) return Tri::False;
    Outcome first = run(pca::vpr0(), p, w.budget), second = run(pca::vpr1(), p, w.budget);
    Tri ok = tri_and(defined(first), defined(second));
    if (ok != Tri::True) return ok;
    return tri_and(dom->realizes(first.value, e->a), fam(e->a)->realizes(second.value, e->b));
  };
  a->find_realizer = [dom, fam, w](const ElemP& e) -> std::optional<CodeP> {
    if (e->kind != Elem::Kind::Pair) return std::nullopt;
    auto ra = dom->find_realizer(e->a);
    auto rb = ra ? fam(e->a)->find_realizer(e->b) : std::nullopt;
    if (!rb) return std::nullopt;
    return normal(pca::ap({pca::vpair(), *ra, *rb}), w.budget);
  };
  a->samples = [dom, fam, w](const ElemP& e) {
    std::vector<CodeP> out;
    if (e->kind != Elem::Kind::Pair) return out;
    for (auto& ra : dom->samples(e->a))
      for (auto& rb : fam(e->a)->samples(e->b)) {
        if (out.size() >= 16) return out;
        out.push_back(normal(pca::ap({pca::vpair(), ra, rb}), w.budget));
      }
    return out;
  };
  if (dom->key && first && first->key) {
    auto p = pca::var("p");
    a->key = pca::abstract(
        "p", pca::ap({pca::npair(), pca::app(*dom->key, pca::app(pca::vpr0(), p)),
                      pca::app(*first->key, pca::app(pca::vpr1(), p))}));
  }
  a->inhabited_fn = [dom, fam]() {
    Tri any = Tri::False;
    for (auto& x : dom->enumerate()) {
      any = tri_or(any, fam(x)->inhabited());
      if (any == Tri::True) return any;
    }
    if (any == Tri::False && !dom->complete) return Tri::False;  // bounded world
    return any;
  };
  return a;
}

// ---------------------------------------------------------------- trackers

Tri tracks(const SemMorphism& m, const CodeP& tracker) {
  const World& w = m.dom->world;
  Tri all = Tri::True;
  for (auto& x : m.dom->enumerate()) {
    ElemP target = m.map(x);
    AssemblyP cod = m.cod(x);
    for (auto& r : m.dom->samples(x)) {
      Outcome o = run(tracker, r, w.budget);
      Tri step = defined(o);
      if (step == Tri::True) step = cod->realizes(o.value, target);
      all = tri_and(all, step);
      if (all == Tri::False) return all;
    }
  }
  return all;
}

CodeP table_code(const CodeP& key, const std::vector<std::pair<Nat, CodeP>>& entries,
                 const CodeP& fallback) {
  auto v = pca::var("v");
  CodeP chain = fallback;
  for (auto it = entries.rbegin(); it != entries.rend(); ++it)
    chain = pca::ap({pca::cond(), pca::ap({pca::eqnum(), v, pca::num(it->first)}), it->second, chain});
  CodeP select = pca::abstract("v", chain);
  return pca::abstract("x", pca::app(select, pca::app(key, pca::var("x"))));
}

std::vector<CodeP> small_codes(std::size_t leaves) {
  std::vector<std::vector<CodeP>> by_size(leaves + 1);
  if (leaves == 0) return {};
  by_size[1] = {pca::K(), pca::S(), pca::I(), pca::Suc(), pca::num(0), pca::num(1), pca::vpr0(), pca::vpr1()};
  for (std::size_t n = 2; n <= leaves; ++n)
    for (std::size_t l = 1; l < n; ++l)
      for (auto& f : by_size[l])
        for (auto& x : by_size[n - l]) by_size[n].push_back(pca::app(f, x));
  std::vector<CodeP> out;
  for (auto& v : by_size) out.insert(out.end(), v.begin(), v.end());
  return out;
}

std::optional<CodeP> find_tracker(const SemMorphism& m) {
  const World& w = m.dom->world;
  const auto& xs = m.dom->enumerate();
  std::vector<CodeP> candidates;
  std::vector<std::optional<CodeP>> targets;
  bool all_targets = true;
  for (auto& x : xs) {
    targets.push_back(m.cod(x)->find_realizer(m.map(x)));
    all_targets = all_targets && targets.back().has_value();
  }
  if (m.tracker) candidates.push_back(*m.tracker);
  if (xs.empty()) candidates.push_back(pca::app(pca::K(), pca::num(0)));
  if (!xs.empty() && targets.front()) candidates.push_back(pca::app(pca::K(), *targets.front()));
  candidates.push_back(pca::I());
  if (all_targets && m.dom->key && !xs.empty()) {
    std::vector<std::pair<Nat, CodeP>> entries;
    std::map<Nat, CodeP> seen;
    bool consistent = true;
    for (std::size_t i = 0; i < xs.size() && consistent; ++i)
      for (auto& r : m.dom->samples(xs[i])) {
        Outcome o = run(*m.dom->key, r, w.budget);
        auto kv = o.ok() ? numeral_of(o.value) : std::nullopt;
        if (!kv) { consistent = false; break; }
        auto [it, fresh] = seen.emplace(*kv, *targets[i]);
        if (fresh) entries.emplace_back(*kv, *targets[i]);
        else if (!pca::equal(it->second, *targets[i])) { consistent = false; break; }
      }
    if (consistent) candidates.push_back(table_code(*m.dom->key, entries, *targets.front()));
  }
  for (auto& c : candidates)
    if (tracks(m, c) == Tri::True) return c;
  for (auto& c : small_codes(w.code_search_size))
    if (tracks(m, c) == Tri::True) return c;
  return std::nullopt;
}

// ---------------------------------------------------------------- Pi

namespace {

std::size_t checked_product(const std::vector<std::size_t>& sizes, const World& w, const char* what) {
  std::size_t total = 1;
  for (auto s : sizes) {
    if (s == 0) return 0;
    if (total > w.max_elements / s) throw resource_error(std::string(what) + ": too many elements");
    total *= s;
  }
  return total;
}

}  // namespace

AssemblyP pi(AssemblyP dom, Family fam_in, const World& w) {
  Family fam = memoize(fam_in);
  auto cache = std::make_shared<RealizerCache>();
  auto a = fresh_assembly(w);
  const auto& ds = dom->enumerate();
  AssemblyP first = ds.empty() ? nullptr : fam(ds.front());
  a->level = std::max(dom->level, first ? first->level : dom->level) + 1;
  a->category = first ? first->category : Category::Subsing;
  a->name = "Pi(" + dom->name + ")";
  a->complete = dom->complete && (!first || first->complete);

  auto search = [dom, fam, cache](const ElemP& f) {
    return cache->get(f, [&]() -> std::optional<CodeP> {
      SemMorphism m{dom, fam, [f](const ElemP& x) { return model::apply(f, x); }, std::nullopt};
      return find_tracker(m);
    });
  };
  a->find_realizer = search;
  a->member = [dom, fam, search](const ElemP& f) {
    if (f->kind != Elem::Kind::Fun) return Tri::False;
    Tri all = Tri::True;
    for (auto& x : dom->enumerate()) {
      all = tri_and(all, fam(x)->member(model::apply(f, x)));
      if (all == Tri::False) return all;
    }
    if (all != Tri::True) return all;
    return search(f) ? Tri::True : Tri::Unknown;
  };
  a->realizes = [dom, fam, w](const CodeP& code, const ElemP& f) {
    if (f->kind != Elem::Kind::Fun) return Tri::False;
    Tri all = Tri::True;
    for (auto& x : dom->enumerate()) {
      ElemP fx = model::apply(f, x);
      AssemblyP cod = fam(x);
      for (auto& r : dom->samples(x)) {
        Outcome o = run(code, r, w.budget);
        Tri step = defined(o);
        if (step == Tri::True) step = cod->realizes(o.value, fx);
        all = tri_and(all, step);
        if (all == Tri::False) return all;
      }
    }
    return all;
  };
  a->samples = [search](const ElemP& f) {
    std::vector<CodeP> out;
    if (auto r = search(f)) out.push_back(*r);
    return out;
  };
  AssemblyP dom_keep = dom;
  a->list = [dom, fam, search, w, dom_keep]() {
    const auto& xs = dom->enumerate();
    std::vector<std::vector<ElemP>> fibers;
    std::vector<std::size_t> sizes;
    for (auto& x : xs) {
      fibers.push_back(fam(x)->enumerate());
      sizes.push_back(fibers.back().size());
    }
    std::size_t total = checked_product(sizes, w, "pi");
    std::vector<ElemP> out;
    std::vector<std::size_t> idx(xs.size(), 0);
    for (std::size_t n = 0; n < total; ++n) {
      std::vector<std::pair<ElemP, ElemP>> graph;
      for (std::size_t i = 0; i < xs.size(); ++i) graph.emplace_back(xs[i], fibers[i][idx[i]]);
      ElemP f = fun_table(dom_keep, std::move(graph));
      if (search(f)) out.push_back(f);
      for (std::size_t i = 0; i < idx.size(); ++i) {
        if (++idx[i] < sizes[i]) break;
        idx[i] = 0;
      }
    }
    return out;
  };
  // lambda f. <kB0 (f a0), <kB1 (f a1), ...>>
  {
    bool ok = true;
    std::vector<CodeP> parts;
    auto f = pca::var("f");
    for (auto& x : ds) {
      auto r = dom->find_realizer(x);
      auto k = fam(x)->key;
      if (!r || !k) { ok = false; break; }
      parts.push_back(pca::app(*k, pca::app(f, *r)));
    }
    if (ok) {
      if (parts.empty()) {
        a->key = pca::app(pca::K(), pca::num(0));
      } else {
        CodeP body = parts.back();
        for (std::size_t i = parts.size() - 1; i-- > 0;) body = pca::ap({pca::npair(), parts[i], body});
        a->key = pca::abstract("f", body);
      }
    }
  }
  a->inhabited_fn = [dom, fam, search, dom_keep]() {
    if (dom->category == Category::Subsing) {
      Tri d = dom->inhabited();
      if (d == Tri::False) return Tri::True;
      if (d == Tri::True) return fam(dom->enumerate().front())->inhabited();
      return Tri::Unknown;
    }
    // Choose the first element of every fiber and look for a tracker.
    std::vector<std::pair<ElemP, ElemP>> graph;
    bool all_subsing = true;
    Tri all = Tri::True;
    for (auto& x : dom->enumerate()) {
      AssemblyP b = fam(x);
      all_subsing = all_subsing && b->category == Category::Subsing;
      Tri inh = b->inhabited();
      all = tri_and(all, inh);
      if (all == Tri::False) return all;
      if (inh == Tri::True) graph.emplace_back(x, b->enumerate().empty() ? star() : b->enumerate().front());
    }
    if (all != Tri::True || all_subsing) return all;
    return search(fun_table(dom_keep, std::move(graph))) ? Tri::True : Tri::Unknown;
  };
  return a;
}

// ---------------------------------------------------------------- W

std::vector<Path> paths(const ElemP& tree) {
  std::vector<Path> out{{tree->a}};
  for (auto& [b, sub] : tree->graph)
    for (auto& p : paths(sub)) {
      Path q{tree->a, b};
      q.insert(q.end(), p.begin(), p.end());
      out.push_back(std::move(q));
    }
  return out;
}

TreeCheck check_tree(const std::vector<Path>& tree, const AssemblyP& a, const Family& b) {
  TreeCheck c;
  auto less = [](const Path& x, const Path& y) {
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(), ElemLess{});
  };
  std::set<Path, decltype(less)> set(tree.begin(), tree.end(), less);
  c.labelled = std::all_of(tree.begin(), tree.end(), [&](const Path& p) {
    if (p.size() % 2 == 0) return false;
    for (std::size_t i = 0; i + 1 < p.size(); i += 2)
      if (a->member(p[i]) != Tri::True || b(p[i])->member(p[i + 1]) != Tri::True) return false;
    return a->member(p.back()) == Tri::True;
  });
  c.inhabited = std::any_of(tree.begin(), tree.end(), [](const Path& p) { return p.size() == 1; });
  c.downward_closed = std::all_of(tree.begin(), tree.end(), [&](const Path& p) {
    return p.size() < 3 || set.count(Path(p.begin(), p.end() - 2));
  });
  c.complete = c.labelled && std::all_of(tree.begin(), tree.end(), [&](const Path& p) {
    AssemblyP fiber = b(p.back());
    for (auto& bv : fiber->enumerate()) {
      bool found = false;
      for (auto& q : tree)
        if (q.size() == p.size() + 2 && std::equal(p.begin(), p.end(), q.begin(),
                                                    [](auto& x, auto& y) { return compare(x, y) == 0; }) &&
            compare(q[p.size()], bv) == 0)
          found = true;
      if (!found) return false;
    }
    return true;
  });
  c.consistent = true;
  for (auto& p : tree)
    for (auto& q : tree)
      if (p.size() == q.size() && p.size() >= 1 &&
          std::equal(p.begin(), p.end() - 1, q.begin(), [](auto& x, auto& y) { return compare(x, y) == 0; }) &&
          compare(p.back(), q.back()) != 0)
        c.consistent = false;
  // Exhaustive descent along proper extensions; a chain longer than the
  // number of paths would revisit a path.
  std::function<bool(const Path&, std::size_t)> descend = [&](const Path& p, std::size_t depth) {
    if (depth > tree.size()) return false;
    for (auto& q : tree)
      if (q.size() == p.size() + 2 &&
          std::equal(p.begin(), p.end(), q.begin(), [](auto& x, auto& y) { return compare(x, y) == 0; }) &&
          !descend(q, depth + 1))
        return false;
    return true;
  };
  c.well_founded = std::all_of(tree.begin(), tree.end(), [&](const Path& p) {
    return p.size() != 1 || descend(p, 1);
  });
  return c;
}

namespace {

struct WState {
  std::vector<ElemP> trees;
  bool truncated = false;
};

void build_trees(const AssemblyP& dom, const Family& fam, std::size_t depth, const World& w,
                 std::vector<ElemP>& out, bool& truncated) {
  for (auto& label : dom->enumerate()) {
    AssemblyP fiber_type = fam(label);
    const auto& fiber = fiber_type->enumerate();
    if (fiber.empty()) {
      out.push_back(tree_elem(label, {}));
      continue;
    }
    if (depth == 0) {
      truncated = true;
      continue;
    }
    std::vector<ElemP> subs;
    build_trees(dom, fam, depth - 1, w, subs, truncated);
    std::vector<std::size_t> sizes(fiber.size(), subs.size());
    std::size_t total = checked_product(sizes, w, "wtype");
    std::vector<std::size_t> idx(fiber.size(), 0);
    for (std::size_t n = 0; n < total; ++n) {
      std::vector<std::pair<ElemP, ElemP>> children;
      for (std::size_t i = 0; i < fiber.size(); ++i) children.emplace_back(fiber[i], subs[idx[i]]);
      out.push_back(tree_elem(label, std::move(children)));
      guard(out.size(), w, "wtype");
      for (std::size_t i = 0; i < idx.size(); ++i) {
        if (++idx[i] < sizes[i]) break;
        idx[i] = 0;
      }
    }
  }
}

}  // namespace

AssemblyP wtype(AssemblyP dom, Family fam_in, const World& w) {
  Family fam = memoize(fam_in);
  auto a = fresh_assembly(w);
  auto st = std::make_shared<WState>();
  build_trees(dom, fam, w.tree_depth, w, st->trees, st->truncated);
  const auto& ds = dom->enumerate();
  int fiber_level = dom->level;
  for (auto& x : ds) fiber_level = std::max(fiber_level, fam(x)->level);
  a->level = fiber_level + 1;
  a->category = dom->category;
  a->name = "W(" + dom->name + ")";
  a->complete = dom->complete && !st->truncated;
  a->list = [st]() { return st->trees; };

  a->member = [st](const ElemP& t) {
    for (auto& u : st->trees)
      if (compare(u, t) == 0) return Tri::True;
    return st->truncated ? Tri::Unknown : Tri::False;
  };

  // t |- T: fst t realizes the root label and (snd t) b realizes the subtree
  // at b for every sampled b |- B.
  auto self_realizes = std::make_shared<std::function<Tri(const CodeP&, const ElemP&)>>();
  *self_realizes = [dom, fam, w, self_realizes](const CodeP& t, const ElemP& tree) -> Tri {
    if (tree->kind != Elem::Kind::Tree) return Tri::False;
    Outcome label = run(pca::vpr0(), t, w.budget);
    Tri ok = defined(label);
    if (ok != Tri::True) return ok;
    ok = dom->realizes(label.value, tree->a);
    if (ok == Tri::False || tree->graph.empty()) return ok;
    Outcome sub = run(pca::vpr1(), t, w.budget);
    ok = tri_and(ok, defined(sub));
    if (ok == Tri::False || !sub.ok()) return ok;
    AssemblyP fiber = fam(tree->a);
    for (auto& [b, child] : tree->graph)
      for (auto& rb : fiber->samples(b)) {
        Outcome next = run(sub.value, rb, w.budget);
        Tri step = defined(next);
        if (step == Tri::True) step = (*self_realizes)(next.value, child);
        ok = tri_and(ok, step);
        if (ok == Tri::False) return ok;
      }
    return ok;
  };
  a->realizes = *self_realizes;

  // Leaves carry a sentinel child map deep enough for the key to unfold.
  std::optional<CodeP> label0 = ds.empty() ? std::nullopt : dom->find_realizer(ds.front());
  CodeP sentinel = pca::num(0);
  if (label0)
    for (std::size_t d = 0; d <= w.tree_depth + 1; ++d)
      sentinel = normal(pca::ap({pca::vpair(), *label0, pca::app(pca::K(), sentinel)}), w.budget);
  auto find = std::make_shared<std::function<std::optional<CodeP>(const ElemP&)>>();
  *find = [dom, fam, w, sentinel, find](const ElemP& tree) -> std::optional<CodeP> {
    if (tree->kind != Elem::Kind::Tree) return std::nullopt;
    auto label = dom->find_realizer(tree->a);
    if (!label) return std::nullopt;
    CodeP children;
    if (tree->graph.empty()) {
      children = pca::app(pca::K(), sentinel);
    } else {
      AssemblyP fiber = fam(tree->a);
      if (!fiber->key) return std::nullopt;
      std::vector<std::pair<Nat, CodeP>> entries;
      std::optional<CodeP> fallback;
      for (auto& [b, child] : tree->graph) {
        auto rc = (*find)(child);
        if (!rc) return std::nullopt;
        if (!fallback) fallback = rc;
        for (auto& rb : fiber->samples(b)) {
          Outcome kv = run(*fiber->key, rb, w.budget);
          auto k = kv.ok() ? numeral_of(kv.value) : std::nullopt;
          if (!k) return std::nullopt;
          entries.emplace_back(*k, *rc);
        }
      }
      children = table_code(*fiber->key, entries, *fallback);
    }
    return normal(pca::ap({pca::vpair(), *label, children}), w.budget);
  };
  a->find_realizer = *find;
  a->samples = [find](const ElemP& t) {
    std::vector<CodeP> out;
    if (auto r = (*find)(t)) out.push_back(*r);
    return out;
  };

  // kappa_0 t = kA (fst t); kappa_d t = <kA (fst t), kappa_{d-1} ((snd t) p) ...>
  if (dom->key) {
    std::vector<CodeP> probes;
    bool ok = true;
    for (auto& x : ds) {
      AssemblyP fiber = fam(x);
      for (auto& b : fiber->enumerate()) {
        auto rb = fiber->find_realizer(b);
        if (!rb) { ok = false; break; }
        if (std::none_of(probes.begin(), probes.end(), [&](const CodeP& p) { return pca::equal(p, *rb); }))
          probes.push_back(*rb);
      }
    }
    if (ok) {
      auto t = pca::var("t");
      CodeP kappa = pca::abstract("t", pca::app(*dom->key, pca::app(pca::vpr0(), t)));
      for (std::size_t d = 0; d < w.tree_depth && !probes.empty(); ++d) {
        CodeP body = pca::app(*dom->key, pca::app(pca::vpr0(), t));
        for (auto it = probes.rbegin(); it != probes.rend(); ++it)
          body = pca::ap({pca::npair(), pca::app(kappa, pca::ap({pca::vpr1(), t, *it})), body});
        kappa = pca::abstract("t", body);
      }
      a->key = kappa;
    }
  }
  return a;
}

// ---------------------------------------------------------------- =, ||.||, /

AssemblyP subsing_eq(const AssemblyP&, const ElemP& x, const ElemP& y, const World& w) {
  return subsingleton(equal(x, y), w);
}

AssemblyP trunc(const AssemblyP& a, const World& w) { return subsingleton(a->inhabited(), w); }

AssemblyP quot(AssemblyP base, Relation rel, const World& w) {
  auto a = fresh_assembly(w);
  const auto& xs = base->enumerate();
  guard(xs.size(), w, "quot");
  // Equivalence closure by union-find; unknown relatedness leaves the
  // quotient incomplete.
  std::vector<std::size_t> parent(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) parent[i] = i;
  std::function<std::size_t(std::size_t)> root = [&](std::size_t i) {
    return parent[i] == i ? i : parent[i] = root(parent[i]);
  };
  bool unknown = false;
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (i == j) continue;
      Tri r = rel(xs[i], xs[j])->inhabited();
      if (r == Tri::Unknown) unknown = true;
      if (r == Tri::True) parent[root(i)] = root(j);
    }
  std::map<std::size_t, std::vector<ElemP>> groups;
  for (std::size_t i = 0; i < xs.size(); ++i) groups[root(i)].push_back(xs[i]);
  auto classes = std::make_shared<std::vector<ElemP>>();
  for (auto& [r, members] : groups) classes->push_back(set_elem(members));
  std::sort(classes->begin(), classes->end(), ElemLess{});

  a->level = base->level + 1;
  a->category = base->category;
  a->name = "Quot(" + base->name + ")";
  a->complete = base->complete && !unknown;
  a->list = [classes]() { return *classes; };
  a->member = [classes, unknown](const ElemP& q) {
    for (auto& c : *classes)
      if (compare(c, q) == 0) return Tri::True;
    return unknown ? Tri::Unknown : Tri::False;
  };
  a->realizes = [base](const CodeP& code, const ElemP& q) {
    Tri any = Tri::False;
    if (q->kind != Elem::Kind::Set) return any;
    for (auto& x : q->items) any = tri_or(any, base->realizes(code, x));
    return any;
  };
  a->find_realizer = [base](const ElemP& q) -> std::optional<CodeP> {
    if (q->kind != Elem::Kind::Set || q->items.empty()) return std::nullopt;
    return base->find_realizer(q->items.front());
  };
  a->samples = [base](const ElemP& q) {
    std::vector<CodeP> out;
    if (q->kind != Elem::Kind::Set) return out;
    for (auto& x : q->items)
      for (auto& r : base->samples(x)) out.push_back(r);
    return out;
  };
  a->key = base->key;
  return a;
}

// ---------------------------------------------------------------- isomorphisms

std::optional<Iso> iso_to_small(const AssemblyP& a, Category target) {
  if (!a->complete) return std::nullopt;
  const auto& xs = a->enumerate();
  Iso iso;
  if (target == Category::Subsing) {
    if (xs.size() > 1) return std::nullopt;
    iso.target = subsingleton(tri(xs.size() == 1), a->world);
  } else {
    iso.target = fin(xs.size(), a->world);
  }
  const auto& ys = iso.target->enumerate();
  if (ys.size() != xs.size()) return std::nullopt;
  for (std::size_t i = 0; i < xs.size(); ++i) iso.bijection.emplace_back(xs[i], ys[i]);

  auto lookup = [&iso](bool forward) {
    auto table = iso.bijection;
    return [table, forward](const ElemP& e) -> ElemP {
      for (auto& [x, y] : table)
        if (compare(forward ? x : y, e) == 0) return forward ? y : x;
      throw unsupported("isomorphism applied outside its domain");
    };
  };
  AssemblyP tgt = iso.target;
  auto to = find_tracker({a, [tgt](const ElemP&) { return tgt; }, lookup(true), std::nullopt});
  if (!to) return std::nullopt;
  auto from = find_tracker({tgt, [a](const ElemP&) { return a; }, lookup(false), std::nullopt});
  if (!from) return std::nullopt;
  iso.to = *to;
  iso.from = *from;
  return iso;
}

// ---------------------------------------------------------------- power types

AssemblyP power_assembly(int n, const World& w) {
  struct Key {
    int n;
    Nat nat_bound, set_base;
    bool operator<(const Key& o) const {
      return std::tie(n, nat_bound, set_base) < std::tie(o.n, o.nat_bound, o.set_base);
    }
  };
  static std::mutex mu;
  static std::map<Key, AssemblyP> cache;
  Key key{n, w.nat_bound, w.set_base};
  {
    std::lock_guard lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  AssemblyP out;
  if (n == 0) {
    out = nat(w);
  } else {
    AssemblyP lower = power_assembly(n - 1, w);
    AssemblyP generic = pi(lower, [w](const ElemP&) { return nabla_subsing(w); }, w);
    auto a = fresh_assembly(w);
    a->level = generic->level;
    a->category = generic->category;
    a->name = "P" + std::to_string(n);
    a->member = generic->member;
    a->realizes = generic->realizes;
    // Every function into a nabla is tracked by a constant.
    a->find_realizer = [](const ElemP&) -> std::optional<CodeP> { return pca::app(pca::K(), pca::num(0)); };
    a->samples = [](const ElemP&) { return std::vector<CodeP>{pca::app(pca::K(), pca::num(0))}; };
    a->complete = false;
    a->list = [n, w]() {
      std::vector<ElemP> elems;
      for (auto& x : power_set(n, w.set_base).enumerate()) elems.push_back(g(n, x, w));
      return elems;
    };
    out = a;
  }
  std::lock_guard lock(mu);
  cache.emplace(key, out);
  return out;
}

ElemP g(int n, const ElemP& x, const World& w) {
  if (n == 0) {
    if (x->kind != Elem::Kind::Nat) throw unsupported("g: level 0 needs a natural");
    return class_elem(x->n, "nat");
  }
  if (x->kind != Elem::Kind::Set) throw unsupported("g: level " + std::to_string(n) + " needs a set");
  AssemblyP lower = power_assembly(n - 1, w);
  return fun_elem(lower, [n, x, w](const ElemP& f) {
    ElemP back = g_inv(n - 1, f, w);
    bool in = std::any_of(x->items.begin(), x->items.end(),
                          [&](const ElemP& y) { return compare(y, back) == 0; });
    return type_elem(subsingleton(tri(in), w));
  });
}

ElemP g_inv(int n, const ElemP& f, const World& w) {
  if (n == 0) {
    if (f->kind != Elem::Kind::Class) throw unsupported("g_inv: level 0 needs a class");
    return nat_elem(f->n);
  }
  if (f->kind != Elem::Kind::Fun) throw unsupported("g_inv: needs a function");
  std::vector<ElemP> lower;
  if (n == 1) {
    for (Nat i = 0; i <= w.nat_bound; ++i) lower.push_back(nat_elem(i));
  } else {
    lower = power_set(n - 1, w.set_base).enumerate();
  }
  std::vector<ElemP> members;
  for (auto& x : lower) {
    ElemP v = model::apply(f, g(n - 1, x, w));
    if (v->kind != Elem::Kind::Type) throw unsupported("g_inv: value is not a subsingleton");
    Tri in = v->type->inhabited();
    if (in == Tri::Unknown) throw unsupported("g_inv: undetermined membership");
    if (in == Tri::True) members.push_back(x);
  }
  return set_elem(std::move(members));
}

}  // namespace cwb::model
