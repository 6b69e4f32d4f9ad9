#include <mutex>
#include <sstream>

#include "cwb/holog.hpp"

namespace cwb::holog {

// ---------------------------------------------------------------- values

bool HSet::operator<(const HSet& o) const {
  if (level != o.level) return level < o.level;
  if (nats != o.nats) return nats < o.nats;
  return sets < o.sets;
}

bool HSet::operator==(const HSet& o) const {
  return level == o.level && nats == o.nats && sets == o.sets;
}

Value nat_value(Nat n) { return code_value(pca::num(n)); }

Value code_value(pca::CodeP c) {
  Value v;
  v.sort = 0;
  v.code = std::move(c);
  return v;
}

Value set_value(HSet s) {
  Value v;
  v.sort = s.level;
  v.set = std::move(s);
  return v;
}

HSet nat_set(std::set<Nat> xs) {
  HSet s;
  s.level = 1;
  s.nats = std::move(xs);
  return s;
}

bool value_equal(const Value& a, const Value& b) {
  if (a.sort != b.sort) return false;
  if (a.sort == 0) return pca::equal(a.code, b.code);
  return a.set == b.set;
}

bool value_less(const Value& a, const Value& b) {
  if (a.sort != b.sort) return a.sort < b.sort;
  if (a.sort == 0) return pca::less(a.code, b.code);
  return a.set < b.set;
}

std::string show(const HSet& s) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  if (s.level == 1) {
    for (Nat n : s.nats) {
      if (!first) os << ',';
      os << n;
      first = false;
    }
  } else {
    for (auto& e : s.sets) {
      if (!first) os << ',';
      os << show(e);
      first = false;
    }
  }
  os << '}';
  return os.str();
}

std::string show(const Value& v) { return v.sort == 0 ? pca::show(v.code) : show(v.set); }

// ---------------------------------------------------------------- universes

namespace {
constexpr std::size_t kMaxUniverse = 1u << 16;

Nat base_of(const EvalConfig& cfg) { return cfg.set_base ? *cfg.set_base : cfg.cutoff + 1; }
}  // namespace

const std::vector<HSet>& universe(int sort, const EvalConfig& cfg) {
  static std::mutex mu;
  static std::map<std::pair<int, Nat>, std::vector<HSet>> cache;
  if (sort < 1) throw std::invalid_argument("universe: sort must be at least 1");
  Nat base = base_of(cfg);
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(sort, base);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<HSet> out;
  if (sort == 1) {
    if (base > 16) throw resource_error("sort-1 universe over " + std::to_string(base) + " numbers is too large");
    for (Nat mask = 0; mask < (Nat{1} << base); ++mask) {
      HSet s;
      s.level = 1;
      for (Nat i = 0; i < base; ++i)
        if (mask >> i & 1) s.nats.insert(i);
      out.push_back(std::move(s));
    }
  } else {
    // release the lock while building the lower level
    mu.unlock();
    std::vector<HSet> lower;
    try {
      lower = universe(sort - 1, cfg);
    } catch (...) {
      mu.lock();
      throw;
    }
    mu.lock();
    if (lower.size() > 16)
      throw resource_error("sort-" + std::to_string(sort) + " universe is too large");
    for (std::size_t mask = 0; mask < (std::size_t{1} << lower.size()); ++mask) {
      HSet s;
      s.level = sort;
      for (std::size_t i = 0; i < lower.size(); ++i)
        if (mask >> i & 1) s.sets.insert(lower[i]);
      out.push_back(std::move(s));
    }
  }
  if (out.size() > kMaxUniverse) throw resource_error("universe too large");
  return cache.emplace(key, std::move(out)).first->second;
}

// ---------------------------------------------------------------- evaluation

namespace {

TermResult defined_value(Value v) {
  TermResult r;
  r.kind = TermResult::Kind::Defined;
  r.value = std::move(v);
  return r;
}

TermResult undefined_result() {
  TermResult r;
  r.kind = TermResult::Kind::Undefined;
  return r;
}

TermResult unknown_result() { return TermResult{}; }

class Evaluator {
 public:
  explicit Evaluator(const EvalConfig& cfg) : cfg_(cfg) {}

  TermResult term(const TermP& t, Env& env) {
    switch (t->kind) {
      case Term::Kind::Var: {
        auto it = env.find(t->name);
        if (it == env.end()) throw unbound_variable("unbound variable " + t->name);
        return defined_value(it->second);
      }
      case Term::Kind::Zero: return defined_value(nat_value(0));
      case Term::Kind::Const: {
        switch (t->c) {
          case pca::Const::K: return defined_value(code_value(pca::K()));
          case pca::Const::S: return defined_value(code_value(pca::S()));
          case pca::Const::Suc: return defined_value(code_value(pca::Suc()));
          case pca::Const::Rec: return defined_value(code_value(pca::Rec()));
        }
        break;
      }
      case Term::Kind::Succ:
      case Term::Kind::Add:
      case Term::Kind::Mul: {
        std::vector<Nat> ns;
        std::vector<TermP> parts{t->a};
        if (t->b) parts.push_back(t->b);
        bool unknown = false;
        for (auto& p : parts) {
          auto r = term(p, env);
          if (r.kind == TermResult::Kind::Undefined) return undefined_result();
          if (r.kind == TermResult::Kind::Unknown) { unknown = true; continue; }
          auto n = pca::as_num(r.value.code);
          // arithmetic on a non-numeral code has no interpretation here
          if (!n) { unknown = true; continue; }
          ns.push_back(*n);
        }
        if (unknown) return unknown_result();
        unsigned __int128 v;
        if (t->kind == Term::Kind::Succ) v = static_cast<unsigned __int128>(ns[0]) + 1;
        else if (t->kind == Term::Kind::Add) v = static_cast<unsigned __int128>(ns[0]) + ns[1];
        else v = static_cast<unsigned __int128>(ns[0]) * ns[1];
        if (v > UINT64_MAX) return unknown_result();
        return defined_value(nat_value(static_cast<Nat>(v)));
      }
      case Term::Kind::App: {
        auto f = term(t->a, env);
        auto a = term(t->b, env);
        if (f.kind == TermResult::Kind::Undefined || a.kind == TermResult::Kind::Undefined)
          return undefined_result();
        if (f.kind == TermResult::Kind::Unknown || a.kind == TermResult::Kind::Unknown)
          return unknown_result();
        auto o = pca::apply(f.value.code, a.value.code, cfg_.budget, cfg_.oracles);
        if (o.ok()) return defined_value(code_value(o.value));
        if (o.undefined()) return undefined_result();
        return unknown_result();
      }
      case Term::Kind::Fun: {
        std::vector<Nat> ns;
        bool unknown = false;
        for (auto& a : t->args) {
          auto r = term(a, env);
          if (r.kind == TermResult::Kind::Undefined) return undefined_result();
          if (r.kind == TermResult::Kind::Unknown) { unknown = true; continue; }
          auto n = pca::as_num(r.value.code);
          if (!n) return undefined_result();
          ns.push_back(*n);
        }
        if (unknown) return unknown_result();
        if (!cfg_.fun) throw unbound_variable("no interpretation for function symbol " + t->name);
        auto v = cfg_.fun(t->name, ns);
        if (!v) return undefined_result();
        return defined_value(nat_value(*v));
      }
      case Term::Kind::Eps: {
        Env inner;
        bool unknown = false;
        for (std::size_t i = 0; i < t->args.size(); ++i) {
          auto r = term(t->args[i], env);
          if (r.kind == TermResult::Kind::Undefined) return undefined_result();
          if (r.kind == TermResult::Kind::Unknown) { unknown = true; continue; }
          inner[t->params[i]] = r.value;
        }
        if (unknown) return unknown_result();
        auto w = least_witness(t->name, t->body, inner, cfg_.cutoff + cfg_.witness_slack, cfg_);
        if (w.witness) return defined_value(nat_value(*w.witness));
        if (w.unknown) return unknown_result();
        return undefined_result();
      }
    }
    return unknown_result();
  }

  Tri formula(const FormulaP& f, Env& env) {
    switch (f->kind) {
      case Formula::Kind::Bot: return Tri::False;
      case Formula::Kind::Top: return Tri::True;
      case Formula::Kind::Eq:
      case Formula::Kind::Elem: {
        auto a = term(f->a, env);
        auto b = term(f->b, env);
        if (a.kind == TermResult::Kind::Undefined || b.kind == TermResult::Kind::Undefined)
          return Tri::False;
        if (a.kind == TermResult::Kind::Unknown || b.kind == TermResult::Kind::Unknown)
          return Tri::Unknown;
        if (f->kind == Formula::Kind::Eq) return tri(value_equal(a.value, b.value));
        return tri(member(a.value, b.value));
      }
      case Formula::Kind::Defined: {
        auto a = term(f->a, env);
        if (a.kind == TermResult::Kind::Unknown) return Tri::Unknown;
        return tri(a.kind == TermResult::Kind::Defined);
      }
      case Formula::Kind::Rel: {
        std::vector<Value> vs;
        bool unknown = false;
        for (auto& a : f->args) {
          auto r = term(a, env);
          if (r.kind == TermResult::Kind::Undefined) return Tri::False;
          if (r.kind == TermResult::Kind::Unknown) { unknown = true; continue; }
          vs.push_back(r.value);
        }
        if (unknown) return Tri::Unknown;
        if (!cfg_.rel) throw unbound_variable("no interpretation for relation symbol " + f->name);
        return cfg_.rel(f->name, vs);
      }
      case Formula::Kind::And: {
        Tri a = formula(f->l, env);
        if (a == Tri::False) return a;
        return tri_and(a, formula(f->r, env));
      }
      case Formula::Kind::Or: {
        Tri a = formula(f->l, env);
        if (a == Tri::True) return a;
        return tri_or(a, formula(f->r, env));
      }
      case Formula::Kind::Imp: {
        Tri a = formula(f->l, env);
        if (a == Tri::False) return Tri::True;
        return tri_imp(a, formula(f->r, env));
      }
      case Formula::Kind::Forall:
      case Formula::Kind::Exists: return quantifier(f, env);
    }
    return Tri::Unknown;
  }

 private:
  static bool member(const Value& x, const Value& s) {
    if (s.sort != x.sort + 1) return false;
    if (s.sort == 1) {
      auto n = pca::as_num(x.code);
      return n && s.set.nats.count(*n) > 0;
    }
    return s.set.sets.count(x.set) > 0;
  }

  // Runs the body over 0..hi for sort 0, scoped binding restored afterwards.
  Tri scan(const FormulaP& f, Env& env, Nat lo, Nat hi, bool universal) {
    Tri acc = universal ? Tri::True : Tri::False;
    for (Nat v = lo;; ++v) {
      env[f->name] = nat_value(v);
      Tri b = formula(f->l, env);
      acc = universal ? tri_and(acc, b) : tri_or(acc, b);
      if (universal ? acc == Tri::False : acc == Tri::True) break;
      if (v == hi) break;
    }
    return acc;
  }

  Tri quantifier(const FormulaP& f, Env& env) {
    bool universal = f->kind == Formula::Kind::Forall;
    std::optional<Value> saved;
    auto it = env.find(f->name);
    if (it != env.end()) saved = it->second;
    Tri result;
    if (f->sort > 0) {
      result = universal ? Tri::True : Tri::False;
      for (auto& s : universe(f->sort, cfg_)) {
        env[f->name] = set_value(s);
        Tri b = formula(f->l, env);
        result = universal ? tri_and(result, b) : tri_or(result, b);
        if (universal ? result == Tri::False : result == Tri::True) break;
      }
    } else if (f->range) {
      result = scan(f, env, 0, *f->range, universal);
    } else if (universal) {
      result = scan(f, env, 0, cfg_.cutoff, true);
    } else {
      Nat hi = cfg_.cutoff + cfg_.witness_slack;
      result = scan(f, env, 0, hi, false);
      if (cfg_.policy == Truncation::Flag && result != Tri::True) {
        // a witness beyond the window would change the verdict
        Tri wider = scan(f, env, hi + 1, 2 * hi + 1, false);
        if (wider == Tri::True) result = Tri::Unknown;
      }
    }
    if (saved) env[f->name] = *saved;
    else env.erase(f->name);
    return result;
  }

  const EvalConfig& cfg_;
};

}  // namespace

TermResult eval_term(const TermP& t, const Env& env, const EvalConfig& cfg) {
  Env e = env;
  Evaluator ev(cfg);
  return ev.term(t, e);
}

Tri eval_bounded(const FormulaP& f, const Env& env, const EvalConfig& cfg) {
  Env e = env;
  Evaluator ev(cfg);
  return ev.formula(f, e);
}

WitnessSearch least_witness(const std::string& y, const FormulaP& body, const Env& env,
                            Nat bound, const EvalConfig& cfg) {
  WitnessSearch out;
  Env e = env;
  Evaluator ev(cfg);
  for (Nat v = 0; v <= bound; ++v) {
    e[y] = nat_value(v);
    Tri t = ev.formula(body, e);
    if (t == Tri::True) {
      out.witness = v;
      return out;
    }
    if (t == Tri::Unknown) {
      out.unknown = true;
      return out;
    }
  }
  return out;
}

pca::Oracle epsilon(const std::string& y, const std::vector<std::string>& params,
                    const FormulaP& body, Nat search_cutoff, const EvalConfig& cfg) {
  if (!first_order(body)) throw syntax_error("epsilon: body is not first-order");
  for (auto& [x, s] : free_vars(body))
    if (x != y && std::find(params.begin(), params.end(), x) == params.end())
      throw syntax_error("epsilon: free variable " + x + " is not a parameter");
  pca::Oracle o;
  o.fn = [y, params, body, search_cutoff, cfg](Nat code) -> std::optional<Nat> {
    Env env;
    if (params.size() == 1) {
      env[params[0]] = nat_value(code);
    } else if (params.size() > 1) {
      auto xs = pca::untuple(code, params.size());
      for (std::size_t i = 0; i < params.size(); ++i) env[params[i]] = nat_value(xs[i]);
    }
    // an unknown verdict leaves the oracle undefined at this point
    return least_witness(y, body, env, search_cutoff, cfg).witness;
  };
  return o;
}

pca::Oracle epsilon(const TermP& e, Nat search_cutoff, const EvalConfig& cfg) {
  if (e->kind != Term::Kind::Eps) throw syntax_error("epsilon: not an eps term");
  return epsilon(e->name, e->params, e->body, search_cutoff, cfg);
}

}  // namespace cwb::holog
