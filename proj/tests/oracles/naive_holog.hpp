#pragma once
// Reference evaluator for arithmetic formulas with sort-0 and sort-1
// variables over a finite world. Two-valued, recursive, no caching; written
// against the formula tree only.
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "cwb/holog.hpp"

namespace oracle {

struct World {
  std::uint64_t forall_bound = 64;  // forall x ranges over 0..forall_bound
  std::uint64_t exists_bound = 65;  // exists x ranges over 0..exists_bound
  std::uint64_t set_base = 8;       // sort-1 variables range over subsets of 0..set_base-1
};

struct Assignment {
  std::map<std::string, std::uint64_t> nats;
  std::map<std::string, std::set<std::uint64_t>> sets;
};

inline std::uint64_t term_value(const cwb::holog::TermP& t, const Assignment& env) {
  using K = cwb::holog::Term::Kind;
  switch (t->kind) {
    case K::Var: {
      auto it = env.nats.find(t->name);
      if (it == env.nats.end()) throw std::invalid_argument("unbound " + t->name);
      return it->second;
    }
    case K::Zero: return 0;
    case K::Succ: return term_value(t->a, env) + 1;
    case K::Add: return term_value(t->a, env) + term_value(t->b, env);
    case K::Mul: return term_value(t->a, env) * term_value(t->b, env);
    default: throw std::invalid_argument("term outside the arithmetic fragment");
  }
}

inline const std::set<std::uint64_t>& set_value(const cwb::holog::TermP& t, const Assignment& env) {
  if (t->kind != cwb::holog::Term::Kind::Var) throw std::invalid_argument("set term must be a variable");
  auto it = env.sets.find(t->name);
  if (it == env.sets.end()) throw std::invalid_argument("unbound " + t->name);
  return it->second;
}

inline bool truth(const cwb::holog::FormulaP& f, Assignment env, const World& w) {
  using K = cwb::holog::Formula::Kind;
  switch (f->kind) {
    case K::Top: return true;
    case K::Bot: return false;
    case K::Eq:
      if (f->sort == 0) return term_value(f->a, env) == term_value(f->b, env);
      if (f->sort == 1) return set_value(f->a, env) == set_value(f->b, env);
      throw std::invalid_argument("equality above sort 1");
    case K::Elem: return set_value(f->b, env).count(term_value(f->a, env)) > 0;
    case K::And: return truth(f->l, env, w) && truth(f->r, env, w);
    case K::Or: return truth(f->l, env, w) || truth(f->r, env, w);
    case K::Imp: return !truth(f->l, env, w) || truth(f->r, env, w);
    case K::Exists:
    case K::Forall: {
      bool is_exists = f->kind == K::Exists;
      if (f->sort == 0) {
        std::uint64_t top = f->range ? *f->range : is_exists ? w.exists_bound : w.forall_bound;
        for (std::uint64_t v = 0; v <= top; ++v) {
          env.nats[f->name] = v;
          if (truth(f->l, env, w) == is_exists) return is_exists;
        }
        return !is_exists;
      }
      if (f->sort == 1) {
        for (std::uint64_t mask = 0; mask < (1ull << w.set_base); ++mask) {
          std::set<std::uint64_t> s;
          for (std::uint64_t i = 0; i < w.set_base; ++i)
            if (mask >> i & 1) s.insert(i);
          env.sets[f->name] = s;
          if (truth(f->l, env, w) == is_exists) return is_exists;
        }
        return !is_exists;
      }
      throw std::invalid_argument("quantifier above sort 1");
    }
    default: throw std::invalid_argument("formula outside the arithmetic fragment");
  }
}

}  // namespace oracle
