#pragma once
// Random arithmetic formulas over sort-0 variables and, optionally, sort-1
// set variables.
#include <random>
#include <string>
#include <vector>

#include "cwb/holog.hpp"

namespace support {

namespace h = cwb::holog;

struct FormulaGen {
  std::mt19937_64 rng;
  bool sets = false;       // allow sort-1 atoms and quantifiers
  bool disjunctions = true;
  bool arithmetic = true;  // S, + and * in terms
  unsigned max_numeral = 3;

  explicit FormulaGen(std::uint64_t seed) : rng(seed) {}

  unsigned pick(unsigned n) { return static_cast<unsigned>(rng() % n); }

  h::TermP term(const std::vector<std::string>& scope, int depth) {
    unsigned r = pick(depth <= 0 || !arithmetic ? 2 : 5);
    if (r == 0 || scope.empty()) return h::numeral(pick(max_numeral + 1));
    if (r == 1) return h::var(scope[pick(static_cast<unsigned>(scope.size()))]);
    if (r == 2) return h::succ(term(scope, depth - 1));
    if (r == 3) return h::add(term(scope, depth - 1), term(scope, depth - 1));
    return h::mul(term(scope, depth - 1), term(scope, depth - 1));
  }

  h::FormulaP atom(const std::vector<std::string>& scope, const std::vector<std::string>& set_scope) {
    if (sets && !set_scope.empty() && pick(2) == 0)
      return h::elem(term(scope, 1), h::var(set_scope[pick(static_cast<unsigned>(set_scope.size()))], 1));
    if (disjunctions && pick(8) == 0) return pick(2) ? h::bot() : h::top();
    return h::eq(term(scope, 2), term(scope, 2));
  }

  h::FormulaP formula(std::vector<std::string> scope, std::vector<std::string> set_scope, int depth) {
    if (depth <= 0) return atom(scope, set_scope);
    unsigned r = pick(disjunctions ? 7 : 6);
    switch (r) {
      case 0: return atom(scope, set_scope);
      case 1: return h::and_(formula(scope, set_scope, depth - 1), formula(scope, set_scope, depth - 1));
      case 2: return h::imp(formula(scope, set_scope, depth - 1), formula(scope, set_scope, depth - 1));
      case 3:
      case 4: {
        std::string x = "v" + std::to_string(scope.size());
        bool set_quant = sets && pick(3) == 0;
        if (set_quant) {
          std::string name = "W" + std::to_string(set_scope.size());
          set_scope.push_back(name);
          auto body = formula(scope, set_scope, depth - 1);
          return r == 3 ? h::exists(name, 1, body) : h::forall(name, 1, body);
        }
        scope.push_back(x);
        auto body = formula(scope, set_scope, depth - 1);
        return r == 3 ? h::exists(x, 0, body) : h::forall(x, 0, body);
      }
      case 5: return h::neg(formula(scope, set_scope, depth - 1));
      default: return h::or_(formula(scope, set_scope, depth - 1), formula(scope, set_scope, depth - 1));
    }
  }
};

// The fixed corpus of 100 higher-order formulas used by the translation
// checks: 96 generated, then hand-picked set-level cases.
inline std::vector<h::FormulaP> hah_corpus() {
  FormulaGen gen(314);
  gen.sets = true;
  std::vector<h::FormulaP> out;
  for (int i = 0; i < 96; ++i) out.push_back(gen.formula({}, {}, 3 + i % 2));
  for (auto text : {"X:1 = Y:1 -> forall z. z in X:1 -> z in Y:1", "forall Z:2. Y:1 in Z:2 -> Y:1 in Z:2",
                    "exists X:1. forall z. z in X:1 <-> z = z", "forall x. x in Y:1 \\/ ~(x in Y:1)"})
    out.push_back(h::parse(text));
  return out;
}

}  // namespace support
