#pragma once
// Random generators shared by the unit suites and the acceptance runner.
#include <random>
#include <string>

#include "cwb/pca.hpp"

namespace support {

using cwb::pca::CodeP;

// A value: constant, numeral, or a constant applied to fewer values than its arity.
inline CodeP random_value(std::mt19937_64& rng, int depth) {
  namespace p = cwb::pca;
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };
  int choice = depth <= 0 ? pick(5) : pick(10);
  switch (choice) {
    case 0: return p::K();
    case 1: return p::S();
    case 2: return p::Suc();
    case 3: return p::Rec();
    case 4: return p::num(rng() % 10);
    case 5: return p::app(p::K(), random_value(rng, depth - 1));
    case 6: return p::app(p::S(), random_value(rng, depth - 1));
    case 7: return p::ap({p::S(), random_value(rng, depth - 1), random_value(rng, depth - 1)});
    case 8: return p::app(p::Rec(), random_value(rng, depth - 1));
    default: return p::ap({p::Rec(), random_value(rng, depth - 1), random_value(rng, depth - 1)});
  }
}

// An open body in the variable `x`, mixing the variable, values and applications.
inline CodeP random_body(std::mt19937_64& rng, int depth, const std::string& x = "x") {
  namespace p = cwb::pca;
  auto r = rng() % 8;
  if (depth <= 0 || r < 2) return r % 2 == 0 ? p::var(x) : random_value(rng, 1);
  if (r == 2) return p::app(p::Suc(), random_body(rng, depth - 1, x));
  return p::app(random_body(rng, depth - 1, x), random_body(rng, depth - 1, x));
}

}  // namespace support
