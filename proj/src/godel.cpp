#include "cwb/pca.hpp"

#include <boost/multiprecision/integer.hpp>

namespace cwb::pca {

// k=0, s=1, suc=2, rec=3; for n >= 4 with m = n-4, even m codes the numeral
// m/2 and odd m codes the application whose parts are unpair((m-1)/2).

namespace {

Big big_pair(const Big& a, const Big& b) {
  Big s = a + b;
  return s * (s + 1) / 2 + b;
}

std::pair<Big, Big> big_unpair(const Big& n) {
  Big disc = 8 * n + 1;
  Big w = (Big(boost::multiprecision::sqrt(disc)) - 1) / 2;
  while (w * (w + 1) / 2 > n) --w;
  while ((w + 1) * (w + 2) / 2 <= n) ++w;
  Big b = n - w * (w + 1) / 2;
  return {w - b, b};
}

}  // namespace

Big godel(const CodeP& c) {
  switch (c->kind) {
    case Code::Kind::Const: return Big(static_cast<int>(c->c));
    case Code::Kind::Num: return Big(4) + Big(2) * Big(c->n);
    case Code::Kind::App:
      return Big(4) + Big(2) * big_pair(godel(c->fun), godel(c->arg)) + 1;
    case Code::Kind::Var: break;
  }
  throw std::invalid_argument("godel: open code");
}

CodeP ungodel(const Big& n) {
  if (n < 0) throw std::invalid_argument("ungodel: negative");
  if (n == 0) return K();
  if (n == 1) return S();
  if (n == 2) return Suc();
  if (n == 3) return Rec();
  Big m = n - 4;
  if ((m & 1) == 0) {
    Big v = m / 2;
    if (v > Big(UINT64_MAX)) throw overflow("ungodel: numeral exceeds 64 bits");
    return num(static_cast<Nat>(v));
  }
  auto [f, a] = big_unpair((m - 1) / 2);
  return app(ungodel(f), ungodel(a));
}

}  // namespace cwb::pca
