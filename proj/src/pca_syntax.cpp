#include "cwb/pca.hpp"

#include <cctype>
#include <set>

namespace cwb::pca {

namespace {

struct Tok {
  enum class Kind { Ident, Num, Lam, Dot, LParen, RParen, End } kind;
  std::string text;
  std::size_t line, col;
};

std::vector<Tok> lex(const std::string& s) {
  std::vector<Tok> out;
  std::size_t line = 1, col = 1, i = 0;
  auto adv = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j) {
      if (s[i] == '\n') { ++line; col = 1; } else { ++col; }
      ++i;
    }
  };
  while (i < s.size()) {
    char ch = s[i];
    if (std::isspace(static_cast<unsigned char>(ch))) { adv(1); continue; }
    if (ch == '#') { while (i < s.size() && s[i] != '\n') adv(1); continue; }
    std::size_t l = line, c = col;
    if (ch == '\\') { out.push_back({Tok::Kind::Lam, "\\", l, c}); adv(1); continue; }
    if (ch == '.') { out.push_back({Tok::Kind::Dot, ".", l, c}); adv(1); continue; }
    if (ch == '(') { out.push_back({Tok::Kind::LParen, "(", l, c}); adv(1); continue; }
    if (ch == ')') { out.push_back({Tok::Kind::RParen, ")", l, c}); adv(1); continue; }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::Kind::Num, s.substr(i, j - i), l, c});
      adv(j - i);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '\''))
        ++j;
      out.push_back({Tok::Kind::Ident, s.substr(i, j - i), l, c});
      adv(j - i);
      continue;
    }
    throw parse_error(std::string("unexpected character '") + ch + "'", l, c);
  }
  out.push_back({Tok::Kind::End, "", line, col});
  return out;
}

CodeP library(const std::string& name) {
  if (name == "k") return K();
  if (name == "s") return S();
  if (name == "suc") return Suc();
  if (name == "rec") return Rec();
  if (name == "I") return I();
  if (name == "add") return add();
  if (name == "mul") return mul();
  if (name == "pred") return pred();
  if (name == "sub") return sub();
  if (name == "iszero") return iszero();
  if (name == "cond") return cond();
  if (name == "eqnum") return eqnum();
  if (name == "pair") return vpair();
  if (name == "fst") return vpr0();
  if (name == "snd") return vpr1();
  if (name == "npair") return npair();
  if (name == "npr0") return npr0();
  if (name == "npr1") return npr1();
  if (name == "omega") return omega();
  return nullptr;
}

class Parser {
 public:
  explicit Parser(std::vector<Tok> toks) : toks_(std::move(toks)) {}

  CodeP top() {
    CodeP t = expr();
    if (peek().kind != Tok::Kind::End) fail("trailing input");
    return t;
  }

 private:
  const Tok& peek() const { return toks_[pos_]; }
  Tok next() { return toks_[pos_++]; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw parse_error(msg, peek().line, peek().col);
  }

  bool starts_atom() const {
    auto k = peek().kind;
    return k == Tok::Kind::Ident || k == Tok::Kind::Num || k == Tok::Kind::LParen ||
           k == Tok::Kind::Lam;
  }

  CodeP expr() {
    if (!starts_atom()) fail("expected a term");
    CodeP t = atom();
    while (starts_atom()) {
      if (peek().kind == Tok::Kind::Lam) return app(t, atom());  // lambda extends right
      t = app(t, atom());
    }
    return t;
  }

  CodeP atom() {
    Tok t = next();
    switch (t.kind) {
      case Tok::Kind::Num:
        try {
          return num(std::stoull(t.text));
        } catch (const std::out_of_range&) {
          throw parse_error("numeral out of range", t.line, t.col);
        }
      case Tok::Kind::Ident: {
        for (auto it = bound_.rbegin(); it != bound_.rend(); ++it)
          if (*it == t.text) return var(t.text);
        if (auto c = library(t.text)) return c;
        throw parse_error("unbound name '" + t.text + "'", t.line, t.col);
      }
      case Tok::Kind::LParen: {
        CodeP e = expr();
        if (peek().kind != Tok::Kind::RParen) fail("expected ')'");
        next();
        return e;
      }
      case Tok::Kind::Lam: {
        std::vector<std::string> xs;
        while (peek().kind == Tok::Kind::Ident) xs.push_back(next().text);
        if (xs.empty()) fail("expected a binder");
        if (peek().kind != Tok::Kind::Dot) fail("expected '.'");
        next();
        for (auto& x : xs) bound_.push_back(x);
        CodeP body = expr();
        bound_.resize(bound_.size() - xs.size());
        return lambda(xs, body);
      }
      default:
        throw parse_error("expected a term", t.line, t.col);
    }
  }

  std::vector<Tok> toks_;
  std::size_t pos_ = 0;
  std::vector<std::string> bound_;
};

}  // namespace

CodeP parse(const std::string& text) {
  Parser p(lex(text));
  return p.top();
}

}  // namespace cwb::pca
