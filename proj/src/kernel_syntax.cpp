#include <algorithm>
#include <cctype>
#include <sstream>

#include "cwb/kernel.hpp"

namespace cwb::kernel {

using K = Term::Kind;

// ---------------------------------------------------------------- printer

namespace {

const std::set<std::string>& keywords();

std::optional<Nat> as_numeral(const TermP& t) {
  Nat n = 0;
  TermP cur = t;
  while (cur->kind == K::Succ) {
    ++n;
    cur = cur->a;
  }
  if (cur->kind != K::Zero) return std::nullopt;
  return n;
}

class Printer {
 public:
  explicit Printer(std::vector<std::string> names) : names_(std::move(names)) {}

  // levels: 0 binders and arrows, 1 products, 2 applications, 3 atoms
  std::string go(const TermP& t, int level) {
    std::string s;
    int mine = 3;
    switch (t->kind) {
      case K::Sort: s = to_string(t->sort); break;
      case K::Var:
        if (t->index < names_.size()) s = names_[names_.size() - 1 - t->index];
        else s = "#" + std::to_string(t->index - names_.size());
        break;
      case K::Pi:
        mine = 0;
        if (!occurs(0, t->b)) s = go(t->a, 1) + " -> " + under("_", t->b, 0);
        else s = binder("Pi", t, ",");
        break;
      case K::Sigma:
        if (!occurs(0, t->b)) {
          mine = 1;
          s = go(t->a, 2) + " * " + under("_", t->b, 1);
        } else {
          mine = 0;
          s = binder("Sig", t, ",");
        }
        break;
      case K::W: mine = 0; s = binder("W", t, ","); break;
      case K::Lam: mine = 0; s = binder("fun", t, " =>"); break;
      case K::App: mine = 2; s = go(t->a, 2) + " " + go(t->b, 3); break;
      case K::Nat: s = "Nat"; break;
      case K::Zero: s = "0"; break;
      case K::Succ:
        if (auto n = as_numeral(t)) {
          s = std::to_string(*n);
        } else {
          mine = 2;
          s = "S " + go(t->a, 3);
        }
        break;
      case K::Fin: mine = 2; s = "Fin " + std::to_string(t->n); break;
      case K::FinEl: mine = 2; s = "fin " + std::to_string(t->k) + " " + std::to_string(t->n); break;
      case K::Propext: s = "propext"; break;
      default: {
        mine = 2;
        s = special(t);
        break;
      }
    }
    return mine < level ? "(" + s + ")" : s;
  }

 private:
  std::vector<std::string> names_;

  std::string fresh(const std::string& base) {
    std::string b = base == "_" || base.empty() ? "x" : base;
    auto taken = [&](const std::string& n) {
      return is_reserved(n) || std::find(names_.begin(), names_.end(), n) != names_.end();
    };
    if (!taken(b)) return b;
    for (int i = 1;; ++i) {
      std::string c = b + std::to_string(i);
      if (!taken(c)) return c;
    }
  }

  std::string under(const std::string& name, const TermP& body, int level) {
    names_.push_back(name);
    std::string s = go(body, level);
    names_.pop_back();
    return s;
  }

  std::string binder(const std::string& kw, const TermP& t, const std::string& sep) {
    std::string x = fresh(t->name);
    return kw + " (" + x + " : " + go(t->a, 0) + ")" + sep + " " + under(x, t->b, 0);
  }

  std::string braces(const TermP& t) { return "{" + go(t, 0) + "}"; }

  std::string special(const TermP& t) {
    auto a3 = [&](const TermP& x) { return go(x, 3); };
    switch (t->kind) {
      case K::Pair: return "pair " + braces(t->a) + " " + a3(t->b) + " " + a3(t->c);
      case K::IndSigma: return "ind_sig " + braces(t->a) + " " + a3(t->b);
      case K::Tree: return "tree " + braces(t->a) + " " + a3(t->b) + " " + a3(t->c);
      case K::IndW: return "ind_w " + braces(t->a) + " " + a3(t->b);
      case K::IndFin: {
        std::string s = "ind_fin " + braces(t->a) + " " + std::to_string(t->n);
        for (auto& c : t->args) s += " " + a3(c);
        return s;
      }
      case K::IndNat: return "ind_nat " + braces(t->a) + " " + a3(t->b) + " " + a3(t->c);
      case K::Id: return "Id " + a3(t->a) + " " + a3(t->b) + " " + a3(t->c);
      case K::Refl: return "refl " + a3(t->a);
      case K::IndId: return "ind_id " + braces(t->a) + " " + a3(t->b);
      case K::Transport: return "transport " + braces(t->a) + " " + a3(t->b) + " " + a3(t->c);
      case K::Trunc: return "Trunc " + a3(t->a);
      case K::TrIn: return "tr " + a3(t->a);
      case K::IndTrunc: return "ind_trunc " + braces(t->a) + " " + a3(t->b) + " " + a3(t->c);
      case K::Quot: return "Quot " + a3(t->a) + " " + a3(t->b);
      case K::Cls: return "cls " + braces(t->a) + " " + a3(t->b);
      case K::QuotAx: return "ax " + braces(t->a);
      case K::IndQuot: return "ind_quot " + braces(t->a) + " " + a3(t->b) + " " + a3(t->c);
      default: return "?";
    }
  }
};

}  // namespace

std::string show(const TermP& t, const std::vector<std::string>& names) {
  return Printer(names).go(t, 0);
}

std::string show(const Context& ctx) {
  std::string out;
  std::vector<std::string> names;
  std::size_t hint = 0;
  for (std::size_t i = 0; i <= ctx.vars.size(); ++i) {
    while (hint < ctx.hints.size() && ctx.hints[hint].depth == i) {
      if (!out.empty()) out += ", ";
      out += "hint " + show(ctx.hints[hint].proof, names);
      ++hint;
    }
    if (i == ctx.vars.size()) break;
    if (!out.empty()) out += ", ";
    out += ctx.vars[i].first + " : " + show(ctx.vars[i].second, names);
    names.push_back(ctx.vars[i].first);
  }
  return out;
}

// ---------------------------------------------------------------- parser

namespace {

struct Token {
  enum class Kind { Ident, Num, Sym, End } kind;
  std::string text;
  std::size_t line, col;
};

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto adv = [&](std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      adv(1);
      continue;
    }
    std::size_t l = line, cl = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' ||
                                src[j] == '\''))
        ++j;
      out.push_back({Token::Kind::Ident, src.substr(i, j - i), l, cl});
      adv(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Token::Kind::Num, src.substr(i, j - i), l, cl});
      adv(j - i);
      continue;
    }
    for (const char* sym : {"=>", "->", "|-"}) {
      if (src.compare(i, 2, sym) == 0) {
        out.push_back({Token::Kind::Sym, sym, l, cl});
        adv(2);
        goto next;
      }
    }
    if (std::string("(){}[],:*").find(c) != std::string::npos) {
      out.push_back({Token::Kind::Sym, std::string(1, c), l, cl});
      adv(1);
      continue;
    }
    throw parse_error(std::string("unexpected character '") + c + "'", l, cl);
  next:;
  }
  out.push_back({Token::Kind::End, "", line, col});
  return out;
}

const std::set<std::string>& keywords() {
  static const std::set<std::string> kw = {
      "Prop", "Set",     "Type",    "Pi",      "Sig",       "W",         "fun",     "Nat",
      "S",    "Fin",     "fin",     "Id",      "refl",      "Trunc",     "tr",      "Quot",
      "cls",  "ax",      "pair",    "tree",    "ind_sig",   "ind_w",     "ind_nat", "ind_fin",
      "ind_id", "ind_trunc", "ind_quot", "transport", "propext", "hint"};
  return kw;
}

}  // namespace

bool is_reserved(const std::string& word) { return keywords().count(word) > 0; }

namespace {

class Parser {
 public:
  Parser(const std::string& src, std::vector<std::string> scope) : toks_(lex(src)), scope_(std::move(scope)) {}

  const Token& peek() const { return toks_[pos_]; }
  bool at_end() const { return peek().kind == Token::Kind::End; }
  bool is_sym(const std::string& s) const { return peek().kind == Token::Kind::Sym && peek().text == s; }
  bool is_ident(const std::string& s) const { return peek().kind == Token::Kind::Ident && peek().text == s; }

  [[noreturn]] void error(const std::string& msg) const {
    throw parse_error(msg + " near '" + peek().text + "'", peek().line, peek().col);
  }
  void expect(const std::string& s) {
    if (!is_sym(s)) error("expected '" + s + "'");
    ++pos_;
  }
  std::string ident() {
    if (peek().kind != Token::Kind::Ident || keywords().count(peek().text)) error("expected identifier");
    return toks_[pos_++].text;
  }
  Nat number() {
    if (peek().kind != Token::Kind::Num) error("expected number");
    return std::stoull(toks_[pos_++].text);
  }

  TermP expr() {
    if (is_ident("fun") || is_ident("Pi") || is_ident("Sig") || is_ident("W")) return binder_expr();
    TermP lhs = product_expr();
    if (is_sym("->")) {
      ++pos_;
      scope_.push_back("");
      TermP rhs = expr();
      scope_.pop_back();
      return pi("_", lhs, rhs);
    }
    return lhs;
  }

  std::vector<ContextEntry> context() {
    std::vector<ContextEntry> out;
    if (at_end()) return out;
    for (;;) {
      if (is_ident("hint")) {
        ++pos_;
        out.push_back({true, "", expr()});
      } else {
        std::string x = ident();
        expect(":");
        out.push_back({false, x, expr()});
        scope_.push_back(x);
      }
      if (at_end()) return out;
      expect(",");
    }
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<std::string> scope_;

  TermP binder_expr() {
    std::string kw = toks_[pos_++].text;
    std::vector<std::pair<std::string, TermP>> bound;
    std::size_t pushed = 0;
    do {
      expect("(");
      std::vector<std::string> xs;
      while (peek().kind == Token::Kind::Ident && !is_sym(":")) xs.push_back(ident());
      if (xs.empty()) error("expected binder name");
      expect(":");
      // the domain is parsed once per name, each in its own scope
      std::size_t start = pos_;
      for (auto& x : xs) {
        pos_ = start;
        TermP dom = expr();
        bound.emplace_back(x, dom);
        scope_.push_back(x);
        ++pushed;
      }
      expect(")");
    } while (is_sym("("));
    expect(kw == "fun" ? "=>" : ",");
    TermP body = expr();
    scope_.resize(scope_.size() - pushed);
    for (auto it = bound.rbegin(); it != bound.rend(); ++it) {
      if (kw == "fun") body = lam(it->first, it->second, body);
      else if (kw == "Pi") body = pi(it->first, it->second, body);
      else if (kw == "Sig") body = sigma(it->first, it->second, body);
      else body = wtype(it->first, it->second, body);
    }
    return body;
  }

  TermP product_expr() {
    TermP lhs = app_expr();
    if (is_sym("*")) {
      ++pos_;
      scope_.push_back("");
      TermP rhs = product_expr();
      scope_.pop_back();
      return sigma("_", lhs, rhs);
    }
    return lhs;
  }

  bool starts_atom() const {
    if (peek().kind == Token::Kind::Num) return true;
    if (peek().kind == Token::Kind::Sym) return peek().text == "(";
    if (peek().kind != Token::Kind::Ident) return false;
    const std::string& t = peek().text;
    return !(t == "fun" || t == "Pi" || t == "Sig" || t == "W" || t == "hint");
  }

  TermP app_expr() {
    if (!starts_atom()) error("expected term");
    TermP t = atom();
    while (starts_atom()) t = app(t, atom());
    return t;
  }

  TermP braced() {
    expect("{");
    TermP t = expr();
    expect("}");
    return t;
  }

  TermP atom() {
    const Token& tok = peek();
    if (tok.kind == Token::Kind::Num) return numeral(number());
    if (is_sym("(")) {
      ++pos_;
      TermP t = expr();
      expect(")");
      return t;
    }
    if (tok.kind != Token::Kind::Ident) error("expected term");
    std::string w = tok.text;
    if (!keywords().count(w)) {
      ++pos_;
      for (std::size_t i = scope_.size(); i-- > 0;)
        if (scope_[i] == w) return var(scope_.size() - 1 - i, w);
      throw parse_error("unbound variable '" + w + "'", tok.line, tok.col);
    }
    ++pos_;
    if (w == "Prop") return sort(Sort::Prop);
    if (w == "Set") return sort(Sort::Set);
    if (w == "Type") return sort(Sort::Type);
    if (w == "Nat") return nat();
    if (w == "propext") return propext();
    if (w == "S") return succ(atom());
    if (w == "Fin") return fin(number());
    if (w == "fin") {
      Nat k = number();
      return fin_el(k, number());
    }
    if (w == "Id") {
      TermP a = atom(), b = atom();
      return id(a, b, atom());
    }
    if (w == "refl") return refl(atom());
    if (w == "Trunc") return trunc(atom());
    if (w == "tr") return tr_in(atom());
    if (w == "Quot") {
      TermP a = atom();
      return quot(a, atom());
    }
    if (w == "cls") {
      TermP q = braced();
      return cls(q, atom());
    }
    if (w == "ax") return quot_ax(braced());
    if (w == "pair" || w == "tree" || w == "ind_nat" || w == "transport" || w == "ind_trunc" ||
        w == "ind_quot") {
      TermP m = braced();
      TermP a = atom();
      TermP b = atom();
      if (w == "pair") return pair(m, a, b);
      if (w == "tree") return tree(m, a, b);
      if (w == "ind_nat") return ind_nat(m, a, b);
      if (w == "transport") return transport(m, a, b);
      if (w == "ind_trunc") return ind_trunc(m, a, b);
      return ind_quot(m, a, b);
    }
    if (w == "ind_sig" || w == "ind_w" || w == "ind_id") {
      TermP m = braced();
      TermP f = atom();
      if (w == "ind_sig") return ind_sigma(m, f);
      if (w == "ind_w") return ind_w(m, f);
      return ind_id(m, f);
    }
    if (w == "ind_fin") {
      TermP m = braced();
      Nat n = number();
      std::vector<TermP> cases;
      for (Nat i = 0; i < n; ++i) cases.push_back(atom());
      return ind_fin(m, n, std::move(cases));
    }
    error("unexpected keyword");
  }
};

}  // namespace

TermP parse_term(const std::string& text, const std::vector<std::string>& scope) {
  Parser p(text, scope);
  TermP t = p.expr();
  if (!p.at_end()) p.error("trailing input");
  return t;
}

std::vector<ContextEntry> parse_context(const std::string& text) {
  Parser p(text, {});
  return p.context();
}

// ---------------------------------------------------------------- corpus

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// first ':' outside brackets
std::size_t top_colon(const std::string& s) {
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '(' || c == '{' || c == '[') ++depth;
    else if (c == ')' || c == '}' || c == ']') --depth;
    else if (c == ':' && depth == 0) return i;
  }
  return std::string::npos;
}

}  // namespace

std::vector<Judgment> parse_corpus(const std::string& text) {
  // join continuation lines (leading whitespace) onto their entry
  std::vector<std::pair<std::size_t, std::string>> entries;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (std::isspace(static_cast<unsigned char>(line[0])) && !entries.empty()) entries.back().second += " " + t;
    else entries.emplace_back(lineno, t);
  }
  std::vector<Judgment> out;
  for (auto& [ln, e] : entries) {
    Judgment j;
    j.line = ln;
    std::istringstream ss(e);
    std::string kw;
    ss >> kw >> j.label;
    if (kw == "assert-type") j.expect_accept = true;
    else if (kw == "assert-fail") j.expect_accept = false;
    else throw parse_error("unknown directive '" + kw + "'", ln, 1);
    std::string rest;
    std::getline(ss, rest);
    rest = trim(rest);
    if (rest.empty() || rest[0] != '[') throw parse_error("expected rule list", ln, 1);
    auto close = rest.find(']');
    if (close == std::string::npos) throw parse_error("unterminated rule list", ln, 1);
    std::istringstream rules(rest.substr(1, close - 1));
    std::string r;
    while (std::getline(rules, r, ',')) {
      r = trim(r);
      if (!r.empty()) j.rules.push_back(r);
    }
    rest = trim(rest.substr(close + 1));
    if (rest.empty() || rest[0] != ':') throw parse_error("expected ':' after rule list", ln, 1);
    rest = rest.substr(1);
    auto turn = rest.find("|-");
    if (turn == std::string::npos) throw parse_error("expected '|-'", ln, 1);
    j.ctx_text = trim(rest.substr(0, turn));
    std::string judg = rest.substr(turn + 2);
    auto colon = top_colon(judg);
    if (colon == std::string::npos) throw parse_error("expected ': type'", ln, 1);
    j.term_text = trim(judg.substr(0, colon));
    j.type_text = trim(judg.substr(colon + 1));
    out.push_back(std::move(j));
  }
  return out;
}

JudgmentResult run_judgment(const Judgment& j, const Options& opt) {
  JudgmentResult res;
  res.judgment = j;
  Context ctx;
  try {
    auto entries = parse_context(j.ctx_text);
    res.verdict = build_context(entries, ctx, opt);
    if (res.verdict.accepted) {
      TermP term = parse_term(j.term_text, ctx.names());
      TermP type = parse_term(j.type_text, ctx.names());
      auto ctx_rules = res.verdict.rules_used;
      res.verdict = check(ctx, term, type, opt);
      res.verdict.rules_used.insert(ctx_rules.begin(), ctx_rules.end());
    }
  } catch (const parse_error& e) {
    res.verdict = Verdict{};
    res.verdict.rule = "parse";
    res.verdict.reason = e.what();
    res.detail = "parse error: " + std::string(e.what());
    res.matches = false;
    return res;
  }
  if (j.expect_accept) {
    if (!res.verdict.accepted) {
      res.detail = "rejected by " + res.verdict.rule + ": " + res.verdict.reason;
      return res;
    }
    std::vector<std::string> missing;
    for (auto& r : j.rules)
      if (!res.verdict.rules_used.count(r)) missing.push_back(r);
    if (!missing.empty()) {
      res.detail = "derivation does not use:";
      for (auto& m : missing) res.detail += " " + m;
      return res;
    }
    res.matches = true;
    res.detail = "accepted";
  } else {
    if (res.verdict.accepted) {
      res.detail = "unexpectedly accepted";
      return res;
    }
    if (!j.rules.empty() && j.rules.front() != res.verdict.rule) {
      res.detail = "rejected by " + res.verdict.rule + ", expected " + j.rules.front() + ": " +
                   res.verdict.reason;
      return res;
    }
    res.matches = true;
    res.detail = "rejected by " + res.verdict.rule + ": " + res.verdict.reason;
  }
  return res;
}

}  // namespace cwb::kernel
