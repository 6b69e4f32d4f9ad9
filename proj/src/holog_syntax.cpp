#include <cctype>
#include <sstream>

#include "cwb/holog.hpp"

namespace cwb::holog {

// ---------------------------------------------------------------- printing

namespace {

std::optional<Nat> numeral_value(const TermP& t) {
  Nat n = 0;
  const Term* cur = t.get();
  while (cur->kind == Term::Kind::Succ) {
    ++n;
    cur = cur->a.get();
  }
  if (cur->kind == Term::Kind::Zero) return n;
  return std::nullopt;
}

const char* const_text(pca::Const c) {
  switch (c) {
    case pca::Const::K: return "k";
    case pca::Const::S: return "s";
    case pca::Const::Suc: return "suc";
    case pca::Const::Rec: return "rec";
  }
  return "?";
}

void show_formula(std::ostringstream& os, const FormulaP& f, int ctx);

// Levels: 1 sum, 2 product, 3 application, 4 successor operand.
void show_term(std::ostringstream& os, const TermP& t, int ctx) {
  auto wrap = [&](int level, auto&& body) {
    bool p = ctx > level;
    if (p) os << '(';
    body();
    if (p) os << ')';
  };
  switch (t->kind) {
    case Term::Kind::Var:
      os << t->name;
      if (t->sort > 0) os << ':' << t->sort;
      return;
    case Term::Kind::Zero: os << '0'; return;
    case Term::Kind::Succ:
      if (auto n = numeral_value(t)) {
        os << *n;
        return;
      }
      wrap(3, [&] {
        os << "S ";
        show_term(os, t->a, 4);
      });
      return;
    case Term::Kind::Add:
      wrap(1, [&] {
        show_term(os, t->a, 1);
        os << " + ";
        show_term(os, t->b, 2);
      });
      return;
    case Term::Kind::Mul:
      wrap(2, [&] {
        show_term(os, t->a, 2);
        os << " * ";
        show_term(os, t->b, 3);
      });
      return;
    case Term::Kind::App:
      wrap(3, [&] {
        show_term(os, t->a, 3);
        os << " @ ";
        show_term(os, t->b, 4);
      });
      return;
    case Term::Kind::Const: os << const_text(t->c); return;
    case Term::Kind::Fun:
      os << t->name << '(';
      for (std::size_t i = 0; i < t->args.size(); ++i) {
        if (i) os << ", ";
        show_term(os, t->args[i], 0);
      }
      os << ')';
      return;
    case Term::Kind::Eps: {
      // short form when the implicit parameters and arguments are recovered
      bool short_form = false;
      if (t->body) {
        std::vector<std::string> implicit;
        for (auto& [x, s] : free_vars(t->body))
          if (x != t->name) implicit.push_back(x);
        short_form = implicit == t->params;
        for (std::size_t i = 0; short_form && i < t->args.size(); ++i)
          short_form = t->args[i]->kind == Term::Kind::Var && t->args[i]->name == t->params[i] &&
                       t->args[i]->sort == 0;
      }
      os << "[eps " << t->name;
      if (!short_form) {
        os << " |";
        for (auto& p : t->params) os << ' ' << p;
      }
      os << " . ";
      show_formula(os, t->body, 0);
      os << ']';
      if (!short_form) {
        os << '(';
        for (std::size_t i = 0; i < t->args.size(); ++i) {
          if (i) os << ", ";
          show_term(os, t->args[i], 0);
        }
        os << ')';
      }
      return;
    }
  }
}

// Levels: 0 top, 1 implication, 2 disjunction, 3 conjunction, 4 operand.
void show_formula(std::ostringstream& os, const FormulaP& f, int ctx) {
  auto wrap = [&](int level, auto&& body) {
    bool p = ctx > level;
    if (p) os << '(';
    body();
    if (p) os << ')';
  };
  switch (f->kind) {
    case Formula::Kind::Eq:
      show_term(os, f->a, 0);
      os << " = ";
      show_term(os, f->b, 0);
      return;
    case Formula::Kind::Elem:
      show_term(os, f->a, 0);
      os << " in ";
      show_term(os, f->b, 0);
      return;
    case Formula::Kind::Defined:
      show_term(os, f->a, 4);
      os << '!';
      return;
    case Formula::Kind::Rel:
      os << f->name << '(';
      for (std::size_t i = 0; i < f->args.size(); ++i) {
        if (i) os << ", ";
        show_term(os, f->args[i], 0);
      }
      os << ')';
      return;
    case Formula::Kind::Bot: os << "bot"; return;
    case Formula::Kind::Top: os << "top"; return;
    case Formula::Kind::Imp:
      wrap(1, [&] {
        show_formula(os, f->l, 2);
        os << " -> ";
        show_formula(os, f->r, 1);
      });
      return;
    case Formula::Kind::Or:
      wrap(2, [&] {
        show_formula(os, f->l, 2);
        os << " \\/ ";
        show_formula(os, f->r, 3);
      });
      return;
    case Formula::Kind::And:
      wrap(3, [&] {
        show_formula(os, f->l, 3);
        os << " /\\ ";
        show_formula(os, f->r, 4);
      });
      return;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      wrap(1, [&] {
        os << (f->kind == Formula::Kind::Exists ? "exists " : "forall ") << f->name;
        if (f->sort > 0) os << ':' << f->sort;
        if (f->range) os << " <= " << *f->range;
        os << ". ";
        show_formula(os, f->l, 1);
      });
      return;
  }
}

}  // namespace

std::string show(const TermP& t) {
  std::ostringstream os;
  show_term(os, t, 0);
  return os.str();
}

std::string show(const FormulaP& f) {
  std::ostringstream os;
  show_formula(os, f, 0);
  return os.str();
}

// ---------------------------------------------------------------- parsing

namespace {

struct Tok {
  enum class Kind { Ident, Num, Sym, End } kind;
  std::string text;
  std::size_t pos;
};

std::vector<Tok> lex(const std::string& s) {
  static const char* syms[] = {"<->", "->", "\\/", "/\\", "!=", "<=", "=", "!", "~", "+", "*",
                               "@",   "(",  ")",   "[",   "]",  "|",  ".", ",", ":"};
  std::vector<Tok> out;
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char ch = static_cast<unsigned char>(s[i]);
    if (std::isspace(ch)) { ++i; continue; }
    if (std::isdigit(ch)) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::Kind::Num, s.substr(i, j - i), i});
      i = j;
      continue;
    }
    if (std::isalpha(ch) || ch == '_') {
      std::size_t j = i;
      while (j < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '\''))
        ++j;
      out.push_back({Tok::Kind::Ident, s.substr(i, j - i), i});
      i = j;
      continue;
    }
    bool matched = false;
    for (const char* sym : syms) {
      std::string sy(sym);
      if (s.compare(i, sy.size(), sy) == 0) {
        out.push_back({Tok::Kind::Sym, sy, i});
        i += sy.size();
        matched = true;
        break;
      }
    }
    if (!matched) throw syntax_error("unexpected character '" + std::string(1, s[i]) + "' at " + std::to_string(i));
  }
  out.push_back({Tok::Kind::End, "", s.size()});
  return out;
}

bool reserved(const std::string& s) {
  return s == "S" || s == "k" || s == "s" || s == "suc" || s == "rec" || s == "in" ||
         s == "forall" || s == "exists" || s == "bot" || s == "top" || s == "eps";
}

class Parser {
 public:
  explicit Parser(std::vector<Tok> t) : toks_(std::move(t)) {}

  FormulaP formula_top() {
    auto f = formula();
    expect_end();
    return f;
  }

  TermP term_top() {
    auto t = sum();
    expect_end();
    return t;
  }

 private:
  const Tok& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool is_sym(const std::string& s, std::size_t k = 0) const {
    return peek(k).kind == Tok::Kind::Sym && peek(k).text == s;
  }
  bool is_ident(const std::string& s) const {
    return peek().kind == Tok::Kind::Ident && peek().text == s;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw syntax_error(msg + " at " + std::to_string(peek().pos));
  }
  void expect_sym(const std::string& s) {
    if (!is_sym(s)) fail("expected '" + s + "'");
    ++pos_;
  }
  void expect_end() {
    if (peek().kind != Tok::Kind::End) fail("trailing input");
  }

  int scoped_sort(const std::string& x) const {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
      if (it->first == x) return it->second;
    return -1;
  }

  FormulaP formula() {
    auto l = disj();
    if (is_sym("->")) {
      ++pos_;
      return imp(l, formula());
    }
    if (is_sym("<->")) {
      ++pos_;
      return iff(l, disj());
    }
    return l;
  }

  FormulaP disj() {
    auto l = conj();
    while (is_sym("\\/")) {
      ++pos_;
      l = or_(l, conj());
    }
    return l;
  }

  FormulaP conj() {
    auto l = unary();
    while (is_sym("/\\")) {
      ++pos_;
      l = and_(l, unary());
    }
    return l;
  }

  FormulaP unary() {
    if (is_sym("~")) {
      ++pos_;
      return neg(unary());
    }
    if (is_ident("forall") || is_ident("exists")) return quantifier();
    if (is_ident("bot")) { ++pos_; return bot(); }
    if (is_ident("top")) { ++pos_; return top(); }
    if (is_sym("(")) {
      std::size_t save = pos_;
      auto saved_scope = scope_;
      try {
        ++pos_;
        auto f = formula();
        expect_sym(")");
        static const char* term_ops[] = {"+", "*", "@", "=", "!=", "!"};
        bool term_follows = is_ident("in");
        for (auto* op : term_ops) term_follows |= is_sym(op);
        if (!term_follows) return f;
      } catch (const syntax_error&) {
      }
      pos_ = save;
      scope_ = saved_scope;
    }
    return atom();
  }

  FormulaP quantifier() {
    bool ex = is_ident("exists");
    ++pos_;
    if (peek().kind != Tok::Kind::Ident || reserved(peek().text)) fail("expected a variable");
    std::string x = peek().text;
    ++pos_;
    int sort = 0;
    if (is_sym(":")) {
      ++pos_;
      sort = number_as_int();
    }
    std::optional<Nat> range;
    if (is_sym("<=")) {
      ++pos_;
      range = number();
    }
    expect_sym(".");
    scope_.emplace_back(x, sort);
    auto body = formula();
    scope_.pop_back();
    return ex ? exists(x, sort, body, range) : forall(x, sort, body, range);
  }

  Nat number() {
    if (peek().kind != Tok::Kind::Num) fail("expected a number");
    try {
      Nat n = std::stoull(peek().text);
      ++pos_;
      return n;
    } catch (const std::out_of_range&) {
      fail("number out of range");
    }
  }

  int number_as_int() {
    Nat n = number();
    if (n > 64) fail("sort too large");
    return static_cast<int>(n);
  }

  FormulaP atom() {
    TermP t = sum();
    if (is_sym("=")) {
      ++pos_;
      return eq(t, sum());
    }
    if (is_sym("!=")) {
      ++pos_;
      return neq(t, sum());
    }
    if (is_ident("in")) {
      ++pos_;
      return elem(t, sum());
    }
    if (is_sym("!")) {
      ++pos_;
      return defined(t);
    }
    if (t->kind == Term::Kind::Fun) return rel(t->name, t->args);
    fail("expected a formula");
  }

  TermP sum() {
    auto l = prod();
    while (is_sym("+")) {
      ++pos_;
      l = add(l, prod());
    }
    return l;
  }

  TermP prod() {
    auto l = appl();
    while (is_sym("*")) {
      ++pos_;
      l = mul(l, appl());
    }
    return l;
  }

  TermP appl() {
    auto l = succ_term();
    while (is_sym("@")) {
      ++pos_;
      l = app(l, succ_term());
    }
    return l;
  }

  TermP succ_term() {
    if (is_ident("S")) {
      ++pos_;
      return succ(succ_term());
    }
    return atom_term();
  }

  std::vector<TermP> args() {
    std::vector<TermP> out;
    expect_sym("(");
    if (!is_sym(")")) {
      out.push_back(sum());
      while (is_sym(",")) {
        ++pos_;
        out.push_back(sum());
      }
    }
    expect_sym(")");
    return out;
  }

  TermP atom_term() {
    const Tok& t = peek();
    if (t.kind == Tok::Kind::Num) return numeral(number());
    if (t.kind == Tok::Kind::Sym && t.text == "(") {
      ++pos_;
      auto e = sum();
      expect_sym(")");
      return e;
    }
    if (t.kind == Tok::Kind::Sym && t.text == "[") return eps_term();
    if (t.kind != Tok::Kind::Ident) fail("expected a term");
    std::string name = t.text;
    if (name == "k") { ++pos_; return constant(pca::Const::K); }
    if (name == "s") { ++pos_; return constant(pca::Const::S); }
    if (name == "suc") { ++pos_; return constant(pca::Const::Suc); }
    if (name == "rec") { ++pos_; return constant(pca::Const::Rec); }
    if (reserved(name)) fail("unexpected '" + name + "'");
    ++pos_;
    if (is_sym("(")) return fun(name, args());
    int sort = scoped_sort(name);
    if (is_sym(":")) {
      ++pos_;
      int given = number_as_int();
      if (sort >= 0 && sort != given) fail("sort annotation disagrees with binder of " + name);
      sort = given;
    }
    return var(name, sort < 0 ? 0 : sort);
  }

  TermP eps_term() {
    expect_sym("[");
    if (!is_ident("eps")) fail("expected 'eps'");
    ++pos_;
    if (peek().kind != Tok::Kind::Ident || reserved(peek().text)) fail("expected a variable");
    std::string y = peek().text;
    ++pos_;
    std::optional<std::vector<std::string>> params;
    if (is_sym("|")) {
      ++pos_;
      params.emplace();
      while (peek().kind == Tok::Kind::Ident) {
        params->push_back(peek().text);
        ++pos_;
      }
    }
    expect_sym(".");
    // the body sees only its own parameters
    auto saved = scope_;
    scope_.clear();
    auto body = formula();
    scope_ = saved;
    expect_sym("]");
    if (!params) return eps(y, body);
    auto a = args();
    return eps_at(y, *params, body, a);
  }

  std::vector<Tok> toks_;
  std::size_t pos_ = 0;
  std::vector<std::pair<std::string, int>> scope_;
};

}  // namespace

FormulaP parse(const std::string& text) {
  Parser p(lex(text));
  return p.formula_top();
}

TermP parse_term(const std::string& text) {
  Parser p(lex(text));
  return p.term_top();
}

}  // namespace cwb::holog
