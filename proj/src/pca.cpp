#include "cwb/pca.hpp"

#include <sstream>
#include <unordered_map>

namespace cwb::pca {

namespace {

CodeP make_const(Const c) {
  auto p = std::make_shared<Code>();
  p->kind = Code::Kind::Const;
  p->c = c;
  return p;
}

int arity(Const c) {
  switch (c) {
    case Const::K: return 2;
    case Const::S: return 3;
    case Const::Suc: return 1;
    case Const::Rec: return 3;
  }
  return 0;
}

const char* const_name(Const c) {
  switch (c) {
    case Const::K: return "k";
    case Const::S: return "s";
    case Const::Suc: return "suc";
    case Const::Rec: return "rec";
  }
  return "?";
}

// Splits an application spine. nodes[i] is the prefix applied to args[0..i].
struct Spine {
  CodeP head;
  std::vector<CodeP> args;
  std::vector<CodeP> nodes;
};

Spine unwind(const CodeP& t) {
  Spine sp;
  std::vector<CodeP> rev_nodes;
  CodeP cur = t;
  while (cur->kind == Code::Kind::App) {
    rev_nodes.push_back(cur);
    sp.args.push_back(cur->arg);
    cur = cur->fun;
  }
  sp.head = cur;
  std::reverse(sp.args.begin(), sp.args.end());
  sp.nodes.assign(rev_nodes.rbegin(), rev_nodes.rend());
  return sp;
}

CodeP rebuild(CodeP head, const std::vector<CodeP>& args, std::size_t from = 0) {
  for (std::size_t i = from; i < args.size(); ++i) head = app(head, args[i]);
  return head;
}

}  // namespace

CodeP K() { static CodeP c = make_const(Const::K); return c; }
CodeP S() { static CodeP c = make_const(Const::S); return c; }
CodeP Suc() { static CodeP c = make_const(Const::Suc); return c; }
CodeP Rec() { static CodeP c = make_const(Const::Rec); return c; }

CodeP num(Nat n) {
  auto p = std::make_shared<Code>();
  p->kind = Code::Kind::Num;
  p->n = n;
  return p;
}

CodeP var(const std::string& name) {
  auto p = std::make_shared<Code>();
  p->kind = Code::Kind::Var;
  p->name = name;
  return p;
}

CodeP app(CodeP f, CodeP a) {
  auto p = std::make_shared<Code>();
  p->kind = Code::Kind::App;
  p->fun = std::move(f);
  p->arg = std::move(a);
  return p;
}

CodeP ap(std::initializer_list<CodeP> xs) { return ap(std::vector<CodeP>(xs)); }

CodeP ap(const std::vector<CodeP>& xs) {
  if (xs.empty()) throw std::invalid_argument("ap: empty");
  return rebuild(xs[0], xs, 1);
}

bool equal(const CodeP& a, const CodeP& b) {
  if (a.get() == b.get()) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Code::Kind::Const: return a->c == b->c;
    case Code::Kind::Num: return a->n == b->n;
    case Code::Kind::Var: return a->name == b->name;
    case Code::Kind::App: return equal(a->fun, b->fun) && equal(a->arg, b->arg);
  }
  return false;
}

bool less(const CodeP& a, const CodeP& b) {
  if (a.get() == b.get()) return false;
  if (a->kind != b->kind) return a->kind < b->kind;
  switch (a->kind) {
    case Code::Kind::Const: return a->c < b->c;
    case Code::Kind::Num: return a->n < b->n;
    case Code::Kind::Var: return a->name < b->name;
    case Code::Kind::App:
      if (less(a->fun, b->fun)) return true;
      if (less(b->fun, a->fun)) return false;
      return less(a->arg, b->arg);
  }
  return false;
}

namespace {
void show_into(std::ostringstream& os, const CodeP& c, bool arg_pos) {
  switch (c->kind) {
    case Code::Kind::Const: os << const_name(c->c); return;
    case Code::Kind::Num: os << c->n; return;
    case Code::Kind::Var: os << c->name; return;
    case Code::Kind::App:
      if (arg_pos) os << '(';
      show_into(os, c->fun, false);
      os << ' ';
      show_into(os, c->arg, true);
      if (arg_pos) os << ')';
      return;
  }
}
}  // namespace

std::string show(const CodeP& c) {
  std::ostringstream os;
  show_into(os, c, false);
  return os.str();
}

std::size_t size(const CodeP& c) {
  if (c->kind == Code::Kind::App) return 1 + size(c->fun) + size(c->arg);
  return 1;
}

bool closed(const CodeP& c) {
  switch (c->kind) {
    case Code::Kind::Var: return false;
    case Code::Kind::App: return closed(c->fun) && closed(c->arg);
    default: return true;
  }
}

bool occurs(const std::string& x, const CodeP& c) {
  switch (c->kind) {
    case Code::Kind::Var: return c->name == x;
    case Code::Kind::App: return occurs(x, c->fun) || occurs(x, c->arg);
    default: return false;
  }
}

CodeP subst(const CodeP& c, const std::string& x, const CodeP& v) {
  switch (c->kind) {
    case Code::Kind::Var: return c->name == x ? v : c;
    case Code::Kind::App: {
      auto f = subst(c->fun, x, v);
      auto a = subst(c->arg, x, v);
      if (f.get() == c->fun.get() && a.get() == c->arg.get()) return c;
      return app(f, a);
    }
    default: return c;
  }
}

bool is_value(const CodeP& c) {
  if (c->kind == Code::Kind::Num || c->kind == Code::Kind::Const) return true;
  if (c->kind == Code::Kind::Var) return false;
  Spine sp = unwind(c);
  if (sp.head->kind != Code::Kind::Const) return false;
  if (static_cast<int>(sp.args.size()) >= arity(sp.head->c)) return false;
  for (auto& a : sp.args)
    if (!is_value(a)) return false;
  return true;
}

std::optional<Nat> as_num(const CodeP& c) {
  if (c && c->kind == Code::Kind::Num) return c->n;
  return std::nullopt;
}

// ---------------------------------------------------------------- pairing

Nat pair(Nat a, Nat b) {
  unsigned __int128 s = static_cast<unsigned __int128>(a) + b;
  if (s > (static_cast<unsigned __int128>(1) << 33)) throw overflow("pair: result exceeds 64 bits");
  unsigned __int128 r = s * (s + 1) / 2 + b;
  if (r > static_cast<unsigned __int128>(UINT64_MAX)) throw overflow("pair: result exceeds 64 bits");
  return static_cast<Nat>(r);
}

std::pair<Nat, Nat> unpair(Nat n) {
  // largest w with w(w+1)/2 <= n
  auto tri = [](unsigned __int128 w) { return w * (w + 1) / 2; };
  unsigned __int128 lo = 0, hi = 1;
  while (tri(hi) <= n) hi *= 2;
  while (hi - lo > 1) {
    unsigned __int128 mid = (lo + hi) / 2;
    if (tri(mid) <= n) lo = mid; else hi = mid;
  }
  Nat w = static_cast<Nat>(lo);
  Nat b = n - static_cast<Nat>(tri(lo));
  return {w - b, b};
}

Nat tuple(const std::vector<Nat>& xs) {
  if (xs.empty()) throw std::invalid_argument("tuple: empty");
  Nat acc = xs.back();
  for (std::size_t i = xs.size() - 1; i-- > 0;) acc = pair(xs[i], acc);
  return acc;
}

std::vector<Nat> untuple(Nat n, std::size_t len) {
  if (len == 0) throw std::invalid_argument("untuple: empty");
  std::vector<Nat> out;
  for (std::size_t i = 0; i + 1 < len; ++i) {
    auto [a, b] = unpair(n);
    out.push_back(a);
    n = b;
  }
  out.push_back(n);
  return out;
}

// ---------------------------------------------------------------- oracles

std::optional<Nat> Oracle::query(Nat x) {
  auto it = memo.find(x);
  if (it != memo.end()) return it->second;
  ++queries;
  auto r = fn ? fn(x) : std::nullopt;
  memo.emplace(x, r);
  return r;
}

Oracle undefined_oracle() {
  Oracle o;
  o.fn = [](Nat) -> std::optional<Nat> { return std::nullopt; };
  return o;
}

Oracle table_oracle(std::map<Nat, Nat> table) {
  Oracle o;
  o.fn = [t = std::move(table)](Nat x) -> std::optional<Nat> {
    auto it = t.find(x);
    if (it == t.end()) return std::nullopt;
    return it->second;
  };
  return o;
}

// ---------------------------------------------------------------- machine
//
// Head-first reduction. A saturated prefix of a spine is reduced to a value
// before the remaining arguments are applied; arguments of partial
// applications are normalized, and so is every argument of a saturated
// combinator but the last, so a spine written in full behaves like one built
// an argument at a time; numerals fed to suc, rec and oracles are forced. Every forced subterm is memoized by node identity, so a shared
// subterm is reduced once per evaluation.

namespace {

struct Frame {
  enum class Kind { Memo, ApplyRest, SucArg, RecArg, OracleArg, NormArgs, NormPrefix };
  Kind kind;
  CodeP node;                  // Memo
  std::vector<CodeP> rest;     // ApplyRest; NormArgs: remaining args
  CodeP a, b;                  // RecArg
  std::string name;            // OracleArg
  CodeP head;                  // NormArgs
  std::vector<CodeP> done;     // NormArgs
  bool changed = false;        // NormArgs
  CodeP original;              // NormArgs
  std::vector<CodeP> tail;     // NormPrefix: arguments left as they are
};

class Machine {
 public:
  Machine(Nat budget, OracleBindings* oracles) : budget_(budget), oracles_(oracles) {}

  Outcome run(const CodeP& t) {
    CodeP cur = t;
    CodeP val;
    enter(cur);
    while (true) {
      if (!val) {
        // memo hit on entry
        auto it = memo_.find(cur.get());
        if (it != memo_.end()) {
          val = it->second;
        } else {
          Outcome bad;
          if (!step(cur, val, bad)) return finish(bad);
          if (!val) continue;
        }
      }
      // return val to the top frame
      if (stack_.empty()) {
        Outcome o;
        o.kind = Outcome::Kind::Value;
        o.value = val;
        o.steps = steps_;
        return o;
      }
      Frame f = std::move(stack_.back());
      stack_.pop_back();
      switch (f.kind) {
        case Frame::Kind::Memo:
          memo_.emplace(f.node.get(), val);
          keep_.push_back(f.node);
          break;  // val continues downwards
        case Frame::Kind::ApplyRest:
          cur = rebuild(val, f.rest);
          val.reset();
          break;
        case Frame::Kind::SucArg: {
          auto n = as_num(val);
          if (!n) return stuck("suc applied to a non-numeral");
          if (!tick()) return out_of_budget();
          cur = num(*n + 1);
          val.reset();
          break;
        }
        case Frame::Kind::RecArg: {
          auto n = as_num(val);
          if (!n) return stuck("rec applied to a non-numeral");
          if (!tick()) return out_of_budget();
          if (*n == 0) {
            cur = f.a;
          } else {
            CodeP m = num(*n - 1);
            cur = app(app(f.b, m), ap({Rec(), f.a, f.b, m}));
          }
          val.reset();
          enter(cur);
          break;
        }
        case Frame::Kind::OracleArg: {
          auto n = as_num(val);
          if (!n) return stuck("oracle applied to a non-numeral");
          if (!tick()) return out_of_budget();
          auto r = (*oracles_)[f.name]->query(*n);
          if (!r) {
            Outcome o;
            o.kind = Outcome::Kind::Diverged;
            o.oracle_undefined = true;
            o.steps = steps_;
            o.reason = "oracle " + f.name + " undefined at " + std::to_string(*n);
            return o;
          }
          cur = num(*r);
          val.reset();
          break;
        }
        case Frame::Kind::NormArgs: {
          if (val.get() != f.rest.front().get()) f.changed = true;
          f.done.push_back(val);
          f.rest.erase(f.rest.begin());
          if (f.rest.empty()) {
            val = f.changed ? rebuild(f.head, f.done) : f.original;
          } else {
            cur = f.rest.front();
            val.reset();
            stack_.push_back(std::move(f));
            enter(cur);
          }
          break;
        }
        case Frame::Kind::NormPrefix: {
          remember_value(val);
          f.done.push_back(val);
          f.rest.erase(f.rest.begin());
          if (f.rest.empty()) {
            f.done.insert(f.done.end(), f.tail.begin(), f.tail.end());
            cur = rebuild(f.head, f.done);
            val.reset();
          } else {
            cur = f.rest.front();
            val.reset();
            stack_.push_back(std::move(f));
            enter(cur);
          }
          break;
        }
      }
    }
  }

 private:
  void enter(const CodeP& node) {
    if (node->kind != Code::Kind::App) return;
    Frame m;
    m.kind = Frame::Kind::Memo;
    m.node = node;
    stack_.push_back(std::move(m));
  }

  void remember_value(const CodeP& v) {
    if (v->kind != Code::Kind::App || memo_.count(v.get())) return;
    memo_.emplace(v.get(), v);
    keep_.push_back(v);
  }

  // Values are recognized once and then found in the memo.
  bool known_value(const CodeP& c) {
    if (c->kind != Code::Kind::App) return c->kind != Code::Kind::Var || (oracles_ && oracles_->count(c->name));
    auto it = memo_.find(c.get());
    if (it != memo_.end()) return it->second.get() == c.get();
    if (!is_value(c)) return false;
    remember_value(c);
    return true;
  }

  bool tick() {
    if (steps_ >= budget_) return false;
    ++steps_;
    return true;
  }

  Outcome out_of_budget() {
    Outcome o;
    o.kind = Outcome::Kind::Diverged;
    o.steps = budget_;
    o.reason = "step budget exhausted";
    return o;
  }

  Outcome stuck(const std::string& why) {
    Outcome o;
    o.kind = Outcome::Kind::Stuck;
    o.steps = steps_;
    o.reason = why;
    return o;
  }

  Outcome finish(const Outcome& o) { return o; }

  // Reduces cur by one head step. Sets val when cur is already a value.
  bool step(CodeP& cur, CodeP& val, Outcome& bad) {
    if (cur->kind == Code::Kind::Num || cur->kind == Code::Kind::Const) {
      val = cur;
      return true;
    }
    if (cur->kind == Code::Kind::Var) {
      if (oracles_ && oracles_->count(cur->name)) {  // an unapplied oracle constant
        val = cur;
        return true;
      }
      bad = stuck("free variable " + cur->name);
      return false;
    }
    Spine sp = unwind(cur);
    const CodeP& h = sp.head;
    std::size_t n = sp.args.size();
    if (h->kind == Code::Kind::Num) {
      bad = stuck("numeral " + std::to_string(h->n) + " applied to an argument");
      return false;
    }
    std::size_t r;
    bool is_oracle = false;
    if (h->kind == Code::Kind::Var) {
      if (!oracles_ || !oracles_->count(h->name)) {
        bad = stuck("free variable " + h->name);
        return false;
      }
      r = 1;
      is_oracle = true;
    } else {
      r = static_cast<std::size_t>(arity(h->c));
    }
    if (n > r) {
      Frame f;
      f.kind = Frame::Kind::ApplyRest;
      f.rest.assign(sp.args.begin() + static_cast<long>(r), sp.args.end());
      stack_.push_back(std::move(f));
      cur = sp.nodes[r - 1];
      auto it = memo_.find(cur.get());
      if (it != memo_.end()) {
        val = it->second;
        return true;
      }
      enter(cur);
      return true;
    }
    if (n < r) {
      Frame f;
      f.kind = Frame::Kind::NormArgs;
      f.head = h;
      f.rest = sp.args;
      f.original = cur;
      CodeP first = f.rest.front();
      stack_.push_back(std::move(f));
      cur = first;
      enter(cur);
      return true;
    }
    // saturated
    if (!is_oracle && r > 1) {
      std::size_t pending = 0;
      while (pending < r - 1 && known_value(sp.args[pending])) ++pending;
      if (pending < r - 1) {
        Frame f;
        f.kind = Frame::Kind::NormPrefix;
        f.head = h;
        f.done.assign(sp.args.begin(), sp.args.begin() + static_cast<long>(pending));
        f.rest.assign(sp.args.begin() + static_cast<long>(pending), sp.args.begin() + static_cast<long>(r - 1));
        f.tail.assign(sp.args.begin() + static_cast<long>(r - 1), sp.args.end());
        CodeP first = f.rest.front();
        stack_.push_back(std::move(f));
        cur = first;
        enter(cur);
        return true;
      }
    }
    if (is_oracle) {
      Frame f;
      f.kind = Frame::Kind::OracleArg;
      f.name = h->name;
      stack_.push_back(std::move(f));
      cur = sp.args[0];
      enter(cur);
      return true;
    }
    switch (h->c) {
      case Const::K:
        if (!tick()) { bad = out_of_budget(); return false; }
        cur = sp.args[0];
        // the kept argument may be shared elsewhere
        if (memo_.count(cur.get())) {
          val = memo_.at(cur.get());
        } else {
          enter(cur);
        }
        return true;
      case Const::S:
        if (!tick()) { bad = out_of_budget(); return false; }
        cur = app(app(sp.args[0], sp.args[2]), app(sp.args[1], sp.args[2]));
        return true;
      case Const::Suc: {
        Frame f;
        f.kind = Frame::Kind::SucArg;
        stack_.push_back(std::move(f));
        cur = sp.args[0];
        enter(cur);
        return true;
      }
      case Const::Rec: {
        Frame f;
        f.kind = Frame::Kind::RecArg;
        f.a = sp.args[0];
        f.b = sp.args[1];
        stack_.push_back(std::move(f));
        cur = sp.args[2];
        enter(cur);
        return true;
      }
    }
    return true;
  }

  Nat budget_;
  Nat steps_ = 0;
  OracleBindings* oracles_;
  std::vector<Frame> stack_;
  std::unordered_map<const Code*, CodeP> memo_;
  std::vector<CodeP> keep_;  // keeps memo keys alive so addresses stay unique
};

}  // namespace

Outcome eval(const CodeP& t, Nat budget, OracleBindings* oracles) {
  Machine m(budget, oracles);
  return m.run(t);
}

Outcome apply(const CodeP& f, const CodeP& a, Nat budget, OracleBindings* oracles) {
  return eval(app(f, a), budget, oracles);
}

Outcome apply(const CodeP& f, const std::vector<CodeP>& args, Nat budget,
              OracleBindings* oracles) {
  CodeP t = f;
  for (auto& a : args) t = app(t, a);
  return eval(t, budget, oracles);
}

std::optional<bool> kleene_equal(const Outcome& a, const Outcome& b) {
  auto exhausted = [](const Outcome& o) { return o.diverged() && !o.oracle_undefined; };
  if (a.ok() && b.ok()) return equal(a.value, b.value);
  if (exhausted(a) || exhausted(b)) {
    // one side has a value and the other ran out: cannot decide
    return std::nullopt;
  }
  return a.ok() == b.ok();
}

std::string show(const Outcome& o) {
  switch (o.kind) {
    case Outcome::Kind::Value: return "value(" + show(o.value) + ")";
    case Outcome::Kind::Stuck: return "stuck(" + o.reason + ")";
    case Outcome::Kind::Diverged:
      return "diverged(" + std::to_string(o.steps) + (o.oracle_undefined ? ", oracle" : "") + ")";
  }
  return "?";
}

// ---------------------------------------------------------------- abstraction

// k c only when c is an atom or a value: k applied to any other body would
// force it, where the body itself may be left unevaluated.
CodeP abstract_open(const std::string& x, const CodeP& body) {
  if (body->kind == Code::Kind::Var && body->name == x) return ap({S(), K(), K()});
  if (body->kind != Code::Kind::App || (!occurs(x, body) && is_value(body))) return app(K(), body);
  return ap({S(), abstract_open(x, body->fun), abstract_open(x, body->arg)});
}

CodeP abstract(const std::string& x, const CodeP& body) {
  std::vector<const Code*> todo{body.get()};
  while (!todo.empty()) {
    const Code* c = todo.back();
    todo.pop_back();
    if (c->kind == Code::Kind::Var && c->name != x)
      throw unbound_variable("abstract: unbound variable " + c->name);
    if (c->kind == Code::Kind::App) {
      todo.push_back(c->fun.get());
      todo.push_back(c->arg.get());
    }
  }
  return abstract_open(x, body);
}

CodeP lambda(const std::vector<std::string>& xs, const CodeP& body) {
  CodeP b = body;
  for (std::size_t i = xs.size(); i-- > 0;) b = abstract_open(xs[i], b);
  return b;
}

// ---------------------------------------------------------------- library

CodeP I() {
  static CodeP c = ap({S(), K(), K()});
  return c;
}

CodeP add() {
  static CodeP c = lambda({"y"}, ap({Rec(), var("y"), lambda({"i", "r"}, app(Suc(), var("r")))}));
  return c;
}

CodeP mul() {
  static CodeP c = lambda(
      {"y"}, ap({Rec(), num(0), lambda({"i", "r"}, ap({add(), var("r"), var("y")}))}));
  return c;
}

CodeP pred() {
  static CodeP c = ap({Rec(), num(0), lambda({"i", "r"}, var("i"))});
  return c;
}

CodeP sub() {
  static CodeP c = lambda({"m"}, ap({Rec(), var("m"), lambda({"i", "r"}, app(pred(), var("r")))}));
  return c;
}

CodeP iszero() {
  static CodeP c = ap({Rec(), num(0), lambda({"i", "r"}, num(1))});
  return c;
}

CodeP cond() {
  static CodeP c = lambda({"n", "a", "b"},
                          ap({Rec(), var("a"), lambda({"i", "r"}, var("b")), var("n")}));
  return c;
}

CodeP eqnum() {
  static CodeP c = lambda({"m", "n"}, ap({add(), ap({sub(), var("m"), var("n")}),
                                          ap({sub(), var("n"), var("m")})}));
  return c;
}

namespace {
// tri m = m(m+1)/2
CodeP tri() {
  static CodeP c =
      ap({Rec(), num(0), lambda({"i", "r"}, ap({add(), var("r"), app(Suc(), var("i"))}))});
  return c;
}

// Counts how many m in 1..n satisfy tri m <= n by walking the diagonals:
// w is the diagonal index, kept as a numeral and forced through suc.
// unpair n = (w - b, b) where b = n - tri w.
CodeP diag() {
  // diag n = number of m >= 1 with tri m <= n
  // computed as rec 0 (\i r. cond (sub (tri (suc r)) n) (suc r) r) applied n times:
  // each round advances r while tri (r+1) <= n.
  static CodeP c = lambda(
      {"n"},
      ap({Rec(), num(0),
          lambda({"i", "r"},
                 ap({cond(), ap({sub(), app(tri(), app(Suc(), var("r"))), var("n")}),
                     app(Suc(), var("r")), var("r")})),
          var("n")}));
  return c;
}
}  // namespace

CodeP npair() {
  static CodeP c = lambda({"a", "b"}, ap({add(), var("b"), app(tri(), ap({add(), var("a"), var("b")}))}));
  return c;
}

CodeP npr1() {
  // b = n - tri (diag n)
  static CodeP c = lambda({"n"}, ap({sub(), var("n"), app(tri(), app(diag(), var("n")))}));
  return c;
}

CodeP npr0() {
  // a = diag n - b
  static CodeP c = lambda({"n"}, ap({sub(), app(diag(), var("n")), app(npr1(), var("n"))}));
  return c;
}

CodeP vpair() {
  static CodeP c = lambda({"a", "b", "f"}, ap({var("f"), var("a"), var("b")}));
  return c;
}

CodeP vpr0() {
  static CodeP c = lambda({"p"}, app(var("p"), K()));
  return c;
}

CodeP vpr1() {
  static CodeP c = lambda({"p"}, app(var("p"), app(K(), I())));
  return c;
}

CodeP omega() {
  static CodeP c = [] {
    CodeP w = ap({S(), I(), I()});
    return app(w, w);
  }();
  return c;
}

// ---------------------------------------------------------------- protocol

Outcome eval_oracle(const CodeP& a, Nat b, Oracle& f, Nat budget) {
  std::vector<Nat> args{b};
  Nat used = 0;
  while (true) {
    if (used >= budget) {
      Outcome o;
      o.kind = Outcome::Kind::Diverged;
      o.steps = budget;
      o.reason = "step budget exhausted";
      return o;
    }
    Nat input;
    try {
      input = tuple(args);
    } catch (const overflow&) {
      Outcome o;
      o.kind = Outcome::Kind::Diverged;
      o.steps = used;
      o.reason = "argument tuple exceeds 64 bits";
      return o;
    }
    Outcome r = apply(a, num(input), budget - used);
    used += r.steps;
    if (!r.ok()) {
      r.steps = r.diverged() && !r.oracle_undefined ? budget : used;
      return r;
    }
    auto v = as_num(r.value);
    if (!v) {
      Outcome o;
      o.kind = Outcome::Kind::Stuck;
      o.steps = used;
      o.reason = "protocol violation: result " + show(r.value) + " is not a numeral";
      return o;
    }
    auto [tag, x] = unpair(*v);
    if (tag == 1) {
      Outcome o;
      o.kind = Outcome::Kind::Value;
      o.value = num(x);
      o.steps = used;
      return o;
    }
    if (tag != 0) {
      Outcome o;
      o.kind = Outcome::Kind::Stuck;
      o.steps = used;
      o.reason = "protocol violation: tag " + std::to_string(tag);
      return o;
    }
    ++used;  // each query round costs a step
    auto ans = f.query(x);
    if (!ans) {
      Outcome o;
      o.kind = Outcome::Kind::Diverged;
      o.oracle_undefined = true;
      o.steps = used;
      o.reason = "oracle undefined at " + std::to_string(x);
      return o;
    }
    args.push_back(*ans);
  }
}

}  // namespace cwb::pca
