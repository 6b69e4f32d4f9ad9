#pragma once
// Reference reducer for combinator codes. Plain recursion over an own term
// type, no sharing, no memo tables; used only to cross-check the evaluator.
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cwb/pca.hpp"

namespace oracle {

struct Node;
using NodeP = std::shared_ptr<const Node>;
struct Node {
  enum Kind { K, S, Suc, Rec, Num, App } kind;
  std::uint64_t n = 0;
  NodeP f, a;
};

inline NodeP mk(Node::Kind k, std::uint64_t n = 0, NodeP f = nullptr, NodeP a = nullptr) {
  return std::make_shared<const Node>(Node{k, n, std::move(f), std::move(a)});
}
inline NodeP app(NodeP f, NodeP a) { return mk(Node::App, 0, std::move(f), std::move(a)); }

inline NodeP from_code(const cwb::pca::CodeP& c) {
  using K = cwb::pca::Code::Kind;
  switch (c->kind) {
    case K::Num: return mk(Node::Num, c->n);
    case K::App: return app(from_code(c->fun), from_code(c->arg));
    case K::Const:
      switch (c->c) {
        case cwb::pca::Const::K: return mk(Node::K);
        case cwb::pca::Const::S: return mk(Node::S);
        case cwb::pca::Const::Suc: return mk(Node::Suc);
        case cwb::pca::Const::Rec: return mk(Node::Rec);
      }
      break;
    case K::Var: break;
  }
  throw std::invalid_argument("open code");
}

inline std::string text(const NodeP& t) {
  switch (t->kind) {
    case Node::K: return "k";
    case Node::S: return "s";
    case Node::Suc: return "suc";
    case Node::Rec: return "rec";
    case Node::Num: return std::to_string(t->n);
    case Node::App: {
      std::string arg = text(t->a);
      if (t->a->kind == Node::App) arg = "(" + arg + ")";
      return text(t->f) + " " + arg;
    }
  }
  return "?";
}

enum class Status { Value, OutOfFuel, Stuck };
struct Result {
  Status status;
  NodeP value;
};

class Reducer {
 public:
  explicit Reducer(std::uint64_t fuel) : fuel_(fuel) {}

  Result run(NodeP t) {
    while (true) {
      std::vector<NodeP> args;
      NodeP head = t;
      while (head->kind == Node::App) {
        args.insert(args.begin(), head->a);
        head = head->f;
      }
      if (head->kind == Node::Num) {
        if (args.empty()) return {Status::Value, head};
        return {Status::Stuck, nullptr};
      }
      std::size_t arity = head->kind == Node::K ? 2 : head->kind == Node::Suc ? 1 : 3;
      if (args.size() < arity) {
        NodeP out = head;
        for (auto& a : args) {
          Result r = run(a);
          if (r.status != Status::Value) return r;
          out = app(out, r.value);
        }
        return {Status::Value, out};
      }
      std::vector<NodeP> rest(args.begin() + arity, args.end());
      NodeP next;
      if (fuel_ == 0) return {Status::OutOfFuel, nullptr};
      --fuel_;
      switch (head->kind) {
        case Node::K: next = args[0]; break;
        case Node::S: next = app(app(args[0], args[2]), app(args[1], args[2])); break;
        case Node::Suc: {
          Result r = run(args[0]);
          if (r.status != Status::Value) return r;
          if (r.value->kind != Node::Num) return {Status::Stuck, nullptr};
          next = mk(Node::Num, r.value->n + 1);
          break;
        }
        case Node::Rec: {
          Result r = run(args[2]);
          if (r.status != Status::Value) return r;
          if (r.value->kind != Node::Num) return {Status::Stuck, nullptr};
          std::uint64_t m = r.value->n;
          if (m == 0) {
            next = args[0];
          } else {
            NodeP pred = mk(Node::Num, m - 1);
            next = app(app(args[1], pred), app(app(app(mk(Node::Rec), args[0]), args[1]), pred));
          }
          break;
        }
        default: return {Status::Stuck, nullptr};
      }
      for (auto& a : rest) next = app(next, a);
      t = next;
    }
  }

 private:
  std::uint64_t fuel_;
};

inline Result reduce(const cwb::pca::CodeP& c, std::uint64_t fuel) { return Reducer(fuel).run(from_code(c)); }

// Cantor pairing by walking the diagonals.
inline std::uint64_t cantor(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b, base = 0;
  for (std::uint64_t d = 0; d < s; ++d) base += d + 1;
  return base + b;
}
inline std::pair<std::uint64_t, std::uint64_t> uncantor(std::uint64_t n) {
  std::uint64_t d = 0;
  while (n > d) {
    n -= d + 1;
    ++d;
  }
  return {d - n, n};
}

}  // namespace oracle
