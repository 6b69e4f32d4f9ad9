#pragma once
// Realizability semantics: hereditarily finite sets with the cumulative
// embeddings, PERs, assemblies with budgeted realizability, the type-former
// constructions, tracker search, and the denotation of kernel judgments.
//
// Infinite objects are intensional. Every assembly exposes a bounded
// enumeration (the "world") and finite realizer samples; clauses that
// quantify over realizers range over those samples.
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cwb/kernel.hpp"
#include "cwb/pca.hpp"
#include "cwb/tri.hpp"

namespace cwb::model {

using pca::CodeP;
using pca::Nat;

struct Assembly;
using AssemblyP = std::shared_ptr<const Assembly>;

struct Elem;
using ElemP = std::shared_ptr<const Elem>;

struct Elem {
  enum class Kind { Nat, Set, Class, Pair, Fun, Tree, Type };
  Kind kind = Kind::Nat;
  Nat n = 0;                  // Nat value; Class representative
  std::string tag;            // Class: name of its PER
  std::vector<ElemP> items;   // Set members, sorted and unique
  ElemP a, b;                 // Pair components; Tree label in a
  // Tree: (branch element, subtree) sorted by branch. Fun: graph over the
  // enumerated domain, filled on construction when the domain is finite.
  std::vector<std::pair<ElemP, ElemP>> graph;
  std::function<ElemP(const ElemP&)> fn;  // Fun
  AssemblyP dom;                          // Fun domain
  AssemblyP type;                         // Type
};

ElemP nat_elem(Nat n);
ElemP set_elem(std::vector<ElemP> items);
ElemP class_elem(Nat rep, const std::string& tag);
ElemP star();  // the point of the singleton, the class of 0 in a total PER
ElemP pair_elem(ElemP a, ElemP b);
ElemP fun_elem(AssemblyP dom, std::function<ElemP(const ElemP&)> fn);
ElemP tree_elem(ElemP label, std::vector<std::pair<ElemP, ElemP>> children);
ElemP type_elem(AssemblyP type);

// Structural order; functions compare by graph over their domain.
int compare(const ElemP& x, const ElemP& y);
struct ElemLess {
  bool operator()(const ElemP& x, const ElemP& y) const { return compare(x, y) < 0; }
};
// Semantic equality: types compare as subsingletons by inhabitation, functions
// pointwise over the domain enumeration.
Tri equal(const ElemP& x, const ElemP& y);
std::string show(const ElemP& e);
ElemP apply(const ElemP& f, const ElemP& x);

class unsupported : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class resource_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---- bounds of the finite world ----
struct World {
  Nat budget = 100000;      // per application
  Nat nat_bound = 64;       // the naturals are enumerated as 0..nat_bound
  Nat sample_bound = 8;     // realizer samples of infinite classes
  Nat set_base = 8;         // P(N) is enumerated as subsets of 0..set_base-1
  std::size_t tree_depth = 3;
  std::size_t max_elements = 4096;
  std::size_t code_search_size = 3;  // leaves of brute-force tracker candidates
};

// ---- sets of the cumulative hierarchy ----
struct SemSet {
  int level = 0;
  std::function<Tri(const ElemP&)> member;
  std::function<std::vector<ElemP>()> enumerate;  // empty when not listable
};

bool at_level(const ElemP& x, int n);
// iota_0(x) = {x}, iota_{n+1}(X) = {iota_n(x) | x in X}
ElemP iota(int n, const ElemP& x);
ElemP lift(const ElemP& x, int from, int to);
// <A,B> at level n: Cantor pairs at level 0, tagged disjoint union above.
ElemP set_pair(int n, const ElemP& a, const ElemP& b);
// P^n(N) restricted to subsets built from 0..base-1.
SemSet power_set(int n, Nat base);

// ---- partial equivalence relations ----
struct Per {
  std::string name;
  std::function<Tri(Nat, Nat)> relation;
  Nat sample = 0;  // candidates are 0..sample-1
  bool classes_exhaustive = false;  // every class has a sampled member

  std::vector<Nat> dom() const;
  std::vector<Nat> class_of(Nat n) const;
  std::vector<std::vector<Nat>> quotient() const;
  // Least sampled representative of the class of n.
  std::optional<Nat> representative(Nat n) const;

  static Per fin(Nat n);
  static Per nat(Nat sample);
  static Per parity(Nat sample);
  static Per total(Tri inhabited, Nat sample = 4);
};

// ---- assemblies ----
enum class Category { Subsing, Per, Assem };
std::string to_string(Category c);

struct Assembly {
  int level = 1;
  Category category = Category::Assem;
  std::string name;
  std::function<Tri(const ElemP&)> member;
  std::function<std::vector<ElemP>()> list;
  bool complete = true;  // the enumeration is the whole domain
  std::function<Tri(const CodeP&, const ElemP&)> realizes;
  std::function<std::optional<CodeP>(const ElemP&)> find_realizer;
  std::function<std::vector<CodeP>(const ElemP&)> samples;
  // A code sending every sampled realizer to a numeral, with distinct
  // elements getting disjoint values.
  std::optional<CodeP> key;
  std::function<Tri()> inhabited_fn;  // optional shortcut
  World world;

  const std::vector<ElemP>& enumerate() const;
  Tri inhabited() const;

 private:
  mutable std::once_flag once_;
  mutable std::vector<ElemP> cache_;
};

using Family = std::function<AssemblyP(const ElemP&)>;

AssemblyP nabla(const SemSet& s, const World& w = {});
AssemblyP nabla_subsing(const World& w = {});
AssemblyP nabla_per(const World& w = {});
AssemblyP per_assembly(const Per& r, const World& w = {});
AssemblyP fin(Nat n, const World& w = {});
AssemblyP nat(const World& w = {});
AssemblyP subsingleton(Tri inhabited, const World& w = {});

AssemblyP sigma(AssemblyP dom, Family fam, const World& w = {});
AssemblyP pi(AssemblyP dom, Family fam, const World& w = {});
AssemblyP wtype(AssemblyP dom, Family fam, const World& w = {});
AssemblyP subsing_eq(const AssemblyP& a, const ElemP& x, const ElemP& y, const World& w = {});
AssemblyP trunc(const AssemblyP& a, const World& w = {});
using Relation = std::function<AssemblyP(const ElemP&, const ElemP&)>;
AssemblyP quot(AssemblyP a, Relation r, const World& w = {});

Per embed_subsing_to_per(const AssemblyP& s);
AssemblyP embed_per_to_assembly(const Per& r, const World& w = {});

// W elements as sets of paths <a0,b0,a1,...,an>.
using Path = std::vector<ElemP>;
std::vector<Path> paths(const ElemP& tree);
struct TreeCheck {
  bool labelled = false, inhabited = false, downward_closed = false, complete = false,
       consistent = false, well_founded = false;
  bool ok() const {
    return labelled && inhabited && downward_closed && complete && consistent && well_founded;
  }
};
TreeCheck check_tree(const std::vector<Path>& tree, const AssemblyP& a, const Family& b);

// ---- morphisms and trackers ----
struct SemMorphism {
  AssemblyP dom;
  Family cod;  // constant for non-dependent maps
  std::function<ElemP(const ElemP&)> map;
  std::optional<CodeP> tracker;
};
// For every enumerated A and sampled a |- A: tracker a is defined and
// realizes map(A).
Tri tracks(const SemMorphism& m, const CodeP& tracker);
// The hint in m.tracker, constants, identity, lookup tables over the domain
// key, then small codes.
std::optional<CodeP> find_tracker(const SemMorphism& m);
std::vector<CodeP> small_codes(std::size_t leaves);

// lambda x. table(key x) with a default for unlisted keys
CodeP table_code(const CodeP& key, const std::vector<std::pair<Nat, CodeP>>& entries,
                 const CodeP& fallback);
CodeP normal(const CodeP& c, Nat budget);  // evaluates to a value or throws

struct Iso {
  AssemblyP target;
  CodeP to, from;
  std::vector<std::pair<ElemP, ElemP>> bijection;
};
// Finite assemblies only: an isomorphism onto a subsingleton (at most one
// element) or onto fin(m), with both trackers found by search.
std::optional<Iso> iso_to_small(const AssemblyP& a, Category target);

// ---- power types and the canonical bijections ----
AssemblyP power_assembly(int n, const World& w);  // [[P^n N]]
ElemP g(int n, const ElemP& x, const World& w);   // P^n(N) -> [[P^n N]]
ElemP g_inv(int n, const ElemP& f, const World& w);

// ---- denotation of kernel judgments ----
using Env = std::vector<ElemP>;  // one value per context entry, outermost first

AssemblyP denote_context(const kernel::Context& ctx, const World& w);
ElemP context_point(const Env& env);  // <<<*, x0>, x1>, ...>
ElemP denote(const kernel::Context& ctx, const Env& env, const kernel::TermP& t, const World& w);
AssemblyP denote_type(const kernel::Context& ctx, const Env& env, const kernel::TermP& t,
                      const World& w);
// Realizer of the context point built from the realizers of the entries.
std::optional<CodeP> compile_tracker(const kernel::Context& ctx, const kernel::TermP& t);
SemMorphism denote_morphism(const kernel::Context& ctx, const kernel::TermP& t,
                            const kernel::TermP& type, const World& w);

}  // namespace cwb::model
