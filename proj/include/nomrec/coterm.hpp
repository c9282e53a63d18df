#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nomrec/perm.hpp"
#include "nomrec/term.hpp"
#include "nomrec/var.hpp"

namespace nomrec {

// Possibly-infinite lambda-terms as coalgebras: a state space with a
// destructor assigning each state a variable, an application of two states,
// or an abstraction of a state. A CoTerm is one coalgebra plus a root state.
// Regular coterms (finitely many reachable states) support exact algorithms:
// alpha-bisimulation, greatest-fixpoint freshness, free variables. Everything
// else falls back to depth-bounded views.
using CoState = std::uint64_t;

struct CoV {
  Var x;
};
struct CoA {
  CoState fn, arg;
};
struct CoL {
  Var binder;
  CoState body;
};
using CoStep = std::variant<CoV, CoA, CoL>;

class CoTerm {
 public:
  CoTerm() = default;  // empty handle; using it is a bug

  // Finite coalgebra given as a table indexed 0..n-1. Validates every state
  // reference and the root; the result is regular.
  static CoTerm from_table(std::vector<CoStep> table, CoState root);
  // Arbitrary destructor function. The caller vouches for the regular flag;
  // a wrong true flag surfaces as a state-cap error in the exact algorithms.
  static CoTerm from_fn(std::function<CoStep(CoState)> dest, CoState root,
                        bool regular);

  bool valid() const { return static_cast<bool>(dest_); }
  bool regular() const { return regular_; }
  CoState root() const { return root_; }
  CoStep step(CoState s) const { return dest_(s); }
  CoStep step() const { return dest_(root_); }
  CoTerm at(CoState s) const;  // same coalgebra, new root

  // Breadth-first reachable state table / mentioned variables (leaf variables
  // and binders). Both require a regular coterm and throw
  // std::invalid_argument otherwise; a regular flag that turns out to allow
  // more than the internal state cap raises std::logic_error.
  std::map<CoState, CoStep> reachable() const;
  std::set<Var> mentioned() const;

 private:
  std::function<CoStep(CoState)> dest_;
  CoState root_ = 0;
  bool regular_ = false;
};

// Injective-up-to-alpha embedding of finite terms.
CoTerm embed(const Term& t);

// Structural pairing combinators. Regular inputs yield a regular result with
// concatenated state tables; any non-regular input yields a lazy pairing.
CoTerm co_app(const CoTerm& fn, const CoTerm& arg);
CoTerm co_lam(Var binder, const CoTerm& body);

// Canonical serialization of the reachable coalgebra, states relabeled in
// breadth-first discovery order. Equal keys mean isomorphic pointed
// coalgebras (hence bisimilar coterms; the converse need not hold). Requires
// a regular coterm and throws std::invalid_argument otherwise.
std::string co_key(const CoTerm& t);

// Prints the first `depth` constructor layers, with "..." at each cut.
// Abstractions print as "\x. body", applications always parenthesized.
std::string truncate(const CoTerm& t, int depth,
                     const NameTable* names = nullptr);

// Line-oriented coalgebra source:
//   state <name> = V <var>
//   state <name> = A <name> <name>
//   state <name> = L <var> <name>
//   root <name>
// Blank lines and lines starting with '#' are skipped. Cycles are permitted;
// every referenced state must be defined and the root line is required.
// Variable identifiers are interned into names. states_out, when given,
// receives the name -> state mapping. Throws std::invalid_argument on
// malformed or inconsistent input.
CoTerm parse_coterm_spec(const std::string& text, NameTable& names,
                         std::map<std::string, CoState>* states_out = nullptr);

// Destructor views. The abstraction case hands out the canonical stored pair
// plus capture-avoiding extraction, mirroring the finite-term DestL.
struct CoDestV {
  Var x;
};
struct CoDestA {
  CoTerm fn, arg;
};
class CoDestL {
 public:
  CoDestL(Var binder, CoTerm body)
      : x_(binder), body_(std::move(body)) {}
  Var stored_binder() const { return x_; }
  CoTerm stored_body() const { return body_; }
  // Keeps the stored binder when it is not in avoid; otherwise swaps in a
  // variable outside avoid and outside the body's free variables (exact for
  // regular bodies, a depth-48 name scan otherwise). avoid must be finite.
  std::pair<Var, CoTerm> extract(const VarSet& avoid) const;

 private:
  Var x_;
  CoTerm body_;
};
using CoDestView = std::variant<CoDestV, CoDestA, CoDestL>;

CoDestView co_dest(const CoTerm& t);

// Variable permutation, applied to every leaf and binder. One state per old
// state, so regularity is preserved.
CoTerm co_perm(const CoTerm& t, const Perm& sigma);
CoTerm co_swap(const CoTerm& t, Var z1, Var z2);

// Alpha-bisimulation. The exact form requires both sides regular (throws
// std::invalid_argument otherwise) and decides equality on the finite product
// state space: hypotheses are (state, state, matched-binder stack) triples,
// the stack pruned to live entries so the hypothesis space stays finite;
// position i in the stack plays the role of the canonical fresh name
// var(base + 1 + i) above all names of both coalgebras. The depth-bounded
// form unrolls k layers and answers true at the cut.
bool co_alpha_eq(const CoTerm& a, const CoTerm& b);
bool co_alpha_eq_upto(const CoTerm& a, const CoTerm& b, int depth);

// Coinductive freshness: greatest fixpoint over the reachable states (exact,
// regular only) or a k-layer unrolling answering true at the cut.
bool co_fresh(Var x, const CoTerm& t);
bool co_fresh_upto(Var x, const CoTerm& t, int depth);

// Free variables of a regular coterm: the mentioned variables that are not
// coinductively fresh. Unmentioned variables are always fresh.
VarSet co_fv(const CoTerm& t);

// Finitely many modified entries over the Vr-embedding default.
class Env {
 public:
  Env() = default;
  Env& set(Var x, CoTerm image);
  const std::map<Var, CoTerm>& modified() const { return mod_; }
  CoTerm get(Var x) const;  // embed(Vr x) when unmodified

  // Union over effectively modified x of {x} + FV(image). Requires every
  // modified image regular (throws std::invalid_argument otherwise).
  VarSet supp() const;

  // The environment z1/z2-exchanged pointwise: entry x -> img becomes
  // x[z1^z2] -> img[z1^z2].
  Env swapped(Var z1, Var z2) const;

 private:
  std::map<Var, CoTerm> mod_;
};

// Parallel capture-avoiding substitution, built corecursively: states are
// (source state, pending permutation) pairs, a variable leaf exits to its
// environment image verbatim, and an abstraction whose binder lands in
// supp(rho) is extracted to a pool variable outside supp(rho) and outside the
// body's free variables before recursing. For regular input and regular
// images the pending permutations range over a finite alphabet, so the
// result is regular; otherwise the result is lazy and depth-bounded
// semantics apply downstream.
CoTerm psubst(const CoTerm& t, const Env& rho);

// Singleton conveniences: co_subst(t, s, z) = t[s/z];
// co_rename(t, x, y) = t[x/y] = co_subst(t, embed(Vr x), y).
CoTerm co_subst(const CoTerm& t, const CoTerm& s, Var z);
CoTerm co_rename(const CoTerm& t, Var x, Var y);

// Abstraction-set membership: (y, u) belongs to the K of t iff t destructs
// to an abstraction with canonical pair (x, b), y is x or fresh for b, and
// u equals b with y and x exchanged. Equality and freshness are exact on
// regular inputs and depth-bounded otherwise.
bool co_K_member(const CoTerm& t, Var y, const CoTerm& u, int depth = 30);

// One sampled instance of a named infinitary law. holds is the verdict
// (true when the guard fails); exact records whether every equality and
// freshness query was decided exactly or some fell back to depth-bounded
// views. Unknown names throw std::invalid_argument.
struct CoPropResult {
  bool holds = false;
  bool exact = true;
};
CoPropResult check_coterm_property(const std::string& name,
                                   const std::vector<CoTerm>& ts,
                                   const std::vector<Var>& xs,
                                   const std::vector<Perm>& ps,
                                   int depth = 30);

}  // namespace nomrec
