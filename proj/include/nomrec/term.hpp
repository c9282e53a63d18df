#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nomrec/perm.hpp"
#include "nomrec/var.hpp"

namespace nomrec {

// An immutable lambda-term representative. Equality (operator==) is
// alpha-equivalence; ordering and hashing go through the canonical nameless
// form, so alpha-equivalent terms collide as keys.
class Term {
 public:
  enum class Kind { Vr, Ap, Lm };

  Term() = default;  // empty handle; using it is a bug

  static Term Vr(Var x);
  static Term Ap(Term fn, Term arg);
  static Term Lm(Var binder, Term body);

  bool valid() const { return node_ != nullptr; }
  Kind kind() const;
  Var vr_var() const;
  const Term& ap_fn() const;
  const Term& ap_arg() const;
  Var lm_binder() const;
  const Term& lm_body() const;

  // Canonical nameless form: bound occurrences as de Bruijn distances, free
  // ones by index. Computed lazily, cached per root.
  const std::string& canon() const;
  std::size_t hash() const;

  friend bool alpha_eq(const Term& a, const Term& b);
  bool operator==(const Term& o) const { return alpha_eq(*this, o); }
  bool operator!=(const Term& o) const { return !(*this == o); }
  bool operator<(const Term& o) const { return canon() < o.canon(); }

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Alpha-equivalence by simultaneous traversal with matched binder stacks
// (a partial name bijection grown at each abstraction).
bool alpha_eq(const Term& a, const Term& b);

// Swaps every occurrence of x and y, binders included.
Term swap(const Term& t, Var x, Var y);
// Applies sigma to every occurrence, binders included.
Term permute(const Term& t, const Perm& sigma);
// Capture-avoiding substitution t[s/y]: replaces free y by s, refreshing
// binders that would capture.
Term subst(const Term& t, const Term& s, Var y);
// rename(t, x, y) = t[x/y] = subst(t, Vr x, y): replaces free y by x.
Term rename(const Term& t, Var x, Var y);

std::set<Var> fv(const Term& t);
VarSet fv_set(const Term& t);  // same, packaged
bool fresh(Var x, const Term& t);

// Destructor views. The abstraction case hands out a handle; extraction picks
// a binder representative outside a caller-supplied finite avoid set.
struct DestV {
  Var x;
};
struct DestA {
  Term fn, arg;
};
class DestL {
 public:
  explicit DestL(Term lm) : lm_(std::move(lm)) {}
  Var stored_binder() const { return lm_.lm_binder(); }
  Term stored_body() const { return lm_.lm_body(); }
  // Keeps the stored binder when it is not in avoid; otherwise swaps in
  // fresh_var(avoid + fv(body) + {binder}). avoid must be finite.
  std::pair<Var, Term> extract(const VarSet& avoid) const;

 private:
  Term lm_;
};
using DestView = std::variant<DestV, DestA, DestL>;

DestView dest(const Term& t);

// Parsing and printing. Grammar: variables are identifiers; application is
// juxtaposition (left-associative); "\x. t" or "lam x. t" binds to the right
// as far as possible; parentheses group. Identifiers are interned first-seen
// into the table.
std::optional<Term> parse_term(const std::string& text, NameTable& names,
                               std::string* error = nullptr);
std::string print_term(const Term& t, const NameTable* names = nullptr);

std::ostream& operator<<(std::ostream& os, const Term& t);

// Evaluates one named term-level law (the ids used throughout: SwVr, SwAp,
// SwLm, SwId, SwCp, SwIv, SwFr, FrSw, SwFv, FvSw, SwCg, SwBvr, PmVr..PmBvr,
// SbVr..SbChFr, RnVr..RnChFr, FrVr/FrAp/FrLm, FvVr/FvAp/FvLm, FSupFv, FvDPm,
// FvDSw, FCB, FSupFr, FrDSw, FrDRn) on one concrete instance. Guarded laws
// return true when the guard fails (vacuous). Finiteness-flavoured laws are
// decided exactly against the finite free-variable set. Throws
// std::invalid_argument on an unknown id or missing arguments.
bool check_term_property(const std::string& name, const std::vector<Term>& ts,
                         const std::vector<Var>& xs,
                         const std::vector<Perm>& ps);

// True when the instance's guard is satisfied (the check is non-vacuous).
// Unguarded laws always count.
bool term_property_guard(const std::string& name, const std::vector<Term>& ts,
                         const std::vector<Var>& xs,
                         const std::vector<Perm>& ps);

}  // namespace nomrec
