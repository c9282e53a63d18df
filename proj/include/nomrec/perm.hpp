#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nomrec/var.hpp"

namespace nomrec {

// A finite-support permutation of variables. The stored map is normalized:
// no fixpoints, and it is a bijection of its domain onto itself. Immutable
// in spirit; all operations return new values.
class Perm {
 public:
  Perm() = default;  // identity

  static Perm transposition(Var x, Var y);
  // nullopt when the mapping (after dropping fixpoints) is not a bijection of
  // its domain onto itself.
  static std::optional<Perm> from_mapping(const std::map<Var, Var>& m);
  // Left-to-right: the first listed transposition is applied first.
  static Perm from_transpositions_lr(const std::vector<std::pair<Var, Var>>& ts);

  Var apply(Var v) const;
  bool is_identity() const { return map_.empty(); }
  std::set<Var> support() const;

  Perm inverse() const;
  // apply(compose(sigma, tau), v) == sigma.apply(tau.apply(v)).
  static Perm compose(const Perm& sigma, const Perm& tau);

  // Transpositions of cycle-adjacent variables; their left-to-right
  // composition equals *this, and the list length is at most |support|.
  // Cycles are emitted in increasing order of their least element, each cycle
  // starting at its least element. Identity decomposes to [].
  std::vector<std::pair<Var, Var>> decompose() const;

  bool operator==(const Perm&) const = default;

  // Mapping form, e.g. "{v0->v1, v1->v0}"; identity is "{}".
  std::string to_string(const NameTable* names = nullptr) const;
  // Cycle form, e.g. "(v0 v1 v2)(v3 v4)"; identity is "()".
  std::string to_cycles(const NameTable* names = nullptr) const;

  // Accepts both text forms: cycles "(x y)(y z)" (rightmost cycle applied
  // first) and mappings "{x->y, y->z, z->x}". Identifiers are interned in the
  // given table. nullopt on syntax errors or non-bijective mappings.
  static std::optional<Perm> parse(const std::string& text, NameTable& names);

 private:
  std::map<Var, Var> map_;
};

}  // namespace nomrec
