#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace nomrec {

// A variable is a non-negative index. Its default display name is "v<index>";
// a NameTable can attach nicer names per parse session.
struct Var {
  std::uint64_t index = 0;
  friend auto operator<=>(const Var&, const Var&) = default;
};

inline Var var(std::uint64_t i) { return Var{i}; }

std::string default_name(Var v);

// Least index not present in avoid.
Var fresh_var(const std::set<Var>& avoid);

// Maps parser identifiers to variables. Identifiers are interned in first-seen
// order within one table (one table per parse session).
class NameTable {
 public:
  Var intern(const std::string& name);
  std::optional<Var> lookup(const std::string& name) const;
  std::string name_of(Var v) const;  // falls back to default_name

 private:
  std::map<std::string, Var> by_name_;
  std::map<Var, std::string> by_var_;
  std::uint64_t next_ = 0;
};

// A finite set of variables, or a symbolic one of the shape
//   {a*i + b : i >= 0}  union  adds
// with a >= 1 and adds a finite set disjoint from the family. The symbolic
// form is always infinite. The representation is canonical: the family start b
// is pulled as low as the adds allow, so semantic equality is field equality.
class VarSet {
 public:
  VarSet() = default;  // empty finite set
  static VarSet finite(std::set<Var> elems);
  static VarSet symbolic(std::uint64_t a, std::uint64_t b);
  static VarSet all();  // {i : i >= 0}

  bool is_finite() const { return !symbolic_; }
  bool empty() const { return !symbolic_ && adds_.empty(); }
  bool contains(Var v) const;
  void insert(Var v);
  void erase(Var v);
  VarSet with(Var v) const;
  VarSet without(Var v) const;

  // Throws std::logic_error when symbolic.
  const std::set<Var>& finite_elems() const;

  bool subset_of(const VarSet& rhs) const;
  // Throws std::logic_error when the union of two symbolic sets does not fit
  // the representation (incompatible strides/residues).
  static VarSet unite(const VarSet& x, const VarSet& y);

  std::uint64_t stride() const { return a_; }
  std::uint64_t family_start() const { return b_; }
  const std::set<Var>& extra_elems() const { return adds_; }

  bool operator==(const VarSet&) const = default;

  std::string to_string(const NameTable* names = nullptr) const;

 private:
  bool symbolic_ = false;
  std::uint64_t a_ = 1;
  std::uint64_t b_ = 0;
  std::set<Var> adds_;  // all elements when finite; off-family extras otherwise

  bool in_family(std::uint64_t idx) const;
  void normalize();
};

// Least index not in avoid. Throws std::invalid_argument when avoid is
// symbolic: a symbolic set leaves no least unused index to speak of.
Var fresh_var(const VarSet& avoid);

}  // namespace nomrec
