#include "nomrec/var.hpp"

#include <stdexcept>

namespace nomrec {

std::string default_name(Var v) { return "v" + std::to_string(v.index); }

Var fresh_var(const std::set<Var>& avoid) {
  std::uint64_t i = 0;
  for (Var v : avoid) {
    if (v.index > i) break;  // gap found: set is sorted
    if (v.index == i) ++i;
  }
  return var(i);
}

Var fresh_var(const VarSet& avoid) {
  if (!avoid.is_finite())
    throw std::invalid_argument("fresh_var: avoid set is symbolic (infinite)");
  return fresh_var(avoid.finite_elems());
}

Var NameTable::intern(const std::string& name) {
  auto it = by_name_.find(name);
  if (it != by_name_.end()) return it->second;
  Var v = var(next_++);
  by_name_.emplace(name, v);
  by_var_.emplace(v, name);
  return v;
}

std::optional<Var> NameTable::lookup(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::string NameTable::name_of(Var v) const {
  auto it = by_var_.find(v);
  if (it == by_var_.end()) return default_name(v);
  return it->second;
}

VarSet VarSet::finite(std::set<Var> elems) {
  VarSet s;
  s.adds_ = std::move(elems);
  return s;
}

VarSet VarSet::symbolic(std::uint64_t a, std::uint64_t b) {
  if (a == 0) throw std::invalid_argument("VarSet::symbolic: stride must be >= 1");
  VarSet s;
  s.symbolic_ = true;
  s.a_ = a;
  s.b_ = b;
  return s;
}

VarSet VarSet::all() { return symbolic(1, 0); }

bool VarSet::in_family(std::uint64_t idx) const {
  return symbolic_ && idx >= b_ && (idx - b_) % a_ == 0;
}

void VarSet::normalize() {
  if (!symbolic_) return;
  // Pull the family start down over adjacent adds, drop adds the family covers.
  for (auto it = adds_.begin(); it != adds_.end();) {
    if (in_family(it->index))
      it = adds_.erase(it);
    else
      ++it;
  }
  while (b_ >= a_ && adds_.count(var(b_ - a_))) {
    adds_.erase(var(b_ - a_));
    b_ -= a_;
  }
}

bool VarSet::contains(Var v) const {
  return in_family(v.index) || adds_.count(v) > 0;
}

void VarSet::insert(Var v) {
  if (contains(v)) return;
  adds_.insert(v);
  normalize();
}

void VarSet::erase(Var v) {
  if (!symbolic_) {
    adds_.erase(v);
    return;
  }
  adds_.erase(v);
  if (in_family(v.index)) {
    // Removing a family element splits the family: everything below stays as
    // explicit extras, the family restarts above.
    for (std::uint64_t i = b_; i < v.index; i += a_) adds_.insert(var(i));
    b_ = v.index + a_;
  }
  normalize();
}

VarSet VarSet::with(Var v) const {
  VarSet s = *this;
  s.insert(v);
  return s;
}

VarSet VarSet::without(Var v) const {
  VarSet s = *this;
  s.erase(v);
  return s;
}

const std::set<Var>& VarSet::finite_elems() const {
  if (symbolic_) throw std::logic_error("VarSet::finite_elems: set is symbolic");
  return adds_;
}

bool VarSet::subset_of(const VarSet& rhs) const {
  if (!symbolic_) {
    for (Var v : adds_)
      if (!rhs.contains(v)) return false;
    return true;
  }
  if (!rhs.symbolic_) return false;  // infinite cannot fit a finite set
  for (Var v : adds_)
    if (!rhs.contains(v)) return false;
  // The whole family {a*i + b : i >= 0} must land in rhs. Beyond rhs's family
  // start only the stride/residue matter; the finitely many below it are
  // checked one by one (they can only be rhs extras).
  if (a_ % rhs.a_ != 0) return false;
  if (b_ % rhs.a_ != rhs.b_ % rhs.a_) return false;
  for (std::uint64_t i = b_; i < rhs.b_; i += a_)
    if (!rhs.contains(var(i))) return false;
  return true;
}

VarSet VarSet::unite(const VarSet& x, const VarSet& y) {
  if (x.subset_of(y)) return y;
  if (y.subset_of(x)) return x;
  if (!x.symbolic_ && !y.symbolic_) {
    std::set<Var> elems = x.adds_;
    elems.insert(y.adds_.begin(), y.adds_.end());
    return finite(std::move(elems));
  }
  if (x.symbolic_ != y.symbolic_) {
    VarSet s = x.symbolic_ ? x : y;
    const VarSet& fin = x.symbolic_ ? y : x;
    for (Var v : fin.adds_) s.insert(v);
    return s;
  }
  // Both symbolic. The representable case is matching residues with one stride
  // dividing the other; the finer family then absorbs the coarser one.
  const VarSet& fine = x.a_ <= y.a_ ? x : y;
  const VarSet& coarse = x.a_ <= y.a_ ? y : x;
  if (coarse.a_ % fine.a_ != 0 || coarse.b_ % fine.a_ != fine.b_ % fine.a_)
    throw std::logic_error("VarSet::unite: incompatible symbolic families");
  VarSet s = fine;
  for (Var v : coarse.adds_) s.insert(v);
  for (std::uint64_t i = coarse.b_; i < fine.b_; i += coarse.a_) s.insert(var(i));
  return s;
}

std::string VarSet::to_string(const NameTable* names) const {
  auto nm = [&](Var v) { return names ? names->name_of(v) : default_name(v); };
  std::string out = "{";
  bool first = true;
  for (Var v : adds_) {
    if (!first) out += ", ";
    out += nm(v);
    first = false;
  }
  if (symbolic_) {
    if (!first) out += ", ";
    out += "v(" + std::to_string(a_) + "*i+" + std::to_string(b_) + ") : i>=0";
  }
  out += "}";
  return out;
}

}  // namespace nomrec
