#pragma once

#include <stdexcept>

#include "nomrec/model.hpp"

namespace nomrec {

// Derives swapping from permutation: c[x^y] := c[(x y)]. Target signature
// swaps sw in for pm.
template <typename C>
Model<C> swap_from_perm(const Model<C>& m) {
  if (!m.sig.count(Sym::pm))
    throw std::invalid_argument("swap_from_perm: model lacks pm");
  Model<C> out = m;
  auto permD = m.permD;
  out.swapD = [permD](const C& c, Var x, Var y) {
    return permD(c, Perm::transposition(x, y));
  };
  out.sig.erase(Sym::pm);
  out.sig.insert(Sym::sw);
  out.permD = nullptr;
  return out;
}

// Derives permutation from swapping by folding a transposition decomposition.
// Sound on carriers satisfying SwId/SwIv/SwCp, where the result does not
// depend on the decomposition chosen.
template <typename C>
Model<C> perm_from_swap(const Model<C>& m) {
  if (!m.sig.count(Sym::sw))
    throw std::invalid_argument("perm_from_swap: model lacks sw");
  Model<C> out = m;
  auto swapD = m.swapD;
  out.permD = [swapD](const C& c, const Perm& p) {
    C acc = c;
    for (auto [x, y] : p.decompose()) acc = swapD(acc, x, y);
    return acc;
  };
  out.sig.erase(Sym::sw);
  out.sig.insert(Sym::pm);
  out.swapD = nullptr;
  return out;
}

// Derives freshness from the free-variable operator by negated membership.
template <typename C>
Model<C> fresh_from_fv(const Model<C>& m) {
  if (!m.sig.count(Sym::fv))
    throw std::invalid_argument("fresh_from_fv: model lacks fv");
  Model<C> out = m;
  auto fvD = m.fvD;
  out.freshD = [fvD](Var x, const C& c) { return !fvD(c).contains(x); };
  out.sig.erase(Sym::fv);
  out.sig.insert(Sym::fr);
  out.fvD = nullptr;
  return out;
}

// Derives renaming from substitution: c[y/x] := c[(Vr y)/x].
template <typename C>
Model<C> rename_from_subst(const Model<C>& m) {
  if (!m.sig.count(Sym::sb) || !m.sig.count(Sym::vr))
    throw std::invalid_argument("rename_from_subst: model lacks sb or vr");
  Model<C> out = m;
  auto substD = m.substD;
  auto VrD = m.VrD;
  out.renameD = [substD, VrD](const C& c, Var y, Var x) {
    return substD(c, VrD(y), x);
  };
  out.sig.erase(Sym::sb);
  out.sig.insert(Sym::ren);
  out.substD = nullptr;
  return out;
}

// Derives freshness from renaming: x is fresh for c when renaming x away
// does not move c. Probes are variables outside the support oracle's answer,
// so the oracle is mandatory.
template <typename C>
Model<C> fresh_from_rename(const Model<C>& m, int probes = 3) {
  if (!m.sig.count(Sym::ren))
    throw std::invalid_argument("fresh_from_rename: model lacks ren");
  if (!m.supp_oracle)
    throw std::invalid_argument("fresh_from_rename: model lacks supp_oracle");
  Model<C> out = m;
  auto renameD = m.renameD;
  auto eq = m.eq;
  auto supp = *m.supp_oracle;
  out.freshD = [renameD, eq, supp, probes](Var x, const C& c) {
    VarSet avoid = supp(c);
    if (!avoid.is_finite())
      throw std::invalid_argument(
          "fresh_from_rename: supp_oracle answer is not finite");
    avoid.insert(x);
    for (int b = 0; b < probes; ++b) {
      Var y = fresh_var(avoid);
      avoid.insert(y);
      if (!eq(renameD(c, y, x), c)) return false;
    }
    return true;
  };
  out.sig.insert(Sym::fr);
  return out;
}

}  // namespace nomrec
