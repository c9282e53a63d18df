#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include "nomrec/gen.hpp"
#include "nomrec/recursors.hpp"

namespace nomrec {

// The minimal submodel generated by the constructors, represented as
// (witness term, value) pairs with value = rec(i, m).g(witness). Equality
// compares values only; freshness and free variables are read off the
// witness, which is what makes them computable on the generated part.
template <typename C>
Model<std::pair<Term, C>> min_submodel(int i, const Model<C>& m) {
  if (i != 6 && i != 8 && i != 9)
    throw std::invalid_argument("min_submodel: id must be 6, 8 or 9");
  detail::require_sig(m.sig, sigma_of(i), "min_submodel");
  using P = std::pair<Term, C>;
  Recursion<C> r = rec(i, m);
  Model<C> parent = m;
  Model<P> out;
  out.sig = {Sym::vr, Sym::ap, Sym::lm, Sym::fr, Sym::fv};
  if (m.sig.count(Sym::sw)) out.sig.insert(Sym::sw);
  if (m.sig.count(Sym::ren)) out.sig.insert(Sym::ren);
  out.eq = [parent](const P& a, const P& b) {
    return parent.eq(a.second, b.second);
  };
  out.sample = [r](std::mt19937_64& rng) {
    Term t = sample_term(rng, 6);
    return P{t, r.g(t)};
  };
  out.show = [parent](const P& p) {
    return "(t=" + print_term(p.first) + ", c=" + parent.show(p.second) + ")";
  };
  out.VrD = [parent](Var x) { return P{Term::Vr(x), parent.VrD(x)}; };
  out.ApD = [parent](const P& a, const P& b) {
    return P{Term::Ap(a.first, b.first), parent.ApD(a.second, b.second)};
  };
  out.LmD = [parent](Var x, const P& p) {
    return P{Term::Lm(x, p.first), parent.LmD(x, p.second)};
  };
  if (m.sig.count(Sym::sw))
    out.swapD = [parent](const P& p, Var x, Var y) {
      return P{swap(p.first, x, y), parent.swapD(p.second, x, y)};
    };
  if (m.sig.count(Sym::ren))
    out.renameD = [parent](const P& p, Var x, Var y) {
      return P{rename(p.first, x, y), parent.renameD(p.second, x, y)};
    };
  out.freshD = [](Var x, const P& p) { return fresh(x, p.first); };
  out.fvD = [](const P& p) { return fv_set(p.first); };
  out.supp_oracle = [](const P& p) { return fv_set(p.first); };
  return out;
}

// Swapping on a renaming submodel via the triple rename through a fresh
// variable: d[z1^z2] := d[y/z1][z1/z2][z2/y], y picked fresh for the witness
// and both swapped variables.
template <typename C>
Model<std::pair<Term, C>> swap_from_rename_in_submodel(
    const Model<std::pair<Term, C>>& s) {
  using P = std::pair<Term, C>;
  if (!s.sig.count(Sym::ren) || !s.renameD)
    throw std::invalid_argument(
        "swap_from_rename_in_submodel: submodel lacks ren");
  Model<P> out = s;
  auto renameD = s.renameD;
  out.swapD = [renameD](const P& p, Var z1, Var z2) {
    std::set<Var> avoid = fv(p.first);
    avoid.insert(z1);
    avoid.insert(z2);
    Var y = fresh_var(avoid);
    return renameD(renameD(renameD(p, y, z1), z1, z2), z2, y);
  };
  out.sig.insert(Sym::sw);
  return out;
}

// Verifies the quasi-strength factorization: the weak recursor's values
// agree with the value component of the strong recursor run on the
// constructed submodel. Implemented pairs: (3,6), (8,9), (6,8).
template <typename C>
PropReport quasi_definability_check(int i_strong, int i_weak,
                                    const Model<C>& m_weak, int n = 200,
                                    uint64_t seed = 1) {
  using P = std::pair<Term, C>;
  std::function<P(const Term&)> g_strong;
  if (i_strong == 3 && i_weak == 6) {
    g_strong = rec(3, min_submodel(6, m_weak)).g;
  } else if (i_strong == 8 && i_weak == 9) {
    g_strong = rec(8, min_submodel(9, m_weak)).g;
  } else if (i_strong == 6 && i_weak == 8) {
    g_strong =
        rec(6, swap_from_rename_in_submodel(min_submodel(8, m_weak))).g;
  } else {
    throw std::invalid_argument(
        "quasi_definability_check: pair must be (3,6), (8,9) or (6,8)");
  }
  Recursion<C> weak = rec(i_weak, m_weak);
  std::mt19937_64 rng(seed ^ 0xe7037ed1a0b428dbull);
  PropLine pl;
  pl.name = "Factorization";
  pl.pass = true;
  for (int k = 0; k < n; ++k) {
    Term t = sample_term(rng, 6);
    ++pl.n;
    ++pl.hits;
    if (!m_weak.eq(weak.g(t), g_strong(t).second) && pl.pass) {
      pl.pass = false;
      pl.cex = "Factorization(t=" + print_term(t) + ")";
    }
  }
  PropReport rep;
  rep.lines.push_back(pl);
  return rep;
}

}  // namespace nomrec
