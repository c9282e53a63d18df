#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nomrec/model.hpp"
#include "nomrec/recursors.hpp"

namespace nomrec {

// A model over carrier C whose operations also see the term being
// interpreted: ops take (Term, C) pairs, and a finite variable set X is
// exempted from the laws. domain, when supplied, tells which pairs the model
// considers meaningful; sample_pair must stay inside it.
template <typename C>
struct EnhancedModel {
  using DPair = std::pair<Term, C>;

  Signature sig;
  VarSet X;
  std::function<bool(const C&, const C&)> eq;
  std::function<DPair(std::mt19937_64&)> sample_pair;
  std::function<std::string(const C&)> show;
  std::function<bool(const Term&, const C&)> domain;  // optional

  std::function<C(Var)> VrD;
  std::function<C(const DPair&, const DPair&)> ApD;
  std::function<C(Var, const DPair&)> LmD;
  std::function<C(const DPair&, const Perm&)> permD;
  std::function<C(const DPair&, Var, Var)> swapD;
  std::function<C(const DPair&, const DPair&, Var)> substD;
  std::function<C(const DPair&, Var, Var)> renameD;
  std::function<VarSet(const DPair&)> fvD;
  std::function<bool(Var, const DPair&)> freshD;
};

template <typename C>
void validate_enhanced(const EnhancedModel<C>& m) {
  if (!m.eq || !m.sample_pair || !m.show)
    throw std::invalid_argument(
        "enhanced model: eq/sample_pair/show must be populated");
  if (!m.X.is_finite())
    throw std::invalid_argument("enhanced model: X must be finite");
  auto need = [&](Sym s, bool present) {
    if (m.sig.count(s) && !present)
      throw std::invalid_argument("enhanced model: signature names " +
                                  sym_name(s) + " but the op is missing");
  };
  need(Sym::vr, static_cast<bool>(m.VrD));
  need(Sym::ap, static_cast<bool>(m.ApD));
  need(Sym::lm, static_cast<bool>(m.LmD));
  need(Sym::pm, static_cast<bool>(m.permD));
  need(Sym::sw, static_cast<bool>(m.swapD));
  need(Sym::sb, static_cast<bool>(m.substD));
  need(Sym::ren, static_cast<bool>(m.renameD));
  need(Sym::fv, static_cast<bool>(m.fvD));
  need(Sym::fr, static_cast<bool>(m.freshD));
}

namespace detail {

// Pair builders: the term half moves by the term operation, the carrier half
// by the model operation, matching the domain-closedness shape.
template <typename C>
typename EnhancedModel<C>::DPair ep_vr(const EnhancedModel<C>& m, Var x) {
  return {Term::Vr(x), m.VrD(x)};
}
template <typename C>
typename EnhancedModel<C>::DPair ep_ap(
    const EnhancedModel<C>& m, const typename EnhancedModel<C>::DPair& a,
    const typename EnhancedModel<C>::DPair& b) {
  return {Term::Ap(a.first, b.first), m.ApD(a, b)};
}
template <typename C>
typename EnhancedModel<C>::DPair ep_lm(
    const EnhancedModel<C>& m, Var x,
    const typename EnhancedModel<C>::DPair& d) {
  return {Term::Lm(x, d.first), m.LmD(x, d)};
}
template <typename C>
typename EnhancedModel<C>::DPair ep_sw(
    const EnhancedModel<C>& m, const typename EnhancedModel<C>::DPair& d,
    Var x, Var y) {
  return {swap(d.first, x, y), m.swapD(d, x, y)};
}
template <typename C>
typename EnhancedModel<C>::DPair ep_pm(
    const EnhancedModel<C>& m, const typename EnhancedModel<C>::DPair& d,
    const Perm& p) {
  return {permute(d.first, p), m.permD(d, p)};
}
template <typename C>
typename EnhancedModel<C>::DPair ep_sb(
    const EnhancedModel<C>& m, const typename EnhancedModel<C>::DPair& d,
    const typename EnhancedModel<C>::DPair& s, Var z) {
  return {subst(d.first, s.first, z), m.substD(d, s, z)};
}
template <typename C>
typename EnhancedModel<C>::DPair ep_rn(
    const EnhancedModel<C>& m, const typename EnhancedModel<C>::DPair& d,
    Var x, Var y) {
  return {rename(d.first, x, y), m.renameD(d, x, y)};
}

inline std::set<Var> x_elems(const VarSet& X) { return X.finite_elems(); }

// Freshness hypothesis "z # t" in the enhanced reading: the term-side
// freshness, plus the sampled implication "every non-X variable fresh for
// the term is fresh for the pair" probed at z and two fresh variables.
template <typename C>
bool ep_fresh_hyp(const EnhancedModel<C>& m,
                  const typename EnhancedModel<C>::DPair& d, Var z) {
  if (!fresh(z, d.first)) return false;
  std::set<Var> probes;
  if (!m.X.contains(z)) probes.insert(z);
  std::set<Var> avoid = x_elems(m.X);
  for (Var v : fv(d.first)) avoid.insert(v);
  avoid.insert(z);
  for (int i = 0; i < 2; ++i) {
    Var y = fresh_var(avoid);
    avoid.insert(y);
    probes.insert(y);
  }
  for (Var p : probes)
    if (fresh(p, d.first) && !m.freshD(p, d)) return false;
  return true;
}

// Free-variable hypothesis in the enhanced reading: the pair's model-side
// free variables stay inside X plus the term's.
template <typename C>
bool ep_fv_hyp(const EnhancedModel<C>& m,
               const typename EnhancedModel<C>::DPair& d) {
  return m.fvD(d).subset_of(VarSet::unite(m.X, fv_set(d.first)));
}

}  // namespace detail

// One enhanced law instance. xs are sampled outside X; axs may land inside X
// (the slots playing "any variable"); ps avoid X.
template <typename C>
struct EInst {
  std::vector<typename EnhancedModel<C>::DPair> ds;
  std::vector<Var> xs;
  std::vector<Var> axs;
  std::vector<Perm> ps;
};

namespace detail {

template <typename C>
const typename EnhancedModel<C>::DPair& eargD(const EInst<C>& in,
                                              std::size_t i,
                                              const std::string& n) {
  if (i >= in.ds.size())
    throw std::invalid_argument(n + ": instance lacks pair argument " +
                                std::to_string(i));
  return in.ds[i];
}
template <typename C>
Var eargX(const EInst<C>& in, std::size_t i, const std::string& n) {
  if (i >= in.xs.size())
    throw std::invalid_argument(n + ": instance lacks variable argument " +
                                std::to_string(i));
  return in.xs[i];
}
template <typename C>
Var eargA(const EInst<C>& in, std::size_t i, const std::string& n) {
  if (i >= in.axs.size())
    throw std::invalid_argument(n + ": instance lacks any-variable argument " +
                                std::to_string(i));
  return in.axs[i];
}
template <typename C>
const Perm& eargP(const EInst<C>& in, std::size_t i, const std::string& n) {
  if (i >= in.ps.size())
    throw std::invalid_argument(n + ": instance lacks permutation argument " +
                                std::to_string(i));
  return in.ps[i];
}

}  // namespace detail

// Evaluates one enhanced law instance. Quantified variables avoid X; each
// hypothesis equation is demanded on both the term and the carrier side;
// each hypothesis freshness becomes term freshness plus the sampled
// implication of detail::ep_fresh_hyp. Probe-based laws (FvDPm, FvDSw, FCB)
// live in check_enhanced_props.
template <typename C>
std::pair<bool, bool> eval_enhanced_prop(const EnhancedModel<C>& m,
                                         const std::string& n,
                                         const EInst<C>& in) {
  using detail::eargA;
  using detail::eargD;
  using detail::eargP;
  using detail::eargX;
  using detail::ep_ap;
  using detail::ep_fresh_hyp;
  using detail::ep_fv_hyp;
  using detail::ep_lm;
  using detail::ep_pm;
  using detail::ep_rn;
  using detail::ep_sb;
  using detail::ep_sw;
  using detail::ep_vr;
  using DPair = typename EnhancedModel<C>::DPair;

  auto D = [&](std::size_t i) -> const DPair& { return eargD(in, i, n); };
  auto X = [&](std::size_t i) { return eargX<C>(in, i, n); };
  auto A = [&](std::size_t i) { return eargA<C>(in, i, n); };
  auto P = [&](std::size_t i) -> const Perm& { return eargP(in, i, n); };
  auto ok = [](bool b) { return std::pair{true, b}; };
  auto vac = [] { return std::pair{false, true}; };

  if (n == "PmVr") {
    DPair d = ep_vr(m, A(0));
    return ok(m.eq(m.permD(d, P(0)), m.VrD(P(0).apply(A(0)))));
  }
  if (n == "PmAp") {
    DPair l = ep_ap(m, D(0), D(1));
    return ok(m.eq(m.permD(l, P(0)),
                   m.ApD(ep_pm(m, D(0), P(0)), ep_pm(m, D(1), P(0)))));
  }
  if (n == "PmLm") {
    DPair l = ep_lm(m, X(0), D(0));
    return ok(m.eq(m.permD(l, P(0)),
                   m.LmD(P(0).apply(X(0)), ep_pm(m, D(0), P(0)))));
  }
  if (n == "PmId") return ok(m.eq(m.permD(D(0), Perm()), D(0).second));
  if (n == "PmCp")
    return ok(m.eq(m.permD(ep_pm(m, D(0), P(0)), P(1)),
                   m.permD(D(0), Perm::compose(P(1), P(0)))));
  if (n == "PmFv") {
    for (Var v : P(0).support())
      if (!fresh(v, D(0).first)) return vac();
    if (!ep_fv_hyp(m, D(0))) return vac();
    return ok(m.eq(m.permD(D(0), P(0)), D(0).second));
  }
  if (n == "FvVr") {
    DPair d = ep_vr(m, A(0));
    return ok(m.fvD(d).subset_of(m.X.with(A(0))));
  }
  if (n == "FvAp") {
    if (!ep_fv_hyp(m, D(0)) || !ep_fv_hyp(m, D(1))) return vac();
    DPair l = ep_ap(m, D(0), D(1));
    VarSet bound = VarSet::unite(
        m.X, VarSet::unite(fv_set(D(0).first), fv_set(D(1).first)));
    return ok(m.fvD(l).subset_of(bound));
  }
  if (n == "FvLm") {
    if (!ep_fv_hyp(m, D(0))) return vac();
    DPair l = ep_lm(m, X(0), D(0));
    VarSet bound = VarSet::unite(m.X, fv_set(D(0).first).without(X(0)));
    return ok(m.fvD(l).subset_of(bound));
  }

  if (n == "SwVr") {
    DPair d = ep_vr(m, A(0));
    return ok(m.eq(m.swapD(d, X(0), X(1)),
                   m.VrD(detail::msw(A(0), X(0), X(1)))));
  }
  if (n == "SwAp") {
    DPair l = ep_ap(m, D(0), D(1));
    return ok(m.eq(m.swapD(l, X(0), X(1)),
                   m.ApD(ep_sw(m, D(0), X(0), X(1)),
                         ep_sw(m, D(1), X(0), X(1)))));
  }
  if (n == "SwLm") {
    DPair l = ep_lm(m, X(0), D(0));
    return ok(m.eq(m.swapD(l, X(1), X(2)),
                   m.LmD(detail::msw(X(0), X(1), X(2)),
                         ep_sw(m, D(0), X(1), X(2)))));
  }
  if (n == "SwId") return ok(m.eq(m.swapD(D(0), X(0), X(0)), D(0).second));
  if (n == "SwIv")
    return ok(m.eq(m.swapD(ep_sw(m, D(0), X(0), X(1)), X(0), X(1)),
                   D(0).second));
  if (n == "SwCp")
    return ok(
        m.eq(m.swapD(ep_sw(m, D(0), X(0), X(1)), X(2), X(3)),
             m.swapD(ep_sw(m, D(0), X(2), X(3)),
                     detail::msw(X(0), X(2), X(3)),
                     detail::msw(X(1), X(2), X(3)))));
  if (n == "SwFv") {
    if (!fresh(X(0), D(0).first) || !fresh(X(1), D(0).first)) return vac();
    if (!ep_fv_hyp(m, D(0))) return vac();
    return ok(m.eq(m.swapD(D(0), X(0), X(1)), D(0).second));
  }
  if (n == "SwBvr") {
    Var x = X(0), x2 = X(1);
    if (x2 == x) return vac();
    if (!ep_fresh_hyp(m, D(0), x2)) return vac();
    return ok(m.eq(m.LmD(x, D(0)), m.LmD(x2, ep_sw(m, D(0), x2, x))));
  }
  if (n == "SwCg") {
    Var z = X(0), x1 = X(1), x2 = X(2);
    if (z == x1 || z == x2) return vac();
    if (!ep_fresh_hyp(m, D(0), z) || !ep_fresh_hyp(m, D(1), z)) return vac();
    DPair l = ep_sw(m, D(0), z, x1), r = ep_sw(m, D(1), z, x2);
    if (!alpha_eq(l.first, r.first)) return vac();
    if (!m.eq(l.second, r.second)) return vac();
    return ok(m.eq(m.LmD(x1, D(0)), m.LmD(x2, D(1))));
  }

  if (n == "FrVr") {
    Var z = X(0), x = A(0);
    if (z == x) return vac();
    return ok(m.freshD(z, ep_vr(m, x)));
  }
  if (n == "FrAp") {
    Var z = X(0);
    if (!ep_fresh_hyp(m, D(0), z) || !ep_fresh_hyp(m, D(1), z)) return vac();
    return ok(m.freshD(z, ep_ap(m, D(0), D(1))));
  }
  if (n == "FrLm") {
    Var z = X(0), x = X(1);
    if (z != x && !ep_fresh_hyp(m, D(0), z)) return vac();
    return ok(m.freshD(z, ep_lm(m, x, D(0))));
  }

  if (n == "SbVr") {
    Var x = A(0), z = X(0);
    C lhs = m.substD(ep_vr(m, x), D(0), z);
    return ok(x == z ? m.eq(lhs, D(0).second) : m.eq(lhs, m.VrD(x)));
  }
  if (n == "SbAp") {
    Var z = X(0);
    DPair l = ep_ap(m, D(0), D(1));
    return ok(m.eq(m.substD(l, D(2), z),
                   m.ApD(ep_sb(m, D(0), D(2), z), ep_sb(m, D(1), D(2), z))));
  }
  if (n == "SbLm") {
    Var x = X(0), z = X(1);
    if (x == z) return vac();
    if (!ep_fresh_hyp(m, D(1), x)) return vac();
    DPair l = ep_lm(m, x, D(0));
    return ok(m.eq(m.substD(l, D(1), z),
                   m.LmD(x, ep_sb(m, D(0), D(1), z))));
  }
  if (n == "SbBvr") {
    Var x = X(0), x2 = X(1);
    if (x2 == x) return vac();
    if (!ep_fresh_hyp(m, D(0), x2)) return vac();
    return ok(m.eq(m.LmD(x, D(0)),
                   m.LmD(x2, ep_sb(m, D(0), ep_vr(m, x2), x))));
  }

  if (n == "RnVr") {
    Var x = A(0), y = X(0), z = X(1);
    return ok(m.eq(m.renameD(ep_vr(m, x), y, z),
                   m.VrD(detail::mrn(x, y, z))));
  }
  if (n == "RnAp") {
    Var y = X(0), z = X(1);
    DPair l = ep_ap(m, D(0), D(1));
    return ok(m.eq(m.renameD(l, y, z),
                   m.ApD(ep_rn(m, D(0), y, z), ep_rn(m, D(1), y, z))));
  }
  if (n == "RnLm1") {
    Var x = X(0), y = X(1), z = X(2);
    if (x == y || x == z) return vac();
    DPair l = ep_lm(m, x, D(0));
    return ok(m.eq(m.renameD(l, y, z), m.LmD(x, ep_rn(m, D(0), y, z))));
  }
  if (n == "RnLm2") {
    Var x = X(0), z = X(1);
    DPair l = ep_lm(m, x, D(0));
    return ok(m.eq(m.renameD(l, z, x), m.LmD(x, D(0))));
  }
  if (n == "RnBvr") {
    Var x = X(0), x2 = X(1);
    if (x2 == x) return vac();
    if (!ep_fresh_hyp(m, D(0), x2)) return vac();
    return ok(m.eq(m.LmD(x, D(0)), m.LmD(x2, ep_rn(m, D(0), x2, x))));
  }
  if (n == "RnBvr2") {
    Var x = X(0), x2 = X(1), y = X(2);
    if (y == x2) return vac();
    DPair d1 = ep_rn(m, D(0), y, x2);
    return ok(m.eq(m.LmD(x, d1), m.LmD(x2, ep_rn(m, d1, x2, x))));
  }
  if (n == "RnId") return ok(m.eq(m.renameD(D(0), X(0), X(0)), D(0).second));
  if (n == "RnIm") {
    Var x1 = X(0), x2 = X(1), y = X(2);
    if (x1 == y) return vac();
    DPair d1 = ep_rn(m, D(0), x1, y);
    return ok(m.eq(m.renameD(d1, x2, y), d1.second));
  }
  if (n == "RnCh") {
    Var y = X(0), x1 = X(1), x2 = X(2), x3 = X(3);
    if (y == x2) return vac();
    DPair d1 = ep_rn(m, D(0), y, x2);
    return ok(m.eq(m.renameD(ep_rn(m, d1, x2, x1), x3, x2),
                   m.renameD(d1, x3, x1)));
  }
  if (n == "RnCm") {
    Var x1 = X(0), x2 = X(1), y1 = X(2), y2 = X(3);
    if (x2 == y1 || y1 == x1 || x1 == y2) return vac();
    return ok(m.eq(m.renameD(ep_rn(m, D(0), x2, x1), y2, y1),
                   m.renameD(ep_rn(m, D(0), y2, y1), x2, x1)));
  }

  throw std::invalid_argument("eval_enhanced_prop: unknown law " + n);
}

namespace detail {

template <typename C>
Var sample_var_avoiding(std::mt19937_64& rng, int pool, bool wide,
                        const VarSet& X) {
  std::set<Var> tried;
  for (int k = 0; k < 32; ++k) {
    Var v = sample_var<C>(rng, pool, wide);
    if (!X.contains(v)) return v;
    tried.insert(v);
  }
  std::set<Var> avoid = x_elems(X);
  avoid.insert(tried.begin(), tried.end());
  return fresh_var(avoid);
}

template <typename C>
Perm sample_perm_avoiding(std::mt19937_64& rng, int pool, const VarSet& X) {
  int k = std::uniform_int_distribution<int>(0, 3)(rng);
  Perm p;
  for (int i = 0; i < k; ++i) {
    Var a = sample_var_avoiding<C>(rng, pool, false, X);
    Var b = sample_var_avoiding<C>(rng, pool, false, X);
    if (a == b) continue;
    p = Perm::compose(Perm::transposition(a, b), p);
  }
  return p;
}

template <typename C>
EInst<C> sample_einst(const EnhancedModel<C>& m, std::mt19937_64& rng,
                      int pool) {
  EInst<C> in;
  for (int i = 0; i < 3; ++i) in.ds.push_back(m.sample_pair(rng));
  for (int i = 0; i < 4; ++i)
    in.xs.push_back(sample_var_avoiding<C>(rng, pool, i % 2 == 1, m.X));
  const std::set<Var>& xe = x_elems(m.X);
  for (int i = 0; i < 2; ++i) {
    if (!xe.empty() && rng() % 2 == 0) {
      auto it = xe.begin();
      std::advance(it, rng() % xe.size());
      in.axs.push_back(*it);
    } else {
      in.axs.push_back(sample_var<C>(rng, pool, true));
    }
  }
  in.ps.push_back(sample_perm_avoiding<C>(rng, pool, m.X));
  in.ps.push_back(sample_perm_avoiding<C>(rng, pool, m.X));
  return in;
}

// Rebuilds an instance so the enhanced law's side condition is likely to
// hold; freshness targets are chosen on the term side, outside X.
template <typename C>
std::optional<EInst<C>> targeted_einst(const EnhancedModel<C>& m,
                                       const std::string& n,
                                       std::mt19937_64& rng, int pool,
                                       int round) {
  EInst<C> in = sample_einst(m, rng, pool);
  auto avoid_of = [&](const Term& t, std::initializer_list<Var> extra) {
    std::set<Var> avoid = x_elems(m.X);
    for (Var v : fv(t)) avoid.insert(v);
    for (Var v : extra) avoid.insert(v);
    return avoid;
  };
  if (n == "SwBvr" || n == "SbBvr" || n == "RnBvr") {
    in.xs[1] = fresh_var(avoid_of(in.ds[0].first, {in.xs[0]}));
    return in;
  }
  if (n == "SwCg") {
    Var x1 = in.xs[1];
    Var z = fresh_var(avoid_of(in.ds[0].first, {x1}));
    auto u = ep_sw(m, in.ds[0], z, x1);
    Var x2 = fresh_var(avoid_of(u.first, {z, x1}));
    in.ds[1] = ep_sw(m, u, z, x2);
    in.xs[0] = z;
    in.xs[2] = x2;
    return in;
  }
  if (n == "SwFv") {
    std::set<Var> avoid = avoid_of(in.ds[0].first, {});
    in.xs[0] = fresh_var(avoid);
    avoid.insert(in.xs[0]);
    in.xs[1] = fresh_var(avoid);
    return in;
  }
  if (n == "PmFv") {
    std::set<Var> avoid = avoid_of(in.ds[0].first, {});
    Var a = fresh_var(avoid);
    avoid.insert(a);
    Var b = fresh_var(avoid);
    in.ps[0] = Perm::transposition(a, b);
    return in;
  }
  if (n == "SbLm") {
    in.xs[0] = fresh_var(avoid_of(in.ds[1].first, {in.xs[1]}));
    return in;
  }
  if (n == "FrVr") {
    in.xs[0] = fresh_var(avoid_of(Term::Vr(in.axs[0]), {}));
    return in;
  }
  if (n == "FrAp") {
    std::set<Var> avoid = avoid_of(in.ds[0].first, {});
    for (Var v : fv(in.ds[1].first)) avoid.insert(v);
    in.xs[0] = fresh_var(avoid);
    return in;
  }
  if (n == "FrLm") {
    if (round % 2 == 0)
      in.xs[0] = in.xs[1];
    else
      in.xs[0] = fresh_var(avoid_of(in.ds[0].first, {in.xs[1]}));
    return in;
  }
  if (n == "RnLm1" || n == "RnBvr2" || n == "RnIm" || n == "RnCh" ||
      n == "RnCm") {
    std::set<Var> avoid = x_elems(m.X);
    for (std::size_t i = 0; i < in.xs.size(); ++i) {
      in.xs[i] = fresh_var(avoid);
      avoid.insert(in.xs[i]);
    }
    return in;
  }
  return std::nullopt;
}

template <typename C>
std::string show_epair(const EnhancedModel<C>& m,
                       const typename EnhancedModel<C>::DPair& d) {
  return "(t=" + print_term(d.first) + ", c=" + m.show(d.second) + ")";
}

template <typename C>
std::string show_einst(const EnhancedModel<C>& m, const std::string& n,
                       const EInst<C>& in) {
  std::string out = n + "(";
  bool first = true;
  auto add = [&](const std::string& part) {
    if (!first) out += ", ";
    out += part;
    first = false;
  };
  for (std::size_t i = 0; i < in.ds.size(); ++i)
    add("d" + std::to_string(i) + "=" + show_epair(m, in.ds[i]));
  for (std::size_t i = 0; i < in.xs.size(); ++i)
    add("x" + std::to_string(i) + "=" + default_name(in.xs[i]));
  for (std::size_t i = 0; i < in.axs.size(); ++i)
    add("a" + std::to_string(i) + "=" + default_name(in.axs[i]));
  for (std::size_t i = 0; i < in.ps.size(); ++i)
    add("p" + std::to_string(i) + "=" + in.ps[i].to_string());
  return out + ")";
}

// Laws whose enhanced reading carries a side condition (includes the
// fv-hypothesis laws, which gain guards only in the enhanced setting).
inline bool eprop_is_guarded(const std::string& n) {
  static const std::set<std::string> g = {
      "SwFv",  "SwBvr", "SwCg", "PmFv", "SbLm",  "SbBvr", "RnLm1",
      "RnBvr", "RnBvr2", "RnIm", "RnCh", "RnCm",  "FrVr",  "FrAp",
      "FrLm",  "FvAp",  "FvLm"};
  return g.count(n) != 0;
}

// Sampled domain-closedness of the enhanced model: sampled pairs satisfy the
// predicate and every signature op keeps them inside it, for X-avoiding
// variable choices.
template <typename C>
PropLine check_domain_closed(const EnhancedModel<C>& m,
                             const CheckConfig& cfg) {
  PropLine line;
  line.name = "DomainClosed";
  line.pass = true;
  std::mt19937_64 rng(cfg.seed ^ fnv64("DomainClosed") ^
                      0x9e3779b97f4a7c15ull);
  auto fail = [&](const std::string& what,
                  const typename EnhancedModel<C>::DPair& d) {
    if (line.pass) {
      line.pass = false;
      line.cex = "DomainClosed(" + what + " left the domain at " +
                 show_epair(m, d) + ")";
    }
  };
  int rounds = std::max(1, cfg.n / 30);
  for (int i = 0; i < rounds; ++i) {
    auto d1 = m.sample_pair(rng);
    auto d2 = m.sample_pair(rng);
    ++line.n;
    ++line.hits;
    if (!m.domain(d1.first, d1.second)) {
      fail("sample_pair", d1);
      continue;
    }
    Var x = sample_var_avoiding<C>(rng, cfg.pool, false, m.X);
    Var y = sample_var_avoiding<C>(rng, cfg.pool, true, m.X);
    Var z = sample_var_avoiding<C>(rng, cfg.pool, true, m.X);
    auto probe = [&](const char* what,
                     const typename EnhancedModel<C>::DPair& d) {
      if (!m.domain(d.first, d.second)) fail(what, d);
    };
    probe("VrD", ep_vr(m, y));
    if (m.sig.count(Sym::ap)) probe("ApD", ep_ap(m, d1, d2));
    if (m.sig.count(Sym::lm)) probe("LmD", ep_lm(m, x, d1));
    if (m.sig.count(Sym::sw)) probe("swapD", ep_sw(m, d1, y, z));
    if (m.sig.count(Sym::pm))
      probe("permD", ep_pm(m, d1, Perm::transposition(y, z)));
    if (m.sig.count(Sym::sb)) probe("substD", ep_sb(m, d1, d2, x));
    if (m.sig.count(Sym::ren)) probe("renameD", ep_rn(m, d1, y, z));
  }
  return line;
}

}  // namespace detail

// Enhanced variant of check_props: same report format, with a leading
// DomainClosed line when the model declares its domain.
template <typename C>
PropReport check_enhanced_props(const EnhancedModel<C>& m,
                                const std::vector<std::string>& suite,
                                const CheckConfig& cfg) {
  validate_enhanced(m);
  for (const auto& p : suite) {
    Signature need = prop_requires(p);
    for (Sym s : need)
      if (!m.sig.count(s))
        throw std::invalid_argument("check_enhanced_props: law " + p +
                                    " needs missing op " + sym_name(s));
  }

  PropReport report;
  if (m.domain) report.lines.push_back(detail::check_domain_closed(m, cfg));

  for (const auto& p : suite) {
    std::mt19937_64 rng(cfg.seed ^ fnv64(p) ^ 0x9e3779b97f4a7c15ull);
    PropLine line;
    line.name = p;

    if (p == "FCB") {
      line.heuristic = true;
      VarSet seen = m.X;
      bool seen_finite = true;
      std::vector<typename EnhancedModel<C>::DPair> samples;
      for (int i = 0; i < cfg.n; ++i) samples.push_back(m.sample_pair(rng));
      for (const auto& d : samples) {
        VarSet f = m.fvD(d);
        if (!f.is_finite()) {
          seen_finite = false;
          break;
        }
        seen = VarSet::unite(seen, f);
      }
      bool found = false;
      std::string last_cex;
      VarSet pool_taken = seen_finite ? seen : m.X;
      for (int k = 0; k < cfg.fcb_candidates && !found; ++k) {
        Var x = fresh_var(pool_taken);
        pool_taken.insert(x);
        bool okc = true;
        for (const auto& d : samples) {
          ++line.n;
          if (m.fvD(detail::ep_lm(m, x, d)).contains(x)) {
            okc = false;
            last_cex = "FCB(x=" + default_name(x) +
                       ", d=" + detail::show_epair(m, d) + ")";
            break;
          }
        }
        if (okc) found = true;
      }
      line.pass = found;
      line.hits = line.n;
      if (!found) line.cex = last_cex;
      report.lines.push_back(line);
      continue;
    }

    if (p == "FvDPm" || p == "FvDSw") {
      for (int i = 0; i < cfg.n; ++i) {
        auto d = m.sample_pair(rng);
        Var x = detail::sample_var_avoiding<C>(rng, cfg.pool, i % 2 == 1,
                                               m.X);
        VarSet fvd = m.fvD(d);
        std::set<Var> avoid = detail::x_elems(m.X);
        for (Var v : fv(d.first)) avoid.insert(v);
        if (fvd.is_finite())
          for (Var v : fvd.finite_elems()) avoid.insert(v);
        avoid.insert(x);
        bool moved = false;
        for (int b = 0; b < cfg.probes && !moved; ++b) {
          Var y = fresh_var(avoid);
          avoid.insert(y);
          C img = (p == "FvDPm")
                      ? m.permD(d, Perm::transposition(x, y))
                      : m.swapD(d, x, y);
          if (!m.eq(img, d.second)) moved = true;
        }
        bool holds = (fvd.contains(x) == moved);
        ++line.n;
        ++line.hits;
        if (!holds && line.pass) {
          line.pass = false;
          line.cex = p + "(x=" + default_name(x) +
                     ", d=" + detail::show_epair(m, d) + ")";
        }
      }
      report.lines.push_back(line);
      continue;
    }

    for (int i = 0; i < cfg.n; ++i) {
      EInst<C> in = detail::sample_einst(m, rng, cfg.pool);
      auto [g, okp] = eval_enhanced_prop(m, p, in);
      ++line.n;
      if (g) ++line.hits;
      if (g && !okp && line.pass) {
        line.pass = false;
        line.cex = detail::show_einst(m, p, in);
      }
    }
    if (detail::eprop_is_guarded(p)) {
      int budget = cfg.min_hits * 6;
      for (int round = 0; line.hits < cfg.min_hits && budget > 0; ++round) {
        --budget;
        auto in = detail::targeted_einst(m, p, rng, cfg.pool, round);
        if (!in) break;
        auto [g, okp] = eval_enhanced_prop(m, p, *in);
        ++line.n;
        if (g) ++line.hits;
        if (g && !okp && line.pass) {
          line.pass = false;
          line.cex = detail::show_einst(m, p, *in);
        }
      }
      if (line.hits < cfg.min_hits && line.pass) {
        line.pass = false;
        line.cex = "guard hits below minimum (" + std::to_string(line.hits) +
                   " < " + std::to_string(cfg.min_hits) + ")";
      }
    }
    report.lines.push_back(line);
  }
  return report;
}

template <typename C>
PropReport check_enhanced_props(const EnhancedModel<C>& m, int recursor_id,
                                const CheckConfig& cfg) {
  return check_enhanced_props(m, props_of(recursor_id), cfg);
}

// Recursor over an enhanced model: the fold hands every op the term being
// interpreted alongside the carrier value, and refreshes each binder to
// avoid X before applying LmD.
template <typename C>
Recursion<C> rec_enhanced(int i, const EnhancedModel<C>& m,
                          bool checked = false) {
  validate_enhanced(m);
  detail::require_sig(m.sig, sigma_of(i), "rec_enhanced");
  Recursion<C> r;
  r.source_id = i;
  r.checked = checked;
  EnhancedModel<C> mc = m;
  auto fold = [mc](const Term& t) {
    std::map<std::string, C> memo;
    std::function<C(const Term&)> go = [&](const Term& u) -> C {
      auto it = memo.find(u.canon());
      if (it != memo.end()) return it->second;
      C out = [&] {
        switch (u.kind()) {
          case Term::Kind::Vr:
            return mc.VrD(u.vr_var());
          case Term::Kind::Ap: {
            C fn = go(u.ap_fn());
            C arg = go(u.ap_arg());
            return mc.ApD({u.ap_fn(), fn}, {u.ap_arg(), arg});
          }
          case Term::Kind::Lm: {
            auto [x, body] = DestL(u).extract(mc.X);
            C b = go(body);
            return mc.LmD(x, {body, b});
          }
        }
        throw std::logic_error("rec_enhanced: bad kind");
      }();
      memo.emplace(u.canon(), out);
      return out;
    };
    return go(t);
  };
  r.g = [mc, fold, checked](const Term& t) {
    C out = fold(t);
    if (checked) {
      C out2 = fold(refresh_binders(t));
      if (!mc.eq(out, out2))
        throw std::runtime_error("alpha-instability on input: " +
                                 print_term(t));
    }
    return out;
  };
  return r;
}

}  // namespace nomrec
