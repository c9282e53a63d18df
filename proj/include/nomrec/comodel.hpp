#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nomrec/coterm.hpp"
#include "nomrec/model.hpp"
#include "nomrec/perm.hpp"
#include "nomrec/props.hpp"
#include "nomrec/term.hpp"
#include "nomrec/var.hpp"

namespace nomrec {

// Destructor alternatives over an abstract carrier S. An abstraction is
// reported through one canonical (binder, body) pair plus an optional
// membership test for the full set of admissible pairs; when the test is
// absent, membership defaults to the bound-variable-renaming adapter (see
// co_member). ObsX is an exit: the state is already a finished coterm. Only
// full_corec5 accepts exits; the plain corecursors treat one as a bug.
template <typename S>
struct ObsV {
  Var x;
};
template <typename S>
struct ObsA {
  S fn, arg;
};
template <typename S>
struct ObsL {
  Var binder;
  S body;
  std::function<bool(Var, const S&)> member;
};
template <typename S>
struct ObsX {
  CoTerm out;
};
template <typename S>
using Obs = std::variant<ObsV<S>, ObsA<S>, ObsL<S>, ObsX<S>>;

// A comodel bundle over carrier S: a destructor plus the operator
// interpretations named by sig. Constructor symbols are subsumed by the
// destructor, except vr, which the substitution signature interprets as a
// variable injection. eq is the comodel's own notion of equality.
template <typename S>
struct CoModel {
  Signature sig;
  std::function<bool(const S&, const S&)> eq;
  std::function<S(std::mt19937_64&)> sample;
  std::function<std::string(const S&)> show;
  std::function<Obs<S>(const S&)> dest;

  std::function<S(const S&, const Perm&)> permD;
  std::function<S(const S&, Var, Var)> swapD;
  std::function<S(const S&, const S&, Var)> substD;
  std::function<S(const S&, Var, Var)> renameD;
  std::function<VarSet(const S&)> fvD;
  std::function<bool(Var, const S&)> freshD;
  std::function<S(Var)> VrD;

  std::optional<std::function<VarSet(const S&)>> supp_oracle;

  // Dedup key for corecursion: equal keys must denote equal states (distinct
  // keys may still denote equal states). Falls back to show when unset.
  std::function<std::string(const S&)> key;
  // Declares that the closure of any state under the destructor is finite,
  // so corecursion may intern states by key and emit regular coterms.
  bool finite_states = false;
};

// The operator signature used by corecursor i. There is no corecursor with
// id 4 (std::invalid_argument); other ids outside 1..9 are out_of_range.
Signature co_sigma_of(int i);

// The law suite underlying corecursor i, in pinned order. Same id policy as
// co_sigma_of.
std::vector<std::string> coprops_of(int i);

template <typename S>
void validate_comodel(const CoModel<S>& m) {
  if (!m.eq || !m.sample || !m.show || !m.dest)
    throw std::invalid_argument(
        "comodel: eq/sample/show/dest must be populated");
  if (m.sig.count(Sym::ap) || m.sig.count(Sym::lm))
    throw std::invalid_argument(
        "comodel: ap/lm are subsumed by the destructor");
  auto need = [&](Sym s, bool present) {
    if (m.sig.count(s) && !present)
      throw std::invalid_argument("comodel: signature names " + sym_name(s) +
                                  " but the op is missing");
  };
  need(Sym::vr, static_cast<bool>(m.VrD));
  need(Sym::pm, static_cast<bool>(m.permD));
  need(Sym::sw, static_cast<bool>(m.swapD));
  need(Sym::sb, static_cast<bool>(m.substD));
  need(Sym::ren, static_cast<bool>(m.renameD));
  need(Sym::fv, static_cast<bool>(m.fvD));
  need(Sym::fr, static_cast<bool>(m.freshD));
}

// Freshness access with the standard derivations: the stored predicate, the
// complement of fvD, or rename probes through the support oracle. The
// returned function throws std::invalid_argument when none applies.
template <typename S>
std::function<bool(Var, const S&)> co_freshness(const CoModel<S>& m,
                                                int probes = 3) {
  if (m.freshD) return m.freshD;
  if (m.fvD) {
    auto fvD = m.fvD;
    return [fvD](Var x, const S& s) { return !fvD(s).contains(x); };
  }
  if (m.renameD && m.supp_oracle) {
    auto renameD = m.renameD;
    auto eq = m.eq;
    auto supp = *m.supp_oracle;
    return [renameD, eq, supp, probes](Var x, const S& s) {
      VarSet avoid = supp(s);
      if (!avoid.is_finite())
        throw std::invalid_argument(
            "comodel freshness: supp_oracle answer is not finite");
      avoid.insert(x);
      for (int b = 0; b < probes; ++b) {
        Var y = fresh_var(avoid);
        avoid.insert(y);
        if (!eq(renameD(s, y, x), s)) return false;
      }
      return true;
    };
  }
  return [](Var, const S&) -> bool {
    throw std::invalid_argument(
        "comodel freshness: no freshD, fvD, or renameD with supp_oracle");
  };
}

// The signature's bound-variable move: body with y in place of the binder x.
// Swapping and permutation also move x out of the way; renaming and
// substitution overwrite it.
template <typename S>
S co_bvr_body(const CoModel<S>& m, const S& body, Var y, Var x) {
  if (m.sig.count(Sym::sw) && m.swapD) return m.swapD(body, y, x);
  if (m.sig.count(Sym::pm) && m.permD)
    return m.permD(body, Perm::transposition(y, x));
  if (m.sig.count(Sym::ren) && m.renameD) return m.renameD(body, y, x);
  if (m.sig.count(Sym::sb) && m.substD && m.VrD)
    return m.substD(body, m.VrD(y), x);
  throw std::invalid_argument(
      "comodel: no operation to move a bound variable");
}

// Abstraction-set membership: the stored test when present, otherwise the
// adapter "(y, cand) belongs iff y is the binder or fresh for the body, and
// cand equals the body with y moved in for the binder".
template <typename S>
bool co_member(const CoModel<S>& m,
               const std::function<bool(Var, const S&)>& fresh,
               const ObsL<S>& L, Var y, const S& cand) {
  if (L.member) return L.member(y, cand);
  if (!(y == L.binder || fresh(y, L.body))) return false;
  return m.eq(cand, co_bvr_body(m, L.body, y, L.binder));
}

// A variable the comodel regards as fresh for s, outside extra: picked below
// the support oracle or fvD when available, otherwise scanned through the
// freshness predicate. nullopt when the comodel offers no way to find one.
template <typename S>
std::optional<Var> co_pick_fresh(const CoModel<S>& m,
                                 const std::function<bool(Var, const S&)>& fresh,
                                 const S& s, const std::set<Var>& extra) {
  if (m.supp_oracle) {
    VarSet avoid = (*m.supp_oracle)(s);
    if (avoid.is_finite()) {
      for (Var v : extra) avoid.insert(v);
      return fresh_var(avoid);
    }
  }
  if (m.fvD) {
    VarSet f = m.fvD(s);
    if (f.is_finite()) {
      for (Var v : extra) f.insert(v);
      return fresh_var(f);
    }
  }
  for (std::uint64_t i = 0; i < 64; ++i) {
    Var cand = var(i);
    if (extra.count(cand)) continue;
    bool ok = false;
    try {
      ok = fresh(cand, s);
    } catch (const std::invalid_argument&) {
      return std::nullopt;
    }
    if (ok) return cand;
  }
  return std::nullopt;
}

// A second member of L's abstraction set, distinct from the canonical pair
// when possible: candidate binders are the sampled variable and a picked
// fresh one, bodies are built by the signature's bound-variable move, and
// only candidates accepted by the membership test are returned.
template <typename S>
std::optional<std::pair<Var, S>> co_second_member(
    const CoModel<S>& m, const std::function<bool(Var, const S&)>& fresh,
    const ObsL<S>& L, Var sampled, const std::set<Var>& avoid_extra) {
  std::vector<Var> cands;
  if (sampled != L.binder && !avoid_extra.count(sampled))
    cands.push_back(sampled);
  std::set<Var> extra = avoid_extra;
  extra.insert(L.binder);
  if (auto zf = co_pick_fresh(m, fresh, L.body, extra)) cands.push_back(*zf);
  for (Var y : cands) {
    S moved = co_bvr_body(m, L.body, y, L.binder);
    if (co_member(m, fresh, L, y, moved)) return std::make_pair(y, moved);
  }
  return std::nullopt;
}

namespace codetail {

// Structural agreement of two destructor results: equal shape with eq
// components; abstractions agree when each canonical pair is a member of the
// other's set.
template <typename S>
bool co_dest_agree(const CoModel<S>& m,
                   const std::function<bool(Var, const S&)>& fresh,
                   const Obs<S>& a, const Obs<S>& b) {
  if (a.index() != b.index()) return false;
  if (const auto* va = std::get_if<ObsV<S>>(&a))
    return va->x == std::get<ObsV<S>>(b).x;
  if (const auto* aa = std::get_if<ObsA<S>>(&a)) {
    const auto& ab = std::get<ObsA<S>>(b);
    return m.eq(aa->fn, ab.fn) && m.eq(aa->arg, ab.arg);
  }
  if (const auto* la = std::get_if<ObsL<S>>(&a)) {
    const auto& lb = std::get<ObsL<S>>(b);
    return co_member(m, fresh, *la, lb.binder, lb.body) &&
           co_member(m, fresh, lb, la->binder, la->body);
  }
  const CoTerm& ta = std::get<ObsX<S>>(a).out;
  const CoTerm& tb = std::get<ObsX<S>>(b).out;
  if (ta.regular() && tb.regular()) return co_alpha_eq(ta, tb);
  return co_alpha_eq_upto(ta, tb, 30);
}

template <typename S>
struct CoInst {
  std::vector<S> ss;
  std::vector<Var> xs;
  Perm p;
};

template <typename S>
std::string show_coinst(const CoModel<S>& m, const std::string& n,
                        const CoInst<S>& in) {
  std::string out = n + "(";
  bool first = true;
  auto add = [&](const std::string& s) {
    if (!first) out += ", ";
    out += s;
    first = false;
  };
  for (std::size_t i = 0; i < in.ss.size(); ++i)
    add("s" + std::to_string(i) + "=" + m.show(in.ss[i]));
  for (std::size_t i = 0; i < in.xs.size(); ++i)
    add("x" + std::to_string(i) + "=" + default_name(in.xs[i]));
  add("p=" + in.p.to_string());
  out += ")";
  return out;
}

// Evaluates one destructor-shaped law instance. Guard covers both the shape
// requirement and any freshness side condition.
template <typename S>
std::pair<bool, bool> eval_codest_prop(
    const CoModel<S>& m, const std::function<bool(Var, const S&)>& fresh,
    const std::string& n, const CoInst<S>& in) {
  using detail::mrn;
  using detail::msw;
  const S& s = in.ss[0];
  Obs<S> d = m.dest(s);
  const auto* dv = std::get_if<ObsV<S>>(&d);
  const auto* da = std::get_if<ObsA<S>>(&d);
  const auto* dl = std::get_if<ObsL<S>>(&d);

  // whole-state op and variable map of the law's operator family
  std::function<S(const S&)> op;
  std::function<Var(Var)> vmap;
  auto opneed = [&](Sym sy, bool present) {
    if (!present)
      throw std::invalid_argument("check_coprops: law " + n +
                                  " needs missing op " + sym_name(sy));
  };
  if (n.rfind("Pm", 0) == 0) {
    opneed(Sym::pm, static_cast<bool>(m.permD));
    Perm p = in.p;
    auto permD = m.permD;
    op = [permD, p](const S& v) { return permD(v, p); };
    vmap = [p](Var v) { return p.apply(v); };
  } else if (n.rfind("Sw", 0) == 0 || n == "FvDSwInf") {
    opneed(Sym::sw, static_cast<bool>(m.swapD));
    Var z1 = in.xs[0], z2 = in.xs[1];
    auto swapD = m.swapD;
    op = [swapD, z1, z2](const S& v) { return swapD(v, z1, z2); };
    vmap = [z1, z2](Var v) { return msw(v, z1, z2); };
  } else if (n.rfind("Rn", 0) == 0 || n == "FrDRnInf") {
    opneed(Sym::ren, static_cast<bool>(m.renameD));
    Var y = in.xs[0], z = in.xs[1];
    auto renameD = m.renameD;
    op = [renameD, y, z](const S& v) { return renameD(v, y, z); };
    vmap = [y, z](Var v) { return mrn(v, y, z); };
  } else if (n.rfind("Sb", 0) == 0) {
    opneed(Sym::sb, static_cast<bool>(m.substD));
    Var z = in.xs[0];
    S img = in.ss[1];
    auto substD = m.substD;
    op = [substD, img, z](const S& v) { return substD(v, img, z); };
    vmap = [](Var v) { return v; };
  }

  if (n == "PmVrInf" || n == "SwVrInf" || n == "RnVrInf") {
    if (!dv) return {false, true};
    Obs<S> d2 = m.dest(op(s));
    const auto* v2 = std::get_if<ObsV<S>>(&d2);
    return {true, v2 && v2->x == vmap(dv->x)};
  }
  if (n == "SbVrInf") {
    if (!dv) return {false, true};
    Var z = in.xs[0];
    Obs<S> d2 = m.dest(op(s));
    if (dv->x == z) return {true, co_dest_agree(m, fresh, d2, m.dest(in.ss[1]))};
    const auto* v2 = std::get_if<ObsV<S>>(&d2);
    return {true, v2 && v2->x == dv->x};
  }
  if (n == "PmApInf" || n == "SwApInf" || n == "RnApInf" || n == "SbApInf") {
    if (!da) return {false, true};
    Obs<S> d2 = m.dest(op(s));
    const auto* a2 = std::get_if<ObsA<S>>(&d2);
    return {true, a2 && m.eq(a2->fn, op(da->fn)) && m.eq(a2->arg, op(da->arg))};
  }
  if (n == "PmLmInf" || n == "SwLmInf") {
    if (!dl) return {false, true};
    Obs<S> d2 = m.dest(op(s));
    const auto* l2 = std::get_if<ObsL<S>>(&d2);
    if (!l2) return {true, false};
    bool ok = co_member(m, fresh, *l2, vmap(dl->binder), op(dl->body));
    if (auto sm = co_second_member(m, fresh, *dl, in.xs[2], {}))
      ok = ok && co_member(m, fresh, *l2, vmap(sm->first), op(sm->second));
    return {true, ok};
  }
  if (n == "RnLm1Inf") {
    if (!dl) return {false, true};
    Var y = in.xs[0], z = in.xs[1];
    std::vector<std::pair<Var, S>> members;
    if (dl->binder != y && dl->binder != z)
      members.emplace_back(dl->binder, dl->body);
    if (auto sm = co_second_member(m, fresh, *dl, in.xs[2], {y, z}))
      if (sm->first != y && sm->first != z) members.push_back(*sm);
    if (members.empty()) return {false, true};
    Obs<S> d2 = m.dest(op(s));
    const auto* l2 = std::get_if<ObsL<S>>(&d2);
    if (!l2) return {true, false};
    bool ok = true;
    for (const auto& [w, b] : members)
      ok = ok && co_member(m, fresh, *l2, w, op(b));
    return {true, ok};
  }
  if (n == "SbLmInf") {
    if (!dl) return {false, true};
    Var z = in.xs[0];
    const S& img = in.ss[1];
    std::set<Var> avoid = {z};
    if (m.supp_oracle) {
      VarSet sup = (*m.supp_oracle)(img);
      if (sup.is_finite())
        for (Var v : sup.finite_elems()) avoid.insert(v);
    }
    std::vector<std::pair<Var, S>> members;
    if (dl->binder != z && fresh(dl->binder, img))
      members.emplace_back(dl->binder, dl->body);
    if (auto sm = co_second_member(m, fresh, *dl, in.xs[2], avoid))
      if (sm->first != z && fresh(sm->first, img)) members.push_back(*sm);
    if (members.empty()) return {false, true};
    Obs<S> d2 = m.dest(op(s));
    const auto* l2 = std::get_if<ObsL<S>>(&d2);
    if (!l2) return {true, false};
    bool ok = true;
    for (const auto& [w, b] : members)
      ok = ok && co_member(m, fresh, *l2, w, op(b));
    return {true, ok};
  }
  if (n == "PmBvrInf" || n == "SwBvrInf" || n == "SwBvrInf2" ||
      n == "RnBvrInf" || n == "SbBvrInf") {
    if (!dl) return {false, true};
    Var x = dl->binder;
    const S& t = dl->body;
    std::function<S(Var)> move;
    if (n == "PmBvrInf") {
      opneed(Sym::pm, static_cast<bool>(m.permD));
      auto permD = m.permD;
      move = [permD, t, x](Var y) {
        return permD(t, Perm::transposition(y, x));
      };
    } else if (n == "RnBvrInf") {
      opneed(Sym::ren, static_cast<bool>(m.renameD));
      auto renameD = m.renameD;
      move = [renameD, t, x](Var y) { return renameD(t, y, x); };
    } else if (n == "SbBvrInf") {
      opneed(Sym::sb, static_cast<bool>(m.substD && m.VrD));
      auto substD = m.substD;
      auto VrD = m.VrD;
      move = [substD, VrD, t, x](Var y) { return substD(t, VrD(y), x); };
    } else {
      opneed(Sym::sw, static_cast<bool>(m.swapD));
      auto swapD = m.swapD;
      move = [swapD, t, x](Var y) { return swapD(t, y, x); };
    }
    bool fv_guard = (n == "PmBvrInf" || n == "SwBvrInf2");
    auto cleared = [&](Var y) {
      if (y == x) return true;
      if (fv_guard) {
        opneed(Sym::fv, static_cast<bool>(m.fvD));
        return !m.fvD(t).contains(y);
      }
      return fresh(y, t);
    };
    // candidate second members, junk included; every accepted one must
    // satisfy the conclusion
    std::vector<std::pair<Var, S>> cands;
    cands.emplace_back(x, t);
    cands.emplace_back(in.xs[2], move(in.xs[2]));
    if (in.xs[3] != x) cands.emplace_back(in.xs[3], t);
    if (auto zf = co_pick_fresh(m, fresh, t, {x}))
      cands.emplace_back(*zf, move(*zf));
    bool any = false, ok = true;
    for (const auto& [y, u] : cands) {
      if (!co_member(m, fresh, *dl, y, u)) continue;
      any = true;
      ok = ok && cleared(y) && m.eq(u, move(y));
    }
    return {any, ok};
  }
  if (n == "SbBvrPInf" || n == "RnBvrPInf") {
    if (!dl) return {false, true};
    Var x = dl->binder;
    const S& t = dl->body;
    Var y = in.xs[2];
    bool have = false;
    try {
      have = fresh(y, t);
    } catch (const std::invalid_argument&) {
      throw;
    }
    if (!have) {
      if (auto zf = co_pick_fresh(m, fresh, t, {})) {
        y = *zf;
        have = fresh(y, t);
      }
    }
    if (!have) return {false, true};
    S u = n == "SbBvrPInf"
              ? (opneed(Sym::sb, static_cast<bool>(m.substD && m.VrD)),
                 m.substD(t, m.VrD(y), x))
              : (opneed(Sym::ren, static_cast<bool>(m.renameD)),
                 m.renameD(t, y, x));
    return {true, co_member(m, fresh, *dl, y, u)};
  }
  if (n == "SwCgInf") {
    if (!dl) return {false, true};
    Var x1 = dl->binder;
    const S& t1 = dl->body;
    auto sm = co_second_member(m, fresh, *dl, in.xs[2], {});
    if (!sm) return {false, true};
    Var x2 = sm->first;
    const S& t2 = sm->second;
    std::set<Var> extra = {x1, x2};
    if (m.supp_oracle) {
      VarSet sup = (*m.supp_oracle)(t2);
      if (sup.is_finite())
        for (Var v : sup.finite_elems()) extra.insert(v);
    }
    std::vector<Var> zs = {x1, x2, in.xs[3]};
    if (auto zf = co_pick_fresh(m, fresh, t1, extra)) zs.push_back(*zf);
    auto swapD = m.swapD;
    for (Var z : zs) {
      if (!(z == x1 || fresh(z, t1))) continue;
      if (!(z == x2 || fresh(z, t2))) continue;
      if (m.eq(swapD(t1, z, x1), swapD(t2, z, x2))) return {true, true};
    }
    return {true, false};
  }
  if (n == "FrVrInf") {
    Var z = in.xs[2];
    bool g = dv && fresh(z, s);
    return {g, !g || z != dv->x};
  }
  if (n == "FrApInf") {
    Var z = in.xs[2];
    bool g = da && fresh(z, s);
    return {g, !g || (fresh(z, da->fn) && fresh(z, da->arg))};
  }
  if (n == "FrLmInf") {
    Var z = in.xs[2];
    bool g = dl && fresh(z, s);
    if (!g) return {false, true};
    bool ok = z == dl->binder || fresh(z, dl->body);
    if (auto sm = co_second_member(m, fresh, *dl, in.xs[3], {}))
      ok = ok && (z == sm->first || fresh(z, sm->second));
    return {true, ok};
  }
  if (n == "FvVrInf") {
    opneed(Sym::fv, static_cast<bool>(m.fvD));
    if (!dv) return {false, true};
    return {true, m.fvD(s).contains(dv->x)};
  }
  if (n == "FvApInf") {
    opneed(Sym::fv, static_cast<bool>(m.fvD));
    if (!da) return {false, true};
    VarSet u = VarSet::unite(m.fvD(da->fn), m.fvD(da->arg));
    return {true, u.subset_of(m.fvD(s))};
  }
  if (n == "FvLmInf") {
    opneed(Sym::fv, static_cast<bool>(m.fvD));
    if (!dl) return {false, true};
    VarSet whole = m.fvD(s);
    bool ok = m.fvD(dl->body).without(dl->binder).subset_of(whole);
    if (auto sm = co_second_member(m, fresh, *dl, in.xs[2], {}))
      ok = ok && m.fvD(sm->second).without(sm->first).subset_of(whole);
    return {true, ok};
  }
  if (n == "VrInv") {
    opneed(Sym::vr, static_cast<bool>(m.VrD));
    Var x = in.xs[2];
    Obs<S> dx = m.dest(m.VrD(x));
    const auto* vx = std::get_if<ObsV<S>>(&dx);
    bool ok = vx && vx->x == x;
    if (dv) ok = ok && m.eq(s, m.VrD(dv->x));
    return {true, ok};
  }
  throw std::invalid_argument("check_coprops: unsupported law id " + n);
}

// The algebraic law ids evaluated over the operator view of a comodel.
inline bool co_law_is_algebraic(const std::string& n) {
  static const std::set<std::string> a = {
      "PmId", "PmCp", "PmFv", "SwId",   "SwIv",   "SwCp", "SwFr",
      "FrSw", "SbId", "SbFr", "SbChFr", "SbCm",   "FrSb", "RnId",
      "RnIm", "RnCh", "RnCm", "RnChFr", "RnFr",   "FrRn", "FrRn2",
      "FrVr"};
  return a.count(n) != 0;
}

inline bool co_law_needs_probes(const std::string& n) {
  return n == "FvDPmInf" || n == "FvDSwInf" || n == "FrDRnInf" ||
         n == "FSupFrInf";
}

// Operator view of a comodel: the ops, equality, sampler and oracle under the
// finitary Model shape, so the shared algebraic-law evaluator applies. The
// view's signature lists the populated operator symbols; freshness falls back
// along the standard derivations.
template <typename S>
Model<S> co_model_view(const CoModel<S>& cm, int probes) {
  Model<S> v;
  v.eq = cm.eq;
  v.sample = cm.sample;
  v.show = cm.show;
  v.permD = cm.permD;
  v.swapD = cm.swapD;
  v.substD = cm.substD;
  v.renameD = cm.renameD;
  v.fvD = cm.fvD;
  v.VrD = cm.VrD;
  v.supp_oracle = cm.supp_oracle;
  if (cm.permD) v.sig.insert(Sym::pm);
  if (cm.swapD) v.sig.insert(Sym::sw);
  if (cm.substD) v.sig.insert(Sym::sb);
  if (cm.renameD) v.sig.insert(Sym::ren);
  if (cm.fvD) v.sig.insert(Sym::fv);
  if (cm.VrD) v.sig.insert(Sym::vr);
  if (cm.freshD || cm.fvD || (cm.renameD && cm.supp_oracle)) {
    v.freshD = co_freshness(cm, probes);
    v.sig.insert(Sym::fr);
  }
  return v;
}

// One algebraic law line over the operator view; mirrors the plain-law
// branch of check_props including the guarded-instance targeting.
template <typename S>
PropLine co_check_algebraic_line(const Model<S>& view, const std::string& p,
                                 const CheckConfig& cfg) {
  // ap/lm are subsumed by the destructor, and vr matters only to the laws
  // that inject variables
  bool wants_vr = p == "SbId" || p == "SbChFr" || p == "FrVr";
  Signature need = prop_requires(p);
  for (Sym sy : need) {
    if (sy == Sym::ap || sy == Sym::lm) continue;
    if (sy == Sym::vr && !wants_vr) continue;
    if (!view.sig.count(sy))
      throw std::invalid_argument("check_coprops: law " + p +
                                  " needs missing op " + sym_name(sy));
  }
  std::mt19937_64 rng(cfg.seed ^ fnv64(p) ^ 0x9e3779b97f4a7c15ull);
  PropLine line;
  line.name = p;
  for (int i = 0; i < cfg.n; ++i) {
    MInst<S> in = detail::sample_inst(view, rng, cfg.pool);
    auto [g, ok] = eval_model_prop(view, p, in);
    ++line.n;
    if (g) ++line.hits;
    if (g && !ok && line.pass) {
      line.pass = false;
      line.cex = detail::show_inst(view, p, in);
    }
  }
  if (prop_is_guarded(p)) {
    int budget = cfg.min_hits * 6;
    for (int round = 0; line.hits < cfg.min_hits && budget > 0; ++round) {
      --budget;
      auto in = detail::targeted_inst(view, p, rng, cfg.pool, round);
      if (!in) break;
      auto [g, ok] = eval_model_prop(view, p, *in);
      ++line.n;
      if (g) ++line.hits;
      if (g && !ok && line.pass) {
        line.pass = false;
        line.cex = detail::show_inst(view, p, *in);
      }
    }
    if (line.hits < cfg.min_hits && line.pass) {
      line.pass = false;
      line.cex = "guard hits below minimum (" + std::to_string(line.hits) +
                 " < " + std::to_string(cfg.min_hits) + ")";
    }
  }
  return line;
}

}  // namespace codetail

template <typename S>
PropReport check_coprops(const CoModel<S>& cm,
                         const std::vector<std::string>& suite,
                         const CheckConfig& cfg) {
  validate_comodel(cm);
  auto fresh = co_freshness(cm, cfg.probes);
  Model<S> view = codetail::co_model_view(cm, cfg.probes);

  PropReport report;
  for (const auto& p : suite) {
    if (codetail::co_law_is_algebraic(p)) {
      report.lines.push_back(codetail::co_check_algebraic_line(view, p, cfg));
      continue;
    }

    std::mt19937_64 rng(cfg.seed ^ fnv64(p) ^ 0x9e3779b97f4a7c15ull);
    PropLine line;
    line.name = p;

    if (codetail::co_law_needs_probes(p)) {
      line.heuristic = (p == "FSupFrInf");
      for (int i = 0; i < cfg.n; ++i) {
        S c = cm.sample(rng);
        Var x = detail::sample_var<S>(rng, cfg.pool, i % 2 == 1);
        bool holds = true;
        if (p == "FvDPmInf") {
          if (!cm.fvD || !cm.permD)
            throw std::invalid_argument(
                "check_coprops: FvDPmInf needs pm and fv ops");
          bool moved = detail::probe_moves<S>(
              view, c, x,
              [&](const S& v, Var a, Var b) {
                return cm.permD(v, Perm::transposition(a, b));
              },
              cfg.probes, p);
          holds = (cm.fvD(c).contains(x) == moved);
        } else if (p == "FvDSwInf") {
          if (!cm.fvD || !cm.swapD)
            throw std::invalid_argument(
                "check_coprops: FvDSwInf needs sw and fv ops");
          bool moved = detail::probe_moves<S>(
              view, c, x,
              [&](const S& v, Var a, Var b) { return cm.swapD(v, a, b); },
              cfg.probes, p);
          holds = (cm.fvD(c).contains(x) == moved);
        } else if (p == "FrDRnInf") {
          if (!cm.renameD)
            throw std::invalid_argument("check_coprops: FrDRnInf needs ren op");
          bool moved = detail::probe_moves<S>(
              view, c, x,
              [&](const S& v, Var a, Var b) { return cm.renameD(v, b, a); },
              cfg.probes, p);
          holds = (fresh(x, c) == !moved);
        } else {  // FSupFrInf: the non-fresh set stays inside the oracle
          if (!cm.supp_oracle)
            throw std::invalid_argument(
                "check_coprops: FSupFrInf needs supp_oracle");
          VarSet sup = (*cm.supp_oracle)(c);
          if (!sup.is_finite())
            throw std::invalid_argument(
                "check_coprops: supp_oracle answer is not finite");
          for (int b = 0; b < cfg.probes && holds; ++b) {
            Var y = fresh_var(sup);
            sup.insert(y);
            holds = fresh(y, c);
          }
        }
        ++line.n;
        ++line.hits;
        if (!holds && line.pass) {
          line.pass = false;
          line.cex = p + "(x=" + default_name(x) + ", s=" + cm.show(c) + ")";
        }
      }
      report.lines.push_back(line);
      continue;
    }

    for (int i = 0; i < cfg.n; ++i) {
      codetail::CoInst<S> in;
      for (int j = 0; j < 2; ++j) in.ss.push_back(cm.sample(rng));
      for (int j = 0; j < 4; ++j)
        in.xs.push_back(detail::sample_var<S>(rng, cfg.pool, j % 2 == 1));
      in.p = detail::sample_perm<S>(rng, cfg.pool);
      auto [g, ok] = codetail::eval_codest_prop(cm, fresh, p, in);
      ++line.n;
      if (g) ++line.hits;
      if (g && !ok && line.pass) {
        line.pass = false;
        line.cex = codetail::show_coinst(cm, p, in);
      }
    }
    if (line.hits < cfg.min_hits && line.pass) {
      line.pass = false;
      line.cex = "guard hits below minimum (" + std::to_string(line.hits) +
                 " < " + std::to_string(cfg.min_hits) + ")";
    }
    report.lines.push_back(line);
  }
  return report;
}

template <typename S>
PropReport check_coprops(const CoModel<S>& cm, int corecursor_id,
                         const CheckConfig& cfg) {
  return check_coprops(cm, coprops_of(corecursor_id), cfg);
}

// ---------------------------------------------------------------------------
// Comodel transforms. Each one swaps an operator for a derived one, mirroring
// the expressiveness order of the corecursors; the source op is erased so the
// result's signature is honest.

// c[x^y] := c[(x y)]
template <typename S>
CoModel<S> co_swap_from_perm(const CoModel<S>& m) {
  if (!m.sig.count(Sym::pm))
    throw std::invalid_argument("co_swap_from_perm: comodel lacks pm");
  CoModel<S> out = m;
  auto permD = m.permD;
  out.swapD = [permD](const S& c, Var x, Var y) {
    return permD(c, Perm::transposition(x, y));
  };
  out.sig.erase(Sym::pm);
  out.sig.insert(Sym::sw);
  out.permD = nullptr;
  return out;
}

// Folds a transposition decomposition; sound on carriers satisfying
// SwId/SwIv/SwCp, where the decomposition chosen does not matter.
template <typename S>
CoModel<S> co_perm_from_swap(const CoModel<S>& m) {
  if (!m.sig.count(Sym::sw))
    throw std::invalid_argument("co_perm_from_swap: comodel lacks sw");
  CoModel<S> out = m;
  auto swapD = m.swapD;
  out.permD = [swapD](const S& c, const Perm& p) {
    S acc = c;
    for (auto [x, y] : p.decompose()) acc = swapD(acc, x, y);
    return acc;
  };
  out.sig.erase(Sym::sw);
  out.sig.insert(Sym::pm);
  out.swapD = nullptr;
  return out;
}

// Freshness as the complement of the free-variable operator.
template <typename S>
CoModel<S> co_fresh_from_fv(const CoModel<S>& m) {
  if (!m.sig.count(Sym::fv))
    throw std::invalid_argument("co_fresh_from_fv: comodel lacks fv");
  CoModel<S> out = m;
  auto fvD = m.fvD;
  out.freshD = [fvD](Var x, const S& c) { return !fvD(c).contains(x); };
  out.sig.erase(Sym::fv);
  out.sig.insert(Sym::fr);
  out.fvD = nullptr;
  return out;
}

// Free variables as the non-fresh part of the support oracle's answer. The
// oracle is consulted lazily, so carriers without one can still take this
// road as long as nothing downstream calls fvD.
template <typename S>
CoModel<S> co_fv_from_fresh(const CoModel<S>& m) {
  if (!m.sig.count(Sym::fr))
    throw std::invalid_argument("co_fv_from_fresh: comodel lacks fr");
  CoModel<S> out = m;
  auto freshD = m.freshD;
  auto oracle = m.supp_oracle;
  out.fvD = [freshD, oracle](const S& c) -> VarSet {
    if (!oracle)
      throw std::invalid_argument("co_fv_from_fresh: comodel lacks supp_oracle");
    VarSet sup = (*oracle)(c);
    if (!sup.is_finite())
      throw std::invalid_argument(
          "co_fv_from_fresh: supp_oracle answer is not finite");
    std::set<Var> got;
    for (Var v : sup.finite_elems())
      if (!freshD(v, c)) got.insert(v);
    return VarSet::finite(std::move(got));
  };
  out.sig.erase(Sym::fr);
  out.sig.insert(Sym::fv);
  out.freshD = nullptr;
  return out;
}

// c[y/x] := c[(Vr y)/x]
template <typename S>
CoModel<S> co_rename_from_subst(const CoModel<S>& m) {
  if (!m.sig.count(Sym::sb) || !m.sig.count(Sym::vr))
    throw std::invalid_argument("co_rename_from_subst: comodel lacks sb or vr");
  CoModel<S> out = m;
  auto substD = m.substD;
  auto VrD = m.VrD;
  out.renameD = [substD, VrD](const S& c, Var y, Var x) {
    return substD(c, VrD(y), x);
  };
  out.sig.erase(Sym::sb);
  out.sig.erase(Sym::vr);
  out.sig.insert(Sym::ren);
  out.substD = nullptr;
  return out;
}

// Swapping as three renames through a fresh intermediary below the support
// oracle's answer. The oracle is mandatory: without it no safe intermediary
// can be produced.
template <typename S>
CoModel<S> co_swap_from_rename(const CoModel<S>& m) {
  if (!m.sig.count(Sym::ren))
    throw std::invalid_argument("co_swap_from_rename: comodel lacks ren");
  if (!m.supp_oracle)
    throw std::invalid_argument("co_swap_from_rename: comodel lacks supp_oracle");
  CoModel<S> out = m;
  auto renameD = m.renameD;
  auto supp = *m.supp_oracle;
  out.swapD = [renameD, supp](const S& c, Var z1, Var z2) {
    if (z1 == z2) return c;
    VarSet avoid = supp(c);
    if (!avoid.is_finite())
      throw std::invalid_argument(
          "co_swap_from_rename: supp_oracle answer is not finite");
    avoid.insert(z1);
    avoid.insert(z2);
    Var y = fresh_var(avoid);
    return renameD(renameD(renameD(c, y, z1), z1, z2), z2, y);
  };
  out.sig.erase(Sym::ren);
  out.sig.insert(Sym::sw);
  out.renameD = nullptr;
  return out;
}

// x is fresh when renaming x away does not move the state; probes are
// variables outside the support oracle's answer.
template <typename S>
CoModel<S> co_fresh_from_rename(const CoModel<S>& m, int probes = 3) {
  if (!m.sig.count(Sym::ren))
    throw std::invalid_argument("co_fresh_from_rename: comodel lacks ren");
  if (!m.supp_oracle)
    throw std::invalid_argument(
        "co_fresh_from_rename: comodel lacks supp_oracle");
  CoModel<S> out = m;
  auto renameD = m.renameD;
  auto eq = m.eq;
  auto supp = *m.supp_oracle;
  out.freshD = [renameD, eq, supp, probes](Var x, const S& c) {
    VarSet avoid = supp(c);
    if (!avoid.is_finite())
      throw std::invalid_argument(
          "co_fresh_from_rename: supp_oracle answer is not finite");
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

// ---------------------------------------------------------------------------
// Corecursion: interpretation of comodel states as coterms.

template <typename S>
struct Corecursion {
  int source_id = 0;
  std::function<CoTerm(const S&)> g;
};

// The trusted kernel: unfolds the destructor of a permutation/free-variable
// comodel into a coterm, collapsing each abstraction set to its canonical
// pair. States are interned per call; comodels declaring a finite state
// closure are deduplicated by key and produce regular coterms.
template <typename S>
Corecursion<S> corec2(const CoModel<S>& cm) {
  validate_comodel(cm);
  if (!cm.sig.count(Sym::pm) || !cm.sig.count(Sym::fv))
    throw std::invalid_argument(
        "corec2: comodel signature is not the permutation/free-variable one");
  CoModel<S> m = cm;
  if (!m.key) m.key = m.show;
  auto g = [m](const S& s0) -> CoTerm {
    auto states = std::make_shared<std::vector<S>>();
    auto ids = std::make_shared<std::map<std::string, CoState>>();
    auto memo = std::make_shared<std::map<CoState, CoStep>>();
    std::function<CoState(const S&)> intern = [m, states, ids](const S& s) {
      if (m.finite_states) {
        std::string k = m.key(s);
        auto it = ids->find(k);
        if (it != ids->end()) return it->second;
        CoState c = states->size();
        states->push_back(s);
        ids->emplace(std::move(k), c);
        return c;
      }
      CoState c = states->size();
      states->push_back(s);
      return c;
    };
    CoState root = intern(s0);
    auto step = [m, states, memo, intern](CoState c) -> CoStep {
      auto it = memo->find(c);
      if (it != memo->end()) return it->second;
      if (c >= states->size())
        throw std::logic_error("corec: unknown state id");
      S s = (*states)[c];  // copy: intern below may grow the vector
      Obs<S> d = m.dest(s);
      CoStep out = CoV{var(0)};
      if (const auto* v = std::get_if<ObsV<S>>(&d)) {
        out = CoV{v->x};
      } else if (const auto* a = std::get_if<ObsA<S>>(&d)) {
        out = CoA{intern(a->fn), intern(a->arg)};
      } else if (const auto* l = std::get_if<ObsL<S>>(&d)) {
        out = CoL{l->binder, intern(l->body)};
      } else {
        throw std::logic_error(
            "corec: exit state outside full corecursion");
      }
      memo->emplace(c, out);
      return out;
    };
    return CoTerm::from_fn(step, root, m.finite_states);
  };
  return {2, std::move(g)};
}

// Corecursor i over a comodel of its signature: composes the transform chain
// down to the permutation/free-variable kernel. There is no corecursor with
// id 4.
template <typename S>
Corecursion<S> corec(int i, const CoModel<S>& cm) {
  Corecursion<S> out;
  switch (i) {
    case 2:
      out = corec2(cm);
      break;
    case 5:
      out = corec2(co_perm_from_swap(co_fv_from_fresh(cm)));
      break;
    case 6:
      // congruence implies bound-variable renaming here, so the carrier is
      // already a swap/freshness comodel
      out = corec(5, cm);
      break;
    case 3:
      out = corec(6, co_fresh_from_fv(cm));
      break;
    case 1:
      out = corec(3, co_swap_from_perm(cm));
      break;
    case 9:
      out = corec(5, co_swap_from_rename(cm));
      break;
    case 8:
      out = corec(9, co_fresh_from_rename(cm));
      break;
    case 7:
      out = corec(9, co_rename_from_subst(cm));
      break;
    case 4:
      throw std::invalid_argument("no corecursor with id 4");
    default:
      throw std::out_of_range("corecursor id must be 1..9");
  }
  out.source_id = i;
  return out;
}

// Sum carrier for full corecursion: a comodel state or a finished coterm.
template <typename S>
struct CoSum {
  std::optional<S> in;
  CoTerm out;
};

// Full corecursion for the swap/freshness signature: exits are legal, and a
// state whose destructor exits with t unfolds exactly as t. Realized by
// pairing the carrier with the coterm comodel and running corec(5) on the
// sum.
template <typename S>
Corecursion<S> full_corec5(const CoModel<S>& cm) {
  validate_comodel(cm);
  if (!cm.sig.count(Sym::sw) || !cm.sig.count(Sym::fr))
    throw std::invalid_argument(
        "full_corec5: comodel signature is not the swap/freshness one");
  using M = CoSum<S>;
  auto inl = [](const S& s) { return M{s, CoTerm()}; };
  auto inr = [](const CoTerm& t) { return M{std::nullopt, t}; };

  auto coterm_side = [inr](const CoTerm& t) -> Obs<M> {
    CoDestView dv = co_dest(t);
    if (const auto* v = std::get_if<CoDestV>(&dv)) return ObsV<M>{v->x};
    if (const auto* a = std::get_if<CoDestA>(&dv))
      return ObsA<M>{inr(a->fn), inr(a->arg)};
    const auto& l = std::get<CoDestL>(dv);
    std::function<bool(Var, const M&)> member = [t](Var y, const M& c) {
      return !c.in && co_K_member(t, y, c.out);
    };
    return ObsL<M>{l.stored_binder(), inr(l.stored_body()), member};
  };

  CoModel<M> sum;
  sum.sig = {Sym::sw, Sym::fr};
  sum.finite_states = cm.finite_states;
  auto base = cm;
  sum.eq = [base](const M& a, const M& b) {
    if (a.in && b.in) return base.eq(*a.in, *b.in);
    if (!a.in && !b.in) {
      if (a.out.regular() && b.out.regular()) return co_alpha_eq(a.out, b.out);
      return co_alpha_eq_upto(a.out, b.out, 30);
    }
    return false;
  };
  sum.sample = [base, inl](std::mt19937_64& rng) { return inl(base.sample(rng)); };
  sum.show = [base](const M& a) {
    return a.in ? "in: " + base.show(*a.in) : "out: " + truncate(a.out, 4);
  };
  sum.dest = [base, inl, coterm_side](const M& a) -> Obs<M> {
    if (!a.in) return coterm_side(a.out);
    Obs<S> d = base.dest(*a.in);
    if (const auto* v = std::get_if<ObsV<S>>(&d)) return ObsV<M>{v->x};
    if (const auto* ap = std::get_if<ObsA<S>>(&d))
      return ObsA<M>{inl(ap->fn), inl(ap->arg)};
    if (const auto* l = std::get_if<ObsL<S>>(&d)) {
      std::function<bool(Var, const M&)> member;
      if (l->member) {
        auto inner = l->member;
        member = [inner](Var y, const M& c) { return c.in && inner(y, *c.in); };
      }
      return ObsL<M>{l->binder, inl(l->body), member};
    }
    return coterm_side(std::get<ObsX<S>>(d).out);
  };
  sum.swapD = [base](const M& a, Var z1, Var z2) {
    if (a.in) return M{base.swapD(*a.in, z1, z2), CoTerm()};
    return M{std::nullopt, co_swap(a.out, z1, z2)};
  };
  sum.freshD = [base](Var x, const M& a) {
    if (a.in) return base.freshD(x, *a.in);
    if (a.out.regular()) return co_fresh(x, a.out);
    return co_fresh_upto(x, a.out, 30);
  };
  if (cm.supp_oracle) {
    auto oracle = *cm.supp_oracle;
    sum.supp_oracle = [oracle](const M& a) -> VarSet {
      if (a.in) return oracle(*a.in);
      return VarSet::finite(a.out.mentioned());
    };
  }
  auto basekey = cm.key ? cm.key : cm.show;
  sum.key = [basekey](const M& a) {
    return a.in ? "L|" + basekey(*a.in) : "R|" + co_key(a.out);
  };

  Corecursion<M> inner = corec(5, sum);
  Corecursion<S> result;
  result.source_id = 5;
  auto g0 = inner.g;
  result.g = [g0, inl](const S& s) { return g0(inl(s)); };
  return result;
}

// ---------------------------------------------------------------------------
// Comorphism report: certifies a user-supplied interpretation g against the
// comodel. Clause lines MorVr/MorAp/MorLm check the destructor shapes (the
// abstraction clause through sampled members of the abstraction set); the
// per-operator lines check commutation with the coterm operations, free
// variables shrink along g, and freshness is preserved. Comparisons are
// exact when both sides are regular and depth-bounded otherwise.
template <typename S>
PropReport comorphism_report(int i, const CoModel<S>& cm,
                             const std::function<CoTerm(const S&)>& g,
                             const CheckConfig& cfg) {
  validate_comodel(cm);
  Signature need = co_sigma_of(i);
  for (Sym sy : need)
    if (!cm.sig.count(sy))
      throw std::invalid_argument("comorphism_report: comodel lacks " +
                                  sym_name(sy));
  auto fresh = co_freshness(cm, cfg.probes);
  auto cmp = [&cfg](const CoTerm& a, const CoTerm& b) {
    if (a.regular() && b.regular()) return co_alpha_eq(a, b);
    return co_alpha_eq_upto(a, b, cfg.depth);
  };

  std::vector<std::string> lines = {"MorVr", "MorAp", "MorLm"};
  if (need.count(Sym::pm)) lines.push_back("MorPm");
  if (need.count(Sym::sw)) lines.push_back("MorSw");
  if (need.count(Sym::sb)) lines.push_back("MorSb");
  if (need.count(Sym::ren)) lines.push_back("MorRn");
  if (need.count(Sym::fv)) lines.push_back("MorFv");
  if (need.count(Sym::fr)) lines.push_back("MorFr");
  if (need.count(Sym::vr)) lines.push_back("MorVrOp");

  PropReport report;
  for (const auto& p : lines) {
    std::mt19937_64 rng(cfg.seed ^ fnv64(p) ^ 0x9e3779b97f4a7c15ull);
    PropLine line;
    line.name = p;
    for (int k = 0; k < cfg.n; ++k) {
      S s = cm.sample(rng);
      S s2 = cm.sample(rng);
      Var z1 = detail::sample_var<S>(rng, cfg.pool, false);
      Var z2 = detail::sample_var<S>(rng, cfg.pool, true);
      bool guard = true, ok = true;
      if (p == "MorVr" || p == "MorAp" || p == "MorLm") {
        Obs<S> d = cm.dest(s);
        if (p == "MorVr") {
          const auto* v = std::get_if<ObsV<S>>(&d);
          guard = v != nullptr;
          if (guard) ok = cmp(g(s), embed(Term::Vr(v->x)));
        } else if (p == "MorAp") {
          const auto* a = std::get_if<ObsA<S>>(&d);
          guard = a != nullptr;
          if (guard) ok = cmp(g(s), co_app(g(a->fn), g(a->arg)));
        } else {
          const auto* l = std::get_if<ObsL<S>>(&d);
          guard = l != nullptr;
          if (guard) {
            CoTerm gs = g(s);
            ok = cmp(gs, co_lam(l->binder, g(l->body)));
            if (auto sm = co_second_member(cm, fresh, *l, z2, {}))
              ok = ok && cmp(gs, co_lam(sm->first, g(sm->second)));
          }
        }
      } else if (p == "MorPm") {
        Perm sg = detail::sample_perm<S>(rng, cfg.pool);
        ok = cmp(g(cm.permD(s, sg)), co_perm(g(s), sg));
      } else if (p == "MorSw") {
        ok = cmp(g(cm.swapD(s, z1, z2)), co_swap(g(s), z1, z2));
      } else if (p == "MorSb") {
        ok = cmp(g(cm.substD(s, s2, z1)), co_subst(g(s), g(s2), z1));
      } else if (p == "MorRn") {
        ok = cmp(g(cm.renameD(s, z1, z2)), co_rename(g(s), z1, z2));
      } else if (p == "MorFv") {
        CoTerm gs = g(s);
        guard = gs.regular();
        if (guard) ok = co_fv(gs).subset_of(cm.fvD(s));
      } else if (p == "MorFr") {
        guard = fresh(z2, s);
        if (guard) {
          CoTerm gs = g(s);
          ok = gs.regular() ? co_fresh(z2, gs)
                            : co_fresh_upto(z2, gs, cfg.depth);
        }
      } else {  // MorVrOp
        ok = cmp(g(cm.VrD(z1)), embed(Term::Vr(z1)));
      }
      ++line.n;
      if (guard) ++line.hits;
      if (guard && !ok && line.pass) {
        line.pass = false;
        line.cex = p + "(s=" + cm.show(s) + ", x=" + default_name(z1) + "/" +
                   default_name(z2) + ")";
      }
    }
    if (line.hits < cfg.min_hits && line.pass) {
      line.pass = false;
      line.cex = "guard hits below minimum (" + std::to_string(line.hits) +
                 " < " + std::to_string(cfg.min_hits) + ")";
    }
    report.lines.push_back(line);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Shipped comodels.

// The regular coterm fragment as a comodel of corecursor i's signature. All
// operators are populated (beyond the signature) so every law check stays
// observable; equality is alpha-bisimulation and the abstraction sets carry
// the exact membership test.
CoModel<CoTerm> coterm_comodel(int i);

// coterm_comodel(5) with a swap that stops at the first abstraction: binders
// are renamed but bodies are left alone, and memberships are the derived
// adapter. Breaks the abstraction clause of the swap laws.
CoModel<CoTerm> broken_swap_comodel();

// Parallel-substitution carrier: a coterm paired with an environment.
struct PsItem {
  CoTerm t;
  Env rho;
};

// Swap/freshness comodel over PsItem whose unfolding is parallel
// substitution: variables destruct through their environment image,
// abstractions extract a binder outside the environment's support.
CoModel<PsItem> psubst_comodel();

// Exit variant: a variable modified by the environment exits with its image.
CoModel<PsItem> psubst_exit_comodel();

}  // namespace nomrec
