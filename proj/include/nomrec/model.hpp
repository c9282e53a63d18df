#pragma once

#include <functional>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "nomrec/perm.hpp"
#include "nomrec/props.hpp"
#include "nomrec/term.hpp"
#include "nomrec/var.hpp"

namespace nomrec {

// A model bundle over an abstract carrier C. Only the ops named by sig are
// populated; the checker validates that before use. eq is the model's notion
// of equality (for function-like carriers it may be approximate, which the
// model documents via its show text).
template <typename C>
struct Model {
  Signature sig;
  std::function<bool(const C&, const C&)> eq;
  std::function<C(std::mt19937_64&)> sample;
  std::function<std::string(const C&)> show;

  std::function<C(Var)> VrD;
  std::function<C(const C&, const C&)> ApD;
  std::function<C(Var, const C&)> LmD;
  std::function<C(const C&, const Perm&)> permD;
  std::function<C(const C&, Var, Var)> swapD;
  std::function<C(const C&, const C&, Var)> substD;
  std::function<C(const C&, Var, Var)> renameD;
  std::function<VarSet(const C&)> fvD;
  std::function<bool(Var, const C&)> freshD;

  std::optional<std::function<VarSet(const C&)>> supp_oracle;
};

// The term model for recursor i: carrier Term, ops from term_core, equality
// alpha_eq, supp_oracle = fv.
Model<Term> term_model(int i);

template <typename C>
void validate_model(const Model<C>& m) {
  if (!m.eq || !m.sample || !m.show)
    throw std::invalid_argument("model: eq/sample/show must be populated");
  auto need = [&](Sym s, bool present) {
    if (m.sig.count(s) && !present)
      throw std::invalid_argument("model: signature names " + sym_name(s) +
                                  " but the op is missing");
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

inline std::uint64_t fnv64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// One law instance over a model carrier.
template <typename C>
struct MInst {
  std::vector<C> cs;
  std::vector<Var> xs;
  std::vector<Perm> ps;
};

namespace detail {

inline Var msw(Var v, Var x, Var y) { return v == x ? y : v == y ? x : v; }
inline Var mrn(Var v, Var y, Var z) { return v == z ? y : v; }

template <typename C>
const C& argC(const MInst<C>& in, std::size_t i, const std::string& n) {
  if (i >= in.cs.size())
    throw std::invalid_argument(n + ": instance lacks carrier argument " +
                                std::to_string(i));
  return in.cs[i];
}
template <typename C>
Var argX(const MInst<C>& in, std::size_t i, const std::string& n) {
  if (i >= in.xs.size())
    throw std::invalid_argument(n + ": instance lacks variable argument " +
                                std::to_string(i));
  return in.xs[i];
}
template <typename C>
const Perm& argP(const MInst<C>& in, std::size_t i, const std::string& n) {
  if (i >= in.ps.size())
    throw std::invalid_argument(n + ": instance lacks permutation argument " +
                                std::to_string(i));
  return in.ps[i];
}

}  // namespace detail

// Evaluates one law instance over the model. Returns {guard held, conclusion
// held}; the second component is meaningful only when the first is true.
// The finiteness-flavoured laws (FvDPm, FvDSw, FrDSw, FrDRn, FCB) are not
// handled here — they need probe machinery and live in check_props.
template <typename C>
std::pair<bool, bool> eval_model_prop(const Model<C>& M, const std::string& n,
                                      const MInst<C>& in) {
  using detail::argC;
  using detail::argP;
  using detail::argX;
  using detail::mrn;
  using detail::msw;
  auto C0 = [&](std::size_t i) -> const C& { return argC(in, i, n); };
  auto X0 = [&](std::size_t i) { return argX(in, i, n); };
  auto P0 = [&](std::size_t i) -> const Perm& { return argP(in, i, n); };
  auto eq = [&](const C& a, const C& b) { return M.eq(a, b); };

  if (n == "SwVr") {
    Var x = X0(0), z1 = X0(1), z2 = X0(2);
    return {true, eq(M.swapD(M.VrD(x), z1, z2), M.VrD(msw(x, z1, z2)))};
  }
  if (n == "SwAp") {
    Var z1 = X0(0), z2 = X0(1);
    return {true, eq(M.swapD(M.ApD(C0(0), C0(1)), z1, z2),
                     M.ApD(M.swapD(C0(0), z1, z2), M.swapD(C0(1), z1, z2)))};
  }
  if (n == "SwLm") {
    Var x = X0(0), z1 = X0(1), z2 = X0(2);
    return {true, eq(M.swapD(M.LmD(x, C0(0)), z1, z2),
                     M.LmD(msw(x, z1, z2), M.swapD(C0(0), z1, z2)))};
  }
  if (n == "SwId") {
    Var z = X0(0);
    return {true, eq(M.swapD(C0(0), z, z), C0(0))};
  }
  if (n == "SwIv") {
    Var x = X0(0), y = X0(1);
    return {true, eq(M.swapD(M.swapD(C0(0), x, y), x, y), C0(0))};
  }
  if (n == "SwCp") {
    Var x = X0(0), y = X0(1), z1 = X0(2), z2 = X0(3);
    return {true, eq(M.swapD(M.swapD(C0(0), x, y), z1, z2),
                     M.swapD(M.swapD(C0(0), z1, z2), msw(x, z1, z2),
                             msw(y, z1, z2)))};
  }
  if (n == "SwFr") {
    Var x = X0(0), y = X0(1);
    bool g = M.freshD(x, C0(0)) && M.freshD(y, C0(0));
    return {g, !g || eq(M.swapD(C0(0), x, y), C0(0))};
  }
  if (n == "SwFv") {
    Var x = X0(0), y = X0(1);
    VarSet f = M.fvD(C0(0));
    bool g = !f.contains(x) && !f.contains(y);
    return {g, !g || eq(M.swapD(C0(0), x, y), C0(0))};
  }
  if (n == "SwBvr") {
    Var x = X0(0), x2 = X0(1);
    bool g = x2 != x && M.freshD(x2, C0(0));
    return {g, !g || eq(M.LmD(x, C0(0)),
                        M.LmD(x2, M.swapD(C0(0), x2, x)))};
  }
  if (n == "SwCg") {
    Var z = X0(0), x1 = X0(1), x2 = X0(2);
    bool g = z != x1 && z != x2 && M.freshD(z, C0(0)) &&
             M.freshD(z, C0(1)) &&
             eq(M.swapD(C0(0), z, x1), M.swapD(C0(1), z, x2));
    return {g, !g || eq(M.LmD(x1, C0(0)), M.LmD(x2, C0(1)))};
  }

  if (n == "PmVr") {
    Var x = X0(0);
    return {true, eq(M.permD(M.VrD(x), P0(0)), M.VrD(P0(0).apply(x)))};
  }
  if (n == "PmAp") {
    return {true, eq(M.permD(M.ApD(C0(0), C0(1)), P0(0)),
                     M.ApD(M.permD(C0(0), P0(0)), M.permD(C0(1), P0(0))))};
  }
  if (n == "PmLm") {
    Var x = X0(0);
    return {true, eq(M.permD(M.LmD(x, C0(0)), P0(0)),
                     M.LmD(P0(0).apply(x), M.permD(C0(0), P0(0))))};
  }
  if (n == "PmId") return {true, eq(M.permD(C0(0), Perm()), C0(0))};
  if (n == "PmCp") {
    return {true, eq(M.permD(M.permD(C0(0), P0(0)), P0(1)),
                     M.permD(C0(0), Perm::compose(P0(1), P0(0))))};
  }
  if (n == "PmFv") {
    VarSet f = M.fvD(C0(0));
    bool g = true;
    for (Var v : P0(0).support())
      if (f.contains(v)) {
        g = false;
        break;
      }
    return {g, !g || eq(M.permD(C0(0), P0(0)), C0(0))};
  }
  if (n == "PmBvr") {
    Var x = X0(0), x2 = X0(1);
    bool g = x2 != x && !M.fvD(C0(0)).contains(x2);
    return {g, !g || eq(M.LmD(x, C0(0)),
                        M.LmD(x2, M.permD(C0(0), Perm::transposition(x2, x))))};
  }

  if (n == "FvVr") {
    Var x = X0(0);
    return {true, M.fvD(M.VrD(x)).subset_of(VarSet::finite({x}))};
  }
  if (n == "FvAp") {
    VarSet u = VarSet::unite(M.fvD(C0(0)), M.fvD(C0(1)));
    return {true, M.fvD(M.ApD(C0(0), C0(1))).subset_of(u)};
  }
  if (n == "FvLm") {
    Var x = X0(0);
    return {true, M.fvD(M.LmD(x, C0(0))).subset_of(M.fvD(C0(0)).without(x))};
  }

  if (n == "FrVr") {
    Var z = X0(0), x = X0(1);
    bool g = z != x;
    return {g, !g || M.freshD(z, M.VrD(x))};
  }
  if (n == "FrAp") {
    Var z = X0(0);
    bool g = M.freshD(z, C0(0)) && M.freshD(z, C0(1));
    return {g, !g || M.freshD(z, M.ApD(C0(0), C0(1)))};
  }
  if (n == "FrLm") {
    Var z = X0(0), x = X0(1);
    bool g = z == x || M.freshD(z, C0(0));
    return {g, !g || M.freshD(z, M.LmD(x, C0(0)))};
  }

  if (n == "SbVr") {
    Var x = X0(0), z = X0(1);
    C lhs = M.substD(M.VrD(x), C0(0), z);
    return {true, x == z ? eq(lhs, C0(0)) : eq(lhs, M.VrD(x))};
  }
  if (n == "SbAp") {
    Var z = X0(0);
    return {true, eq(M.substD(M.ApD(C0(0), C0(1)), C0(2), z),
                     M.ApD(M.substD(C0(0), C0(2), z),
                           M.substD(C0(1), C0(2), z)))};
  }
  if (n == "SbLm") {
    Var x = X0(0), z = X0(1);
    bool g = x != z && M.freshD(x, C0(1));
    return {g, !g || eq(M.substD(M.LmD(x, C0(0)), C0(1), z),
                        M.LmD(x, M.substD(C0(0), C0(1), z)))};
  }
  if (n == "SbBvr") {
    Var x = X0(0), x2 = X0(1);
    bool g = x2 != x && M.freshD(x2, C0(0));
    return {g, !g || eq(M.LmD(x, C0(0)),
                        M.LmD(x2, M.substD(C0(0), M.VrD(x2), x)))};
  }

  if (n == "RnVr") {
    Var x = X0(0), y = X0(1), z = X0(2);
    return {true, eq(M.renameD(M.VrD(x), y, z), M.VrD(mrn(x, y, z)))};
  }
  if (n == "RnAp") {
    Var y = X0(0), z = X0(1);
    return {true, eq(M.renameD(M.ApD(C0(0), C0(1)), y, z),
                     M.ApD(M.renameD(C0(0), y, z), M.renameD(C0(1), y, z)))};
  }
  if (n == "RnLm1") {
    Var x = X0(0), y = X0(1), z = X0(2);
    bool g = x != y && x != z;
    return {g, !g || eq(M.renameD(M.LmD(x, C0(0)), y, z),
                        M.LmD(x, M.renameD(C0(0), y, z)))};
  }
  if (n == "RnLm2") {
    Var x = X0(0), z = X0(1);
    return {true, eq(M.renameD(M.LmD(x, C0(0)), z, x), M.LmD(x, C0(0)))};
  }
  if (n == "RnBvr") {
    Var x = X0(0), x2 = X0(1);
    bool g = x2 != x && M.freshD(x2, C0(0));
    return {g, !g || eq(M.LmD(x, C0(0)),
                        M.LmD(x2, M.renameD(C0(0), x2, x)))};
  }
  if (n == "RnBvr2") {
    Var x = X0(0), x2 = X0(1), y = X0(2);
    bool g = y != x2;
    if (!g) return {false, true};
    C u = M.renameD(C0(0), y, x2);
    return {true, eq(M.LmD(x, u), M.LmD(x2, M.renameD(u, x2, x)))};
  }
  if (n == "RnId") {
    Var z = X0(0);
    return {true, eq(M.renameD(C0(0), z, z), C0(0))};
  }
  if (n == "RnIm") {
    Var x1 = X0(0), x2 = X0(1), y = X0(2);
    bool g = x1 != y;
    return {g, !g || eq(M.renameD(M.renameD(C0(0), x1, y), x2, y),
                        M.renameD(C0(0), x1, y))};
  }
  if (n == "RnCh") {
    Var y = X0(0), x1 = X0(1), x2 = X0(2), x3 = X0(3);
    bool g = y != x2;
    if (!g) return {false, true};
    C u = M.renameD(C0(0), y, x2);
    return {true, eq(M.renameD(M.renameD(u, x2, x1), x3, x2),
                     M.renameD(u, x3, x1))};
  }
  if (n == "RnCm") {
    Var x1 = X0(0), x2 = X0(1), y1 = X0(2), y2 = X0(3);
    bool g = x2 != y1 && y1 != x1 && x1 != y2;
    return {g, !g || eq(M.renameD(M.renameD(C0(0), x2, x1), y2, y1),
                        M.renameD(M.renameD(C0(0), y2, y1), x2, x1))};
  }
  if (n == "RnFr") {
    Var x = X0(0), y = X0(1);
    bool g = M.freshD(y, C0(0));
    return {g, !g || eq(M.renameD(C0(0), x, y), C0(0))};
  }
  if (n == "RnChFr") {
    Var x1 = X0(0), x2 = X0(1), x3 = X0(2);
    bool g = M.freshD(x2, C0(0));
    return {g, !g || eq(M.renameD(M.renameD(C0(0), x2, x1), x3, x2),
                        M.renameD(C0(0), x3, x1))};
  }
  if (n == "FrRn") {
    Var z = X0(0), x = X0(1), y = X0(2);
    bool lhs = M.freshD(z, M.renameD(C0(0), x, y));
    bool rhs = (z == y || M.freshD(z, C0(0))) &&
               (M.freshD(y, C0(0)) || x != z);
    return {true, lhs == rhs};
  }
  if (n == "FrRn2") {
    Var z = X0(0), x = X0(1), y = X0(2);
    bool g = M.freshD(mrn(z, x, y), M.renameD(C0(0), x, y));
    return {g, !g || M.freshD(z, C0(0))};
  }
  if (n == "FrSw") {
    Var z = X0(0), x = X0(1), y = X0(2);
    return {true, M.freshD(z, M.swapD(C0(0), x, y)) ==
                      M.freshD(msw(z, x, y), C0(0))};
  }
  if (n == "SbId") {
    Var z = X0(0);
    return {true, eq(M.substD(C0(0), M.VrD(z), z), C0(0))};
  }
  if (n == "SbFr") {
    Var y = X0(0);
    bool g = M.freshD(y, C0(0));
    return {g, !g || eq(M.substD(C0(0), C0(1), y), C0(0))};
  }
  if (n == "SbChFr") {
    Var x1 = X0(0), x2 = X0(1);
    bool g = M.freshD(x2, C0(0));
    return {g, !g || eq(M.substD(M.substD(C0(0), M.VrD(x2), x1), C0(1), x2),
                        M.substD(C0(0), C0(1), x1))};
  }
  if (n == "SbCm") {
    Var x = X0(0), y = X0(1);
    bool g = x != y && M.freshD(y, C0(1)) && M.freshD(x, C0(2));
    return {g, !g || eq(M.substD(M.substD(C0(0), C0(1), x), C0(2), y),
                        M.substD(M.substD(C0(0), C0(2), y), C0(1), x))};
  }
  if (n == "FrSb") {
    Var z = X0(0), y = X0(1);
    bool lhs = M.freshD(z, M.substD(C0(0), C0(1), y));
    bool rhs = (z == y || M.freshD(z, C0(0))) &&
               (M.freshD(y, C0(0)) || M.freshD(z, C0(1)));
    return {true, lhs == rhs};
  }

  throw std::invalid_argument("eval_model_prop: unsupported law id " + n);
}

namespace detail {

// Finds a variable the model regards as fresh for c, outside extra. Uses the
// support oracle when present, otherwise falls back to the fv or fr op.
template <typename C>
std::optional<Var> pick_fresh(const Model<C>& M, const C& c,
                              const std::set<Var>& extra, int pool) {
  auto from_set = [&](const VarSet& s) -> std::optional<Var> {
    if (!s.is_finite()) return std::nullopt;
    VarSet full = s;
    for (Var v : extra) full.insert(v);
    return fresh_var(full);
  };
  if (M.supp_oracle) {
    if (auto r = from_set((*M.supp_oracle)(c))) return r;
  }
  if (M.sig.count(Sym::fv) && M.fvD) {
    if (auto r = from_set(M.fvD(c))) return r;
  }
  if (M.sig.count(Sym::fr) && M.freshD) {
    for (int i = 0; i <= pool + 60; ++i) {
      Var cand = var(static_cast<std::uint64_t>(i));
      if (extra.count(cand)) continue;
      if (M.freshD(cand, c)) return cand;
    }
  }
  return std::nullopt;
}

template <typename C>
Var sample_var(std::mt19937_64& rng, int pool, bool wide) {
  std::uint64_t hi = wide ? pool + 2 : pool - 1;
  return var(std::uniform_int_distribution<std::uint64_t>(0, hi)(rng));
}

template <typename C>
Perm sample_perm(std::mt19937_64& rng, int pool) {
  int k = std::uniform_int_distribution<int>(0, 3)(rng);
  Perm p;
  for (int i = 0; i < k; ++i) {
    Var a = sample_var<C>(rng, pool, false), b = sample_var<C>(rng, pool, false);
    if (a == b) continue;
    p = Perm::compose(Perm::transposition(a, b), p);
  }
  return p;
}

template <typename C>
MInst<C> sample_inst(const Model<C>& M, std::mt19937_64& rng, int pool) {
  MInst<C> in;
  for (int i = 0; i < 3; ++i) in.cs.push_back(M.sample(rng));
  for (int i = 0; i < 4; ++i)
    in.xs.push_back(sample_var<C>(rng, pool, i % 2 == 1));
  in.ps.push_back(sample_perm<C>(rng, pool));
  in.ps.push_back(sample_perm<C>(rng, pool));
  return in;
}

// Rebuilds an instance so the law's side condition is likely to hold.
// Returns nullopt when the model offers no way to find fresh variables.
template <typename C>
std::optional<MInst<C>> targeted_inst(const Model<C>& M, const std::string& n,
                                      std::mt19937_64& rng, int pool,
                                      int round) {
  MInst<C> in = sample_inst(M, rng, pool);
  auto fresh1 = [&](const C& c, std::set<Var> extra) {
    return pick_fresh(M, c, extra, pool);
  };
  if (n == "SwBvr" || n == "SbBvr" || n == "RnBvr" || n == "PmBvr") {
    auto x2 = fresh1(in.cs[0], {in.xs[0]});
    if (!x2) return std::nullopt;
    in.xs[1] = *x2;
    return in;
  }
  if (n == "SwCg") {
    Var x1 = in.xs[1];
    auto z = fresh1(in.cs[0], {x1});
    if (!z) return std::nullopt;
    C u = M.swapD(in.cs[0], *z, x1);
    auto x2 = fresh1(u, {*z, x1});
    if (!x2) return std::nullopt;
    in.xs[0] = *z;
    in.xs[2] = *x2;
    in.cs[1] = M.swapD(u, *z, *x2);
    return in;
  }
  if (n == "SwFv") {
    auto x = fresh1(in.cs[0], {});
    if (!x) return std::nullopt;
    auto y = fresh1(in.cs[0], {*x});
    if (!y) return std::nullopt;
    in.xs[0] = *x;
    in.xs[1] = *y;
    return in;
  }
  if (n == "SwFr" || n == "RnFr") {
    auto y = fresh1(in.cs[0], {});
    if (!y) return std::nullopt;
    if (n == "SwFr") {
      in.xs[0] = *y;
      auto y2 = fresh1(in.cs[0], {*y});
      if (!y2) return std::nullopt;
      in.xs[1] = *y2;
    } else {
      in.xs[1] = *y;
    }
    return in;
  }
  if (n == "RnChFr" || n == "SbChFr") {
    auto x2 = fresh1(in.cs[0], {});
    if (!x2) return std::nullopt;
    in.xs[1] = *x2;
    return in;
  }
  if (n == "SbFr") {
    auto y = fresh1(in.cs[0], {});
    if (!y) return std::nullopt;
    in.xs[0] = *y;
    return in;
  }
  if (n == "SbCm") {
    auto y = fresh1(in.cs[1], {});
    if (!y) return std::nullopt;
    auto x = fresh1(in.cs[2], {*y});
    if (!x) return std::nullopt;
    in.xs[0] = *x;
    in.xs[1] = *y;
    return in;
  }
  if (n == "FrRn2") {
    auto z = fresh1(in.cs[0], {in.xs[1], in.xs[2]});
    if (!z) return std::nullopt;
    in.xs[0] = *z;
    return in;
  }
  if (n == "PmFv") {
    auto a = fresh1(in.cs[0], {});
    if (!a) return std::nullopt;
    auto b = fresh1(in.cs[0], {*a});
    if (!b) return std::nullopt;
    in.ps[0] = Perm::transposition(*a, *b);
    return in;
  }
  if (n == "SbLm") {
    auto x = fresh1(in.cs[1], {in.xs[1]});
    if (!x) return std::nullopt;
    in.xs[0] = *x;
    return in;
  }
  if (n == "FrAp") {
    in.cs[1] = in.cs[0];
    auto z = fresh1(in.cs[0], {});
    if (!z) return std::nullopt;
    in.xs[0] = *z;
    return in;
  }
  if (n == "FrLm") {
    if (round % 2 == 0) {
      in.xs[0] = in.xs[1];  // the z = x branch of the guard
      return in;
    }
    auto z = fresh1(in.cs[0], {});
    if (!z) return std::nullopt;
    in.xs[0] = *z;
    return in;
  }
  if (n == "FrVr" || n == "RnLm1" || n == "RnBvr2" || n == "RnIm" ||
      n == "RnCh" || n == "RnCm") {
    // purely syntactic guards: force distinct variables
    for (std::size_t i = 0; i + 1 < in.xs.size(); ++i)
      in.xs[i] = var(static_cast<std::uint64_t>(pool + 1 + i + round % 2));
    return in;
  }
  return std::nullopt;
}

template <typename C>
std::string show_inst(const Model<C>& M, const std::string& n,
                      const MInst<C>& in) {
  std::string out = n + "(";
  bool first = true;
  auto add = [&](const std::string& s) {
    if (!first) out += ", ";
    out += s;
    first = false;
  };
  for (std::size_t i = 0; i < in.cs.size(); ++i)
    add("c" + std::to_string(i) + "=" + M.show(in.cs[i]));
  for (std::size_t i = 0; i < in.xs.size(); ++i)
    add("x" + std::to_string(i) + "=" + default_name(in.xs[i]));
  for (std::size_t i = 0; i < in.ps.size(); ++i)
    add("p" + std::to_string(i) + "=" + in.ps[i].to_string());
  out += ")";
  return out;
}

// Decides "the set of y making op(c, y) differ from c is infinite" by
// probing variables outside the support oracle's answer.
template <typename C>
bool probe_moves(const Model<C>& M, const C& c, Var x,
                 const std::function<C(const C&, Var, Var)>& op, int probes,
                 const std::string& why) {
  if (!M.supp_oracle)
    throw std::invalid_argument(why + ": model lacks supp_oracle");
  VarSet s = (*M.supp_oracle)(c);
  if (!s.is_finite())
    throw std::invalid_argument(why + ": supp_oracle answer is not finite");
  s.insert(x);
  bool moved = false;
  for (int b = 0; b < probes; ++b) {
    Var y = fresh_var(s);
    s.insert(y);
    if (!M.eq(op(c, x, y), c)) moved = true;
  }
  return moved;
}

}  // namespace detail

// These laws can only be decided with the probe machinery.
inline bool prop_needs_probes(const std::string& n) {
  return n == "FvDPm" || n == "FvDSw" || n == "FrDSw" || n == "FrDRn" ||
         n == "FCB";
}

// Laws with a nontrivial side condition (the checker enforces a minimum
// number of non-vacuous instances for these).
inline bool prop_is_guarded(const std::string& n) {
  static const std::set<std::string> g = {
      "SwFr", "SwFv",  "SwBvr", "SwCg",  "PmFv",  "PmBvr", "SbLm",
      "SbBvr", "RnLm1", "RnBvr", "RnBvr2", "RnIm", "RnCh",  "RnCm",
      "RnFr",  "RnChFr", "FrVr", "FrAp",  "FrLm",  "FrRn2", "SbFr",
      "SbChFr", "SbCm"};
  return g.count(n) != 0;
}

template <typename C>
PropReport check_props(const Model<C>& M,
                       const std::vector<std::string>& suite,
                       const CheckConfig& cfg) {
  validate_model(M);
  for (const auto& p : suite) {
    Signature need = prop_requires(p);
    for (Sym s : need)
      if (!M.sig.count(s))
        throw std::invalid_argument("check_props: law " + p +
                                    " needs missing op " + sym_name(s));
  }

  PropReport report;
  for (const auto& p : suite) {
    std::mt19937_64 rng(cfg.seed ^ fnv64(p) ^ 0x9e3779b97f4a7c15ull);
    PropLine line;
    line.name = p;

    if (p == "FCB") {
      line.heuristic = true;
      // candidates are drawn outside the union of observed supports
      VarSet seen = VarSet::finite({});
      bool seen_finite = true;
      std::vector<C> samples;
      for (int i = 0; i < cfg.n; ++i) samples.push_back(M.sample(rng));
      for (const C& c : samples) {
        VarSet f = M.fvD(c);
        if (!f.is_finite()) {
          seen_finite = false;
          break;
        }
        seen = VarSet::unite(seen, f);
      }
      bool found = false;
      std::string last_cex;
      VarSet pool_taken = seen_finite ? seen : VarSet::finite({});
      for (int k = 0; k < cfg.fcb_candidates && !found; ++k) {
        Var x = seen_finite
                    ? fresh_var(pool_taken)
                    : var(static_cast<std::uint64_t>(cfg.pool + 1 + k));
        if (seen_finite) pool_taken.insert(x);
        bool ok = true;
        for (const C& c : samples) {
          ++line.n;
          if (M.fvD(M.LmD(x, c)).contains(x)) {
            ok = false;
            last_cex = "FCB(x=" + default_name(x) + ", c=" + M.show(c) + ")";
            break;
          }
        }
        if (ok) found = true;
      }
      line.pass = found;
      line.hits = line.n;
      if (!found) line.cex = last_cex;
      report.lines.push_back(line);
      continue;
    }

    if (p == "FvDPm" || p == "FvDSw" || p == "FrDSw" || p == "FrDRn") {
      for (int i = 0; i < cfg.n; ++i) {
        C c = M.sample(rng);
        Var x = detail::sample_var<C>(rng, cfg.pool, i % 2 == 1);
        bool holds = true;
        if (p == "FvDPm") {
          bool moved = detail::probe_moves<C>(
              M, c, x,
              [&](const C& v, Var a, Var b) {
                return M.permD(v, Perm::transposition(a, b));
              },
              cfg.probes, p);
          holds = (M.fvD(c).contains(x) == moved);
        } else if (p == "FvDSw") {
          bool moved = detail::probe_moves<C>(
              M, c, x,
              [&](const C& v, Var a, Var b) { return M.swapD(v, a, b); },
              cfg.probes, p);
          holds = (M.fvD(c).contains(x) == moved);
        } else if (p == "FrDSw") {
          bool moved = detail::probe_moves<C>(
              M, c, x,
              [&](const C& v, Var a, Var b) { return M.swapD(v, a, b); },
              cfg.probes, p);
          holds = (M.freshD(x, c) == !moved);
        } else {  // FrDRn: y ranges over the new name, renaming x away
          bool moved = detail::probe_moves<C>(
              M, c, x,
              [&](const C& v, Var a, Var b) { return M.renameD(v, b, a); },
              cfg.probes, p);
          holds = (M.freshD(x, c) == !moved);
        }
        ++line.n;
        ++line.hits;
        if (!holds && line.pass) {
          line.pass = false;
          line.cex =
              p + "(x=" + default_name(x) + ", c=" + M.show(c) + ")";
        }
      }
      report.lines.push_back(line);
      continue;
    }

    // plain sampled law
    for (int i = 0; i < cfg.n; ++i) {
      MInst<C> in = detail::sample_inst(M, rng, cfg.pool);
      auto [g, ok] = eval_model_prop(M, p, in);
      ++line.n;
      if (g) ++line.hits;
      if (g && !ok && line.pass) {
        line.pass = false;
        line.cex = detail::show_inst(M, p, in);
      }
    }
    if (prop_is_guarded(p)) {
      int budget = cfg.min_hits * 6;
      for (int round = 0; line.hits < cfg.min_hits && budget > 0; ++round) {
        --budget;
        auto in = detail::targeted_inst(M, p, rng, cfg.pool, round);
        if (!in) break;
        auto [g, ok] = eval_model_prop(M, p, *in);
        ++line.n;
        if (g) ++line.hits;
        if (g && !ok && line.pass) {
          line.pass = false;
          line.cex = detail::show_inst(M, p, *in);
        }
      }
      if (line.hits < cfg.min_hits && line.pass) {
        line.pass = false;
        line.cex = "guard hits below minimum (" +
                   std::to_string(line.hits) + " < " +
                   std::to_string(cfg.min_hits) + ")";
      }
    }
    report.lines.push_back(line);
  }
  return report;
}

template <typename C>
PropReport check_props(const Model<C>& M, int recursor_id,
                       const CheckConfig& cfg) {
  return check_props(M, props_of(recursor_id), cfg);
}

}  // namespace nomrec
