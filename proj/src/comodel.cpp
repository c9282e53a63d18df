#include "nomrec/comodel.hpp"

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nomrec/gen.hpp"

namespace nomrec {

Signature co_sigma_of(int i) {
  switch (i) {
    case 1:
    case 2:
      return {Sym::pm, Sym::fv};
    case 3:
      return {Sym::sw, Sym::fv};
    case 5:
    case 6:
      return {Sym::sw, Sym::fr};
    case 7:
      return {Sym::vr, Sym::sb, Sym::fr};
    case 8:
      return {Sym::ren};
    case 9:
      return {Sym::ren, Sym::fr};
    case 4:
      throw std::invalid_argument("no corecursor with id 4");
    default:
      throw std::out_of_range("corecursor id must be 1..9");
  }
}

std::vector<std::string> coprops_of(int i) {
  switch (i) {
    case 1:
      return {"PmVrInf", "PmApInf", "PmLmInf", "PmId",
              "PmCp",    "FvDPmInf", "PmBvrInf"};
    case 2:
      return {"PmVrInf", "PmApInf", "PmLmInf", "PmId",    "PmCp",
              "PmFv",    "PmBvrInf", "FvVrInf", "FvApInf", "FvLmInf"};
    case 3:
      return {"SwVrInf", "SwApInf", "SwLmInf",  "SwId",
              "SwIv",    "SwCp",    "FvDSwInf", "SwBvrInf2"};
    case 5:
      return {"SwVrInf", "SwApInf",  "SwLmInf", "SwId",    "SwIv", "SwCp",
              "SwFr",    "SwBvrInf", "FrVrInf", "FrApInf", "FrLmInf"};
    case 6:
      return {"SwVrInf", "SwApInf", "SwLmInf", "SwId",    "SwIv", "SwCp",
              "SwFr",    "FrSw",    "SwCgInf", "FrVrInf", "FrApInf",
              "FrLmInf"};
    case 7:
      return {"SbVrInf", "SbApInf",  "SbLmInf",  "SbId",     "SbChFr",
              "SbCm",    "SbFr",     "FrSb",     "SbBvrInf", "SbBvrPInf",
              "FSupFrInf", "FrVrInf", "FrApInf", "FrLmInf",  "VrInv",
              "FrVr"};
    case 8:
      return {"RnVrInf", "RnApInf",  "RnLm1Inf", "RnId",
              "RnIm",    "RnCh",     "RnCm",     "FrDRnInf",
              "RnBvrInf", "RnBvrPInf", "FSupFrInf", "FrRn2"};
    case 9:
      return {"RnVrInf", "RnApInf",  "RnLm1Inf",  "RnId",    "RnChFr",
              "RnCm",    "RnFr",     "FrRn",      "RnBvrInf", "RnBvrPInf",
              "FSupFrInf", "FrVrInf", "FrApInf",  "FrLmInf"};
    case 4:
      throw std::invalid_argument("no corecursor with id 4");
    default:
      throw std::out_of_range("corecursor id must be 1..9");
  }
}

namespace {

// Regular coterm sampler: embedded finite terms mixed with small cyclic
// coalgebras, names drawn from the standard pool.
CoTerm sample_coterm(std::mt19937_64& rng) {
  auto rv = [&rng] {
    return var(std::uniform_int_distribution<std::uint64_t>(0, 5)(rng));
  };
  int k = std::uniform_int_distribution<int>(0, 7)(rng);
  switch (k) {
    case 0:
      return embed(Term::Vr(rv()));
    case 1:  // t = t t
      return CoTerm::from_table({CoA{0, 0}}, 0);
    case 2: {  // t = \x. t
      Var x = rv();
      return CoTerm::from_table({CoL{x, 0}}, 0);
    }
    case 3: {  // t = (\x. x) t
      Var x = rv();
      return CoTerm::from_table({CoA{1, 0}, CoL{x, 2}, CoV{x}}, 0);
    }
    case 4: {  // t = \x. x (x (x ...))
      Var x = rv();
      return CoTerm::from_table({CoL{x, 1}, CoA{2, 1}, CoV{x}}, 0);
    }
    case 5: {  // t = \x. \y. t, plus a free leaf to one side
      Var x = rv(), y = rv(), z = rv();
      return CoTerm::from_table({CoL{x, 1}, CoL{y, 3}, CoV{z}, CoA{2, 0}}, 0);
    }
    default:
      return embed(sample_term(rng, 6, 10));
  }
}

CoModel<CoTerm> coterm_base() {
  CoModel<CoTerm> m;
  m.finite_states = true;
  m.eq = [](const CoTerm& a, const CoTerm& b) { return co_alpha_eq(a, b); };
  m.sample = sample_coterm;
  m.show = [](const CoTerm& t) { return truncate(t, 5); };
  m.key = [](const CoTerm& t) { return co_key(t); };
  m.dest = [](const CoTerm& t) -> Obs<CoTerm> {
    CoDestView d = co_dest(t);
    if (const auto* v = std::get_if<CoDestV>(&d)) return ObsV<CoTerm>{v->x};
    if (const auto* a = std::get_if<CoDestA>(&d))
      return ObsA<CoTerm>{a->fn, a->arg};
    const auto& l = std::get<CoDestL>(d);
    std::function<bool(Var, const CoTerm&)> member =
        [t](Var y, const CoTerm& u) { return co_K_member(t, y, u); };
    return ObsL<CoTerm>{l.stored_binder(), l.stored_body(),
                         std::move(member)};
  };
  m.permD = [](const CoTerm& t, const Perm& p) { return co_perm(t, p); };
  m.swapD = [](const CoTerm& t, Var x, Var y) { return co_swap(t, x, y); };
  m.substD = [](const CoTerm& t, const CoTerm& s, Var z) {
    return co_subst(t, s, z);
  };
  m.renameD = [](const CoTerm& t, Var x, Var y) { return co_rename(t, x, y); };
  m.fvD = [](const CoTerm& t) { return co_fv(t); };
  m.freshD = [](Var x, const CoTerm& t) { return co_fresh(x, t); };
  m.VrD = [](Var x) { return embed(Term::Vr(x)); };
  m.supp_oracle = [](const CoTerm& t) { return VarSet::finite(t.mentioned()); };
  return m;
}

}  // namespace

CoModel<CoTerm> coterm_comodel(int i) {
  Signature sig = co_sigma_of(i);
  CoModel<CoTerm> m = coterm_base();
  m.sig = std::move(sig);
  return m;
}

CoModel<CoTerm> broken_swap_comodel() {
  CoModel<CoTerm> m = coterm_base();
  m.sig = co_sigma_of(5);
  // swap that renames along the spine but goes inert below the first
  // abstraction: binders move, bodies do not
  m.swapD = [](const CoTerm& t, Var z1, Var z2) {
    if (z1 == z2) return t;
    auto base = t;
    auto step = [base, z1, z2](CoState c) -> CoStep {
      CoState orig = c / 2;
      bool active = (c % 2) == 1;
      CoStep s = base.step(orig);
      if (const auto* v = std::get_if<CoV>(&s))
        return CoV{active ? detail::msw(v->x, z1, z2) : v->x};
      if (const auto* a = std::get_if<CoA>(&s))
        return CoA{2 * a->fn + (active ? 1 : 0), 2 * a->arg + (active ? 1 : 0)};
      const auto& l = std::get<CoL>(s);
      return CoL{active ? detail::msw(l.binder, z1, z2) : l.binder,
                 2 * l.body};  // body goes inert
    };
    return CoTerm::from_fn(step, 2 * t.root() + 1, t.regular());
  };
  // memberships dropped: the adapter rebuilds them through the broken swap
  auto inner = m.dest;
  m.dest = [inner](const CoTerm& t) -> Obs<CoTerm> {
    Obs<CoTerm> d = inner(t);
    if (auto* l = std::get_if<ObsL<CoTerm>>(&d)) l->member = nullptr;
    return d;
  };
  return m;
}

namespace {

bool env_eq(const Env& a, const Env& b) {
  std::set<Var> keys;
  for (const auto& kv : a.modified()) keys.insert(kv.first);
  for (const auto& kv : b.modified()) keys.insert(kv.first);
  for (Var k : keys)
    if (!co_alpha_eq(a.get(k), b.get(k))) return false;
  return true;
}

std::string env_key(const Env& rho) {
  std::string out;
  for (const auto& [k, img] : rho.modified()) {
    if (co_alpha_eq(img, embed(Term::Vr(k)))) continue;  // inert entry
    out += default_name(k) + "=" + co_key(img) + ";";
  }
  return out;
}

std::string env_show(const Env& rho) {
  std::string out = "{";
  bool first = true;
  for (const auto& [k, img] : rho.modified()) {
    if (!first) out += ", ";
    out += default_name(k) + " -> " + truncate(img, 3);
    first = false;
  }
  return out + "}";
}

VarSet ps_supp(const PsItem& a) {
  VarSet s = VarSet::finite(a.t.mentioned());
  return VarSet::unite(s, a.rho.supp());
}

Env sample_env(std::mt19937_64& rng) {
  Env rho;
  int k = std::uniform_int_distribution<int>(0, 2)(rng);
  for (int i = 0; i < k; ++i) {
    Var x = var(std::uniform_int_distribution<std::uint64_t>(0, 5)(rng));
    rho.set(x, sample_coterm(rng));
  }
  return rho;
}

// Shared skeleton of the parallel-substitution comodels; exit_on_hit makes
// modified variables exit with their image instead of unfolding it.
CoModel<PsItem> psubst_comodel_impl(bool exit_on_hit) {
  CoModel<PsItem> m;
  m.sig = {Sym::sw, Sym::fr};
  m.finite_states = true;
  m.eq = [](const PsItem& a, const PsItem& b) {
    return co_alpha_eq(a.t, b.t) && env_eq(a.rho, b.rho);
  };
  m.sample = [](std::mt19937_64& rng) {
    return PsItem{sample_coterm(rng), sample_env(rng)};
  };
  m.show = [](const PsItem& a) {
    return truncate(a.t, 4) + " | " + env_show(a.rho);
  };
  m.key = [](const PsItem& a) { return co_key(a.t) + "|" + env_key(a.rho); };
  m.dest = [exit_on_hit](const PsItem& a) -> Obs<PsItem> {
    CoDestView d = co_dest(a.t);
    if (const auto* v = std::get_if<CoDestV>(&d)) {
      CoTerm img = a.rho.get(v->x);
      bool inert = co_alpha_eq(img, embed(Term::Vr(v->x)));
      if (inert) return ObsV<PsItem>{v->x};
      if (exit_on_hit) return ObsX<PsItem>{img};
      // unfold the image under the empty environment
      CoDestView di = co_dest(img);
      if (const auto* vi = std::get_if<CoDestV>(&di))
        return ObsV<PsItem>{vi->x};
      if (const auto* ai = std::get_if<CoDestA>(&di))
        return ObsA<PsItem>{{ai->fn, Env{}}, {ai->arg, Env{}}};
      const auto& li = std::get<CoDestL>(di);
      CoTerm body = li.stored_body();
      std::function<bool(Var, const PsItem&)> member =
          [img](Var y, const PsItem& c) {
            return env_eq(c.rho, Env{}) && co_K_member(img, y, c.t);
          };
      return ObsL<PsItem>{li.stored_binder(), {body, Env{}},
                           std::move(member)};
    }
    if (const auto* ap = std::get_if<CoDestA>(&d))
      return ObsA<PsItem>{{ap->fn, a.rho}, {ap->arg, a.rho}};
    const auto& l = std::get<CoDestL>(d);
    auto [z, body] = l.extract(a.rho.supp());
    CoTerm whole = a.t;
    Env rho = a.rho;
    VarSet supp = rho.supp();
    std::function<bool(Var, const PsItem&)> member =
        [whole, rho, supp](Var y, const PsItem& c) {
          return !supp.contains(y) && env_eq(c.rho, rho) &&
                 co_K_member(whole, y, c.t);
        };
    return ObsL<PsItem>{z, {body, a.rho}, std::move(member)};
  };
  m.swapD = [](const PsItem& a, Var z1, Var z2) {
    return PsItem{co_swap(a.t, z1, z2), a.rho.swapped(z1, z2)};
  };
  m.freshD = [](Var x, const PsItem& a) {
    return co_fresh(x, a.t) && !a.rho.supp().contains(x);
  };
  m.supp_oracle = ps_supp;
  return m;
}

}  // namespace

CoModel<PsItem> psubst_comodel() { return psubst_comodel_impl(false); }

CoModel<PsItem> psubst_exit_comodel() { return psubst_comodel_impl(true); }

}  // namespace nomrec
