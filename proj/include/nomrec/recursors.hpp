#pragma once

#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "nomrec/gen.hpp"
#include "nomrec/model.hpp"
#include "nomrec/transforms.hpp"

namespace nomrec {

// Interpretation of terms in a model carrier, produced by one of the rec
// builders below.
template <typename C>
struct Recursion {
  int source_id = 0;
  bool checked = false;
  std::function<C(const Term&)> g;
};

// Renames every binder in t to a globally fresh variable; the result is
// alpha-equivalent to t but shares no binder names with it.
inline Term refresh_binders(const Term& t) {
  std::set<Var> used = fv(t);
  std::function<Term(const Term&)> go = [&](const Term& u) -> Term {
    switch (u.kind()) {
      case Term::Kind::Vr:
        return u;
      case Term::Kind::Ap:
        return Term::Ap(go(u.ap_fn()), go(u.ap_arg()));
      case Term::Kind::Lm: {
        Var b = u.lm_binder();
        std::set<Var> avoid = used;
        for (Var v : fv(u.lm_body())) avoid.insert(v);
        avoid.insert(b);
        Var nb = fresh_var(avoid);
        used.insert(nb);
        return Term::Lm(nb, go(swap(u.lm_body(), nb, b)));
      }
    }
    throw std::logic_error("refresh_binders: bad kind");
  };
  return go(t);
}

namespace detail {

// Structural fold over the stored representative. Only the constructor
// operations compute; the rest of the signature carries laws. Shared
// subterms are folded once per top-level call, keyed by canonical form.
template <typename C>
C fold_term(const Model<C>& m, const Term& t, std::map<std::string, C>& memo) {
  auto it = memo.find(t.canon());
  if (it != memo.end()) return it->second;
  C out = [&] {
    switch (t.kind()) {
      case Term::Kind::Vr:
        return m.VrD(t.vr_var());
      case Term::Kind::Ap: {
        C fn = fold_term(m, t.ap_fn(), memo);
        C arg = fold_term(m, t.ap_arg(), memo);
        return m.ApD(fn, arg);
      }
      case Term::Kind::Lm: {
        C body = fold_term(m, t.lm_body(), memo);
        return m.LmD(t.lm_binder(), body);
      }
    }
    throw std::logic_error("fold_term: bad kind");
  }();
  memo.emplace(t.canon(), out);
  return out;
}

template <typename C>
Recursion<C> make_fold(const Model<C>& m, int id, bool checked) {
  Recursion<C> r;
  r.source_id = id;
  r.checked = checked;
  Model<C> mc = m;
  r.g = [mc, checked](const Term& t) {
    std::map<std::string, C> memo;
    C out = fold_term(mc, t, memo);
    if (checked) {
      std::map<std::string, C> memo2;
      C out2 = fold_term(mc, refresh_binders(t), memo2);
      if (!mc.eq(out, out2))
        throw std::runtime_error("alpha-instability on input: " +
                                 print_term(t));
    }
    return out;
  };
  return r;
}

inline void require_sig(const Signature& have, const Signature& want,
                        const char* who) {
  for (Sym s : want)
    if (!have.count(s))
      throw std::invalid_argument(std::string(who) +
                                  ": model signature lacks " + sym_name(s));
}

// One sampled evaluation of a morphism clause.
struct MorCase {
  bool hit = true;
  bool ok = true;
  std::string cex;
};

}  // namespace detail

// Recursor over swapping/freshness models. In checked mode every call is
// re-run on an input with refreshed binders and the two results compared,
// so alpha-dependence of the model surfaces as an error at use site.
template <typename C>
Recursion<C> rec6(const Model<C>& m, bool checked = false) {
  detail::require_sig(m.sig, sigma_of(6), "rec6");
  validate_model(m);
  return detail::make_fold(m, 6, checked);
}

// Recursor over renaming/freshness models.
template <typename C>
Recursion<C> rec9(const Model<C>& m, bool checked = false) {
  detail::require_sig(m.sig, sigma_of(9), "rec9");
  validate_model(m);
  return detail::make_fold(m, 9, checked);
}

// Uniform entry point: models for the weaker signatures are converted along
// the transform chain until rec6 or rec9 applies. The chain only changes
// which laws are expected of the model; the computed interpretation is the
// same structural fold throughout.
template <typename C>
Recursion<C> rec(int i, const Model<C>& m, bool checked = false) {
  detail::require_sig(m.sig, sigma_of(i), "rec");
  Recursion<C> out;
  switch (i) {
    case 6:
      return rec6(m, checked);
    case 9:
      return rec9(m, checked);
    case 5:
      out = rec6(m, checked);
      break;
    case 4:
      out = rec6(fresh_from_fv(m), checked);
      break;
    case 2:
      out = rec(4, swap_from_perm(m), checked);
      break;
    case 1:
      out = rec(2, m, checked);
      break;
    case 3:
      out = rec(1, perm_from_swap(m), checked);
      break;
    case 7:
      out = rec9(rename_from_subst(m), checked);
      break;
    case 8:
      out = rec9(fresh_from_rename(m), checked);
      break;
    default:
      throw std::invalid_argument("rec: recursor id out of range");
  }
  out.source_id = i;
  return out;
}

// Checks that r.g commutes with every operation in m's signature, sampling
// n instances per clause. Constructor clauses are unconditional; the
// freshness clause is guarded and the free-variable clause is a containment.
template <typename C>
PropReport morphism_report(int i, const Model<C>& m, const Recursion<C>& r,
                           int n = 200, uint64_t seed = 1) {
  detail::require_sig(m.sig, sigma_of(i), "morphism_report");
  PropReport rep;
  auto line = [&](const std::string& name,
                  const std::function<detail::MorCase(std::mt19937_64&)>&
                      once) {
    std::mt19937_64 rng(seed ^ fnv64(name) ^ 0x517cc1b727220a95ull);
    PropLine pl;
    pl.name = name;
    pl.pass = true;
    for (int k = 0; k < n; ++k) {
      detail::MorCase mc = once(rng);
      ++pl.n;
      if (!mc.hit) continue;
      ++pl.hits;
      if (!mc.ok && pl.pass) {
        pl.pass = false;
        pl.cex = mc.cex;
      }
    }
    rep.lines.push_back(pl);
  };
  const int pool = 6;
  auto pick_t = [pool](std::mt19937_64& rng) {
    return sample_term(rng, pool);
  };
  auto pick_x = [pool](std::mt19937_64& rng) {
    return detail::sample_var<C>(rng, pool, true);
  };

  line("MorVr", [&](std::mt19937_64& rng) {
    Var x = pick_x(rng);
    detail::MorCase mc;
    mc.ok = m.eq(r.g(Term::Vr(x)), m.VrD(x));
    if (!mc.ok) mc.cex = "MorVr(x=" + default_name(x) + ")";
    return mc;
  });
  line("MorAp", [&](std::mt19937_64& rng) {
    Term a = pick_t(rng), b = pick_t(rng);
    detail::MorCase mc;
    mc.ok = m.eq(r.g(Term::Ap(a, b)), m.ApD(r.g(a), r.g(b)));
    if (!mc.ok)
      mc.cex = "MorAp(t1=" + print_term(a) + ", t2=" + print_term(b) + ")";
    return mc;
  });
  line("MorLm", [&](std::mt19937_64& rng) {
    Term t = pick_t(rng);
    Var x = pick_x(rng);
    detail::MorCase mc;
    mc.ok = m.eq(r.g(Term::Lm(x, t)), m.LmD(x, r.g(t)));
    if (!mc.ok)
      mc.cex = "MorLm(x=" + default_name(x) + ", t=" + print_term(t) + ")";
    return mc;
  });
  if (m.sig.count(Sym::sw))
    line("MorSw", [&](std::mt19937_64& rng) {
      Term t = pick_t(rng);
      Var x = pick_x(rng), y = pick_x(rng);
      detail::MorCase mc;
      mc.ok = m.eq(r.g(swap(t, x, y)), m.swapD(r.g(t), x, y));
      if (!mc.ok)
        mc.cex = "MorSw(t=" + print_term(t) + ", x=" + default_name(x) +
                 ", y=" + default_name(y) + ")";
      return mc;
    });
  if (m.sig.count(Sym::pm))
    line("MorPm", [&](std::mt19937_64& rng) {
      Term t = pick_t(rng);
      Perm p = detail::sample_perm<C>(rng, pool);
      detail::MorCase mc;
      mc.ok = m.eq(r.g(permute(t, p)), m.permD(r.g(t), p));
      if (!mc.ok)
        mc.cex = "MorPm(t=" + print_term(t) + ", p=" + p.to_string() + ")";
      return mc;
    });
  if (m.sig.count(Sym::sb))
    line("MorSb", [&](std::mt19937_64& rng) {
      Term t = pick_t(rng), s = pick_t(rng);
      Var y = pick_x(rng);
      detail::MorCase mc;
      mc.ok = m.eq(r.g(subst(t, s, y)), m.substD(r.g(t), r.g(s), y));
      if (!mc.ok)
        mc.cex = "MorSb(t=" + print_term(t) + ", s=" + print_term(s) +
                 ", y=" + default_name(y) + ")";
      return mc;
    });
  if (m.sig.count(Sym::ren))
    line("MorRen", [&](std::mt19937_64& rng) {
      Term t = pick_t(rng);
      Var x = pick_x(rng), y = pick_x(rng);
      detail::MorCase mc;
      mc.ok = m.eq(r.g(rename(t, x, y)), m.renameD(r.g(t), x, y));
      if (!mc.ok)
        mc.cex = "MorRen(t=" + print_term(t) + ", x=" + default_name(x) +
                 ", y=" + default_name(y) + ")";
      return mc;
    });
  if (m.sig.count(Sym::fr))
    line("MorFr", [&](std::mt19937_64& rng) {
      Term t = pick_t(rng);
      Var x = (rng() % 2 == 0) ? fresh_var(fv(t)) : pick_x(rng);
      detail::MorCase mc;
      if (!fresh(x, t)) {
        mc.hit = false;
        return mc;
      }
      mc.ok = m.freshD(x, r.g(t));
      if (!mc.ok)
        mc.cex = "MorFr(x=" + default_name(x) + ", t=" + print_term(t) + ")";
      return mc;
    });
  if (m.sig.count(Sym::fv))
    line("MorFv", [&](std::mt19937_64& rng) {
      Term t = pick_t(rng);
      detail::MorCase mc;
      mc.ok = m.fvD(r.g(t)).subset_of(fv_set(t));
      if (!mc.ok) mc.cex = "MorFv(t=" + print_term(t) + ")";
      return mc;
    });
  return rep;
}

// Sampled agreement between two candidate interpretations in the same model:
// the surrogate for the uniqueness half of initiality.
template <typename C>
PropReport uniqueness_check(int i, const Model<C>& m,
                            const std::function<C(const Term&)>& g1,
                            const std::function<C(const Term&)>& g2,
                            int n = 200, uint64_t seed = 1) {
  detail::require_sig(m.sig, sigma_of(i), "uniqueness_check");
  std::mt19937_64 rng(seed ^ 0xa0761d6478bd642full);
  PropLine pl;
  pl.name = "SampledAgreement";
  pl.pass = true;
  for (int k = 0; k < n; ++k) {
    Term t = sample_term(rng, 6);
    ++pl.n;
    ++pl.hits;
    if (!m.eq(g1(t), g2(t)) && pl.pass) {
      pl.pass = false;
      pl.cex = "SampledAgreement(t=" + print_term(t) + ")";
    }
  }
  PropReport rep;
  rep.lines.push_back(pl);
  return rep;
}

}  // namespace nomrec
