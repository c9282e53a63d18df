#include "nomrec/examples.hpp"

#include <algorithm>
#include <mutex>

#include "nomrec/gen.hpp"
#include "nomrec/recursors.hpp"

namespace nomrec {

// --------------------------------------------------------------------------
// Extended terms.

Const const_ap() { return Const{0}; }
Const const_lm() { return Const{1}; }

std::string const_name(Const c) {
  switch (c.id) {
    case 0: return "ap";
    case 1: return "lm";
    default: return "k" + std::to_string(c.id);
  }
}

ExtTerm::Kind ExtTerm::kind() const {
  switch (rep_.kind()) {
    case Term::Kind::Vr:
      return rep_.vr_var().index >= kConstBase ? Kind::Ct : Kind::Vr;
    case Term::Kind::Ap:
      return Kind::Ap;
    case Term::Kind::Lm:
      return Kind::Lm;
  }
  throw std::logic_error("ExtTerm: bad representation");
}

Var ExtTerm::vr_var() const {
  if (kind() != Kind::Vr) throw std::logic_error("ExtTerm: not a variable");
  return rep_.vr_var();
}

Const ExtTerm::ct_const() const {
  if (kind() != Kind::Ct) throw std::logic_error("ExtTerm: not a constant");
  return Const{rep_.vr_var().index - kConstBase};
}

ExtTerm ExtTerm::ap_fn() const {
  if (kind() != Kind::Ap) throw std::logic_error("ExtTerm: not an application");
  return ExtTerm(rep_.ap_fn());
}

ExtTerm ExtTerm::ap_arg() const {
  if (kind() != Kind::Ap) throw std::logic_error("ExtTerm: not an application");
  return ExtTerm(rep_.ap_arg());
}

Var ExtTerm::lm_binder() const {
  if (kind() != Kind::Lm) throw std::logic_error("ExtTerm: not an abstraction");
  return rep_.lm_binder();
}

ExtTerm ExtTerm::lm_body() const {
  if (kind() != Kind::Lm) throw std::logic_error("ExtTerm: not an abstraction");
  return ExtTerm(rep_.lm_body());
}

namespace {

void require_plain(Var x, const char* who) {
  if (x.index >= ExtTerm::kConstBase)
    throw std::invalid_argument(std::string(who) +
                                ": variable lies in the constant range");
}

}  // namespace

ExtTerm EVr(Var x) {
  require_plain(x, "EVr");
  return ExtTerm(Term::Vr(x));
}

ExtTerm ECt(Const c) {
  return ExtTerm(Term::Vr(var(ExtTerm::kConstBase + c.id)));
}

ExtTerm EAp(const ExtTerm& fn, const ExtTerm& arg) {
  return ExtTerm(Term::Ap(fn.rep_, arg.rep_));
}

ExtTerm ELm(Var x, const ExtTerm& body) {
  require_plain(x, "ELm");
  return ExtTerm(Term::Lm(x, body.rep_));
}

bool ealpha_eq(const ExtTerm& a, const ExtTerm& b) {
  return alpha_eq(a.rep(), b.rep());
}

ExtTerm esubst(const ExtTerm& e, const ExtTerm& img, Var y) {
  require_plain(y, "esubst");
  return ExtTerm::from_rep(subst(e.rep(), img.rep(), y));
}

ExtTerm eswap(const ExtTerm& e, Var x, Var y) {
  require_plain(x, "eswap");
  require_plain(y, "eswap");
  return ExtTerm::from_rep(swap(e.rep(), x, y));
}

std::set<Var> efv(const ExtTerm& e) {
  std::set<Var> out;
  for (Var v : fv(e.rep()))
    if (v.index < ExtTerm::kConstBase) out.insert(v);
  return out;
}

bool efresh(Var x, const ExtTerm& e) {
  require_plain(x, "efresh");
  return fresh(x, e.rep());
}

std::string print_ext(const ExtTerm& e, const NameTable* names) {
  auto name = [names](Var v) {
    return names ? names->name_of(v) : default_name(v);
  };
  // pos: 0 top level, 1 function position, 2 argument position
  std::function<std::string(const ExtTerm&, int)> go =
      [&](const ExtTerm& u, int pos) -> std::string {
    switch (u.kind()) {
      case ExtTerm::Kind::Vr:
        return name(u.vr_var());
      case ExtTerm::Kind::Ct:
        return "#" + const_name(u.ct_const());
      case ExtTerm::Kind::Lm: {
        std::string s = "\\" + name(u.lm_binder()) + ". " + go(u.lm_body(), 0);
        return pos == 0 ? s : "(" + s + ")";
      }
      case ExtTerm::Kind::Ap: {
        std::string s = go(u.ap_fn(), 1) + " " + go(u.ap_arg(), 2);
        return pos == 2 ? "(" + s + ")" : s;
      }
    }
    throw std::logic_error("print_ext: bad kind");
  };
  return go(e, 0);
}

ExtTerm sample_ext(std::mt19937_64& rng, int pool, int max_size) {
  std::function<ExtTerm(int&)> go = [&](int& budget) -> ExtTerm {
    --budget;
    int c = budget <= 1 ? static_cast<int>(rng() % 4)
                        : static_cast<int>(rng() % 8);
    switch (c) {
      case 0:
      case 1:
        return EVr(var(rng() % pool));
      case 2:
      case 3:
        return ECt(Const{rng() % 4});
      case 4:
      case 5:
      case 6: {
        ExtTerm f = go(budget);
        ExtTerm a = go(budget);
        return EAp(f, a);
      }
      default: {
        Var x = var(rng() % pool);
        ExtTerm b = go(budget);
        return ELm(x, b);
      }
    }
  };
  int budget = 2 + static_cast<int>(rng() % max_size);
  return go(budget);
}

// --------------------------------------------------------------------------
// Semantic domain and interpretations.

namespace {

constexpr std::uint64_t kSemBases = 8;

int mod5(int v) { return ((v % kSemMod) + kSemMod) % kSemMod; }

int env_val(std::uint64_t seed, Var v) {
  std::uint64_t x =
      seed * 0x9e3779b97f4a7c15ull + (v.index + 1) * 0xbf58476d1ce4e5b9ull;
  x ^= x >> 31;
  x *= 0x94d049bb133111ebull;
  x ^= x >> 29;
  return static_cast<int>(x % kSemMod);
}

}  // namespace

int sem_ap(int a, int b) { return mod5(2 * a + 3 * b + a * b); }

int sem_lm(const std::function<int(int)>& f) { return mod5(f(0)); }

SemEnv sem_env(std::uint64_t seed) {
  return [seed](Var v) { return env_val(seed, v); };
}

SemEnv sem_env_upd(const SemEnv& xi, Var x, int d) {
  return [xi, x, d](Var v) { return v == x ? d : xi(v); };
}

bool interp_eq(const Interp& a, const Interp& b) {
  for (std::uint64_t s = 0; s < kSemBases; ++s) {
    SemEnv xi = sem_env(s);
    if (a.fn(xi) != b.fn(xi)) return false;
  }
  std::set<Var> ws = a.hint.finite_elems();
  for (Var v : b.hint.finite_elems()) ws.insert(v);
  for (Var w : ws)
    for (std::uint64_t s = 0; s < kSemBases; ++s) {
      SemEnv xi = sem_env(s);
      for (int d = 0; d < kSemMod; ++d) {
        SemEnv up = sem_env_upd(xi, w, d);
        if (a.fn(up) != b.fn(up)) return false;
      }
    }
  return true;
}

bool interp_depends(const Interp& i, Var x) {
  for (std::uint64_t s = 0; s < kSemBases; ++s) {
    SemEnv xi = sem_env(s);
    int base = i.fn(xi);
    for (int d = 0; d < kSemMod; ++d)
      if (i.fn(sem_env_upd(xi, x, d)) != base) return true;
  }
  return false;
}

namespace {

Interp interp_vr(Var x) {
  return Interp{[x](const SemEnv& xi) { return mod5(xi(x)); },
                VarSet::finite({x})};
}

Interp interp_ap(const Interp& a, const Interp& b) {
  auto af = a.fn;
  auto bf = b.fn;
  return Interp{[af, bf](const SemEnv& xi) { return sem_ap(af(xi), bf(xi)); },
                VarSet::unite(a.hint, b.hint)};
}

Interp interp_lm(Var x, const Interp& i) {
  auto f = i.fn;
  return Interp{
      [x, f](const SemEnv& xi) {
        return sem_lm([&](int d) { return f(sem_env_upd(xi, x, d)); });
      },
      i.hint.without(x)};
}

Interp interp_pm(const Interp& i, const Perm& p) {
  auto f = i.fn;
  VarSet h = VarSet::finite({});
  for (Var v : i.hint.finite_elems()) h.insert(p.apply(v));
  return Interp{[f, p](const SemEnv& xi) {
                  SemEnv comp = [xi, p](Var v) { return xi(p.apply(v)); };
                  return f(comp);
                },
                h};
}

Interp interp_of_term(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Vr:
      return interp_vr(t.vr_var());
    case Term::Kind::Ap:
      return interp_ap(interp_of_term(t.ap_fn()), interp_of_term(t.ap_arg()));
    case Term::Kind::Lm:
      return interp_lm(t.lm_binder(), interp_of_term(t.lm_body()));
  }
  throw std::logic_error("interp_of_term: bad kind");
}

std::string show_interp(const Interp& i) {
  std::string out = "i{h=" + i.hint.to_string() + ", v=[";
  for (std::uint64_t s = 0; s < 4; ++s) {
    if (s) out += ",";
    out += std::to_string(i.fn(sem_env(s)));
  }
  return out + "]}";
}

}  // namespace

// --------------------------------------------------------------------------
// Models.

Model<NoccsMap> noccs_model() {
  Model<NoccsMap> m;
  m.sig = sigma_of(6);
  m.eq = [](const NoccsMap& a, const NoccsMap& b) { return a == b; };
  m.sample = [](std::mt19937_64& rng) {
    NoccsMap out;
    int k = static_cast<int>(rng() % 4);
    for (int i = 0; i < k; ++i)
      out[var(rng() % 6)] = 1 + static_cast<unsigned>(rng() % 3);
    return out;
  };
  m.show = [](const NoccsMap& a) {
    std::string out = "{";
    bool first = true;
    for (const auto& kv : a) {
      if (!first) out += ",";
      out += default_name(kv.first) + ":" + std::to_string(kv.second);
      first = false;
    }
    return out + "}";
  };
  m.VrD = [](Var x) { return NoccsMap{{x, 1u}}; };
  m.ApD = [](const NoccsMap& a, const NoccsMap& b) {
    NoccsMap out = a;
    for (const auto& kv : b) out[kv.first] += kv.second;
    return out;
  };
  m.LmD = [](Var x, const NoccsMap& a) {
    NoccsMap out = a;
    out.erase(x);
    return out;
  };
  m.swapD = [](const NoccsMap& a, Var y1, Var y2) {
    NoccsMap out;
    for (const auto& kv : a) out[detail::msw(kv.first, y1, y2)] = kv.second;
    return out;
  };
  m.freshD = [](Var x, const NoccsMap& a) { return a.count(x) == 0; };
  m.supp_oracle = [](const NoccsMap& a) {
    std::set<Var> keys;
    for (const auto& kv : a) keys.insert(kv.first);
    return VarSet::finite(keys);
  };
  return m;
}

Model<unsigned> size_model() {
  Model<unsigned> m;
  m.sig = sigma_of(4);
  m.eq = [](unsigned a, unsigned b) { return a == b; };
  m.sample = [](std::mt19937_64& rng) {
    return static_cast<unsigned>(rng() % 40);
  };
  m.show = [](unsigned a) { return std::to_string(a); };
  m.VrD = [](Var) { return 1u; };
  m.ApD = [](unsigned a, unsigned b) { return a + b + 1; };
  m.LmD = [](Var, unsigned a) { return a + 1; };
  m.swapD = [](unsigned a, Var, Var) { return a; };
  m.fvD = [](unsigned) { return VarSet::finite({}); };
  m.supp_oracle = [](unsigned) { return VarSet::finite({}); };
  return m;
}

EnhancedModel<bool> enf_model() {
  using DPair = EnhancedModel<bool>::DPair;
  EnhancedModel<bool> m;
  m.sig = sigma_of(4);
  m.X = VarSet::finite({});
  m.eq = [](bool a, bool b) { return a == b; };
  m.sample_pair = [](std::mt19937_64& rng) {
    Term t = sample_term(rng, 5, 10);
    return DPair{t, (rng() & 1) != 0};
  };
  m.show = [](bool b) { return std::string(b ? "true" : "false"); };
  m.VrD = [](Var) { return true; };
  m.ApD = [](const DPair& a, const DPair& b) { return a.second && b.second; };
  m.LmD = [](Var x, const DPair& d) {
    if (!d.second) return false;
    const Term& t = d.first;
    if (t.kind() == Term::Kind::Ap && alpha_eq(t.ap_arg(), Term::Vr(x)))
      return fv(t.ap_fn()).count(x) != 0;
    return true;
  };
  m.swapD = [](const DPair& d, Var, Var) { return d.second; };
  m.fvD = [](const DPair&) { return VarSet::finite({}); };
  return m;
}

Model<ExtTerm> hoas_model() {
  Model<ExtTerm> m;
  m.sig = sigma_of(7);
  m.eq = ealpha_eq;
  m.sample = [](std::mt19937_64& rng) { return sample_ext(rng); };
  m.show = [](const ExtTerm& e) { return print_ext(e); };
  m.VrD = [](Var x) { return EVr(x); };
  m.ApD = [](const ExtTerm& a, const ExtTerm& b) {
    return EAp(EAp(ECt(const_ap()), a), b);
  };
  m.LmD = [](Var x, const ExtTerm& e) {
    return EAp(ECt(const_lm()), ELm(x, e));
  };
  m.substD = esubst;
  m.freshD = efresh;
  m.supp_oracle = [](const ExtTerm& e) { return VarSet::finite(efv(e)); };
  return m;
}

Model<Interp> sem_model() {
  Model<Interp> m;
  m.sig = sigma_of(2);
  m.eq = interp_eq;
  m.sample = [](std::mt19937_64& rng) {
    if (rng() % 3 != 2) return interp_of_term(sample_term(rng, 5, 10));
    // random finite-support element: quadratic in up to two pool variables
    int k = static_cast<int>(rng() % 3);
    std::vector<std::pair<Var, std::pair<int, int>>> coef;
    std::set<Var> vars;
    for (int i = 0; i < k; ++i) {
      Var v = var(rng() % 6);
      vars.insert(v);
      coef.push_back({v, {static_cast<int>(rng() % kSemMod),
                          static_cast<int>(rng() % kSemMod)}});
    }
    int c0 = static_cast<int>(rng() % kSemMod);
    return Interp{[c0, coef](const SemEnv& xi) {
                    int acc = c0;
                    for (const auto& t : coef) {
                      int v = mod5(xi(t.first));
                      acc += t.second.first * v + t.second.second * v * v;
                    }
                    return mod5(acc);
                  },
                  VarSet::finite(vars)};
  };
  m.show = show_interp;
  m.VrD = interp_vr;
  m.ApD = interp_ap;
  m.LmD = interp_lm;
  m.permD = interp_pm;
  m.fvD = [](const Interp& i) { return i.hint; };
  m.supp_oracle = [](const Interp& i) { return i.hint; };
  return m;
}

Model<std::pair<Term, Interp>> pitts_submodel(const Model<Interp>& base) {
  using P = std::pair<Term, Interp>;
  Model<P> m;
  m.sig = sigma_of(1);
  auto beq = base.eq;
  auto bshow = base.show;
  m.eq = [beq](const P& a, const P& b) { return beq(a.second, b.second); };
  m.sample = [](std::mt19937_64& rng) {
    Term t = sample_term(rng, 5, 10);
    return P{t, interp_of_term(t)};
  };
  m.show = [bshow](const P& p) {
    return "(t=" + print_term(p.first) + ", " + bshow(p.second) + ")";
  };
  m.VrD = [bvr = base.VrD](Var x) { return P{Term::Vr(x), bvr(x)}; };
  m.ApD = [bap = base.ApD](const P& a, const P& b) {
    return P{Term::Ap(a.first, b.first), bap(a.second, b.second)};
  };
  m.LmD = [blm = base.LmD](Var x, const P& p) {
    return P{Term::Lm(x, p.first), blm(x, p.second)};
  };
  m.permD = [bpm = base.permD](const P& p, const Perm& sg) {
    return P{permute(p.first, sg), bpm(p.second, sg)};
  };
  // dependence-probed free variables: the witness bounds the candidates
  m.fvD = [](const P& p) {
    std::set<Var> out;
    for (Var v : fv(p.first))
      if (interp_depends(p.second, v)) out.insert(v);
    return VarSet::finite(out);
  };
  m.supp_oracle = [](const P& p) { return fv_set(p.first); };
  return m;
}

EnhancedModel<Term> subst_model(const Term& s, Var y) {
  using DPair = EnhancedModel<Term>::DPair;
  EnhancedModel<Term> m;
  m.sig = sigma_of(1);
  m.X = fv_set(s).with(y);
  m.eq = [](const Term& a, const Term& b) { return alpha_eq(a, b); };
  m.sample_pair = [](std::mt19937_64& rng) {
    Term t = sample_term(rng, 5, 8);
    Term c = sample_term(rng, 5, 8);
    return DPair{t, c};
  };
  m.show = [](const Term& t) { return print_term(t); };
  m.VrD = [s, y](Var x) { return x == y ? s : Term::Vr(x); };
  m.ApD = [](const DPair& a, const DPair& b) {
    return Term::Ap(a.second, b.second);
  };
  m.LmD = [](Var x, const DPair& d) { return Term::Lm(x, d.second); };
  m.permD = [](const DPair& d, const Perm& p) {
    return permute(d.second, p);
  };
  m.fvD = [](const DPair& d) { return fv_set(d.second); };
  return m;
}

// --------------------------------------------------------------------------
// Self-test battery and the first-use gate.

std::vector<ExampleCheck> examples_self_test(const CheckConfig& cfg) {
  std::vector<ExampleCheck> out;
  out.push_back({"noccs", check_props(noccs_model(), props_of(6), cfg)});
  out.push_back({"size_of", check_props(size_model(), props_of(4), cfg)});
  out.push_back({"enf", check_enhanced_props(enf_model(), props_of(4), cfg)});
  out.push_back({"hoas_encode", check_props(hoas_model(), props_of(7), cfg)});
  Model<Interp> sm = sem_model();
  out.push_back({"sem", check_props(sm, props_of(2), cfg)});
  out.push_back({"sem_pitts", check_props(pitts_submodel(sm), props_of(1), cfg)});
  Term s0 = Term::Ap(Term::Lm(var(0), Term::Vr(var(0))), Term::Vr(var(1)));
  out.push_back({"subst_via_r1",
                 check_enhanced_props(subst_model(s0, var(2)), props_of(1), cfg)});
  // parametric spot-check: two seeded instances at a reduced sample count
  CheckConfig scfg = cfg;
  scfg.n = std::min(cfg.n, 120);
  std::mt19937_64 rng(cfg.seed ^ 0x5bd1e9955bd1e995ull);
  for (int k = 2; k <= 3; ++k) {
    Term s = sample_term(rng, 5, 8);
    Var yv = var(rng() % 6);
    out.push_back({"subst_via_r1#" + std::to_string(k),
                   check_enhanced_props(subst_model(s, yv), props_of(1), scfg)});
  }
  return out;
}

namespace {

void ensure_examples_ok() {
  static std::once_flag flag;
  static std::string failure;
  std::call_once(flag, [] {
    CheckConfig cfg;
    cfg.seed = 1;
    cfg.n = 300;
    try {
      for (const auto& c : examples_self_test(cfg))
        if (!c.report.all_pass()) {
          failure = "example model '" + c.model + "' failed its law suite:\n" +
                    c.report.to_string();
          return;
        }
    } catch (const std::exception& e) {
      failure = std::string("example self-test threw: ") + e.what();
    }
  });
  if (!failure.empty()) throw std::runtime_error(failure);
}

}  // namespace

// --------------------------------------------------------------------------
// The operations.

NoccsMap noccs_all(const Term& t) {
  ensure_examples_ok();
  static const Recursion<NoccsMap> r = rec(6, noccs_model());
  return r.g(t);
}

unsigned noccs(const Term& t, Var x) {
  NoccsMap m = noccs_all(t);
  auto it = m.find(x);
  return it == m.end() ? 0u : it->second;
}

unsigned size_of(const Term& t) {
  ensure_examples_ok();
  static const Recursion<unsigned> r = rec(4, size_model());
  return r.g(t);
}

bool enf(const Term& t) {
  ensure_examples_ok();
  static const Recursion<bool> r = rec_enhanced(4, enf_model());
  return r.g(t);
}

ExtTerm hoas_encode(const Term& t) {
  ensure_examples_ok();
  static const Recursion<ExtTerm> r = rec(7, hoas_model());
  return r.g(t);
}

namespace {

Interp sem_interp(const Term& t) {
  static const Recursion<Interp> r = rec(2, sem_model());
  return r.g(t);
}

}  // namespace

int sem(const Term& t, const SemEnv& xi) {
  ensure_examples_ok();
  return sem_interp(t).fn(xi);
}

int sem_via_r1(const Term& t, const SemEnv& xi) {
  ensure_examples_ok();
  static const Recursion<std::pair<Term, Interp>> r =
      rec(1, pitts_submodel(sem_model()));
  return r.g(t).second.fn(xi);
}

VarSet sem_deps(const Term& t) {
  ensure_examples_ok();
  Interp i = sem_interp(t);
  std::set<Var> out;
  for (Var v : fv(t))
    if (interp_depends(i, v)) out.insert(v);
  return VarSet::finite(out);
}

Term subst_via_r1(const Term& t, const Term& s, Var y) {
  ensure_examples_ok();
  return rec_enhanced(1, subst_model(s, y)).g(t);
}

}  // namespace nomrec
