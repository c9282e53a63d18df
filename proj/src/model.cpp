#include "nomrec/model.hpp"

#include "nomrec/gen.hpp"

namespace nomrec {

Model<Term> term_model(int i) {
  Signature sig = sigma_of(i);
  Model<Term> m;
  m.sig = sig;
  m.eq = [](const Term& a, const Term& b) { return alpha_eq(a, b); };
  m.sample = [](std::mt19937_64& rng) { return sample_term(rng); };
  m.show = [](const Term& t) { return print_term(t); };
  m.VrD = [](Var x) { return Term::Vr(x); };
  m.ApD = [](const Term& f, const Term& a) { return Term::Ap(f, a); };
  m.LmD = [](Var x, const Term& b) { return Term::Lm(x, b); };
  if (sig.count(Sym::pm))
    m.permD = [](const Term& t, const Perm& p) { return permute(t, p); };
  if (sig.count(Sym::sw))
    m.swapD = [](const Term& t, Var x, Var y) { return swap(t, x, y); };
  if (sig.count(Sym::sb))
    m.substD = [](const Term& t, const Term& s, Var y) {
      return subst(t, s, y);
    };
  if (sig.count(Sym::ren))
    m.renameD = [](const Term& t, Var x, Var y) { return rename(t, x, y); };
  if (sig.count(Sym::fv)) m.fvD = [](const Term& t) { return fv_set(t); };
  if (sig.count(Sym::fr))
    m.freshD = [](Var x, const Term& t) { return fresh(x, t); };
  m.supp_oracle = [](const Term& t) { return fv_set(t); };
  return m;
}

}  // namespace nomrec
