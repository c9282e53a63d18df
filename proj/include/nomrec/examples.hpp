#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nomrec/enhanced.hpp"
#include "nomrec/model.hpp"
#include "nomrec/term.hpp"

namespace nomrec {

// ---------------------------------------------------------------------------
// Extended terms: the lambda grammar plus constant leaves. Represented over
// Term with constants encoded as reserved high-index variables, so the whole
// alpha/substitution machinery is inherited. Constants are closed: they never
// bind, are never substituted for, and do not count as free variables.

struct Const {
  std::uint64_t id = 0;
};

Const const_ap();  // id 0
Const const_lm();  // id 1
std::string const_name(Const c);

class ExtTerm {
 public:
  static constexpr std::uint64_t kConstBase = 1ull << 40;

  enum class Kind { Vr, Ap, Lm, Ct };

  Kind kind() const;
  Var vr_var() const;
  Const ct_const() const;
  ExtTerm ap_fn() const;
  ExtTerm ap_arg() const;
  Var lm_binder() const;
  ExtTerm lm_body() const;

  const Term& rep() const { return rep_; }
  static ExtTerm from_rep(Term t) { return ExtTerm(std::move(t)); }

 private:
  explicit ExtTerm(Term t) : rep_(std::move(t)) {}
  Term rep_ = Term::Vr(var(0));

  friend ExtTerm EVr(Var x);
  friend ExtTerm ECt(Const c);
  friend ExtTerm EAp(const ExtTerm& fn, const ExtTerm& arg);
  friend ExtTerm ELm(Var x, const ExtTerm& body);
};

ExtTerm EVr(Var x);  // throws if x lies in the reserved constant range
ExtTerm ECt(Const c);
ExtTerm EAp(const ExtTerm& fn, const ExtTerm& arg);
ExtTerm ELm(Var x, const ExtTerm& body);

bool ealpha_eq(const ExtTerm& a, const ExtTerm& b);
ExtTerm esubst(const ExtTerm& e, const ExtTerm& img, Var y);
ExtTerm eswap(const ExtTerm& e, Var x, Var y);
std::set<Var> efv(const ExtTerm& e);
bool efresh(Var x, const ExtTerm& e);
std::string print_ext(const ExtTerm& e, const NameTable* names = nullptr);
ExtTerm sample_ext(std::mt19937_64& rng, int pool = 5, int max_size = 12);

// ---------------------------------------------------------------------------
// Semantic interpretation. The domain is Z5 with a fixed application
// operation and an abstraction operation that evaluates at 0; environments
// map variables to domain values. An interpretation carries the function
// together with a declared finite superset of the variables it may read.

constexpr int kSemMod = 5;
int sem_ap(int a, int b);                        // (2a + 3b + ab) mod 5
int sem_lm(const std::function<int(int)>& f);    // f(0)

using SemEnv = std::function<int(Var)>;
SemEnv sem_env(std::uint64_t seed);  // one of the pinned base environments
SemEnv sem_env_upd(const SemEnv& xi, Var x, int d);

struct Interp {
  std::function<int(const SemEnv&)> fn;
  VarSet hint;  // finite superset of the variables fn may depend on
};

// Sampled pointwise equality over the pinned environment family: the 8 base
// environments, then every hint variable of either side updated to each
// domain value over the same bases. Approximate by construction.
bool interp_eq(const Interp& a, const Interp& b);

// Probed dependence: does fn change when x is reassigned, over the same
// pinned policy that interp_eq uses? The fv notion of the witness submodel.
bool interp_depends(const Interp& i, Var x);

// ---------------------------------------------------------------------------
// Example models. Each is checked against its designated law suite before
// the corresponding operation is first used (see examples_self_test).

using NoccsMap = std::map<Var, unsigned>;  // zero-free: absent means 0

Model<NoccsMap> noccs_model();                 // swap/fresh signature
Model<unsigned> size_model();                  // swap/fv signature
EnhancedModel<bool> enf_model();               // swap/fv signature, X = {}
Model<ExtTerm> hoas_model();                   // subst/fresh signature
Model<Interp> sem_model();                     // perm/fv signature
Model<std::pair<Term, Interp>> pitts_submodel(const Model<Interp>& base);
EnhancedModel<Term> subst_model(const Term& s, Var y);  // X = FV s + {y}

// ---------------------------------------------------------------------------
// The example operations.

unsigned noccs(const Term& t, Var x);
NoccsMap noccs_all(const Term& t);
unsigned size_of(const Term& t);
bool enf(const Term& t);
ExtTerm hoas_encode(const Term& t);
int sem(const Term& t, const SemEnv& xi);         // flat interpretation model
int sem_via_r1(const Term& t, const SemEnv& xi);  // witness-submodel route
VarSet sem_deps(const Term& t);                   // probed dependence set
Term subst_via_r1(const Term& t, const Term& s, Var y);

// ---------------------------------------------------------------------------
// Self-test: every example model against its designated suite at the given
// config. The operations above run the same battery once per process at a
// pinned config (seed 1, n 300; the parametric substitution model at a
// pinned instance plus two seeded sampled instances) and throw if any line
// fails.

struct ExampleCheck {
  std::string model;
  PropReport report;
};

std::vector<ExampleCheck> examples_self_test(const CheckConfig& cfg);

}  // namespace nomrec
