#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "nomrec/comodel.hpp"
#include "nomrec/coterm.hpp"
#include "nomrec/gen.hpp"
#include "nomrec/term.hpp"

using namespace nomrec;

namespace {

CheckConfig quick_cfg() {
  CheckConfig cfg;
  cfg.n = 150;
  cfg.min_hits = 8;
  return cfg;
}

void require_all(const PropReport& rep) {
  INFO(rep.to_string());
  CHECK(rep.all_pass());
}

// s = L x (A s (V x))
CoTerm eta_spine(Var x) {
  return CoTerm::from_table({CoL{x, 1}, CoA{2, 0}, CoV{x}}, 0);
}

// The same spine over an opaque integer carrier. Only the destructor is
// meaningful; the operator fields are inert placeholders, which is the point:
// the kernel must not consult them.
CoModel<int> eta_spine_comodel(Var x) {
  CoModel<int> m;
  m.sig = {Sym::pm, Sym::fv};
  m.finite_states = true;
  m.eq = [](int a, int b) { return a == b; };
  m.sample = [](std::mt19937_64& rng) {
    return static_cast<int>(rng() % 3);
  };
  m.show = [](int s) { return std::to_string(s); };
  m.key = [](int s) { return std::to_string(s); };
  m.permD = [](int s, const Perm&) { return s; };
  m.fvD = [](int) { return VarSet::finite({}); };
  m.dest = [x](int s) -> Obs<int> {
    if (s == 0) return ObsL<int>{x, 1, nullptr};
    if (s == 1) return ObsA<int>{2, 0};
    return ObsV<int>{x};
  };
  return m;
}

const std::function<CoTerm(const CoTerm&)> idg = [](const CoTerm& t) {
  return t;
};

}  // namespace

TEST_CASE("signatures and suites are pinned") {
  CHECK(co_sigma_of(2) == Signature{Sym::pm, Sym::fv});
  CHECK(co_sigma_of(3) == Signature{Sym::sw, Sym::fv});
  CHECK(co_sigma_of(6) == Signature{Sym::sw, Sym::fr});
  CHECK(co_sigma_of(7) == Signature{Sym::vr, Sym::sb, Sym::fr});
  CHECK(co_sigma_of(8) == Signature{Sym::ren});

  std::vector<std::string> five = {"SwVrInf", "SwApInf",  "SwLmInf", "SwId",
                                   "SwIv",    "SwCp",     "SwFr",    "SwBvrInf",
                                   "FrVrInf", "FrApInf", "FrLmInf"};
  CHECK(coprops_of(5) == five);
  std::vector<std::string> eight = {"RnVrInf",  "RnApInf",   "RnLm1Inf",
                                    "RnId",     "RnIm",      "RnCh",
                                    "RnCm",     "FrDRnInf",  "RnBvrInf",
                                    "RnBvrPInf", "FSupFrInf", "FrRn2"};
  CHECK(coprops_of(8) == eight);

  CHECK_THROWS_AS(co_sigma_of(4), std::invalid_argument);
  CHECK_THROWS_AS(coprops_of(4), std::invalid_argument);
  CHECK_THROWS_AS(coprops_of(0), std::out_of_range);
  CHECK_THROWS_AS(coprops_of(10), std::out_of_range);
}

TEST_CASE("regular coterms satisfy every suite") {
  CheckConfig cfg = quick_cfg();
  for (int i : {1, 2, 3, 5, 6, 7, 8, 9}) {
    CAPTURE(i);
    require_all(check_coprops(coterm_comodel(i), i, cfg));
  }
}

TEST_CASE("operator derivations preserve the target suites") {
  CheckConfig cfg = quick_cfg();
  require_all(check_coprops(co_swap_from_perm(coterm_comodel(2)), 3, cfg));
  require_all(check_coprops(co_perm_from_swap(coterm_comodel(3)), 2, cfg));
  require_all(check_coprops(co_fresh_from_fv(coterm_comodel(3)), 5, cfg));
  require_all(check_coprops(co_fv_from_fresh(coterm_comodel(5)), 3, cfg));
  require_all(check_coprops(co_swap_from_rename(coterm_comodel(9)), 5, cfg));
  require_all(check_coprops(co_fresh_from_rename(coterm_comodel(8)), 9, cfg));
  require_all(check_coprops(co_rename_from_subst(coterm_comodel(7)), 9, cfg));
}

TEST_CASE("corecursion is the identity on the regular fragment") {
  std::mt19937_64 rng(11);
  auto sample = coterm_comodel(1).sample;
  for (int i : {1, 2, 3, 5, 6, 7, 8, 9}) {
    CAPTURE(i);
    auto R = corec(i, coterm_comodel(i));
    CHECK(R.source_id == i);
    for (int k = 0; k < 25; ++k) {
      CoTerm t = sample(rng);
      CoTerm out = R.g(t);
      CHECK(out.regular());
      INFO(truncate(t, 5));
      CHECK(co_alpha_eq(out, t));
    }
  }
}

TEST_CASE("chain variants agree") {
  std::mt19937_64 rng(12);
  auto M1 = coterm_comodel(1);
  auto g1 = corec(1, M1);
  auto g3 = corec(3, co_swap_from_perm(M1));
  auto M8 = coterm_comodel(8);
  auto g8 = corec(8, M8);
  auto g9 = corec(9, co_fresh_from_rename(M8));
  for (int k = 0; k < 15; ++k) {
    CoTerm t = M1.sample(rng);
    CHECK(co_alpha_eq(g1.g(t), g3.g(t)));
    CHECK(co_alpha_eq(g8.g(t), g9.g(t)));
  }
}

TEST_CASE("kernel reads only the destructor") {
  Var x = var(0);
  auto M = eta_spine_comodel(x);
  auto R = corec2(M);
  CoTerm out = R.g(0);
  CHECK(out.regular());
  CHECK(co_alpha_eq(out, eta_spine(x)));
  // interning collapses the three states to three, not an unrolled tree
  CHECK(out.reachable().size() == 3);
}

TEST_CASE("parallel substitution arises as corecursion") {
  CheckConfig cfg = quick_cfg();
  auto M = psubst_comodel();
  require_all(check_coprops(M, 5, cfg));

  auto R = corec(5, M);
  std::mt19937_64 rng(17);
  for (int k = 0; k < 60; ++k) {
    PsItem a = M.sample(rng);
    CoTerm lhs = R.g(a);
    CHECK(lhs.regular());
    CoTerm rhs = psubst(a.t, a.rho);
    INFO(M.show(a));
    CHECK(co_alpha_eq(lhs, rhs));
  }

  // without the finite-closure declaration the result is lazy but unfolds
  // the same way
  auto lazyM = M;
  lazyM.finite_states = false;
  auto lazyR = corec(5, lazyM);
  for (int k = 0; k < 10; ++k) {
    PsItem a = M.sample(rng);
    CoTerm lhs = lazyR.g(a);
    CHECK_FALSE(lhs.regular());
    CHECK(co_alpha_eq_upto(lhs, psubst(a.t, a.rho), 20));
  }
}

TEST_CASE("full corecursion handles exits") {
  auto E = psubst_exit_comodel();
  auto F = full_corec5(E);
  std::mt19937_64 rng(23);
  for (int k = 0; k < 50; ++k) {
    PsItem a = E.sample(rng);
    INFO(E.show(a));
    CHECK(co_alpha_eq(F.g(a), psubst(a.t, a.rho)));
  }

  // exit-free comodels unfold exactly as under the plain corecursor
  auto M = psubst_comodel();
  auto F2 = full_corec5(M);
  auto R = corec(5, M);
  for (int k = 0; k < 30; ++k) {
    PsItem a = M.sample(rng);
    CHECK(co_alpha_eq(F2.g(a), R.g(a)));
  }

  // a comodel that always exits is the constant interpretation
  CoTerm K = CoTerm::from_table({CoL{var(2), 0}}, 0);
  CoModel<int> X;
  X.sig = {Sym::sw, Sym::fr};
  X.finite_states = true;
  X.eq = [](int a, int b) { return a == b; };
  X.sample = [](std::mt19937_64& r) { return static_cast<int>(r() % 5); };
  X.show = [](int s) { return std::to_string(s); };
  X.key = [](int s) { return std::to_string(s); };
  X.swapD = [](int s, Var, Var) { return s; };
  X.freshD = [](Var, int) { return true; };
  X.dest = [K](int) -> Obs<int> { return ObsX<int>{K}; };
  auto FX = full_corec5(X);
  CHECK(co_alpha_eq(FX.g(3), K));
  CHECK(co_alpha_eq(FX.g(0), K));
}

TEST_CASE("corecursion rejects bad ids and signatures") {
  CHECK_THROWS_AS(corec(4, coterm_comodel(5)), std::invalid_argument);
  CHECK_THROWS_AS(corec(0, coterm_comodel(5)), std::out_of_range);
  CHECK_THROWS_AS(corec2(coterm_comodel(5)), std::invalid_argument);
  CHECK_THROWS_AS(full_corec5(coterm_comodel(2)), std::invalid_argument);
}

TEST_CASE("comorphism reports certify interpretations") {
  CheckConfig cfg = quick_cfg();
  require_all(comorphism_report(5, coterm_comodel(5), idg, cfg));
  require_all(comorphism_report(2, coterm_comodel(2), idg, cfg));
  require_all(comorphism_report(7, coterm_comodel(7), idg, cfg));

  auto M = psubst_comodel();
  std::function<CoTerm(const PsItem&)> g = [](const PsItem& a) {
    return psubst(a.t, a.rho);
  };
  require_all(comorphism_report(5, M, g, cfg));

  // an interpretation passing the clauses agrees with the canonical one
  auto R = corec(5, M);
  std::mt19937_64 rng(29);
  for (int k = 0; k < 40; ++k) {
    PsItem a = M.sample(rng);
    CHECK(co_alpha_eq(g(a), R.g(a)));
  }
}

TEST_CASE("broken swap comodel is caught") {
  CheckConfig cfg = quick_cfg();
  auto B = broken_swap_comodel();

  PropReport suite = check_coprops(B, std::vector<std::string>{"SwLmInf"}, cfg);
  INFO(suite.to_string());
  CHECK_FALSE(suite.all_pass());
  REQUIRE(suite.find("SwLmInf") != nullptr);
  CHECK_FALSE(suite.find("SwLmInf")->pass);
  CHECK_FALSE(suite.find("SwLmInf")->cex.empty());

  PropReport rep = comorphism_report(5, B, idg, cfg);
  INFO(rep.to_string());
  CHECK_FALSE(rep.all_pass());
  REQUIRE(rep.find("MorLm") != nullptr);
  CHECK_FALSE(rep.find("MorLm")->pass);
  CHECK_FALSE(rep.find("MorLm")->cex.empty());
}

TEST_CASE("missing oracles and operators are reported") {
  auto M8 = coterm_comodel(8);
  M8.supp_oracle.reset();
  CHECK_THROWS_AS(co_swap_from_rename(M8), std::invalid_argument);
  CHECK_THROWS_AS(co_fresh_from_rename(M8), std::invalid_argument);

  auto M1 = coterm_comodel(1);
  M1.supp_oracle.reset();
  CHECK_THROWS_AS(
      check_coprops(M1, std::vector<std::string>{"FvDPmInf"}, quick_cfg()),
      std::invalid_argument);

  auto M7 = coterm_comodel(7);
  M7.VrD = nullptr;
  CHECK_THROWS_AS(check_coprops(M7, 7, quick_cfg()), std::invalid_argument);

  CHECK_THROWS_AS(co_swap_from_perm(coterm_comodel(5)), std::invalid_argument);
  CHECK_THROWS_AS(co_rename_from_subst(coterm_comodel(5)),
                  std::invalid_argument);
}

TEST_CASE("sum comodel keys stay separated") {
  // the full-corecursion pairing must never confuse a carrier state with a
  // coterm exit, even when their printed keys collide
  auto E = psubst_exit_comodel();
  std::mt19937_64 rng(31);
  PsItem a = E.sample(rng);
  CHECK(E.key(a) == E.key(a));
  PsItem b = E.sample(rng);
  if (!E.eq(a, b)) CHECK(E.key(a) != E.key(b));
}
