#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "nomrec/enhanced.hpp"
#include "nomrec/gen.hpp"
#include "nomrec/model.hpp"
#include "nomrec/recursors.hpp"

using namespace nomrec;

namespace {

Term tparse(const std::string& s) {
  NameTable names;
  std::string err;
  auto t = parse_term(s, names, &err);
  REQUIRE_MESSAGE(t.has_value(), err);
  return *t;
}

// Node-count model over ints, swap-invariant with empty free-variable sets.
Model<int> size_model4() {
  Model<int> m;
  m.sig = sigma_of(4);
  m.eq = [](const int& a, const int& b) { return a == b; };
  m.sample = [](std::mt19937_64& rng) {
    return static_cast<int>(rng() % 40 + 1);
  };
  m.show = [](const int& v) { return std::to_string(v); };
  m.VrD = [](Var) { return 1; };
  m.ApD = [](const int& a, const int& b) { return a + b + 1; };
  m.LmD = [](Var, const int& b) { return b + 1; };
  m.swapD = [](const int& c, Var, Var) { return c; };
  m.fvD = [](const int&) { return VarSet::finite({}); };
  m.supp_oracle = [](const int&) { return VarSet::finite({}); };
  return m;
}

// Independent size oracle: plain recursion on the tree.
int size_oracle(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Vr:
      return 1;
    case Term::Kind::Ap:
      return size_oracle(t.ap_fn()) + size_oracle(t.ap_arg()) + 1;
    case Term::Kind::Lm:
      return size_oracle(t.lm_body()) + 1;
  }
  return 0;
}

// Prints the representative literally, binder names included; renaming does
// nothing. Breaks every renaming law, which checked mode should surface.
Model<std::string> literal_print_model() {
  Model<std::string> m;
  m.sig = sigma_of(9);
  m.eq = [](const std::string& a, const std::string& b) { return a == b; };
  m.sample = [](std::mt19937_64& rng) {
    return "s" + std::to_string(rng() % 100);
  };
  m.show = [](const std::string& s) { return s; };
  m.VrD = [](Var x) { return default_name(x); };
  m.ApD = [](const std::string& a, const std::string& b) {
    return "(" + a + " " + b + ")";
  };
  m.LmD = [](Var x, const std::string& b) {
    return "\\" + default_name(x) + "." + b;
  };
  m.renameD = [](const std::string& c, Var, Var) { return c; };
  m.freshD = [](Var, const std::string&) { return true; };
  m.supp_oracle = [](const std::string&) { return VarSet::finite({}); };
  return m;
}

// Diagonal lift of the term model for signature i: carrier Term, every op
// reads the carrier half of its pair, domain is alpha-agreement.
EnhancedModel<Term> diag_lift(int i) {
  using DP = EnhancedModel<Term>::DPair;
  EnhancedModel<Term> m;
  m.sig = sigma_of(i);
  m.X = VarSet::finite({});
  m.eq = [](const Term& a, const Term& b) { return alpha_eq(a, b); };
  m.sample_pair = [](std::mt19937_64& rng) {
    Term t = sample_term(rng, 6);
    return DP{t, t};
  };
  m.show = [](const Term& t) { return print_term(t); };
  m.domain = [](const Term& t, const Term& c) { return alpha_eq(t, c); };
  m.VrD = [](Var x) { return Term::Vr(x); };
  m.ApD = [](const DP& a, const DP& b) {
    return Term::Ap(a.second, b.second);
  };
  m.LmD = [](Var x, const DP& d) { return Term::Lm(x, d.second); };
  if (m.sig.count(Sym::pm))
    m.permD = [](const DP& d, const Perm& p) { return permute(d.second, p); };
  if (m.sig.count(Sym::sw))
    m.swapD = [](const DP& d, Var x, Var y) { return swap(d.second, x, y); };
  if (m.sig.count(Sym::sb))
    m.substD = [](const DP& d, const DP& s, Var z) {
      return subst(d.second, s.second, z);
    };
  if (m.sig.count(Sym::ren))
    m.renameD = [](const DP& d, Var x, Var y) {
      return rename(d.second, x, y);
    };
  if (m.sig.count(Sym::fv))
    m.fvD = [](const DP& d) { return fv_set(d.second); };
  if (m.sig.count(Sym::fr))
    m.freshD = [](Var x, const DP& d) { return fresh(x, d.second); };
  return m;
}

}  // namespace

TEST_CASE("rec on term models is the identity up to alpha") {
  for (int i = 1; i <= 9; ++i) {
    CAPTURE(i);
    Model<Term> m = term_model(i);
    Recursion<Term> r = rec(i, m);
    CHECK(r.source_id == i);
    Gen gen(500 + i);
    for (int k = 0; k < 150; ++k) {
      Term t = gen.pick_term();
      CHECK(alpha_eq(r.g(t), t));
    }
  }
}

TEST_CASE("rec rejects out-of-range ids and wrong signatures") {
  CHECK_THROWS_AS(rec(0, term_model(6)), std::out_of_range);
  CHECK_THROWS_AS(rec(10, term_model(6)), std::out_of_range);
  CHECK_THROWS_AS(rec6(term_model(1)), std::invalid_argument);
  CHECK_THROWS_AS(rec9(term_model(6)), std::invalid_argument);
  CHECK_THROWS_AS(rec(7, term_model(6)), std::invalid_argument);
  Model<Term> no_oracle = term_model(8);
  no_oracle.supp_oracle.reset();
  CHECK_THROWS_AS(rec(8, no_oracle), std::invalid_argument);
}

TEST_CASE("size model folds match the node-count oracle") {
  Model<int> m = size_model4();
  Recursion<int> r = rec(4, m);
  CHECK(r.g(tparse("x")) == 1);
  CHECK(r.g(tparse("\\x. x")) == 2);
  CHECK(r.g(tparse("x y")) == 3);
  CHECK(r.g(tparse("\\x. \\y. x y")) == 5);
  Gen gen(91);
  for (int k = 0; k < 200; ++k) {
    Term t = gen.pick_term();
    CHECK(r.g(t) == size_oracle(t));
  }
  PropReport rep = morphism_report(4, m, r, 200, 5);
  CHECK(rep.all_pass());
  std::vector<std::string> names;
  for (const auto& l : rep.lines) names.push_back(l.name);
  CHECK(names == std::vector<std::string>{"MorVr", "MorAp", "MorLm", "MorSw",
                                          "MorFv"});
}

TEST_CASE("checked mode flags binder-name-dependent models") {
  Model<std::string> lit = literal_print_model();
  Recursion<std::string> plain = rec9(lit);
  CHECK(plain.g(tparse("\\x. x")) == "\\v0.v0");  // parser interns x as v0

  Recursion<std::string> checked = rec9(lit, true);
  CHECK_THROWS_WITH_AS(checked.g(tparse("\\x. x")),
                       "alpha-instability on input: \\v0. v0",
                       std::runtime_error);

  // detection within a sampled budget: every abstraction-bearing term trips
  Gen gen(1234);
  int raised = 0;
  for (int k = 0; k < 500 && raised == 0; ++k) {
    Term t = gen.pick_term();
    try {
      checked.g(t);
    } catch (const std::runtime_error&) {
      ++raised;
    }
  }
  CHECK(raised > 0);
}

TEST_CASE("checked mode stays quiet on law-abiding models") {
  for (int i : {6, 9, 1, 7}) {
    CAPTURE(i);
    Recursion<Term> r = rec(i, term_model(i), true);
    Gen gen(77 + i);
    for (int k = 0; k < 100; ++k) {
      Term t = gen.pick_term();
      CHECK_NOTHROW(r.g(t));
    }
  }
}

TEST_CASE("morphism_report covers each signature clause on term models") {
  std::map<int, std::vector<std::string>> expected = {
      {1, {"MorVr", "MorAp", "MorLm", "MorPm", "MorFv"}},
      {2, {"MorVr", "MorAp", "MorLm", "MorPm", "MorFv"}},
      {3, {"MorVr", "MorAp", "MorLm", "MorSw", "MorFv"}},
      {4, {"MorVr", "MorAp", "MorLm", "MorSw", "MorFv"}},
      {5, {"MorVr", "MorAp", "MorLm", "MorSw", "MorFr"}},
      {6, {"MorVr", "MorAp", "MorLm", "MorSw", "MorFr"}},
      {7, {"MorVr", "MorAp", "MorLm", "MorSb", "MorFr"}},
      {8, {"MorVr", "MorAp", "MorLm", "MorRen"}},
      {9, {"MorVr", "MorAp", "MorLm", "MorRen", "MorFr"}},
  };
  for (int i = 1; i <= 9; ++i) {
    CAPTURE(i);
    Model<Term> m = term_model(i);
    Recursion<Term> r = rec(i, m);
    PropReport rep = morphism_report(i, m, r, 150, 11);
    CHECK(rep.all_pass());
    std::vector<std::string> names;
    for (const auto& l : rep.lines) names.push_back(l.name);
    CHECK(names == expected[i]);
    PropReport rep2 = morphism_report(i, m, r, 150, 11);
    CHECK(rep.to_string() == rep2.to_string());
  }
}

TEST_CASE("morphism_report fails honestly on a non-morphism") {
  Model<Term> m = term_model(6);
  Recursion<Term> r = rec6(m);
  Recursion<Term> twisted = r;
  // carrier automorphism breaks the Vr clause but keeps Ap commutation
  twisted.g = [r](const Term& t) { return swap(r.g(t), var(0), var(1)); };
  PropReport rep = morphism_report(6, m, twisted, 100, 3);
  CHECK_FALSE(rep.all_pass());
  const PropLine* vr = rep.find("MorVr");
  REQUIRE(vr != nullptr);
  CHECK_FALSE(vr->pass);
  CHECK(vr->cex.find("MorVr(") == 0);
}

TEST_CASE("uniqueness_check: agreement and a negative control") {
  Model<Term> m = term_model(6);
  Recursion<Term> r = rec6(m);
  std::function<Term(const Term&)> g1 = r.g;
  // same model, different representative-refresh schedule
  std::function<Term(const Term&)> g2 = [r](const Term& t) {
    return r.g(refresh_binders(t));
  };
  PropReport agree = uniqueness_check(6, m, g1, g2, 200, 9);
  REQUIRE(agree.lines.size() == 1);
  CHECK(agree.lines[0].name == "SampledAgreement");
  CHECK(agree.all_pass());

  std::function<Term(const Term&)> g3 = [r](const Term& t) {
    return swap(r.g(t), var(0), var(1));
  };
  PropReport differ = uniqueness_check(6, m, g1, g3, 200, 9);
  CHECK_FALSE(differ.all_pass());
  CHECK(differ.lines[0].cex.find("SampledAgreement(t=") == 0);
}

TEST_CASE("rec builds are reproducible") {
  Model<int> m = size_model4();
  Recursion<int> a = rec(4, m);
  Recursion<int> b = rec(4, m);
  Gen gen(2024);
  for (int k = 0; k < 100; ++k) {
    Term t = gen.pick_term();
    CHECK(a.g(t) == b.g(t));
  }
}

TEST_CASE("rec_enhanced with empty X degenerates to the stripped fold") {
  using DP = EnhancedModel<int>::DPair;
  EnhancedModel<int> em;
  em.sig = sigma_of(4);
  em.X = VarSet::finite({});
  em.eq = [](const int& a, const int& b) { return a == b; };
  em.sample_pair = [](std::mt19937_64& rng) {
    Term t = sample_term(rng, 6);
    return DP{t, size_oracle(t)};
  };
  em.show = [](const int& v) { return std::to_string(v); };
  em.VrD = [](Var) { return 1; };
  em.ApD = [](const DP& a, const DP& b) { return a.second + b.second + 1; };
  em.LmD = [](Var, const DP& d) { return d.second + 1; };
  em.swapD = [](const DP& d, Var, Var) { return d.second; };
  em.fvD = [](const DP&) { return VarSet::finite({}); };

  Recursion<int> er = rec_enhanced(4, em);
  Recursion<int> sr = rec(4, size_model4());
  Gen gen(31);
  for (int k = 0; k < 200; ++k) {
    Term t = gen.pick_term();
    CHECK(er.g(t) == sr.g(t));
  }
}

TEST_CASE("rec_enhanced refreshes binders away from X") {
  EnhancedModel<Term> em = diag_lift(6);
  em.X = VarSet::finite({var(0), var(1)});
  Recursion<Term> r = rec_enhanced(6, em);
  Term in = tparse("\\x. \\y. x y");  // binders intern as v0, v1
  Term out = r.g(in);
  CHECK(alpha_eq(out, in));
  REQUIRE(out.kind() == Term::Kind::Lm);
  CHECK_FALSE(em.X.contains(out.lm_binder()));
  REQUIRE(out.lm_body().kind() == Term::Kind::Lm);
  CHECK_FALSE(em.X.contains(out.lm_body().lm_binder()));
}

TEST_CASE("rec_enhanced checked mode still detects alpha-instability") {
  using DP = EnhancedModel<std::string>::DPair;
  EnhancedModel<std::string> em;
  em.sig = sigma_of(9);
  em.X = VarSet::finite({});
  em.eq = [](const std::string& a, const std::string& b) { return a == b; };
  em.sample_pair = [](std::mt19937_64& rng) {
    Term t = sample_term(rng, 6);
    return DP{t, "s" + std::to_string(rng() % 10)};
  };
  em.show = [](const std::string& s) { return s; };
  em.VrD = [](Var x) { return default_name(x); };
  em.ApD = [](const DP& a, const DP& b) {
    return "(" + a.second + " " + b.second + ")";
  };
  em.LmD = [](Var x, const DP& d) {
    return "\\" + default_name(x) + "." + d.second;
  };
  em.renameD = [](const DP& d, Var, Var) { return d.second; };
  em.freshD = [](Var, const DP&) { return true; };
  Recursion<std::string> r = rec_enhanced(9, em, true);
  CHECK_THROWS_AS(r.g(tparse("\\x. x")), std::runtime_error);
}

TEST_CASE("enhanced diagonal lift passes every suite") {
  CheckConfig cfg;
  cfg.n = 200;
  for (int i = 1; i <= 9; ++i) {
    CAPTURE(i);
    cfg.seed = 33 + i;
    EnhancedModel<Term> em = diag_lift(i);
    PropReport rep = check_enhanced_props(em, i, cfg);
    REQUIRE(!rep.lines.empty());
    CHECK(rep.lines[0].name == "DomainClosed");
    for (const auto& l : rep.lines) {
      CAPTURE(l.name);
      CHECK(l.pass);
      if (l.name != "DomainClosed" && l.name != "FCB") CHECK(l.hits >= 20);
    }
  }
}

TEST_CASE("check_enhanced_props is deterministic") {
  CheckConfig cfg;
  cfg.n = 120;
  cfg.seed = 5;
  EnhancedModel<Term> em = diag_lift(1);
  std::string a = check_enhanced_props(em, 1, cfg).to_string();
  std::string b = check_enhanced_props(em, 1, cfg).to_string();
  CHECK(a == b);
  CHECK(a.find("PROP FCB PASS") != std::string::npos);
  CHECK(a.find("heuristic") != std::string::npos);
}

TEST_CASE("check_enhanced_props rejects missing ops and infinite X") {
  EnhancedModel<Term> em = diag_lift(6);
  em.X = VarSet::all();
  CheckConfig cfg;
  CHECK_THROWS_AS(check_enhanced_props(em, 6, cfg), std::invalid_argument);
  EnhancedModel<Term> em2 = diag_lift(6);
  em2.swapD = nullptr;
  CHECK_THROWS_AS(check_enhanced_props(em2, 6, cfg), std::invalid_argument);
  EnhancedModel<Term> em3 = diag_lift(8);
  CHECK_THROWS_AS(check_enhanced_props(em3, props_of(7), cfg),
                  std::invalid_argument);
}

TEST_CASE("enhanced domain violations surface in the DomainClosed line") {
  EnhancedModel<Term> em = diag_lift(6);
  // domain that rejects abstractions: LmD output leaves it
  em.domain = [](const Term& t, const Term& c) {
    return alpha_eq(t, c) && t.kind() != Term::Kind::Lm;
  };
  CheckConfig cfg;
  cfg.n = 150;
  PropReport rep = check_enhanced_props(em, std::vector<std::string>{}, cfg);
  REQUIRE(rep.lines.size() == 1);
  CHECK(rep.lines[0].name == "DomainClosed");
  CHECK_FALSE(rep.lines[0].pass);
  CHECK(rep.lines[0].cex.find("DomainClosed(") == 0);
}
