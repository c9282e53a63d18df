#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nomrec/perm.hpp"
#include "nomrec/var.hpp"

using namespace nomrec;

namespace {

Perm random_perm(std::mt19937_64& rng, int max_swaps = 6, int pool = 8) {
  std::uniform_int_distribution<int> nd(0, max_swaps);
  std::uniform_int_distribution<std::uint64_t> vd(0, pool - 1);
  Perm p;
  int n = nd(rng);
  for (int i = 0; i < n; ++i)
    p = Perm::compose(Perm::transposition(var(vd(rng)), var(vd(rng))), p);
  return p;
}

}  // namespace

TEST_CASE("fresh_var picks the least unused index") {
  CHECK(fresh_var(std::set<Var>{}) == var(0));
  CHECK(fresh_var({var(0), var(1), var(3)}) == var(2));
  CHECK(fresh_var({var(1), var(2)}) == var(0));
}

TEST_CASE("name table interns first seen first") {
  NameTable t;
  CHECK(t.intern("x") == var(0));
  CHECK(t.intern("y") == var(1));
  CHECK(t.intern("x") == var(0));
  CHECK(t.name_of(var(1)) == "y");
  CHECK(t.name_of(var(9)) == "v9");
  CHECK(!t.lookup("z").has_value());
}

TEST_CASE("transpositions and application") {
  Perm p = Perm::transposition(var(0), var(1));
  CHECK(p.apply(var(0)) == var(1));
  CHECK(p.apply(var(1)) == var(0));
  CHECK(p.apply(var(2)) == var(2));
  CHECK(Perm::transposition(var(3), var(3)).is_identity());
}

TEST_CASE("compose applies the right argument first") {
  // tau: 0<->1, sigma: 1<->2; sigma(tau(0)) = sigma(1) = 2.
  Perm tau = Perm::transposition(var(0), var(1));
  Perm sigma = Perm::transposition(var(1), var(2));
  Perm c = Perm::compose(sigma, tau);
  CHECK(c.apply(var(0)) == var(2));
  CHECK(c.apply(var(1)) == var(0));
  CHECK(c.apply(var(2)) == var(1));
}

TEST_CASE("from_mapping validates bijectivity") {
  CHECK(!Perm::from_mapping({{var(0), var(1)}}).has_value());
  CHECK(!Perm::from_mapping({{var(0), var(2)}, {var(1), var(2)}}).has_value());
  auto p = Perm::from_mapping({{var(0), var(1)}, {var(1), var(0)}, {var(5), var(5)}});
  REQUIRE(p.has_value());
  CHECK(*p == Perm::transposition(var(0), var(1)));
}

TEST_CASE("decompose on pinned examples") {
  // Derived by hand from the emission rule: cycles start at their least
  // element; a cycle (c0 c1 ... ck) emits [(c_{k-1}, c_k), ..., (c0, c1)].
  CHECK(Perm().decompose().empty());

  auto t = Perm::transposition(var(2), var(5)).decompose();
  REQUIRE(t.size() == 1);
  CHECK(t[0] == std::pair(var(2), var(5)));

  // Three-cycle v0 -> v1 -> v2 -> v0.
  auto cyc = Perm::from_mapping({{var(0), var(1)}, {var(1), var(2)}, {var(2), var(0)}});
  REQUIRE(cyc.has_value());
  auto d = cyc->decompose();
  REQUIRE(d.size() == 2);
  CHECK(d[0] == std::pair(var(1), var(2)));
  CHECK(d[1] == std::pair(var(0), var(1)));
  CHECK(Perm::from_transpositions_lr(d) == *cyc);
}

TEST_CASE("group laws and decompose round trip on random permutations") {
  std::mt19937_64 rng(20240817);
  for (int i = 0; i < 300; ++i) {
    Perm a = random_perm(rng), b = random_perm(rng), c = random_perm(rng);
    CHECK(Perm::compose(a, Perm::compose(b, c)) ==
          Perm::compose(Perm::compose(a, b), c));
    CHECK(Perm::compose(a, a.inverse()).is_identity());
    CHECK(Perm::compose(a.inverse(), a).is_identity());
    CHECK(Perm::compose(a, Perm()) == a);

    auto d = a.decompose();
    CHECK(d.size() <= a.support().size());
    CHECK(Perm::from_transpositions_lr(d) == a);

    auto sup = Perm::compose(a, b).support();
    for (Var v : sup) CHECK((a.support().count(v) || b.support().count(v)));
  }
}

TEST_CASE("both text forms parse to the same permutation") {
  NameTable names;
  auto p1 = Perm::parse("(x y)(y z)", names);
  auto p2 = Perm::parse("{x->y, y->z, z->x}", names);
  REQUIRE(p1.has_value());
  REQUIRE(p2.has_value());
  CHECK(*p1 == *p2);
  CHECK(p1->apply(names.intern("x")) == names.intern("y"));
  CHECK(p1->apply(names.intern("y")) == names.intern("z"));
  CHECK(p1->apply(names.intern("z")) == names.intern("x"));

  CHECK(!Perm::parse("{x->y}", names).has_value());
  CHECK(!Perm::parse("(x y", names).has_value());
  CHECK(Perm::parse("()", names).has_value());
}

TEST_CASE("text form round trips through parse") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    Perm a = random_perm(rng);
    NameTable names;
    auto back = Perm::parse(a.to_string(), names);
    REQUIRE(back.has_value());
    // The table maps v<i> names to fresh indices; compare via support images.
    CHECK(back->support().size() == a.support().size());
    auto cyc = Perm::parse(a.to_cycles(), names);
    if (a.is_identity()) {
      CHECK(cyc.has_value());
      CHECK(cyc->is_identity());
    } else {
      REQUIRE(cyc.has_value());
      CHECK(cyc->support().size() == a.support().size());
    }
  }
}

TEST_CASE("perm to_string is deterministic") {
  Perm p = Perm::from_transpositions_lr({{var(0), var(1)}, {var(1), var(2)}});
  // Left-to-right: v0 -> v1 -> v2, so p maps v0->v2? No: v0 goes through the
  // first transposition to v1, then the second sends v1 to v2.
  CHECK(p.apply(var(0)) == var(2));
  CHECK(p.to_string() == "{v0->v2, v1->v0, v2->v1}");
  CHECK(p.to_cycles() == "(v0 v2 v1)");
}

TEST_CASE("symbolic varsets stay canonical") {
  VarSet evens = VarSet::symbolic(2, 0);
  CHECK(evens.contains(var(0)));
  CHECK(evens.contains(var(100)));
  CHECK(!evens.contains(var(3)));

  VarSet s = evens;
  s.erase(var(4));
  CHECK(!s.contains(var(4)));
  CHECK(s.contains(var(2)));
  CHECK(s.contains(var(6)));
  // Canonical form restarts the family above the hole.
  CHECK(s.family_start() == 6);
  CHECK(s.extra_elems() == std::set<Var>{var(0), var(2)});

  VarSet rebuilt = VarSet::symbolic(2, 6);
  rebuilt.insert(var(0));
  rebuilt.insert(var(2));
  CHECK(rebuilt == s);

  s.insert(var(4));
  CHECK(s == evens);

  VarSet odd_tail = VarSet::symbolic(2, 7);
  odd_tail.insert(var(5));
  CHECK(odd_tail.family_start() == 5);  // absorbed downward
  CHECK(odd_tail.extra_elems().empty());
}

TEST_CASE("varset subset and union") {
  VarSet evens = VarSet::symbolic(2, 0);
  VarSet evens4 = VarSet::symbolic(2, 4);
  VarSet mult4 = VarSet::symbolic(4, 0);
  VarSet all = VarSet::all();

  CHECK(evens4.subset_of(evens));
  CHECK(!evens.subset_of(evens4));
  CHECK(mult4.subset_of(evens));
  CHECK(!evens.subset_of(mult4));
  CHECK(evens.subset_of(all));
  CHECK(VarSet::finite({var(0), var(8)}).subset_of(mult4));
  CHECK(!VarSet::finite({var(1)}).subset_of(mult4));
  CHECK(!all.subset_of(VarSet::finite({var(0)})));

  CHECK(VarSet::unite(evens, mult4) == evens);
  CHECK(VarSet::unite(evens4, VarSet::finite({var(0), var(2)})) == evens);
  CHECK(VarSet::unite(VarSet::symbolic(2, 1), all) == all);
  CHECK_THROWS_AS(VarSet::unite(VarSet::symbolic(4, 0), VarSet::symbolic(4, 1)),
                  std::logic_error);

  CHECK(fresh_var(VarSet::finite({var(0), var(1)})) == var(2));
  CHECK_THROWS_AS(fresh_var(evens), std::invalid_argument);
}
