#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "orbitforge/liering.hpp"

#include <set>

using namespace orbitforge;

namespace {

LieRing heisenberg(long p, long e) {
  // carrier Z/p^e (+) Z/p^e (+) Z/p^e, [g1,g2] = g3 central
  AbelianGroup a{p, {e, e, e}};
  return lie_ring(a, {{0, 1, {0, 0, 1}}});
}

LieRing ut4(long p) {
  // strictly upper triangular 4x4, basis e12 e13 e14 e23 e24 e34
  AbelianGroup a{p, {1, 1, 1, 1, 1, 1}};
  return lie_ring(a, {
                         {0, 3, {0, 1, 0, 0, 0, 0}},                  // [e12,e23]=e13
                         {0, 4, {0, 0, 1, 0, 0, 0}},                  // [e12,e24]=e14
                         {1, 5, {0, 0, 1, 0, 0, 0}},                  // [e13,e34]=e14
                         {3, 5, {0, 0, 0, 0, 1, 0}},                  // [e23,e34]=e24
                     });
}

} // namespace

TEST_CASE("validation: abelian, Heisenberg, UT4") {
  AbelianGroup a{3, {2, 1}};
  LieRing ab = lie_ring(a, {});
  LieReport r = validate(ab);
  CHECK(r.ok);
  CHECK(r.cls == 1);

  LieRing h = heisenberg(3, 1);
  r = validate(h);
  CHECK(r.ok);
  CHECK(r.cls == 2);

  LieRing u = ut4(5);
  r = validate(u);
  CHECK(r.ok);
  CHECK(r.cls == 3);
  auto series = lower_central_series(u);
  std::vector<long> lens;
  for (const auto& s : series) {
    ZZ sz = s.size();
    long l = 0;
    while (sz > 1) {
      sz /= 5;
      ++l;
    }
    lens.push_back(l);
  }
  CHECK(lens == std::vector<long>{6, 3, 1, 0});
}

TEST_CASE("validation rejects broken axioms with witnesses") {
  AbelianGroup a{3, {1, 1, 1}};
  // non-alternating: [g1,g2]=g3 but [g2,g1]=g3 too
  LieRing bad = lie_ring(a, {{0, 1, {0, 0, 1}}});
  bad.table[1][0] = {0, 0, 1};
  LieReport r = validate(bad);
  CHECK_FALSE(r.ok);
  REQUIRE_FALSE(r.errors.empty());
  CHECK(r.errors.front().find("skew") != std::string::npos);

  // bi-additivity: order-3 generator bracketing to an order-9 value
  AbelianGroup b{3, {2, 1, 1}};
  LieRing bad2 = lie_ring(b, {{1, 2, {1, 0, 0}}});
  r = validate(bad2);
  CHECK_FALSE(r.ok);
  CHECK(r.errors.front().find("bi-additive") != std::string::npos);

  // Jacobi: [g1,g2]=g3, [g1,g3]=g4, [g2,g3]=0, [g1,g4]=0 but [g2,g4]=g4
  AbelianGroup c{5, {1, 1, 1, 1}};
  LieRing bad3 = lie_ring(c, {{0, 1, {0, 0, 1, 0}},
                              {0, 2, {0, 0, 0, 1}},
                              {1, 3, {0, 0, 0, 1}}});
  r = validate(bad3);
  CHECK_FALSE(r.ok);
  CHECK(r.errors.front().find("Jacobi") != std::string::npos);

  // class p: free nilpotent-ish ring of class 3 at p = 3 must be rejected
  AbelianGroup d{3, {1, 1, 1, 1}};
  LieRing deep = lie_ring(d, {{0, 1, {0, 0, 1, 0}}, {0, 2, {0, 0, 0, 1}}});
  r = validate(deep);
  CHECK_FALSE(r.ok);
  CHECK(r.errors.front().find("class") != std::string::npos);
}

TEST_CASE("bch: class-2 closed form and inverses") {
  LieRing h = heisenberg(3, 2); // carrier (Z/9)^3, p = 3, class 2
  REQUIRE(validate(h).ok);
  // x*y = x + y + [x,y]/2, /2 = multiplication by (9+1)/2 = 5 on the center
  auto ref = [&](const Elt& x, const Elt& y) {
    Elt s = elt_add(h.carrier, x, y);
    return elt_add(h.carrier, s, elt_scale(h.carrier, 5, lie_bracket(h, x, y)));
  };
  std::vector<Elt> sample = {{1, 0, 0}, {0, 1, 0}, {2, 5, 1}, {7, 3, 8}, {4, 4, 4}};
  for (const auto& x : sample)
    for (const auto& y : sample) {
      CHECK(bch_multiply(h, x, y) == ref(x, y));
      CHECK(elt_is_zero(bch_multiply(h, x, grp_inverse(h, x))));
    }
}

TEST_CASE("bch is associative on UT4(F5) samples and exhaustive on Heisenberg(3)") {
  LieRing h = heisenberg(3, 1);
  REQUIRE(validate(h).ok);
  auto elts = all_elements(h.carrier);
  for (const auto& x : elts)
    for (const auto& y : elts)
      for (const auto& z : elts) {
        Elt l = bch_multiply(h, bch_multiply(h, x, y), z);
        Elt r = bch_multiply(h, x, bch_multiply(h, y, z));
        REQUIRE(l == r);
      }

  LieRing u = ut4(5);
  REQUIRE(validate(u).ok);
  // deterministic LCG sample of triples
  unsigned long st = 12345;
  auto nxt = [&]() { return st = st * 6364136223846793005ULL + 1442695040888963407ULL; };
  for (int t = 0; t < 60; ++t) {
    Elt x(6), y(6), z(6);
    for (long i = 0; i < 6; ++i) {
      x[i] = nxt() % 5;
      y[i] = nxt() % 5;
      z[i] = nxt() % 5;
    }
    Elt l = bch_multiply(u, bch_multiply(u, x, y), z);
    Elt r = bch_multiply(u, x, bch_multiply(u, y, z));
    REQUIRE(l == r);
    REQUIRE(elt_is_zero(bch_multiply(u, x, grp_inverse(u, x))));
  }
}

TEST_CASE("group ops: commutators, powers, conjugation") {
  LieRing h = heisenberg(3, 1);
  REQUIRE(validate(h).ok);
  // (a,0)(b,0)(a,0)^{-1}(b,0)^{-1} = (0, omega(a,b)) with omega((a1,a2),(b1,b2))
  // = a1 b2 - a2 b1 landing in the center
  for (long a1 = 0; a1 < 3; ++a1)
    for (long a2 = 0; a2 < 3; ++a2)
      for (long b1 = 0; b1 < 3; ++b1)
        for (long b2 = 0; b2 < 3; ++b2) {
          Elt x = {a1, a2, 0}, y = {b1, b2, 0};
          Elt comm = bch_multiply(h, bch_multiply(h, x, y),
                                  bch_multiply(h, grp_inverse(h, x), grp_inverse(h, y)));
          long om = ((a1 * b2 - a2 * b1) % 3 + 3) % 3;
          CHECK(comm == Elt{0, 0, om});
        }

  // x^n = n x (one-parameter subgroup) and x^{order} = identity
  LieRing u = ut4(5);
  REQUIRE(validate(u).ok);
  Elt x = {1, 2, 0, 3, 0, 4};
  for (long n = -7; n <= 7; ++n)
    CHECK(grp_pow(u, x, n) == elt_scale(u.carrier, n, x));
  CHECK(elt_is_zero(grp_pow(u, x, 5)));

  // conjugation by the identity is the identity map
  for (const auto& e : {Elt{1, 0, 0, 0, 0, 0}, Elt{0, 1, 2, 3, 4, 0}})
    CHECK(grp_conj(u, elt_zero(u.carrier), e) == e);
}

TEST_CASE("subgroups closed under bracket are closed under the group law") {
  LieRing u = ut4(5);
  REQUIRE(validate(u).ok);
  auto closed_bracket = [&](const Subgroup& s) {
    for (const auto& a : sg_generators(s))
      for (const auto& b : sg_generators(s))
        if (!s.contains(lie_bracket(u, a, b)))
          return false;
    return true;
  };
  auto closed_mult = [&](const Subgroup& s) {
    for (const auto& a : sg_elements(s))
      for (const auto& b : sg_elements(s))
        if (!s.contains(bch_multiply(u, a, b)))
          return false;
    return true;
  };
  std::vector<std::vector<Elt>> gensets = {
      {{1, 0, 0, 0, 0, 0}},                          // <e12>, abelian
      {{1, 0, 0, 0, 0, 0}, {0, 0, 0, 1, 0, 0}},      // <e12,e23>: not closed
      {{1, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0}}, // closed
      {{0, 1, 0, 0, 0, 0}, {0, 0, 0, 0, 1, 0}, {0, 0, 1, 0, 0, 0}}, // abelian ideal
      {{1, 0, 0, 0, 0, 0}, {0, 0, 0, 1, 0, 0}, {0, 1, 0, 0, 0, 0}}, // not closed
  };
  for (const auto& g : gensets) {
    Subgroup s = subgroup_from_generators(u.carrier, g);
    bool cb = closed_bracket(s);
    // a bracket-closed subgroup is a subring, hence BCH-closed, and vice versa
    if (s.size() <= 125)
      CHECK(cb == closed_mult(s));
  }
}

TEST_CASE("coadjoint orbits: sizes, disjointness, canonical representative") {
  AbelianGroup a{3, {2, 1}};
  LieRing ab = lie_ring(a, {});
  REQUIRE(validate(ab).ok);
  GroupCharacter f{a, {4, 2}};
  CoadjointOrbit o = coadjoint_orbit(ab, f);
  CHECK(o.size() == 1);
  CHECK(o.rep() == std::vector<long>{4, 2});

  LieRing h = heisenberg(3, 1);
  REQUIRE(validate(h).ok);
  GroupCharacter central{h.carrier, {0, 0, 1}};
  CoadjointOrbit oc = coadjoint_orbit(h, central);
  CHECK(oc.size() == 9);
  CHECK(oc.stabilizer == 3);
  CHECK(oc.rep() == std::vector<long>{0, 0, 1});

  // orbits partition the dual group and sizes are perfect even powers of p
  std::set<std::vector<long>> covered;
  long total = 0;
  for (long c1 = 0; c1 < 3; ++c1)
    for (long c2 = 0; c2 < 3; ++c2)
      for (long c3 = 0; c3 < 3; ++c3) {
        CoadjointOrbit o2 = coadjoint_orbit(h, {h.carrier, {c1, c2, c3}});
        if (covered.count(o2.rep()))
          continue;
        covered.insert(o2.rep());
        long sz = o2.size(), l = 0;
        while (sz > 1) {
          REQUIRE(sz % 3 == 0);
          sz /= 3;
          ++l;
        }
        CHECK(l % 2 == 0);
        for (const auto& c : o2.chars)
          CHECK(covered.count(c) == (c == o2.rep() ? 1 : 0));
        total += o2.size();
      }
  CHECK(total == 27);
}

TEST_CASE("coadjoint orbit over Z/9 carrier: order-3 functional") {
  LieRing h = heisenberg(3, 2); // carrier (Z/9)^3
  REQUIRE(validate(h).ok);
  GroupCharacter f{h.carrier, {0, 0, 3}}; // psi of order 3 on the center
  CoadjointOrbit o = coadjoint_orbit(h, f);
  CHECK(o.size() == 9); // |A / Ker(psi o omega)| with A = (Z/9)^2
}

TEST_CASE("orbit characters") {
  LieRing h = heisenberg(3, 1);
  REQUIRE(validate(h).ok);
  CycField F(3, 1);
  GroupCharacter central{h.carrier, {0, 0, 1}};
  CoadjointOrbit o = coadjoint_orbit(h, central);
  // at the identity: sqrt(|orbit|) = 3
  CHECK(orbit_character(h, o, F, {0, 0, 0}) == F.from_rational(3));
  // at central g all orbit members agree: 3 * psi(t)
  CHECK(orbit_character(h, o, F, {0, 0, 1}) == F.root(3, 1) * QQ(3));
  CHECK(orbit_character(h, o, F, {0, 0, 2}) == F.root(3, 2) * QQ(3));
  // abelian ring: the character is f itself
  AbelianGroup a{3, {1, 1}};
  LieRing ab = lie_ring(a, {});
  REQUIRE(validate(ab).ok);
  GroupCharacter f{a, {1, 2}};
  CoadjointOrbit oa = coadjoint_orbit(ab, f);
  CHECK(orbit_character(ab, oa, F, {2, 1}) == F.root(3, (1 * 2 + 2 * 1) % 3));
}
