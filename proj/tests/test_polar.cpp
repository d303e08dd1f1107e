#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "orbitforge/polar.hpp"

#include <algorithm>

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
                         {0, 3, {0, 1, 0, 0, 0, 0}},
                         {0, 4, {0, 0, 1, 0, 0, 0}},
                         {1, 5, {0, 0, 1, 0, 0, 0}},
                         {3, 5, {0, 0, 0, 0, 1, 0}},
                     });
}

GroupCharacter dual(const AbelianGroup& a, std::vector<long> c) { return {a, std::move(c)}; }

Pairing std_symplectic(const AbelianGroup& a) {
  // a = (Z/p^e)^2, omega(e1, e2) = zeta_{p^e}
  ZMat c(2, 2);
  c.at(0, 1) = 1;
  c.at(1, 0) = a.modulus(1) - 1;
  return Pairing{a, a, c};
}

Subgroup span(const AbelianGroup& a, const std::vector<Elt>& gens) {
  return subgroup_from_generators(a, gens);
}

} // namespace

TEST_CASE("skew form: kernel and image order") {
  AbelianGroup a{3, {2, 1}};
  LieRing ab = lie_ring(a, {});
  SkewForm sf = skew_form(ab, dual(a, {1, 1}));
  CHECK(sf.kernel == full_subgroup(a));
  CHECK(sf.zExp == 0);

  LieRing h = heisenberg(3, 1);
  sf = skew_form(h, dual(h.carrier, {0, 0, 1}));
  CHECK(sf.kernel == span(h.carrier, {{0, 0, 1}}));
  CHECK(sf.kernel.size() == 3);
  CHECK(sf.zExp == 1);
  CHECK(sf.form.exp_on({1, 0, 0}, {0, 1, 0}) == 1);

  LieRing h9 = heisenberg(3, 2);
  sf = skew_form(h9, dual(h9.carrier, {0, 0, 1}));
  CHECK(sf.kernel == span(h9.carrier, {{0, 0, 1}}));
  CHECK(sf.kernel.size() == 9);
  CHECK(sf.zExp == 2);
  // f of order 3 on the center coarsens the form
  sf = skew_form(h9, dual(h9.carrier, {0, 0, 3}));
  CHECK(sf.kernel == span(h9.carrier, {{3, 0, 0}, {0, 3, 0}, {0, 0, 1}}));
  CHECK(sf.kernel.size() == 81);
  CHECK(sf.zExp == 1);

  LieRing u = ut4(5);
  sf = skew_form(u, dual(u.carrier, {0, 0, 1, 0, 0, 0}));
  CHECK(sf.kernel.size() == 25);
  CHECK(sf.kernel.contains({0, 0, 1, 0, 0, 0}));
  CHECK(sf.kernel.contains({0, 0, 0, 1, 0, 0}));
  CHECK(sf.zExp == 1);
}

TEST_CASE("polarization certificates") {
  AbelianGroup a{3, {2, 1}};
  LieRing ab = lie_ring(a, {});
  CHECK(is_polarization(ab, dual(a, {0, 0}), full_subgroup(a)).ok());

  LieRing h = heisenberg(3, 1);
  GroupCharacter f = dual(h.carrier, {0, 0, 1});
  PolarizationCert good = is_polarization(h, f, span(h.carrier, {{1, 0, 0}, {0, 0, 1}}));
  CHECK(good.ok());
  CHECK(good.sub.size() == 9);

  PolarizationCert center = is_polarization(h, f, span(h.carrier, {{0, 0, 1}}));
  CHECK(center.subring);
  CHECK(center.isotropic);
  CHECK_FALSE(center.maximal);

  PolarizationCert whole = is_polarization(h, f, full_subgroup(h.carrier));
  CHECK(whole.subring);
  CHECK_FALSE(whole.isotropic);
  CHECK_FALSE(whole.maximal);

  LieRing u = ut4(5);
  GroupCharacter fu = dual(u.carrier, {0, 0, 1, 0, 0, 0});
  Subgroup pA = span(u.carrier, {{1, 0, 0, 0, 0, 0},
                                 {0, 1, 0, 0, 0, 0},
                                 {0, 0, 1, 0, 0, 0},
                                 {0, 0, 0, 1, 0, 0}});
  PolarizationCert cu = is_polarization(u, fu, pA);
  CHECK(cu.ok());
  CHECK(cu.sub.size() == 625);
}

TEST_CASE("find_polarization agrees with the exhaustive oracle") {
  struct Case {
    LieRing ring;
    std::vector<long> f;
  };
  AbelianGroup a21{3, {2, 1}};
  AbelianGroup a211{3, {2, 1, 1}};
  std::vector<Case> cases;
  cases.push_back({lie_ring(a21, {}), {1, 0}});
  cases.push_back({lie_ring(a21, {}), {3, 1}});
  cases.push_back({heisenberg(3, 1), {0, 0, 1}});
  cases.push_back({heisenberg(3, 1), {1, 2, 1}});
  cases.push_back({heisenberg(3, 1), {1, 0, 0}});
  cases.push_back({heisenberg(3, 1), {0, 0, 0}});
  // order 81, bracket into a central order-3 coordinate
  cases.push_back({lie_ring(a211, {{0, 1, {0, 0, 1, 0}}}), {0, 0, 1, 0}});
  cases.push_back({lie_ring(a211, {{0, 1, {0, 0, 1, 0}}}), {1, 0, 1, 2}});
  cases.push_back({lie_ring(a211, {{0, 1, {0, 0, 0, 1}}}), {3, 0, 0, 1}});
  for (auto& cs : cases) {
    CAPTURE(cs.f);
    GroupCharacter f = dual(cs.ring.carrier, cs.f);
    Subgroup found = find_polarization(cs.ring, f);
    CHECK(is_polarization(cs.ring, f, found).ok());
    auto oracle = all_polarizations(cs.ring, f);
    CHECK(std::count(oracle.begin(), oracle.end(), found) == 1);
    for (const auto& s : oracle)
      CHECK(s.size() == found.size());
  }
}

TEST_CASE("find_polarization on UT4(F5)") {
  LieRing u = ut4(5);
  GroupCharacter f = dual(u.carrier, {0, 0, 1, 0, 0, 0});
  Subgroup pol = find_polarization(u, f);
  CHECK(pol.size() == 625);
  CHECK(is_polarization(u, f, pol).ok());
}

TEST_CASE("neighbor check") {
  LieRing h = heisenberg(3, 1);
  GroupCharacter f = dual(h.carrier, {0, 0, 1});
  AbelianGroup mod{3, {1, 1}};
  std::vector<Subgroup> pols;
  for (const auto& lag : enumerate_lagrangians(mod, std_symplectic(mod))) {
    std::vector<Elt> gens = {{0, 0, 1}};
    for (const auto& g : sg_generators(lag))
      gens.push_back({g[0], g[1], 0});
    Subgroup pol = span(h.carrier, gens);
    CHECK(is_polarization(h, f, pol).ok());
    pols.push_back(pol);
  }
  CHECK(pols.size() == 4);
  for (const auto& s : pols)
    for (const auto& t : pols)
      CHECK(neighbor_check(h, s, t));

  LieRing u = ut4(5);
  Subgroup pA = span(u.carrier, {{1, 0, 0, 0, 0, 0},
                                 {0, 1, 0, 0, 0, 0},
                                 {0, 0, 1, 0, 0, 0},
                                 {0, 0, 0, 1, 0, 0}});
  Subgroup pB = span(u.carrier, {{0, 0, 1, 0, 0, 0},
                                 {0, 0, 0, 1, 0, 0},
                                 {0, 0, 0, 0, 1, 0},
                                 {0, 0, 0, 0, 0, 1}});
  GroupCharacter fu = dual(u.carrier, {0, 0, 1, 0, 0, 0});
  CHECK(is_polarization(u, fu, pA).ok());
  CHECK(is_polarization(u, fu, pB).ok());
  CHECK(neighbor_check(u, pA, pA));
  CHECK_FALSE(neighbor_check(u, pA, pB));
  // witness: [e12, e23] = e13 lies in pA but not in pA ∩ pB
  Elt w = lie_bracket(u, {1, 0, 0, 0, 0, 0}, {0, 0, 0, 1, 0, 0});
  CHECK(pA.contains(w));
  CHECK_FALSE(sg_intersect(pA, pB).contains(w));
}

TEST_CASE("neighbor chains") {
  LieRing h = heisenberg(3, 1);
  GroupCharacter f = dual(h.carrier, {0, 0, 1});
  Subgroup p1 = span(h.carrier, {{1, 0, 0}, {0, 0, 1}});
  Subgroup p2 = span(h.carrier, {{0, 1, 0}, {0, 0, 1}});
  CHECK(neighbor_chain(h, f, p1, p1) == std::vector<Subgroup>{p1});
  CHECK(neighbor_chain(h, f, p1, p2) == std::vector<Subgroup>{p1, p2});

  LieRing u = ut4(5);
  GroupCharacter fu = dual(u.carrier, {0, 0, 1, 0, 0, 0});
  Subgroup pA = span(u.carrier, {{1, 0, 0, 0, 0, 0},
                                 {0, 1, 0, 0, 0, 0},
                                 {0, 0, 1, 0, 0, 0},
                                 {0, 0, 0, 1, 0, 0}});
  Subgroup pB = span(u.carrier, {{0, 0, 1, 0, 0, 0},
                                 {0, 0, 0, 1, 0, 0},
                                 {0, 0, 0, 0, 1, 0},
                                 {0, 0, 0, 0, 0, 1}});
  auto chain = neighbor_chain(u, fu, pA, pB);
  CHECK(chain.size() >= 3);
  CHECK(chain.front() == pA);
  CHECK(chain.back() == pB);
  for (const auto& s : chain)
    CHECK(is_polarization(u, fu, s).ok());
  for (std::size_t i = 0; i + 1 < chain.size(); ++i)
    CHECK(neighbor_check(u, chain[i], chain[i + 1]));
}

TEST_CASE("Heisenberg reduction") {
  AbelianGroup mod9{3, {2, 2}};
  LieRing h9 = heisenberg_ring(mod9, std_symplectic(mod9));
  CHECK(h9.carrier.exponents == std::vector<long>{2, 2, 2});
  GroupCharacter f = dual(h9.carrier, {1, 0, 0});
  HeisenbergData H = heisenberg_reduction(h9, f);
  CHECK(H.sf.kernel == span(h9.carrier, {{1, 0, 0}}));
  CHECK(H.toBar.grp == mod9);
  CHECK(H.ring.carrier == h9.carrier);
  CHECK(H.ring.table == h9.table);
  CHECK(H.fbar.c == std::vector<long>{1, 0, 0});

  Subgroup p1 = span(h9.carrier, {{1, 0, 0}, {0, 1, 0}});
  CHECK(is_polarization(h9, f, p1).ok());
  Subgroup pf = reduce_polarization(H, p1);
  CHECK(pf == p1);
  CHECK(is_polarization(H.ring, H.fbar, pf).ok());

  // abelian ring reduces to the trivial Heisenberg ring
  AbelianGroup a{3, {2, 1}};
  LieRing ab = lie_ring(a, {});
  HeisenbergData Ha = heisenberg_reduction(ab, dual(a, {1, 1}));
  CHECK(Ha.ring.carrier.k() == 0);

  LieRing u = ut4(5);
  GroupCharacter fu = dual(u.carrier, {0, 0, 1, 0, 0, 0});
  HeisenbergData Hu = heisenberg_reduction(u, fu);
  CHECK(Hu.toBar.grp.order() == 625);
  CHECK(Hu.ring.carrier.exponents == std::vector<long>(5, 1));
  Subgroup pA = span(u.carrier, {{1, 0, 0, 0, 0, 0},
                                 {0, 1, 0, 0, 0, 0},
                                 {0, 0, 1, 0, 0, 0},
                                 {0, 0, 0, 1, 0, 0}});
  Subgroup pAf = reduce_polarization(Hu, pA);
  CHECK(pAf.size() == 125); // |p| / |Ker B_f| * |z|
  CHECK(is_polarization(Hu.ring, Hu.fbar, pAf).ok());
}

TEST_CASE("Lagrangian enumeration") {
  AbelianGroup m3{3, {1, 1}};
  auto l3 = enumerate_lagrangians(m3, std_symplectic(m3));
  CHECK(l3.size() == 4);
  AbelianGroup m5{5, {1, 1}};
  auto l5 = enumerate_lagrangians(m5, std_symplectic(m5));
  CHECK(l5.size() == 6);
  AbelianGroup m9{3, {2, 2}};
  auto l9 = enumerate_lagrangians(m9, std_symplectic(m9));
  for (const auto& lag : l9)
    CHECK(lag.size() * lag.size() == m9.order());
  auto has = [&](const Subgroup& s) {
    return std::count(l9.begin(), l9.end(), s) == 1;
  };
  CHECK(has(span(m9, {{1, 0}})));
  CHECK(has(span(m9, {{0, 1}})));
  CHECK(has(span(m9, {{3, 0}, {0, 3}})));
}

TEST_CASE("relative orientation: transverse Heisenberg lines") {
  LieRing h = heisenberg(3, 1);
  GroupCharacter f = dual(h.carrier, {0, 0, 1});
  OrientedPolarization op1{span(h.carrier, {{1, 0, 0}, {0, 0, 1}}), {1}};
  OrientedPolarization op2{span(h.carrier, {{0, 1, 0}, {0, 0, 1}}), {1}};

  CHECK(relative_orientation(h, f, op1, op1) == 1);
  CHECK(relative_orientation(h, f, op2, op2) == 1);

  // all transfer factors are trivial here, so theta is the class of the
  // 1x1 determinant pairing f([g1, g2]) directly
  AbelianGroup line{3, {1}};
  ZMat c(1, 1);
  c.at(0, 0) = 1;
  long expected = square_class(det_pairing(Pairing{line, line, c}, {1}, {1}), 3);
  long got = relative_orientation(h, f, op1, op2);
  CHECK(got == expected);

  // independence of the auxiliary orientation on p1 ∩ p2
  for (long ob = 1; ob < 3; ++ob)
    CHECK(relative_orientation(h, f, op1, op2, {ob}) == got);

  // bilinearity in the orientation scalars
  for (long cc = 1; cc < 3; ++cc) {
    OrientedPolarization r1{op1.sub, {cc}};
    CHECK(relative_orientation(h, f, r1, op2) == square_class(cc * got, 3));
    OrientedPolarization r2{op2.sub, {cc}};
    CHECK(relative_orientation(h, f, op1, r2) == square_class(cc * got, 3));
    // rescaling both sides by the same unit is a square
    CHECK(relative_orientation(h, f, r1, r2) == got);
  }
}

TEST_CASE("relative orientation: Z/9 Heisenberg and UT4") {
  AbelianGroup mod9{3, {2, 2}};
  LieRing h9 = heisenberg_ring(mod9, std_symplectic(mod9));
  GroupCharacter f = dual(h9.carrier, {1, 0, 0});
  std::vector<OrientedPolarization> ops = {
      {span(h9.carrier, {{1, 0, 0}, {0, 1, 0}}), {1}},
      {span(h9.carrier, {{1, 0, 0}, {0, 0, 1}}), {1}},
      {span(h9.carrier, {{1, 0, 0}, {0, 3, 0}, {0, 0, 3}}), {1}},
  };
  for (const auto& o1 : ops)
    for (const auto& o2 : ops) {
      long t = relative_orientation(h9, f, o1, o2);
      CHECK((t == 1 || t == 2));
      for (long ob = 1; ob < 3; ++ob)
        CHECK(relative_orientation(h9, f, o1, o2, {ob}) == t);
      for (long cc = 1; cc < 3; ++cc) {
        OrientedPolarization r1{o1.sub, {cc}};
        CHECK(relative_orientation(h9, f, r1, o2) == square_class(cc * t, 3));
      }
    }

  LieRing u = ut4(5);
  GroupCharacter fu = dual(u.carrier, {0, 0, 1, 0, 0, 0});
  OrientedPolarization pA{span(u.carrier, {{1, 0, 0, 0, 0, 0},
                                           {0, 1, 0, 0, 0, 0},
                                           {0, 0, 1, 0, 0, 0},
                                           {0, 0, 0, 1, 0, 0}}),
                          {1}};
  OrientedPolarization pB{span(u.carrier, {{0, 0, 1, 0, 0, 0},
                                           {0, 0, 0, 1, 0, 0},
                                           {0, 0, 0, 0, 1, 0},
                                           {0, 0, 0, 0, 0, 1}}),
                          {1}};
  long t = relative_orientation(u, fu, pA, pB);
  for (long ob = 1; ob < 5; ++ob)
    CHECK(relative_orientation(u, fu, pA, pB, {ob}) == t);
  for (long cc = 2; cc < 5; ++cc) {
    OrientedPolarization r{pA.sub, {cc}};
    CHECK(relative_orientation(u, fu, r, pB) == square_class(cc * t, 5));
  }
}

TEST_CASE("orientation reduction preserves the relative orientation") {
  AbelianGroup mod9{3, {2, 2}};
  LieRing h9 = heisenberg_ring(mod9, std_symplectic(mod9));
  GroupCharacter f = dual(h9.carrier, {1, 0, 0});
  HeisenbergData H = heisenberg_reduction(h9, f);
  std::vector<OrientedPolarization> ops = {
      {span(h9.carrier, {{1, 0, 0}, {0, 1, 0}}), {1}},
      {span(h9.carrier, {{1, 0, 0}, {0, 0, 1}}), {2}},
      {span(h9.carrier, {{1, 0, 0}, {0, 3, 0}, {0, 0, 3}}), {1}},
  };
  for (const auto& o1 : ops)
    for (const auto& o2 : ops) {
      long before = relative_orientation(h9, f, o1, o2);
      for (long sk = 1; sk < 3; ++sk)
        for (long sz = 1; sz < 3; ++sz) {
          OrientedPolarization r1 = reduce_orientation(h9, H, o1, {sk}, {sz});
          OrientedPolarization r2 = reduce_orientation(h9, H, o2, {sk}, {sz});
          CHECK(relative_orientation(H.ring, H.fbar, r1, r2) == before);
        }
    }

  LieRing u = ut4(5);
  GroupCharacter fu = dual(u.carrier, {0, 0, 1, 0, 0, 0});
  HeisenbergData Hu = heisenberg_reduction(u, fu);
  OrientedPolarization pA{span(u.carrier, {{1, 0, 0, 0, 0, 0},
                                           {0, 1, 0, 0, 0, 0},
                                           {0, 0, 1, 0, 0, 0},
                                           {0, 0, 0, 1, 0, 0}}),
                          {1}};
  OrientedPolarization pB{span(u.carrier, {{0, 0, 1, 0, 0, 0},
                                           {0, 0, 0, 1, 0, 0},
                                           {0, 0, 0, 0, 1, 0},
                                           {0, 0, 0, 0, 0, 1}}),
                          {3}};
  long before = relative_orientation(u, fu, pA, pB);
  for (long sk = 1; sk < 3; ++sk) {
    OrientedPolarization rA = reduce_orientation(u, Hu, pA, {sk}, {1});
    OrientedPolarization rB = reduce_orientation(u, Hu, pB, {sk}, {1});
    CHECK(relative_orientation(Hu.ring, Hu.fbar, rA, rB) == before);
  }
}
