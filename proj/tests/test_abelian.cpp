#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "orbitforge/abelian.hpp"

#include <random>
#include <set>

using namespace orbitforge;

static AbelianGroup grp(long p, std::vector<long> exps) { return {p, std::move(exps)}; }

TEST_CASE("subgroup_from_generators basics") {
  AbelianGroup z9 = grp(3, {2});
  Subgroup s = subgroup_from_generators(z9, {{3}});
  CHECK(s.size() == 3);
  CHECK(subgroup_from_generators(z9, {}).size() == 1);
  AbelianGroup v = grp(3, {1, 1});
  Subgroup full = subgroup_from_generators(v, {{1, 0}, {1, 1}});
  CHECK(full == full_subgroup(v));
}

TEST_CASE("canonicalization is order independent") {
  AbelianGroup a = grp(3, {2, 1});
  std::vector<Elt> gens = {{3, 1}, {6, 2}, {0, 1}};
  Subgroup s1 = subgroup_from_generators(a, gens);
  std::reverse(gens.begin(), gens.end());
  Subgroup s2 = subgroup_from_generators(a, gens);
  CHECK(s1 == s2);
}

TEST_CASE("lattice ops") {
  AbelianGroup v = grp(3, {1, 1});
  Subgroup e1 = subgroup_from_generators(v, {{1, 0}});
  Subgroup e2 = subgroup_from_generators(v, {{0, 1}});
  CHECK(sg_intersect(e1, e1) == e1);
  CHECK(sg_intersect(e1, e2) == zero_subgroup(v));
  CHECK(sg_sum(e1, e2) == full_subgroup(v));

  AbelianGroup a = grp(3, {2, 1});
  Subgroup s = subgroup_from_generators(a, {{1, 0}});
  Subgroup t = subgroup_from_generators(a, {{3, 0}, {0, 1}});
  Subgroup i = sg_intersect(s, t);
  CHECK(i == subgroup_from_generators(a, {{3, 0}}));
  CHECK(i.size() == 3);
  // oracle: brute force over all 27 elements
  std::set<Elt> want;
  for (const auto& x : all_elements(a))
    if (s.contains(x) && t.contains(x))
      want.insert(x);
  auto got = sg_elements(i);
  CHECK(std::set<Elt>(got.begin(), got.end()) == want);
}

TEST_CASE("intersection-sum size identity on random pairs") {
  AbelianGroup a = grp(3, {2, 2, 1});
  std::mt19937 rng(12345);
  auto elems = all_elements(a);
  for (int trial = 0; trial < 24; ++trial) {
    std::vector<Elt> g1 = {elems[rng() % elems.size()], elems[rng() % elems.size()]};
    std::vector<Elt> g2 = {elems[rng() % elems.size()], elems[rng() % elems.size()]};
    Subgroup s = subgroup_from_generators(a, g1);
    Subgroup t = subgroup_from_generators(a, g2);
    CHECK(sg_intersect(s, t).size() * sg_sum(s, t).size() == s.size() * t.size());
  }
}

TEST_CASE("quotient presentations") {
  AbelianGroup a = grp(3, {2, 1});
  Quotient q0 = quotient(a, zero_subgroup(a));
  CHECK(q0.grp == a);

  AbelianGroup z9 = grp(3, {2});
  Quotient q1 = quotient(z9, subgroup_from_generators(z9, {{3}}));
  CHECK(q1.grp == grp(3, {1}));

  // (Z/9 + Z/3) / <(1,1)>: coset count 27/9 = 3, every coset killed by 3
  Subgroup d = subgroup_from_generators(a, {{1, 1}});
  CHECK(d.size() == 9);
  Quotient q2 = quotient(a, d);
  CHECK(q2.grp == grp(3, {1}));
  // oracle: enumerate cosets and their orders
  std::set<Elt> cosets;
  for (const auto& x : all_elements(a)) {
    Elt y = elt_apply(q2.grp, q2.proj, x);
    cosets.insert(y);
    CHECK(elt_is_zero(elt_apply(q2.grp, q2.proj, elt_scale(a, 3, x))));
  }
  CHECK(cosets.size() == 3);
  // projection ∘ section = identity
  for (const auto& y : all_elements(q2.grp))
    CHECK(elt_apply(q2.grp, q2.proj, elt_apply(a, q2.sect, y)) == y);
}

TEST_CASE("sub_presentation round trip") {
  AbelianGroup a = grp(3, {2, 1});
  for (const auto& s : enumerate_subgroups(a)) {
    SubPresentation sp = sub_presentation(s);
    CHECK(sp.grp.order() == s.size());
    CHECK(is_morphism(sp.grp, a, sp.emb));
    std::vector<Elt> gens;
    for (long i = 0; i < (long)sp.emb.rows; ++i) {
      std::vector<ZZ> r(a.k());
      for (long j = 0; j < a.k(); ++j)
        r[j] = sp.emb.at(i, j);
      gens.push_back(elt_reduce(a, r));
      CHECK(elt_order(a, gens.back()) == sp.grp.modulus(i));
    }
    CHECK(subgroup_from_generators(a, gens) == s);
  }
}

TEST_CASE("perp") {
  AbelianGroup v = grp(3, {1, 1});
  Pairing symp{v, v, ZMat(2, 2)};
  symp.c.at(0, 1) = 1;
  symp.c.at(1, 0) = -1;
  CHECK(pairing_valid(symp));
  CHECK(pairing_perfect(symp));
  CHECK(pairing_skew(symp));
  CHECK_FALSE(pairing_symmetric(symp));
  CHECK(perp(zero_subgroup(v), symp) == full_subgroup(v));
  Subgroup e1 = subgroup_from_generators(v, {{1, 0}});
  CHECK(perp(e1, symp) == e1);

  AbelianGroup h = grp(3, {2, 2});
  Pairing w{h, h, ZMat(2, 2)};
  w.c.at(0, 1) = 1;
  w.c.at(1, 0) = -1; // ω((a,b),(c,d)) = ζ_9^{ad-bc}
  Subgroup s = subgroup_from_generators(h, {{3, 0}});
  Subgroup sp = perp(s, w);
  CHECK(sp == subgroup_from_generators(h, {{1, 0}, {0, 3}}));
  CHECK(sp.size() == 27);
  // oracle: brute force over 81 elements
  for (const auto& x : all_elements(h)) {
    bool ann = true;
    for (const auto& g : sg_generators(s))
      if (w.exp_on(g, x) != 0)
        ann = false;
    CHECK(ann == sp.contains(x));
  }
  // perfect pairing: double perp
  for (const auto& sub : enumerate_subgroups(h))
    CHECK(perp(perp(sub, w), w) == sub);
}

TEST_CASE("enumerate_subgroups counts") {
  CHECK(enumerate_subgroups(grp(3, {1})).size() == 2);
  CHECK(enumerate_subgroups(grp(3, {1, 1})).size() == 6);
  CHECK(enumerate_subgroups(grp(3, {2})).size() == 3);
  // order bound
  CHECK(enumerate_subgroups(grp(3, {1, 1}), 3).size() == 5);
}

TEST_CASE("canonical filtration dims") {
  CHECK(graded_dims(grp(3, {1, 1})) == std::vector<long>{2});
  CHECK(graded_dims(grp(3, {2})) == std::vector<long>({1, 1}));
  CHECK(graded_dims(grp(3, {2, 1})) == std::vector<long>({2, 1}));
}

TEST_CASE("det_automorphism") {
  AbelianGroup z9 = grp(3, {2});
  CHECK(det_automorphism(ZMat::identity(1), z9) == 1);
  ZMat two = ZMat::identity(1);
  two.at(0, 0) = 2;
  CHECK(det_automorphism(two, z9) == 1); // 2*2 = 4 = 1 mod 3

  AbelianGroup v = grp(3, {1, 1});
  ZMat swap(2, 2);
  swap.at(0, 1) = 1;
  swap.at(1, 0) = 1;
  CHECK(det_automorphism(swap, v) == 2);

  // multiplicativity on random automorphisms of Z/9 + Z/3
  AbelianGroup a = grp(3, {2, 1});
  std::mt19937 rng(7);
  auto rand_auto = [&] {
    for (;;) {
      ZMat m(2, 2);
      m.at(0, 0) = rng() % 9;
      m.at(0, 1) = rng() % 3;
      m.at(1, 0) = 3 * (rng() % 3);
      m.at(1, 1) = rng() % 3;
      try {
        det_automorphism(m, a);
        return m;
      } catch (...) {
      }
    }
  };
  for (int t = 0; t < 10; ++t) {
    ZMat f = rand_auto(), g = rand_auto();
    ZMat fg = zmul(f, g); // row convention: x(fg) = (xf)g
    CHECK(det_automorphism(fg, a) ==
          det_automorphism(f, a) * det_automorphism(g, a) % 3);
  }
}

TEST_CASE("det_pairing basics") {
  AbelianGroup zp = grp(3, {1});
  Pairing b{zp, zp, ZMat(1, 1)};
  b.c.at(0, 0) = 1;
  CHECK(det_pairing(b, {1}, {1}) == 1);
  CHECK(det_pairing(b, {2}, {1}) == 2); // bilinearity in oA

  AbelianGroup v = grp(3, {1, 1});
  Pairing m{v, v, ZMat(2, 2)};
  m.c.at(0, 1) = 1;
  m.c.at(1, 0) = 1;
  long val = det_pairing(m, {1}, {1});
  CHECK(val == 1); // dual sequence (v2, v1) reversed is the standard basis
  // square-class invariance under a permuted presentation of the same pairing
  Pairing mp{v, v, ZMat(2, 2)};
  mp.c.at(0, 1) = 2; // rescale both basis vectors by units: b'(x,y)=b(ux,wy)
  mp.c.at(1, 0) = 2;
  long val2 = det_pairing(mp, {1}, {1});
  // ratio must be the square of the automorphism determinant involved
  long ratio = val * fp_inv(val2, 3) % 3;
  CHECK((ratio == 1)); // det of scaling (2,2) is 4 = 1; squares cancel
}

TEST_CASE("det_pairing on mixed exponents stays consistent") {
  AbelianGroup a = grp(3, {2, 1});
  Pairing b{a, a, ZMat(2, 2)};
  b.c.at(0, 0) = 1;
  b.c.at(1, 1) = 1;
  CHECK(pairing_perfect(b));
  long base = det_pairing(b, {1}, {1});
  CHECK(base != 0);
  CHECK(det_pairing(b, {2}, {2}) == base * 4 % 3);
  // psi0 rescaling does not move the answer (dual solve uses matching scale)
  set_psi0_scale(2);
  CHECK(det_pairing(b, {1}, {1}) == base);
  set_psi0_scale(1);
}

TEST_CASE("pairing transpose evaluates identically") {
  AbelianGroup a = grp(3, {2, 1});
  Pairing b{a, a, ZMat(2, 2)};
  b.c.at(0, 0) = 2;
  b.c.at(0, 1) = 1;
  b.c.at(1, 0) = 3;
  b.c.at(1, 1) = 2;
  REQUIRE(pairing_valid(b));
  Pairing t = pairing_transpose(b);
  REQUIRE(pairing_valid(t));
  for (const auto& x : all_elements(a))
    for (const auto& y : all_elements(a))
      CHECK(b.exp_on(x, y) == t.exp_on(y, x));
}
