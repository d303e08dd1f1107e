#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "orbitforge/cycmat.hpp"

using namespace orbitforge;

namespace {

CycMat random_matrix(const CycField& F, long n, unsigned long& s) {
  CycMat m(F, n, n);
  for (auto& v : m.a) {
    s = s * 6364136223846793005ull + 1442695040888963407ull;
    long r = (long)((s >> 33) % 23);
    QQ q((long)((s >> 20) % 7) - 3, 1 + (long)((s >> 40) % 4));
    q.canonicalize();
    v = F.root(F.conductor(), r) * q;
  }
  return m;
}

} // namespace

TEST_CASE("identity, scaling, and conjugate transpose") {
  CycField F(3, 1);
  CycMat id = cyc_identity(F, 4);
  CHECK(is_identity(id));
  CHECK(scalar_of(id).value() == F.one());
  CHECK(mat_mul(id, id) == id);

  CycMat s = mat_scale(id, F.zeta4(1));
  CHECK(!is_identity(s));
  CHECK(scalar_of(s).value() == F.zeta4(1));
  CHECK(mat_mul(s, conj_transpose(s)) == id);

  CycMat m(F, 2, 2);
  m.at(0, 1) = F.root(3, 1);
  CHECK(!scalar_of(m).has_value());
  CHECK(conj_transpose(m).at(1, 0) == F.root(3, 2));
}

TEST_CASE("parallel multiply agrees with the serial kernel") {
  CycField F(5, 1);
  unsigned long s = 42;
  for (long n : {1L, 3L, 8L, 17L}) {
    CycMat a = random_matrix(F, n, s);
    CycMat b = random_matrix(F, n, s);
    CHECK(mat_mul(a, b) == mat_mul_serial(a, b));
  }
}

TEST_CASE("associativity on random products") {
  CycField F(3, 2);
  unsigned long s = 7;
  CycMat a = random_matrix(F, 6, s);
  CycMat b = random_matrix(F, 6, s);
  CycMat c = random_matrix(F, 6, s);
  CHECK(mat_mul(mat_mul(a, b), c) == mat_mul(a, mat_mul(b, c)));
}
