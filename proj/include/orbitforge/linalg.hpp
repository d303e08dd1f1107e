#pragma once

#include <cassert>
#include <cstdint>
#include <gmpxx.h>
#include <vector>

// Integer and mod-p linear algebra underlying all subgroup calculus.
// Subgroups of a finite abelian p-group are represented by full-rank
// integer lattices between the relation lattice and Z^k; the canonical
// representative is the row Hermite normal form of that lattice.

namespace orbitforge {

using ZZ = mpz_class;

struct ZMat {
  std::size_t rows = 0, cols = 0;
  std::vector<ZZ> a; // row-major

  ZMat() = default;
  ZMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

  ZZ& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const ZZ& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  static ZMat identity(std::size_t n);
  static ZMat diag(const std::vector<ZZ>& d);

  bool operator==(const ZMat& o) const = default;
};

ZMat zmul(const ZMat& x, const ZMat& y);
ZMat vstack(const ZMat& x, const ZMat& y);

// Row Hermite normal form: pivots positive, entries above each pivot
// reduced into [0, pivot), zero rows dropped. Canonical for the row span.
ZMat hnf(ZMat m);

// HNF together with a unimodular U such that U * input = [H; 0].
void hnf_transform(const ZMat& m, ZMat& h, ZMat& u);

// Basis of the left kernel {x : x m = 0} over Z.
ZMat zkernel(const ZMat& m);

// Solve x * m = b over Z; returns false if no integral solution.
bool zsolve_left(const ZMat& m, const std::vector<ZZ>& b, std::vector<ZZ>& x);

// Smith normal form: u * m * v = d, d diagonal with d1 | d2 | ...
void snf(const ZMat& m, ZMat& u, ZMat& d, ZMat& v);

ZZ zpow(long b, long e);

// --- dense matrices over F_p (p odd, fits in long) -------------------------

struct FpMat {
  long p = 0;
  std::size_t rows = 0, cols = 0;
  std::vector<long> a;

  FpMat() = default;
  FpMat(long p_, std::size_t r, std::size_t c) : p(p_), rows(r), cols(c), a(r * c, 0) {}

  long& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  long at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

long fp_inv(long x, long p);
long fp_pow_inv(long x, long pe); // inverse of x modulo the prime power pe
long fp_det(FpMat m);
std::size_t fp_rank(FpMat m);
// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> fp_rref(FpMat& m);
// Basis of the left kernel {x : x m = 0} over F_p (rows of result).
FpMat fp_kernel(const FpMat& m);
// Solve x * m = b; returns false if inconsistent.
bool fp_solve_left(const FpMat& m, const std::vector<long>& b, std::vector<long>& x);

} // namespace orbitforge
