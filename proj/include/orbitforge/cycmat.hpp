#pragma once

#include "orbitforge/cyclotomic.hpp"

#include <optional>
#include <vector>

// Dense matrices over Q(zeta_N). Dimensions stay small (<= a few dozen at
// desk scale); the parallel multiply exists for the benchmark and for fanning
// out verification batches.

namespace orbitforge {

struct CycMat {
  long rows = 0, cols = 0;
  std::vector<Cyc> a; // row-major

  CycMat() = default;
  CycMat(const CycField& F, long r, long c)
      : rows(r), cols(c), a((std::size_t)(r * c), F.zero()) {}

  Cyc& at(long i, long j) { return a[(std::size_t)(i * cols + j)]; }
  const Cyc& at(long i, long j) const { return a[(std::size_t)(i * cols + j)]; }

  bool operator==(const CycMat& o) const;
};

CycMat cyc_identity(const CycField& F, long n);

// Reference implementation, single-threaded.
CycMat mat_mul_serial(const CycMat& x, const CycMat& y);
// OpenMP over output rows; bit-identical to the serial kernel.
CycMat mat_mul(const CycMat& x, const CycMat& y);

CycMat mat_scale(const CycMat& x, const Cyc& c);
CycMat conj_transpose(const CycMat& x);

bool is_identity(const CycMat& x);
// The scalar c with x = c * Id, if there is one.
std::optional<Cyc> scalar_of(const CycMat& x);

} // namespace orbitforge
