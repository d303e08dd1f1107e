#include "orbitforge/cycmat.hpp"

#include <stdexcept>

namespace orbitforge {

bool CycMat::operator==(const CycMat& o) const {
  if (rows != o.rows || cols != o.cols)
    return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i] == o.a[i]))
      return false;
  return true;
}

CycMat cyc_identity(const CycField& F, long n) {
  CycMat m(F, n, n);
  for (long i = 0; i < n; ++i)
    m.at(i, i) = F.one();
  return m;
}

CycMat mat_mul_serial(const CycMat& x, const CycMat& y) {
  if (x.cols != y.rows)
    throw std::invalid_argument("mat_mul: shape mismatch");
  const CycField& F = x.a.at(0).field();
  CycMat z(F, x.rows, y.cols);
  for (long i = 0; i < x.rows; ++i)
    for (long k = 0; k < x.cols; ++k) {
      const Cyc& v = x.at(i, k);
      if (v.is_zero())
        continue;
      for (long j = 0; j < y.cols; ++j)
        z.at(i, j) += v * y.at(k, j);
    }
  return z;
}

CycMat mat_mul(const CycMat& x, const CycMat& y) {
  if (x.cols != y.rows)
    throw std::invalid_argument("mat_mul: shape mismatch");
  const CycField& F = x.a.at(0).field();
  CycMat z(F, x.rows, y.cols);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < x.rows; ++i)
    for (long k = 0; k < x.cols; ++k) {
      const Cyc& v = x.at(i, k);
      if (v.is_zero())
        continue;
      for (long j = 0; j < y.cols; ++j)
        z.at(i, j) += v * y.at(k, j);
    }
  return z;
}

CycMat mat_scale(const CycMat& x, const Cyc& c) {
  CycMat z = x;
  for (auto& v : z.a)
    v = v * c;
  return z;
}

CycMat conj_transpose(const CycMat& x) {
  const CycField& F = x.a.at(0).field();
  CycMat z(F, x.cols, x.rows);
  for (long i = 0; i < x.rows; ++i)
    for (long j = 0; j < x.cols; ++j)
      z.at(j, i) = x.at(i, j).conj();
  return z;
}

bool is_identity(const CycMat& x) {
  if (x.rows != x.cols || x.rows == 0)
    return false;
  const CycField& F = x.a.at(0).field();
  return x == cyc_identity(F, x.rows);
}

std::optional<Cyc> scalar_of(const CycMat& x) {
  if (x.rows != x.cols || x.rows == 0)
    return std::nullopt;
  const Cyc& c = x.at(0, 0);
  for (long i = 0; i < x.rows; ++i)
    for (long j = 0; j < x.cols; ++j)
      if (!(x.at(i, j) == (i == j ? c : c.field().zero())))
        return std::nullopt;
  return c;
}

} // namespace orbitforge
