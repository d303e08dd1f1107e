#include "orbitforge/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace orbitforge {

ZMat ZMat::identity(std::size_t n) {
  ZMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

ZMat ZMat::diag(const std::vector<ZZ>& d) {
  ZMat m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m.at(i, i) = d[i];
  return m;
}

ZMat zmul(const ZMat& x, const ZMat& y) {
  assert(x.cols == y.rows);
  ZMat r(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      if (x.at(i, k) == 0) continue;
      for (std::size_t j = 0; j < y.cols; ++j)
        r.at(i, j) += x.at(i, k) * y.at(k, j);
    }
  return r;
}

ZMat vstack(const ZMat& x, const ZMat& y) {
  if (x.rows == 0) return y;
  if (y.rows == 0) return x;
  assert(x.cols == y.cols);
  ZMat r(x.rows + y.rows, x.cols);
  std::copy(x.a.begin(), x.a.end(), r.a.begin());
  std::copy(y.a.begin(), y.a.end(), r.a.begin() + x.a.size());
  return r;
}

namespace {

void swap_rows(ZMat& m, std::size_t i, std::size_t j) {
  for (std::size_t c = 0; c < m.cols; ++c) std::swap(m.at(i, c), m.at(j, c));
}

// r_i -= q * r_j
void row_axpy(ZMat& m, std::size_t i, std::size_t j, const ZZ& q) {
  if (q == 0) return;
  for (std::size_t c = 0; c < m.cols; ++c) m.at(i, c) -= q * m.at(j, c);
}

void negate_row(ZMat& m, std::size_t i) {
  for (std::size_t c = 0; c < m.cols; ++c) m.at(i, c) = -m.at(i, c);
}

// Row echelon via integer row ops, tracking the same ops in u when given.
void echelon(ZMat& m, ZMat* u) {
  std::size_t r = 0;
  for (std::size_t col = 0; col < m.cols && r < m.rows; ++col) {
    // gcd out the column below position r
    while (true) {
      std::size_t piv = m.rows;
      for (std::size_t i = r; i < m.rows; ++i)
        if (m.at(i, col) != 0 && (piv == m.rows || cmp(abs(m.at(i, col)), abs(m.at(piv, col))) < 0))
          piv = i;
      if (piv == m.rows) break; // column is zero
      if (piv != r) {
        swap_rows(m, r, piv);
        if (u) swap_rows(*u, r, piv);
      }
      bool done = true;
      for (std::size_t i = r + 1; i < m.rows; ++i) {
        if (m.at(i, col) == 0) continue;
        ZZ q = m.at(i, col) / m.at(r, col); // C++ truncated division
        row_axpy(m, i, r, q);
        if (u) row_axpy(*u, i, r, q);
        if (m.at(i, col) != 0) done = false;
      }
      if (done) break;
    }
    if (m.at(r, col) == 0) continue;
    if (m.at(r, col) < 0) {
      negate_row(m, r);
      if (u) negate_row(*u, r);
    }
    // reduce entries above the pivot
    for (std::size_t i = 0; i < r; ++i) {
      ZZ q;
      mpz_fdiv_q(q.get_mpz_t(), m.at(i, col).get_mpz_t(), m.at(r, col).get_mpz_t());
      row_axpy(m, i, r, q);
      if (u) row_axpy(*u, i, r, q);
    }
    ++r;
  }
}

} // namespace

ZMat hnf(ZMat m) {
  echelon(m, nullptr);
  std::size_t nz = 0;
  for (std::size_t i = 0; i < m.rows; ++i) {
    bool zero = true;
    for (std::size_t c = 0; c < m.cols; ++c)
      if (m.at(i, c) != 0) { zero = false; break; }
    if (!zero) ++nz;
  }
  m.rows = nz; // echelon puts zero rows last
  m.a.resize(nz * m.cols);
  return m;
}

void hnf_transform(const ZMat& m, ZMat& h, ZMat& u) {
  h = m;
  u = ZMat::identity(m.rows);
  echelon(h, &u);
}

ZMat zkernel(const ZMat& m) {
  ZMat h, u;
  hnf_transform(m, h, u);
  ZMat ker(0, m.rows);
  for (std::size_t i = 0; i < h.rows; ++i) {
    bool zero = true;
    for (std::size_t c = 0; c < h.cols; ++c)
      if (h.at(i, c) != 0) { zero = false; break; }
    if (zero) {
      ker.rows++;
      for (std::size_t c = 0; c < m.rows; ++c) ker.a.push_back(u.at(i, c));
    }
  }
  return ker;
}

bool zsolve_left(const ZMat& m, const std::vector<ZZ>& b, std::vector<ZZ>& x) {
  assert(b.size() == m.cols);
  ZMat h, u;
  hnf_transform(m, h, u);
  std::vector<ZZ> rem = b, coef(m.rows, 0);
  for (std::size_t i = 0; i < h.rows; ++i) {
    std::size_t pc = 0;
    while (pc < h.cols && h.at(i, pc) == 0) ++pc;
    if (pc == h.cols) break;
    if (rem[pc] % h.at(i, pc) != 0) {
      // may still be solvable only if later reduction handles it; HNF pivot
      // is the unique chance to clear this coordinate
      return false;
    }
    ZZ q = rem[pc] / h.at(i, pc);
    for (std::size_t c = 0; c < h.cols; ++c) rem[c] -= q * h.at(i, c);
    for (std::size_t r = 0; r < m.rows; ++r) coef[r] += q * u.at(i, r);
  }
  for (auto& v : rem)
    if (v != 0) return false;
  x = coef;
  return true;
}

void snf(const ZMat& m, ZMat& u, ZMat& d, ZMat& v) {
  d = m;
  u = ZMat::identity(m.rows);
  v = ZMat::identity(m.cols);
  auto col_axpy = [&](ZMat& mm, std::size_t j, std::size_t k, const ZZ& q) {
    if (q == 0) return;
    for (std::size_t i = 0; i < mm.rows; ++i) mm.at(i, j) -= q * mm.at(i, k);
  };
  auto swap_cols = [&](ZMat& mm, std::size_t j, std::size_t k) {
    for (std::size_t i = 0; i < mm.rows; ++i) std::swap(mm.at(i, j), mm.at(i, k));
  };
  std::size_t n = std::min(m.rows, m.cols);
  for (std::size_t t = 0; t < n; ++t) {
    while (true) {
      // locate minimal nonzero entry in the trailing block
      std::size_t bi = d.rows, bj = d.cols;
      for (std::size_t i = t; i < d.rows; ++i)
        for (std::size_t j = t; j < d.cols; ++j)
          if (d.at(i, j) != 0 &&
              (bi == d.rows || cmp(abs(d.at(i, j)), abs(d.at(bi, bj))) < 0)) {
            bi = i; bj = j;
          }
      if (bi == d.rows) break;
      if (bi != t) { swap_rows(d, t, bi); swap_rows(u, t, bi); }
      if (bj != t) { swap_cols(d, t, bj); swap_cols(v, t, bj); }
      bool clean = true;
      for (std::size_t i = t + 1; i < d.rows; ++i)
        if (d.at(i, t) != 0) {
          ZZ q = d.at(i, t) / d.at(t, t);
          row_axpy(d, i, t, q);
          row_axpy(u, i, t, q);
          if (d.at(i, t) != 0) clean = false;
        }
      for (std::size_t j = t + 1; j < d.cols; ++j)
        if (d.at(t, j) != 0) {
          ZZ q = d.at(t, j) / d.at(t, t);
          col_axpy(d, j, t, q);
          col_axpy(v, j, t, q);
          if (d.at(t, j) != 0) clean = false;
        }
      if (!clean) continue;
      // divisibility: fold any non-multiple into column t
      bool redo = false;
      for (std::size_t i = t + 1; i < d.rows && !redo; ++i)
        for (std::size_t j = t + 1; j < d.cols && !redo; ++j)
          if (d.at(i, j) % d.at(t, t) != 0) {
            row_axpy(d, t, i, ZZ(-1));
            row_axpy(u, t, i, ZZ(-1));
            redo = true;
          }
      if (!redo) break;
    }
    if (d.at(t, t) < 0) {
      negate_row(d, t);
      negate_row(u, t);
    }
  }
}

ZZ zpow(long b, long e) {
  ZZ r = 1;
  for (long i = 0; i < e; ++i) r *= b;
  return r;
}

// --- F_p -------------------------------------------------------------------

long fp_inv(long x, long p) {
  long t = 0, nt = 1, r = p, nr = ((x % p) + p) % p;
  while (nr != 0) {
    long q = r / nr;
    long tmp = t - q * nt; t = nt; nt = tmp;
    tmp = r - q * nr; r = nr; nr = tmp;
  }
  if (r != 1) throw std::domain_error("fp_inv: not invertible");
  return ((t % p) + p) % p;
}

long fp_pow_inv(long x, long pe) {
  long t = 0, nt = 1, r = pe, nr = ((x % pe) + pe) % pe;
  while (nr != 0) {
    long q = r / nr;
    long tmp = t - q * nt; t = nt; nt = tmp;
    tmp = r - q * nr; r = nr; nr = tmp;
  }
  if (r != 1) throw std::domain_error("fp_pow_inv: not invertible");
  return ((t % pe) + pe) % pe;
}

std::vector<std::size_t> fp_rref(FpMat& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t col = 0; col < m.cols && r < m.rows; ++col) {
    std::size_t piv = m.rows;
    for (std::size_t i = r; i < m.rows; ++i)
      if (m.at(i, col) % m.p != 0) { piv = i; break; }
    if (piv == m.rows) continue;
    for (std::size_t c = 0; c < m.cols; ++c) std::swap(m.at(r, c), m.at(piv, c));
    long inv = fp_inv(m.at(r, col), m.p);
    for (std::size_t c = 0; c < m.cols; ++c) m.at(r, c) = (m.at(r, c) * inv) % m.p;
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == r) continue;
      long f = ((m.at(i, col) % m.p) + m.p) % m.p;
      if (f == 0) continue;
      for (std::size_t c = 0; c < m.cols; ++c)
        m.at(i, c) = ((m.at(i, c) - f * m.at(r, c)) % m.p + m.p) % m.p;
    }
    pivots.push_back(col);
    ++r;
  }
  for (auto& x : m.a) x = ((x % m.p) + m.p) % m.p;
  return pivots;
}

long fp_det(FpMat m) {
  assert(m.rows == m.cols);
  long p = m.p, det = 1;
  for (std::size_t col = 0; col < m.cols; ++col) {
    std::size_t piv = m.rows;
    for (std::size_t i = col; i < m.rows; ++i)
      if (((m.at(i, col) % p) + p) % p != 0) { piv = i; break; }
    if (piv == m.rows) return 0;
    if (piv != col) {
      for (std::size_t c = 0; c < m.cols; ++c) std::swap(m.at(col, c), m.at(piv, c));
      det = p - det;
    }
    long d = ((m.at(col, col) % p) + p) % p;
    det = (det * d) % p;
    long inv = fp_inv(d, p);
    for (std::size_t i = col + 1; i < m.rows; ++i) {
      long f = (((m.at(i, col) % p) + p) % p * inv) % p;
      if (f == 0) continue;
      for (std::size_t c = 0; c < m.cols; ++c)
        m.at(i, c) = ((m.at(i, c) - f * m.at(col, c)) % p + p) % p;
    }
  }
  return det % p;
}

std::size_t fp_rank(FpMat m) { return fp_rref(m).size(); }

FpMat fp_kernel(const FpMat& m) {
  // kernel of x -> x m: transpose-free via rref of m^T? Work directly:
  // rref of m with row-op tracking on an identity block.
  FpMat aug(m.p, m.rows, m.cols + m.rows);
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols + i) = 1;
  }
  // eliminate on the first m.cols columns only
  std::size_t r = 0;
  for (std::size_t col = 0; col < m.cols && r < aug.rows; ++col) {
    std::size_t piv = aug.rows;
    for (std::size_t i = r; i < aug.rows; ++i)
      if (aug.at(i, col) % m.p != 0) { piv = i; break; }
    if (piv == aug.rows) continue;
    for (std::size_t c = 0; c < aug.cols; ++c) std::swap(aug.at(r, c), aug.at(piv, c));
    long inv = fp_inv(aug.at(r, col), m.p);
    for (std::size_t c = 0; c < aug.cols; ++c) aug.at(r, c) = (aug.at(r, c) * inv) % m.p;
    for (std::size_t i = 0; i < aug.rows; ++i) {
      if (i == r) continue;
      long f = ((aug.at(i, col) % m.p) + m.p) % m.p;
      if (f == 0) continue;
      for (std::size_t c = 0; c < aug.cols; ++c)
        aug.at(i, c) = ((aug.at(i, c) - f * aug.at(r, c)) % m.p + m.p) % m.p;
    }
    ++r;
  }
  FpMat ker(m.p, m.rows - r, m.rows);
  for (std::size_t i = r; i < aug.rows; ++i)
    for (std::size_t j = 0; j < m.rows; ++j)
      ker.at(i - r, j) = ((aug.at(i, m.cols + j) % m.p) + m.p) % m.p;
  return ker;
}

bool fp_solve_left(const FpMat& m, const std::vector<long>& b, std::vector<long>& x) {
  assert(b.size() == m.cols);
  FpMat aug(m.p, m.rows + 1, m.cols + m.rows + 1);
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) aug.at(i, j) = ((m.at(i, j) % m.p) + m.p) % m.p;
    aug.at(i, m.cols + i) = 1;
  }
  for (std::size_t j = 0; j < m.cols; ++j) aug.at(m.rows, j) = ((b[j] % m.p) + m.p) % m.p;
  aug.at(m.rows, m.cols + m.rows) = 1;
  std::size_t r = 0;
  for (std::size_t col = 0; col < m.cols; ++col) {
    std::size_t piv = aug.rows;
    for (std::size_t i = r; i < m.rows; ++i) // never pivot on the b row
      if (aug.at(i, col) != 0) { piv = i; break; }
    if (piv == aug.rows) continue;
    for (std::size_t c = 0; c < aug.cols; ++c) std::swap(aug.at(r, c), aug.at(piv, c));
    long inv = fp_inv(aug.at(r, col), m.p);
    for (std::size_t c = 0; c < aug.cols; ++c) aug.at(r, c) = (aug.at(r, c) * inv) % m.p;
    for (std::size_t i = 0; i < aug.rows; ++i) {
      if (i == r) continue;
      long f = aug.at(i, col) % m.p;
      if (f == 0) continue;
      for (std::size_t c = 0; c < aug.cols; ++c)
        aug.at(i, c) = ((aug.at(i, c) - f * aug.at(r, c)) % m.p + m.p) % m.p;
    }
    ++r;
  }
  for (std::size_t j = 0; j < m.cols; ++j)
    if (aug.at(m.rows, j) != 0) return false;
  x.assign(m.rows, 0);
  for (std::size_t j = 0; j < m.rows; ++j)
    x[j] = (m.p - aug.at(m.rows, m.cols + j)) % m.p;
  return true;
}

} // namespace orbitforge
