#pragma once

#include <complex>
#include <cstdint>
#include <gmpxx.h>
#include <memory>
#include <vector>

// Exact arithmetic in Q(zeta_N) with N = 4 * p^E: large enough for all
// p^E-th roots of unity, i, and sqrt(p). Elements are kept reduced against
// the N-th cyclotomic polynomial, which for this N is the sparse polynomial
//   Phi_N(x) = sum_{k=0}^{p-1} (-1)^k x^{2 k p^{E-1}},
// so canonical forms are cheap and equality of canonical forms is equality
// of the represented complex numbers.

namespace orbitforge {

using QQ = mpq_class;

struct RootOfUnity {
  long order = 1;    // a divisor of N
  long exponent = 0; // residue mod order
};

class CycField {
public:
  CycField(long p, long maxExp);

  long p() const { return p_; }
  long maxExp() const { return e_; }
  long conductor() const { return n_; }
  long degree() const { return deg_; }

  class Elem;

  Elem zero() const;
  Elem one() const;
  Elem from_rational(const QQ& q) const;
  Elem root(long order, long exponent) const; // zeta_order^exponent, order | N
  Elem root(const RootOfUnity& r) const;
  Elem zeta4(long exponent) const; // i^exponent
  // Positive real sqrt(p), as the quadratic Gauss sum (times -i for p=3 mod 4).
  Elem sqrt_p() const;
  // Exact 1/sqrt(p^k) for k >= 0.
  Elem inv_sqrt_pow(long k) const;
  Elem sqrt_pow(long k) const;

  bool same(const CycField& o) const { return p_ == o.p_ && e_ == o.e_; }

private:
  long p_, e_, n_, deg_, halfstep_; // halfstep_ = 2 p^{E-1}
  friend class Elem;
};

class CycField::Elem {
public:
  Elem() = default;

  const CycField& field() const { return *f_; }

  Elem operator+(const Elem& o) const;
  Elem operator-(const Elem& o) const;
  Elem operator-() const;
  Elem operator*(const Elem& o) const;
  Elem& operator+=(const Elem& o) { return *this = *this + o; }
  Elem& operator-=(const Elem& o) { return *this = *this - o; }
  Elem& operator*=(const Elem& o) { return *this = *this * o; }
  Elem operator*(const QQ& q) const;
  Elem operator/(const QQ& q) const;
  bool operator==(const Elem& o) const;
  bool operator!=(const Elem& o) const { return !(*this == o); }

  bool is_zero() const;
  Elem conj() const;
  bool is_real() const { return conj() == *this; }
  Elem pow(long k) const; // k >= 0
  std::complex<double> to_complex() const;

  const std::vector<QQ>& coeffs() const { return c_; }

private:
  friend class CycField;
  const CycField* f_ = nullptr;
  std::vector<QQ> c_; // length degree(), reduced canonical form

  explicit Elem(const CycField* f) : f_(f), c_(f->degree()) {}
};

using Cyc = CycField::Elem;

} // namespace orbitforge
