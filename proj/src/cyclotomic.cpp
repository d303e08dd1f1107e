#include "orbitforge/cyclotomic.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace orbitforge {

CycField::CycField(long p, long maxExp) : p_(p), e_(maxExp) {
  if (p < 3 || maxExp < 1)
    throw std::invalid_argument("CycField: need odd prime p and exponent >= 1");
  long pe1 = 1;
  for (long i = 0; i + 1 < e_; ++i)
    pe1 *= p_;
  halfstep_ = 2 * pe1;
  n_ = 4 * pe1 * p_;
  deg_ = (p_ - 1) * halfstep_;
}

CycField::Elem CycField::zero() const { return Elem(this); }

CycField::Elem CycField::one() const {
  Elem r(this);
  r.c_[0] = 1;
  return r;
}

CycField::Elem CycField::from_rational(const QQ& q) const {
  Elem r(this);
  r.c_[0] = q;
  return r;
}

namespace {

// Reduce a coefficient vector of length <= N against
// Phi_N = sum_{k=0}^{p-1} (-1)^k x^{k h},  h = 2 p^{E-1},
// i.e. rewrite x^d for d >= deg via x^{(p-1)h} = sum_{k<p-1} (-1)^{k+1} x^{kh}.
void reduce(std::vector<QQ>& c, long deg, long h, long p) {
  for (long d = (long)c.size() - 1; d >= deg; --d) {
    if (c[d] == 0)
      continue;
    QQ v = c[d];
    c[d] = 0;
    long base = d - deg;
    for (long k = 0; k < p - 1; ++k) {
      if (k % 2 == 0)
        c[base + k * h] -= v;
      else
        c[base + k * h] += v;
    }
  }
  c.resize(deg);
}

} // namespace

CycField::Elem CycField::root(long order, long exponent) const {
  if (order <= 0 || n_ % order != 0)
    throw std::invalid_argument("root order must divide the conductor");
  long m = ((n_ / order) * (exponent % order) % n_ + n_) % n_;
  std::vector<QQ> c(n_);
  c[m] = 1;
  reduce(c, deg_, halfstep_, p_);
  Elem r(this);
  r.c_ = std::move(c);
  return r;
}

CycField::Elem CycField::root(const RootOfUnity& r) const {
  return root(r.order, r.exponent);
}

CycField::Elem CycField::zeta4(long exponent) const { return root(4, exponent); }

CycField::Elem CycField::sqrt_p() const {
  // Quadratic Gauss sum: sum_a zeta_p^{a^2} equals sqrt(p) for p = 1 mod 4
  // and i*sqrt(p) for p = 3 mod 4.
  Elem g = zero();
  for (long a = 0; a < p_; ++a)
    g += root(p_, (a * a) % p_);
  if (p_ % 4 == 3)
    g *= zeta4(3);
  return g;
}

CycField::Elem CycField::inv_sqrt_pow(long k) const {
  assert(k >= 0);
  // 1/sqrt(p)^k = sqrt(p)^k / p^k
  Elem s = sqrt_pow(k);
  QQ d = 1;
  for (long i = 0; i < k; ++i)
    d *= p_;
  return s / d;
}

CycField::Elem CycField::sqrt_pow(long k) const {
  assert(k >= 0);
  QQ whole = 1;
  for (long i = 0; i + 1 < k; i += 2)
    whole *= p_;
  Elem r = from_rational(whole);
  if (k % 2 == 1)
    r *= sqrt_p();
  return r;
}

Cyc Cyc::operator+(const Cyc& o) const {
  assert(f_ && o.f_ && f_->same(*o.f_));
  Cyc r(f_);
  for (long i = 0; i < f_->degree(); ++i)
    r.c_[i] = c_[i] + o.c_[i];
  return r;
}

Cyc Cyc::operator-(const Cyc& o) const {
  assert(f_ && o.f_ && f_->same(*o.f_));
  Cyc r(f_);
  for (long i = 0; i < f_->degree(); ++i)
    r.c_[i] = c_[i] - o.c_[i];
  return r;
}

Cyc Cyc::operator-() const {
  Cyc r(f_);
  for (long i = 0; i < f_->degree(); ++i)
    r.c_[i] = -c_[i];
  return r;
}

Cyc Cyc::operator*(const Cyc& o) const {
  assert(f_ && o.f_ && f_->same(*o.f_));
  long d = f_->degree();
  std::vector<QQ> prod(2 * d - 1);
  for (long i = 0; i < d; ++i) {
    if (c_[i] == 0)
      continue;
    for (long j = 0; j < d; ++j) {
      if (o.c_[j] == 0)
        continue;
      prod[i + j] += c_[i] * o.c_[j];
    }
  }
  reduce(prod, d, f_->halfstep_, f_->p_);
  Cyc r(f_);
  r.c_ = std::move(prod);
  return r;
}

Cyc Cyc::operator*(const QQ& q) const {
  Cyc r(f_);
  for (long i = 0; i < f_->degree(); ++i)
    r.c_[i] = c_[i] * q;
  return r;
}

Cyc Cyc::operator/(const QQ& q) const {
  assert(q != 0);
  Cyc r(f_);
  for (long i = 0; i < f_->degree(); ++i)
    r.c_[i] = c_[i] / q;
  return r;
}

bool Cyc::operator==(const Cyc& o) const {
  assert(f_ && o.f_ && f_->same(*o.f_));
  return c_ == o.c_;
}

bool Cyc::is_zero() const {
  for (const auto& q : c_)
    if (q != 0)
      return false;
  return true;
}

Cyc Cyc::conj() const {
  // Complex conjugation sends zeta_N to zeta_N^{-1}, i.e. x^k to x^{N-k}.
  long n = f_->conductor();
  std::vector<QQ> c(n);
  c[0] = c_[0];
  for (long k = 1; k < f_->degree(); ++k)
    c[n - k] = c_[k];
  reduce(c, f_->degree(), f_->halfstep_, f_->p_);
  Cyc r(f_);
  r.c_ = std::move(c);
  return r;
}

Cyc Cyc::pow(long k) const {
  assert(k >= 0);
  Cyc acc = f_->one();
  Cyc b = *this;
  while (k) {
    if (k & 1)
      acc *= b;
    b *= b;
    k >>= 1;
  }
  return acc;
}

std::complex<double> Cyc::to_complex() const {
  std::complex<double> s = 0;
  double step = 2.0 * M_PI / (double)f_->conductor();
  for (long k = 0; k < f_->degree(); ++k) {
    if (c_[k] == 0)
      continue;
    s += c_[k].get_d() * std::polar(1.0, step * (double)k);
  }
  return s;
}

} // namespace orbitforge
