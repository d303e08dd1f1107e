#include "orbitforge/abelian.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <stdexcept>

namespace orbitforge {

long AbelianGroup::len() const {
  long s = 0;
  for (long e : exponents)
    s += e;
  return s;
}

ZZ AbelianGroup::order() const {
  ZZ o = 1;
  for (long e : exponents)
    o *= zpow(p, e);
  return o;
}

long AbelianGroup::modulus(long i) const {
  long m = 1;
  for (long t = 0; t < exponents[i]; ++t)
    m *= p;
  return m;
}

Elt elt_reduce(const AbelianGroup& A, const std::vector<ZZ>& x) {
  assert((long)x.size() == A.k());
  Elt r(A.k());
  for (long i = 0; i < A.k(); ++i) {
    ZZ m = A.modulus(i);
    ZZ v = x[i] % m;
    if (v < 0)
      v += m;
    r[i] = v.get_si();
  }
  return r;
}

Elt elt_reduce(const AbelianGroup& A, const std::vector<long>& x) {
  std::vector<ZZ> z(x.begin(), x.end());
  return elt_reduce(A, z);
}

Elt elt_add(const AbelianGroup& A, const Elt& x, const Elt& y) {
  Elt r(A.k());
  for (long i = 0; i < A.k(); ++i)
    r[i] = (x[i] + y[i]) % A.modulus(i);
  return r;
}

Elt elt_neg(const AbelianGroup& A, const Elt& x) {
  Elt r(A.k());
  for (long i = 0; i < A.k(); ++i)
    r[i] = x[i] == 0 ? 0 : A.modulus(i) - x[i];
  return r;
}

Elt elt_scale(const AbelianGroup& A, long c, const Elt& x) {
  Elt r(A.k());
  for (long i = 0; i < A.k(); ++i) {
    long m = A.modulus(i);
    long v = (c % m) * (x[i] % m) % m;
    r[i] = v < 0 ? v + m : v;
  }
  return r;
}

Elt elt_zero(const AbelianGroup& A) { return Elt(A.k(), 0); }

bool elt_is_zero(const Elt& x) {
  for (long v : x)
    if (v)
      return false;
  return true;
}

long elt_order(const AbelianGroup& A, const Elt& x) {
  long o = 1;
  Elt y = x;
  while (!elt_is_zero(y)) {
    y = elt_scale(A, A.p, y);
    o *= A.p;
  }
  return o;
}

Elt elt_apply(const AbelianGroup& B, const ZMat& m, const Elt& x) {
  assert((long)m.cols == B.k() && (long)m.rows == (long)x.size());
  std::vector<ZZ> y(B.k(), 0);
  for (long i = 0; i < (long)m.rows; ++i)
    for (long j = 0; j < B.k(); ++j)
      y[j] += x[i] * m.at(i, j);
  return elt_reduce(B, y);
}

std::vector<Elt> all_elements(const AbelianGroup& A) {
  ZZ n = A.order();
  if (n > 15625)
    throw std::runtime_error("all_elements: group too large");
  std::vector<Elt> out;
  out.reserve(n.get_ui());
  Elt cur = elt_zero(A);
  for (;;) {
    out.push_back(cur);
    long i = A.k() - 1;
    for (; i >= 0; --i) {
      if (++cur[i] < A.modulus(i))
        break;
      cur[i] = 0;
    }
    if (i < 0)
      break;
  }
  return out;
}

bool is_morphism(const AbelianGroup& A, const AbelianGroup& B, const ZMat& m) {
  if ((long)m.rows != A.k() || (long)m.cols != B.k())
    return false;
  for (long i = 0; i < A.k(); ++i)
    for (long j = 0; j < B.k(); ++j) {
      ZZ v = ZZ(A.modulus(i)) * m.at(i, j);
      if (v % B.modulus(j) != 0)
        return false;
    }
  return true;
}

// --- subgroups --------------------------------------------------------------

static ZMat relation_lattice(const AbelianGroup& A) {
  std::vector<ZZ> d(A.k());
  for (long i = 0; i < A.k(); ++i)
    d[i] = A.modulus(i);
  return ZMat::diag(d);
}

ZZ Subgroup::size() const {
  ZZ det = 1;
  for (long i = 0; i < (long)lat.rows; ++i)
    det *= lat.at(i, i);
  return ambient.order() / det;
}

bool Subgroup::contains(const Elt& x) const {
  std::vector<ZZ> b(x.begin(), x.end()), sol;
  return zsolve_left(lat, b, sol);
}

Subgroup subgroup_from_lattice(const AbelianGroup& A, const ZMat& rows) {
  ZMat m = vstack(rows, relation_lattice(A));
  Subgroup s;
  s.ambient = A;
  s.lat = hnf(m);
  assert((long)s.lat.rows == A.k());
  return s;
}

Subgroup subgroup_from_generators(const AbelianGroup& A, const std::vector<Elt>& gens) {
  ZMat g(gens.size(), A.k());
  for (long i = 0; i < (long)gens.size(); ++i)
    for (long j = 0; j < A.k(); ++j)
      g.at(i, j) = gens[i][j];
  if (gens.empty())
    g = ZMat(0, A.k());
  return subgroup_from_lattice(A, g);
}

Subgroup zero_subgroup(const AbelianGroup& A) { return subgroup_from_generators(A, {}); }

Subgroup full_subgroup(const AbelianGroup& A) {
  return subgroup_from_lattice(A, ZMat::identity(A.k()));
}

Subgroup sg_sum(const Subgroup& s, const Subgroup& t) {
  if (!(s.ambient == t.ambient))
    throw std::invalid_argument("sg_sum: ambient mismatch");
  return subgroup_from_lattice(s.ambient, vstack(s.lat, t.lat));
}

Subgroup sg_intersect(const Subgroup& s, const Subgroup& t) {
  if (!(s.ambient == t.ambient))
    throw std::invalid_argument("sg_intersect: ambient mismatch");
  // x = u L_s = v L_t; left kernel of [L_s; -L_t] yields (u, v).
  ZMat neg = t.lat;
  for (auto& v : neg.a)
    v = -v;
  ZMat k = zkernel(vstack(s.lat, neg));
  ZMat basis(k.rows, s.ambient.k());
  for (long r = 0; r < (long)k.rows; ++r)
    for (long j = 0; j < s.ambient.k(); ++j) {
      ZZ acc = 0;
      for (long i = 0; i < (long)s.lat.rows; ++i)
        acc += k.at(r, i) * s.lat.at(i, j);
      basis.at(r, j) = acc;
    }
  return subgroup_from_lattice(s.ambient, basis);
}

bool sg_subset(const Subgroup& s, const Subgroup& t) {
  for (long i = 0; i < (long)s.lat.rows; ++i) {
    std::vector<ZZ> b(s.ambient.k()), sol;
    for (long j = 0; j < s.ambient.k(); ++j)
      b[j] = s.lat.at(i, j);
    if (!zsolve_left(t.lat, b, sol))
      return false;
  }
  return true;
}

std::vector<Elt> sg_generators(const Subgroup& s) {
  std::vector<Elt> out;
  for (long i = 0; i < (long)s.lat.rows; ++i) {
    std::vector<ZZ> row(s.ambient.k());
    for (long j = 0; j < s.ambient.k(); ++j)
      row[j] = s.lat.at(i, j);
    Elt e = elt_reduce(s.ambient, row);
    if (!elt_is_zero(e))
      out.push_back(e);
  }
  return out;
}

std::vector<Elt> sg_elements(const Subgroup& s) {
  std::set<Elt> seen;
  std::vector<Elt> queue = {elt_zero(s.ambient)};
  seen.insert(queue[0]);
  auto gens = sg_generators(s);
  for (std::size_t h = 0; h < queue.size(); ++h) {
    for (const auto& g : gens) {
      Elt n = elt_add(s.ambient, queue[h], g);
      if (seen.insert(n).second)
        queue.push_back(n);
    }
  }
  return std::vector<Elt>(seen.begin(), seen.end());
}

std::vector<Subgroup> enumerate_subgroups(const AbelianGroup& A, const ZZ& max_order) {
  if (A.order() > 15625)
    throw std::runtime_error("enumerate_subgroups: size guard exceeded");
  ZZ bound = max_order == 0 ? A.order() : max_order;
  auto elems = all_elements(A);
  std::set<std::vector<long>> seen;
  auto key = [&](const Subgroup& s) {
    std::vector<long> k;
    for (const auto& v : s.lat.a)
      k.push_back(v.get_si());
    return k;
  };
  std::vector<Subgroup> out, queue;
  Subgroup z = zero_subgroup(A);
  seen.insert(key(z));
  queue.push_back(z);
  out.push_back(z);
  for (std::size_t h = 0; h < queue.size(); ++h) {
    Subgroup cur = queue[h];
    for (const auto& x : elems) {
      if (cur.contains(x))
        continue;
      ZMat g(1, A.k());
      for (long j = 0; j < A.k(); ++j)
        g.at(0, j) = x[j];
      Subgroup n = subgroup_from_lattice(A, vstack(cur.lat, g));
      if (n.size() > bound)
        continue;
      if (seen.insert(key(n)).second) {
        queue.push_back(n);
        out.push_back(n);
      }
    }
  }
  return out;
}

// --- characters and pairings ------------------------------------------------

namespace {
long g_psi0_scale = 1;
} // namespace

long psi0_scale() { return g_psi0_scale; }

void set_psi0_scale(long m) {
  if (m == 0)
    throw std::invalid_argument("psi0 scale must be a unit");
  g_psi0_scale = m;
}

long GroupCharacter::exp_on(const Elt& x) const {
  long E = target.maxExp();
  long mod = 1;
  for (long t = 0; t < E; ++t)
    mod *= target.p;
  long s = 0;
  for (long i = 0; i < target.k(); ++i) {
    long scale = mod / target.modulus(i); // p^{E - e_i}
    s = (s + c[i] % target.modulus(i) * (x[i] % target.modulus(i)) % mod * scale) % mod;
  }
  s = s * (g_psi0_scale % mod) % mod;
  return (s % mod + mod) % mod;
}

Cyc GroupCharacter::eval(const CycField& f, const Elt& x) const {
  long E = target.maxExp();
  long mod = 1;
  for (long t = 0; t < E; ++t)
    mod *= target.p;
  return f.root(mod, exp_on(x));
}

bool GroupCharacter::is_trivial() const {
  for (long i = 0; i < target.k(); ++i)
    if (c[i] % target.modulus(i) != 0)
      return false;
  return true;
}

long Pairing::exp_on(const Elt& x, const Elt& y) const {
  long E = B.maxExp();
  long mod = 1;
  for (long t = 0; t < E; ++t)
    mod *= B.p;
  long s = 0;
  for (long i = 0; i < A.k(); ++i) {
    if (x[i] == 0)
      continue;
    long rowv = 0;
    for (long j = 0; j < B.k(); ++j) {
      long scale = mod / B.modulus(j);
      ZZ term = c.at(i, j) % B.modulus(j) * ZZ(y[j]) * scale;
      rowv = (rowv + (long)mpz_fdiv_ui(term.get_mpz_t(), mod)) % mod;
    }
    s = (s + (x[i] % mod) * rowv) % mod;
  }
  s = s * (g_psi0_scale % mod) % mod;
  return (s % mod + mod) % mod;
}

Cyc Pairing::eval(const CycField& f, const Elt& x, const Elt& y) const {
  long E = B.maxExp();
  long mod = 1;
  for (long t = 0; t < E; ++t)
    mod *= B.p;
  return f.root(mod, exp_on(x, y));
}

bool pairing_valid(const Pairing& w) {
  if ((long)w.c.rows != w.A.k() || (long)w.c.cols != w.B.k())
    return false;
  for (long i = 0; i < w.A.k(); ++i)
    for (long j = 0; j < w.B.k(); ++j) {
      ZZ v = ZZ(w.A.modulus(i)) * w.c.at(i, j);
      if (v % w.B.modulus(j) != 0)
        return false;
    }
  return true;
}

bool pairing_perfect(const Pairing& w) {
  if (!pairing_valid(w))
    return false;
  if (w.A.order() != w.B.order())
    return false;
  // Hom(B, C^x) has the exponents of B; the rows must generate all of it.
  AbelianGroup bhat{w.B.p, w.B.exponents};
  std::vector<Elt> rows;
  for (long i = 0; i < w.A.k(); ++i) {
    std::vector<ZZ> r(w.B.k());
    for (long j = 0; j < w.B.k(); ++j)
      r[j] = w.c.at(i, j);
    rows.push_back(elt_reduce(bhat, r));
  }
  return subgroup_from_generators(bhat, rows) == full_subgroup(bhat);
}

bool pairing_symmetric(const Pairing& w) {
  if (!(w.A == w.B))
    return false;
  for (long i = 0; i < w.A.k(); ++i)
    for (long j = 0; j < w.A.k(); ++j) {
      Elt gi = elt_zero(w.A), gj = elt_zero(w.A);
      gi[i] = 1;
      gj[j] = 1;
      if (w.exp_on(gi, gj) != w.exp_on(gj, gi))
        return false;
    }
  return true;
}

bool pairing_skew(const Pairing& w) {
  if (!(w.A == w.B))
    return false;
  long kk = w.A.k();
  for (long i = 0; i < kk; ++i) {
    Elt gi = elt_zero(w.A);
    gi[i] = 1;
    if (w.exp_on(gi, gi) != 0)
      return false;
    for (long j = i + 1; j < kk; ++j) {
      Elt gj = elt_zero(w.A);
      gj[j] = 1;
      long E = w.B.maxExp();
      long mod = 1;
      for (long t = 0; t < E; ++t)
        mod *= w.B.p;
      if ((w.exp_on(gi, gj) + w.exp_on(gj, gi)) % mod != 0)
        return false;
    }
  }
  return true;
}

Pairing pairing_transpose(const Pairing& w) {
  Pairing t;
  t.A = w.B;
  t.B = w.A;
  t.c = ZMat(w.c.cols, w.c.rows);
  // matching values: c'_{ji} = c_ij * p^{e_i(A) - e_j(B)}, an exact integer
  // because bi-additive well-definedness forces p^{e_j(B)-e_i(A)} | c_ij
  for (long i = 0; i < (long)w.c.rows; ++i)
    for (long j = 0; j < (long)w.c.cols; ++j) {
      ZZ num = w.c.at(i, j) * zpow(w.A.p, w.A.exponents[i]);
      ZZ mj = zpow(w.B.p, w.B.exponents[j]);
      assert(num % mj == 0);
      ZZ mi = zpow(w.A.p, w.A.exponents[i]);
      ZZ val = (num / mj) % mi;
      if (val < 0)
        val += mi;
      t.c.at(j, i) = val;
    }
  return t;
}

Subgroup perp(const Subgroup& s, const Pairing& w) {
  if (!(s.ambient == w.A))
    throw std::invalid_argument("perp: subgroup must live in the left factor");
  long EB = w.B.maxExp();
  ZZ mod = zpow(w.B.p, EB);
  auto gens = sg_generators(s);
  long r = (long)gens.size();
  long kb = w.B.k();
  // a in B with sum_j M(g, j) a_j = 0 mod p^EB for every generator g
  ZMat m(kb, r);
  for (long g = 0; g < r; ++g)
    for (long j = 0; j < kb; ++j) {
      ZZ acc = 0;
      for (long i = 0; i < w.A.k(); ++i)
        acc += ZZ(gens[g][i]) * w.c.at(i, j);
      acc *= zpow(w.B.p, EB - w.B.exponents[j]);
      m.at(j, g) = acc % mod;
    }
  ZMat stacked = vstack(m, [&] {
    ZMat mm = ZMat::identity(r);
    for (auto& v : mm.a)
      v *= mod;
    return mm;
  }());
  ZMat k = zkernel(stacked);
  ZMat basis(k.rows, kb);
  for (long i = 0; i < (long)k.rows; ++i)
    for (long j = 0; j < kb; ++j)
      basis.at(i, j) = k.at(i, j);
  return subgroup_from_lattice(w.B, basis);
}

// --- quotients and subgroup presentations -----------------------------------

static ZMat zinverse(const ZMat& v) {
  ZMat inv(v.rows, v.cols);
  for (long i = 0; i < (long)v.rows; ++i) {
    std::vector<ZZ> e(v.rows, 0), x;
    e[i] = 1;
    if (!zsolve_left(v, e, x))
      throw std::runtime_error("zinverse: matrix not unimodular");
    for (long j = 0; j < (long)v.rows; ++j)
      inv.at(i, j) = x[j];
  }
  return inv;
}

namespace {

long image_order(const AbelianGroup& A, const Subgroup& t, const Elt& x) {
  long o = 1;
  Elt y = x;
  while (!t.contains(y)) {
    y = elt_scale(A, A.p, y);
    o *= A.p;
  }
  return o;
}

// Greedy deterministic pure basis: exponents f_1 >= f_2 >= ... are prescribed;
// candidates are scanned in their natural order at every step, the first one
// whose image modulo the previously chosen vectors has exactly the required
// order is taken and purified (corrected by an element of the span so that
// its own order drops to the required one).
std::vector<Elt> natural_basis(const AbelianGroup& A, const std::vector<long>& exps,
                               const std::vector<Elt>& candidates) {
  std::vector<Elt> chosen;
  Subgroup prev = subgroup_from_generators(A, {});
  for (long f : exps) {
    long want = 1;
    for (long t = 0; t < f; ++t)
      want *= A.p;
    bool found = false;
    for (const auto& c : candidates) {
      if (image_order(A, prev, c) != want)
        continue;
      // purify: find y in <chosen> with p^f y = p^f c, replace c by c - y
      ZMat m(chosen.size(), A.k());
      for (long j = 0; j < (long)chosen.size(); ++j) {
        Elt sc = elt_scale(A, want, chosen[j]);
        for (long t = 0; t < A.k(); ++t)
          m.at(j, t) = sc[t];
      }
      ZMat rel(A.k(), A.k());
      for (long i = 0; i < A.k(); ++i)
        rel.at(i, i) = A.modulus(i);
      Elt target = elt_scale(A, want, c);
      std::vector<ZZ> b(target.begin(), target.end()), sol;
      if (!zsolve_left(vstack(m, rel), b, sol))
        throw std::runtime_error("natural_basis: purification failed");
      Elt bi = c;
      for (long j = 0; j < (long)chosen.size(); ++j) {
        long oj = elt_order(A, chosen[j]);
        long d = (long)mpz_fdiv_ui(sol[j].get_mpz_t(), oj);
        bi = elt_add(A, bi, elt_scale(A, -d, chosen[j]));
      }
      if (elt_order(A, bi) != want)
        throw std::runtime_error("natural_basis: purification order mismatch");
      chosen.push_back(bi);
      prev = subgroup_from_generators(A, chosen);
      found = true;
      break;
    }
    if (!found)
      throw std::runtime_error("natural_basis: no candidate of required order");
  }
  return chosen;
}

} // namespace

Quotient quotient(const AbelianGroup& A, const Subgroup& s) {
  if (!(s.ambient == A))
    throw std::invalid_argument("quotient: ambient mismatch");
  ZMat u, d, v;
  snf(s.lat, u, d, v);
  ZMat vinv = zinverse(v);
  // raw presentation: coordinates y = x v modulo d_i, entries with d_i > 1
  std::vector<long> kept;
  std::vector<long> exps0;
  for (long i = 0; i < (long)d.rows; ++i)
    if (d.at(i, i) > 1) {
      kept.push_back(i);
      long e = 0;
      ZZ t = d.at(i, i);
      while (t > 1) {
        t /= A.p;
        ++e;
      }
      exps0.push_back(e);
    }
  long k0 = (long)kept.size();
  // sorted-exponent raw group (largest first, stable)
  std::vector<long> ord(k0);
  for (long i = 0; i < k0; ++i)
    ord[i] = i;
  std::stable_sort(ord.begin(), ord.end(),
                   [&](long i, long j) { return exps0[i] > exps0[j]; });
  AbelianGroup g0{A.p, {}};
  for (long i : ord)
    g0.exponents.push_back(exps0[i]);
  ZMat proj0(A.k(), k0), sect0(k0, A.k());
  for (long i = 0; i < A.k(); ++i)
    for (long j = 0; j < k0; ++j) {
      ZZ m = d.at(kept[ord[j]], kept[ord[j]]);
      ZZ val = v.at(i, kept[ord[j]]) % m;
      if (val < 0)
        val += m;
      proj0.at(i, j) = val;
    }
  for (long j = 0; j < k0; ++j) {
    std::vector<ZZ> row(A.k());
    for (long t = 0; t < A.k(); ++t)
      row[t] = vinv.at(kept[ord[j]], t);
    Elt e = elt_reduce(A, row);
    for (long t = 0; t < A.k(); ++t)
      sect0.at(j, t) = e[t];
  }
  // natural pure basis of the quotient: images of the ambient basis vectors
  std::vector<Elt> cands;
  for (long i = 0; i < A.k(); ++i) {
    Elt gi = elt_zero(A);
    gi[i] = 1;
    cands.push_back(elt_apply(g0, proj0, gi));
  }
  std::vector<Elt> beta = natural_basis(g0, g0.exponents, cands);
  // change of coordinates: psi expresses the raw generators in the new basis
  ZMat bmat(k0, k0);
  for (long i = 0; i < k0; ++i)
    for (long j = 0; j < k0; ++j)
      bmat.at(i, j) = beta[i][j];
  ZMat rel(k0, k0);
  for (long i = 0; i < k0; ++i)
    rel.at(i, i) = g0.modulus(i);
  ZMat psi(k0, k0);
  for (long j = 0; j < k0; ++j) {
    std::vector<ZZ> e(k0, 0), x;
    e[j] = 1;
    if (!zsolve_left(vstack(bmat, rel), e, x))
      throw std::runtime_error("quotient: basis change failed");
    for (long t = 0; t < k0; ++t)
      psi.at(j, t) = x[t];
  }
  Quotient q;
  q.grp = g0;
  q.proj = ZMat(A.k(), k0);
  for (long i = 0; i < A.k(); ++i) {
    Elt gi = elt_zero(A);
    gi[i] = 1;
    Elt y = elt_apply(g0, proj0, gi);
    Elt z = elt_apply(q.grp, psi, y);
    for (long j = 0; j < k0; ++j)
      q.proj.at(i, j) = z[j];
  }
  q.sect = ZMat(k0, A.k());
  for (long i = 0; i < k0; ++i) {
    Elt lift = elt_apply(A, sect0, beta[i]);
    for (long j = 0; j < A.k(); ++j)
      q.sect.at(i, j) = lift[j];
  }
  q.ker = s;
  return q;
}

SubPresentation sub_presentation(const Subgroup& s) {
  const AbelianGroup& A = s.ambient;
  long kk = A.k();
  // relation matrix: diag(p^{e_i}) = C * L
  ZMat c(kk, kk);
  for (long i = 0; i < kk; ++i) {
    std::vector<ZZ> b(kk, 0), x;
    b[i] = A.modulus(i);
    if (!zsolve_left(s.lat, b, x))
      throw std::runtime_error("sub_presentation: bad lattice");
    for (long j = 0; j < kk; ++j)
      c.at(i, j) = x[j];
  }
  ZMat u, d, v;
  snf(c, u, d, v);
  // invariant factors give the exponents, largest first
  std::vector<long> f;
  for (long i = 0; i < kk; ++i)
    if (d.at(i, i) > 1) {
      long e = 0;
      ZZ t = d.at(i, i);
      while (t > 1) {
        t /= A.p;
        ++e;
      }
      f.push_back(e);
    }
  std::sort(f.begin(), f.end(), std::greater<long>());
  // natural pure basis realizing those orders, scanned from the lattice rows
  std::vector<Elt> cands;
  for (long i = 0; i < kk; ++i) {
    std::vector<ZZ> row(kk);
    for (long j = 0; j < kk; ++j)
      row[j] = s.lat.at(i, j);
    Elt el = elt_reduce(A, row);
    if (!elt_is_zero(el))
      cands.push_back(el);
  }
  std::vector<Elt> beta = natural_basis(A, f, cands);
  SubPresentation out;
  out.grp.p = A.p;
  out.grp.exponents = f;
  out.emb = ZMat(f.size(), kk);
  for (long r = 0; r < (long)f.size(); ++r)
    for (long j = 0; j < kk; ++j)
      out.emb.at(r, j) = beta[r][j];
  return out;
}

Elt sub_coords(const AbelianGroup& A, const SubPresentation& k, const Elt& y) {
  std::vector<ZZ> d(A.k());
  for (long i = 0; i < A.k(); ++i)
    d[i] = A.modulus(i);
  ZMat m = vstack(k.emb, ZMat::diag(d));
  std::vector<ZZ> rhs(A.k()), x;
  for (long j = 0; j < A.k(); ++j)
    rhs[j] = y[j];
  if (!zsolve_left(m, rhs, x))
    throw std::runtime_error("sub_coords: element not in the subgroup");
  std::vector<ZZ> c(x.begin(), x.begin() + k.grp.k());
  return elt_reduce(k.grp, c);
}

long raw_character_exp(const GroupCharacter& f, const Elt& x) {
  const AbelianGroup& A = f.target;
  long mod = 1;
  for (long t = 0; t < A.maxExp(); ++t)
    mod *= A.p;
  long s = 0;
  for (long i = 0; i < A.k(); ++i) {
    long scale = mod / A.modulus(i);
    s = (s + f.c[i] % A.modulus(i) * (x[i] % A.modulus(i)) % mod * scale) % mod;
  }
  return (s % mod + mod) % mod;
}

long raw_pairing_exp(const Pairing& w, const Elt& x, const Elt& y) {
  long mod = 1;
  for (long t = 0; t < w.B.maxExp(); ++t)
    mod *= w.B.p;
  long s = 0;
  for (long i = 0; i < w.A.k(); ++i) {
    if (x[i] == 0)
      continue;
    long rowv = 0;
    for (long j = 0; j < w.B.k(); ++j) {
      long scale = mod / w.B.modulus(j);
      ZZ term = w.c.at(i, j) % w.B.modulus(j) * ZZ(y[j]) * scale;
      rowv = (rowv + (long)mpz_fdiv_ui(term.get_mpz_t(), mod)) % mod;
    }
    s = (s + (x[i] % mod) * rowv) % mod;
  }
  return (s % mod + mod) % mod;
}

DirectSum direct_sum(const std::vector<AbelianGroup>& parts) {
  DirectSum ds;
  ds.grp.p = parts.empty() ? 3 : parts.front().p;
  // stable sort of all (part, coordinate) slots by exponent, largest first
  std::vector<std::pair<long, long>> slots; // (part, coord)
  for (long i = 0; i < (long)parts.size(); ++i) {
    if (parts[i].p != ds.grp.p)
      throw std::invalid_argument("direct_sum: mixed primes");
    for (long j = 0; j < parts[i].k(); ++j)
      slots.emplace_back(i, j);
  }
  std::stable_sort(slots.begin(), slots.end(), [&](const auto& a, const auto& b) {
    return parts[a.first].exponents[a.second] > parts[b.first].exponents[b.second];
  });
  for (const auto& [i, j] : slots)
    ds.grp.exponents.push_back(parts[i].exponents[j]);
  long k = (long)slots.size();
  for (long i = 0; i < (long)parts.size(); ++i) {
    ds.inj.emplace_back(parts[i].k(), k);
    ds.proj.emplace_back(k, parts[i].k());
  }
  for (long t = 0; t < k; ++t) {
    auto [i, j] = slots[t];
    ds.inj[i].at(j, t) = 1;
    ds.proj[i].at(t, j) = 1;
  }
  return ds;
}

// --- canonical filtration and determinant data ------------------------------

std::vector<long> graded_dims(const AbelianGroup& A) {
  std::vector<long> dims(A.maxExp(), 0);
  for (long e : A.exponents)
    for (long n = 0; n < e; ++n)
      ++dims[n];
  return dims;
}

std::vector<long> gr_coords(const AbelianGroup& A, long n, const Elt& x) {
  long pn = 1;
  for (long t = 0; t < n; ++t)
    pn *= A.p;
  std::vector<long> out;
  for (long i = 0; i < A.k(); ++i) {
    if (A.exponents[i] <= n)
      continue;
    if (x[i] % pn != 0)
      throw std::runtime_error("gr_coords: element not in p^n A");
    out.push_back(x[i] / pn % A.p);
  }
  return out;
}

long orientation_of_rows(const AbelianGroup& A, const ZMat& m) {
  if ((long)m.rows != A.k() || (long)m.cols != A.k())
    return 0;
  std::vector<Elt> rows;
  for (long i = 0; i < A.k(); ++i) {
    std::vector<ZZ> r(A.k());
    for (long j = 0; j < A.k(); ++j)
      r[j] = m.at(i, j);
    rows.push_back(elt_reduce(A, r));
  }
  auto dims = graded_dims(A);
  long result = 1;
  for (long n = 0; n < A.maxExp(); ++n) {
    long pn = 1;
    for (long t = 0; t < n; ++t)
      pn *= A.p;
    std::vector<std::vector<long>> mat;
    for (long i = 0; i < A.k(); ++i) {
      if (elt_order(A, rows[i]) <= pn)
        continue;
      mat.push_back(gr_coords(A, n, elt_scale(A, pn, rows[i])));
    }
    if ((long)mat.size() != dims[n])
      return 0;
    FpMat f(A.p, mat.size(), dims[n]);
    for (long i = 0; i < (long)mat.size(); ++i)
      for (long j = 0; j < dims[n]; ++j)
        f.at(i, j) = mat[i][j];
    long det = fp_det(f);
    if (det == 0)
      return 0;
    result = result * det % A.p;
  }
  return result;
}

long det_automorphism(const ZMat& phi, const AbelianGroup& A) {
  if (!is_morphism(A, A, phi))
    throw std::invalid_argument("det_automorphism: not an endomorphism");
  long result = orientation_of_rows(A, phi);
  if (result == 0)
    throw std::invalid_argument("det_automorphism: not invertible");
  return result;
}

long det_pairing(const Pairing& b, const Orientation& oA, const Orientation& oB) {
  if (!pairing_perfect(b))
    throw std::invalid_argument("det_pairing: pairing not perfect");
  const AbelianGroup& A = b.A;
  const AbelianGroup& B = b.B;
  long p = A.p;
  long EB = B.maxExp();
  ZZ mod = zpow(p, EB);
  long ka = A.k(), kb = B.k();
  // v_j in B with b(u_i, v_j) = delta_ij * (character of order p^{d_i});
  // unknown row (v | t) with v * M + t * p^EB = rhs, M(j,i) = c(i,j) p^{EB-e_j(B)}
  ZMat m(kb + ka, ka);
  for (long j = 0; j < kb; ++j)
    for (long i = 0; i < ka; ++i)
      m.at(j, i) = b.c.at(i, j) * zpow(p, EB - B.exponents[j]);
  for (long i = 0; i < ka; ++i)
    m.at(kb + i, i) = mod;
  ZMat vs(ka, kb); // rows v_1, ..., v_m
  for (long i = 0; i < ka; ++i) {
    std::vector<ZZ> rhs(ka, 0), x;
    rhs[i] = zpow(p, EB - A.exponents[i]);
    if (!zsolve_left(m, rhs, x))
      throw std::runtime_error("det_pairing: dual basis solve failed");
    std::vector<ZZ> v(x.begin(), x.begin() + kb);
    Elt el = elt_reduce(B, v);
    for (long j = 0; j < kb; ++j)
      vs.at(i, j) = el[j];
  }
  long c = orientation_of_rows(B, vs);
  if (c == 0)
    throw std::runtime_error("det_pairing: dual sequence degenerate");
  // Koszul sign of the graded duality reversal: (-1)^{sum_{i<j} e_i e_j}
  long cross = 0;
  for (long i = 0; i < kb; ++i)
    for (long j = i + 1; j < kb; ++j)
      cross += B.exponents[i] * B.exponents[j];
  long result = oA.scalar % p * (oB.scalar % p) % p * fp_inv(c, p) % p;
  if (cross % 2)
    result = result * (p - 1) % p;
  return (result + p) % p;
}

} // namespace orbitforge
