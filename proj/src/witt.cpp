#include "orbitforge/witt.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace orbitforge {

namespace {

long pow_long(long p, long e) {
  long r = 1;
  while (e-- > 0)
    r *= p;
  return r;
}

Elt basis_elt(const AbelianGroup& A, long i) {
  Elt e = elt_zero(A);
  e[i] = 1;
  return e;
}

Elt emb_row(const AbelianGroup& A, const ZMat& emb, long i) {
  std::vector<ZZ> r(A.k());
  for (long j = 0; j < A.k(); ++j)
    r[j] = emb.at(i, j);
  return elt_reduce(A, r);
}

// column of the single 1 in row i of a direct-sum injection
long slot(const ZMat& inj, long i) {
  for (long j = 0; j < (long)inj.cols; ++j)
    if (inj.at(i, j) == 1)
      return j;
  throw std::logic_error("slot: malformed injection");
}

long log_p(ZZ v, long p) {
  long l = 0;
  while (v > 1) {
    v /= p;
    ++l;
  }
  return l;
}

} // namespace

QuadraticModule quad_module(const AbelianGroup& A, const ZMat& c) {
  QuadraticModule m{A, Pairing{A, A, c}};
  if (!pairing_valid(m.q) || !pairing_symmetric(m.q) || !pairing_perfect(m.q))
    throw std::invalid_argument("quad_module: need a perfect symmetric pairing");
  return m;
}

QuadraticModule diag_module(long p, const std::vector<long>& as) {
  AbelianGroup A{p, std::vector<long>(as.size(), 1)};
  ZMat c(as.size(), as.size());
  for (std::size_t i = 0; i < as.size(); ++i)
    c.at(i, i) = ((as[i] % p) + p) % p;
  return quad_module(A, c);
}

QuadraticModule dual_module(const QuadraticModule& m) {
  ZMat c = m.q.c;
  for (long i = 0; i < m.A.k(); ++i)
    for (long j = 0; j < m.A.k(); ++j) {
      ZZ mod = m.A.modulus(j);
      c.at(i, j) = ((mod - c.at(i, j)) % mod + mod) % mod;
    }
  return quad_module(m.A, c);
}

QuadraticModule sum_module(const QuadraticModule& m1, const QuadraticModule& m2) {
  DirectSum ds = direct_sum({m1.A, m2.A});
  ZMat c(ds.grp.k(), ds.grp.k());
  const QuadraticModule* parts[2] = {&m1, &m2};
  for (long t = 0; t < 2; ++t)
    for (long i = 0; i < parts[t]->A.k(); ++i)
      for (long j = 0; j < parts[t]->A.k(); ++j)
        c.at(slot(ds.inj[t], i), slot(ds.inj[t], j)) = parts[t]->q.c.at(i, j);
  return quad_module(ds.grp, c);
}

long discriminant(const QuadraticModule& m) {
  return square_class(det_pairing(m.q, Orientation{1}, Orientation{1}), m.A.p);
}

WittClass witt_class(const QuadraticModule& m) {
  return {m.A.p, m.A.len() % 2, discriminant(m)};
}

WittClass witt_class_reduce(const QuadraticModule& m) {
  long p = m.A.p;
  QuadraticModule cur = m;
  while (cur.A.maxExp() > 1) {
    const AbelianGroup& A = cur.A;
    long n = A.maxExp();
    long pn1 = pow_long(p, n - 1);
    std::vector<Elt> gens;
    for (long i = 0; i < A.k(); ++i)
      gens.push_back(elt_scale(A, pn1, basis_elt(A, i)));
    Subgroup S = subgroup_from_generators(A, gens);
    Subgroup P = perp(S, cur.q);
    SubPresentation k = sub_presentation(P);
    std::vector<Elt> sk;
    for (const auto& g : sg_generators(S))
      sk.push_back(sub_coords(A, k, g));
    Quotient qt = quotient(k.grp, subgroup_from_generators(k.grp, sk));
    long mod = pow_long(p, n);
    ZMat c(qt.grp.k(), qt.grp.k());
    std::vector<Elt> lift(qt.grp.k());
    for (long i = 0; i < qt.grp.k(); ++i)
      lift[i] = elt_apply(A, k.emb, elt_apply(k.grp, qt.sect, basis_elt(qt.grp, i)));
    for (long i = 0; i < qt.grp.k(); ++i)
      for (long j = 0; j < qt.grp.k(); ++j) {
        long a = raw_pairing_exp(cur.q, lift[i], lift[j]);
        long scale = mod / qt.grp.modulus(j);
        if (a % scale)
          throw std::logic_error("witt_class_reduce: contracted form ill-defined");
        c.at(i, j) = a / scale;
      }
    cur = quad_module(qt.grp, c);
  }
  long d0 = cur.A.k();
  std::vector<std::vector<long>> g(d0, std::vector<long>(d0));
  for (long i = 0; i < d0; ++i)
    for (long j = 0; j < d0; ++j)
      g[i][j] = (long)mpz_fdiv_ui(cur.q.c.at(i, j).get_mpz_t(), p);
  // symmetric Gram-Schmidt over F_p with first-nonisotropic pivoting
  std::vector<long> diag;
  while (!g.empty()) {
    long n = (long)g.size();
    long piv = -1;
    for (long i = 0; i < n && piv < 0; ++i)
      if (g[i][i] % p)
        piv = i;
    if (piv < 0) {
      long bi = -1, bj = -1;
      for (long i = 0; i < n && bi < 0; ++i)
        for (long j = i + 1; j < n && bi < 0; ++j)
          if (g[i][j] % p) {
            bi = i;
            bj = j;
          }
      if (bi < 0)
        throw std::logic_error("witt_class_reduce: degenerate residual form");
      for (long t = 0; t < n; ++t)
        g[bi][t] = (g[bi][t] + g[bj][t]) % p;
      for (long t = 0; t < n; ++t)
        g[t][bi] = (g[t][bi] + g[t][bj]) % p;
      piv = bi;
    }
    long a = ((g[piv][piv] % p) + p) % p;
    diag.push_back(a);
    long ainv = fp_inv(a, p);
    std::vector<long> rest;
    for (long t = 0; t < n; ++t)
      if (t != piv)
        rest.push_back(t);
    std::vector<std::vector<long>> nx(rest.size(), std::vector<long>(rest.size()));
    for (std::size_t r = 0; r < rest.size(); ++r)
      for (std::size_t s = 0; s < rest.size(); ++s) {
        long v = g[rest[r]][rest[s]] -
                 g[rest[r]][piv] % p * ainv % p * g[piv][rest[s]] % p;
        nx[r][s] = ((v % p) + p) % p;
      }
    g = std::move(nx);
  }
  long d = (long)diag.size();
  long prod = 1;
  for (long a : diag)
    prod = prod * a % p;
  if ((d * (d - 1) / 2) % 2)
    prod = prod * (p - 1) % p;
  return {p, d % 2, square_class(prod, p)};
}

WittClass w0_identity(long p) { return {p, 0, 1}; }

WittClass w0_mul(const WittClass& a, const WittClass& b) {
  if (a.p != b.p)
    throw std::invalid_argument("w0_mul: mixed primes");
  long p = a.p;
  long d = a.disc % p * (b.disc % p) % p;
  if (a.parity % 2 && b.parity % 2)
    d = d * (p - 1) % p;
  return {p, (a.parity + b.parity) % 2, square_class(d, p)};
}

WittClass w0_inv(const WittClass& a) {
  long d = a.parity % 2 ? square_class(a.disc * (a.p - 1) % a.p, a.p) : a.disc;
  return {a.p, a.parity % 2, d};
}

QuadraticModule qm_realize(const WittClass& c) {
  if (c.parity % 2)
    return diag_module(c.p, {c.disc});
  return diag_module(c.p, {c.p - 1, c.disc});
}

QuadraticModule maslov_data(const LagrangianTuple& t) {
  const AbelianGroup& A = t.A;
  long m = (long)t.L.size();
  if (m == 0)
    throw std::invalid_argument("maslov_data: empty tuple");
  for (const auto& l : t.L)
    if (!(perp(l, t.omega) == l))
      throw std::invalid_argument("maslov_data: subgroup is not Lagrangian");
  std::vector<SubPresentation> k(m);
  std::vector<AbelianGroup> parts(m);
  for (long i = 0; i < m; ++i) {
    k[i] = sub_presentation(t.L[i]);
    parts[i] = k[i].grp;
  }
  DirectSum ds = direct_sum(parts);
  long kd = ds.grp.k();
  // kernel of the summation map (+) L_i -> A
  ZMat sig(kd, A.k());
  for (long i = 0; i < m; ++i) {
    ZMat part = zmul(ds.proj[i], k[i].emb);
    for (long r = 0; r < kd; ++r)
      for (long c = 0; c < A.k(); ++c)
        sig.at(r, c) = sig.at(r, c) + part.at(r, c);
  }
  std::vector<ZZ> rel(A.k());
  for (long i = 0; i < A.k(); ++i)
    rel[i] = A.modulus(i);
  ZMat kerRows = zkernel(vstack(sig, ZMat::diag(rel)));
  std::vector<Elt> kerGens;
  for (long r = 0; r < (long)kerRows.rows; ++r) {
    std::vector<ZZ> v(kerRows.a.begin() + r * kerRows.cols,
                      kerRows.a.begin() + r * kerRows.cols + kd);
    kerGens.push_back(elt_reduce(ds.grp, v));
  }
  Subgroup kerS = subgroup_from_generators(ds.grp, kerGens);
  // image of the boundary L_i∩L_{i+1} -> L_i (+) L_{i+1}, a -> (a, -a)
  std::vector<Elt> imGens;
  for (long i = 0; i < m; ++i) {
    long nx = (i + 1) % m;
    for (const auto& g : sg_generators(sg_intersect(t.L[i], t.L[nx]))) {
      Elt v = elt_apply(ds.grp, ds.inj[i], sub_coords(A, k[i], g));
      Elt w = elt_apply(ds.grp, ds.inj[nx], sub_coords(A, k[nx], g));
      imGens.push_back(elt_add(ds.grp, v, elt_neg(ds.grp, w)));
    }
  }
  Subgroup imS = subgroup_from_generators(ds.grp, imGens);
  if (!sg_subset(imS, kerS))
    throw std::logic_error("maslov_data: boundary image escapes the kernel");
  SubPresentation kk = sub_presentation(kerS);
  std::vector<Elt> imK;
  for (const auto& g : sg_generators(imS))
    imK.push_back(sub_coords(ds.grp, kk, g));
  Quotient qt = quotient(kk.grp, subgroup_from_generators(kk.grp, imK));
  const AbelianGroup& T = qt.grp;
  long mod = pow_long(A.p, A.maxExp());
  auto components = [&](const Elt& x) {
    std::vector<Elt> out(m);
    for (long i = 0; i < m; ++i)
      out[i] = elt_apply(A, k[i].emb, elt_apply(k[i].grp, ds.proj[i], x));
    return out;
  };
  ZMat c(T.k(), T.k());
  for (long a = 0; a < T.k(); ++a) {
    Elt xa = elt_apply(ds.grp, kk.emb, elt_apply(kk.grp, qt.sect, basis_elt(T, a)));
    auto xs = components(xa);
    for (long b = 0; b < T.k(); ++b) {
      Elt yb = elt_apply(ds.grp, kk.emb, elt_apply(kk.grp, qt.sect, basis_elt(T, b)));
      auto ys = components(yb);
      long s = 0;
      for (long i = 0; i < m; ++i)
        for (long j = 0; j < i; ++j)
          s = (s + raw_pairing_exp(t.omega, xs[i], ys[j])) % mod;
      long scale = mod / T.modulus(b);
      if (s % scale)
        throw std::logic_error("maslov_data: pairing not defined on the homology");
      c.at(a, b) = s / scale;
    }
  }
  return quad_module(T, c);
}

WittClass maslov_index(const LagrangianTuple& t) { return witt_class(maslov_data(t)); }

long theta_lagrangians(const AbelianGroup& A, const Pairing& B,
                       const OrientedLagrangian& ol1, const OrientedLagrangian& ol2,
                       const Orientation& obar) {
  long p = A.p;
  long mod = pow_long(p, A.maxExp());
  long obs = ((obar.scalar % p) + p) % p;
  if (obs == 0)
    throw std::invalid_argument("theta_lagrangians: degenerate auxiliary orientation");
  Subgroup p12 = sg_intersect(ol1.sub, ol2.sub);
  SubPresentation k12 = sub_presentation(p12);

  struct Side {
    SubPresentation k;
    Quotient q;
    long scalar;
  };
  auto make = [&](const OrientedLagrangian& ol) {
    Side s;
    s.k = sub_presentation(ol.sub);
    std::vector<Elt> co;
    for (const auto& g : sg_generators(p12))
      co.push_back(sub_coords(A, s.k, g));
    Subgroup inK = subgroup_from_generators(s.k.grp, co);
    s.q = quotient(s.k.grp, inK);
    long lam = exact_sequence_factor(inK, s.q);
    // transfer the canonical basis of p12-inside-L to the fixed one on p12
    SubPresentation mm = sub_presentation(inK);
    ZMat rows(k12.grp.k(), k12.grp.k());
    for (long i = 0; i < mm.grp.k(); ++i) {
      Elt amb = elt_apply(A, s.k.emb, emb_row(s.k.grp, mm.emb, i));
      Elt cc = sub_coords(A, k12, amb);
      for (long j = 0; j < k12.grp.k(); ++j)
        rows.at(i, j) = cc[j];
    }
    long mu = orientation_of_rows(k12.grp, rows);
    if (mu == 0)
      throw std::runtime_error("theta_lagrangians: basis transfer degenerate");
    long sc = ((ol.o.scalar % p) + p) % p;
    if (sc == 0)
      throw std::invalid_argument("theta_lagrangians: degenerate orientation");
    s.scalar = sc * lam % p * mu % p * fp_inv(obs, p) % p;
    return s;
  };
  Side s1 = make(ol1), s2 = make(ol2);

  ZMat c(s1.q.grp.k(), s2.q.grp.k());
  for (long i = 0; i < s1.q.grp.k(); ++i) {
    Elt xi = elt_apply(A, s1.k.emb, elt_apply(s1.k.grp, s1.q.sect, basis_elt(s1.q.grp, i)));
    for (long j = 0; j < s2.q.grp.k(); ++j) {
      Elt yj = elt_apply(A, s2.k.emb, elt_apply(s2.k.grp, s2.q.sect, basis_elt(s2.q.grp, j)));
      long a = raw_pairing_exp(B, xi, yj);
      long scale = mod / s2.q.grp.modulus(j);
      if (a % scale)
        throw std::invalid_argument("theta_lagrangians: induced pairing ill-defined");
      c.at(i, j) = a / scale;
    }
  }
  Pairing b{s1.q.grp, s2.q.grp, c};
  if (!pairing_valid(b) || !pairing_perfect(b))
    throw std::invalid_argument("theta_lagrangians: induced pairing not perfect");
  long t = det_pairing(b, Orientation{s1.scalar}, Orientation{s2.scalar});
  return square_class(t, p);
}

WittClass theta_class(const AbelianGroup& A, const Pairing& omega,
                      const OrientedLagrangian& l1, const OrientedLagrangian& l2) {
  ZZ q = l1.sub.size() / sg_intersect(l1.sub, l2.sub).size();
  return {A.p, log_p(q, A.p) % 2, theta_lagrangians(A, omega, l1, l2)};
}

Cyc gamma(const QuadraticModule& m, const CycField& F) {
  const AbelianGroup& A = m.A;
  Cyc s = F.zero();
  for (const auto& a : all_elements(A)) {
    Elt h(a.size());
    for (long i = 0; i < A.k(); ++i)
      h[i] = a[i] * fp_pow_inv(2, A.modulus(i)) % A.modulus(i);
    s += m.q.eval(F, a, h);
  }
  return s * F.inv_sqrt_pow(A.len());
}

Cyc gamma_unit(long a, long p, const CycField& F) { return gamma(diag_module(p, {a}), F); }

Cyc gamma_class(const WittClass& c, const CycField& F) {
  Cyc gd = gamma_unit(c.disc, c.p, F);
  if (c.parity % 2)
    return gd;
  return gd * gamma_unit(1, c.p, F).conj();
}

QuadraticModule correspondence_module(const QuadraticModule& m1, const QuadraticModule& m2) {
  return sum_module(dual_module(m1), m2);
}

Subgroup compose_correspondence(const QuadraticModule& m1, const QuadraticModule& m2,
                                const QuadraticModule& m3, const Subgroup& L21,
                                const Subgroup& L32) {
  DirectSum d12 = direct_sum({m1.A, m2.A});
  DirectSum d23 = direct_sum({m2.A, m3.A});
  DirectSum d13 = direct_sum({m1.A, m3.A});
  if (!(L21.ambient == d12.grp) || !(L32.ambient == d23.grp))
    throw std::invalid_argument("compose_correspondence: wrong ambient coordinates");
  if (!(perp(L21, correspondence_module(m1, m2).q) == L21) ||
      !(perp(L32, correspondence_module(m2, m3).q) == L32))
    throw std::invalid_argument("compose_correspondence: input not Lagrangian");
  std::map<Elt, std::vector<Elt>> byMiddle;
  for (const auto& x : sg_elements(L21))
    byMiddle[elt_apply(m2.A, d12.proj[1], x)].push_back(elt_apply(m1.A, d12.proj[0], x));
  std::vector<Elt> gens;
  for (const auto& y : sg_elements(L32)) {
    auto it = byMiddle.find(elt_apply(m2.A, d23.proj[0], y));
    if (it == byMiddle.end())
      continue;
    Elt cpart = elt_apply(m3.A, d23.proj[1], y);
    for (const auto& a : it->second)
      gens.push_back(elt_add(d13.grp, elt_apply(d13.grp, d13.inj[0], a),
                             elt_apply(d13.grp, d13.inj[1], cpart)));
  }
  Subgroup out = subgroup_from_generators(d13.grp, gens);
  if (!(perp(out, correspondence_module(m1, m3).q) == out))
    throw std::runtime_error("compose_correspondence: composite not Lagrangian");
  return out;
}

} // namespace orbitforge
