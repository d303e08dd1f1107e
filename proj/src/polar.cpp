#include "orbitforge/polar.hpp"

#include "orbitforge/witt.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <stdexcept>

namespace orbitforge {

namespace {

long pow_long(long p, long e) {
  long r = 1;
  while (e-- > 0)
    r *= p;
  return r;
}

ZMat relation_rows(const AbelianGroup& A) {
  std::vector<ZZ> d(A.k());
  for (long i = 0; i < A.k(); ++i)
    d[i] = A.modulus(i);
  return ZMat::diag(d);
}

Elt emb_row(const AbelianGroup& A, const ZMat& emb, long i) {
  std::vector<ZZ> r(A.k());
  for (long j = 0; j < A.k(); ++j)
    r[j] = emb.at(i, j);
  return elt_reduce(A, r);
}

Elt basis_elt(const AbelianGroup& A, long i) {
  Elt e = elt_zero(A);
  e[i] = 1;
  return e;
}

void collapse_repeats(std::vector<Subgroup>& v) {
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

} // namespace

SkewForm skew_form(const LieRing& L, const GroupCharacter& f) {
  const AbelianGroup& A = L.carrier;
  long mod = pow_long(A.p, A.maxExp());
  ZMat c(A.k(), A.k());
  long zOrd = 1;
  for (long i = 0; i < A.k(); ++i)
    for (long j = 0; j < A.k(); ++j) {
      long a = raw_character_exp(f, L.table[i][j]);
      long scale = mod / A.modulus(j);
      if (a % scale)
        throw std::logic_error("skew_form: exponent not a p^{e_j}-th root");
      c.at(i, j) = a / scale;
      if (a)
        zOrd = std::max(zOrd, mod / std::gcd(a, mod));
    }
  SkewForm sf;
  sf.form = Pairing{A, A, c};
  sf.kernel = perp(full_subgroup(A), sf.form);
  sf.zExp = 0;
  for (long t = 1; t < zOrd; t *= A.p)
    ++sf.zExp;
  return sf;
}

Subgroup lie_center(const LieRing& L) {
  const AbelianGroup& A = L.carrier;
  std::vector<Elt> gens;
  for (const auto& x : all_elements(A)) {
    bool central = true;
    for (long i = 0; central && i < A.k(); ++i)
      central = elt_is_zero(lie_bracket(L, basis_elt(A, i), x));
    if (central)
      gens.push_back(x);
  }
  return subgroup_from_generators(A, gens);
}

Subgroup character_kernel(const AbelianGroup& A, const GroupCharacter& f) {
  // ker f = perp of the pairing Z/p^E x A, (t, y) -> f(y)^t
  AbelianGroup one{A.p, {std::max<long>(A.maxExp(), 1)}};
  ZMat c(1, A.k());
  for (long j = 0; j < A.k(); ++j)
    c.at(0, j) = f.c[j];
  Pairing w{one, A, c};
  return perp(full_subgroup(one), w);
}

PolarizationCert is_polarization(const LieRing& L, const GroupCharacter& f, const Subgroup& s) {
  const AbelianGroup& A = L.carrier;
  PolarizationCert cert;
  cert.sub = s;
  cert.subring = true;
  cert.isotropic = true;
  auto gens = sg_generators(s);
  for (const auto& a : gens)
    for (const auto& b : gens) {
      Elt br = lie_bracket(L, a, b);
      if (!s.contains(br))
        cert.subring = false;
      if (raw_character_exp(f, br) != 0)
        cert.isotropic = false;
    }
  SkewForm sf = skew_form(L, f);
  cert.maximal = s.size() * s.size() == A.order() * sf.kernel.size();
  return cert;
}

std::vector<Subgroup> all_polarizations(const LieRing& L, const GroupCharacter& f) {
  const AbelianGroup& A = L.carrier;
  if (A.order() > zpow(5, 4))
    throw std::invalid_argument("all_polarizations: ring too large for the exhaustive oracle");
  std::vector<Subgroup> out;
  for (const auto& s : enumerate_subgroups(A))
    if (is_polarization(L, f, s).ok())
      out.push_back(s);
  return out;
}

LieSubring sub_lie_ring(const LieRing& L, const GroupCharacter& f, const Subgroup& s) {
  const AbelianGroup& A = L.carrier;
  SubPresentation k = sub_presentation(s);
  long ks = k.grp.k();
  std::vector<std::tuple<long, long, Elt>> brackets;
  for (long i = 0; i < ks; ++i)
    for (long j = i + 1; j < ks; ++j) {
      Elt b = lie_bracket(L, emb_row(A, k.emb, i), emb_row(A, k.emb, j));
      if (!s.contains(b))
        throw std::invalid_argument("sub_lie_ring: subgroup not closed under the bracket");
      brackets.emplace_back(i, j, sub_coords(A, k, b));
    }
  LieSubring out;
  out.ring = lie_ring(k.grp, brackets);
  LieReport rep = validate(out.ring);
  if (!rep.ok)
    throw std::invalid_argument("sub_lie_ring: restricted table is not a Lie ring");
  out.emb = k.emb;
  out.f.target = k.grp;
  long mod = pow_long(A.p, A.maxExp());
  for (long i = 0; i < ks; ++i) {
    long a = raw_character_exp(f, emb_row(A, k.emb, i));
    long scale = mod / k.grp.modulus(i);
    assert(a % scale == 0);
    out.f.c.push_back(a / scale);
  }
  return out;
}

LieQuotientRing quotient_lie_ring(const LieRing& L, const GroupCharacter& f,
                                  const Subgroup& ideal) {
  const AbelianGroup& A = L.carrier;
  for (const auto& v : sg_generators(ideal)) {
    if (raw_character_exp(f, v) != 0)
      throw std::invalid_argument("quotient_lie_ring: functional not trivial on the ideal");
    for (long i = 0; i < A.k(); ++i)
      if (!ideal.contains(lie_bracket(L, basis_elt(A, i), v)))
        throw std::invalid_argument("quotient_lie_ring: subgroup is not an ideal");
  }
  LieQuotientRing out;
  out.q = quotient(A, ideal);
  long kq = out.q.grp.k();
  std::vector<Elt> lift(kq);
  for (long i = 0; i < kq; ++i)
    lift[i] = elt_apply(A, out.q.sect, basis_elt(out.q.grp, i));
  std::vector<std::tuple<long, long, Elt>> brackets;
  for (long i = 0; i < kq; ++i)
    for (long j = i + 1; j < kq; ++j)
      brackets.emplace_back(i, j,
                            elt_apply(out.q.grp, out.q.proj, lie_bracket(L, lift[i], lift[j])));
  out.ring = lie_ring(out.q.grp, brackets);
  LieReport rep = validate(out.ring);
  if (!rep.ok)
    throw std::invalid_argument("quotient_lie_ring: quotient table is not a Lie ring");
  out.f.target = out.q.grp;
  long mod = pow_long(A.p, A.maxExp());
  for (long i = 0; i < kq; ++i) {
    long a = raw_character_exp(f, lift[i]);
    long scale = mod / out.q.grp.modulus(i);
    assert(a % scale == 0);
    out.f.c.push_back(a / scale);
  }
  return out;
}

namespace {

// First scan element x with [g, x] ⊆ Z(g) and x outside Ker B_f; scanned over
// the lower central series deepest-first, then over all elements.
Elt descent_element(const LieRing& L, const SkewForm& sf, const Subgroup& cen) {
  const AbelianGroup& A = L.carrier;
  auto good = [&](const Elt& x) {
    if (sf.kernel.contains(x))
      return false;
    for (long i = 0; i < A.k(); ++i)
      if (!cen.contains(lie_bracket(L, basis_elt(A, i), x)))
        return false;
    return true;
  };
  auto series = lower_central_series(L);
  for (auto it = series.rbegin(); it != series.rend(); ++it)
    for (const auto& g : sg_generators(*it))
      if (good(g))
        return g;
  for (const auto& x : all_elements(A))
    if (good(x))
      return x;
  throw std::runtime_error("descent_element: no reduction step available");
}

} // namespace

Subgroup find_polarization(const LieRing& L, const GroupCharacter& f) {
  const AbelianGroup& A = L.carrier;
  Subgroup cen = lie_center(L);
  Subgroup g0 = sg_intersect(cen, character_kernel(A, f));
  if (g0.size() > 1) {
    LieQuotientRing Q = quotient_lie_ring(L, f, g0);
    std::vector<Elt> gens = sg_generators(g0);
    for (const auto& g : sg_generators(find_polarization(Q.ring, Q.f)))
      gens.push_back(elt_apply(A, Q.q.sect, g));
    return subgroup_from_generators(A, gens);
  }
  if (cen == full_subgroup(A))
    return full_subgroup(A);
  SkewForm sf = skew_form(L, f);
  Elt x = descent_element(L, sf, cen);
  Subgroup h = perp(subgroup_from_generators(A, {x}), sf.form);
  LieSubring S = sub_lie_ring(L, f, h);
  std::vector<Elt> gens;
  for (const auto& g : sg_generators(find_polarization(S.ring, S.f)))
    gens.push_back(elt_apply(A, S.emb, g));
  return subgroup_from_generators(A, gens);
}

bool neighbor_check(const LieRing& L, const Subgroup& p1, const Subgroup& p2) {
  Subgroup meet = sg_intersect(p1, p2);
  for (const auto& a : sg_generators(p1))
    for (const auto& b : sg_generators(p2))
      if (!meet.contains(lie_bracket(L, a, b)))
        return false;
  return true;
}

std::vector<Subgroup> neighbor_chain(const LieRing& L, const GroupCharacter& f,
                                     const Subgroup& p1, const Subgroup& p2) {
  if (p1 == p2)
    return {p1};
  if (neighbor_check(L, p1, p2))
    return {p1, p2};
  const AbelianGroup& A = L.carrier;
  Subgroup cen = lie_center(L);
  Subgroup g0 = sg_intersect(cen, character_kernel(A, f));
  if (g0.size() > 1) {
    LieQuotientRing Q = quotient_lie_ring(L, f, g0);
    auto push = [&](const Subgroup& s) {
      std::vector<Elt> gens;
      for (const auto& g : sg_generators(s))
        gens.push_back(elt_apply(Q.q.grp, Q.q.proj, g));
      return subgroup_from_generators(Q.q.grp, gens);
    };
    std::vector<Subgroup> out;
    for (const auto& s : neighbor_chain(Q.ring, Q.f, push(p1), push(p2))) {
      std::vector<Elt> gens = sg_generators(g0);
      for (const auto& g : sg_generators(s))
        gens.push_back(elt_apply(A, Q.q.sect, g));
      out.push_back(subgroup_from_generators(A, gens));
    }
    collapse_repeats(out);
    return out;
  }
  SkewForm sf = skew_form(L, f);
  Elt x = descent_element(L, sf, cen);
  Subgroup h = perp(subgroup_from_generators(A, {x}), sf.form);
  Subgroup hp = perp(h, sf.form);
  Subgroup q1 = sg_sum(sg_intersect(p1, h), hp);
  Subgroup q2 = sg_sum(sg_intersect(p2, h), hp);
  LieSubring S = sub_lie_ring(L, f, h);
  SubPresentation hk{S.ring.carrier, S.emb};
  auto to_h = [&](const Subgroup& s) {
    std::vector<Elt> gens;
    for (const auto& g : sg_generators(s))
      gens.push_back(sub_coords(A, hk, g));
    return subgroup_from_generators(S.ring.carrier, gens);
  };
  std::vector<Subgroup> out = {p1};
  for (const auto& s : neighbor_chain(S.ring, S.f, to_h(q1), to_h(q2))) {
    std::vector<Elt> gens;
    for (const auto& g : sg_generators(s))
      gens.push_back(elt_apply(A, S.emb, g));
    out.push_back(subgroup_from_generators(A, gens));
  }
  out.push_back(p2);
  collapse_repeats(out);
  return out;
}

LieRing heisenberg_ring(const AbelianGroup& A, const Pairing& omega) {
  if (omega.A != A || omega.B != A || !pairing_valid(omega) || !pairing_skew(omega))
    throw std::invalid_argument("heisenberg_ring: need a skew pairing on A");
  if (A.k() > 0 && !pairing_perfect(omega))
    throw std::invalid_argument("heisenberg_ring: pairing must be symplectic");
  long d = A.maxExp();
  AbelianGroup C{A.p, {}};
  if (d > 0)
    C.exponents.push_back(d);
  for (long e : A.exponents)
    C.exponents.push_back(e);
  long mod = pow_long(A.p, d);
  std::vector<std::tuple<long, long, Elt>> brackets;
  for (long i = 0; i < A.k(); ++i)
    for (long j = i + 1; j < A.k(); ++j) {
      // omega(a_i, a_j) = zeta_{p^{e_j}}^{c_ij} = zeta_{p^d}^t in the z slot
      ZZ t = omega.c.at(i, j) * (mod / A.modulus(j));
      Elt v = elt_zero(C);
      v[0] = (long)mpz_fdiv_ui(t.get_mpz_t(), mod);
      brackets.emplace_back(i + 1, j + 1, v);
    }
  LieRing R = lie_ring(C, brackets);
  LieReport rep = validate(R);
  if (!rep.ok)
    throw std::logic_error("heisenberg_ring: constructed table invalid");
  return R;
}

HeisenbergData heisenberg_reduction(const LieRing& L, const GroupCharacter& f) {
  const AbelianGroup& A = L.carrier;
  HeisenbergData H;
  H.sf = skew_form(L, f);
  H.toBar = quotient(A, H.sf.kernel);
  const AbelianGroup& Ab = H.toBar.grp;
  long mod = pow_long(A.p, A.maxExp());
  std::vector<Elt> lift(Ab.k());
  for (long i = 0; i < Ab.k(); ++i)
    lift[i] = elt_apply(A, H.toBar.sect, basis_elt(Ab, i));
  ZMat c(Ab.k(), Ab.k());
  for (long i = 0; i < Ab.k(); ++i)
    for (long j = 0; j < Ab.k(); ++j) {
      long a = raw_character_exp(f, lie_bracket(L, lift[i], lift[j]));
      long scale = mod / Ab.modulus(j);
      if (a % scale)
        throw std::logic_error("heisenberg_reduction: induced form ill-defined");
      c.at(i, j) = a / scale;
    }
  H.omega = Pairing{Ab, Ab, c};
  H.ring = heisenberg_ring(Ab, H.omega);
  H.fbar.target = H.ring.carrier;
  H.fbar.c.assign(H.ring.carrier.k(), 0);
  if (H.ring.carrier.k() > Ab.k())
    H.fbar.c[0] = 1;
  return H;
}

Subgroup reduce_polarization(const HeisenbergData& H, const Subgroup& p) {
  const AbelianGroup& C = H.ring.carrier;
  const AbelianGroup& Ab = H.toBar.grp;
  long shift = C.k() - Ab.k();
  std::vector<Elt> gens;
  if (shift)
    gens.push_back(basis_elt(C, 0));
  for (const auto& g : sg_generators(p)) {
    Elt ab = elt_apply(Ab, H.toBar.proj, g);
    Elt v = elt_zero(C);
    for (long j = 0; j < Ab.k(); ++j)
      v[j + shift] = ab[j];
    gens.push_back(v);
  }
  return subgroup_from_generators(C, gens);
}

long square_class(long x, long p) {
  x %= p;
  if (x < 0)
    x += p;
  if (x == 0)
    throw std::invalid_argument("square_class: zero is not a unit");
  auto legendre = [&](long a) {
    long r = 1, b = a % p, e = (p - 1) / 2;
    while (e) {
      if (e & 1)
        r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return r;
  };
  if (legendre(x) == 1)
    return 1;
  for (long r = 2;; ++r)
    if (legendre(r) != 1)
      return r;
}

long relative_orientation(const LieRing& L, const GroupCharacter& f,
                          const OrientedPolarization& op1, const OrientedPolarization& op2,
                          const Orientation& obar) {
  SkewForm sf = skew_form(L, f);
  return theta_lagrangians(L.carrier, sf.form, OrientedLagrangian{op1.sub, op1.o},
                           OrientedLagrangian{op2.sub, op2.o}, obar);
}

OrientedPolarization reduce_orientation(const LieRing& L, const HeisenbergData& H,
                                        const OrientedPolarization& op,
                                        const Orientation& oKer, const Orientation& oZ) {
  const AbelianGroup& A = L.carrier;
  long p = A.p;
  long oks = ((oKer.scalar % p) + p) % p;
  long ozs = ((oZ.scalar % p) + p) % p;
  long os = ((op.o.scalar % p) + p) % p;
  if (oks == 0 || ozs == 0 || os == 0)
    throw std::invalid_argument("reduce_orientation: degenerate orientation");

  // det(p) = det(Ker B_f) ⊗ det(p / Ker B_f)
  SubPresentation kp = sub_presentation(op.sub);
  SubPresentation kKer = sub_presentation(H.sf.kernel);
  std::vector<Elt> kin;
  for (const auto& g : sg_generators(H.sf.kernel))
    kin.push_back(sub_coords(A, kp, g));
  Subgroup kInP = subgroup_from_generators(kp.grp, kin);
  Quotient qA = quotient(kp.grp, kInP);
  long lamA = exact_sequence_factor(kInP, qA);
  SubPresentation mK = sub_presentation(kInP);
  ZMat rowsK(kKer.grp.k(), kKer.grp.k());
  for (long i = 0; i < mK.grp.k(); ++i) {
    Elt amb = elt_apply(A, kp.emb, emb_row(kp.grp, mK.emb, i));
    Elt cc = sub_coords(A, kKer, amb);
    for (long j = 0; j < kKer.grp.k(); ++j)
      rowsK.at(i, j) = cc[j];
  }
  long muK = orientation_of_rows(kKer.grp, rowsK);
  if (muK == 0)
    throw std::runtime_error("reduce_orientation: kernel basis transfer degenerate");
  long oPK = os * lamA % p * muK % p * fp_inv(oks, p) % p;

  // det(p^f) = det(z) ⊗ det(p^f / z)
  Subgroup pf = reduce_polarization(H, op.sub);
  const AbelianGroup& C = H.ring.carrier;
  const AbelianGroup& Ab = H.toBar.grp;
  long shift = C.k() - Ab.k();
  SubPresentation kpf = sub_presentation(pf);
  AbelianGroup zGrp{p, {}};
  std::vector<Elt> zin;
  if (shift) {
    zGrp.exponents.push_back(C.exponents[0]);
    zin.push_back(sub_coords(C, kpf, basis_elt(C, 0)));
  }
  Subgroup zInPf = subgroup_from_generators(kpf.grp, zin);
  Quotient qB = quotient(kpf.grp, zInPf);
  long lamB = exact_sequence_factor(zInPf, qB);
  SubPresentation mZ = sub_presentation(zInPf);
  ZMat rowsZ(zGrp.k(), zGrp.k());
  for (long i = 0; i < mZ.grp.k(); ++i) {
    Elt inC = elt_apply(C, kpf.emb, emb_row(kpf.grp, mZ.emb, i));
    for (long j = 0; j < zGrp.k(); ++j)
      rowsZ.at(i, j) = inC[j];
  }
  long muZ = orientation_of_rows(zGrp, rowsZ);
  if (muZ == 0)
    throw std::runtime_error("reduce_orientation: center basis transfer degenerate");

  // identify p^f / z with p / Ker B_f
  ZMat stack = vstack(vstack(kp.emb, kKer.emb), relation_rows(A));
  ZMat rowsN(qA.grp.k(), qA.grp.k());
  for (long i = 0; i < qB.grp.k(); ++i) {
    Elt inC = elt_apply(C, kpf.emb, elt_apply(kpf.grp, qB.sect, basis_elt(qB.grp, i)));
    std::vector<ZZ> ab(Ab.k());
    for (long j = 0; j < Ab.k(); ++j)
      ab[j] = inC[j + shift];
    Elt amb = elt_apply(A, H.toBar.sect, elt_reduce(Ab, ab));
    std::vector<ZZ> rhs(A.k()), sol;
    for (long j = 0; j < A.k(); ++j)
      rhs[j] = amb[j];
    if (!zsolve_left(stack, rhs, sol))
      throw std::runtime_error("reduce_orientation: splitting solve failed");
    std::vector<ZZ> aPart(sol.begin(), sol.begin() + kp.grp.k());
    Elt qc = elt_apply(qA.grp, qA.proj, elt_reduce(kp.grp, aPart));
    for (long j = 0; j < qA.grp.k(); ++j)
      rowsN.at(i, j) = qc[j];
  }
  long nu = orientation_of_rows(qA.grp, rowsN);
  if (nu == 0)
    throw std::runtime_error("reduce_orientation: quotient identification degenerate");

  long inv = fp_inv(lamB * muZ % p * nu % p, p);
  long of = ozs * oPK % p * inv % p;
  return {pf, Orientation{(of % p + p) % p}};
}

std::vector<Subgroup> enumerate_lagrangians(const AbelianGroup& A, const Pairing& omega) {
  if (A.order() > zpow(5, 6))
    throw std::invalid_argument("enumerate_lagrangians: module too large");
  if (omega.A != A || omega.B != A || !pairing_valid(omega) || !pairing_skew(omega))
    throw std::invalid_argument("enumerate_lagrangians: need a skew pairing on A");
  std::vector<Subgroup> out;
  for (const auto& s : enumerate_subgroups(A))
    if (perp(s, omega) == s)
      out.push_back(s);
  return out;
}

} // namespace orbitforge
