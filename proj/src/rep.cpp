#include "orbitforge/rep.hpp"

#include "orbitforge/liering.hpp"
#include "orbitforge/witt.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace orbitforge {

namespace {

long pow_long(long p, long e) {
  long r = 1;
  while (e-- > 0)
    r *= p;
  return r;
}

long log_p(ZZ v, long p) {
  long l = 0;
  while (v > 1) {
    v /= p;
    ++l;
  }
  return l;
}

long sg_len(const Subgroup& s) { return log_p(s.size(), s.ambient.p); }

struct Lcg {
  unsigned long s;
  explicit Lcg(unsigned long seed) : s(seed * 0x9e3779b97f4a7c15ull + 1) {}
  long next(long m) {
    s = s * 6364136223846793005ull + 1442695040888963407ull;
    return (long)((s >> 33) % (unsigned long)m);
  }
};

} // namespace

Cyc chi_f(const GroupCharacter& f, const CycField& F, const Elt& x) {
  return f.eval(F, x);
}

InducedRep induce(const LieRing& L, const GroupCharacter& f, const Subgroup& pol,
                  unsigned long seed) {
  InducedRep R;
  R.ring = L;
  R.f = f;
  R.pol = pol;
  std::vector<Elt> pelems = sg_elements(pol);
  for (const auto& g : all_elements(L.carrier)) {
    if (R.coset.count(g))
      continue;
    long idx = (long)R.reps.size();
    R.reps.push_back(g);
    for (const auto& s : pelems)
      R.coset.emplace(bch_multiply(L, s, g), idx);
  }
  if ((ZZ)R.coset.size() != L.carrier.order())
    throw std::logic_error("induce: cosets do not tile the group");
  if (seed != 0) {
    Lcg rng(seed);
    for (auto& g : R.reps)
      g = bch_multiply(L, pelems[rng.next((long)pelems.size())], g);
    for (long i = (long)R.reps.size() - 1; i > 0; --i)
      std::swap(R.reps[i], R.reps[rng.next(i + 1)]);
    for (long i = 0; i < (long)R.reps.size(); ++i)
      for (const auto& s : pelems)
        R.coset[bch_multiply(L, s, R.reps[i])] = i;
  }
  return R;
}

CycMat rep_matrix(const InducedRep& R, const CycField& F, const Elt& h) {
  CycMat m(F, R.dim(), R.dim());
  for (long i = 0; i < R.dim(); ++i) {
    Elt x = bch_multiply(R.ring, R.reps[i], h);
    long j = R.coset.at(x);
    Elt p = bch_multiply(R.ring, x, grp_inverse(R.ring, R.reps[j]));
    m.at(i, j) = chi_f(R.f, F, p);
  }
  return m;
}

CycMat phi_intertwiner(const InducedRep& R1, const InducedRep& R2, const CycField& F) {
  const LieRing& L = R1.ring;
  CycMat m(F, R1.dim(), R2.dim());
  std::vector<Elt> pelems = sg_elements(R1.pol);
  std::vector<Cyc> chiInv;
  chiInv.reserve(pelems.size());
  for (const auto& p : pelems)
    chiInv.push_back(chi_f(R1.f, F, p).conj());
  for (long i = 0; i < R1.dim(); ++i)
    for (std::size_t t = 0; t < pelems.size(); ++t) {
      Elt x = bch_multiply(L, pelems[t], R1.reps[i]);
      long j = R2.coset.at(x);
      Elt q = bch_multiply(L, x, grp_inverse(L, R2.reps[j]));
      m.at(i, j) += chiInv[t] * chi_f(R2.f, F, q);
    }
  long k = sg_len(R1.pol) + sg_len(sg_intersect(R1.pol, R2.pol));
  return mat_scale(m, F.inv_sqrt_pow(k));
}

RepFamily::RepFamily(const LieRing& L, GroupCharacter f, unsigned long seed)
    : L_(L), f_(std::move(f)), seed_(seed) {}

const InducedRep& RepFamily::model(const Subgroup& pol) {
  auto it = cache_.find(pol.lat.a);
  if (it == cache_.end())
    it = cache_.emplace(pol.lat.a, induce(L_, f_, pol, seed_)).first;
  return it->second;
}

Cyc alpha_compose(RepFamily& fam, const CycField& F, const Subgroup& p1,
                  const Subgroup& p2, const Subgroup& p3) {
  const InducedRep& R1 = fam.model(p1);
  const InducedRep& R2 = fam.model(p2);
  const InducedRep& R3 = fam.model(p3);
  CycMat comp = mat_mul(phi_intertwiner(R1, R2, F),
                        mat_mul(phi_intertwiner(R2, R3, F), phi_intertwiner(R3, R1, F)));
  auto s = scalar_of(comp);
  if (!s)
    throw std::runtime_error("alpha_compose: composite is not scalar");
  return *s;
}

Cyc alpha_formula(const LieRing& L, const GroupCharacter& f, const CycField& F,
                  const Subgroup& p1, const Subgroup& p2, const Subgroup& p3) {
  std::vector<Elt> e3 = sg_elements(p3), e2 = sg_elements(p2);
  std::vector<Cyc> c3, c2;
  for (const auto& x : e3)
    c3.push_back(chi_f(f, F, x));
  for (const auto& x : e2)
    c2.push_back(chi_f(f, F, x));
  Cyc acc = F.zero();
  for (std::size_t a = 0; a < e3.size(); ++a) {
    Cyc row = F.zero();
    for (std::size_t b = 0; b < e2.size(); ++b) {
      Elt q = bch_multiply(L, e3[a], e2[b]);
      Elt x1 = grp_inverse(L, q);
      if (!p1.contains(x1))
        continue;
      row += c2[b] * chi_f(f, F, x1);
    }
    acc += c3[a] * row;
  }
  acc = acc.conj();
  long num = L.carrier.len() + sg_len(skew_form(L, f).kernel);
  long den = sg_len(p1) + sg_len(p2) + sg_len(p3) + sg_len(sg_intersect(p1, p2)) +
             sg_len(sg_intersect(p2, p3)) + sg_len(sg_intersect(p3, p1));
  long k = den - num;
  return acc * (k >= 0 ? F.inv_sqrt_pow(k) : F.sqrt_pow(-k));
}

Cyc alpha_neighbor_formula(const LieRing& L, const GroupCharacter& f, const CycField& F,
                           const Subgroup& p1, const Subgroup& p2, const Subgroup& p3) {
  if (!neighbor_check(L, p1, p2))
    throw std::invalid_argument("alpha_neighbor_formula: inputs are not neighbors");
  const AbelianGroup& A = L.carrier;
  long inv2 = fp_pow_inv(2, pow_long(A.p, A.maxExp()));
  std::vector<Elt> e3 = sg_elements(p3), e2 = sg_elements(p2);
  Cyc acc = F.zero();
  for (const auto& a3 : e3)
    for (const auto& a2 : e2) {
      Elt a1 = elt_neg(A, elt_add(A, a3, a2));
      if (!p1.contains(a1))
        continue;
      acc += f.eval(F, elt_scale(A, inv2, lie_bracket(L, a2, a1)));
    }
  Subgroup i12 = sg_intersect(p1, p2), i23 = sg_intersect(p2, p3),
           i31 = sg_intersect(p3, p1);
  long l123 = sg_len(sg_intersect(i12, p3));
  long lsum = sg_len(i12) + sg_len(i23) + sg_len(i31);
  // N' times the class size |S|/|S/R| = |p12||p23||p31| / |p123|
  long num = A.len() + lsum + sg_len(skew_form(L, f).kernel);
  long den = 2 * l123 + sg_len(p1) + sg_len(p2) + sg_len(p3);
  long k = den - num + 2 * (lsum - l123);
  return acc * (k >= 0 ? F.inv_sqrt_pow(k) : F.sqrt_pow(-k));
}

Cyc beta_factor(const LieRing& L, const GroupCharacter& f, const CycField& F,
                const OrientedPolarization& op1, const OrientedPolarization& op2) {
  long p = L.carrier.p;
  long m = sg_len(op1.sub) - sg_len(sg_intersect(op1.sub, op2.sub)) - 1;
  // the relative orientation enters contravariantly: the cyclic beta product
  // must cancel the cocycle of the averaging operators, not reproduce it
  long theta = relative_orientation(L, f, op2, op1);
  Cyc g1 = gamma_unit(1, p, F);
  long t = (m * m) % 4;
  Cyc head = t == 0 ? F.one() : g1.pow(4 - t);
  return head * gamma_unit(theta, p, F);
}

CycMat psi_intertwiner(RepFamily& fam, const CycField& F,
                       const OrientedPolarization& op1, const OrientedPolarization& op2) {
  CycMat phi = phi_intertwiner(fam.model(op1.sub), fam.model(op2.sub), F);
  return mat_scale(phi, beta_factor(fam.ring(), fam.f(), F, op1, op2));
}

RepReport verify_compatibility(RepFamily& fam, const CycField& F,
                               const std::vector<OrientedTriple>& triples) {
  RepReport rep;
  for (std::size_t t = 0; t < triples.size(); ++t) {
    const auto& [a, b, c] = triples[t];
    CycMat comp = mat_mul(psi_intertwiner(fam, F, a, b),
                          mat_mul(psi_intertwiner(fam, F, b, c),
                                  psi_intertwiner(fam, F, c, a)));
    bool idOk = is_identity(comp);
    Cyc alpha = alpha_compose(fam, F, a.sub, b.sub, c.sub);
    Cyc prod = beta_factor(fam.ring(), fam.f(), F, a, b) *
               beta_factor(fam.ring(), fam.f(), F, b, c) *
               beta_factor(fam.ring(), fam.f(), F, c, a);
    ++rep.checked;
    if (!idOk || !(alpha * prod == F.one())) {
      rep.ok = false;
      rep.failures.push_back("triple " + std::to_string(t) +
                             (idOk ? ": beta product != 1/alpha" : ": Psi composite != Id"));
    }
  }
  return rep;
}

RepReport verify_reduction(const LieRing& L, const GroupCharacter& f, const CycField& F,
                           const std::vector<PolTriple>& triples) {
  RepReport rep;
  RepFamily fam(L, f);
  HeisenbergData H = heisenberg_reduction(L, f);
  RepFamily famF(H.ring, H.fbar);
  for (std::size_t t = 0; t < triples.size(); ++t) {
    const auto& [p1, p2, p3] = triples[t];
    Cyc lhs = alpha_compose(fam, F, p1, p2, p3);
    Cyc rhs = alpha_compose(famF, F, reduce_polarization(H, p1),
                            reduce_polarization(H, p2), reduce_polarization(H, p3));
    ++rep.checked;
    if (!(lhs == rhs)) {
      rep.ok = false;
      rep.failures.push_back("triple " + std::to_string(t) +
                             ": alpha differs from its Heisenberg reduction");
    }
  }
  return rep;
}

std::vector<Subgroup> heisenberg_polarizations(const LieRing& H) {
  const AbelianGroup& C = H.carrier;
  if (C.k() <= 1)
    return {full_subgroup(C)};
  long p = C.p;
  AbelianGroup A{p, std::vector<long>(C.exponents.begin() + 1, C.exponents.end())};
  long d = C.exponents[0];
  long mod = pow_long(p, d);
  ZMat c(A.k(), A.k());
  for (long i = 0; i < A.k(); ++i)
    for (long j = 0; j < A.k(); ++j) {
      const Elt& v = H.table[i + 1][j + 1];
      for (long t = 1; t < (long)v.size(); ++t)
        if (v[t] != 0)
          throw std::invalid_argument("heisenberg_polarizations: bracket not central");
      long scale = mod / (long)ZZ(A.modulus(j)).get_si();
      if (v[0] % scale)
        throw std::invalid_argument("heisenberg_polarizations: form ill-defined");
      c.at(i, j) = v[0] / scale;
    }
  Pairing om{A, A, c};
  std::vector<Subgroup> out;
  for (const auto& lag : enumerate_lagrangians(A, om)) {
    std::vector<Elt> gens;
    Elt e0 = elt_zero(C);
    e0[0] = 1;
    gens.push_back(e0);
    for (const auto& g : sg_generators(lag)) {
      Elt x = elt_zero(C);
      for (long i = 0; i < A.k(); ++i)
        x[i + 1] = g[i];
      gens.push_back(x);
    }
    out.push_back(subgroup_from_generators(C, gens));
  }
  return out;
}

RepReport stone_von_neumann_check(const LieRing& H, const GroupCharacter& f,
                                  const CycField& F) {
  RepReport rep;
  const AbelianGroup& C = H.carrier;
  auto fail = [&](const std::string& s) {
    rep.ok = false;
    rep.failures.push_back(s);
  };
  if (C.k() == 0) {
    ++rep.checked;
    return rep;
  }
  if (f.c.at(0) % C.p == 0) {
    fail("central character is not injective");
    return rep;
  }
  std::vector<Elt> elems = all_elements(C);
  Subgroup center = lie_center(H);
  std::vector<Subgroup> pols = heisenberg_polarizations(H);
  std::vector<std::vector<Cyc>> chars;
  for (const auto& pol : pols) {
    InducedRep R = induce(H, f, pol);
    std::vector<Cyc> ch;
    ch.reserve(elems.size());
    for (const auto& g : elems) {
      Cyc tr = F.zero();
      CycMat m = rep_matrix(R, F, g);
      for (long i = 0; i < m.rows; ++i)
        tr += m.at(i, i);
      ch.push_back(tr);
    }
    ++rep.checked;
    if ((ZZ)R.dim() * R.dim() * center.size() != C.order())
      fail("dimension is not sqrt|A|");
    for (std::size_t i = 0; i < elems.size(); ++i)
      if (!center.contains(elems[i]) && !ch[i].is_zero()) {
        fail("character does not vanish off the center");
        break;
      }
    chars.push_back(std::move(ch));
  }
  for (std::size_t i = 1; i < chars.size(); ++i)
    if (chars[i] != chars[0]) {
      fail("Lagrangian models have different characters");
      break;
    }
  // uniqueness: exactly one coadjoint orbit carries this central character,
  // and its orbit character is the common induced character
  long matches = 0;
  std::set<std::vector<long>> seen;
  for (const auto& g : elems) {
    std::vector<long> cf(g.begin(), g.end());
    if (seen.count(cf))
      continue;
    GroupCharacter fc{C, cf};
    CoadjointOrbit o = coadjoint_orbit(H, fc);
    for (const auto& h : o.chars)
      seen.insert(h);
    // central character of the orbit: restriction of any member to the center
    bool central = true;
    for (const auto& z : sg_generators(center))
      if (fc.exp_on(z) != f.exp_on(z)) {
        central = false;
        break;
      }
    if (!central)
      continue;
    ++matches;
    std::vector<Cyc> oc;
    for (const auto& g2 : elems)
      oc.push_back(orbit_character(H, o, F, g2));
    if (!chars.empty() && oc != chars[0])
      fail("orbit character disagrees with the induced character");
  }
  if (matches != 1)
    fail("central character is carried by " + std::to_string(matches) +
         " orbits, expected 1");
  return rep;
}

} // namespace orbitforge
