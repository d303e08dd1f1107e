#include "orbitforge/liering.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>
#include <stdexcept>

namespace orbitforge {

LieRing lie_ring(const AbelianGroup& carrier,
                 const std::vector<std::tuple<long, long, Elt>>& brackets) {
  LieRing L;
  L.carrier = carrier;
  long k = carrier.k();
  L.table.assign(k, std::vector<Elt>(k, elt_zero(carrier)));
  for (const auto& [i, j, v] : brackets) {
    if (i < 0 || j < 0 || i >= k || j >= k || i >= j)
      throw std::invalid_argument("lie_ring: bracket entry needs 0 <= i < j < k");
    Elt r = elt_reduce(carrier, v);
    L.table[i][j] = r;
    L.table[j][i] = elt_neg(carrier, r);
  }
  return L;
}

Elt lie_bracket(const LieRing& L, const Elt& x, const Elt& y) {
  const AbelianGroup& A = L.carrier;
  Elt acc = elt_zero(A);
  for (long i = 0; i < A.k(); ++i) {
    if (!x[i])
      continue;
    for (long j = 0; j < A.k(); ++j) {
      if (!y[j] || elt_is_zero(L.table[i][j]))
        continue;
      ZZ s = ZZ(x[i]) * y[j];
      // scale factor fits after reduction modulo the order of the bracket value
      long o = elt_order(A, L.table[i][j]);
      long sc = (long)mpz_fdiv_ui(s.get_mpz_t(), o);
      acc = elt_add(A, acc, elt_scale(A, sc, L.table[i][j]));
    }
  }
  return acc;
}

std::vector<Subgroup> lower_central_series(const LieRing& L) {
  const AbelianGroup& A = L.carrier;
  std::vector<Subgroup> series = {full_subgroup(A)};
  for (;;) {
    const Subgroup& prev = series.back();
    if (prev.size() == 1)
      break;
    std::vector<Elt> gens;
    for (long i = 0; i < A.k(); ++i) {
      Elt gi = elt_zero(A);
      gi[i] = 1;
      for (const auto& v : sg_generators(prev))
        gens.push_back(lie_bracket(L, gi, v));
    }
    Subgroup nxt = subgroup_from_generators(A, gens);
    if (nxt == prev)
      throw std::runtime_error("lower_central_series: not nilpotent");
    series.push_back(nxt);
  }
  return series;
}

LieReport validate(LieRing& L) {
  const AbelianGroup& A = L.carrier;
  LieReport rep;
  long k = A.k();
  auto witness = [](const char* what, long i, long j, long t = -1) {
    std::ostringstream os;
    os << what << " at (" << i << "," << j;
    if (t >= 0)
      os << "," << t;
    os << ")";
    return os.str();
  };
  if ((long)L.table.size() != k) {
    rep.errors.push_back("table size mismatch");
    return rep;
  }
  for (long i = 0; i < k; ++i)
    for (long j = 0; j < k; ++j) {
      long m = std::min(A.exponents[i], A.exponents[j]);
      long pm = 1;
      for (long t = 0; t < m; ++t)
        pm *= A.p;
      if (!elt_is_zero(elt_scale(A, pm, L.table[i][j])))
        rep.errors.push_back(witness("bracket not bi-additive", i, j));
    }
  for (long i = 0; i < k; ++i)
    if (!elt_is_zero(L.table[i][i]))
      rep.errors.push_back(witness("bracket not alternating", i, i));
  for (long i = 0; i < k; ++i)
    for (long j = i + 1; j < k; ++j)
      if (L.table[j][i] != elt_neg(A, L.table[i][j]))
        rep.errors.push_back(witness("bracket not skew", i, j));
  for (long i = 0; i < k && rep.errors.empty(); ++i)
    for (long j = i + 1; j < k; ++j)
      for (long t = j + 1; t < k; ++t) {
        Elt gi = elt_zero(A), gj = elt_zero(A), gt = elt_zero(A);
        gi[i] = gj[j] = gt[t] = 1;
        Elt s = lie_bracket(L, gi, L.table[j][t]);
        s = elt_add(A, s, lie_bracket(L, gj, L.table[t][i]));
        s = elt_add(A, s, lie_bracket(L, gt, L.table[i][j]));
        if (!elt_is_zero(s))
          rep.errors.push_back(witness("Jacobi identity fails", i, j, t));
      }
  if (!rep.errors.empty())
    return rep;
  std::vector<Subgroup> series = lower_central_series(L);
  long cls = (long)series.size() - 1; // G_{cls+1} = 0, G_cls != 0
  if (cls >= A.p) {
    std::ostringstream os;
    os << "nilpotence class " << cls << " not below p = " << A.p;
    rep.errors.push_back(os.str());
    return rep;
  }
  if (cls > 6) {
    rep.errors.push_back("nilpotence class above 6 unsupported");
    return rep;
  }
  rep.ok = true;
  rep.cls = cls;
  L.cls = cls;
  return rep;
}

namespace {

// right-nested bracket ad(l_0) ad(l_1) ... ad(l_{m-2}) l_{m-1}
Elt bracket_word(const LieRing& L, const std::vector<const Elt*>& w) {
  Elt acc = *w.back();
  for (long i = (long)w.size() - 2; i >= 0; --i)
    acc = lie_bracket(L, *w[i], acc);
  return acc;
}

long rational_mod(const QQ& q, long m) {
  ZZ num = q.get_num(), den = q.get_den();
  ZZ mm(m), inv;
  if (!mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mm.get_mpz_t()))
    throw std::runtime_error("bch: denominator not invertible");
  ZZ v = num % mm * inv % mm;
  if (v < 0)
    v += mm;
  return v.get_si();
}

} // namespace

Elt bch_multiply(const LieRing& L, const Elt& x, const Elt& y) {
  const AbelianGroup& A = L.carrier;
  if (L.cls < 0)
    throw std::logic_error("bch_multiply: ring not validated");
  long cls = std::max(L.cls, 1L);
  std::vector<QQ> acc(A.k(), QQ(0));
  auto add_term = [&](const QQ& q, const Elt& v) {
    for (long i = 0; i < A.k(); ++i)
      acc[i] += q * v[i];
  };
  // Dynkin: sum over block sequences (r_1,s_1)...(r_n,s_n), r_i+s_i >= 1,
  // total length m <= cls, of (-1)^{n-1}/n * word / (m * prod r_i! s_i!)
  std::vector<std::pair<long, long>> blocks;
  auto factorial = [](long n) {
    long f = 1;
    for (long t = 2; t <= n; ++t)
      f *= t;
    return f;
  };
  auto emit = [&]() {
    long n = (long)blocks.size();
    long m = 0, denom = 1;
    std::vector<const Elt*> w;
    for (auto& [r, s] : blocks) {
      m += r + s;
      denom *= factorial(r) * factorial(s);
      for (long t = 0; t < r; ++t)
        w.push_back(&x);
      for (long t = 0; t < s; ++t)
        w.push_back(&y);
    }
    QQ q(n % 2 ? 1 : -1, n * m * denom);
    add_term(q, bracket_word(L, w));
  };
  auto rec = [&](auto&& self, long rem) -> void {
    if (!blocks.empty())
      emit();
    for (long r = 0; r <= rem; ++r)
      for (long s = r ? 0 : 1; r + s <= rem; ++s) {
        blocks.push_back({r, s});
        self(self, rem - r - s);
        blocks.pop_back();
      }
  };
  rec(rec, cls);
  Elt z(A.k());
  for (long i = 0; i < A.k(); ++i)
    z[i] = rational_mod(acc[i], A.modulus(i));
  return z;
}

Elt grp_inverse(const LieRing& L, const Elt& x) { return elt_neg(L.carrier, x); }

Elt grp_pow(const LieRing& L, const Elt& x, long n) {
  Elt base = n < 0 ? grp_inverse(L, x) : x;
  unsigned long e = n < 0 ? -(unsigned long)n : (unsigned long)n;
  Elt acc = elt_zero(L.carrier);
  while (e) {
    if (e & 1)
      acc = bch_multiply(L, acc, base);
    base = bch_multiply(L, base, base);
    e >>= 1;
  }
  return acc;
}

Elt grp_conj(const LieRing& L, const Elt& g, const Elt& x) {
  return bch_multiply(L, bch_multiply(L, g, x), grp_inverse(L, g));
}

ZMat adjoint_matrix(const LieRing& L, const Elt& g) {
  const AbelianGroup& A = L.carrier;
  ZMat m(A.k(), A.k());
  for (long i = 0; i < A.k(); ++i) {
    Elt gi = elt_zero(A);
    gi[i] = 1;
    Elt im = grp_conj(L, g, gi);
    for (long j = 0; j < A.k(); ++j)
      m.at(i, j) = im[j];
  }
  return m;
}

std::vector<long> character_compose(const AbelianGroup& A, const ZMat& m,
                                    const std::vector<long>& c) {
  long E = A.maxExp();
  ZZ pE = zpow(A.p, E);
  std::vector<long> out(A.k());
  for (long i = 0; i < A.k(); ++i) {
    ZZ t = 0;
    for (long j = 0; j < A.k(); ++j)
      t += m.at(i, j) * c[j] * zpow(A.p, E - A.exponents[j]);
    t %= pE;
    if (t < 0)
      t += pE;
    ZZ step = zpow(A.p, E - A.exponents[i]);
    if (t % step != 0)
      throw std::runtime_error("character_compose: map not a morphism");
    out[i] = ZZ(t / step).get_si();
  }
  return out;
}

CoadjointOrbit coadjoint_orbit(const LieRing& L, const GroupCharacter& f) {
  const AbelianGroup& A = L.carrier;
  if (!(f.target == A))
    throw std::invalid_argument("coadjoint_orbit: functional on wrong carrier");
  if (L.cls < 0)
    throw std::logic_error("coadjoint_orbit: ring not validated");
  std::set<std::vector<long>> seen;
  std::vector<std::vector<long>> queue = {f.c};
  seen.insert(f.c);
  // Ad_g for g over the basis group elements generates the image of G
  std::vector<ZMat> gens;
  for (long i = 0; i < A.k(); ++i) {
    Elt gi = elt_zero(A);
    gi[i] = 1;
    gens.push_back(adjoint_matrix(L, gi));
  }
  while (!queue.empty()) {
    std::vector<long> c = queue.back();
    queue.pop_back();
    for (const auto& m : gens) {
      std::vector<long> nc = character_compose(A, m, c);
      if (seen.insert(nc).second)
        queue.push_back(nc);
    }
  }
  CoadjointOrbit o;
  o.carrier = A;
  o.chars.assign(seen.begin(), seen.end());
  o.stabilizer = A.order() / (long)o.chars.size();
  return o;
}

Cyc orbit_character(const LieRing& L, const CoadjointOrbit& o, const CycField& F,
                    const Elt& g) {
  const AbelianGroup& A = L.carrier;
  long n = (long)o.chars.size();
  long len = 0;
  while ((n /= A.p))
    ++len;
  // |orbit| = p^len with len even (Thm on orbit sizes; asserted, not proved)
  if ((long)o.chars.size() != [&] {
        long v = 1;
        for (long t = 0; t < len; ++t)
          v *= A.p;
        return v;
      }() || len % 2)
    throw std::runtime_error("orbit_character: orbit size not an even power of p");
  Cyc sum = F.zero();
  for (const auto& c : o.chars) {
    GroupCharacter ch{A, c};
    long pe = 1;
    for (long t = 0; t < A.maxExp(); ++t)
      pe *= A.p;
    sum += F.root(pe, ch.exp_on(g));
  }
  long half = 1;
  for (long t = 0; t < len / 2; ++t)
    half *= A.p;
  return sum / QQ(half);
}

} // namespace orbitforge
