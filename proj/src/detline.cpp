#include "orbitforge/detline.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <stdexcept>

namespace orbitforge {

namespace {

struct Cell {
  Subgroup num, den; // den ⊆ num, quotient elementary abelian
  std::vector<Elt> basis;
  ZMat solveStack; // [basis rows; den lattice] for coordinate extraction
};

std::vector<long> cell_coords(const Cell& c, const Elt& x) {
  long r = (long)c.basis.size();
  std::vector<ZZ> b(x.begin(), x.end()), sol;
  if (!zsolve_left(c.solveStack, b, sol))
    throw std::runtime_error("detline: element outside cell");
  long p = c.num.ambient.p;
  std::vector<long> out(r);
  for (long i = 0; i < r; ++i) {
    ZZ v = sol[i] % p;
    if (v < 0)
      v += p;
    out[i] = v.get_si();
  }
  return out;
}

void finish_cell(Cell& c) {
  ZMat bs(c.basis.size(), c.num.ambient.k());
  for (long i = 0; i < (long)c.basis.size(); ++i)
    for (long j = 0; j < c.num.ambient.k(); ++j)
      bs.at(i, j) = c.basis[i][j];
  c.solveStack = vstack(bs, c.den.lat);
}

// F_lev C = p^lev C as a subgroup (lev clamped below at 0).
Subgroup filt(const AbelianGroup& g, long lev) {
  if (lev < 0)
    lev = 0;
  ZMat m = ZMat::identity(g.k());
  ZZ pl = zpow(g.p, lev);
  for (auto& v : m.a)
    v *= pl;
  return subgroup_from_lattice(g, m);
}

Subgroup sg_image(const Subgroup& s, const AbelianGroup& tgt, const ZMat& d) {
  std::vector<Elt> gens;
  for (const auto& g : sg_generators(s))
    gens.push_back(elt_apply(tgt, d, g));
  return subgroup_from_generators(tgt, gens);
}

// Z_m^{lev,deg} = {x in F_lev : d x in F_{lev+m}}; for the last degree the
// outgoing differential is zero and Z = F_lev.
Subgroup zsub(const AbelianGroup& g, const AbelianGroup& tgt, const ZMat* d,
              long lev, long m) {
  Subgroup fl = filt(g, lev);
  if (!d)
    return fl;
  Subgroup f2 = filt(tgt, lev + m);
  // x = u L1 with u L1 d ∈ rowspan L2
  ZMat l1d(fl.lat.rows, tgt.k());
  for (long i = 0; i < (long)fl.lat.rows; ++i)
    for (long j = 0; j < tgt.k(); ++j) {
      ZZ acc = 0;
      for (long t = 0; t < (long)d->rows; ++t)
        acc += fl.lat.at(i, t) * d->at(t, j);
      l1d.at(i, j) = acc;
    }
  ZMat neg = f2.lat;
  for (auto& v : neg.a)
    v = -v;
  ZMat k = zkernel(vstack(l1d, neg));
  ZMat basis(k.rows, g.k());
  for (long r = 0; r < (long)k.rows; ++r)
    for (long j = 0; j < g.k(); ++j) {
      ZZ acc = 0;
      for (long i = 0; i < (long)fl.lat.rows; ++i)
        acc += k.at(r, i) * fl.lat.at(i, j);
      basis.at(r, j) = acc;
    }
  return subgroup_from_lattice(g, basis);
}

long koszul_sign(const std::vector<long>& dims, const std::vector<long>& perm) {
  // sign of reordering graded factors: count inversions with both dims odd
  long cnt = 0;
  long n = (long)perm.size();
  for (long i = 0; i < n; ++i)
    for (long j = i + 1; j < n; ++j)
      if (perm[i] > perm[j] && dims[perm[i]] % 2 && dims[perm[j]] % 2)
        ++cnt;
  return cnt % 2 ? -1 : 1;
}

} // namespace

long filtered_torsion_contraction(const AbelianGroup& c0, const AbelianGroup& c1,
                                  const AbelianGroup& c2, const ZMat& d0,
                                  const ZMat& d1) {
  const long p = c1.p;
  std::array<const AbelianGroup*, 3> grp = {&c0, &c1, &c2};
  std::array<const ZMat*, 3> dmat = {&d0, &d1, nullptr};
  long L = std::max({c0.maxExp(), c1.maxExp(), c2.maxExp()});

  // composition must vanish
  for (long i = 0; i < c0.k(); ++i) {
    Elt gi = elt_zero(c0);
    gi[i] = 1;
    if (!elt_is_zero(elt_apply(c2, d1, elt_apply(c1, d0, gi))))
      throw std::invalid_argument("detline: d1∘d0 nonzero");
  }

  auto make_page = [&](long m) {
    // cells indexed [deg][lev], lev in 0..L-1
    std::vector<std::vector<Cell>> page(3, std::vector<Cell>(L));
    for (long deg = 0; deg < 3; ++deg)
      for (long lev = 0; lev < L; ++lev) {
        Cell& c = page[deg][lev];
        const AbelianGroup* tgt = deg < 2 ? grp[deg + 1] : nullptr;
        c.num = zsub(*grp[deg], tgt ? *tgt : *grp[deg], dmat[deg], lev, m);
        Subgroup denA =
            zsub(*grp[deg], tgt ? *tgt : *grp[deg], dmat[deg], lev + 1, m - 1);
        c.den = denA;
        if (deg > 0) {
          Subgroup zprev = zsub(*grp[deg - 1], *grp[deg], dmat[deg - 1],
                                lev - m + 1, m - 1);
          c.den = sg_sum(c.den, sg_image(zprev, *grp[deg], *dmat[deg - 1]));
        }
        if (m == 0) {
          // standard graded basis p^lev g_i, e_i > lev
          long pl = 1;
          for (long t = 0; t < lev; ++t)
            pl *= p;
          for (long i = 0; i < grp[deg]->k(); ++i)
            if (grp[deg]->exponents[i] > lev) {
              Elt e = elt_zero(*grp[deg]);
              e[i] = pl % grp[deg]->modulus(i);
              c.basis.push_back(e);
            }
        } else {
          // canonical basis of num/den via quotient + subgroup presentation
          Quotient q = quotient(*grp[deg], c.den);
          std::vector<Elt> proj_gens;
          for (const auto& g : sg_generators(c.num))
            proj_gens.push_back(elt_apply(q.grp, q.proj, g));
          Subgroup img = subgroup_from_generators(q.grp, proj_gens);
          SubPresentation sp = sub_presentation(img);
          for (long r = 0; r < (long)sp.emb.rows; ++r) {
            assert(sp.grp.exponents[r] == 1);
            Elt y(q.grp.k());
            for (long j = 0; j < q.grp.k(); ++j)
              y[j] = sp.emb.at(r, j).get_si();
            Elt lift = elt_apply(*grp[deg], q.sect, y);
            assert(c.num.contains(lift));
            c.basis.push_back(lift);
          }
        }
        finish_cell(c);
      }
    return page;
  };

  auto std_order_keys = [&](long m) {
    // factor keys (deg, lev) in the standard page ordering
    (void)m;
    std::vector<std::pair<long, long>> keys;
    for (long lev = 0; lev < L; ++lev)
      keys.push_back({0, lev});
    for (long lev = L - 1; lev >= 0; --lev)
      keys.push_back({1, lev});
    for (long lev = 0; lev < L; ++lev)
      keys.push_back({2, lev});
    return keys;
  };

  auto chain_order_keys = [&](long m) {
    std::vector<std::pair<long, long>> keys;
    for (long c = -2 * m; c < L; ++c)
      for (long deg = 0; deg < 3; ++deg) {
        long lev = c + m * deg;
        if (lev >= 0 && lev < L)
          keys.push_back({deg, lev});
      }
    return keys;
  };

  auto reorder_sign = [&](const std::vector<std::pair<long, long>>& from,
                          const std::vector<std::pair<long, long>>& to,
                          const std::vector<std::vector<Cell>>& page) {
    assert(from.size() == to.size());
    std::vector<long> dims, perm;
    for (auto& k : from)
      dims.push_back((long)page[k.first][k.second].basis.size());
    for (auto& k : to) {
      long idx = -1;
      for (long i = 0; i < (long)from.size(); ++i)
        if (from[i] == k) {
          idx = i;
          break;
        }
      assert(idx >= 0);
      perm.push_back(idx);
    }
    return koszul_sign(dims, perm);
  };

  long total = 1;
  auto mod = [&](long v) { return ((v % p) + p) % p; };

  std::vector<std::vector<Cell>> cur = make_page(0);
  for (long m = 0;; ++m) {
    bool empty = true;
    for (long deg = 0; deg < 3 && empty; ++deg)
      for (long lev = 0; lev < L && empty; ++lev)
        if (!cur[deg][lev].basis.empty())
          empty = false;
    if (empty)
      break;
    if (m > 3 * L + 3)
      throw std::runtime_error("detline: spectral sequence does not vanish");

    std::vector<std::vector<Cell>> nxt = make_page(m + 1);

    total *= reorder_sign(std_order_keys(m), chain_order_keys(m), cur);

    // per-chain based torsion
    for (long c = -2 * m; c < L; ++c) {
      // cells X = (c,0), Y = (c+m,1), Z = (c+2m,2) when in range
      auto cellAt = [&](std::vector<std::vector<Cell>>& pg, long deg,
                        long lev) -> Cell* {
        if (lev < 0 || lev >= L)
          return nullptr;
        return &pg[deg][lev];
      };
      Cell* X = cellAt(cur, 0, c);
      Cell* Y = cellAt(cur, 1, c + m);
      Cell* Z = cellAt(cur, 2, c + 2 * m);
      long dx = X ? (long)X->basis.size() : 0;
      long dy = Y ? (long)Y->basis.size() : 0;
      long dz = Z ? (long)Z->basis.size() : 0;
      if (dx + dy + dz == 0)
        continue;
      // differential matrices (rows = images of source basis)
      FpMat RX(p, dx, dy), RY(p, dy, dz);
      for (long i = 0; i < dx; ++i) {
        Elt y = elt_apply(c1, d0, X->basis[i]);
        auto co = dy ? cell_coords(*Y, y) : std::vector<long>{};
        for (long j = 0; j < dy; ++j)
          RX.at(i, j) = co[j];
      }
      for (long i = 0; i < dy; ++i) {
        Elt z = elt_apply(c2, d1, Y->basis[i]);
        auto co = dz ? cell_coords(*Z, z) : std::vector<long>{};
        for (long j = 0; j < dz; ++j)
          RY.at(i, j) = co[j];
      }
      // pick s1 / s2: row subsets with independent images
      auto pick_rows = [&](const FpMat& r) {
        std::vector<long> chosen;
        FpMat acc(p, 0, r.cols);
        for (long i = 0; i < (long)r.rows; ++i) {
          FpMat trial(p, acc.rows + 1, r.cols);
          trial.a = acc.a;
          trial.a.insert(trial.a.end(), r.a.begin() + i * r.cols,
                         r.a.begin() + (i + 1) * r.cols);
          if (fp_rank(trial) == (std::size_t)trial.rows) {
            acc = trial;
            chosen.push_back(i);
          }
        }
        return chosen;
      };
      std::vector<long> s1 = pick_rows(RX), s2 = pick_rows(RY);
      long b1 = (long)s1.size(), b2 = (long)s2.size();
      // homology bases = next-page cell bases, coordinates in current bases
      auto hcols = [&](Cell* curc, Cell* nxtc) {
        std::vector<std::vector<long>> cols;
        if (!nxtc || !curc)
          return cols;
        for (const auto& b : nxtc->basis)
          cols.push_back(cell_coords(*curc, b));
        return cols;
      };
      auto h0 = hcols(X, cellAt(nxt, 0, c));
      auto h1 = hcols(Y, cellAt(nxt, 1, c + m));
      auto h2 = hcols(Z, cellAt(nxt, 2, c + 2 * m));
      assert((long)h0.size() == dx - b1);
      assert((long)h1.size() == dy - b1 - b2);
      assert((long)h2.size() == dz - b2);

      auto detOf = [&](long dim, const std::vector<std::vector<long>>& cols) {
        if (dim == 0)
          return 1L;
        assert((long)cols.size() == dim);
        FpMat mm(p, dim, dim);
        for (long j = 0; j < dim; ++j)
          for (long i = 0; i < dim; ++i)
            mm.at(i, j) = cols[j][i];
        long d = fp_det(mm);
        if (d == 0)
          throw std::runtime_error("detline: singular change of basis");
        return d;
      };
      auto unit = [&](long dim, long idx) {
        std::vector<long> v(dim, 0);
        v[idx] = 1;
        return v;
      };
      // M0 = [h0 | s1 units]
      std::vector<std::vector<long>> m0 = h0;
      for (long i : s1)
        m0.push_back(unit(dx, i));
      // M1 = [d0(s1) | h1 | s2 units]
      std::vector<std::vector<long>> m1;
      for (long i : s1) {
        std::vector<long> col(dy);
        for (long j = 0; j < dy; ++j)
          col[j] = RX.at(i, j);
        m1.push_back(col);
      }
      for (auto& h : h1)
        m1.push_back(h);
      for (long i : s2)
        m1.push_back(unit(dy, i));
      // M2 = [d1(s2) | h2]
      std::vector<std::vector<long>> m2;
      for (long i : s2) {
        std::vector<long> col(dz);
        for (long j = 0; j < dz; ++j)
          col[j] = RY.at(i, j);
        m2.push_back(col);
      }
      for (auto& h : h2)
        m2.push_back(h);

      long det0 = detOf(dx, m0), det1 = detOf(dy, m1), det2 = detOf(dz, m2);
      long lam = fp_inv(det0, p) * det1 % p * fp_inv(det2, p) % p;
      // Koszul swap of the degree-0 boundary block past the surviving
      // degree-0 homology block: M0 lists [h0 | s1] but the torsion
      // isomorphism consumes det B ⊗ det H0
      long sgn = (b1 * (dx - b1)) % 2 ? p - 1 : 1;
      total = mod(total * lam % p * sgn);
    }

    // surviving homology factors keep their (deg, lev) keys but sit in chain
    // order; restore the standard ordering with page-(m+1) dimensions
    total *= reorder_sign(chain_order_keys(m), std_order_keys(m), nxt);
    total = mod(total);
    cur = std::move(nxt);
  }
  return mod(total);
}

long exact_sequence_factor(const Subgroup& s, const Quotient& q) {
  if (!(q.ker == s))
    throw std::invalid_argument("exact_sequence_factor: inconsistent quotient data");
  const long p = s.ambient.p;
  SubPresentation k = sub_presentation(s);
  long v = filtered_torsion_contraction(k.grp, s.ambient, q.grp, k.emb, q.proj);
  return ((v % p) + p) % p;
}

} // namespace orbitforge
