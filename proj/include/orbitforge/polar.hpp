#pragma once

#include "orbitforge/liering.hpp"

// Skew form B_f(x,y) = f([x,y]), polarizations and their certificates,
// neighbor chains, the Heisenberg reduction (g^f, fbar, p^f), Lagrangian
// enumeration, and relative orientations of oriented polarizations.

namespace orbitforge {

struct SkewForm {
  Pairing form;    // carrier x carrier; c(i,j) from f([g_i, g_j])
  Subgroup kernel; // Ker B_f
  long zExp = 0;   // image of B_f is cyclic of order p^zExp
};

SkewForm skew_form(const LieRing& L, const GroupCharacter& f);

// Center Z(g) = {x | [x, g] = 0} and ker f = {x | f(x) = 1}.
Subgroup lie_center(const LieRing& L);
Subgroup character_kernel(const AbelianGroup& A, const GroupCharacter& f);

struct PolarizationCert {
  Subgroup sub;
  bool subring = false;
  bool isotropic = false;
  bool maximal = false; // size certificate |S|^2 = |g| |Ker B_f|
  bool ok() const { return subring && isotropic && maximal; }
};

PolarizationCert is_polarization(const LieRing& L, const GroupCharacter& f, const Subgroup& s);

// Deterministic descent: quotient by Z(g) ∩ ker f while it is nonzero, else
// pass to h = {x}^perp for the first scan element x with 0 != [g,x] ⊆ Z(g)
// and x outside Ker B_f, and recurse on (h, f|_h).
Subgroup find_polarization(const LieRing& L, const GroupCharacter& f);

// Brute-force oracle over all subgroups; guarded to |g| <= 5^4.
std::vector<Subgroup> all_polarizations(const LieRing& L, const GroupCharacter& f);

// [p1, p2] ⊆ p1 ∩ p2, checked on generators.
bool neighbor_check(const LieRing& L, const Subgroup& p1, const Subgroup& p2);

// Chain q_1 = p1, ..., q_m = p2 of consecutively neighboring polarizations,
// built by the same descent as find_polarization with p'_i = p_i∩h + h^perp.
std::vector<Subgroup> neighbor_chain(const LieRing& L, const GroupCharacter& f,
                                     const Subgroup& p1, const Subgroup& p2);

// Subring on the presented group of s (bracket closure required), with the
// restricted functional; emb maps presentation coordinates into the carrier.
struct LieSubring {
  LieRing ring;
  ZMat emb;
  GroupCharacter f;
};

LieSubring sub_lie_ring(const LieRing& L, const GroupCharacter& f, const Subgroup& s);

// Quotient by an ideal on which f is trivial.
struct LieQuotientRing {
  LieRing ring;
  Quotient q;
  GroupCharacter f;
};

LieQuotientRing quotient_lie_ring(const LieRing& L, const GroupCharacter& f,
                                  const Subgroup& ideal);

// Heisenberg ring on A ⊕ z for a symplectic (perfect skew) pairing; the
// center z = im(omega) is realized as Z/p^d in coordinate 0.
LieRing heisenberg_ring(const AbelianGroup& A, const Pairing& omega);

struct HeisenbergData {
  SkewForm sf;
  Quotient toBar;      // carrier -> Abar = g / Ker B_f
  Pairing omega;       // induced symplectic form on Abar
  LieRing ring;        // g^f on [z | Abar]
  GroupCharacter fbar; // projection to the z coordinate
};

HeisenbergData heisenberg_reduction(const LieRing& L, const GroupCharacter& f);

// p -> p^f = p/Ker(B_f) ⊕ z inside g^f.
Subgroup reduce_polarization(const HeisenbergData& H, const Subgroup& p);

// Orientation scalar is against std(sub_presentation(sub).grp).
struct OrientedPolarization {
  Subgroup sub;
  Orientation o;
};

// Normalize to the representative 1 or the smallest quadratic non-residue.
long square_class(long x, long p);

// theta(p1~, p2~) in F_p^x/(F_p^x)^2 as its normalized representative.
// obar is the auxiliary orientation on p1 ∩ p2 (the result is independent
// of it); throws if the induced pairing on the quotients is not perfect.
long relative_orientation(const LieRing& L, const GroupCharacter& f,
                          const OrientedPolarization& p1, const OrientedPolarization& p2,
                          const Orientation& obar = {});

// Transport an orientation through det(p) = det(Ker B_f) ⊗ det(p/Ker B_f)
// and det(p^f) = det(z) ⊗ det(p^f/z); oKer and oZ are the session
// orientations of Ker(B_f) and z.
OrientedPolarization reduce_orientation(const LieRing& L, const HeisenbergData& H,
                                        const OrientedPolarization& op,
                                        const Orientation& oKer = {},
                                        const Orientation& oZ = {});

// All subgroups with L = L^perp; guard |A| <= 5^6.
std::vector<Subgroup> enumerate_lagrangians(const AbelianGroup& A, const Pairing& omega);

} // namespace orbitforge
