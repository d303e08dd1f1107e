#pragma once

#include "orbitforge/abelian.hpp"

#include <string>
#include <tuple>

// Nilpotent Lie rings on finite abelian p-groups of nilpotence class < p,
// the Campbell-Hausdorff group Exp(g) on the same underlying set, and
// coadjoint orbits of characters of the carrier.

namespace orbitforge {

struct LieRing {
  AbelianGroup carrier;
  // full table, table[i][j] = [g_i, g_j] reduced; skew completion of the
  // sparse i<j input
  std::vector<std::vector<Elt>> table;
  long cls = -1; // nilpotence class, cached by validate()

  long k() const { return carrier.k(); }
};

// Build from sparse entries (i, j, value) with i < j; unlisted pairs are 0.
LieRing lie_ring(const AbelianGroup& carrier,
                 const std::vector<std::tuple<long, long, Elt>>& brackets);

struct LieReport {
  bool ok = false;
  long cls = -1;
  std::vector<std::string> errors; // one line per violated axiom, with witness
};

// Checks well-definedness, alternation, Jacobi, and class < p via the lower
// central series; caches the class in L on success.
LieReport validate(LieRing& L);

// Bilinear extension of the structure table.
Elt lie_bracket(const LieRing& L, const Elt& x, const Elt& y);

// Lower central series g = G_1 >= G_2 >= ..., as subgroups of the carrier.
std::vector<Subgroup> lower_central_series(const LieRing& L);

// --- Exp(g) -----------------------------------------------------------------

// Truncated Campbell-Hausdorff product via Dynkin's expansion; requires a
// validated ring (denominators are then invertible mod p^E).
Elt bch_multiply(const LieRing& L, const Elt& x, const Elt& y);
Elt grp_inverse(const LieRing& L, const Elt& x);
Elt grp_pow(const LieRing& L, const Elt& x, long n); // n may be negative
Elt grp_conj(const LieRing& L, const Elt& g, const Elt& x); // g * x * g^{-1}

// Matrix of Ad_g = e^{ad g} acting on the carrier (row convention).
ZMat adjoint_matrix(const LieRing& L, const Elt& g);

// f composed with the morphism given by m (row convention), as coefficients.
std::vector<long> character_compose(const AbelianGroup& A, const ZMat& m,
                                    const std::vector<long>& c);

// --- coadjoint orbits -------------------------------------------------------

struct CoadjointOrbit {
  AbelianGroup carrier;
  std::vector<std::vector<long>> chars; // coefficient vectors, sorted
  ZZ stabilizer;                        // |G| / |orbit|

  const std::vector<long>& rep() const { return chars.front(); } // lex least
  long size() const { return (long)chars.size(); }
};

CoadjointOrbit coadjoint_orbit(const LieRing& L, const GroupCharacter& f);

// |orbit|^{-1/2} sum_{f in orbit} f(log g); log is the identity map on
// coordinates, and |orbit| is an even power of p.
Cyc orbit_character(const LieRing& L, const CoadjointOrbit& o, const CycField& F,
                    const Elt& g);

} // namespace orbitforge
