#pragma once

#include "orbitforge/cycmat.hpp"
#include "orbitforge/polar.hpp"

#include <map>
#include <string>

// Induced representations rho_{f,p} of Exp(g) in the delta-function model,
// the averaging intertwiners Phi, the cocycle alpha (by three independent
// routes), the normalized intertwiners Psi, and the end-to-end checks:
// compatibility of the Psi family, reduction of alpha to the Heisenberg
// ring, and Stone-von Neumann uniqueness.

namespace orbitforge {

// chi_f(x) = f(log x); log is the identity on coordinates, and chi_f is
// multiplicative on the group of any polarization containing x.
Cyc chi_f(const GroupCharacter& f, const CycField& F, const Elt& x);

struct InducedRep {
  LieRing ring;
  GroupCharacter f;
  Subgroup pol;
  std::vector<Elt> reps;       // transversal of P\G, coset-sorted
  std::map<Elt, long> coset;   // g -> index of its right coset P g

  long dim() const { return (long)reps.size(); }
};

// Deterministic transversal (lex-least representative per coset); a nonzero
// seed rechooses representatives within their cosets and permutes the basis
// order, which must not affect any verified identity.
InducedRep induce(const LieRing& L, const GroupCharacter& f, const Subgroup& pol,
                  unsigned long seed = 0);

// Matrix of rho(h): column j maps to sum_i M(i,j) e_i; monomial.
CycMat rep_matrix(const InducedRep& R, const CycField& F, const Elt& h);

// The averaging operator V_{f,p2} -> V_{f,p1} of the unnormalized formula;
// unitary and intertwining.
CycMat phi_intertwiner(const InducedRep& R1, const InducedRep& R2, const CycField& F);

// Caches induced models per polarization for the alpha/Psi routines.
class RepFamily {
public:
  RepFamily(const LieRing& L, GroupCharacter f, unsigned long seed = 0);

  const InducedRep& model(const Subgroup& pol);
  const LieRing& ring() const { return L_; }
  const GroupCharacter& f() const { return f_; }

private:
  LieRing L_;
  GroupCharacter f_;
  unsigned long seed_;
  std::map<std::vector<ZZ>, InducedRep> cache_;
};

// alpha by operator composition: the verified scalar of Phi12 Phi23 Phi31.
Cyc alpha_compose(RepFamily& fam, const CycField& F, const Subgroup& p1,
                  const Subgroup& p2, const Subgroup& p3);
// alpha by the closed triple-sum formula over {p3 p2 p1 = 1}.
Cyc alpha_formula(const LieRing& L, const GroupCharacter& f, const CycField& F,
                  const Subgroup& p1, const Subgroup& p2, const Subgroup& p3);
// alpha for neighboring p1, p2 by the abelian sum over {p3 + p2 + p1 = 0}.
Cyc alpha_neighbor_formula(const LieRing& L, const GroupCharacter& f, const CycField& F,
                           const Subgroup& p1, const Subgroup& p2, const Subgroup& p3);

// beta = gamma(1)^{-m^2} gamma(theta), m = len(p1) - len(p1 cap p2) - 1.
Cyc beta_factor(const LieRing& L, const GroupCharacter& f, const CycField& F,
                const OrientedPolarization& op1, const OrientedPolarization& op2);

// Psi = beta * Phi.
CycMat psi_intertwiner(RepFamily& fam, const CycField& F,
                       const OrientedPolarization& op1, const OrientedPolarization& op2);

struct RepReport {
  bool ok = true;
  long checked = 0;
  std::vector<std::string> failures;
};

using OrientedTriple = std::array<OrientedPolarization, 3>;
using PolTriple = std::array<Subgroup, 3>;

// Psi12 Psi23 Psi31 = Id for every triple; also cross-checks
// alpha = beta12 beta23 beta31.
RepReport verify_compatibility(RepFamily& fam, const CycField& F,
                               const std::vector<OrientedTriple>& triples);

// alpha(p1,p2,p3) = alpha(p1^f,p2^f,p3^f) through the Heisenberg reduction.
RepReport verify_reduction(const LieRing& L, const GroupCharacter& f, const CycField& F,
                           const std::vector<PolTriple>& triples);

// On a Heisenberg ring with psi = f|_z injective: all Lagrangian-induced
// representations share one character, it vanishes off the center, has
// dimension sqrt|A|, and is the unique irreducible with central character psi.
RepReport stone_von_neumann_check(const LieRing& H, const GroupCharacter& f,
                                  const CycField& F);

// The Lagrangians of the Heisenberg ring H, as polarizations L + z.
std::vector<Subgroup> heisenberg_polarizations(const LieRing& H);

} // namespace orbitforge
