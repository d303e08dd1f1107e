#pragma once

#include "orbitforge/abelian.hpp"

// Quadratic modules, discriminants, the Witt group W ~ W0, the Maslov index
// of Lagrangian tuples, Theta, and the gamma index.

namespace orbitforge {

struct QuadraticModule {
  AbelianGroup A;
  Pairing q; // symmetric and perfect
};

// Validates symmetry and perfectness.
QuadraticModule quad_module(const AbelianGroup& A, const ZMat& c);
// <a_1, ..., a_d> over F_p: q(x, y) = psi0(sum a_i x_i y_i).
QuadraticModule diag_module(long p, const std::vector<long>& as);
QuadraticModule dual_module(const QuadraticModule& m);      // q°
QuadraticModule sum_module(const QuadraticModule& m1, const QuadraticModule& m2);

// Class of det(q)(std ⊗ std) in F_p^x/(F_p^x)^2, as its normalized
// representative (see square_class).
long discriminant(const QuadraticModule& m);

struct WittClass {
  long p = 3;
  long parity = 0; // len mod 2
  long disc = 1;   // normalized square-class representative

  bool operator==(const WittClass&) const = default;
};

long square_class(long x, long p); // defined in polar.cpp

WittClass witt_class(const QuadraticModule& m); // (len mod 2, discriminant)
// Independent path: contract p^{n-1}A perps down to an F_p space, then
// diagonalize; equals witt_class.
WittClass witt_class_reduce(const QuadraticModule& m);

WittClass w0_identity(long p);
WittClass w0_mul(const WittClass& a, const WittClass& b);
WittClass w0_inv(const WittClass& a);
// qm(1, a) = <a>, qm(0, a) = <-1, a>.
QuadraticModule qm_realize(const WittClass& c);

// --- Maslov index -----------------------------------------------------------

struct LagrangianTuple {
  AbelianGroup A;
  Pairing omega; // symplectic
  std::vector<Subgroup> L;
};

// (T_L, q_L): homology of L_i∩L_{i+1} -> (+) L_i -> A at the middle term with
// q_L(a, b) = prod_{i > j} omega(a_i, b_j); symmetry and perfectness checked.
QuadraticModule maslov_data(const LagrangianTuple& t);
WittClass maslov_index(const LagrangianTuple& t);

struct OrientedLagrangian {
  Subgroup sub;
  Orientation o;
};

// Relative orientation theta of two maximal isotropic subgroups of a skew
// pairing, as a normalized square-class representative; obar is the
// auxiliary orientation on L1 ∩ L2 (result independent of it).
long theta_lagrangians(const AbelianGroup& A, const Pairing& B,
                       const OrientedLagrangian& l1, const OrientedLagrangian& l2,
                       const Orientation& obar = {});

// Theta(L1~, L2~) = qm(len(L1 / L1∩L2), theta) as a Witt class.
WittClass theta_class(const AbelianGroup& A, const Pairing& omega,
                      const OrientedLagrangian& l1, const OrientedLagrangian& l2);

// --- gamma index ------------------------------------------------------------

// gamma(q) = |A|^{-1/2} sum_a q(a, a/2); an exact fourth root of unity.
Cyc gamma(const QuadraticModule& m, const CycField& F);
Cyc gamma_unit(long a, long p, const CycField& F); // gamma(<a>)
// gamma through W0: gamma(1)^{-(d-1)^2} gamma(disc), d = parity.
Cyc gamma_class(const WittClass& c, const CycField& F);

// --- Lagrangian correspondences ---------------------------------------------

// A1° (+) A2 in direct_sum({A1, A2}) coordinates.
QuadraticModule correspondence_module(const QuadraticModule& m1, const QuadraticModule& m2);

// L31 = { (a, c) | exists b with (a, b) in L21, (b, c) in L32 }.
Subgroup compose_correspondence(const QuadraticModule& m1, const QuadraticModule& m2,
                                const QuadraticModule& m3, const Subgroup& L21,
                                const Subgroup& L32);

} // namespace orbitforge
