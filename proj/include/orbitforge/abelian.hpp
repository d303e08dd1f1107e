#pragma once

#include "orbitforge/cyclotomic.hpp"
#include "orbitforge/linalg.hpp"

#include <optional>
#include <vector>

// Finite abelian p-groups A = ⊕ Z/p^{e_i} with a distinguished ordered basis.
// Subgroups are integer lattices L with diag(p^{e_i}) ⊆ L ⊆ Z^k; the row
// Hermite normal form of L is the canonical representative (this realizes the
// Howell form of the generator matrix over the residue coordinate rings).

namespace orbitforge {

struct AbelianGroup {
  long p = 3;
  std::vector<long> exponents; // e_1 >= e_2 >= ... >= 1

  long k() const { return (long)exponents.size(); }
  long maxExp() const { return exponents.empty() ? 0 : exponents.front(); }
  long len() const; // sum of exponents = log_p |A|
  ZZ order() const;
  long modulus(long i) const; // p^{e_i}, fits in long for the sizes we handle

  bool operator==(const AbelianGroup&) const = default;
};

// Elements are reduced coordinate vectors, x_i in [0, p^{e_i}).
using Elt = std::vector<long>;

Elt elt_reduce(const AbelianGroup& A, const std::vector<ZZ>& x);
Elt elt_reduce(const AbelianGroup& A, const std::vector<long>& x);
Elt elt_add(const AbelianGroup& A, const Elt& x, const Elt& y);
Elt elt_neg(const AbelianGroup& A, const Elt& x);
Elt elt_scale(const AbelianGroup& A, long c, const Elt& x);
Elt elt_zero(const AbelianGroup& A);
bool elt_is_zero(const Elt& x);
long elt_order(const AbelianGroup& A, const Elt& x); // p-power, as a long
// Apply a morphism given by its matrix (row i = image of g_i in B-coords).
Elt elt_apply(const AbelianGroup& B, const ZMat& m, const Elt& x);
std::vector<Elt> all_elements(const AbelianGroup& A); // guard: |A| <= 5^6

// Row-convention morphism check: f(g_i) = row_i requires
// p^{e_i(A)} * row_i = 0 in B.
bool is_morphism(const AbelianGroup& A, const AbelianGroup& B, const ZMat& m);

struct Subgroup {
  AbelianGroup ambient;
  ZMat lat; // k x k HNF lattice, diag(p^{e_i}) ⊆ rowspan ⊆ Z^k

  ZZ size() const;
  bool contains(const Elt& x) const;
  bool operator==(const Subgroup&) const = default;
};

Subgroup subgroup_from_generators(const AbelianGroup& A, const std::vector<Elt>& gens);
Subgroup subgroup_from_lattice(const AbelianGroup& A, const ZMat& rows); // rows stacked with relations
Subgroup zero_subgroup(const AbelianGroup& A);
Subgroup full_subgroup(const AbelianGroup& A);
Subgroup sg_sum(const Subgroup& s, const Subgroup& t);
Subgroup sg_intersect(const Subgroup& s, const Subgroup& t);
bool sg_subset(const Subgroup& s, const Subgroup& t); // s ⊆ t
// Generators of S as reduced elements (the HNF rows, nonzero ones).
std::vector<Elt> sg_generators(const Subgroup& s);
std::vector<Elt> sg_elements(const Subgroup& s);

// All subgroups of order <= max_order (0 = no bound), each exactly once.
std::vector<Subgroup> enumerate_subgroups(const AbelianGroup& A, const ZZ& max_order = 0);

// --- characters and pairings ------------------------------------------------

// Session choice of the base additive character psi_0: x -> zeta_p^{m x}.
// Default m = 1; changing m exists to exercise root-of-unity independence.
long psi0_scale();
void set_psi0_scale(long m);

struct GroupCharacter {
  AbelianGroup target;
  std::vector<long> c; // c_i modulo p^{e_i}

  // Exponent a with value zeta_{p^E}^a, E = maxExp; psi0 scale applied.
  long exp_on(const Elt& x) const;
  Cyc eval(const CycField& f, const Elt& x) const;
  bool is_trivial() const;
};

struct Pairing {
  AbelianGroup A, B;
  ZMat c; // c(i,j): row i is the exponent vector of a character of B

  // Exponent a with value(x,y) = zeta_{p^{E_B}}^a (psi0 scale applied).
  long exp_on(const Elt& x, const Elt& y) const;
  Cyc eval(const CycField& f, const Elt& x, const Elt& y) const;
};

// Well-definedness of the bi-additive map (p^{e_i(A)} c_ij = 0 in Z/p^{e_j(B)}).
bool pairing_valid(const Pairing& w);
bool pairing_perfect(const Pairing& w);   // A -> Hom(B, C^x) bijective
bool pairing_symmetric(const Pairing& w); // needs A == B
bool pairing_skew(const Pairing& w);      // w(a,a) = 1 for all a (needs A == B)
Pairing pairing_transpose(const Pairing& w);

// {a in B | w(s, a) = 1 for all s in S}, S ⊆ A.
Subgroup perp(const Subgroup& s, const Pairing& w);

// --- quotients and presentations -------------------------------------------

struct Quotient {
  AbelianGroup grp;  // sorted-exponent presentation of A/S
  ZMat proj;         // k_A x k_Q: x -> reduce(x * proj)
  ZMat sect;         // k_Q x k_A: section, proj∘sect = id on the quotient
  Subgroup ker;      // S
};

Quotient quotient(const AbelianGroup& A, const Subgroup& s);

// S presented abstractly: grp with emb (row i = image of i-th generator in
// ambient coordinates); canonical choice from the Smith form of the lattice.
struct SubPresentation {
  AbelianGroup grp;
  ZMat emb; // k_S x k_A
};

SubPresentation sub_presentation(const Subgroup& s);

// Coordinates of y with respect to a subgroup presentation of a subgroup of
// A; throws if y is not in the subgroup.
Elt sub_coords(const AbelianGroup& A, const SubPresentation& k, const Elt& y);

// Exponents over zeta_{p^E} from the raw coefficients, without the session
// psi0 scale; used when transporting structure rather than evaluating.
long raw_character_exp(const GroupCharacter& f, const Elt& x);
long raw_pairing_exp(const Pairing& w, const Elt& x, const Elt& y);

// A_1 (+) ... (+) A_r with the sorted-exponent presentation; inj[i] and
// proj[i] are the morphism matrices (row convention) in and out of part i.
struct DirectSum {
  AbelianGroup grp;
  std::vector<ZMat> inj;
  std::vector<ZMat> proj;
};

DirectSum direct_sum(const std::vector<AbelianGroup>& parts);

// --- canonical filtration and determinant lines -----------------------------

// dim gr_n(A) for n = 0 .. maxExp-1.
std::vector<long> graded_dims(const AbelianGroup& A);
// Coordinates of x in p^n A / p^{n+1} A w.r.t. the basis {p^n g_i : e_i > n}.
std::vector<long> gr_coords(const AbelianGroup& A, long n, const Elt& x);

struct Orientation {
  long scalar = 1; // in F_p^x, against std(A) of a fixed presentation
};

// Scalar of the determinant element of the ordered generating sequence
// (rows of m) against std(A); requires the order profile of the rows to
// match the exponent profile levelwise. Returns 0 if degenerate.
long orientation_of_rows(const AbelianGroup& A, const ZMat& m);
// Π_n det_{F_p}(gr_n(phi)) for an automorphism phi (row convention).
long det_automorphism(const ZMat& phi, const AbelianGroup& A);

// Scalar λ with {Σ}(std(A)) = λ · std(K) ⊗ std(Q) for the filtered
// three-term complex K → A → Q, K presented by sub_presentation(s),
// Q presented by q (which must be quotient(A, s)).
long exact_sequence_factor(const Subgroup& s, const Quotient& q);

// det(b)(oA ⊗ oB) in F_p^x for a perfect pairing b on A ⊗ B.
long det_pairing(const Pairing& b, const Orientation& oA, const Orientation& oB);

} // namespace orbitforge
