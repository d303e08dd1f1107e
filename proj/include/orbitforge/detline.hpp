#pragma once

#include "orbitforge/abelian.hpp"

// Determinant-line bookkeeping for filtered three-term complexes of finite
// abelian p-groups.  The exact complex C0 -> C1 -> C2 is filtered by the
// canonical filtrations F_lev = p^lev; the induced spectral sequence consists
// of F_p pages, and composing the based-torsion isomorphism of every page
// (with the Koszul sign rule (-1)^{n n'} for reordering graded determinant
// factors) contracts the signed factor list
//   [gr K asc, +] [gr A desc, -] [gr Q asc, +]
// to a scalar once the pages vanish.

namespace orbitforge {

// Contraction scalar of std(C0) (x) std(C1)^dual (x) std(C2) under the
// composite torsion trivialization.  d0, d1 use the row convention.
long filtered_torsion_contraction(const AbelianGroup& c0, const AbelianGroup& c1,
                                  const AbelianGroup& c2, const ZMat& d0,
                                  const ZMat& d1);

} // namespace orbitforge
