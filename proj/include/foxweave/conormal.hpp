#pragma once

// Conormalization: replace each column space X^n by the intersection of
// the kernels of all codegeneracy matrices s_0 .. s_{n-1}, with induced
// differentials.  The codegeneracies commute with the nerve boundary H
// (they are nerves of monotone poset maps, and normalized chains are
// functorial), so H always restricts to the kernels.  The coface sum V,
// however, only restricts when the mixed cosimplicial identities hold —
// and for this operator family they genuinely fail at the extremal
// coface indices, so V does NOT map the kernel intersection into the
// next one as soon as the source kernel is nonzero (column n >= 2).
// conormalize therefore attempts the corestriction by an exact solve
// and throws InvariantViolation with the offending bidegree when the
// solve is infeasible; it is not silently approximated.  Builds with
// n_max <= 2 succeed (the column-1 kernel is zero, so nothing is
// tested there); n_max >= 3 throws, for every m.

#include <cstdint>
#include <vector>

#include "foxweave/bicomplex.hpp"
#include "foxweave/exact.hpp"

namespace foxweave {

struct ConormalizedBicomplex {
    int m = 2;
    int n_max = 1;
    Ring ring = Ring::Q;
    long p = 0;
    // dims[n][d]: dimension of the conormalized space at (d, n).
    std::vector<std::vector<std::int64_t>> dims;
    // basis[n][d]: inclusion of the conormalized space into the plain
    // column space (plain-dim x conormalized-dim).
    std::vector<std::vector<ExactMatrix>> basis;
    // H[n][d]: induced boundary (d, n) -> (d - 1, n), d >= 1.
    std::vector<std::vector<ExactMatrix>> H;
    // V[n][d]: induced coface sum (d, n) -> (d, n + 1), n < n_max.
    std::vector<std::vector<ExactMatrix>> V;

    int dmax(int n) const { return (m - 1) * (n > 1 ? n - 1 : 0); }
};

// Throws InvariantViolation when V fails to corestrict (any m >= 2 with
// n_max >= 3); succeeds for n_max <= 2.
ConormalizedBicomplex conormalize(const Bicomplex& b, Ring ring = Ring::Q,
                                  long p = 0);

// The codegeneracy matrices of column n stacked vertically (all j), with
// the matrix-level special case n = 1: a single s_0 collapsing the
// one-leaf column onto the n = 0 column.  Used by conormalize and by
// the verification suites.
ExactMatrix stacked_codegeneracies(const Bicomplex& b, int n, int d,
                                   Ring ring, long p);

} // namespace foxweave
