#pragma once

// The barycentric bicomplex: for each cosimplicial degree n (a column)
// and each nerve degree d, the free module on degree-d chains at (m, n),
// with
//   H(d, n): (d, n) -> (d - 1, n)  alternating chain-deletion boundary,
//   V(d, n): (d, n) -> (d, n + 1)  alternating elementwise coface sum.
//
// H^2 = 0 and V^2 = 0 hold as exact integer identities for all m.  The
// commutation H V = V H holds at m = 2 but genuinely fails from m = 3 on:
// the extremal cofaces d_0 and d_{n+1} are not monotone for the chain
// order once depths can exceed 1, so some elementwise image chains stop
// ascending strictly and are normalized to zero, and the two composition
// orders zero out different chains.  Builds record this in `hv_commutes`
// and count the normalized-away chains instead of failing, so the
// columns (whose homology is meaningful for every m) stay computable.

#include <cstdint>
#include <vector>

#include "foxweave/chains.hpp"
#include "foxweave/sparse.hpp"

namespace foxweave {

struct BicomplexColumn {
    // lists[d]: generator basis of bidegree (d, n), d = 0..dmax(n).
    std::vector<ChainList> lists;
    // H[d]: (d, n) -> (d - 1, n) for d >= 1; H[0] has zero rows.
    std::vector<SparseZ> H;
    // V[d]: (d, n) -> (d, n + 1); empty when this is the last column.
    std::vector<SparseZ> V;
};

struct Bicomplex {
    int m = 2;
    int n_max = 1;
    // Column n_max receives V but does not emit it.
    bool truncated = true;
    // False when H V = V H failed somewhere in the built range (m >= 3).
    bool hv_commutes = true;
    // Elementwise coface image chains normalized to zero (non-ascending).
    std::int64_t zeroed_image_chains = 0;
    std::vector<BicomplexColumn> columns; // index n = 0..n_max

    int dmax(int n) const { return (m - 1) * (n > 1 ? n - 1 : 0); }
    std::int64_t dim(int n, int d) const {
        if (n < 0 || n > n_max || d < 0 || d > dmax(n)) return 0;
        return columns[static_cast<size_t>(n)].lists[static_cast<size_t>(d)].count();
    }
    const SparseZ& H(int n, int d) const {
        return columns[static_cast<size_t>(n)].H[static_cast<size_t>(d)];
    }
    const SparseZ& V(int n, int d) const {
        return columns[static_cast<size_t>(n)].V[static_cast<size_t>(d)];
    }
};

// Alternating deletion boundary on degree-d chains at (m, n); d >= 1.
SparseZ nerve_boundary(int m, int n, int d);

// Alternating sum of elementwise cofaces, (d, n) -> (d, n + 1).
// Image chains that fail strict ascent are sent to 0; when `zeroed` is
// non-null the number of such chains is added to it.
SparseZ coface_differential(int m, int n, int d, std::int64_t* zeroed = nullptr);

// Elementwise codegeneracy s_j on degree-d chains, (d, n) -> (d, n - 1);
// image chains that are no longer strictly ascending map to 0.  n >= 2.
SparseZ codegeneracy_matrix(int m, int n, int d, int j);

// Build every column 0 <= n <= n_max, verifying H^2 = 0 and V^2 = 0
// (InvariantViolation on failure) and recording whether H V = V H.
Bicomplex build_bicomplex(int m, int n_max, std::int64_t cap = 50'000'000);

} // namespace foxweave
