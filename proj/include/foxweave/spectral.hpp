#pragma once

// Spectral-sequence engine for the bounded bicomplex.
//
// Filtration and indexing (homology variance): a generator in bidegree
// (d, n) sits at filtration level p = -n with q = d, total degree
// t = p + q = d - n.  The total differential D = H + (-1)^d V lowers t
// by one and never raises the level.  Page entries are computed two
// independent ways and reconciled:
//   (1) explicit representatives: column homology gives E_1 with a
//       representative vector per class; page recursion corrects the
//       representatives so that D drops r filtration levels, and d_r is
//       read off the leading component of D;
//   (2) window ranks: one column-echelon reduction of D per total
//       degree, columns fed in ascending filtration order and pivots
//       chosen topmost against rows sorted by descending filtration,
//       yields the rank of every (column-prefix x row-prefix) window and
//       hence all the subquotient dimensions in closed form.
// A mismatch raises InvariantViolation.
//
// Cohomology variance runs the same engine on the transposed matrices
// with level +n and internal degree n - d; entries are reported with
// p = n and q = d - 2n (so p + q is the cohomological total degree
// d - n), and d_r maps (p, q) to (p - r, q + r + 1).
//
// Truncation: the built bicomplex stops at column n_max, so a page
// entry is flagged reliable at page r only when n + r <= n_max - 1.
//
// Coefficients: pages need a field (Q or F_p).  Over Z the engine
// offers column homology and total-complex homology only; page
// subquotients over Z are deliberately out of scope.

#include <cstdint>
#include <string>
#include <vector>

#include "foxweave/bicomplex.hpp"
#include "foxweave/exact.hpp"

namespace foxweave {

enum class Variance { homology, cohomology };

// ---- total complex ----------------------------------------------------

struct FilteredComplex {
    Ring ring = Ring::Q;
    long p = 0;
    int tmin = 0; // lowest populated total degree (d - n)
    int tmax = 0;
    struct Block {
        int n = 0;
        int d = 0;
        int level = 0; // -n
        std::int64_t count = 0;
        std::int64_t offset = 0; // first generator index within the degree
    };
    // blocks[t - tmin]: blocks of total degree t, ascending level.
    std::vector<std::vector<Block>> blocks;
    // D[t - tmin]: C_t -> C_{t-1}, both sides in the block order above.
    std::vector<ExactMatrix> D;

    std::int64_t dim(int t) const;
};

// Assemble D = H + (-1)^d V and verify D^2 = 0.  The square vanishes iff
// H V = V H, which fails from m = 3 on; in that case this throws
// InvariantViolation rather than producing a non-complex.
FilteredComplex total_complex(const Bicomplex& b, Ring ring = Ring::Q,
                              long p = 0);

// ---- pages ------------------------------------------------------------

struct PageCell {
    int p = 0;
    int q = 0;
    std::int64_t dim = 0;
    bool reliable = false;
    // d_r out of this cell; shape dim(target) x dim(this cell).
    ExactMatrix d;
    int target_p = 0;
    int target_q = 0;
};

struct SpectralPage {
    int r = 1;
    Variance variance = Variance::homology;
    std::vector<PageCell> cells; // sorted by (p, q); only nonzero dims
    const PageCell* cell(int p, int q) const;
    std::int64_t dim(int p, int q) const;
};

// Pages E_1 .. E_{r_max}.  Field coefficients only (ConfigError on Z);
// r_max >= 1.  When H V != V H (m >= 3) only E_1 is available and
// r_max >= 2 throws InvariantViolation; moreover the induced d_1 is
// then not well-defined (V does not preserve H-cycles), so the E_1
// cells carry 0 x dim placeholder d matrices and dimensions only.
std::vector<SpectralPage> pages(const Bicomplex& b, Ring ring, long p,
                                int r_max,
                                Variance variance = Variance::homology);

// Same engine on a conormalized bicomplex (ring and modulus taken from
// it); used for the normalization-independence comparison.
struct ConormalizedBicomplex;
std::vector<SpectralPage> conormal_pages(const ConormalizedBicomplex& c,
                                         int r_max,
                                         Variance variance = Variance::homology);

// ---- integral column homology ----------------------------------------

// SNF-based Z homology of column n of the nerve direction, degrees
// 0..dmax(n): Betti numbers and torsion.
std::vector<HomologySummary> integral_column_homology(const Bicomplex& b,
                                                      int n);

// ---- reports ----------------------------------------------------------

enum class ReportFormat { csv, json };

// Table of (r, p, q, dim, reliable) rows; JSON can embed the d_r
// matrices as coordinate triplets.
std::string page_report(const std::vector<SpectralPage>& pages,
                        ReportFormat format, bool with_matrices = false);

} // namespace foxweave
