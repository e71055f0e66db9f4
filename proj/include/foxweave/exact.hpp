#pragma once

// Exact linear algebra over Q, F_p, and Z: ranks, kernel/image bases,
// Smith normal form, and homology of a two-step complex.  All values are
// arbitrary precision (GMP); there is no floating point anywhere in this
// layer.  Matrices are column-major sparse; Smith normal form is dense
// and intended for the desk-scale column computations only.

#include <climits>
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "foxweave/sparse.hpp"

namespace foxweave {

enum class Ring { Q, Fp, Z };

// A sparse vector: (row, value) pairs sorted by row, values nonzero.
using SparseVecQ = std::vector<std::pair<std::int64_t, mpq_class>>;

struct ExactMatrix {
    Ring ring = Ring::Q;
    long p = 0; // prime modulus when ring == Fp
    std::int64_t rows = 0;
    std::int64_t cols = 0;
    std::vector<SparseVecQ> entries; // one sorted column per index

    bool operator==(const ExactMatrix&) const = default;
};

// Field arithmetic for Q and F_p (F_p values are canonical residues in
// [0, p) with denominator 1).
struct FieldOps {
    Ring ring = Ring::Q;
    long p = 0;

    mpq_class canon(const mpq_class& v) const;
    mpq_class add(const mpq_class& a, const mpq_class& b) const {
        return canon(a + b);
    }
    mpq_class mul(const mpq_class& a, const mpq_class& b) const {
        return canon(a * b);
    }
    mpq_class neg(const mpq_class& a) const { return canon(-a); }
    mpq_class inv(const mpq_class& a) const;
    mpq_class div(const mpq_class& a, const mpq_class& b) const {
        return mul(a, inv(b));
    }
};

// Make a field-ops object for the matrix's ring; throws on Ring::Z.
FieldOps field_of(const ExactMatrix& m);

ExactMatrix exact_zero(Ring ring, long p, std::int64_t rows, std::int64_t cols);
ExactMatrix exact_identity(Ring ring, long p, std::int64_t k);

// Convert an integer sparse matrix into the given ring.
ExactMatrix exact_from_sparse(const SparseZ& s, Ring ring, long p = 0);

// Build helper: overwrite entry (r, c); value is canonicalized, zeros
// delete the entry.
void exact_set(ExactMatrix& m, std::int64_t r, std::int64_t c,
               const mpq_class& v);
mpq_class exact_get(const ExactMatrix& m, std::int64_t r, std::int64_t c);

ExactMatrix exact_multiply(const ExactMatrix& a, const ExactMatrix& b);
ExactMatrix exact_add(const ExactMatrix& a, const ExactMatrix& b);
ExactMatrix exact_scale(const ExactMatrix& a, const mpq_class& s);
ExactMatrix exact_transpose(const ExactMatrix& a);
bool exact_is_zero(const ExactMatrix& a);

// ---- elimination ------------------------------------------------------

// Incremental column echelon over a field.  Inserted columns are fully
// reduced against all previous pivots; the stored column's topmost row is
// its pivot.  Because reduction against a pivot touches only rows at or
// below the pivot row, the count of pivots inside any (row-prefix x
// column-prefix) window equals the exact rank of that window — the
// property the spectral engine's filtration bookkeeping relies on.
class Eliminator {
public:
    Eliminator(Ring ring, long p) : F{ring, p} {}

    // Reduce v in place against echelon columns with index < limit.  When
    // coeffs is non-null, appends (echelon index, multiplier) for each
    // elimination performed, so that
    //   v_original = v_reduced + sum multiplier * column(index).
    void reduce(SparseVecQ& v,
                std::vector<std::pair<int, mpq_class>>* coeffs = nullptr,
                int limit = INT_MAX) const;

    // Fully reduce and store if nonzero; returns the new echelon index,
    // or -1 when v reduced to zero.
    int insert(SparseVecQ v,
               std::vector<std::pair<int, mpq_class>>* coeffs = nullptr);

    int size() const { return static_cast<int>(cols_.size()); }
    std::int64_t pivot_row(int k) const {
        return pivots_[static_cast<size_t>(k)];
    }
    const SparseVecQ& column(int k) const { return cols_[static_cast<size_t>(k)]; }
    const FieldOps& field() const { return F; }

private:
    FieldOps F;
    std::vector<SparseVecQ> cols_;
    std::vector<std::int64_t> pivots_;
    std::unordered_map<std::int64_t, int> by_row_;
};

// v += s * w on sorted sparse vectors (field arithmetic).
SparseVecQ sparse_axpy(const FieldOps& F, const SparseVecQ& v,
                       const mpq_class& s, const SparseVecQ& w);

// ---- ranks, bases, homology ------------------------------------------

// Exact rank; fields directly, Z via the rational rank.
std::int64_t rank(const ExactMatrix& m);

// Kernel/image bases over a field (dense vectors); Z is rejected.
std::vector<std::vector<mpq_class>> kernel_basis(const ExactMatrix& m);
std::vector<std::vector<mpq_class>> image_basis(const ExactMatrix& m);

// Dense Smith normal form result over Z: U * M * V = S with U, V
// unimodular and the diagonal a divisibility chain.
struct SnfResult {
    std::vector<std::vector<mpz_class>> U, S, V;
    std::vector<mpz_class> invariant_factors; // nonzero diagonal, in order
};
SnfResult smith_normal_form(const ExactMatrix& m);

struct HomologySummary {
    std::int64_t kernel_rank = 0; // dim ker d_out
    std::int64_t image_rank = 0;  // rank of the incoming d_in
    std::int64_t betti = 0;       // kernel_rank - image_rank
    std::vector<mpz_class> torsion; // invariant factors > 1 (Z only)
};

// Homology at the middle of  C' --d_in--> C --d_out--> C''.  Asserts
// d_out * d_in = 0 (InvariantViolation otherwise).  Over Z the ranks are
// rational ranks and torsion comes from the SNF of d_in.
HomologySummary homology(const ExactMatrix& d_in, const ExactMatrix& d_out);

} // namespace foxweave
