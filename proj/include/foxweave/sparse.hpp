#pragma once

// Sparse integer matrices in compressed-sparse-column form with 32-bit
// values.  The bicomplex differentials have at most n + 2 entries per
// column with values in {-1, 0, +1}, so int32 storage is exact; products
// are accumulated in int64 (and the deepest composites computed here are
// double products of +/-1 matrices, far below overflow).

#include <cstdint>
#include <vector>

namespace foxweave {

struct SparseZ {
    std::int64_t rows = 0;
    std::int64_t cols = 0;
    std::vector<std::int64_t> colptr; // size cols + 1
    std::vector<std::int32_t> rowidx; // size nnz, ascending within a column
    std::vector<std::int32_t> val;    // size nnz, nonzero

    bool operator==(const SparseZ&) const = default;
};

// Zero matrix of the given shape.
SparseZ sparse_zero(std::int64_t rows, std::int64_t cols);

// Build from per-column (row, value) pairs; entries with equal row are
// summed, zeros dropped, rows sorted.  `triplets[c]` lists column c.
SparseZ sparse_from_columns(
    std::int64_t rows,
    std::vector<std::vector<std::pair<std::int32_t, std::int32_t>>> triplets);

// Exact product a * b (shapes must agree).
SparseZ sparse_multiply(const SparseZ& a, const SparseZ& b);

// a + s * b for scalar s (same shape).
SparseZ sparse_add(const SparseZ& a, const SparseZ& b, std::int32_t s = 1);

// s * a.
SparseZ sparse_scale(const SparseZ& a, std::int32_t s);

bool sparse_is_zero(const SparseZ& a);

std::int64_t sparse_nnz(const SparseZ& a);

SparseZ sparse_transpose(const SparseZ& a);

// Identity.
SparseZ sparse_identity(std::int64_t k);

} // namespace foxweave
