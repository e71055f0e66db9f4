#include "foxweave/conormal.hpp"

#include <string>

#include "foxweave/errors.hpp"

namespace foxweave {

namespace {

// Express every column of target as a combination of the columns of
// basis; returns the coefficient matrix X with basis * X = target.
// Throws InvariantViolation when some column lies outside the span.
ExactMatrix express_in_basis(const ExactMatrix& basis,
                             const ExactMatrix& target,
                             const std::string& what) {
    if (basis.rows != target.rows)
        throw ConfigError("express_in_basis: row mismatch");
    FieldOps F = field_of(basis);
    Eliminator el(basis.ring, basis.p);
    std::vector<SparseVecQ> comb; // echelon column as combo of basis columns
    for (std::int64_t j = 0; j < basis.cols; ++j) {
        std::vector<std::pair<int, mpq_class>> coeffs;
        SparseVecQ expr{{j, mpq_class(1)}};
        const int idx = el.insert(basis.entries[static_cast<size_t>(j)], &coeffs);
        for (const auto& [k, c] : coeffs)
            expr = sparse_axpy(F, expr, F.neg(c), comb[static_cast<size_t>(k)]);
        if (idx < 0)
            throw InvariantViolation("express_in_basis: dependent basis column");
        comb.push_back(std::move(expr));
    }
    ExactMatrix X = exact_zero(basis.ring, basis.p, basis.cols, target.cols);
    for (std::int64_t j = 0; j < target.cols; ++j) {
        std::vector<std::pair<int, mpq_class>> coeffs;
        SparseVecQ v = target.entries[static_cast<size_t>(j)];
        el.reduce(v, &coeffs);
        if (!v.empty())
            throw InvariantViolation(what + ": column outside the subspace");
        SparseVecQ expr;
        for (const auto& [k, c] : coeffs)
            expr = sparse_axpy(F, expr, c, comb[static_cast<size_t>(k)]);
        X.entries[static_cast<size_t>(j)] = std::move(expr);
    }
    return X;
}

ExactMatrix basis_from_kernel(const ExactMatrix& stacked, std::int64_t dim) {
    std::vector<std::vector<mpq_class>> ker = kernel_basis(stacked);
    ExactMatrix K = exact_zero(stacked.ring, stacked.p, dim,
                               static_cast<std::int64_t>(ker.size()));
    for (size_t j = 0; j < ker.size(); ++j)
        for (std::int64_t r = 0; r < dim; ++r)
            if (ker[j][static_cast<size_t>(r)] != 0)
                K.entries[j].emplace_back(r, ker[j][static_cast<size_t>(r)]);
    return K;
}

} // namespace

ExactMatrix stacked_codegeneracies(const Bicomplex& b, int n, int d, Ring ring,
                                   long p) {
    if (n < 1 || n > b.n_max)
        throw ConfigError("stacked_codegeneracies: column out of range");
    const std::int64_t dim = b.dim(n, d);
    if (n == 1) {
        // Matrix-level s_0 onto the n = 0 column: the single degree-0
        // chain maps to the single empty chain.
        ExactMatrix s = exact_zero(ring, p, b.dim(0, d), dim);
        if (d == 0 && dim == 1) s.entries[0].emplace_back(0, 1);
        return s;
    }
    ExactMatrix stacked = exact_zero(ring, p, 0, dim);
    for (int j = 0; j <= n - 1; ++j) {
        ExactMatrix s =
            exact_from_sparse(codegeneracy_matrix(b.m, n, d, j), ring, p);
        for (std::int64_t c = 0; c < dim; ++c)
            for (const auto& [r, v] : s.entries[static_cast<size_t>(c)])
                stacked.entries[static_cast<size_t>(c)].emplace_back(
                    stacked.rows + r, v);
        stacked.rows += s.rows;
    }
    return stacked;
}

ConormalizedBicomplex conormalize(const Bicomplex& b, Ring ring, long p) {
    if (ring == Ring::Z)
        throw ConfigError("conormalize: field coefficients required");
    ConormalizedBicomplex out;
    out.m = b.m;
    out.n_max = b.n_max;
    out.ring = ring;
    out.p = p;
    out.dims.resize(static_cast<size_t>(b.n_max) + 1);
    out.basis.resize(static_cast<size_t>(b.n_max) + 1);
    out.H.resize(static_cast<size_t>(b.n_max) + 1);
    out.V.resize(static_cast<size_t>(b.n_max) + 1);
    for (int n = 0; n <= b.n_max; ++n) {
        for (int d = 0; d <= b.dmax(n); ++d) {
            ExactMatrix K;
            if (n == 0) {
                K = exact_identity(ring, p, b.dim(0, d));
            } else {
                K = basis_from_kernel(stacked_codegeneracies(b, n, d, ring, p),
                                      b.dim(n, d));
            }
            out.dims[static_cast<size_t>(n)].push_back(K.cols);
            out.basis[static_cast<size_t>(n)].push_back(std::move(K));
        }
    }
    // Induced H: the codegeneracies commute with the deletion boundary,
    // so the kernels are H-stable and the solve always succeeds.
    for (int n = 0; n <= b.n_max; ++n) {
        auto& col = out.H[static_cast<size_t>(n)];
        col.push_back(exact_zero(ring, p, 0, out.dims[static_cast<size_t>(n)][0]));
        for (int d = 1; d <= b.dmax(n); ++d) {
            ExactMatrix Hd = exact_from_sparse(b.H(n, d), ring, p);
            ExactMatrix HK = exact_multiply(
                Hd, out.basis[static_cast<size_t>(n)][static_cast<size_t>(d)]);
            col.push_back(express_in_basis(
                out.basis[static_cast<size_t>(n)][static_cast<size_t>(d - 1)], HK,
                "conormalize: induced H"));
        }
    }
    // Induced V: genuinely unavailable once n_max >= 2 (the mixed
    // identities fail at the extremal cofaces); the express step below
    // throws with the offending bidegree in that case.
    for (int n = 0; n < b.n_max; ++n) {
        auto& col = out.V[static_cast<size_t>(n)];
        for (int d = 0; d <= b.dmax(n); ++d) {
            ExactMatrix Vd = exact_from_sparse(b.V(n, d), ring, p);
            ExactMatrix VK = exact_multiply(
                Vd, out.basis[static_cast<size_t>(n)][static_cast<size_t>(d)]);
            try {
                col.push_back(express_in_basis(
                    out.basis[static_cast<size_t>(n) + 1][static_cast<size_t>(d)],
                    VK, "conormalize: induced V"));
            } catch (const InvariantViolation&) {
                throw InvariantViolation(
                    "conormalize: V does not corestrict to the codegeneracy "
                    "kernels at column " +
                    std::to_string(n) + ", degree " + std::to_string(d) +
                    " (the mixed cosimplicial identities fail at extremal "
                    "cofaces, so the conormalized vertical differential does "
                    "not exist)");
            }
        }
    }
    return out;
}

} // namespace foxweave
