#include "foxweave/bicomplex.hpp"

#include <algorithm>
#include <utility>

#include "foxweave/errors.hpp"

namespace foxweave {

namespace {

// Deletion boundary between two prebuilt chain lists (same column).
SparseZ nerve_boundary_impl(const ChainList& src, const ChainList& dst) {
    const int d = src.degree;
    std::vector<std::vector<std::pair<std::int32_t, std::int32_t>>> cols(
        static_cast<size_t>(src.count()));
    std::vector<std::int32_t> w(static_cast<size_t>(d));
    for (std::int64_t c = 0; c < src.count(); ++c) {
        const std::int32_t* word = src.word(c);
        auto& col = cols[static_cast<size_t>(c)];
        for (int i = 0; i <= d; ++i) {
            int pos = 0;
            for (int k = 0; k <= d; ++k)
                if (k != i) w[static_cast<size_t>(pos++)] = word[k];
            const std::int64_t r = dst.find(w.data());
            if (r < 0)
                throw InvariantViolation("nerve_boundary: subchain not found");
            col.emplace_back(static_cast<std::int32_t>(r), (i % 2 == 0) ? 1 : -1);
        }
    }
    return sparse_from_columns(dst.count(), std::move(cols));
}

// Elementwise coface image data shared by the coface differential.
struct CofaceTables {
    // img[i][a]: index in the target tree list of d_i applied to source
    // tree a.
    std::vector<std::vector<std::int32_t>> img;
};

CofaceTables coface_tables(const ChainList& src, const ChainList& dst) {
    const int n = src.n;
    CofaceTables t;
    t.img.assign(static_cast<size_t>(n) + 2, {});
    for (int i = 0; i <= n + 1; ++i) {
        auto& row = t.img[static_cast<size_t>(i)];
        row.resize(src.trees.size());
        for (size_t a = 0; a < src.trees.size(); ++a) {
            const FnTree u = coface(i, src.trees[a]);
            const std::int64_t idx = tree_index(u);
            if (idx < 0 || idx >= static_cast<std::int64_t>(dst.trees.size()) ||
                !(dst.trees[static_cast<size_t>(idx)] == u))
                throw InvariantViolation("coface_differential: bad target index");
            row[a] = static_cast<std::int32_t>(idx);
        }
    }
    return t;
}

SparseZ coface_impl(const ChainList& src, const ChainList& dst,
                    std::int64_t* zeroed) {
    const int n = src.n;
    const int d = src.degree;
    const CofaceTables tab = coface_tables(src, dst);
    std::vector<std::vector<std::pair<std::int32_t, std::int32_t>>> cols(
        static_cast<size_t>(src.count()));
    std::vector<std::int32_t> w(static_cast<size_t>(d) + 1);
    for (std::int64_t c = 0; c < src.count(); ++c) {
        const std::int32_t* word = src.word(c);
        auto& col = cols[static_cast<size_t>(c)];
        for (int i = 0; i <= n + 1; ++i) {
            const auto& img = tab.img[static_cast<size_t>(i)];
            bool ascending = true;
            for (int k = 0; k <= d; ++k)
                w[static_cast<size_t>(k)] = img[static_cast<size_t>(word[k])];
            for (int k = 1; k <= d && ascending; ++k) {
                const FnTree& a = dst.trees[static_cast<size_t>(w[k - 1])];
                const FnTree& b = dst.trees[static_cast<size_t>(w[k])];
                // Cofaces are injective, so equality cannot occur; strict
                // ascent can still fail for extremal cofaces at m >= 3.
                if (a == b || !tree_leq(a, b)) ascending = false;
            }
            if (!ascending) {
                if (zeroed) ++*zeroed;
                continue;
            }
            const std::int64_t r = dst.find(w.data());
            if (r < 0)
                throw InvariantViolation("coface_differential: image chain missing");
            col.emplace_back(static_cast<std::int32_t>(r), (i % 2 == 0) ? 1 : -1);
        }
    }
    return sparse_from_columns(dst.count(), std::move(cols));
}

SparseZ codegeneracy_impl(const ChainList& src, const ChainList& dst, int j) {
    const int d = src.degree;
    // Image index of s_j per source tree.
    std::vector<std::int32_t> img(src.trees.size());
    for (size_t a = 0; a < src.trees.size(); ++a) {
        const FnTree u = codegeneracy(j, src.trees[a]);
        img[a] = static_cast<std::int32_t>(tree_index(u));
        if (!(dst.trees[static_cast<size_t>(img[a])] == u))
            throw InvariantViolation("codegeneracy_matrix: bad target index");
    }
    std::vector<std::vector<std::pair<std::int32_t, std::int32_t>>> cols(
        static_cast<size_t>(src.count()));
    std::vector<std::int32_t> w(static_cast<size_t>(d) + 1);
    for (std::int64_t c = 0; c < src.count(); ++c) {
        const std::int32_t* word = src.word(c);
        bool ascending = true;
        for (int k = 0; k <= d; ++k)
            w[static_cast<size_t>(k)] = img[static_cast<size_t>(word[k])];
        for (int k = 1; k <= d && ascending; ++k) {
            const FnTree& a = dst.trees[static_cast<size_t>(w[k - 1])];
            const FnTree& b = dst.trees[static_cast<size_t>(w[k])];
            if (a == b || !tree_leq(a, b)) ascending = false;
        }
        if (!ascending) continue;
        const std::int64_t r = dst.find(w.data());
        if (r < 0)
            throw InvariantViolation("codegeneracy_matrix: image chain missing");
        cols[static_cast<size_t>(c)].emplace_back(static_cast<std::int32_t>(r), 1);
    }
    return sparse_from_columns(dst.count(), std::move(cols));
}

} // namespace

SparseZ nerve_boundary(int m, int n, int d) {
    if (d < 1) throw ConfigError("nerve_boundary: need d >= 1");
    return nerve_boundary_impl(enumerate_chain_list(m, n, d),
                               enumerate_chain_list(m, n, d - 1));
}

SparseZ coface_differential(int m, int n, int d, std::int64_t* zeroed) {
    return coface_impl(enumerate_chain_list(m, n, d),
                       enumerate_chain_list(m, n + 1, d), zeroed);
}

SparseZ codegeneracy_matrix(int m, int n, int d, int j) {
    if (n < 2) throw ConfigError("codegeneracy_matrix: need n >= 2");
    if (j < 0 || j > n - 1)
        throw ConfigError("codegeneracy_matrix: index out of [0, n-1]");
    return codegeneracy_impl(enumerate_chain_list(m, n, d),
                             enumerate_chain_list(m, n - 1, d), j);
}

Bicomplex build_bicomplex(int m, int n_max, std::int64_t cap) {
    if (m < 2 || n_max < 0)
        throw ConfigError("build_bicomplex: need m >= 2, n_max >= 0");
    Bicomplex b;
    b.m = m;
    b.n_max = n_max;
    b.columns.resize(static_cast<size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) {
        auto& col = b.columns[static_cast<size_t>(n)];
        const int dm = b.dmax(n);
        for (int d = 0; d <= dm; ++d)
            col.lists.push_back(enumerate_chain_list(m, n, d, cap));
        // H[0] is the empty boundary out of degree 0.
        col.H.push_back(sparse_zero(0, col.lists[0].count()));
        for (int d = 1; d <= dm; ++d)
            col.H.push_back(nerve_boundary_impl(
                col.lists[static_cast<size_t>(d)],
                col.lists[static_cast<size_t>(d - 1)]));
    }
    for (int n = 0; n < n_max; ++n) {
        auto& col = b.columns[static_cast<size_t>(n)];
        const auto& nxt = b.columns[static_cast<size_t>(n) + 1];
        for (int d = 0; d <= b.dmax(n); ++d)
            col.V.push_back(coface_impl(col.lists[static_cast<size_t>(d)],
                                        nxt.lists[static_cast<size_t>(d)],
                                        &b.zeroed_image_chains));
    }
    // H^2 = 0 within every column.
    for (int n = 0; n <= n_max; ++n)
        for (int d = 2; d <= b.dmax(n); ++d)
            if (!sparse_is_zero(sparse_multiply(b.H(n, d - 1), b.H(n, d))))
                throw InvariantViolation("build_bicomplex: H^2 != 0");
    // V^2 = 0 wherever both factors exist.
    for (int n = 0; n + 1 < n_max; ++n)
        for (int d = 0; d <= b.dmax(n); ++d)
            if (!sparse_is_zero(sparse_multiply(b.V(n + 1, d), b.V(n, d))))
                throw InvariantViolation("build_bicomplex: V^2 != 0");
    // H V = V H: true at m = 2, recorded (not enforced) in general.
    for (int n = 0; n < n_max && b.hv_commutes; ++n)
        for (int d = 1; d <= b.dmax(n); ++d)
            if (!(sparse_multiply(b.H(n + 1, d), b.V(n, d)) ==
                  sparse_multiply(b.V(n, d - 1), b.H(n, d)))) {
                b.hv_commutes = false;
                break;
            }
    return b;
}

} // namespace foxweave
