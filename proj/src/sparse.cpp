#include "foxweave/sparse.hpp"

#include <algorithm>

#include "foxweave/errors.hpp"

namespace foxweave {

SparseZ sparse_zero(std::int64_t rows, std::int64_t cols) {
    SparseZ s;
    s.rows = rows;
    s.cols = cols;
    s.colptr.assign(static_cast<size_t>(cols) + 1, 0);
    return s;
}

SparseZ sparse_from_columns(
    std::int64_t rows,
    std::vector<std::vector<std::pair<std::int32_t, std::int32_t>>> triplets) {
    SparseZ s;
    s.rows = rows;
    s.cols = static_cast<std::int64_t>(triplets.size());
    s.colptr.reserve(static_cast<size_t>(s.cols) + 1);
    s.colptr.push_back(0);
    for (auto& col : triplets) {
        std::sort(col.begin(), col.end());
        std::int64_t have = -1;
        std::int64_t acc = 0;
        auto flush = [&]() {
            if (have >= 0 && acc != 0) {
                s.rowidx.push_back(static_cast<std::int32_t>(have));
                s.val.push_back(static_cast<std::int32_t>(acc));
            }
        };
        for (const auto& [r, v] : col) {
            if (r < 0 || r >= rows)
                throw ConfigError("sparse_from_columns: row index out of range");
            if (r != have) {
                flush();
                have = r;
                acc = 0;
            }
            acc += v;
        }
        flush();
        s.colptr.push_back(static_cast<std::int64_t>(s.rowidx.size()));
    }
    return s;
}

SparseZ sparse_multiply(const SparseZ& a, const SparseZ& b) {
    if (a.cols != b.rows) throw ConfigError("sparse_multiply: shape mismatch");
    SparseZ s;
    s.rows = a.rows;
    s.cols = b.cols;
    s.colptr.reserve(static_cast<size_t>(s.cols) + 1);
    s.colptr.push_back(0);
    std::vector<std::int64_t> acc(static_cast<size_t>(a.rows), 0);
    std::vector<std::int32_t> touched;
    for (std::int64_t c = 0; c < b.cols; ++c) {
        touched.clear();
        for (std::int64_t t = b.colptr[static_cast<size_t>(c)];
             t < b.colptr[static_cast<size_t>(c) + 1]; ++t) {
            const std::int32_t k = b.rowidx[static_cast<size_t>(t)];
            const std::int64_t bv = b.val[static_cast<size_t>(t)];
            for (std::int64_t u = a.colptr[static_cast<size_t>(k)];
                 u < a.colptr[static_cast<size_t>(k) + 1]; ++u) {
                const std::int32_t r = a.rowidx[static_cast<size_t>(u)];
                if (acc[static_cast<size_t>(r)] == 0) touched.push_back(r);
                acc[static_cast<size_t>(r)] += bv * a.val[static_cast<size_t>(u)];
            }
        }
        std::sort(touched.begin(), touched.end());
        for (std::int32_t r : touched) {
            const std::int64_t v = acc[static_cast<size_t>(r)];
            acc[static_cast<size_t>(r)] = 0;
            if (v == 0) continue;
            if (v < INT32_MIN || v > INT32_MAX)
                throw InvariantViolation("sparse_multiply: entry overflows int32");
            s.rowidx.push_back(r);
            s.val.push_back(static_cast<std::int32_t>(v));
        }
        s.colptr.push_back(static_cast<std::int64_t>(s.rowidx.size()));
    }
    return s;
}

SparseZ sparse_add(const SparseZ& a, const SparseZ& b, std::int32_t sc) {
    if (a.rows != b.rows || a.cols != b.cols)
        throw ConfigError("sparse_add: shape mismatch");
    SparseZ s;
    s.rows = a.rows;
    s.cols = a.cols;
    s.colptr.push_back(0);
    for (std::int64_t c = 0; c < a.cols; ++c) {
        std::int64_t i = a.colptr[static_cast<size_t>(c)];
        std::int64_t j = b.colptr[static_cast<size_t>(c)];
        const std::int64_t ie = a.colptr[static_cast<size_t>(c) + 1];
        const std::int64_t je = b.colptr[static_cast<size_t>(c) + 1];
        while (i < ie || j < je) {
            std::int32_t r;
            std::int64_t v;
            if (j >= je || (i < ie && a.rowidx[static_cast<size_t>(i)] <
                                          b.rowidx[static_cast<size_t>(j)])) {
                r = a.rowidx[static_cast<size_t>(i)];
                v = a.val[static_cast<size_t>(i)];
                ++i;
            } else if (i >= ie || b.rowidx[static_cast<size_t>(j)] <
                                      a.rowidx[static_cast<size_t>(i)]) {
                r = b.rowidx[static_cast<size_t>(j)];
                v = static_cast<std::int64_t>(sc) * b.val[static_cast<size_t>(j)];
                ++j;
            } else {
                r = a.rowidx[static_cast<size_t>(i)];
                v = a.val[static_cast<size_t>(i)] +
                    static_cast<std::int64_t>(sc) * b.val[static_cast<size_t>(j)];
                ++i;
                ++j;
            }
            if (v != 0) {
                if (v < INT32_MIN || v > INT32_MAX)
                    throw InvariantViolation("sparse_add: entry overflows int32");
                s.rowidx.push_back(r);
                s.val.push_back(static_cast<std::int32_t>(v));
            }
        }
        s.colptr.push_back(static_cast<std::int64_t>(s.rowidx.size()));
    }
    return s;
}

SparseZ sparse_scale(const SparseZ& a, std::int32_t sc) {
    if (sc == 0) return sparse_zero(a.rows, a.cols);
    SparseZ s = a;
    for (auto& v : s.val) v = static_cast<std::int32_t>(v * sc);
    return s;
}

bool sparse_is_zero(const SparseZ& a) { return a.rowidx.empty(); }

std::int64_t sparse_nnz(const SparseZ& a) {
    return static_cast<std::int64_t>(a.rowidx.size());
}

SparseZ sparse_transpose(const SparseZ& a) {
    SparseZ s;
    s.rows = a.cols;
    s.cols = a.rows;
    s.colptr.assign(static_cast<size_t>(a.rows) + 1, 0);
    for (std::int32_t r : a.rowidx) ++s.colptr[static_cast<size_t>(r) + 1];
    for (size_t k = 1; k < s.colptr.size(); ++k) s.colptr[k] += s.colptr[k - 1];
    s.rowidx.resize(a.rowidx.size());
    s.val.resize(a.val.size());
    std::vector<std::int64_t> next(s.colptr.begin(), s.colptr.end() - 1);
    for (std::int64_t c = 0; c < a.cols; ++c)
        for (std::int64_t t = a.colptr[static_cast<size_t>(c)];
             t < a.colptr[static_cast<size_t>(c) + 1]; ++t) {
            const std::int32_t r = a.rowidx[static_cast<size_t>(t)];
            const std::int64_t slot = next[static_cast<size_t>(r)]++;
            s.rowidx[static_cast<size_t>(slot)] = static_cast<std::int32_t>(c);
            s.val[static_cast<size_t>(slot)] = a.val[static_cast<size_t>(t)];
        }
    return s;
}

SparseZ sparse_identity(std::int64_t k) {
    SparseZ s;
    s.rows = k;
    s.cols = k;
    s.colptr.reserve(static_cast<size_t>(k) + 1);
    s.colptr.push_back(0);
    for (std::int64_t c = 0; c < k; ++c) {
        s.rowidx.push_back(static_cast<std::int32_t>(c));
        s.val.push_back(1);
        s.colptr.push_back(c + 1);
    }
    return s;
}

} // namespace foxweave
