#include "foxweave/exact.hpp"

#include <algorithm>

#include "foxweave/errors.hpp"

namespace foxweave {

mpq_class FieldOps::canon(const mpq_class& v) const {
    if (ring == Ring::Q || ring == Ring::Z) return v;
    // F_p: numerator times inverse denominator, reduced to [0, p).
    mpz_class num = v.get_num();
    mpz_class den = v.get_den();
    mpz_class pm(p);
    mpz_class dinv;
    if (mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), pm.get_mpz_t()) == 0)
        throw InvariantViolation("FieldOps: denominator not invertible mod p");
    mpz_class r = (num * dinv) % pm;
    if (r < 0) r += pm;
    return mpq_class(r);
}

mpq_class FieldOps::inv(const mpq_class& a) const {
    if (a == 0) throw InvariantViolation("FieldOps: inverse of zero");
    if (ring == Ring::Q || ring == Ring::Z) return mpq_class(1) / a;
    mpz_class pm(p);
    mpz_class ainv;
    mpz_class num = canon(a).get_num();
    if (mpz_invert(ainv.get_mpz_t(), num.get_mpz_t(), pm.get_mpz_t()) == 0)
        throw InvariantViolation("FieldOps: value not invertible mod p");
    return mpq_class(ainv);
}

FieldOps field_of(const ExactMatrix& m) {
    if (m.ring == Ring::Z)
        throw ConfigError("field_of: Z is not a field; use the SNF path");
    return FieldOps{m.ring, m.p};
}

ExactMatrix exact_zero(Ring ring, long p, std::int64_t rows, std::int64_t cols) {
    ExactMatrix m;
    m.ring = ring;
    m.p = p;
    m.rows = rows;
    m.cols = cols;
    m.entries.resize(static_cast<size_t>(cols));
    return m;
}

ExactMatrix exact_identity(Ring ring, long p, std::int64_t k) {
    ExactMatrix m = exact_zero(ring, p, k, k);
    for (std::int64_t c = 0; c < k; ++c)
        m.entries[static_cast<size_t>(c)].emplace_back(c, 1);
    return m;
}

ExactMatrix exact_from_sparse(const SparseZ& s, Ring ring, long p) {
    ExactMatrix m = exact_zero(ring, p, s.rows, s.cols);
    FieldOps F{ring == Ring::Z ? Ring::Q : ring, p};
    for (std::int64_t c = 0; c < s.cols; ++c)
        for (std::int64_t t = s.colptr[static_cast<size_t>(c)];
             t < s.colptr[static_cast<size_t>(c) + 1]; ++t) {
            mpq_class v = F.canon(mpq_class(s.val[static_cast<size_t>(t)]));
            if (v != 0)
                m.entries[static_cast<size_t>(c)].emplace_back(
                    s.rowidx[static_cast<size_t>(t)], v);
        }
    return m;
}

void exact_set(ExactMatrix& m, std::int64_t r, std::int64_t c,
               const mpq_class& v) {
    if (r < 0 || r >= m.rows || c < 0 || c >= m.cols)
        throw ConfigError("exact_set: index out of range");
    FieldOps F{m.ring == Ring::Z ? Ring::Q : m.ring, m.p};
    mpq_class cv = F.canon(v);
    if (m.ring == Ring::Z && cv.get_den() != 1)
        throw ConfigError("exact_set: non-integer entry in a Z matrix");
    auto& col = m.entries[static_cast<size_t>(c)];
    auto it = std::lower_bound(col.begin(), col.end(), r,
                               [](const auto& e, std::int64_t row) {
                                   return e.first < row;
                               });
    if (it != col.end() && it->first == r) {
        if (cv == 0)
            col.erase(it);
        else
            it->second = cv;
    } else if (cv != 0) {
        col.insert(it, {r, cv});
    }
}

mpq_class exact_get(const ExactMatrix& m, std::int64_t r, std::int64_t c) {
    const auto& col = m.entries[static_cast<size_t>(c)];
    auto it = std::lower_bound(col.begin(), col.end(), r,
                               [](const auto& e, std::int64_t row) {
                                   return e.first < row;
                               });
    if (it != col.end() && it->first == r) return it->second;
    return 0;
}

SparseVecQ sparse_axpy(const FieldOps& F, const SparseVecQ& v,
                       const mpq_class& s, const SparseVecQ& w) {
    SparseVecQ out;
    out.reserve(v.size() + w.size());
    size_t i = 0, j = 0;
    while (i < v.size() || j < w.size()) {
        if (j >= w.size() || (i < v.size() && v[i].first < w[j].first)) {
            out.push_back(v[i++]);
        } else if (i >= v.size() || w[j].first < v[i].first) {
            mpq_class val = F.mul(s, w[j].second);
            if (val != 0) out.emplace_back(w[j].first, val);
            ++j;
        } else {
            mpq_class val = F.add(v[i].second, F.mul(s, w[j].second));
            if (val != 0) out.emplace_back(v[i].first, val);
            ++i;
            ++j;
        }
    }
    return out;
}

void Eliminator::reduce(SparseVecQ& v,
                        std::vector<std::pair<int, mpq_class>>* coeffs,
                        int limit) const {
    size_t i = 0;
    while (i < v.size()) {
        auto it = by_row_.find(v[i].first);
        if (it == by_row_.end() || it->second >= limit) {
            ++i;
            continue;
        }
        const int k = it->second;
        const SparseVecQ& col = cols_[static_cast<size_t>(k)];
        mpq_class c = F.div(v[i].second, col[0].second);
        v = sparse_axpy(F, v, F.neg(c), col);
        if (coeffs) coeffs->emplace_back(k, c);
        // Entries above the eliminated row are untouched; position i now
        // names the next candidate row.
    }
}

int Eliminator::insert(SparseVecQ v,
                       std::vector<std::pair<int, mpq_class>>* coeffs) {
    for (auto& [r, val] : v) {
        val = F.canon(val);
        (void)r;
    }
    std::erase_if(v, [](const auto& e) { return e.second == 0; });
    reduce(v, coeffs);
    if (v.empty()) return -1;
    const int idx = static_cast<int>(cols_.size());
    pivots_.push_back(v[0].first);
    by_row_[v[0].first] = idx;
    cols_.push_back(std::move(v));
    return idx;
}

ExactMatrix exact_multiply(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.cols != b.rows || a.ring != b.ring || a.p != b.p)
        throw ConfigError("exact_multiply: shape or ring mismatch");
    FieldOps F{a.ring == Ring::Z ? Ring::Q : a.ring, a.p};
    ExactMatrix m = exact_zero(a.ring, a.p, a.rows, b.cols);
    for (std::int64_t c = 0; c < b.cols; ++c) {
        SparseVecQ acc;
        for (const auto& [k, bv] : b.entries[static_cast<size_t>(c)])
            acc = sparse_axpy(F, acc, bv, a.entries[static_cast<size_t>(k)]);
        m.entries[static_cast<size_t>(c)] = std::move(acc);
    }
    return m;
}

ExactMatrix exact_add(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols || a.ring != b.ring || a.p != b.p)
        throw ConfigError("exact_add: shape or ring mismatch");
    FieldOps F{a.ring == Ring::Z ? Ring::Q : a.ring, a.p};
    ExactMatrix m = exact_zero(a.ring, a.p, a.rows, a.cols);
    for (std::int64_t c = 0; c < a.cols; ++c)
        m.entries[static_cast<size_t>(c)] =
            sparse_axpy(F, a.entries[static_cast<size_t>(c)], 1,
                        b.entries[static_cast<size_t>(c)]);
    return m;
}

ExactMatrix exact_scale(const ExactMatrix& a, const mpq_class& s) {
    FieldOps F{a.ring == Ring::Z ? Ring::Q : a.ring, a.p};
    ExactMatrix m = exact_zero(a.ring, a.p, a.rows, a.cols);
    for (std::int64_t c = 0; c < a.cols; ++c)
        for (const auto& [r, v] : a.entries[static_cast<size_t>(c)]) {
            mpq_class val = F.mul(s, v);
            if (val != 0) m.entries[static_cast<size_t>(c)].emplace_back(r, val);
        }
    return m;
}

ExactMatrix exact_transpose(const ExactMatrix& a) {
    ExactMatrix m = exact_zero(a.ring, a.p, a.cols, a.rows);
    for (std::int64_t c = 0; c < a.cols; ++c)
        for (const auto& [r, v] : a.entries[static_cast<size_t>(c)])
            m.entries[static_cast<size_t>(r)].emplace_back(c, v);
    for (auto& col : m.entries)
        std::sort(col.begin(), col.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
    return m;
}

bool exact_is_zero(const ExactMatrix& a) {
    for (const auto& col : a.entries)
        if (!col.empty()) return false;
    return true;
}

std::int64_t rank(const ExactMatrix& m) {
    Ring ring = m.ring == Ring::Z ? Ring::Q : m.ring;
    Eliminator el(ring, m.p);
    std::int64_t r = 0;
    for (const auto& col : m.entries)
        if (el.insert(col) >= 0) ++r;
    return r;
}

std::vector<std::vector<mpq_class>> kernel_basis(const ExactMatrix& m) {
    FieldOps F = field_of(m);
    Eliminator el(m.ring, m.p);
    // comb[k]: echelon column k as a combination of original columns.
    std::vector<SparseVecQ> comb;
    std::vector<std::vector<mpq_class>> out;
    for (std::int64_t j = 0; j < m.cols; ++j) {
        std::vector<std::pair<int, mpq_class>> coeffs;
        SparseVecQ expr{{j, mpq_class(1)}};
        const int idx = el.insert(m.entries[static_cast<size_t>(j)], &coeffs);
        for (const auto& [k, c] : coeffs)
            expr = sparse_axpy(F, expr, F.neg(c), comb[static_cast<size_t>(k)]);
        if (idx < 0) {
            std::vector<mpq_class> dense(static_cast<size_t>(m.cols), 0);
            for (const auto& [r, v] : expr) dense[static_cast<size_t>(r)] = v;
            out.push_back(std::move(dense));
        } else {
            comb.push_back(std::move(expr));
        }
    }
    return out;
}

std::vector<std::vector<mpq_class>> image_basis(const ExactMatrix& m) {
    (void)field_of(m); // rejects Z
    Eliminator el(m.ring, m.p);
    for (const auto& col : m.entries) el.insert(col);
    std::vector<std::vector<mpq_class>> out;
    for (int k = 0; k < el.size(); ++k) {
        std::vector<mpq_class> dense(static_cast<size_t>(m.rows), 0);
        for (const auto& [r, v] : el.column(k)) dense[static_cast<size_t>(r)] = v;
        out.push_back(std::move(dense));
    }
    return out;
}

// ---- Smith normal form -------------------------------------------------

namespace {

using Dense = std::vector<std::vector<mpz_class>>;

Dense dense_identity(std::int64_t k) {
    Dense u(static_cast<size_t>(k),
            std::vector<mpz_class>(static_cast<size_t>(k), 0));
    for (std::int64_t i = 0; i < k; ++i) u[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
    return u;
}

} // namespace

SnfResult smith_normal_form(const ExactMatrix& m) {
    if (m.ring != Ring::Z)
        throw ConfigError("smith_normal_form: Z matrices only");
    const std::int64_t R = m.rows, C = m.cols;
    SnfResult res;
    res.S.assign(static_cast<size_t>(R),
                 std::vector<mpz_class>(static_cast<size_t>(C), 0));
    for (std::int64_t c = 0; c < C; ++c)
        for (const auto& [r, v] : m.entries[static_cast<size_t>(c)]) {
            if (v.get_den() != 1)
                throw ConfigError("smith_normal_form: non-integer entry");
            res.S[static_cast<size_t>(r)][static_cast<size_t>(c)] = v.get_num();
        }
    res.U = dense_identity(R);
    res.V = dense_identity(C);
    Dense& S = res.S;
    Dense& U = res.U;
    Dense& V = res.V;

    auto swap_rows = [&](std::int64_t a, std::int64_t b) {
        if (a == b) return;
        std::swap(S[static_cast<size_t>(a)], S[static_cast<size_t>(b)]);
        std::swap(U[static_cast<size_t>(a)], U[static_cast<size_t>(b)]);
    };
    auto swap_cols = [&](std::int64_t a, std::int64_t b) {
        if (a == b) return;
        for (std::int64_t i = 0; i < R; ++i)
            std::swap(S[static_cast<size_t>(i)][static_cast<size_t>(a)],
                      S[static_cast<size_t>(i)][static_cast<size_t>(b)]);
        for (std::int64_t i = 0; i < C; ++i)
            std::swap(V[static_cast<size_t>(i)][static_cast<size_t>(a)],
                      V[static_cast<size_t>(i)][static_cast<size_t>(b)]);
    };
    auto row_sub = [&](std::int64_t dst, const mpz_class& q, std::int64_t src) {
        if (q == 0) return;
        for (std::int64_t j = 0; j < C; ++j)
            S[static_cast<size_t>(dst)][static_cast<size_t>(j)] -=
                q * S[static_cast<size_t>(src)][static_cast<size_t>(j)];
        for (std::int64_t j = 0; j < R; ++j)
            U[static_cast<size_t>(dst)][static_cast<size_t>(j)] -=
                q * U[static_cast<size_t>(src)][static_cast<size_t>(j)];
    };
    auto col_sub = [&](std::int64_t dst, const mpz_class& q, std::int64_t src) {
        if (q == 0) return;
        for (std::int64_t i = 0; i < R; ++i)
            S[static_cast<size_t>(i)][static_cast<size_t>(dst)] -=
                q * S[static_cast<size_t>(i)][static_cast<size_t>(src)];
        for (std::int64_t i = 0; i < C; ++i)
            V[static_cast<size_t>(i)][static_cast<size_t>(dst)] -=
                q * V[static_cast<size_t>(i)][static_cast<size_t>(src)];
    };

    const std::int64_t T = std::min(R, C);
    for (std::int64_t t = 0; t < T; ++t) {
        while (true) {
            // Smallest nonzero |entry| in the trailing block; ties by (row, col).
            std::int64_t pi = -1, pj = -1;
            for (std::int64_t i = t; i < R; ++i)
                for (std::int64_t j = t; j < C; ++j) {
                    const mpz_class& v = S[static_cast<size_t>(i)][static_cast<size_t>(j)];
                    if (v == 0) continue;
                    if (pi < 0 ||
                        cmp(abs(v), abs(S[static_cast<size_t>(pi)][static_cast<size_t>(pj)])) < 0)
                        pi = i, pj = j;
                }
            if (pi < 0) { t = T; break; }
            swap_rows(t, pi);
            swap_cols(t, pj);
            const mpz_class piv = S[static_cast<size_t>(t)][static_cast<size_t>(t)];
            bool clean = true;
            for (std::int64_t i = t + 1; i < R; ++i) {
                const mpz_class& v = S[static_cast<size_t>(i)][static_cast<size_t>(t)];
                if (v == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), v.get_mpz_t(), piv.get_mpz_t());
                row_sub(i, q, t);
                if (S[static_cast<size_t>(i)][static_cast<size_t>(t)] != 0) clean = false;
            }
            if (!clean) continue;
            for (std::int64_t j = t + 1; j < C; ++j) {
                const mpz_class& v = S[static_cast<size_t>(t)][static_cast<size_t>(j)];
                if (v == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), v.get_mpz_t(), piv.get_mpz_t());
                col_sub(j, q, t);
                if (S[static_cast<size_t>(t)][static_cast<size_t>(j)] != 0) clean = false;
            }
            if (!clean) continue;
            // Divisibility of the trailing block by the pivot.
            bool divides = true;
            for (std::int64_t i = t + 1; i < R && divides; ++i)
                for (std::int64_t j = t + 1; j < C && divides; ++j)
                    if (S[static_cast<size_t>(i)][static_cast<size_t>(j)] % piv != 0) {
                        row_sub(t, mpz_class(-1), i); // add row i to row t
                        divides = false;
                    }
            if (divides) break;
        }
        if (t >= T) break;
    }
    // Positive diagonal.
    for (std::int64_t t = 0; t < T; ++t)
        if (S[static_cast<size_t>(t)][static_cast<size_t>(t)] < 0) {
            for (std::int64_t j = 0; j < C; ++j)
                S[static_cast<size_t>(t)][static_cast<size_t>(j)] =
                    -S[static_cast<size_t>(t)][static_cast<size_t>(j)];
            for (std::int64_t j = 0; j < R; ++j)
                U[static_cast<size_t>(t)][static_cast<size_t>(j)] =
                    -U[static_cast<size_t>(t)][static_cast<size_t>(j)];
        }
    for (std::int64_t t = 0; t < T; ++t)
        if (S[static_cast<size_t>(t)][static_cast<size_t>(t)] != 0)
            res.invariant_factors.push_back(
                S[static_cast<size_t>(t)][static_cast<size_t>(t)]);
    return res;
}

HomologySummary homology(const ExactMatrix& d_in, const ExactMatrix& d_out) {
    if (d_in.ring != d_out.ring || d_in.p != d_out.p)
        throw ConfigError("homology: ring mismatch");
    if (d_out.cols != d_in.rows)
        throw ConfigError("homology: shape mismatch (need d_out . d_in)");
    if (!exact_is_zero(exact_multiply(d_out, d_in)))
        throw InvariantViolation("homology: d_out * d_in != 0");
    HomologySummary h;
    h.kernel_rank = d_out.cols - rank(d_out);
    h.image_rank = rank(d_in);
    h.betti = h.kernel_rank - h.image_rank;
    if (d_in.ring == Ring::Z && d_in.cols > 0) {
        SnfResult snf = smith_normal_form(d_in);
        for (const mpz_class& f : snf.invariant_factors)
            if (f > 1) h.torsion.push_back(f);
    }
    return h;
}

} // namespace foxweave
