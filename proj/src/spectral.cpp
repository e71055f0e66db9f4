#include "foxweave/spectral.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <sstream>

#include <nlohmann/json.hpp>

#include "foxweave/conormal.hpp"
#include "foxweave/errors.hpp"

namespace foxweave {

namespace {

using Coeffs = std::vector<std::pair<int, mpq_class>>;

SparseVecQ scaled_axpy(const FieldOps& F, SparseVecQ v, const mpq_class& s,
                       const SparseVecQ& w) {
    return sparse_axpy(F, v, s, w);
}

// Apply a sparse matrix to a sparse vector of column coordinates.
SparseVecQ apply(const FieldOps& F, const ExactMatrix& M, const SparseVecQ& u) {
    SparseVecQ out;
    for (const auto& [j, c] : u)
        out = scaled_axpy(F, std::move(out), c,
                          M.entries[static_cast<size_t>(j)]);
    return out;
}

// A spanning set with tagged members: supports membership solves whose
// answers are reported in terms of the non-negative tags only (members
// tagged -1 are quotiented away).
class TaggedSpan {
public:
    TaggedSpan(Ring ring, long p) : el_(ring, p) {}

    // Returns true when v added a new pivot (was independent).
    bool add(const SparseVecQ& v, std::int64_t tag) {
        Coeffs coeffs;
        const FieldOps& F = el_.field();
        SparseVecQ expr{{static_cast<std::int64_t>(tags_.size()), mpq_class(1)}};
        const int idx = el_.insert(v, &coeffs);
        for (const auto& [k, c] : coeffs)
            expr = scaled_axpy(F, std::move(expr), F.neg(c),
                               comb_[static_cast<size_t>(k)]);
        tags_.push_back(tag);
        if (idx < 0) return false;
        comb_.push_back(std::move(expr));
        return true;
    }

    // Express v over the tagged members; entries for tag -1 are dropped.
    // Throws InvariantViolation when v lies outside the span.
    SparseVecQ coords(SparseVecQ v, const char* what) const {
        Coeffs coeffs;
        el_.reduce(v, &coeffs);
        if (!v.empty())
            throw InvariantViolation(std::string(what) +
                                     ": vector outside the spanning set");
        const FieldOps& F = el_.field();
        SparseVecQ by_member; // keyed by insertion index
        for (const auto& [k, c] : coeffs)
            by_member = scaled_axpy(F, std::move(by_member), c,
                                    comb_[static_cast<size_t>(k)]);
        SparseVecQ out;
        for (const auto& [i, c] : by_member) {
            const std::int64_t tag = tags_[static_cast<size_t>(i)];
            if (tag >= 0) out.emplace_back(tag, c);
        }
        std::sort(out.begin(), out.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        SparseVecQ merged;
        const FieldOps& FF = el_.field();
        for (auto& e : out) {
            if (!merged.empty() && merged.back().first == e.first) {
                merged.back().second = FF.add(merged.back().second, e.second);
                if (merged.back().second == 0) merged.pop_back();
            } else if (e.second != 0) {
                merged.push_back(std::move(e));
            }
        }
        return merged;
    }

private:
    Eliminator el_;
    std::vector<SparseVecQ> comb_;      // echelon column over insertion indices
    std::vector<std::int64_t> tags_;    // tag per inserted member
};

// ---- graded assembly ---------------------------------------------------

// Abstract bicomplex data: the engine runs both on the plain bicomplex
// and on the conormalized one, so the block matrices come through this
// adapter (already converted to the working ring).
struct Source {
    int n_max = 1;
    bool hv_commutes = true;
    std::function<int(int)> dmax;
    std::function<std::int64_t(int, int)> dim;
    std::function<ExactMatrix(int, int)> H; // (d, n) -> (d - 1, n)
    std::function<ExactMatrix(int, int)> V; // (d, n) -> (d, n + 1), n < n_max
};

Source bicomplex_source(const Bicomplex& b, Ring ring, long p) {
    Source s;
    s.n_max = b.n_max;
    s.hv_commutes = b.hv_commutes;
    s.dmax = [&b](int n) { return b.dmax(n); };
    s.dim = [&b](int n, int d) { return b.dim(n, d); };
    s.H = [&b, ring, p](int n, int d) {
        return exact_from_sparse(b.H(n, d), ring, p);
    };
    s.V = [&b, ring, p](int n, int d) {
        return exact_from_sparse(b.V(n, d), ring, p);
    };
    return s;
}

Source conormal_source(const ConormalizedBicomplex& c) {
    Source s;
    s.n_max = c.n_max;
    s.dmax = [&c](int n) { return c.dmax(n); };
    s.dim = [&c](int n, int d) {
        if (n < 0 || n > c.n_max || d < 0 || d > c.dmax(n)) return std::int64_t{0};
        return c.dims[static_cast<size_t>(n)][static_cast<size_t>(d)];
    };
    s.H = [&c](int n, int d) {
        return c.H[static_cast<size_t>(n)][static_cast<size_t>(d)];
    };
    s.V = [&c](int n, int d) {
        return c.V[static_cast<size_t>(n)][static_cast<size_t>(d)];
    };
    // Verify H V = V H on the induced matrices directly.
    s.hv_commutes = true;
    for (int n = 0; n + 1 <= c.n_max && s.hv_commutes; ++n)
        for (int d = 1; d <= c.dmax(n) && s.hv_commutes; ++d) {
            const ExactMatrix a = exact_multiply(s.H(n + 1, d), s.V(n, d));
            const ExactMatrix b2 = exact_multiply(s.V(n, d - 1), s.H(n, d));
            if (!exact_is_zero(exact_add(a, exact_scale(b2, -1))))
                s.hv_commutes = false;
        }
    return s;
}

struct Blk {
    int n = 0, d = 0, level = 0;
    std::int64_t count = 0;
    std::int64_t colOff = 0; // column order: ascending level
    std::int64_t rowOff = 0; // row order (engine): descending level
};

struct Deg {
    std::vector<Blk> blks; // ascending level
    std::int64_t total = 0;
    std::vector<int> rowLevel; // level of each row-order index
    ExactMatrix D;             // C_t -> C_{t-1}
    // master echelon data
    std::unique_ptr<Eliminator> el;
    std::vector<SparseVecQ> comb;        // echelon col over original col indices
    std::vector<std::int64_t> pivCol;    // original column index per echelon col
    std::vector<int> pivRowLevel;        // level of the pivot row
    std::vector<std::int64_t> prefixPiv; // pivots among the first c columns
};

struct Grid {
    Ring ring = Ring::Q;
    long p = 0;
    Variance var = Variance::homology;
    int n_max = 1;
    int tmin = 0, tmax = -1;
    std::vector<Deg> degs;

    Deg* deg(int t) {
        if (t < tmin || t > tmax) return nullptr;
        return &degs[static_cast<size_t>(t - tmin)];
    }
    const Deg* deg(int t) const {
        if (t < tmin || t > tmax) return nullptr;
        return &degs[static_cast<size_t>(t - tmin)];
    }
    const Blk* blk(int t, int level) const {
        const Deg* dg = deg(t);
        if (!dg) return nullptr;
        for (const Blk& b : dg->blks)
            if (b.level == level) return &b;
        return nullptr;
    }
    // Number of degree-t columns with level <= the given level.
    std::int64_t colPrefix(int t, int level) const {
        const Deg* dg = deg(t);
        if (!dg) return 0;
        std::int64_t c = 0;
        for (const Blk& b : dg->blks)
            if (b.level <= level) c += b.count;
        return c;
    }
};

// Blocks and levels for one variance; internal degree t is d - n for
// homology and n - d for cohomology, level is -n resp. +n.
void collect_blocks(const Source& b, Variance var,
                    std::vector<std::tuple<int, int, int, int, std::int64_t>>& out) {
    for (int n = 0; n <= b.n_max; ++n)
        for (int d = 0; d <= b.dmax(n); ++d) {
            const std::int64_t cnt = b.dim(n, d);
            if (cnt == 0) continue;
            const int level = var == Variance::homology ? -n : n;
            const int t = var == Variance::homology ? d - n : n - d;
            out.emplace_back(t, level, n, d, cnt);
        }
}

// Place a signed local matrix into the assembled differential.
void place(ExactMatrix& D, const FieldOps& F, const ExactMatrix& M, int sign,
           std::int64_t colOff, std::int64_t rowOff) {
    for (std::int64_t j = 0; j < M.cols; ++j)
        for (const auto& [r, v] : M.entries[static_cast<size_t>(j)])
            D.entries[static_cast<size_t>(colOff + j)].emplace_back(
                rowOff + r, sign < 0 ? F.neg(v) : v);
}

Grid make_grid(const Source& b, Ring ring, long p, Variance var,
               bool rows_descending) {
    Grid g;
    g.ring = ring;
    g.p = p;
    g.var = var;
    g.n_max = b.n_max;
    std::vector<std::tuple<int, int, int, int, std::int64_t>> raw;
    collect_blocks(b, var, raw);
    if (raw.empty()) return g;
    g.tmin = std::get<0>(*std::min_element(raw.begin(), raw.end()));
    g.tmax = std::get<0>(*std::max_element(raw.begin(), raw.end()));
    g.degs.resize(static_cast<size_t>(g.tmax - g.tmin + 1));
    for (const auto& [t, level, n, d, cnt] : raw) {
        Blk blk;
        blk.n = n;
        blk.d = d;
        blk.level = level;
        blk.count = cnt;
        g.degs[static_cast<size_t>(t - g.tmin)].blks.push_back(blk);
    }
    for (Deg& dg : g.degs) {
        std::sort(dg.blks.begin(), dg.blks.end(),
                  [](const Blk& a, const Blk& b2) { return a.level < b2.level; });
        std::int64_t off = 0;
        for (Blk& blk : dg.blks) {
            blk.colOff = off;
            off += blk.count;
        }
        dg.total = off;
        std::int64_t roff = 0;
        if (rows_descending) {
            for (auto it = dg.blks.rbegin(); it != dg.blks.rend(); ++it) {
                it->rowOff = roff;
                roff += it->count;
            }
        } else {
            for (Blk& blk : dg.blks) {
                blk.rowOff = roff;
                roff += blk.count;
            }
        }
        dg.rowLevel.assign(static_cast<size_t>(dg.total), 0);
        for (const Blk& blk : dg.blks)
            for (std::int64_t i = 0; i < blk.count; ++i)
                dg.rowLevel[static_cast<size_t>(blk.rowOff + i)] = blk.level;
    }
    // Assemble D_t : C_t -> C_{t-1}.
    const FieldOps F{ring, p};
    for (int t = g.tmin; t <= g.tmax; ++t) {
        Deg& dg = *g.deg(t);
        const Deg* below = g.deg(t - 1);
        dg.D = exact_zero(ring, p, below ? below->total : 0, dg.total);
        if (!below) continue;
        for (const Blk& blk : dg.blks) {
            if (var == Variance::homology) {
                if (blk.d >= 1) {
                    const Blk* tb = g.blk(t - 1, blk.level);
                    if (tb)
                        place(dg.D, F, b.H(blk.n, blk.d), +1, blk.colOff,
                              tb->rowOff);
                }
                if (blk.n < b.n_max) {
                    const Blk* tb = g.blk(t - 1, blk.level - 1);
                    if (tb)
                        place(dg.D, F, b.V(blk.n, blk.d),
                              blk.d % 2 == 0 ? +1 : -1, blk.colOff, tb->rowOff);
                }
            } else {
                if (blk.d + 1 <= b.dmax(blk.n)) {
                    const Blk* tb = g.blk(t - 1, blk.level);
                    if (tb)
                        place(dg.D, F, exact_transpose(b.H(blk.n, blk.d + 1)),
                              +1, blk.colOff, tb->rowOff);
                }
                if (blk.n >= 1 && blk.d <= b.dmax(blk.n - 1)) {
                    const Blk* tb = g.blk(t - 1, blk.level - 1);
                    if (tb)
                        place(dg.D, F, exact_transpose(b.V(blk.n - 1, blk.d)),
                              blk.d % 2 == 0 ? +1 : -1, blk.colOff, tb->rowOff);
                }
            }
        }
        for (auto& col : dg.D.entries)
            std::sort(col.begin(), col.end(), [](const auto& a, const auto& b2) {
                return a.first < b2.first;
            });
    }
    return g;
}

// One column-echelon reduction per total degree, columns in ascending
// filtration order against rows in descending order.  The pivot lists
// make every window rank available afterwards.
void run_master_echelon(Grid& g) {
    for (int t = g.tmin; t <= g.tmax; ++t) {
        Deg& dg = *g.deg(t);
        const Deg* below = g.deg(t - 1);
        dg.el = std::make_unique<Eliminator>(g.ring, g.p);
        dg.prefixPiv.assign(static_cast<size_t>(dg.total) + 1, 0);
        const FieldOps& F = dg.el->field();
        for (std::int64_t c = 0; c < dg.total; ++c) {
            Coeffs coeffs;
            SparseVecQ expr{{c, mpq_class(1)}};
            const int idx =
                dg.el->insert(dg.D.entries[static_cast<size_t>(c)], &coeffs);
            for (const auto& [k, cf] : coeffs)
                expr = scaled_axpy(F, std::move(expr), F.neg(cf),
                                   dg.comb[static_cast<size_t>(k)]);
            if (idx >= 0) {
                dg.comb.push_back(std::move(expr));
                dg.pivCol.push_back(c);
                dg.pivRowLevel.push_back(
                    below ? below->rowLevel[static_cast<size_t>(
                                dg.el->pivot_row(idx))]
                          : 0);
            }
            dg.prefixPiv[static_cast<size_t>(c) + 1] =
                static_cast<std::int64_t>(dg.pivCol.size());
        }
    }
}

// Pivots among the first c columns whose pivot row lies strictly above
// filtration level s.
std::int64_t window_pivots(const Deg& dg, std::int64_t c, int s) {
    std::int64_t k = 0;
    for (size_t i = 0; i < dg.pivCol.size() && dg.pivCol[i] < c; ++i)
        if (dg.pivRowLevel[i] > s) ++k;
    return k;
}

// dim { x in F_level C_t : D x in F_{level-r} }.
std::int64_t z_rank(const Grid& g, int r, int level, int t) {
    const Deg* dg = g.deg(t);
    if (!dg) return 0;
    const std::int64_t c = g.colPrefix(t, level);
    return c - window_pivots(*dg, c, level - r);
}

// Closed-form page dimension from the window ranks: the second,
// independent computation path.
std::int64_t formula_dim(const Grid& g, int r, int level, int t) {
    return z_rank(g, r, level, t) - z_rank(g, r - 1, level - 1, t) -
           z_rank(g, r - 1, level + r - 1, t + 1) +
           z_rank(g, r, level + r - 1, t + 1);
}

// ---- explicit representatives -----------------------------------------

struct CellState {
    const Blk* blk = nullptr;
    int t = 0;
    std::int64_t e1dim = 0;
    std::unique_ptr<TaggedSpan> e1span; // image columns (-1) + class reps (k)
    // current page data
    std::int64_t dim = 0;
    std::vector<SparseVecQ> reps;  // degree-t column coordinates
    std::vector<SparseVecQ> repE1; // E1 coordinates of each basis element
    std::vector<SparseVecQ> bound; // E1 coordinates of accumulated boundaries
    // transient per page
    std::unique_ptr<TaggedSpan> pageSpan; // repE1 (tags) + bound (-1)
    ExactMatrix dmat;                     // d_r out of this cell
};

struct Engine {
    Grid g;
    std::vector<CellState> cells;
    std::map<std::pair<int, int>, size_t> by_key; // (t, level) -> index

    CellState* cell(int t, int level) {
        auto it = by_key.find({t, level});
        return it == by_key.end() ? nullptr : &cells[it->second];
    }
};

ExactMatrix local_submatrix(const ExactMatrix& D, std::int64_t colOff,
                            std::int64_t ncols, std::int64_t rowOff,
                            std::int64_t nrows) {
    ExactMatrix out = exact_zero(D.ring, D.p, nrows, ncols);
    for (std::int64_t j = 0; j < ncols; ++j)
        for (const auto& [r, v] : D.entries[static_cast<size_t>(colOff + j)])
            if (r >= rowOff && r < rowOff + nrows)
                out.entries[static_cast<size_t>(j)].emplace_back(r - rowOff, v);
    return out;
}

void build_e1(Engine& e) {
    Grid& g = e.g;
    for (int t = g.tmin; t <= g.tmax; ++t) {
        Deg& dg = *g.deg(t);
        for (const Blk& blk : dg.blks) {
            CellState cs;
            cs.blk = &blk;
            cs.t = t;
            cs.e1span = std::make_unique<TaggedSpan>(g.ring, g.p);
            // Incoming same-level component from degree t + 1.
            const Deg* above = g.deg(t + 1);
            const Blk* src = above ? g.blk(t + 1, blk.level) : nullptr;
            if (src) {
                for (std::int64_t j = 0; j < src->count; ++j) {
                    SparseVecQ v;
                    for (const auto& [r, val] :
                         above->D.entries[static_cast<size_t>(src->colOff + j)])
                        if (r >= blk.rowOff && r < blk.rowOff + blk.count)
                            v.emplace_back(r - blk.rowOff, val);
                    cs.e1span->add(v, -1);
                }
            }
            // Outgoing same-level component within degree t.
            const Blk* tb = g.blk(t - 1, blk.level);
            ExactMatrix out_local =
                tb ? local_submatrix(dg.D, blk.colOff, blk.count, tb->rowOff,
                                     tb->count)
                   : exact_zero(g.ring, g.p, 0, blk.count);
            // Stream the kernel of the outgoing map; surviving cycles
            // become E1 classes with themselves as representatives.
            Eliminator kel(g.ring, g.p);
            std::vector<SparseVecQ> kcomb;
            const FieldOps& F = kel.field();
            for (std::int64_t j = 0; j < blk.count; ++j) {
                Coeffs coeffs;
                SparseVecQ expr{{j, mpq_class(1)}};
                const int idx =
                    kel.insert(out_local.entries[static_cast<size_t>(j)],
                               &coeffs);
                for (const auto& [k, c] : coeffs)
                    expr = scaled_axpy(F, std::move(expr), F.neg(c),
                                       kcomb[static_cast<size_t>(k)]);
                if (idx >= 0) {
                    kcomb.push_back(std::move(expr));
                    continue;
                }
                // expr is a cycle in local coordinates.
                if (cs.e1span->add(expr, cs.e1dim)) {
                    SparseVecQ rep;
                    for (const auto& [i, c] : expr)
                        rep.emplace_back(blk.colOff + i, c);
                    cs.reps.push_back(std::move(rep));
                    cs.repE1.push_back({{cs.e1dim, mpq_class(1)}});
                    ++cs.e1dim;
                }
            }
            cs.dim = cs.e1dim;
            e.by_key[{t, blk.level}] = e.cells.size();
            e.cells.push_back(std::move(cs));
        }
    }
}

// Express the level-(level - r) component of D(rep) in the target cell's
// current page basis; components above that level are a hard error.
void compute_dr(Engine& e, int r) {
    Grid& g = e.g;
    const FieldOps F{g.ring, g.p};
    for (CellState& cs : e.cells) {
        cs.pageSpan = std::make_unique<TaggedSpan>(g.ring, g.p);
        for (std::int64_t j = 0; j < cs.dim; ++j)
            cs.pageSpan->add(cs.repE1[static_cast<size_t>(j)], j);
        for (const SparseVecQ& b : cs.bound) cs.pageSpan->add(b, -1);
    }
    for (CellState& cs : e.cells) {
        const Blk& blk = *cs.blk;
        CellState* tcell = e.cell(cs.t - 1, blk.level - r);
        const std::int64_t tdim = tcell ? tcell->dim : 0;
        cs.dmat = exact_zero(g.ring, g.p, tdim, cs.dim);
        if (cs.dim == 0) continue;
        const Deg& dg = *g.deg(cs.t);
        const Deg* below = g.deg(cs.t - 1);
        const Blk* tb = tcell ? tcell->blk : nullptr;
        for (std::int64_t j = 0; j < cs.dim; ++j) {
            SparseVecQ b = apply(F, dg.D, cs.reps[static_cast<size_t>(j)]);
            if (b.empty()) continue;
            for (const auto& [row, val] : b) {
                (void)val;
                if (below &&
                    below->rowLevel[static_cast<size_t>(row)] > blk.level - r)
                    throw InvariantViolation(
                        "spectral: representative boundary above the "
                        "expected filtration level");
            }
            // With no block at level - r there are no rows there at all;
            // the boundary already sits one level lower.
            if (!tb || !tcell) continue;
            SparseVecQ local;
            for (const auto& [row, val] : b)
                if (row >= tb->rowOff && row < tb->rowOff + tb->count)
                    local.emplace_back(row - tb->rowOff, val);
            if (local.empty()) continue;
            // Even into a zero-dimensional cell the component must still
            // be a boundary class; coords then returns the empty vector.
            SparseVecQ e1 = tcell->e1span->coords(std::move(local),
                                                  "spectral: d_r target class");
            SparseVecQ col =
                tcell->pageSpan->coords(std::move(e1), "spectral: d_r coords");
            cs.dmat.entries[static_cast<size_t>(j)] = std::move(col);
        }
    }
}

// Advance every cell to the next page: basis = ker d_r / im d_r in the
// current coordinates, boundaries accumulated in E1 coordinates, and each
// new representative corrected through the master echelon so that its
// boundary drops one more filtration level.
void advance(Engine& e, int r) {
    Grid& g = e.g;
    const FieldOps F{g.ring, g.p};
    // Incoming boundaries first, while current repE1 is still valid.
    std::vector<std::vector<SparseVecQ>> new_bound(e.cells.size());
    for (size_t i = 0; i < e.cells.size(); ++i)
        new_bound[i] = e.cells[i].bound;
    for (const CellState& cs : e.cells) {
        CellState* tcell = e.cell(cs.t - 1, cs.blk->level - r);
        if (!tcell || tcell->dim == 0) continue;
        const size_t ti = e.by_key.at({tcell->t, tcell->blk->level});
        for (std::int64_t j = 0; j < cs.dim; ++j) {
            const SparseVecQ& col = cs.dmat.entries[static_cast<size_t>(j)];
            if (col.empty()) continue;
            SparseVecQ e1;
            for (const auto& [i, c] : col)
                e1 = scaled_axpy(F, std::move(e1), c,
                                 tcell->repE1[static_cast<size_t>(i)]);
            if (!e1.empty()) new_bound[ti].push_back(std::move(e1));
        }
    }
    // New bases and corrected representatives.
    for (size_t ci = 0; ci < e.cells.size(); ++ci) {
        CellState& cs = e.cells[ci];
        const Blk& blk = *cs.blk;
        CellState* scell = e.cell(cs.t + 1, blk.level + r);
        TaggedSpan span(g.ring, g.p); // over current basis coordinates
        if (scell && scell->dim > 0) {
            // d_r of the source lands in this cell's current coordinates.
            for (std::int64_t j = 0; j < scell->dim; ++j) {
                const SparseVecQ& col =
                    scell->dmat.entries[static_cast<size_t>(j)];
                if (!col.empty()) span.add(col, -1);
            }
        }
        std::vector<SparseVecQ> new_reps, new_repE1;
        // Kernel of this cell's d_r, streamed.
        Eliminator kel(g.ring, g.p);
        std::vector<SparseVecQ> kcomb;
        for (std::int64_t j = 0; j < cs.dim; ++j) {
            Coeffs coeffs;
            SparseVecQ expr{{j, mpq_class(1)}};
            const int idx =
                kel.insert(cs.dmat.entries[static_cast<size_t>(j)], &coeffs);
            for (const auto& [k, c] : coeffs)
                expr = scaled_axpy(F, std::move(expr), F.neg(c),
                                   kcomb[static_cast<size_t>(k)]);
            if (idx >= 0) {
                kcomb.push_back(std::move(expr));
                continue;
            }
            if (!span.add(expr, static_cast<std::int64_t>(new_reps.size())))
                continue;
            // Combine the old representatives and correct the boundary
            // down one more level via the master echelon window solve.
            SparseVecQ u, uE1;
            for (const auto& [jj, c] : expr) {
                u = scaled_axpy(F, std::move(u), c,
                                cs.reps[static_cast<size_t>(jj)]);
                uE1 = scaled_axpy(F, std::move(uE1), c,
                                  cs.repE1[static_cast<size_t>(jj)]);
            }
            Deg& dg = *g.deg(cs.t);
            const Deg* below = g.deg(cs.t - 1);
            SparseVecQ b = apply(F, dg.D, u);
            Coeffs coeffs2;
            const int limit = static_cast<int>(
                dg.prefixPiv[static_cast<size_t>(g.colPrefix(cs.t,
                                                             blk.level - 1))]);
            dg.el->reduce(b, &coeffs2, limit);
            for (const auto& [row, val] : b) {
                (void)val;
                if (below && below->rowLevel[static_cast<size_t>(row)] >
                                 blk.level - r - 1)
                    throw InvariantViolation(
                        "spectral: representative correction failed to drop "
                        "the boundary level");
            }
            for (const auto& [k, c] : coeffs2)
                u = scaled_axpy(F, u, F.neg(c), dg.comb[static_cast<size_t>(k)]);
            new_reps.push_back(std::move(u));
            new_repE1.push_back(std::move(uE1));
        }
        cs.reps = std::move(new_reps);
        cs.repE1 = std::move(new_repE1);
        cs.dim = static_cast<std::int64_t>(cs.reps.size());
        cs.bound = std::move(new_bound[ci]);
        cs.dmat = ExactMatrix{};
        cs.pageSpan.reset();
    }
}

void report_cell(const Grid& g, const CellState& cs, int r, SpectralPage& page) {
    const Blk& blk = *cs.blk;
    PageCell pc;
    if (g.var == Variance::homology) {
        pc.p = blk.level;           // -n
        pc.q = cs.t - blk.level;    // d
        pc.target_p = pc.p - r;
        pc.target_q = pc.q + r - 1;
    } else {
        pc.p = blk.level;           // n
        pc.q = -blk.level - cs.t;   // d - 2n
        pc.target_p = pc.p - r;
        pc.target_q = pc.q + r + 1;
    }
    pc.dim = cs.dim;
    const int n = blk.level < 0 ? -blk.level : blk.level;
    pc.reliable = n + r <= g.n_max - 1;
    pc.d = cs.dmat;
    page.cells.push_back(std::move(pc));
}

} // namespace

// ---- public API --------------------------------------------------------

std::int64_t FilteredComplex::dim(int t) const {
    if (t < tmin || t > tmax) return 0;
    std::int64_t s = 0;
    for (const Block& b : blocks[static_cast<size_t>(t - tmin)]) s += b.count;
    return s;
}

FilteredComplex total_complex(const Bicomplex& b, Ring ring, long p) {
    if (ring == Ring::Fp && p < 2)
        throw ConfigError("total_complex: F_p needs a prime modulus");
    if (!b.hv_commutes)
        throw InvariantViolation(
            "total_complex: H V != V H in the built range, so "
            "(H + (-1)^d V)^2 != 0 and there is no total complex");
    Grid g = make_grid(bicomplex_source(b, ring, p), ring, p,
                       Variance::homology, /*rows_descending=*/false);
    // With identical row and column orders the square is a direct product.
    for (int t = g.tmin + 1; t <= g.tmax; ++t) {
        const ExactMatrix sq = exact_multiply(g.deg(t - 1)->D, g.deg(t)->D);
        if (!exact_is_zero(sq))
            throw InvariantViolation("total_complex: D^2 != 0");
    }
    FilteredComplex fc;
    fc.ring = ring;
    fc.p = p;
    fc.tmin = g.tmin;
    fc.tmax = g.tmax;
    fc.blocks.resize(g.degs.size());
    fc.D.reserve(g.degs.size());
    for (int t = g.tmin; t <= g.tmax; ++t) {
        for (const Blk& blk : g.deg(t)->blks)
            fc.blocks[static_cast<size_t>(t - g.tmin)].push_back(
                {blk.n, blk.d, blk.level, blk.count, blk.colOff});
        fc.D.push_back(std::move(g.deg(t)->D));
    }
    return fc;
}

const PageCell* SpectralPage::cell(int p, int q) const {
    for (const PageCell& c : cells)
        if (c.p == p && c.q == q) return &c;
    return nullptr;
}

std::int64_t SpectralPage::dim(int p, int q) const {
    const PageCell* c = cell(p, q);
    return c ? c->dim : 0;
}

namespace {

std::vector<SpectralPage> run_pages(const Source& b, Ring ring, long p,
                                    int r_max, Variance variance) {
    if (ring == Ring::Z)
        throw ConfigError("pages: field coefficients required");
    if (ring == Ring::Fp && p < 2)
        throw ConfigError("pages: F_p needs a prime modulus");
    if (r_max < 1) throw ConfigError("pages: r_max must be >= 1");
    if (r_max >= 2 && !b.hv_commutes)
        throw InvariantViolation(
            "pages: H V != V H in the built range, so the total "
            "differential does not square to zero and pages beyond E_1 "
            "are undefined");
    Engine e;
    e.g = make_grid(b, ring, p, variance, /*rows_descending=*/true);
    run_master_echelon(e.g);
    build_e1(e);
    std::vector<SpectralPage> out;
    for (int r = 1; r <= r_max; ++r) {
        if (b.hv_commutes) {
            compute_dr(e, r);
        } else {
            // H V != V H: V does not carry H-cycles to H-cycles, so the
            // induced d_1 on column homology is not well-defined.  Report
            // the E_1 dimensions only, with 0 x dim placeholder matrices.
            for (CellState& cs : e.cells)
                cs.dmat = exact_zero(ring, p, 0, cs.dim);
        }
        SpectralPage page;
        page.r = r;
        page.variance = variance;
        for (const CellState& cs : e.cells) {
            // Reconcile the explicit dimension with the window-rank
            // formula at every cell, including empty ones.
            const std::int64_t expect =
                formula_dim(e.g, r, cs.blk->level, cs.t);
            if (expect != cs.dim)
                throw InvariantViolation(
                    "pages: explicit page dimension disagrees with the "
                    "window-rank formula");
            if (cs.dim > 0) report_cell(e.g, cs, r, page);
        }
        std::sort(page.cells.begin(), page.cells.end(),
                  [](const PageCell& a, const PageCell& b2) {
                      return std::tie(a.p, a.q) < std::tie(b2.p, b2.q);
                  });
        out.push_back(std::move(page));
        if (r < r_max) advance(e, r);
    }
    return out;
}

} // namespace

std::vector<SpectralPage> pages(const Bicomplex& b, Ring ring, long p,
                                int r_max, Variance variance) {
    return run_pages(bicomplex_source(b, ring, p), ring, p, r_max, variance);
}

std::vector<SpectralPage> conormal_pages(const ConormalizedBicomplex& c,
                                         int r_max, Variance variance) {
    return run_pages(conormal_source(c), c.ring, c.p, r_max, variance);
}

std::vector<HomologySummary> integral_column_homology(const Bicomplex& b,
                                                      int n) {
    if (n < 0 || n > b.n_max)
        throw ConfigError("integral_column_homology: column out of range");
    std::vector<HomologySummary> out;
    for (int d = 0; d <= b.dmax(n); ++d) {
        const ExactMatrix d_out = exact_from_sparse(b.H(n, d), Ring::Z);
        const ExactMatrix d_in =
            d + 1 <= b.dmax(n)
                ? exact_from_sparse(b.H(n, d + 1), Ring::Z)
                : exact_zero(Ring::Z, 0, b.dim(n, d), 0);
        out.push_back(homology(d_in, d_out));
    }
    return out;
}

std::string page_report(const std::vector<SpectralPage>& pages,
                        ReportFormat format, bool with_matrices) {
    if (format == ReportFormat::csv) {
        std::ostringstream os;
        os << "r,variance,p,q,dim,reliable,target_p,target_q\n";
        for (const SpectralPage& pg : pages)
            for (const PageCell& c : pg.cells)
                os << pg.r << ','
                   << (pg.variance == Variance::homology ? "homology"
                                                         : "cohomology")
                   << ',' << c.p << ',' << c.q << ',' << c.dim << ','
                   << (c.reliable ? 1 : 0) << ',' << c.target_p << ','
                   << c.target_q << '\n';
        return os.str();
    }
    nlohmann::json root = nlohmann::json::array();
    for (const SpectralPage& pg : pages) {
        nlohmann::json jp;
        jp["r"] = pg.r;
        jp["variance"] =
            pg.variance == Variance::homology ? "homology" : "cohomology";
        jp["cells"] = nlohmann::json::array();
        for (const PageCell& c : pg.cells) {
            nlohmann::json jc;
            jc["p"] = c.p;
            jc["q"] = c.q;
            jc["dim"] = c.dim;
            jc["reliable"] = c.reliable;
            jc["target_p"] = c.target_p;
            jc["target_q"] = c.target_q;
            if (with_matrices) {
                nlohmann::json jd = nlohmann::json::array();
                for (std::int64_t j = 0; j < c.d.cols; ++j)
                    for (const auto& [r, v] : c.d.entries[static_cast<size_t>(j)])
                        jd.push_back({r, j, v.get_str()});
                jc["d"] = {{"rows", c.d.rows}, {"cols", c.d.cols},
                           {"entries", jd}};
            }
            jp["cells"].push_back(std::move(jc));
        }
        root.push_back(std::move(jp));
    }
    return root.dump(2);
}

} // namespace foxweave
