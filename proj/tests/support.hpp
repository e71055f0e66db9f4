#pragma once

// Shared helpers for the unit and acceptance suites: independent oracles
// (naive chain enumeration, closed-form Betti numbers) and the exhaustive
// cosimplicial-identity checker.  These deliberately avoid the library's
// optimized enumeration paths wherever they serve as cross-checks.

#include <cstdint>
#include <string>
#include <vector>

#include "foxweave/fn_tree.hpp"

namespace foxtest {

using foxweave::FnTree;

// Naive strictly-ascending-chain enumeration over an explicit tree list,
// by unoptimized depth-first search on tree_leq alone.  Returns chains as
// index vectors into `trees`, in lexicographic order of the index word.
inline std::vector<std::vector<int>> naive_chains(const std::vector<FnTree>& trees,
                                                  int degree) {
    const int cnt = static_cast<int>(trees.size());
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto strictly_less = [&](int a, int b) {
        return !(trees[static_cast<size_t>(a)] == trees[static_cast<size_t>(b)]) &&
               foxweave::tree_leq(trees[static_cast<size_t>(a)],
                                  trees[static_cast<size_t>(b)]);
    };
    auto dfs = [&](auto&& self, int len) -> void {
        if (len == degree + 1) {
            out.push_back(cur);
            return;
        }
        for (int i = 0; i < cnt; ++i) {
            if (!cur.empty() && !strictly_less(cur.back(), i)) continue;
            cur.push_back(i);
            self(self, len + 1);
            cur.pop_back();
        }
    };
    dfs(dfs, 0);
    return out;
}

// Betti numbers of Conf_n(R^m) from the classical closed form: the
// Poincare polynomial is the product over k = 1..n-1 of (1 + k t^(m-1)).
inline std::vector<std::int64_t> conf_betti(int m, int n) {
    std::vector<std::int64_t> poly{1};
    for (int k = 1; k <= n - 1; ++k) {
        std::vector<std::int64_t> next(poly.size() + static_cast<size_t>(m - 1), 0);
        for (size_t d = 0; d < poly.size(); ++d) {
            next[d] += poly[d];
            next[d + static_cast<size_t>(m - 1)] += k * poly[d];
        }
        poly = std::move(next);
    }
    return poly;
}

// Euler characteristic of Conf_n(R^m): product over k of (1 + k(-1)^(m-1)).
inline std::int64_t conf_euler(int m, int n) {
    std::int64_t chi = 1;
    for (int k = 1; k <= n - 1; ++k) chi *= 1 + k * ((m - 1) % 2 == 0 ? 1 : -1);
    return chi;
}

// Exhaustive check of the cosimplicial identity families on every tree
// of FN(m, n), over the ranges where they actually hold.  Returns the
// number of identity instances checked; sets *ok to false (with a
// message) on the first failure.  Instances whose right-hand side is
// undefined (codegeneracies need at least two leaves) are skipped, as
// are the mixed identities involving an extremal coface (i = 0 with
// j >= 1, or i = n + 1 with j <= n - 2): those genuinely fail for this
// operator family, because deleting a leaf adjacent to a freshly grown
// extremal hair discards the full-depth separation the hair carried.
// The unit tests pin explicit counterexamples for the excluded cases.
inline std::int64_t check_cosimplicial_identities(int m, int n, bool* ok,
                                                  std::string* msg) {
    using foxweave::coface;
    using foxweave::codegeneracy;
    std::int64_t checked = 0;
    auto fail = [&](const FnTree& t, const std::string& what) {
        *ok = false;
        if (msg->empty())
            *msg = what + " fails on tree '" + foxweave::tree_to_text(t) + "'";
    };
    for (const FnTree& t : foxweave::enumerate_trees(m, n)) {
        // d_j d_i = d_i d_{j-1} for i < j.
        for (int i = 0; i <= n + 1; ++i)
            for (int j = i + 1; j <= n + 2; ++j) {
                ++checked;
                if (!(coface(j, coface(i, t)) == coface(i, coface(j - 1, t))))
                    fail(t, "d_j d_i = d_i d_{j-1}");
            }
        // s_j s_i = s_i s_{j+1} for i <= j (needs n >= 3 so both sides exist).
        if (n >= 3)
            for (int i = 0; i <= n - 2; ++i)
                for (int j = i; j <= n - 2; ++j) {
                    ++checked;
                    if (!(codegeneracy(j, codegeneracy(i, t)) ==
                          codegeneracy(i, codegeneracy(j + 1, t))))
                        fail(t, "s_j s_i = s_i s_{j+1}");
                }
        // Mixed identities s_j d_i on an n-leaf tree (s_j acts on n+1 leaves).
        for (int i = 0; i <= n + 1; ++i)
            for (int j = 0; j <= n; ++j) {
                const FnTree lhs = codegeneracy(j, coface(i, t));
                if (i == j || i == j + 1) {
                    ++checked;
                    if (!(lhs == t)) fail(t, "s_j d_i = id");
                } else if (i >= 1 && i < j && n >= 2) {
                    ++checked;
                    if (!(lhs == coface(i, codegeneracy(j - 1, t))))
                        fail(t, "s_j d_i = d_i s_{j-1}");
                } else if (j + 1 < i && i <= n && n >= 2) {
                    ++checked;
                    if (!(lhs == coface(i - 1, codegeneracy(j, t))))
                        fail(t, "s_j d_i = d_{i-1} s_j");
                }
            }
    }
    return checked;
}

} // namespace foxtest
