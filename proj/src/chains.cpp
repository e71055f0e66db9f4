#include "foxweave/chains.hpp"

#include <algorithm>

#include "foxweave/errors.hpp"

namespace foxweave {

TreeChain chain_new(std::vector<FnTree> trees) {
    if (trees.empty()) throw ConfigError("chain_new: a chain needs at least one tree");
    TreeChain c;
    c.n = trees[0].n;
    c.m = trees[0].m;
    c.degree = static_cast<int>(trees.size()) - 1;
    for (size_t k = 0; k < trees.size(); ++k) {
        if (trees[k].n != c.n || trees[k].m != c.m)
            throw ConfigError("chain_new: trees must share (n, m)");
        if (k > 0) {
            if (trees[k - 1] == trees[k] || !tree_leq(trees[k - 1], trees[k]))
                throw ConfigError("chain_new: trees must ascend strictly");
        }
    }
    c.trees = std::move(trees);
    return c;
}

std::string chain_to_text(const TreeChain& c) {
    std::string out;
    for (size_t k = 0; k < c.trees.size(); ++k) {
        if (k > 0) out += " | ";
        out += tree_to_text(c.trees[k]);
    }
    return out;
}

TreeChain ChainList::chain(std::int64_t k) const {
    std::vector<FnTree> ts;
    ts.reserve(static_cast<size_t>(degree) + 1);
    const std::int32_t* w = word(k);
    for (int p = 0; p <= degree; ++p)
        ts.push_back(trees[static_cast<size_t>(w[p])]);
    return chain_new(std::move(ts));
}

std::int64_t ChainList::find(const std::int32_t* w) const {
    const int len = degree + 1;
    std::int64_t lo = 0, hi = count();
    while (lo < hi) {
        std::int64_t mid = lo + (hi - lo) / 2;
        const std::int32_t* cand = word(mid);
        int cmp = 0;
        for (int p = 0; p < len && cmp == 0; ++p)
            cmp = (cand[p] < w[p]) ? -1 : (cand[p] > w[p] ? 1 : 0);
        if (cmp < 0)
            lo = mid + 1;
        else
            hi = mid;
    }
    if (lo == count()) return -1;
    const std::int32_t* cand = word(lo);
    for (int p = 0; p < len; ++p)
        if (cand[p] != w[p]) return -1;
    return lo;
}

std::vector<std::vector<std::int32_t>>
successor_table(const std::vector<FnTree>& trees) {
    const int cnt = static_cast<int>(trees.size());
    std::vector<std::vector<std::int32_t>> succ(static_cast<size_t>(cnt));
    // Strict ascent forces dim_bz to grow, so bucket trees by dimension
    // and compare only across strictly smaller dimensions.
    std::vector<int> dim(static_cast<size_t>(cnt));
    for (int a = 0; a < cnt; ++a) dim[static_cast<size_t>(a)] = dim_bz(trees[static_cast<size_t>(a)]);
    for (int a = 0; a < cnt; ++a)
        for (int b = 0; b < cnt; ++b) {
            if (dim[static_cast<size_t>(a)] >= dim[static_cast<size_t>(b)]) continue;
            if (tree_leq(trees[static_cast<size_t>(a)], trees[static_cast<size_t>(b)]))
                succ[static_cast<size_t>(a)].push_back(static_cast<std::int32_t>(b));
        }
    return succ;
}

ChainList enumerate_chain_list(int m, int n, int degree, std::int64_t cap) {
    if (degree < 0) throw ConfigError("enumerate_chain_list: degree must be >= 0");
    ChainList out;
    out.m = m;
    out.n = n;
    out.degree = degree;
    out.trees = enumerate_trees(m, n, cap);
    const int cnt = static_cast<int>(out.trees.size());
    const int len = degree + 1;
    if (degree == 0) {
        out.words.reserve(static_cast<size_t>(cnt));
        for (int a = 0; a < cnt; ++a) out.words.push_back(static_cast<std::int32_t>(a));
        return out;
    }
    // Chains ascend strictly in dim_bz, so degrees beyond (m-1)(n-1) are empty.
    if (degree > (m - 1) * std::max(n - 1, 0)) return out;
    std::vector<std::vector<std::int32_t>> succ = successor_table(out.trees);
    std::vector<std::int32_t> cur(static_cast<size_t>(len));
    std::int64_t emitted = 0;
    auto dfs = [&](auto&& self, int pos) -> void {
        if (pos == len) {
            if (++emitted > cap)
                throw CapError("enumerate_chain_list: chain cap exceeded");
            out.words.insert(out.words.end(), cur.begin(), cur.end());
            return;
        }
        if (pos == 0) {
            for (int a = 0; a < cnt; ++a) {
                cur[0] = static_cast<std::int32_t>(a);
                self(self, 1);
            }
        } else {
            for (std::int32_t b : succ[static_cast<size_t>(cur[static_cast<size_t>(pos - 1)])]) {
                cur[static_cast<size_t>(pos)] = b;
                self(self, pos + 1);
            }
        }
    };
    dfs(dfs, 0);
    return out;
}

std::vector<TreeChain> enumerate_chains(int m, int n, int degree,
                                        std::int64_t cap) {
    ChainList list = enumerate_chain_list(m, n, degree, cap);
    std::vector<TreeChain> out;
    out.reserve(static_cast<size_t>(list.count()));
    for (std::int64_t k = 0; k < list.count(); ++k) out.push_back(list.chain(k));
    return out;
}

} // namespace foxweave
