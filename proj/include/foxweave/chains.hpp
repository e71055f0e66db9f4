#pragma once

// Nerve chains: strictly ascending sequences of depth-orderings under
// tree_leq.  A chain Gamma_0 < ... < Gamma_d of degree d is a barycentric
// cell; the chains at fixed (m, n, d) form the generator basis of the
// bicomplex in bidegree (d, n).
//
// Chains are stored compactly: the shared tree list for (m, n) in
// canonical order, plus a flat buffer of (degree + 1)-long words of tree
// indices, one word per chain, in lexicographic order of the word.  This
// keeps the multi-million-generator bidegrees of (m, n) = (3, 4) within
// a few hundred megabytes.

#include <cstdint>
#include <string>
#include <vector>

#include "foxweave/fn_tree.hpp"

namespace foxweave {

struct TreeChain {
    int n = 1;
    int m = 2;
    int degree = 0;                // number of trees minus one
    std::vector<FnTree> trees;     // strictly ascending under tree_leq

    bool operator==(const TreeChain&) const = default;
};

// Validating constructor; throws ConfigError unless the trees share
// (n, m) and ascend strictly under tree_leq.
TreeChain chain_new(std::vector<FnTree> trees);

// Canonical text form: tree texts joined by " | ".
std::string chain_to_text(const TreeChain& c);

// Compact list of every chain at (m, n, degree).
struct ChainList {
    int m = 2;
    int n = 1;
    int degree = 0;
    // All trees at (m, n), canonical order (shared across degrees).
    std::vector<FnTree> trees;
    // count() words of (degree + 1) tree indices each, lexicographic.
    std::vector<std::int32_t> words;

    std::int64_t count() const {
        return degree + 1 == 0
                   ? 0
                   : static_cast<std::int64_t>(words.size()) / (degree + 1);
    }
    const std::int32_t* word(std::int64_t k) const {
        return words.data() + k * (degree + 1);
    }
    TreeChain chain(std::int64_t k) const;
    // Index of the chain with the given index word, or -1 when absent.
    std::int64_t find(const std::int32_t* w) const;
};

// Enumerate all chains at (m, n, degree) in lexicographic order of the
// index word (which refines the canonical tree order chain by chain).
// Throws CapError when the chain count would exceed the cap.
ChainList enumerate_chain_list(int m, int n, int degree,
                               std::int64_t cap = 50'000'000);

// Convenience wrapper materializing TreeChain values (small inputs only).
std::vector<TreeChain> enumerate_chains(int m, int n, int degree,
                                        std::int64_t cap = 1'000'000);

// Strict-ascent successor lists: succ[a] = sorted indices b with
// tree[a] < tree[b] strictly.  Shared by enumeration and the coface
// differential.
std::vector<std::vector<std::int32_t>>
successor_table(const std::vector<FnTree>& trees);

} // namespace foxweave
