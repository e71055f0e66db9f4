#pragma once

// Fox-Neuwirth trees (depth-orderings) and their combinatorics.
//
// A depth-ordering on n labels at height m is a permutation sigma of
// {1..n} together with depth indices a_1..a_{n-1}, each in {0..m-1}.
// It encodes a stratum of the configuration space Conf_n(R^m): the points
// x_{sigma(1)}, ..., x_{sigma(n)} are in lexicographic order and
// consecutive points share exactly a_p leading coordinates.  The depth of
// an arbitrary pair follows from the min-rule
//     d(x, z) = min{ d(x, y), d(y, z) }.

#include <cstdint>
#include <string>
#include <vector>

namespace foxweave {

struct FnTree {
    int n = 1; // leaf count, >= 0 (n = 0 is the empty tree)
    int m = 2; // height, >= 2
    // sigma[p-1] is the label at position p (a permutation of {1..n}).
    std::vector<int> sigma;
    // depths[p-1] is the depth between positions p and p+1, in [0, m-1].
    std::vector<int> depths;

    bool operator==(const FnTree&) const = default;
};

// Validating constructor; throws ConfigError on malformed input.
FnTree tree_new(int n, int m, std::vector<int> sigma, std::vector<int> depths);

// The trivial tree T_n: identity permutation, all depths m-1.
FnTree trivial_tree(int n, int m);

// Position p with sigma(p) == label (1-based); throws on bad label.
int position_of(const FnTree& t, int label);

// Cell dimension: sum of the depth indices.
int dim_bz(const FnTree& t);

struct PairRel {
    int order; // +1 iff alpha precedes beta in sigma, else -1
    int depth; // min of the consecutive depths between their positions
};

// Order and depth of the pair (alpha, beta) via the min-rule.
PairRel pair_depth(const FnTree& t, int alpha, int beta);

// +1 iff i precedes j in sigma; antisymmetric in (i, j).
int sgn_pair(const FnTree& t, int i, int j);

// Partial order on depth-orderings, oriented so that relations may only
// persist or deepen: t <= u iff for every pair alpha <_r beta in t, the
// same pair in u is either alpha <_r beta, or at some depth s > r in
// either order.  The trivial tree is maximal; all-zero-depth trees are
// minimal.
bool tree_leq(const FnTree& t, const FnTree& u);

// Coface d_i, 0 <= i <= n+1, landing in height-m trees on n+1 leaves.
// For internal i it doubles the label i (inserting i+1 right after it at
// depth m-1); i = 0 prepends a new label 1, i = n+1 appends a new label
// n+1, both attached at depth m-1.
FnTree coface(int i, const FnTree& t);

// Codegeneracy s_j, 0 <= j <= n-1: deletes the label j+1, relabels, and
// merges the two adjacent depths by min.  Requires n >= 2.
FnTree codegeneracy(int j, const FnTree& t);

struct Extremal {
    int a; // size of the maximal identity-labelled depth-(m-1) prefix block
    int b; // start of the minimal identity-labelled depth-(m-1) suffix block
    std::vector<int> e; // {1..a} union {b..n-1}
};

// Extremal hair blocks: a = max{ a : sigma(k)=k for k<=a+1 and
// depths[k]=m-1 for k<=a }, with a = 0 when no such block exists;
// b = min{ b : sigma(k)=k for k>=b and depths[k]=m-1 for k>=b }, with
// b = n when no such block exists.
Extremal extremal(const FnTree& t);

// ---- enumeration ------------------------------------------------------

// Number of trees, n! * m^(n-1); throws CapError when above cap.
std::int64_t tree_count(int m, int n, std::int64_t cap);

// All trees at (m, n) in canonical order: lexicographic on the word
// sigma followed by the word depths.
std::vector<FnTree> enumerate_trees(int m, int n, std::int64_t cap = 10'000'000);

// Canonical (lexicographic) rank of a tree within enumerate_trees(m, n).
std::int64_t tree_index(const FnTree& t);

// Strict canonical order used by enumerate_trees.
bool tree_lex_less(const FnTree& t, const FnTree& u);

// ---- serialization ----------------------------------------------------

// Canonical text form, e.g. "3<2 1<1 2<0 5<1 4"; a single leaf prints as
// "1".  Height m is not part of the text form.
std::string tree_to_text(const FnTree& t);

// Parse the text form back; m must be supplied (and bounds are checked).
FnTree tree_from_text(const std::string& text, int m);

// JSON form: {"n":5,"m":3,"sigma":[3,1,2,5,4],"depths":[2,1,0,1]}.
std::string tree_to_json(const FnTree& t);
FnTree tree_from_json(const std::string& json_text);

} // namespace foxweave
