#pragma once

// Monotone maps between finite ordinals, their coface factorization, and
// the induced ("twisted") position-level maps on depth-orderings.
//
// A monotone map psi: [n] -> [l] (with [n] = {0, 1, ..., n}) is strictly
// increasing.  It factors into elementary cofaces: first psi(0) copies of
// d_0, then d_k for every jumped codomain value k > psi(0), in increasing
// order.  Applying that factorization to a tree realizes the cosimplicial
// action of psi.

#include <vector>

#include "foxweave/fn_tree.hpp"

namespace foxweave {

struct MonotoneMap {
    int dom = 0; // domain is [dom] = {0..dom}
    int cod = 0; // codomain is [cod]
    std::vector<int> values; // values[t] = psi(t), size dom+1, strictly increasing

    bool operator==(const MonotoneMap&) const = default;

    int operator()(int t) const;
};

// Validating constructor; throws ConfigError on non-monotone data.
MonotoneMap monotone_new(int dom, int cod, std::vector<int> values);

// Identity on [n].
MonotoneMap monotone_identity(int n);

// The elementary coface d_k: [n] -> [n+1] skipping the value k.
MonotoneMap monotone_coface(int k, int n);

// Composition psi o chi (chi first).
MonotoneMap monotone_compose(const MonotoneMap& psi, const MonotoneMap& chi);

// ---- elementary simplicial operators on integers ----------------------

// Coface on values: d_u(x) = x for x < u, x+1 otherwise.
int face_value(int u, int x);

// Codegeneracy on values: s_u(x) = x for x <= u, x-1 otherwise.
// By convention s_{l+1} acts as the identity on [l+1] values.
int degeneracy_value(int u, int x);

// ---- cosimplicial action and twisting ---------------------------------

// Apply psi: [n] -> [l] to a tree on n leaves via the jumped-value coface
// factorization; result has l leaves.
FnTree apply_monotone(const MonotoneMap& psi, const FnTree& t);

// The twist of psi by the tree t on its domain: the position-level map
// psi^t with psi^t(0) = psi(0) and
//     psi^t(s) = inverse(sigma^{psi t})(psi(sigma^t(s)))   for s >= 1.
// It is strictly increasing with the same endpoints as psi.
MonotoneMap twisted(const MonotoneMap& psi, const FnTree& t);

// ---- pair predicates --------------------------------------------------

enum class PairTag { none, left_extreme, right_extreme, collapsed };

// Degeneracy class of the label pair (i, j), 1 <= i < j <= cod(phi):
// left_extreme if i <= phi(0); else right_extreme if j > phi(dom); else
// collapsed if none of i..j-1 is a value of phi; else none.
PairTag classify_pair(const MonotoneMap& phi, int i, int j);

inline bool is_degenerate(PairTag tag) { return tag != PairTag::none; }

// Whether the pair (i, j), 1 <= i < j <= l+1, is made degenerate by the
// u-th coface into an (l+1)-point stage: internally (0 < u < l+1) exactly
// the pair (u, u+1); for u = 0 every pair with i = 1; for u = l+1 every
// pair with j = l+1.
bool is_exceptional(int u, int i, int j, int l);

} // namespace foxweave
