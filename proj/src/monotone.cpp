#include "foxweave/monotone.hpp"

#include <algorithm>

#include "foxweave/errors.hpp"

namespace foxweave {

int MonotoneMap::operator()(int t) const {
    if (t < 0 || t > dom) throw ConfigError("MonotoneMap: argument out of domain");
    return values[static_cast<size_t>(t)];
}

MonotoneMap monotone_new(int dom, int cod, std::vector<int> values) {
    if (dom < 0 || cod < 0) throw ConfigError("monotone_new: negative ordinal");
    if (static_cast<int>(values.size()) != dom + 1)
        throw ConfigError("monotone_new: values must have length dom+1");
    for (int t = 0; t <= dom; ++t) {
        int v = values[static_cast<size_t>(t)];
        if (v < 0 || v > cod)
            throw ConfigError("monotone_new: value out of codomain");
        if (t > 0 && v <= values[static_cast<size_t>(t - 1)])
            throw ConfigError("monotone_new: values must be strictly increasing");
    }
    MonotoneMap psi;
    psi.dom = dom;
    psi.cod = cod;
    psi.values = std::move(values);
    return psi;
}

MonotoneMap monotone_identity(int n) {
    std::vector<int> v(static_cast<size_t>(n) + 1);
    for (int t = 0; t <= n; ++t) v[static_cast<size_t>(t)] = t;
    return monotone_new(n, n, std::move(v));
}

MonotoneMap monotone_coface(int k, int n) {
    if (k < 0 || k > n + 1) throw ConfigError("monotone_coface: index out of [0, n+1]");
    std::vector<int> v(static_cast<size_t>(n) + 1);
    for (int t = 0; t <= n; ++t) v[static_cast<size_t>(t)] = t < k ? t : t + 1;
    return monotone_new(n, n + 1, std::move(v));
}

MonotoneMap monotone_compose(const MonotoneMap& psi, const MonotoneMap& chi) {
    if (chi.cod != psi.dom)
        throw ConfigError("monotone_compose: domain/codomain mismatch");
    std::vector<int> v(static_cast<size_t>(chi.dom) + 1);
    for (int t = 0; t <= chi.dom; ++t) v[static_cast<size_t>(t)] = psi(chi(t));
    return monotone_new(chi.dom, psi.cod, std::move(v));
}

int face_value(int u, int x) { return x < u ? x : x + 1; }

int degeneracy_value(int u, int x) { return x <= u ? x : x - 1; }

FnTree apply_monotone(const MonotoneMap& psi, const FnTree& t) {
    if (psi.dom != t.n)
        throw ConfigError("apply_monotone: map domain must equal leaf count");
    // Factor psi into cofaces: psi(0) copies of d_0, then d_k for every
    // jumped value k > psi(0) in increasing order, applied left to right
    // (each later coface acts on the already enlarged tree, so larger
    // indices remain correct).
    FnTree cur = t;
    for (int rep = 0; rep < psi(0); ++rep) cur = coface(0, cur);
    std::vector<char> hit(static_cast<size_t>(psi.cod) + 1, 0);
    for (int s = 1; s <= psi.dom; ++s) hit[static_cast<size_t>(psi(s))] = 1;
    for (int k = psi(0) + 1; k <= psi.cod; ++k)
        if (!hit[static_cast<size_t>(k)]) cur = coface(k, cur);
    if (cur.n != psi.cod)
        throw InvariantViolation("apply_monotone: factorization length mismatch");
    return cur;
}

MonotoneMap twisted(const MonotoneMap& psi, const FnTree& t) {
    if (psi.dom != t.n)
        throw ConfigError("twisted: map domain must equal leaf count");
    FnTree image = apply_monotone(psi, t);
    std::vector<int> v(static_cast<size_t>(psi.dom) + 1);
    v[0] = psi(0);
    for (int s = 1; s <= psi.dom; ++s) {
        int label = t.sigma[static_cast<size_t>(s - 1)]; // sigma^t(s)
        v[static_cast<size_t>(s)] = position_of(image, psi(label));
    }
    return monotone_new(psi.dom, psi.cod, std::move(v));
}

PairTag classify_pair(const MonotoneMap& phi, int i, int j) {
    if (i < 1 || i >= j || j > phi.cod)
        throw ConfigError("classify_pair: need 1 <= i < j <= codomain");
    if (i <= phi(0)) return PairTag::left_extreme;
    if (j > phi(phi.dom)) return PairTag::right_extreme;
    bool collapsed = true;
    for (int s = 0; s <= phi.dom && collapsed; ++s)
        if (phi(s) >= i && phi(s) <= j - 1) collapsed = false;
    if (collapsed) return PairTag::collapsed;
    return PairTag::none;
}

bool is_exceptional(int u, int i, int j, int l) {
    if (i < 1 || i >= j || j > l + 1)
        throw ConfigError("is_exceptional: need 1 <= i < j <= l+1");
    if (u < 0 || u > l + 1) throw ConfigError("is_exceptional: u out of [0, l+1]");
    if (u == 0) return i == 1;
    if (u == l + 1) return j == l + 1;
    return i == u && j == u + 1;
}

} // namespace foxweave
