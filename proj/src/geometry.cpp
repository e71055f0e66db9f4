#include "foxweave/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "foxweave/errors.hpp"

namespace foxweave {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void validate_weights(const FnTree& t, const std::vector<double>& omega,
                      bool extended) {
    if (static_cast<int>(omega.size()) != std::max(t.n - 1, 0))
        throw ConfigError("weighted_chain: weight vector has wrong length");
    const Extremal ex = extended ? extremal(t) : Extremal{};
    for (size_t h = 0; h < omega.size(); ++h) {
        const double w = omega[h];
        if (std::isnan(w) || w < 0)
            throw ConfigError("weighted_chain: weights must be >= 0");
        if (!extended) {
            if (!(w > 0) || !std::isfinite(w))
                throw ConfigError(
                    "weighted_chain: plain weights must be finite and > 0");
            continue;
        }
        const int depth = t.depths[h];
        if ((w == 0 || w == kInf) && depth != t.m - 1)
            throw ConfigError(
                "weighted_chain: extended weight 0 or inf only at depth m-1");
        if (w == kInf) {
            const int pos = static_cast<int>(h) + 1;
            if (std::find(ex.e.begin(), ex.e.end(), pos) == ex.e.end())
                throw ConfigError(
                    "weighted_chain: infinite weight outside the extremal "
                    "hair blocks");
        }
    }
}

} // namespace

WeightedChain weighted_chain(TreeChain chain, std::vector<double> lambda,
                             std::vector<std::vector<double>> omega,
                             bool extended) {
    if (static_cast<int>(lambda.size()) != chain.degree + 1)
        throw ConfigError("weighted_chain: lambda has wrong length");
    if (static_cast<int>(omega.size()) != chain.degree + 1)
        throw ConfigError("weighted_chain: omega has wrong length");
    double sum = 0;
    double top = 0;
    for (double l : lambda) {
        if (std::isnan(l) || l < 0 || !std::isfinite(l))
            throw ConfigError("weighted_chain: lambda must be finite, >= 0");
        sum += l;
        top = std::max(top, l);
    }
    if (std::abs(sum - 1.0) > kAlgebraTol || top == 0)
        throw ConfigError("weighted_chain: lambda must be convex (sum 1)");
    for (int k = 0; k <= chain.degree; ++k)
        validate_weights(chain.trees[static_cast<size_t>(k)],
                         omega[static_cast<size_t>(k)], extended);
    return WeightedChain{std::move(chain), std::move(lambda), std::move(omega)};
}

Eigen::VectorXd KontsTensor::entry(int i, int j) const {
    if (i == j || i < 1 || j < 1 || i > n || j > n)
        throw ConfigError("KontsTensor: pair out of range");
    if (i < j) return upper[static_cast<size_t>(pair_index(i, j, n))];
    return -upper[static_cast<size_t>(pair_index(j, i, n))];
}

void KontsTensor::set(int i, int j, Eigen::VectorXd v) {
    if (!(1 <= i && i < j && j <= n))
        throw ConfigError("KontsTensor: set needs 1 <= i < j <= n");
    upper[static_cast<size_t>(pair_index(i, j, n))] = std::move(v);
}

int pair_index(int i, int j, int n) {
    if (!(1 <= i && i < j && j <= n))
        throw ConfigError("pair_index: need 1 <= i < j <= n");
    // Pairs (1,2), (1,3), ..., (1,n), (2,3), ...
    const int before = (i - 1) * n - (i - 1) * i / 2;
    return before + (j - i - 1);
}

Eigen::VectorXd collapse_vector(int m, CollapseDir dir) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(m);
    v[dir == CollapseDir::em ? m - 1 : 0] = 1.0;
    return v;
}

Configuration config_from_tree(const FnTree& t,
                               const std::vector<double>& theta) {
    if (static_cast<int>(theta.size()) != std::max(t.n - 1, 0))
        throw ConfigError("config_from_tree: theta has wrong length");
    for (double w : theta)
        if (!(w > 0) || !std::isfinite(w))
            throw ConfigError("config_from_tree: theta must be finite, > 0");
    Configuration c;
    c.m = t.m;
    c.x.assign(static_cast<size_t>(t.n), Eigen::VectorXd::Zero(t.m));
    Eigen::VectorXd cur = Eigen::VectorXd::Zero(t.m);
    for (int p = 1; p <= t.n; ++p) {
        if (p > 1) {
            Eigen::VectorXd step = Eigen::VectorXd::Zero(t.m);
            step[t.depths[static_cast<size_t>(p - 2)]] +=
                theta[static_cast<size_t>(p - 2)];
            cur += step;
        }
        c.x[static_cast<size_t>(t.sigma[static_cast<size_t>(p - 1)] - 1)] = cur;
    }
    return c;
}

Configuration config_from_chain(const WeightedChain& w, double tol) {
    const int n = w.chain.n;
    Configuration out;
    out.m = w.chain.m;
    out.x.assign(static_cast<size_t>(n), Eigen::VectorXd::Zero(w.chain.m));
    for (int k = 0; k <= w.chain.degree; ++k) {
        const double l = w.lambda[static_cast<size_t>(k)];
        if (l == 0) continue;
        const Configuration ck = config_from_tree(
            w.chain.trees[static_cast<size_t>(k)], w.omega[static_cast<size_t>(k)]);
        for (int i = 0; i < n; ++i)
            out.x[static_cast<size_t>(i)] += l * ck.x[static_cast<size_t>(i)];
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if ((out.x[static_cast<size_t>(i)] - out.x[static_cast<size_t>(j)])
                    .lpNorm<Eigen::Infinity>() <= tol)
                throw InvariantViolation(
                    "config_from_chain: points " + std::to_string(i + 1) +
                    " and " + std::to_string(j + 1) +
                    " coincide within tolerance");
    return out;
}

Eigen::VectorXd pair_difference(const WeightedChain& w, int i, int j) {
    if (i == j) throw ConfigError("pair_difference: need i != j");
    const int n = w.chain.n;
    if (i < 1 || j < 1 || i > n || j > n)
        throw ConfigError("pair_difference: label out of range");
    Eigen::VectorXd out = Eigen::VectorXd::Zero(w.chain.m);
    for (int k = 0; k <= w.chain.degree; ++k) {
        const double l = w.lambda[static_cast<size_t>(k)];
        if (l == 0) continue;
        const FnTree& t = w.chain.trees[static_cast<size_t>(k)];
        const int p = position_of(t, i);
        const int q = position_of(t, j);
        const double sgn = p < q ? 1.0 : -1.0;
        for (int h = std::min(p, q); h < std::max(p, q); ++h)
            out[t.depths[static_cast<size_t>(h - 1)]] +=
                l * sgn * w.omega[static_cast<size_t>(k)][static_cast<size_t>(h - 1)];
    }
    return out;
}

FnTree stratum_of(const Configuration& c, double tol) {
    const int n = c.n();
    const int m = c.m;
    // Lexicographic comparison within the tolerance band: the first
    // coordinate that differs by more than tol decides; no such
    // coordinate means the points are indistinguishable.
    auto lex_class = [&](int a, int b) -> int { // -1, 0 (ambiguous), +1
        for (int k = 0; k < m; ++k) {
            const double d = c.x[static_cast<size_t>(b)][k] -
                             c.x[static_cast<size_t>(a)][k];
            if (d > tol) return 1;
            if (d < -tol) return -1;
        }
        return 0;
    };
    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return lex_class(a, b) > 0;
    });
    std::vector<int> sigma;
    sigma.reserve(static_cast<size_t>(n));
    for (int idx : order) sigma.push_back(idx + 1);
    std::vector<int> depths;
    for (int p = 0; p + 1 < n; ++p) {
        const int a = order[static_cast<size_t>(p)];
        const int b = order[static_cast<size_t>(p + 1)];
        if (lex_class(a, b) <= 0)
            throw ConfigError(
                "stratum_of: ambiguous comparison, points within tolerance");
        int shared = 0;
        while (std::abs(c.x[static_cast<size_t>(b)][shared] -
                        c.x[static_cast<size_t>(a)][shared]) <= tol)
            ++shared;
        depths.push_back(shared);
    }
    return tree_new(n, m, std::move(sigma), std::move(depths));
}

KontsTensor konts_point(const Configuration& c, double tol) {
    KontsTensor t;
    t.n = c.n();
    t.m = c.m;
    for (int i = 1; i <= t.n; ++i)
        for (int j = i + 1; j <= t.n; ++j) {
            const Eigen::VectorXd d =
                c.x[static_cast<size_t>(j - 1)] - c.x[static_cast<size_t>(i - 1)];
            const double norm = d.norm();
            if (norm <= tol)
                throw ConfigError("konts_point: coincident points " +
                                  std::to_string(i) + ", " + std::to_string(j));
            t.upper.push_back(d / norm);
        }
    return t;
}

KontsTensor konts_coface(int u, const KontsTensor& t, CollapseDir dir) {
    const int l = t.n;
    if (u < 0 || u > l + 1)
        throw ConfigError("konts_coface: u out of range");
    KontsTensor out;
    out.n = l + 1;
    out.m = t.m;
    for (int i = 1; i <= out.n; ++i)
        for (int j = i + 1; j <= out.n; ++j) {
            if (is_exceptional(u, i, j, l)) {
                out.upper.push_back(collapse_vector(t.m, dir));
            } else {
                out.upper.push_back(
                    t.entry(degeneracy_value(u, i), degeneracy_value(u, j)));
            }
        }
    return out;
}

KontsTensor tau_tensor(const WeightedChain& w, const MonotoneMap& phi,
                       const MonotoneMap& D, CollapseDir dir, double tol) {
    const int l = w.chain.n;
    if (phi.cod != l)
        throw ConfigError("tau_tensor: phi must land in the leaf ordinal");
    if (D.cod != w.chain.degree)
        throw ConfigError("tau_tensor: D must land in the chain ordinal");
    bool trivial = true;
    const FnTree triv = trivial_tree(l, w.chain.m);
    for (int k = 0; k <= D.dom; ++k)
        if (!(w.chain.trees[static_cast<size_t>(D(k))] == triv)) trivial = false;
    KontsTensor out;
    out.n = l;
    out.m = w.chain.m;
    for (int i = 1; i <= l; ++i)
        for (int j = i + 1; j <= l; ++j) {
            if (trivial || is_degenerate(classify_pair(phi, i, j))) {
                out.upper.push_back(collapse_vector(w.chain.m, dir));
                continue;
            }
            Eigen::VectorXd finite = Eigen::VectorXd::Zero(w.chain.m);
            Eigen::VectorXd dominant = Eigen::VectorXd::Zero(w.chain.m);
            for (int k = 0; k <= D.dom; ++k) {
                const int dk = D(k);
                const double lam = w.lambda[static_cast<size_t>(dk)];
                if (lam == 0) continue;
                const FnTree& tr = w.chain.trees[static_cast<size_t>(dk)];
                const int p = position_of(tr, i);
                const int q = position_of(tr, j);
                const double sgn = p < q ? 1.0 : -1.0;
                for (int h = std::min(p, q); h < std::max(p, q); ++h) {
                    const int axis = tr.depths[static_cast<size_t>(h - 1)];
                    const double om =
                        w.omega[static_cast<size_t>(dk)][static_cast<size_t>(h - 1)];
                    if (om == std::numeric_limits<double>::infinity())
                        dominant[axis] += lam * sgn;
                    else
                        finite[axis] += lam * sgn * om;
                }
            }
            // Any infinite summand dominates the direction.
            const Eigen::VectorXd v =
                dominant.norm() > 0 ? dominant : finite;
            if (v.norm() <= tol)
                throw InvariantViolation(
                    "tau_tensor: vanishing direction for pair (" +
                    std::to_string(i) + ", " + std::to_string(j) + ")");
            out.upper.push_back(v / v.norm());
        }
    return out;
}

} // namespace foxweave
