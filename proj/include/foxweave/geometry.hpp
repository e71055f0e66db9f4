#pragma once

// Floating-point realization layer: weighted trees and chains to actual
// configurations, stratum reading, and the normalized pairwise-direction
// tensors with their coface action.
//
// Conventions fixed here (see the library notes): depth a steps along the
// basis vector e_{1+a}, so depth-(m-1) merges point along e_m and the
// default collapse direction is e_m; the literal e_1 variant from part of
// the source formulas is available behind CollapseDir::e1.  Direction
// entries are x_j - x_i for i < j, matching the walking-man sign.
//
// Tolerances: kStratumTol (1e-9) for stratum reading, unit norms, and
// degeneracy detection; kAlgebraTol (1e-12) for float algebraic checks.
// Extended weights may be 0 or +infinity under the depth/hair-block
// constraints; a sum containing an infinite term is evaluated by
// discarding the finite part and normalizing the direction carried by
// the infinite coefficients.

#include <vector>

#include <Eigen/Dense>

#include "foxweave/chains.hpp"
#include "foxweave/monotone.hpp"

namespace foxweave {

inline constexpr double kStratumTol = 1e-9;
inline constexpr double kAlgebraTol = 1e-12;

struct Configuration {
    int m = 2;
    std::vector<Eigen::VectorXd> x; // x[label - 1], each of dimension m

    int n() const { return static_cast<int>(x.size()); }
};

// A convex combination of weighted trees along a nerve chain.
struct WeightedChain {
    TreeChain chain;
    std::vector<double> lambda;             // size degree + 1, >= 0, sum 1
    std::vector<std::vector<double>> omega; // omega[k]: n - 1 weights
};

// Validating constructor.  Plain variant: every weight finite and > 0.
// Extended variant: weights in [0, +inf]; 0 and +inf only at positions of
// depth m - 1, and +inf only inside the extremal hair blocks E(tree).
WeightedChain weighted_chain(TreeChain chain, std::vector<double> lambda,
                             std::vector<std::vector<double>> omega,
                             bool extended = false);

// Antisymmetric tensor of unit directions, one per ordered pair.
struct KontsTensor {
    int n = 0;
    int m = 2;
    std::vector<Eigen::VectorXd> upper; // entry (i, j) for i < j

    Eigen::VectorXd entry(int i, int j) const; // entry(j, i) = -entry(i, j)
    void set(int i, int j, Eigen::VectorXd v); // requires i < j
};

// Index of the pair (i, j), 1 <= i < j <= n, in row-major upper order.
int pair_index(int i, int j, int n);

enum class CollapseDir { em, e1 };

Eigen::VectorXd collapse_vector(int m, CollapseDir dir);

// x_{sigma(1)} = 0, x_{sigma(p+1)} = x_{sigma(p)} + theta_p e_{1+a_p};
// theta_p > 0.
Configuration config_from_tree(const FnTree& t,
                               const std::vector<double>& theta);

// Convex combination of the per-tree configurations; plain weights only.
// Verifies numerically that the result is a configuration (pairwise
// distinct points) and throws InvariantViolation otherwise.
Configuration config_from_chain(const WeightedChain& w,
                                double tol = kStratumTol);

// Walking-man formula for x_j - x_i, i != j: signed fork contributions
// between the two positions, summed over the chain.
Eigen::VectorXd pair_difference(const WeightedChain& w, int i, int j);

// Reads the stratum: sorts the points lexicographically and measures the
// shared-prefix depths within the tolerance band.  Throws ConfigError on
// an ambiguous comparison (two points equal within tolerance).
FnTree stratum_of(const Configuration& c, double tol = kStratumTol);

// Normalized pairwise differences; throws on coincident points.
KontsTensor konts_point(const Configuration& c, double tol = kStratumTol);

// The u-th coface on tensors, 0 <= u <= n + 1: exceptional pairs map to
// the collapse direction, the rest are reindexed through s_u.
KontsTensor konts_coface(int u, const KontsTensor& t,
                         CollapseDir dir = CollapseDir::em);

// The stratum map tau: for each pair (i, j), the collapse direction when
// (i, j) is phi-degenerate or every active tree is trivial, else the
// normalized walking-man sum over the active trees selected by D.
// Extended weights follow the infinite-dominance evaluation rule.
KontsTensor tau_tensor(const WeightedChain& w, const MonotoneMap& phi,
                       const MonotoneMap& D, CollapseDir dir = CollapseDir::em,
                       double tol = kStratumTol);

} // namespace foxweave
