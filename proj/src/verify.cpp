#include "foxweave/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "foxweave/bicomplex.hpp"
#include "foxweave/chains.hpp"
#include "foxweave/errors.hpp"
#include "foxweave/exact.hpp"
#include "foxweave/fn_tree.hpp"
#include "foxweave/geometry.hpp"
#include "foxweave/monotone.hpp"
#include "foxweave/spectral.hpp"

namespace foxweave {

bool VerifyReport::passed() const {
    for (const auto& c : checks)
        if (!c.passed) return false;
    return true;
}

std::string VerifyReport::to_text() const {
    std::ostringstream out;
    out << "suite " << suite << '\n';
    for (const auto& c : checks) {
        out << (c.passed ? "PASS " : "FAIL ") << c.name;
        if (!c.detail.empty()) out << " -- " << c.detail;
        out << '\n';
    }
    out << (passed() ? "suite PASS" : "suite FAIL") << '\n';
    return out.str();
}

std::string VerifyReport::to_json() const {
    nlohmann::json j;
    j["suite"] = suite;
    j["passed"] = passed();
    j["checks"] = nlohmann::json::array();
    for (const auto& c : checks)
        j["checks"].push_back({{"name", c.name},
                               {"passed", c.passed},
                               {"detail", c.detail}});
    return j.dump(2) + "\n";
}

namespace {

struct Tally {
    std::int64_t checked = 0;
    std::int64_t failed = 0;
    std::string first;

    void count(bool ok, const std::string& where) {
        ++checked;
        if (!ok) {
            ++failed;
            if (first.empty()) first = where;
        }
    }
    VerifyCheck check(const std::string& name) const {
        std::ostringstream d;
        d << checked << " instances, " << failed << " failed";
        if (!first.empty()) d << "; first: " << first;
        return {name, failed == 0, d.str()};
    }
};

// ---- cosimplicial -----------------------------------------------------

// Full-range exhaustive check of the five identity families; the mixed
// families are checked on their entire index range, including the
// extremal cofaces where they are known to fail.
VerifyReport suite_cosimplicial(const VerifyOptions& opt) {
    VerifyReport rep{"cosimplicial", {}};
    Tally dd, ss, sd_id, sd_left, sd_right;
    for (int n = 1; n <= opt.n; ++n)
        for (const FnTree& t : enumerate_trees(opt.m, n)) {
            auto where = [&](const char* fam, int i, int j) {
                std::ostringstream w;
                w << fam << " i=" << i << " j=" << j << " on '"
                  << tree_to_text(t) << "'";
                return w.str();
            };
            for (int i = 0; i <= n + 1; ++i)
                for (int j = i + 1; j <= n + 2; ++j)
                    dd.count(coface(j, coface(i, t)) ==
                                 coface(i, coface(j - 1, t)),
                             where("d_j d_i = d_i d_{j-1}", i, j));
            if (n >= 3)
                for (int i = 0; i <= n - 2; ++i)
                    for (int j = i; j <= n - 2; ++j)
                        ss.count(codegeneracy(j, codegeneracy(i, t)) ==
                                     codegeneracy(i, codegeneracy(j + 1, t)),
                                 where("s_j s_i = s_i s_{j+1}", i, j));
            for (int i = 0; i <= n + 1; ++i)
                for (int j = 0; j <= n; ++j) {
                    const FnTree lhs = codegeneracy(j, coface(i, t));
                    if (i == j || i == j + 1)
                        sd_id.count(lhs == t, where("s_j d_i = id", i, j));
                    else if (i < j && n >= 2)
                        sd_left.count(lhs == coface(i, codegeneracy(j - 1, t)),
                                      where("s_j d_i = d_i s_{j-1}", i, j));
                    else if (j + 1 < i && n >= 2)
                        sd_right.count(lhs == coface(i - 1, codegeneracy(j, t)),
                                       where("s_j d_i = d_{i-1} s_j", i, j));
                }
        }
    rep.checks.push_back(dd.check("coface exchange"));
    rep.checks.push_back(ss.check("codegeneracy exchange"));
    rep.checks.push_back(sd_id.check("mixed identity section"));
    rep.checks.push_back(sd_left.check("mixed exchange, i < j"));
    rep.checks.push_back(sd_right.check("mixed exchange, i > j + 1"));
    return rep;
}

// ---- poset ------------------------------------------------------------

VerifyReport suite_poset(const VerifyOptions& opt) {
    VerifyReport rep{"poset", {}};
    Tally refl, antisym, trans, maximal, minimal;
    for (int n = 1; n <= opt.n; ++n) {
        const std::vector<FnTree> trees = enumerate_trees(opt.m, n);
        const FnTree top = trivial_tree(n, opt.m);
        const size_t cnt = trees.size();
        for (size_t a = 0; a < cnt; ++a) {
            refl.count(tree_leq(trees[a], trees[a]), tree_to_text(trees[a]));
            // Maximality: nothing sits strictly above the trivial tree.
            maximal.count(!(!(trees[a] == top) && tree_leq(top, trees[a])),
                          tree_to_text(trees[a]));
            bool zero_depth = true;
            for (int d : trees[a].depths) zero_depth = zero_depth && d == 0;
            if (zero_depth) {
                // All-zero-depth trees admit nothing strictly below.
                bool min_ok = true;
                for (size_t b = 0; b < cnt && min_ok; ++b)
                    if (!(trees[b] == trees[a]) && tree_leq(trees[b], trees[a]))
                        min_ok = false;
                minimal.count(min_ok, tree_to_text(trees[a]));
            }
            for (size_t b = 0; b < cnt; ++b)
                if (a != b && tree_leq(trees[a], trees[b]))
                    antisym.count(!tree_leq(trees[b], trees[a]),
                                  tree_to_text(trees[a]) + " vs " +
                                      tree_to_text(trees[b]));
        }
        // Transitivity, exhaustive only while the cube stays desk-scale.
        if (cnt <= 200)
            for (size_t a = 0; a < cnt; ++a)
                for (size_t b = 0; b < cnt; ++b) {
                    if (!tree_leq(trees[a], trees[b])) continue;
                    for (size_t c = 0; c < cnt; ++c)
                        if (tree_leq(trees[b], trees[c]))
                            trans.count(tree_leq(trees[a], trees[c]),
                                        tree_to_text(trees[a]) + " .. " +
                                            tree_to_text(trees[c]));
                }
    }
    rep.checks.push_back(refl.check("reflexivity"));
    rep.checks.push_back(antisym.check("antisymmetry"));
    rep.checks.push_back(trans.check("transitivity"));
    rep.checks.push_back(maximal.check("trivial tree is maximal"));
    rep.checks.push_back(minimal.check("zero-depth trees are minimal"));
    return rep;
}

// ---- twisted ----------------------------------------------------------

std::string values_word(const MonotoneMap& m) {
    std::string w;
    for (int v : m.values) w += std::to_string(v);
    return w;
}

VerifyReport suite_twisted(const VerifyOptions&) {
    VerifyReport rep{"twisted", {}};
    const MonotoneMap psi = monotone_new(3, 9, {2, 3, 5, 8});
    const FnTree lambda = tree_new(3, 3, {3, 1, 2}, {0, 1});
    const FnTree image = apply_monotone(psi, lambda);
    rep.checks.push_back(
        {"image tree permutation 126783459",
         image.sigma == std::vector<int>{1, 2, 6, 7, 8, 3, 4, 5, 9},
         "computed " + [&] {
             std::string w;
             for (int v : image.sigma) w += std::to_string(v);
             return w;
         }()});
    const MonotoneMap tw = twisted(psi, lambda);
    rep.checks.push_back(
        {"twisted morphism equals the pinned worked value 2578",
         tw.values == std::vector<int>{2, 5, 7, 8},
         "computed " + values_word(tw) +
             "; the pinned value is inconsistent with the coface "
             "factorization, which yields 2568"});
    rep.checks.push_back({"twisted morphism equals the derived value 2568",
                          tw.values == std::vector<int>{2, 5, 6, 8},
                          "computed " + values_word(tw)});
    rep.checks.push_back({"identity twists to identity",
                          twisted(monotone_identity(3), lambda) ==
                              monotone_identity(3),
                          ""});
    return rep;
}

// ---- bicomplex --------------------------------------------------------

VerifyReport suite_bicomplex(const VerifyOptions& opt) {
    VerifyReport rep{"bicomplex", {}};
    const Bicomplex b = build_bicomplex(opt.m, opt.n);
    Tally h2, v2, hv, euler, trunc;
    for (int n = 0; n <= b.n_max; ++n) {
        for (int d = 2; d <= b.dmax(n); ++d) {
            std::ostringstream w;
            w << "(d, n) = (" << d << ", " << n << ")";
            h2.count(sparse_is_zero(sparse_multiply(b.H(n, d - 1), b.H(n, d))),
                     w.str());
        }
        if (n + 2 <= b.n_max)
            for (int d = 0; d <= b.dmax(n); ++d) {
                std::ostringstream w;
                w << "(d, n) = (" << d << ", " << n << ")";
                v2.count(
                    sparse_is_zero(sparse_multiply(b.V(n + 1, d), b.V(n, d))),
                    w.str());
            }
        if (n + 1 <= b.n_max)
            for (int d = 1; d <= b.dmax(n); ++d) {
                std::ostringstream w;
                w << "(d, n) = (" << d << ", " << n << ")";
                hv.count(sparse_multiply(b.V(n, d - 1), b.H(n, d)) ==
                             sparse_multiply(b.H(n + 1, d), b.V(n, d)),
                         w.str());
            }
        std::int64_t chi = 0;
        for (int d = 0; d <= b.dmax(n); ++d)
            chi += (d % 2 == 0 ? 1 : -1) * b.dim(n, d);
        std::int64_t expect = 1;
        for (int k = 1; k <= n - 1; ++k)
            expect *= 1 + k * ((opt.m - 1) % 2 == 0 ? 1 : -1);
        std::ostringstream w;
        w << "column " << n << ": chi = " << chi << ", closed form " << expect;
        euler.count(chi == expect, w.str());
    }
    if (opt.n >= 1) {
        const Bicomplex smaller = build_bicomplex(opt.m, opt.n - 1);
        for (int n = 0; n <= smaller.n_max; ++n)
            for (int d = 0; d <= smaller.dmax(n); ++d) {
                std::ostringstream w;
                w << "(d, n) = (" << d << ", " << n << ")";
                bool same = smaller.dim(n, d) == b.dim(n, d) &&
                            (d == 0 || smaller.H(n, d) == b.H(n, d)) &&
                            (n >= smaller.n_max || smaller.V(n, d) == b.V(n, d));
                trunc.count(same, w.str());
            }
    }
    rep.checks.push_back(h2.check("H^2 = 0"));
    rep.checks.push_back(v2.check("V^2 = 0"));
    rep.checks.push_back(hv.check("H V = V H"));
    rep.checks.push_back(euler.check("column Euler characteristics"));
    rep.checks.push_back(trunc.check("truncation soundness"));
    return rep;
}

// ---- pages ------------------------------------------------------------

VerifyReport suite_pages(const VerifyOptions& opt) {
    VerifyReport rep{"pages", {}};
    const Bicomplex b = build_bicomplex(opt.m, opt.n);
    const int r_max = b.hv_commutes ? std::max(opt.r_max, 1) : 1;
    const auto pgs = pages(b, Ring::Q, 0, r_max);
    Tally e1, dsq, recur;
    // E_1 vs the independent column-homology path.
    for (int n = 0; n <= b.n_max; ++n)
        for (int d = 0; d <= b.dmax(n); ++d) {
            const ExactMatrix d_out =
                exact_from_sparse(b.H(n, d), Ring::Q, 0);
            const ExactMatrix d_in =
                d < b.dmax(n)
                    ? exact_from_sparse(b.H(n, d + 1), Ring::Q, 0)
                    : exact_zero(Ring::Q, 0, b.dim(n, d), 0);
            std::ostringstream w;
            w << "(p, q) = (" << -n << ", " << d << ")";
            e1.count(homology(d_in, d_out).betti == pgs[0].dim(-n, d),
                     w.str());
        }
    // d_r^2 = 0 and the recursion, from the reported matrices.
    if (b.hv_commutes)
        for (size_t k = 0; k + 1 < pgs.size(); ++k) {
            const SpectralPage& page = pgs[k];
            for (const PageCell& c : page.cells) {
                std::ostringstream w;
                w << "r = " << page.r << ", (p, q) = (" << c.p << ", " << c.q
                  << ")";
                const PageCell* tgt = page.cell(c.target_p, c.target_q);
                if (tgt != nullptr && tgt->d.rows > 0)
                    dsq.count(exact_is_zero(exact_multiply(tgt->d, c.d)),
                              w.str());
                const PageCell* src =
                    page.cell(2 * c.p - c.target_p, 2 * c.q - c.target_q);
                const ExactMatrix d_in =
                    src != nullptr ? src->d
                                   : exact_zero(Ring::Q, 0, c.dim, 0);
                recur.count(homology(d_in, c.d).betti ==
                                pgs[k + 1].dim(c.p, c.q),
                            w.str());
            }
        }
    rep.checks.push_back(e1.check("E_1 equals column homology"));
    if (b.hv_commutes) {
        rep.checks.push_back(dsq.check("d_r^2 = 0"));
        rep.checks.push_back(recur.check("dim E_{r+1} = dim H(E_r, d_r)"));
    } else {
        rep.checks.push_back(
            {"d_r availability", true,
             "H V != V H at this size: dimensions-only E_1, no d_r"});
    }
    return rep;
}

// ---- geometry ---------------------------------------------------------

FnTree random_tree(int m, int n, std::mt19937& rng) {
    std::vector<int> sigma(static_cast<size_t>(n));
    std::iota(sigma.begin(), sigma.end(), 1);
    std::shuffle(sigma.begin(), sigma.end(), rng);
    std::uniform_int_distribution<int> depth(0, m - 1);
    std::vector<int> depths;
    for (int i = 0; i + 1 < n; ++i) depths.push_back(depth(rng));
    return tree_new(n, m, std::move(sigma), std::move(depths));
}

std::vector<double> random_theta(int count, std::mt19937& rng) {
    std::uniform_real_distribution<double> u(0.1, 2.0);
    std::vector<double> out;
    for (int i = 0; i < count; ++i) out.push_back(u(rng));
    return out;
}

WeightedChain random_weighted_chain(int m, int n, int degree,
                                    std::mt19937& rng) {
    degree = std::min(degree, (m - 1) * (n - 1));
    std::vector<FnTree> trees;
    while (trees.empty()) {
        FnTree t = random_tree(m, n, rng);
        int headroom = 0;
        for (int d : t.depths) headroom += m - 1 - d;
        if (headroom < degree) continue;
        trees.push_back(std::move(t));
        while (static_cast<int>(trees.size()) < degree + 1) {
            FnTree next = trees.back();
            std::vector<size_t> raisable;
            for (size_t i = 0; i < next.depths.size(); ++i)
                if (next.depths[i] < m - 1) raisable.push_back(i);
            std::uniform_int_distribution<size_t> pick(0, raisable.size() - 1);
            ++next.depths[raisable[pick(rng)]];
            trees.push_back(std::move(next));
        }
    }
    std::vector<double> lambda(static_cast<size_t>(degree + 1));
    double sum = 0;
    std::uniform_real_distribution<double> u(0.05, 1.0);
    for (auto& l : lambda) sum += (l = u(rng));
    for (auto& l : lambda) l /= sum;
    lambda[0] += 1.0 - std::accumulate(lambda.begin(), lambda.end(), 0.0);
    std::vector<std::vector<double>> omega;
    for (int k = 0; k <= degree; ++k) omega.push_back(random_theta(n - 1, rng));
    return weighted_chain(chain_new(trees), std::move(lambda), std::move(omega));
}

VerifyReport suite_geometry(const VerifyOptions& opt) {
    VerifyReport rep{"geometry", {}};
    std::mt19937 rng(opt.seed);
    Tally round, walk, tau;
    double walk_dev = 0, tau_dev = 0;
    for (int m = 2; m <= opt.m; ++m)
        for (int n = 1; n <= opt.n; ++n)
            for (int s = 0; s < opt.samples; ++s) {
                const FnTree t = random_tree(m, n, rng);
                const Configuration c = config_from_tree(
                    t, random_theta(std::max(n - 1, 0), rng));
                std::ostringstream w;
                w << "(m, n) = (" << m << ", " << n << ") sample " << s;
                round.count(stratum_of(c) == t, w.str());
                if (n < 2) continue;
                const int degree =
                    std::uniform_int_distribution<int>(0, 2)(rng);
                const WeightedChain wc =
                    random_weighted_chain(m, n, degree, rng);
                const Configuration cc = config_from_chain(wc);
                double dev = 0;
                for (int i = 1; i <= n; ++i)
                    for (int j = 1; j <= n; ++j) {
                        if (i == j) continue;
                        dev = std::max(
                            dev, (pair_difference(wc, i, j) -
                                  (cc.x[static_cast<size_t>(j - 1)] -
                                   cc.x[static_cast<size_t>(i - 1)]))
                                     .lpNorm<Eigen::Infinity>());
                    }
                walk_dev = std::max(walk_dev, dev);
                walk.count(dev <= 1e-12, w.str());
                const KontsTensor lhs =
                    tau_tensor(wc, monotone_identity(n),
                               monotone_identity(wc.chain.degree));
                const KontsTensor rhs = konts_point(cc);
                double tdev = 0;
                for (int i = 1; i <= n; ++i)
                    for (int j = i + 1; j <= n; ++j)
                        tdev = std::max(
                            tdev, (lhs.entry(i, j) - rhs.entry(i, j)).norm());
                tau_dev = std::max(tau_dev, tdev);
                tau.count(tdev <= 1e-9, w.str());
            }
    // Coface identity, exhaustive over small tensor sizes, exact.
    Tally coface_id;
    for (int l = 1; l <= 4; ++l)
        for (int trial = 0; trial < 4; ++trial) {
            KontsTensor t;
            t.n = l;
            t.m = opt.m;
            for (int k = 0; k < l * (l - 1) / 2; ++k) {
                Eigen::VectorXd v = Eigen::VectorXd::Random(opt.m);
                t.upper.push_back(v / v.norm());
            }
            for (int i = 0; i <= l + 1; ++i)
                for (int j = i + 1; j <= l + 2; ++j) {
                    const KontsTensor lhs = konts_coface(j, konts_coface(i, t));
                    const KontsTensor rhs =
                        konts_coface(i, konts_coface(j - 1, t));
                    bool eq = lhs.n == rhs.n;
                    for (int a = 1; eq && a <= lhs.n; ++a)
                        for (int bb = a + 1; eq && bb <= lhs.n; ++bb)
                            eq = lhs.entry(a, bb) == rhs.entry(a, bb);
                    std::ostringstream w;
                    w << "l = " << l << ", i = " << i << ", j = " << j;
                    coface_id.count(eq, w.str());
                }
        }
    VerifyCheck rc = round.check("stratum round-trip");
    VerifyCheck wc2 = walk.check("walking-man vs direct difference");
    wc2.detail += "; max deviation " + std::to_string(walk_dev);
    VerifyCheck tc = tau.check("tau vs konts_point on plain chains");
    tc.detail += "; max deviation " + std::to_string(tau_dev);
    rep.checks.push_back(std::move(rc));
    rep.checks.push_back(std::move(wc2));
    rep.checks.push_back(coface_id.check("Kontsevich coface exchange"));
    rep.checks.push_back(std::move(tc));
    return rep;
}

} // namespace

std::vector<std::string> suite_names() {
    return {"cosimplicial", "poset", "twisted", "bicomplex", "pages",
            "geometry"};
}

VerifyReport run_suite(const std::string& name, const VerifyOptions& opt) {
    if (opt.m < 2) throw ConfigError("verify: m must be >= 2");
    if (opt.n < 0) throw ConfigError("verify: n must be >= 0");
    if (name == "cosimplicial") return suite_cosimplicial(opt);
    if (name == "poset") return suite_poset(opt);
    if (name == "twisted") return suite_twisted(opt);
    if (name == "bicomplex") return suite_bicomplex(opt);
    if (name == "pages") return suite_pages(opt);
    if (name == "geometry") return suite_geometry(opt);
    throw ConfigError("verify: unknown suite '" + name + "'");
}

} // namespace foxweave
