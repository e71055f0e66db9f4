#include "foxweave/fn_tree.hpp"

#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

#include "foxweave/errors.hpp"

namespace foxweave {

FnTree tree_new(int n, int m, std::vector<int> sigma, std::vector<int> depths) {
    if (n < 0) throw ConfigError("tree_new: leaf count must be >= 0");
    if (m < 2) throw ConfigError("tree_new: height must be >= 2");
    if (static_cast<int>(sigma.size()) != n)
        throw ConfigError("tree_new: sigma must have length n");
    if (static_cast<int>(depths.size()) != std::max(n - 1, 0))
        throw ConfigError("tree_new: depths must have length n-1");
    std::vector<char> seen(static_cast<size_t>(n) + 1, 0);
    for (int label : sigma) {
        if (label < 1 || label > n || seen[static_cast<size_t>(label)])
            throw ConfigError("tree_new: sigma is not a permutation of {1..n}");
        seen[static_cast<size_t>(label)] = 1;
    }
    for (int a : depths)
        if (a < 0 || a >= m)
            throw ConfigError("tree_new: depth index out of [0, m-1]");
    FnTree t;
    t.n = n;
    t.m = m;
    t.sigma = std::move(sigma);
    t.depths = std::move(depths);
    return t;
}

FnTree trivial_tree(int n, int m) {
    std::vector<int> sigma(static_cast<size_t>(n));
    for (int p = 1; p <= n; ++p) sigma[static_cast<size_t>(p - 1)] = p;
    std::vector<int> depths(static_cast<size_t>(std::max(n - 1, 0)), m - 1);
    return tree_new(n, m, std::move(sigma), std::move(depths));
}

int position_of(const FnTree& t, int label) {
    if (label < 1 || label > t.n)
        throw ConfigError("position_of: label out of range");
    for (int p = 1; p <= t.n; ++p)
        if (t.sigma[static_cast<size_t>(p - 1)] == label) return p;
    throw InvariantViolation("position_of: label missing from permutation");
}

int dim_bz(const FnTree& t) {
    int s = 0;
    for (int a : t.depths) s += a;
    return s;
}

PairRel pair_depth(const FnTree& t, int alpha, int beta) {
    if (alpha == beta) throw ConfigError("pair_depth: labels must differ");
    int p = position_of(t, alpha);
    int q = position_of(t, beta);
    int lo = std::min(p, q), hi = std::max(p, q);
    int depth = t.m - 1;
    for (int k = lo; k < hi; ++k)
        depth = std::min(depth, t.depths[static_cast<size_t>(k - 1)]);
    return PairRel{p < q ? +1 : -1, depth};
}

int sgn_pair(const FnTree& t, int i, int j) {
    if (i == j) throw ConfigError("sgn_pair: labels must differ");
    return position_of(t, i) < position_of(t, j) ? +1 : -1;
}

bool tree_leq(const FnTree& t, const FnTree& u) {
    if (t.n != u.n || t.m != u.m)
        throw ConfigError("tree_leq: trees must share (n, m)");
    // Every relation alpha <_r beta of t must persist in u with the same
    // order at depth r, or reappear (in either order) strictly deeper.
    for (int alpha = 1; alpha <= t.n; ++alpha) {
        for (int beta = alpha + 1; beta <= t.n; ++beta) {
            PairRel rt = pair_depth(t, alpha, beta);
            PairRel ru = pair_depth(u, alpha, beta);
            if (ru.depth < rt.depth) return false;
            if (ru.depth == rt.depth && ru.order != rt.order) return false;
        }
    }
    return true;
}

namespace {

// Label-level monotone injection skipping i: x -> x for x < i, x+1 otherwise.
int shift_up(int i, int x) { return x < i ? x : x + 1; }

// Label-level monotone surjection collapsing i and i+1 onto i:
// x -> x for x <= i, x-1 otherwise.
int shift_down(int i, int x) { return x <= i ? x : x - 1; }

} // namespace

FnTree coface(int i, const FnTree& t) {
    const int n = t.n;
    if (i < 0 || i > n + 1) throw ConfigError("coface: index out of [0, n+1]");
    std::vector<int> sigma(static_cast<size_t>(n) + 1);
    std::vector<int> depths(static_cast<size_t>(std::max(n, 0)));
    if (i == 0) {
        // Prepend a new first label 1, shifting all labels up.
        sigma[0] = 1;
        for (int k = 2; k <= n + 1; ++k)
            sigma[static_cast<size_t>(k - 1)] = t.sigma[static_cast<size_t>(k - 2)] + 1;
        if (n >= 1) depths[0] = t.m - 1;
        for (int k = 2; k <= n; ++k)
            depths[static_cast<size_t>(k - 1)] = t.depths[static_cast<size_t>(k - 2)];
    } else if (i == n + 1) {
        // Append a new last label n+1.
        for (int k = 1; k <= n; ++k)
            sigma[static_cast<size_t>(k - 1)] = t.sigma[static_cast<size_t>(k - 1)];
        sigma[static_cast<size_t>(n)] = n + 1;
        for (int k = 1; k <= n - 1; ++k)
            depths[static_cast<size_t>(k - 1)] = t.depths[static_cast<size_t>(k - 1)];
        if (n >= 1) depths[static_cast<size_t>(n - 1)] = t.m - 1;
    } else {
        // Internal: double the label i, inserting i+1 right after it at
        // depth m-1.  alpha is the position of i in t.
        const int alpha = position_of(t, i);
        for (int k = 1; k <= n + 1; ++k) {
            if (k == alpha) {
                sigma[static_cast<size_t>(k - 1)] = i;
            } else {
                int src = k <= alpha ? k : k - 1; // collapse position alpha
                sigma[static_cast<size_t>(k - 1)] =
                    shift_up(i, t.sigma[static_cast<size_t>(src - 1)]);
            }
        }
        for (int k = 1; k <= n; ++k) {
            if (k == alpha) {
                depths[static_cast<size_t>(k - 1)] = t.m - 1;
            } else {
                int src = k <= alpha ? k : k - 1;
                depths[static_cast<size_t>(k - 1)] = t.depths[static_cast<size_t>(src - 1)];
            }
        }
    }
    return tree_new(n + 1, t.m, std::move(sigma), std::move(depths));
}

FnTree codegeneracy(int j, const FnTree& t) {
    const int n = t.n;
    if (n < 2) throw ConfigError("codegeneracy: needs at least two leaves");
    if (j < 0 || j > n - 1) throw ConfigError("codegeneracy: index out of [0, n-1]");
    // beta is the position of the deleted label j+1.
    const int beta = position_of(t, j + 1);
    std::vector<int> sigma(static_cast<size_t>(n) - 1);
    std::vector<int> depths(static_cast<size_t>(n) - 2);
    // Skip position beta and relabel: labels above j+1 drop by one.
    for (int k = 1; k <= n - 1; ++k) {
        int src = k < beta ? k : k + 1;
        sigma[static_cast<size_t>(k - 1)] =
            shift_down(j + 1, t.sigma[static_cast<size_t>(src - 1)]);
    }
    for (int k = 1; k <= n - 2; ++k) {
        if (k == beta - 1) {
            depths[static_cast<size_t>(k - 1)] =
                std::min(t.depths[static_cast<size_t>(beta - 2)],
                         t.depths[static_cast<size_t>(beta - 1)]);
        } else {
            int src = k < beta ? k : k + 1;
            depths[static_cast<size_t>(k - 1)] = t.depths[static_cast<size_t>(src - 1)];
        }
    }
    return tree_new(n - 1, t.m, std::move(sigma), std::move(depths));
}

Extremal extremal(const FnTree& t) {
    const int n = t.n;
    const int hair = t.m - 1;
    // Longest prefix a with sigma(k) = k for k <= a+1 and depth m-1 for
    // k <= a; zero when empty.
    int a = 0;
    for (int cand = 1; cand <= n - 1; ++cand) {
        bool ok = true;
        for (int k = 1; k <= cand + 1 && ok; ++k)
            if (t.sigma[static_cast<size_t>(k - 1)] != k) ok = false;
        for (int k = 1; k <= cand && ok; ++k)
            if (t.depths[static_cast<size_t>(k - 1)] != hair) ok = false;
        if (ok) a = cand;
    }
    // Smallest suffix start b with sigma(k) = k for k >= b and depth m-1
    // for k >= b; n when empty.
    int b = n;
    for (int cand = n - 1; cand >= 1; --cand) {
        bool ok = true;
        for (int k = cand; k <= n && ok; ++k)
            if (t.sigma[static_cast<size_t>(k - 1)] != k) ok = false;
        for (int k = cand; k <= n - 1 && ok; ++k)
            if (t.depths[static_cast<size_t>(k - 1)] != hair) ok = false;
        if (ok) b = cand;
    }
    Extremal ex;
    ex.a = a;
    ex.b = b;
    for (int k = 1; k <= a; ++k) ex.e.push_back(k);
    for (int k = std::max(b, a + 1); k <= n - 1; ++k) ex.e.push_back(k);
    return ex;
}

std::int64_t tree_count(int m, int n, std::int64_t cap) {
    if (m < 2 || n < 0) throw ConfigError("tree_count: need m >= 2, n >= 0");
    std::int64_t count = 1;
    for (int k = 2; k <= n; ++k) {
        count *= k;
        if (count > cap) throw CapError("tree_count: enumeration cap exceeded");
    }
    for (int k = 1; k <= n - 1; ++k) {
        count *= m;
        if (count > cap) throw CapError("tree_count: enumeration cap exceeded");
    }
    return count;
}

std::vector<FnTree> enumerate_trees(int m, int n, std::int64_t cap) {
    std::int64_t count = tree_count(m, n, cap);
    std::vector<FnTree> out;
    out.reserve(static_cast<size_t>(count));
    std::vector<int> sigma(static_cast<size_t>(n));
    for (int p = 1; p <= n; ++p) sigma[static_cast<size_t>(p - 1)] = p;
    do {
        std::vector<int> depths(static_cast<size_t>(std::max(n - 1, 0)), 0);
        while (true) {
            out.push_back(tree_new(n, m, sigma, depths));
            // Increment the depth word as a big-endian base-m counter so
            // that the overall order is lexicographic.
            int pos = n - 2;
            while (pos >= 0 && depths[static_cast<size_t>(pos)] == m - 1) {
                depths[static_cast<size_t>(pos)] = 0;
                --pos;
            }
            if (pos < 0) break;
            ++depths[static_cast<size_t>(pos)];
        }
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return out;
}

std::int64_t tree_index(const FnTree& t) {
    // Lexicographic rank of sigma among permutations of {1..n}.
    const int n = t.n;
    std::int64_t fact = 1;
    for (int k = 2; k <= n; ++k) fact *= k;
    std::int64_t rank = 0;
    std::vector<char> used(static_cast<size_t>(n) + 1, 0);
    for (int p = 1; p <= n; ++p) {
        fact /= (n - p + 1);
        int smaller = 0;
        for (int v = 1; v < t.sigma[static_cast<size_t>(p - 1)]; ++v)
            if (!used[static_cast<size_t>(v)]) ++smaller;
        rank += smaller * fact;
        used[static_cast<size_t>(t.sigma[static_cast<size_t>(p - 1)])] = 1;
    }
    // Depth word as a big-endian base-m number.
    std::int64_t dval = 0;
    for (int a : t.depths) dval = dval * t.m + a;
    std::int64_t pow = 1;
    for (int k = 1; k <= n - 1; ++k) pow *= t.m;
    return rank * pow + dval;
}

bool tree_lex_less(const FnTree& t, const FnTree& u) {
    if (t.sigma != u.sigma) return t.sigma < u.sigma;
    return t.depths < u.depths;
}

std::string tree_to_text(const FnTree& t) {
    std::ostringstream os;
    for (int p = 1; p <= t.n; ++p) {
        if (p > 1) os << '<' << t.depths[static_cast<size_t>(p - 2)] << ' ';
        os << t.sigma[static_cast<size_t>(p - 1)];
    }
    return os.str();
}

FnTree tree_from_text(const std::string& text, int m) {
    // Whitespace-split tokens are "label<depth" except the last, which is
    // a bare label: "3<2 1<1 2<0 5<1 4".
    std::istringstream is(text);
    std::vector<std::string> toks;
    std::string tok;
    while (is >> tok) toks.push_back(tok);
    if (toks.empty()) throw ConfigError("tree_from_text: empty input");
    std::vector<int> sigma;
    std::vector<int> depths;
    auto parse_int = [](const std::string& s) {
        size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(s, &used);
        } catch (const std::exception&) {
            throw ConfigError("tree_from_text: bad integer token '" + s + "'");
        }
        if (used != s.size())
            throw ConfigError("tree_from_text: trailing characters in '" + s + "'");
        return v;
    };
    for (size_t k = 0; k < toks.size(); ++k) {
        size_t lt = toks[k].find('<');
        bool last = (k + 1 == toks.size());
        if (last != (lt == std::string::npos))
            throw ConfigError("tree_from_text: malformed token '" + toks[k] + "'");
        if (last) {
            sigma.push_back(parse_int(toks[k]));
        } else {
            sigma.push_back(parse_int(toks[k].substr(0, lt)));
            depths.push_back(parse_int(toks[k].substr(lt + 1)));
        }
    }
    const int n = static_cast<int>(sigma.size());
    return tree_new(n, m, std::move(sigma), std::move(depths));
}

std::string tree_to_json(const FnTree& t) {
    nlohmann::json j;
    j["n"] = t.n;
    j["m"] = t.m;
    j["sigma"] = t.sigma;
    j["depths"] = t.depths;
    return j.dump();
}

FnTree tree_from_json(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("tree_from_json: ") + e.what());
    }
    try {
        return tree_new(j.at("n").get<int>(), j.at("m").get<int>(),
                        j.at("sigma").get<std::vector<int>>(),
                        j.at("depths").get<std::vector<int>>());
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("tree_from_json: ") + e.what());
    }
}

} // namespace foxweave
