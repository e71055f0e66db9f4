// foxweave: exact Fox-Neuwirth bicomplex and spectral-sequence toolkit.
//
// Subcommands: enumerate, pages, verify, export.  Exit codes: 0 success,
// 1 verification failure, 2 configuration error, 3 resource cap.
// Errors are emitted as one-line JSON on stderr.  Every flag can also be
// set through the environment with the FOXWEAVE_ prefix.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "foxweave/bicomplex.hpp"
#include "foxweave/chains.hpp"
#include "foxweave/errors.hpp"
#include "foxweave/fn_tree.hpp"
#include "foxweave/io.hpp"
#include "foxweave/spectral.hpp"
#include "foxweave/verify.hpp"

namespace {

using namespace foxweave;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitCap = 3;

struct RunConfig {
    int m = 2;
    int n = 2; // enumerate: leaf count; otherwise n_max
    std::string coeff = "q";
    int r_max = 3;
    std::string format = "csv";
    std::string cache_dir;
    std::uint32_t seed = 42;
    std::int64_t cap = 50'000'000;
    std::string collapse_dir = "em";
};

struct RingSpec {
    Ring ring = Ring::Q;
    long p = 0;
};

RingSpec parse_coeff(const std::string& s) {
    if (s == "q") return {Ring::Q, 0};
    if (s == "z") return {Ring::Z, 0};
    if (s.rfind("fp:", 0) == 0) {
        long p = 0;
        try {
            p = std::stol(s.substr(3));
        } catch (const std::exception&) {
            throw ConfigError("bad prime in coefficient spec '" + s + "'");
        }
        if (p < 2) throw ConfigError("modulus must be a prime >= 2");
        for (long d = 2; d * d <= p; ++d)
            if (p % d == 0)
                throw ConfigError("modulus " + std::to_string(p) +
                                  " is not prime");
        return {Ring::Fp, p};
    }
    throw ConfigError("coefficient spec must be q, z, or fp:<prime>");
}

int error_out(int code, const std::string& kind, const std::string& what) {
    json j{{"error", kind}, {"message", what}};
    std::cerr << j.dump() << '\n';
    return code;
}

Bicomplex obtain_bicomplex(const RunConfig& cfg) {
    if (!cfg.cache_dir.empty())
        return load_or_build_bicomplex(cfg.m, cfg.n, cfg.cache_dir);
    return build_bicomplex(cfg.m, cfg.n, cfg.cap);
}

int cmd_enumerate(const RunConfig& cfg, bool list) {
    const auto trees = enumerate_trees(cfg.m, cfg.n, cfg.cap);
    std::cout << trees.size() << (trees.size() == 1 ? " tree\n" : " trees\n");
    if (list)
        for (const FnTree& t : trees) std::cout << tree_to_text(t) << '\n';
    return kExitOk;
}

int cmd_pages(const RunConfig& cfg) {
    const RingSpec rs = parse_coeff(cfg.coeff);
    const Bicomplex b = obtain_bicomplex(cfg);
    if (rs.ring == Ring::Z) {
        // Integral scope: column homology tables only.
        json cols = json::array();
        for (int n = 0; n <= b.n_max; ++n) {
            json jc{{"n", n}, {"degrees", json::array()}};
            int d = 0;
            for (const HomologySummary& h : integral_column_homology(b, n)) {
                json jd{{"d", d++}, {"betti", h.betti}};
                jd["torsion"] = json::array();
                for (const auto& f : h.torsion)
                    jd["torsion"].push_back(f.get_str());
                jc["degrees"].push_back(std::move(jd));
            }
            cols.push_back(std::move(jc));
        }
        if (cfg.format == "json") {
            std::cout << cols.dump(2) << '\n';
        } else {
            std::cout << "n,d,betti,torsion\n";
            for (const auto& jc : cols)
                for (const auto& jd : jc["degrees"]) {
                    std::string tor;
                    for (const auto& f : jd["torsion"])
                        tor += (tor.empty() ? "" : " ") +
                               f.get<std::string>();
                    std::cout << jc["n"] << ',' << jd["d"] << ','
                              << jd["betti"] << ',' << tor << '\n';
                }
        }
        return kExitOk;
    }
    const int r_max = b.hv_commutes ? cfg.r_max : 1;
    const auto pgs = pages(b, rs.ring, rs.p, r_max);
    const ReportFormat fmt =
        cfg.format == "json" ? ReportFormat::json : ReportFormat::csv;
    std::cout << page_report(pgs, fmt, fmt == ReportFormat::json);
    if (r_max != cfg.r_max)
        std::cerr << "note: H V != V H at m = " << b.m
                  << "; only the dimensions of E_1 are available\n";
    return kExitOk;
}

int cmd_verify(const RunConfig& cfg, const std::string& suite) {
    VerifyOptions opt;
    opt.m = cfg.m;
    opt.n = cfg.n;
    opt.r_max = cfg.r_max;
    opt.seed = cfg.seed;
    const VerifyReport rep = run_suite(suite, opt);
    std::cout << (cfg.format == "json" ? rep.to_json() : rep.to_text());
    return rep.passed() ? kExitOk : kExitVerifyFail;
}

int cmd_export(const RunConfig& cfg, const std::string& what,
               const std::string& path) {
    namespace fs = std::filesystem;
    if (what == "bicomplex") {
        const Bicomplex b = obtain_bicomplex(cfg);
        export_bicomplex(b, path);
        std::cout << "exported bicomplex (m = " << cfg.m
                  << ", n_max = " << cfg.n << ") to " << path << '\n';
        return kExitOk;
    }
    if (what == "pages") {
        const RingSpec rs = parse_coeff(cfg.coeff);
        if (rs.ring == Ring::Z)
            throw ConfigError("page export needs field coefficients");
        const Bicomplex b = obtain_bicomplex(cfg);
        const int r_max = b.hv_commutes ? cfg.r_max : 1;
        const auto pgs = pages(b, rs.ring, rs.p, r_max);
        fs::create_directories(path);
        const std::string csv = page_report(pgs, ReportFormat::csv);
        const std::string js = page_report(pgs, ReportFormat::json, true);
        std::ofstream(fs::path(path) / "pages.csv", std::ios::binary) << csv;
        std::ofstream(fs::path(path) / "pages.json", std::ios::binary) << js;
        json manifest{{"schema_version", kSchemaVersion},
                      {"m", cfg.m},
                      {"n_max", cfg.n},
                      {"coeff", cfg.coeff},
                      {"r_max", r_max},
                      {"files", json::array({
                           {{"name", "pages.csv"}, {"hash", content_hash(csv)}},
                           {{"name", "pages.json"}, {"hash", content_hash(js)}},
                       })}};
        std::ofstream(fs::path(path) / "manifest.json", std::ios::binary)
            << manifest.dump(2) << '\n';
        std::cout << "exported page tables to " << path << '\n';
        return kExitOk;
    }
    throw ConfigError("export target must be bicomplex or pages");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Fox-Neuwirth bicomplex and spectral-sequence toolkit"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&](CLI::App* sub, bool nmax_name) {
        sub->add_option("--m", cfg.m, "ambient dimension (>= 2)")
            ->envname("FOXWEAVE_M");
        sub->add_option(nmax_name ? "--n-max" : "--n", cfg.n,
                        nmax_name ? "largest column" : "leaf count")
            ->envname(nmax_name ? "FOXWEAVE_N_MAX" : "FOXWEAVE_N");
        sub->add_option("--coeff", cfg.coeff, "q | z | fp:<prime>")
            ->envname("FOXWEAVE_COEFF");
        sub->add_option("--r-max", cfg.r_max, "last page to compute")
            ->envname("FOXWEAVE_R_MAX");
        sub->add_option("--format", cfg.format, "json | csv | mm")
            ->envname("FOXWEAVE_FORMAT");
        sub->add_option("--cache-dir", cfg.cache_dir, "bicomplex cache root")
            ->envname("FOXWEAVE_CACHE_DIR");
        sub->add_option("--seed", cfg.seed, "sampling seed")
            ->envname("FOXWEAVE_SEED");
        sub->add_option("--cap", cfg.cap, "enumeration cap")
            ->envname("FOXWEAVE_CAP");
        sub->add_option("--collapse-dir", cfg.collapse_dir, "em | e1")
            ->envname("FOXWEAVE_COLLAPSE_DIR");
    };

    bool list_trees = false;
    CLI::App* enumerate = app.add_subcommand("enumerate", "count trees");
    add_common(enumerate, false);
    enumerate->add_flag("--list", list_trees, "print the canonical list");

    CLI::App* pages_cmd = app.add_subcommand("pages", "spectral page tables");
    add_common(pages_cmd, true);

    std::string suite;
    CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("suite", suite, "cosimplicial | poset | twisted | "
                                       "bicomplex | pages | geometry")
        ->required();
    add_common(verify, true);

    std::string what, path;
    CLI::App* export_cmd = app.add_subcommand("export", "write artifacts");
    export_cmd->add_option("what", what, "bicomplex | pages")->required();
    export_cmd->add_option("path", path, "output directory")->required();
    add_common(export_cmd, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        std::ostringstream silent;
        app.exit(e, silent, silent);
        return error_out(kExitConfig, "config", e.what());
    }

    try {
        if (cfg.m < 2) throw ConfigError("m must be >= 2");
        if (cfg.n < 0) throw ConfigError("n must be >= 0");
        if (cfg.r_max < 1) throw ConfigError("r-max must be >= 1");
        if (cfg.cap < 1) throw ConfigError("cap must be positive");
        if (cfg.collapse_dir != "em" && cfg.collapse_dir != "e1")
            throw ConfigError("collapse-dir must be em or e1");
        if (cfg.format != "json" && cfg.format != "csv" && cfg.format != "mm")
            throw ConfigError("format must be json, csv, or mm");
        if (enumerate->parsed()) return cmd_enumerate(cfg, list_trees);
        if (pages_cmd->parsed()) return cmd_pages(cfg);
        if (verify->parsed()) return cmd_verify(cfg, suite);
        if (export_cmd->parsed()) return cmd_export(cfg, what, path);
        return error_out(kExitConfig, "config", "no subcommand");
    } catch (const CapError& e) {
        return error_out(kExitCap, "cap", e.what());
    } catch (const ConfigError& e) {
        return error_out(kExitConfig, "config", e.what());
    } catch (const Error& e) {
        return error_out(kExitVerifyFail, "invariant", e.what());
    }
}
