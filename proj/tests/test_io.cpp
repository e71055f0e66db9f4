#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "foxweave/errors.hpp"
#include "foxweave/io.hpp"
#include "foxweave/spectral.hpp"
#include "support.hpp"

using namespace foxweave;
namespace fs = std::filesystem;

namespace {

SparseZ random_sparse(std::int64_t rows, std::int64_t cols, std::mt19937& rng) {
    std::vector<std::vector<std::pair<std::int32_t, std::int32_t>>> cols_v(
        static_cast<size_t>(cols));
    std::uniform_int_distribution<int> coin(0, 3), val(-3, 3);
    for (auto& col : cols_v)
        for (std::int32_t r = 0; r < rows; ++r)
            if (coin(rng) == 0) {
                int v = val(rng);
                if (v != 0) col.emplace_back(r, v);
            }
    return sparse_from_columns(rows, std::move(cols_v));
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("foxweave_io_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

} // namespace

TEST_CASE("MatrixMarket round trip and determinism") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        SparseZ a = random_sparse(1 + trial % 7, 1 + (trial / 2) % 9, rng);
        const std::string text = matrix_market_write(a);
        CHECK(matrix_market_read(text) == a);
        CHECK(matrix_market_write(a) == text); // byte-stable
    }
    // Zero-size shapes survive.
    SparseZ z = sparse_zero(0, 5);
    CHECK(matrix_market_read(matrix_market_write(z)) == z);
    SparseZ z2 = sparse_zero(4, 0);
    CHECK(matrix_market_read(matrix_market_write(z2)) == z2);
}

TEST_CASE("MatrixMarket rejects malformed input") {
    CHECK_THROWS_AS(matrix_market_read(""), ConfigError);
    CHECK_THROWS_AS(matrix_market_read("%%MatrixMarket matrix array real general\n1 1\n1\n"),
                    ConfigError);
    const std::string hdr = "%%MatrixMarket matrix coordinate integer general\n";
    CHECK_THROWS_AS(matrix_market_read(hdr + "2 2 1\n3 1 5\n"), ConfigError);
    CHECK_THROWS_AS(matrix_market_read(hdr + "2 2 2\n1 1 5\n"), ConfigError);
    CHECK_THROWS_AS(matrix_market_read(hdr + "2 2 2\n1 1 5\n1 1 2\n"),
                    ConfigError);
    CHECK_THROWS_AS(matrix_market_read(hdr + "2 2 1\n1 1 0\n"), ConfigError);
    // Comment lines before the size line are fine.
    SparseZ ok = matrix_market_read(hdr + "% note\n2 2 1\n2 1 -4\n");
    CHECK(ok.rows == 2);
    CHECK(sparse_nnz(ok) == 1);
}

TEST_CASE("content hash matches the FNV-1a test vectors") {
    CHECK(content_hash("") == 14695981039346656037ULL);
    CHECK(content_hash("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(content_hash("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("SNF export lists invariant factors") {
    ExactMatrix m = exact_zero(Ring::Z, 0, 2, 2);
    exact_set(m, 0, 0, 2);
    exact_set(m, 1, 1, 6);
    SnfResult s = smith_normal_form(m);
    std::string j = snf_json(s);
    CHECK(j.find("\"2\"") != std::string::npos);
    CHECK(j.find("\"6\"") != std::string::npos);
    CHECK(j.find("\"U\"") == std::string::npos);
    std::string jt = snf_json(s, true);
    CHECK(jt.find("\"U\"") != std::string::npos);
    CHECK(jt.find("\"V\"") != std::string::npos);
}

TEST_CASE("bicomplex export and import round trip") {
    TempDir tmp;
    for (auto [m, n_max] : {std::pair{2, 2}, std::pair{3, 2}}) {
        Bicomplex b = build_bicomplex(m, n_max);
        const fs::path dir = tmp.path / ("b" + std::to_string(m));
        const std::string manifest = export_bicomplex(b, dir.string());
        // Determinism: a second export is byte-identical.
        CHECK(export_bicomplex(b, dir.string()) == manifest);
        Bicomplex back = import_bicomplex(dir.string());
        CHECK(back.m == b.m);
        CHECK(back.n_max == b.n_max);
        CHECK(back.truncated == b.truncated);
        CHECK(back.hv_commutes == b.hv_commutes);
        for (int n = 0; n <= b.n_max; ++n)
            for (int d = 0; d <= b.dmax(n); ++d) {
                CHECK(back.dim(n, d) == b.dim(n, d));
                if (d >= 1) CHECK(back.H(n, d) == b.H(n, d));
                if (n < b.n_max) CHECK(back.V(n, d) == b.V(n, d));
            }
    }
}

TEST_CASE("import rejects tampered or mismatched exports") {
    TempDir tmp;
    Bicomplex b = build_bicomplex(2, 2);
    const fs::path dir = tmp.path / "t";
    export_bicomplex(b, dir.string());
    // Tamper with a matrix file: hash check must fire.
    const fs::path victim = dir / "v_n1_d0.mtx";
    REQUIRE(fs::exists(victim));
    {
        std::ofstream out(victim, std::ios::app);
        out << "% tampered\n";
    }
    CHECK_THROWS_AS(import_bicomplex(dir.string()), ConfigError);
    // Restore by re-export, then break the manifest schema version.
    export_bicomplex(b, dir.string());
    const fs::path mf = dir / "manifest.json";
    std::string text;
    {
        std::ostringstream buf;
        buf << std::ifstream(mf).rdbuf();
        text = buf.str();
    }
    size_t pos = text.find("\"schema_version\"");
    REQUIRE(pos != std::string::npos);
    text.replace(text.find(':', pos) + 1, text.find(',', pos) - text.find(':', pos) - 1,
                 " 999");
    {
        std::ofstream out(mf, std::ios::binary);
        out << text;
    }
    CHECK_THROWS_AS(import_bicomplex(dir.string()), ConfigError);
    CHECK_THROWS_AS(import_bicomplex((tmp.path / "missing").string()),
                    ConfigError);
}

TEST_CASE("cache: cold build then warm hit with identical page tables") {
    TempDir tmp;
    bool hit = true;
    Bicomplex cold = load_or_build_bicomplex(2, 3, tmp.path.string(), &hit);
    CHECK(!hit);
    Bicomplex warm = load_or_build_bicomplex(2, 3, tmp.path.string(), &hit);
    CHECK(hit);
    auto pc = pages(cold, Ring::Q, 0, 3);
    auto pw = pages(warm, Ring::Q, 0, 3);
    CHECK(page_report(pc, ReportFormat::csv) == page_report(pw, ReportFormat::csv));
    CHECK(page_report(pc, ReportFormat::json, true) ==
          page_report(pw, ReportFormat::json, true));
    // A different key is a distinct entry, not a collision.
    Bicomplex other = load_or_build_bicomplex(3, 2, tmp.path.string(), &hit);
    CHECK(!hit);
    CHECK(other.m == 3);
    // Corrupt the cached entry: next load falls back to a cold build.
    const fs::path entry = tmp.path / ("m2_n3_v" + std::to_string(kSchemaVersion));
    {
        std::ofstream out(entry / "h_n2_d1.mtx", std::ios::app);
        out << "% tampered\n";
    }
    Bicomplex again = load_or_build_bicomplex(2, 3, tmp.path.string(), &hit);
    CHECK(!hit);
    for (int n = 0; n <= 3; ++n)
        for (int d = 0; d <= again.dmax(n); ++d)
            CHECK(again.dim(n, d) == cold.dim(n, d));
}
