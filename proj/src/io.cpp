#include "foxweave/io.hpp"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "foxweave/chains.hpp"
#include "foxweave/errors.hpp"

namespace foxweave {

namespace fs = std::filesystem;
using nlohmann::json;

// ---- MatrixMarket -----------------------------------------------------

std::string matrix_market_write(const SparseZ& a) {
    std::ostringstream out;
    out << "%%MatrixMarket matrix coordinate integer general\n";
    out << a.rows << ' ' << a.cols << ' ' << sparse_nnz(a) << '\n';
    for (std::int64_t c = 0; c < a.cols; ++c)
        for (std::int64_t k = a.colptr[static_cast<size_t>(c)];
             k < a.colptr[static_cast<size_t>(c + 1)]; ++k)
            out << a.rowidx[static_cast<size_t>(k)] + 1 << ' ' << c + 1 << ' '
                << a.val[static_cast<size_t>(k)] << '\n';
    return out.str();
}

SparseZ matrix_market_read(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line))
        throw ConfigError("matrix_market_read: empty input");
    {
        std::istringstream h(line);
        std::string banner, object, format, field, symmetry;
        h >> banner >> object >> format >> field >> symmetry;
        if (banner != "%%MatrixMarket" || object != "matrix" ||
            format != "coordinate" || field != "integer" ||
            symmetry != "general")
            throw ConfigError("matrix_market_read: unsupported header: " + line);
    }
    while (std::getline(in, line))
        if (!line.empty() && line[0] != '%') break;
    std::int64_t rows = -1, cols = -1, nnz = -1;
    {
        std::istringstream s(line);
        if (!(s >> rows >> cols >> nnz) || rows < 0 || cols < 0 || nnz < 0)
            throw ConfigError("matrix_market_read: bad size line: " + line);
    }
    std::vector<std::vector<std::pair<std::int32_t, std::int32_t>>> triplets(
        static_cast<size_t>(cols));
    for (std::int64_t e = 0; e < nnz; ++e) {
        std::int64_t r = 0, c = 0;
        long long v = 0;
        if (!(in >> r >> c >> v))
            throw ConfigError("matrix_market_read: truncated entry list");
        if (r < 1 || r > rows || c < 1 || c > cols)
            throw ConfigError("matrix_market_read: entry index out of range");
        if (v == 0 || v < INT32_MIN || v > INT32_MAX)
            throw ConfigError("matrix_market_read: entry value out of range");
        triplets[static_cast<size_t>(c - 1)].emplace_back(
            static_cast<std::int32_t>(r - 1), static_cast<std::int32_t>(v));
    }
    // Reject duplicates: sparse_from_columns would silently sum them.
    for (auto& col : triplets) {
        auto sorted = col;
        std::sort(sorted.begin(), sorted.end());
        for (size_t k = 1; k < sorted.size(); ++k)
            if (sorted[k].first == sorted[k - 1].first)
                throw ConfigError("matrix_market_read: duplicate entry");
    }
    return sparse_from_columns(rows, std::move(triplets));
}

// ---- hashing ----------------------------------------------------------

std::uint64_t content_hash(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 1099511628211ULL;
    }
    return h;
}

// ---- SNF export -------------------------------------------------------

namespace {

json dense_rows_json(const std::vector<std::vector<mpz_class>>& m) {
    json rows = json::array();
    for (const auto& r : m) {
        json row = json::array();
        for (const auto& v : r) row.push_back(v.get_str());
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

std::string snf_json(const SnfResult& s, bool with_transforms) {
    json j;
    j["invariant_factors"] = json::array();
    for (const auto& f : s.invariant_factors)
        j["invariant_factors"].push_back(f.get_str());
    if (with_transforms) {
        j["U"] = dense_rows_json(s.U);
        j["S"] = dense_rows_json(s.S);
        j["V"] = dense_rows_json(s.V);
    }
    return j.dump(2) + "\n";
}

// ---- bicomplex export / import / cache --------------------------------

namespace {

std::string mm_name(char kind, int n, int d) {
    return std::string(1, kind) + "_n" + std::to_string(n) + "_d" +
           std::to_string(d) + ".mtx";
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) throw ConfigError("io: cannot write " + path.string());
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("io: cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

std::string export_bicomplex(const Bicomplex& b, const std::string& dir) {
    fs::create_directories(dir);
    json manifest;
    manifest["schema_version"] = kSchemaVersion;
    manifest["m"] = b.m;
    manifest["n_max"] = b.n_max;
    manifest["truncated"] = b.truncated;
    manifest["hv_commutes"] = b.hv_commutes;
    manifest["zeroed_image_chains"] = b.zeroed_image_chains;
    json bidegrees = json::array();
    for (int n = 0; n <= b.n_max; ++n)
        for (int d = 0; d <= b.dmax(n); ++d) {
            json cell;
            cell["n"] = n;
            cell["d"] = d;
            cell["generators"] = b.dim(n, d);
            json files = json::array();
            auto emit = [&](char kind, const SparseZ& mat) {
                const std::string name = mm_name(kind, n, d);
                const std::string text = matrix_market_write(mat);
                write_file(fs::path(dir) / name, text);
                json f;
                f["name"] = name;
                f["hash"] = content_hash(text);
                files.push_back(std::move(f));
            };
            if (d >= 1) emit('h', b.H(n, d));
            if (n < b.n_max) emit('v', b.V(n, d));
            cell["files"] = std::move(files);
            bidegrees.push_back(std::move(cell));
        }
    manifest["bidegrees"] = std::move(bidegrees);
    const std::string text = manifest.dump(2) + "\n";
    write_file(fs::path(dir) / "manifest.json", text);
    return text;
}

Bicomplex import_bicomplex(const std::string& dir) {
    json manifest;
    try {
        manifest = json::parse(read_file(fs::path(dir) / "manifest.json"));
    } catch (const json::exception& e) {
        throw ConfigError(std::string("import_bicomplex: bad manifest: ") +
                          e.what());
    }
    if (manifest.value("schema_version", -1) != kSchemaVersion)
        throw ConfigError("import_bicomplex: schema version mismatch");
    Bicomplex b;
    b.m = manifest.at("m").get<int>();
    b.n_max = manifest.at("n_max").get<int>();
    b.truncated = manifest.at("truncated").get<bool>();
    b.hv_commutes = manifest.at("hv_commutes").get<bool>();
    b.zeroed_image_chains = manifest.at("zeroed_image_chains").get<std::int64_t>();
    if (b.m < 2 || b.n_max < 0)
        throw ConfigError("import_bicomplex: bad shape in manifest");
    b.columns.resize(static_cast<size_t>(b.n_max) + 1);
    for (int n = 0; n <= b.n_max; ++n) {
        auto& col = b.columns[static_cast<size_t>(n)];
        for (int d = 0; d <= b.dmax(n); ++d) {
            col.lists.push_back(enumerate_chain_list(b.m, n, d));
            col.H.emplace_back();
            col.V.emplace_back();
        }
    }
    size_t seen = 0;
    for (const auto& cell : manifest.at("bidegrees")) {
        const int n = cell.at("n").get<int>();
        const int d = cell.at("d").get<int>();
        if (n < 0 || n > b.n_max || d < 0 || d > b.dmax(n))
            throw ConfigError("import_bicomplex: bidegree out of range");
        ++seen;
        if (cell.at("generators").get<std::int64_t>() != b.dim(n, d))
            throw ConfigError("import_bicomplex: generator count mismatch at (" +
                              std::to_string(d) + ", " + std::to_string(n) + ")");
        for (const auto& f : cell.at("files")) {
            const std::string name = f.at("name").get<std::string>();
            const std::string text = read_file(fs::path(dir) / name);
            if (content_hash(text) != f.at("hash").get<std::uint64_t>())
                throw ConfigError("import_bicomplex: content hash mismatch for " +
                                  name);
            SparseZ mat = matrix_market_read(text);
            auto& col = b.columns[static_cast<size_t>(n)];
            if (name == mm_name('h', n, d)) {
                if (mat.cols != b.dim(n, d) || mat.rows != b.dim(n, d - 1))
                    throw ConfigError("import_bicomplex: shape mismatch for " +
                                      name);
                col.H[static_cast<size_t>(d)] = std::move(mat);
            } else if (name == mm_name('v', n, d)) {
                if (mat.cols != b.dim(n, d) || mat.rows != b.dim(n + 1, d))
                    throw ConfigError("import_bicomplex: shape mismatch for " +
                                      name);
                col.V[static_cast<size_t>(d)] = std::move(mat);
            } else {
                throw ConfigError("import_bicomplex: unexpected file name " +
                                  name);
            }
        }
    }
    // Every bidegree must be listed; missing matrices would otherwise
    // surface as empty SparseZ values.
    size_t expect = 0;
    for (int n = 0; n <= b.n_max; ++n) expect += static_cast<size_t>(b.dmax(n)) + 1;
    if (seen != expect)
        throw ConfigError("import_bicomplex: manifest missing bidegrees");
    for (int n = 0; n <= b.n_max; ++n)
        for (int d = 0; d <= b.dmax(n); ++d) {
            if (d >= 1 && (b.H(n, d).rows != b.dim(n, d - 1) ||
                           b.H(n, d).cols != b.dim(n, d)))
                throw ConfigError("import_bicomplex: missing h matrix");
            if (d == 0) {
                auto& h0 = b.columns[static_cast<size_t>(n)].H[0];
                h0 = sparse_zero(0, b.dim(n, 0));
            }
            if (n < b.n_max && (b.V(n, d).rows != b.dim(n + 1, d) ||
                                b.V(n, d).cols != b.dim(n, d)))
                throw ConfigError("import_bicomplex: missing v matrix");
        }
    return b;
}

Bicomplex load_or_build_bicomplex(int m, int n_max, const std::string& cache_dir,
                                  bool* hit) {
    const fs::path dir = fs::path(cache_dir) /
                         ("m" + std::to_string(m) + "_n" + std::to_string(n_max) +
                          "_v" + std::to_string(kSchemaVersion));
    if (fs::exists(dir / "manifest.json")) {
        try {
            Bicomplex b = import_bicomplex(dir.string());
            if (b.m == m && b.n_max == n_max) {
                if (hit) *hit = true;
                return b;
            }
        } catch (const ConfigError&) {
            // Stale or corrupt entry: fall through to a cold build.
        }
    }
    if (hit) *hit = false;
    Bicomplex b = build_bicomplex(m, n_max);
    export_bicomplex(b, dir.string());
    return b;
}

} // namespace foxweave
