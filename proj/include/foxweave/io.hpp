#pragma once

// Serialization and on-disk caching.
//
// Matrices travel as MatrixMarket coordinate files (integer, general,
// 1-based, column-major entry order), written deterministically so that
// equal matrices produce byte-identical files.  A bicomplex is exported
// as one file per stored differential plus a manifest.json recording the
// shape, per-bidegree generator counts, file names, a 64-bit FNV-1a
// content hash per file, and the schema version.  The cache is keyed by
// (m, n_max, schema version); a key or hash mismatch is treated as a
// miss, never repaired in place.

#include <cstdint>
#include <string>

#include "foxweave/bicomplex.hpp"
#include "foxweave/exact.hpp"
#include "foxweave/sparse.hpp"

namespace foxweave {

inline constexpr int kSchemaVersion = 1;

// ---- MatrixMarket -----------------------------------------------------

std::string matrix_market_write(const SparseZ& a);

// Parses coordinate/integer/general; throws ConfigError on malformed
// input, out-of-range indices, or duplicate entries.
SparseZ matrix_market_read(const std::string& text);

// ---- hashing ----------------------------------------------------------

// FNV-1a over the raw bytes.
std::uint64_t content_hash(const std::string& bytes);

// ---- SNF export -------------------------------------------------------

// JSON with shape and invariant factors; U/V only when requested.
std::string snf_json(const SnfResult& s, bool with_transforms = false);

// ---- bicomplex export / import / cache --------------------------------

// Writes <dir>/h_n<N>_d<D>.mtx, <dir>/v_n<N>_d<D>.mtx and
// <dir>/manifest.json; creates dir if needed.  Returns the manifest
// text.  Byte-stable across runs for equal input.
std::string export_bicomplex(const Bicomplex& b, const std::string& dir);

// Rebuilds a Bicomplex from an export: generator lists are re-enumerated
// (they are canonical), matrices are read back and verified against the
// manifest hashes and the enumerated dimensions.  Throws ConfigError on
// any mismatch.
Bicomplex import_bicomplex(const std::string& dir);

// Cache lookup under <cache_dir>/m<m>_n<n_max>_v<schema>/: import on a
// clean hit, otherwise build and export.  `hit`, when non-null, reports
// which path was taken.
Bicomplex load_or_build_bicomplex(int m, int n_max, const std::string& cache_dir,
                                  bool* hit = nullptr);

} // namespace foxweave
