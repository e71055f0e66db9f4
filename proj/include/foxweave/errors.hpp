#pragma once

#include <stdexcept>
#include <string>

namespace foxweave {

// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid user-supplied input: malformed permutation, depth out of range,
// bad ring spec, index out of bounds, and similar.
struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error(what) {}
};

// A configured resource cap (enumeration size, chain count) was exceeded.
struct CapError : Error {
    explicit CapError(const std::string& what) : Error(what) {}
};

// An internal mathematical invariant failed at runtime.  This always
// indicates a bug (or numerically degenerate input in the geometry layer),
// never a recoverable user mistake.
struct InvariantViolation : Error {
    explicit InvariantViolation(const std::string& what) : Error(what) {}
};

} // namespace foxweave
