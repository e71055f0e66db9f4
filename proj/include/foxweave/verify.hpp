#pragma once

// Named verification suites with structured pass/fail reports.  These run
// the library's documented invariants end to end; a failing check is
// reported, never silenced — two checks in this collection fail by
// design against the source formulas (see the suite details): the
// literal pinned value of the twisted worked example, and the mixed
// cosimplicial identities at extremal cofaces.

#include <cstdint>
#include <string>
#include <vector>

namespace foxweave {

struct VerifyOptions {
    int m = 2;
    int n = 3;                  // n or n_max, per suite
    int r_max = 3;              // pages suite
    std::uint32_t seed = 42;    // geometry suite
    int samples = 200;          // geometry suite, per (m, n)
};

struct VerifyCheck {
    std::string name;
    bool passed = false;
    std::string detail; // counts, max deviations, first counterexample
};

struct VerifyReport {
    std::string suite;
    std::vector<VerifyCheck> checks;

    bool passed() const;
    std::string to_text() const; // one "PASS/FAIL name -- detail" line each
    std::string to_json() const;
};

// Suites: cosimplicial, poset, twisted, bicomplex, pages, geometry.
// Throws ConfigError on an unknown name or invalid options.
VerifyReport run_suite(const std::string& name, const VerifyOptions& opt);

std::vector<std::string> suite_names();

} // namespace foxweave
