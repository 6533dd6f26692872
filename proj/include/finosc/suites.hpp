#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace finosc {

struct CheckResult {
    std::string name;
    std::string params;
    bool pass = false;
    std::string lhs, rhs; // observed / expected, when meaningful
    double ms = 0.0;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> results;
    double total_ms = 0.0;
    bool pass() const {
        for (const auto& r : results)
            if (!r.pass) return false;
        return true;
    }
    std::size_t failures() const {
        std::size_t n = 0;
        for (const auto& r : results) n += !r.pass;
        return n;
    }
};

struct SuiteOptions {
    std::vector<std::uint32_t> qs; // restrict q grids; empty = suite default
    int jobs = 1;                  // worker count for parameter points
};

// Acceptance-criterion runners (exact checks; grids pinned in code).
SuiteReport criterion_star_homomorphism(const SuiteOptions& o);   // 1
SuiteReport criterion_reflections(const SuiteOptions& o);         // 2
SuiteReport criterion_idempotents(const SuiteOptions& o);         // 3
SuiteReport criterion_sl2(const SuiteOptions& o);                 // 4
SuiteReport criterion_appendix(const SuiteOptions& o);            // 5
SuiteReport criterion_gauss(const SuiteOptions& o);               // 6
SuiteReport criterion_orbit_threeway(const SuiteOptions& o);      // 7
SuiteReport criterion_poly_identities(const SuiteOptions& o);     // 8
SuiteReport criterion_dimension_matching(const SuiteOptions& o);  // 9
SuiteReport criterion_group_orders(const SuiteOptions& o);        // 10

// Named CLI suites (star, generators, appendix, orbits, identities, all).
std::vector<std::string> suite_names();
std::vector<SuiteReport> run_suite(const std::string& name, const SuiteOptions& o);

} // namespace finosc
