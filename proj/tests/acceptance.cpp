// Acceptance suite: one line per criterion, all checks exact, with the
// stated wall-clock budgets enforced.  Exit code = number of failed
// criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "finosc/suites.hpp"

using namespace finosc;

namespace {

struct Criterion {
    int id;
    const char* label;
    double budget_s; // 0 = no stated budget
    std::function<SuiteReport(const SuiteOptions&)> run;
};

} // namespace

int main() {
    SuiteOptions opts; // full default grids, sequential (deterministic either way)
    std::vector<Criterion> criteria = {
        {1, "star/composition homomorphism (q in {3,5}, dim 2 and 4, 100 random pairs)", 10.0,
         criterion_star_homomorphism},
        {2, "reflection law and geometric action (q=3, N=1, n in {1,2,3}, exhaustive)", 30.0,
         criterion_reflections},
        {3, "commuting idempotents, idempotence, model trace (q=3, N=1, n <= 5, k <= 2)", 0.0,
         criterion_idempotents},
        {4, "SL2 generator suite: actions, PoissonDists matrices, closures (q in {3,5})", 0.0,
         criterion_sl2},
        {5, "appendix identity, cleared form + constants (q in {3,5,7,9}, n in {1,2,3})", 120.0,
         criterion_appendix},
        {6, "gauss sums: square law, Hasse-Davenport, K(c) closed form", 0.0, criterion_gauss},
        {7, "orbit three-way agreement (descriptors = closed form = Burnside)", 300.0,
         criterion_orbit_threeway},
        {8, "product identity and tranche identity as exact Z[q] polynomials", 30.0,
         criterion_poly_identities},
        {9, "dimension matching: End dims and ell-shifted Hom dims on the stable grid", 0.0,
         criterion_dimension_matching},
        {10, "group orders: BFS closures equal the order polynomials", 0.0,
         criterion_group_orders},
    };

    int failed = 0;
    for (auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        SuiteReport rep = c.run(opts);
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool pass = rep.pass();
        bool in_budget = c.budget_s == 0.0 || secs < c.budget_s;
        if (!in_budget) pass = false;
        std::printf("[%s] criterion %2d: %s (%.2f s, %zu checks)\n", pass ? "PASS" : "FAIL",
                    c.id, c.label, secs, rep.results.size());
        if (!in_budget)
            std::printf("        over time budget: %.2f s >= %.2f s\n", secs, c.budget_s);
        for (const auto& r : rep.results)
            if (!r.pass)
                std::printf("        FAIL %s [%s] %s%s%s\n", r.name.c_str(), r.params.c_str(),
                            r.lhs.c_str(), r.rhs.empty() ? "" : " expected ", r.rhs.c_str());
        if (!pass) ++failed;
    }
    std::printf("%d/10 criteria passed\n", 10 - failed);
    return failed;
}
