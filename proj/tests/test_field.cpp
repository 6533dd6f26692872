#include "doctest.h"

#include "finosc/field.hpp"

using namespace finosc;

namespace {

// independent root-search oracle: does f(x) = x^2 + c1 x + c0 have a root mod p?
bool quadratic_has_root(std::uint32_t p, std::uint32_t c1, std::uint32_t c0) {
    for (std::uint32_t x = 0; x < p; ++x)
        if ((x * x + c1 * x + c0) % p == 0) return true;
    return false;
}

} // namespace

TEST_CASE("make_field basics and rejection cases") {
    auto F3 = FieldCtx::make(3, 1);
    CHECK(F3->q() == 3);
    CHECK(F3->modulus_string() == "x"); // degree-1 convention
    CHECK_THROWS_AS(FieldCtx::make(4, 1), std::invalid_argument);
    CHECK_THROWS_AS(FieldCtx::make(2, 3), std::invalid_argument);
    CHECK_THROWS_AS(FieldCtx::make(9, 1), std::invalid_argument);
    CHECK_THROWS_AS(FieldCtx::make(3, 0), std::invalid_argument);
}

TEST_CASE("F9 modulus is the smallest monic irreducible quadratic") {
    // oracle: smallest packed (c0, c1) with x^2 + c1 x + c0 rootless mod 3
    std::uint32_t expect_c0 = 0, expect_c1 = 0;
    bool found = false;
    for (std::uint32_t code = 0; code < 9 && !found; ++code) {
        std::uint32_t c0 = code % 3, c1 = code / 3;
        if (!quadratic_has_root(3, c1, c0)) {
            expect_c0 = c0;
            expect_c1 = c1;
            found = true;
        }
    }
    REQUIRE(found);
    CHECK(expect_c0 == 1); // x^2 + 1
    CHECK(expect_c1 == 0);
    auto F9 = FieldCtx::make(3, 2);
    CHECK(F9->modulus() == std::vector<std::uint32_t>{1, 0, 1});
}

TEST_CASE("field axioms exhaustively for q in {3,5,7,9,25,27}") {
    for (auto [p, e] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{
             {3, 1}, {5, 1}, {7, 1}, {3, 2}, {5, 2}, {3, 3}}) {
        auto F = FieldCtx::make(p, e);
        const std::uint32_t q = F->q();
        // inverses exhaustively
        for (Fq a = 1; a < q; ++a) CHECK(F->mul(a, F->inv(a)) == 1);
        CHECK_THROWS_AS(F->inv(0), std::domain_error);
        // associativity and distributivity on a deterministic sample
        for (Fq a = 0; a < q; a += 2)
            for (Fq b = 1; b < q; b += 3)
                for (Fq c = 0; c < q; c += 2) {
                    CHECK(F->mul(F->mul(a, b), c) == F->mul(a, F->mul(b, c)));
                    CHECK(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
                }
        // encode/decode round trip
        for (Fq a = 0; a < q; ++a) CHECK(F->encode(F->decode(a)) == a);
    }
}

TEST_CASE("quadratic character") {
    auto F3 = FieldCtx::make(3, 1);
    CHECK(F3->quad_char(1) == 1);
    CHECK(F3->quad_char(2) == -1); // squares mod 3 are {0,1}
    CHECK(F3->quad_char(0) == 0);

    auto F9 = FieldCtx::make(3, 2);
    CHECK(F9->quad_char(F9->generator()) == -1);
    // multiplicativity, exhaustively, for q <= 27
    for (auto [p, e] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{
             {3, 1}, {5, 1}, {7, 1}, {3, 2}, {5, 2}, {3, 3}}) {
        auto F = FieldCtx::make(p, e);
        for (Fq a = 1; a < F->q(); ++a)
            for (Fq b = 1; b < F->q(); ++b)
                CHECK(F->quad_char(F->mul(a, b)) == F->quad_char(a) * F->quad_char(b));
        // eps_q = eps_p o N
        auto Fp = FieldCtx::make(p, 1);
        for (Fq a = 0; a < F->q(); ++a)
            CHECK(F->quad_char(a) == Fp->quad_char(F->norm(a)));
    }
}

TEST_CASE("trace to the prime field") {
    auto F3 = FieldCtx::make(3, 1);
    CHECK(F3->trace(2) == 2); // ell = 1: identity
    auto F9 = FieldCtx::make(3, 2);
    CHECK(F9->trace(1) == 2); // 1 + 1^3
    for (Fq a = 0; a < 9; ++a) {
        CHECK(F9->trace(a) < 3);
        for (Fq b = 0; b < 9; ++b)
            CHECK(F9->trace(F9->add(a, b)) == (F9->trace(a) + F9->trace(b)) % 3);
    }
}

TEST_CASE("halving") {
    auto F3 = FieldCtx::make(3, 1);
    CHECK(F3->half(1) == 2); // 2*2 = 1 mod 3
    auto F5 = FieldCtx::make(5, 1);
    CHECK(F5->half(1) == 3); // 2*3 = 1 mod 5
    CHECK(F5->half(0) == 0);
    for (Fq a = 0; a < 5; ++a) CHECK(F5->add(F5->half(a), F5->half(a)) == a);
}
