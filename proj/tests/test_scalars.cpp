#include "doctest.h"

#include "finosc/cyclotomic.hpp"

using namespace finosc;

TEST_CASE("psi values and character sums") {
    auto F3 = FieldCtx::make(3, 1);
    CHECK(psi(*F3, 1, 0) == CycScalar::one(3, 3));
    CHECK(psi(*F3, 1, 1) == CycScalar::zeta_pow(3, 3, 1));
    CHECK_THROWS_AS(psi(*F3, 0, 1), std::domain_error);

    for (auto [p, e] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{
             {3, 1}, {5, 1}, {3, 2}}) {
        auto F = FieldCtx::make(p, e);
        CycScalar sum = CycScalar::zero(p, F->q());
        for (Fq x = 0; x < F->q(); ++x) sum = sum + psi(*F, 1, x);
        CHECK(sum.is_zero());
    }
}

TEST_CASE("ring operations reduce to canonical form") {
    // (1+z)(1+z^2) mod Phi_3: oracle by hand in Z[x]/(x^3-1) then Phi_3:
    // 1 + z + z^2 + z^3 = 2 + z + z^2 = 2 + (-1) = 1
    auto a = CycScalar::one(3, 3) + CycScalar::zeta_pow(3, 3, 1);
    auto b = CycScalar::one(3, 3) + CycScalar::zeta_pow(3, 3, 2);
    CHECK(a * b == CycScalar::one(3, 3));

    // zeta^p = 1 and 1 + zeta + ... + zeta^{p-1} = 0
    for (std::uint32_t p : {3u, 5u, 7u}) {
        CHECK(CycScalar::zeta_pow(p, p, p) == CycScalar::one(p, p));
        CycScalar s = CycScalar::zero(p, p);
        for (std::uint32_t k = 0; k < p; ++k) s = s + CycScalar::zeta_pow(p, p, k);
        CHECK(s.is_zero());
    }

    // s*s = q and s^{-1} = s/q
    auto s5 = CycScalar::sqrt_q(5, 5);
    CHECK(s5 * s5 == CycScalar::from_int(5, 5, 5));
    CHECK(s5.invert() == s5 * Rational(1, 5));
    CHECK(s5 * s5.invert() == CycScalar::one(5, 5));

    // canonical-form idempotence: rebuilding from coords is stable
    auto x = CycScalar::from_coords(5, 5, {Rational(1), Rational(2), Rational(0), Rational(1)},
                                    {Rational(1, 2)});
    auto y = CycScalar::from_coords(5, 5, std::vector<Rational>(x.base()),
                                    std::vector<Rational>(x.root()));
    CHECK(x == y);
}

TEST_CASE("inversion in the quadratic algebra") {
    CHECK_THROWS_AS(CycScalar::zero(3, 3).invert(), std::domain_error);
    // invertible cyclotomic: (1 + 2 zeta) has norm 3
    auto g = CycScalar::one(3, 3) + CycScalar::zeta_pow(3, 3, 1) * Rational(2);
    CHECK(g * g.invert() == CycScalar::one(3, 3));
    // zero divisor: for q = 9 = 3^2, s - 3 annihilates s + 3
    auto s = CycScalar::sqrt_q(3, 9);
    auto zd = s - CycScalar::from_int(3, 9, 3);
    CHECK(!(zd.is_zero()));
    CHECK((zd * (s + CycScalar::from_int(3, 9, 3))).is_zero());
    CHECK_THROWS_AS(zd.invert(), NonInvertibleError);
    // div_by_power_of_q
    auto v = CycScalar::from_int(3, 3, 9).div_by_power_of_q(2);
    CHECK(v == CycScalar::one(3, 3));
}

TEST_CASE("gauss sums") {
    auto F3 = FieldCtx::make(3, 1);
    // squares mod 3: 0->0, 1->1, 2->1, so the sum is 1 + 2 zeta
    auto g = gauss_sum(*F3, 1);
    CHECK(g == CycScalar::from_coords(3, 3, {Rational(1), Rational(2)}));
    CHECK(gauss_sum(*F3, 0) == CycScalar::from_int(3, 3, 3));

    // square law over several fields
    for (auto [p, e] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{
             {3, 1}, {5, 1}, {7, 1}, {3, 2}}) {
        auto F = FieldCtx::make(p, e);
        auto gs = gauss_sum(*F, 1);
        auto expect = CycScalar::from_int(
            F->p(), F->q(),
            static_cast<std::int64_t>(F->quad_char(F->neg(1))) * F->q());
        CHECK(gs * gs == expect);
    }
}

TEST_CASE("Hasse-Davenport lift for (p, ell) in {(3,2), (5,2)}") {
    for (std::uint32_t p : {3u, 5u}) {
        auto Fp = FieldCtx::make(p, 1);
        auto Fq = FieldCtx::make(p, 2);
        auto lift = gauss_sum(*Fq, 1);
        auto base = gauss_sum(*Fp, 1);
        CHECK(lift == -(base * base)); // (-1)^{ell+1} g^ell at ell = 2
    }
}

TEST_CASE("rendering") {
    auto g = gauss_sum(*FieldCtx::make(3, 1), 1);
    CHECK(g.to_string() == "1 + 2*z");
    auto s = CycScalar::sqrt_q(3, 3);
    CHECK(s.to_string() == "(1)*s");
    CHECK((CycScalar::one(3, 3) + s * Rational(1, 2)).to_string() == "1 + (1/2)*s");
    CHECK(CycScalar::zero(3, 3).to_string() == "0");
}
