#include "doctest.h"

#include <random>

#include "finosc/forms.hpp"

using namespace finosc;

namespace {

std::vector<Fq> matmul(const FieldCtx& c, const std::vector<Fq>& A, const std::vector<Fq>& B,
                       std::uint32_t n) {
    std::vector<Fq> out(n * n, 0);
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t k = 0; k < n; ++k)
            for (std::uint32_t j = 0; j < n; ++j)
                out[i * n + j] = c.add(out[i * n + j], c.mul(A[i * n + k], B[k * n + j]));
    return out;
}

std::vector<Fq> transpose(const std::vector<Fq>& A, std::uint32_t n) {
    std::vector<Fq> out(n * n);
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < n; ++j) out[j * n + i] = A[i * n + j];
    return out;
}

void check_diagonalization(const SymmetricForm& B) {
    const auto& c = *B.ctx();
    const std::uint32_t n = B.n();
    auto PtBP = matmul(c, matmul(c, transpose(B.diagonal_basis(), n), B.gram_flat(), n),
                       B.diagonal_basis(), n);
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < n; ++j) {
            if (i == j) {
                CHECK(PtBP[i * n + j] == B.diagonal()[i]);
                CHECK(PtBP[i * n + j] != 0);
            } else {
                CHECK(PtBP[i * n + j] == 0);
            }
        }
}

} // namespace

TEST_CASE("diagonalize") {
    auto F3 = FieldCtx::make(3, 1);
    auto id3 = SymmetricForm::make(F3, {1, 0, 0, 0, 1, 0, 0, 0, 1}, 3);
    check_diagonalization(id3);
    CHECK(id3.diagonal() == std::vector<Fq>{1, 1, 1});

    // hyperbolic over F3: disc = eps(-1) = -1 preserved under congruence
    auto hyp = SymmetricForm::make(F3, {0, 1, 1, 0}, 2);
    check_diagonalization(hyp);
    CHECK(hyp.disc() == F3->quad_char(F3->neg(1)));

    // random symmetric nondegenerate 4x4 over F5
    auto F5 = FieldCtx::make(5, 1);
    std::mt19937_64 rng(7);
    int built = 0;
    while (built < 10) {
        std::vector<Fq> g(16);
        for (std::uint32_t i = 0; i < 4; ++i)
            for (std::uint32_t j = i; j < 4; ++j) {
                Fq v = static_cast<Fq>(rng() % 5);
                g[i * 4 + j] = v;
                g[j * 4 + i] = v;
            }
        if (determinant(*F5, g, 4) == 0) continue;
        auto B = SymmetricForm::make(F5, g, 4);
        check_diagonalization(B);
        ++built;
    }

    CHECK_THROWS_AS(SymmetricForm::make(F3, {1, 1, 1, 1}, 2), std::domain_error);
    CHECK_THROWS_AS(SymmetricForm::make(F3, {0, 1, 2, 0}, 2), std::invalid_argument);
}

TEST_CASE("witt index and type") {
    auto F3 = FieldCtx::make(3, 1);
    auto plus2 = SymmetricForm::make(F3, {1, 0, 0, F3->neg(1)}, 2); // diag(1,-1)
    CHECK(plus2.witt_index() == 1);
    CHECK(plus2.type() == FormType::Plus);

    auto minus2 = SymmetricForm::make(F3, {1, 0, 0, 1}, 2); // x^2 + y^2 anisotropic mod 3
    CHECK(minus2.witt_index() == 0);
    CHECK(minus2.type() == FormType::Minus);
    CHECK(minus2.aniso_dim() == 2);

    for (std::uint32_t q : {3u, 5u, 7u}) {
        auto F = FieldCtx::make(q, 1);
        for (Fq d = 1; d < q; ++d) {
            auto B = SymmetricForm::make(F, {1, 0, 0, 0, 1, 0, 0, 0, d}, 3);
            CHECK(B.witt_index() == 1); // n = 2m+1 forces h = m
            CHECK(B.type() == FormType::Odd);
        }
    }
}

TEST_CASE("witt decomposition certificates") {
    for (auto spec : {"odd:1", "odd:3", "odd:5", "plus:2", "plus:4", "minus:2", "minus:4"}) {
        auto F = FieldCtx::make(3, 1);
        auto B = SymmetricForm::parse_spec(F, spec);
        CHECK(2 * B.witt_index() + B.aniso_dim() == B.n());
        CHECK(B.aniso_dim() <= 2);
        for (const auto& pr : B.hyperbolic_pairs()) {
            CHECK(B.eval(pr.e, pr.e) == 0);
            CHECK(B.eval(pr.f, pr.f) == 0);
            CHECK(B.eval(pr.e, pr.f) == 1);
        }
        // anisotropic part has no nonzero isotropic vector (dim <= 2: check all)
        const auto& ab = B.anisotropic_basis();
        const std::uint32_t ad = static_cast<std::uint32_t>(ab.size());
        for (std::uint32_t c1 = 0; c1 < 3; ++c1)
            for (std::uint32_t c2 = 0; c2 < (ad > 1 ? 3u : 1u); ++c2) {
                if (c1 == 0 && c2 == 0) continue;
                if (ad == 0) continue;
                std::vector<Fq> v(B.n(), 0);
                for (std::uint32_t j = 0; j < B.n(); ++j) {
                    Fq x = F->mul(c1, ab[0][j]);
                    if (ad > 1) x = F->add(x, F->mul(c2, ab[1][j]));
                    v[j] = x;
                }
                CHECK(B.eval(v, v) != 0);
            }
    }
}

TEST_CASE("standard forms have the advertised invariants") {
    for (std::uint32_t q : {3u, 5u, 9u}) {
        auto F = q == 9 ? FieldCtx::make(3, 2) : FieldCtx::make(q, 1);
        CHECK(SymmetricForm::standard(F, FormType::Plus, 4).witt_index() == 2);
        CHECK(SymmetricForm::standard(F, FormType::Minus, 4).witt_index() == 1);
        CHECK(SymmetricForm::standard(F, FormType::Odd, 5).witt_index() == 2);
    }
}

TEST_CASE("reduce") {
    auto F3 = FieldCtx::make(3, 1);
    auto B5 = SymmetricForm::standard(F3, FormType::Odd, 5);
    CHECK(B5.reduce(0) == B5);
    auto r2 = B5.reduce(2);
    CHECK(r2.n() == 1);
    CHECK(r2.witt_index() == 0);
    auto plus4 = SymmetricForm::standard(F3, FormType::Plus, 4);
    CHECK(plus4.reduce(2).n() == 0);
    CHECK_THROWS_AS(plus4.reduce(3), std::out_of_range);
    // h drops by exactly k
    auto B7 = SymmetricForm::standard(F3, FormType::Odd, 7);
    for (std::uint32_t k = 0; k <= B7.witt_index(); ++k)
        CHECK(B7.reduce(k).witt_index() == B7.witt_index() - k);
}

TEST_CASE("symplectic space") {
    auto F3 = FieldCtx::make(3, 1);
    SymplecticSpace V(F3, 2);
    std::vector<Fq> e1p = {1, 0, 0, 0}, e1m = {0, 0, 1, 0}, e2m = {0, 0, 0, 1};
    CHECK(V.eval(e1p, e1m) == 1);
    CHECK(V.eval(e1m, e1p) == F3->neg(1));
    CHECK(V.eval(e1p, e2m) == 0);
    CHECK(V.reduce(1).N() == 1);
    CHECK_THROWS_AS(V.reduce(3), std::out_of_range);
}

TEST_CASE("form spec parsing") {
    auto F3 = FieldCtx::make(3, 1);
    CHECK(SymmetricForm::parse_spec(F3, "plus:4").type() == FormType::Plus);
    CHECK(SymmetricForm::parse_spec(F3, "[[1,0],[0,2]]").n() == 2);
    CHECK_THROWS_AS(SymmetricForm::parse_spec(F3, "odd:2"), std::invalid_argument);
    CHECK_THROWS_AS(SymmetricForm::parse_spec(F3, "nonsense"), std::invalid_argument);
}
