#include "doctest.h"

#include <random>

#include "finosc/star.hpp"

using namespace finosc;

namespace {

StarElement rnd_elem(TensorSpacePtr T, std::mt19937_64& rng) {
    const std::uint32_t p = T->ctx()->p(), q = T->ctx()->q();
    std::vector<std::pair<std::uint64_t, CycScalar>> terms;
    std::size_t k = 1 + rng() % 3;
    for (std::size_t i = 0; i < k; ++i) {
        CycScalar c = CycScalar::zeta_pow(p, q, rng() % p) * Rational(1 + rng() % 2);
        if (rng() % 3 == 0) c = c * CycScalar::sqrt_q(p, q);
        if (rng() % 2) c = -c;
        terms.emplace_back(rng() % T->point_count(), c);
    }
    return StarElement::from_terms(std::move(T), 1, terms);
}

} // namespace

TEST_CASE("star unit and inverses of basis vectors") {
    auto F3 = FieldCtx::make(3, 1);
    auto T = TensorSpace::make_plain(F3, 1);
    auto unit = StarElement::basis(T, 0);
    for (std::uint64_t u = 0; u < T->point_count(); ++u) {
        auto eu = StarElement::basis(T, u);
        CHECK(star(eu, unit) == eu);
        CHECK(star(unit, eu) == eu);
        // (u) * (-u) = (0) since the form is alternating
        auto neg = StarElement::basis(T, T->code_of_coords({F3->neg(T->coords_of(u)[0]),
                                                            F3->neg(T->coords_of(u)[1])}));
        CHECK(star(eu, neg) == unit);
    }
}

TEST_CASE("star on the 2-dimensional space over F3") {
    auto F3 = FieldCtx::make(3, 1);
    auto T = TensorSpace::make_plain(F3, 1);
    auto ep = StarElement::basis(T, T->code_of_coords({1, 0}));
    auto em = StarElement::basis(T, T->code_of_coords({0, 1}));
    auto prod = star(ep, em);
    CHECK(prod.support_size() == 1);
    CHECK(prod.coeff(T->code_of_coords({1, 1})) == CycScalar::zeta_pow(3, 3, 2));
    // opposite order picks up the inverse character factor
    auto prod2 = star(em, ep);
    CHECK(prod2.coeff(T->code_of_coords({1, 1})) == CycScalar::zeta_pow(3, 3, 1));
}

TEST_CASE("space and character mismatches are rejected") {
    auto F3 = FieldCtx::make(3, 1);
    auto T1 = TensorSpace::make_plain(F3, 1);
    auto T2 = TensorSpace::make_plain(F3, 2);
    CHECK_THROWS_AS(star(StarElement::basis(T1, 0), StarElement::basis(T2, 0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(star(StarElement::basis(T1, 0, 1), StarElement::basis(T1, 0, 2)),
                    std::invalid_argument);
    CHECK_THROWS_AS(StarElement::basis(T1, 0, 0), std::domain_error);
}

TEST_CASE("associativity on random triples, exactly") {
    for (std::uint32_t q : {3u, 5u}) {
        auto F = FieldCtx::make(q, 1);
        auto T = TensorSpace::make_plain(F, 1);
        std::mt19937_64 rng(11 + q);
        for (int it = 0; it < 60; ++it) {
            auto x = rnd_elem(T, rng), y = rnd_elem(T, rng), z = rnd_elem(T, rng);
            CHECK(star(star(x, y), z) == star(x, star(y, z)));
        }
    }
}

TEST_CASE("to_model: identity, translations, homomorphism") {
    auto F3 = FieldCtx::make(3, 1);
    auto W2 = SymmetricForm::standard(F3, FormType::Plus, 2);
    for (auto T : {TensorSpace::make_plain(F3, 1), TensorSpace::make(F3, 1, W2),
                   TensorSpace::make_plain(F3, 2)}) {
        auto unit = StarElement::basis(T, 0);
        CHECK(unit.to_model() ==
              ModelOperator::identity(3, 3, T->model_dim()));
        // pure Lambda_- translation: permutation with unit coefficients
        const std::uint32_t N = T->N();
        std::uint64_t vminus = 1; // first minus-block coordinate = 1
        std::vector<std::uint64_t> blocks(2 * N, 0);
        blocks[N] = 1;
        auto tr = StarElement::basis(T, T->encode_blocks(blocks));
        auto M = tr.to_model();
        for (std::uint64_t x = 0; x < T->model_dim(); ++x) {
            auto xb = T->decode_blocks(x, N);
            xb[0] = T->w_add_code(xb[0], vminus);
            std::uint64_t out = 0;
            for (std::uint32_t i = N; i-- > 0;) out = out * T->wcard() + xb[i];
            CHECK(M.at(out, x) == CycScalar::one(3, 3));
        }
        std::mt19937_64 rng(5);
        for (int it = 0; it < 40; ++it) {
            auto x = rnd_elem(T, rng), y = rnd_elem(T, rng);
            CHECK(star(x, y).to_model() == x.to_model() * y.to_model());
        }
    }
}

TEST_CASE("trace") {
    auto F3 = FieldCtx::make(3, 1);
    auto T = TensorSpace::make_plain(F3, 2); // model dim 9
    auto unit = StarElement::basis(T, 0);
    CHECK(unit.trace() == CycScalar::from_int(3, 3, 9));
    CHECK(unit.to_model().trace() == unit.trace());
    for (std::uint64_t v = 1; v < 20; ++v)
        CHECK(StarElement::basis(T, v).trace().is_zero());
}

TEST_CASE("element arithmetic and equality normal forms") {
    auto F3 = FieldCtx::make(3, 1);
    auto T = TensorSpace::make_plain(F3, 1);
    auto a = StarElement::basis(T, 3).scaled(Rational(2, 3));
    auto b = StarElement::basis(T, 3).scaled(Rational(1, 3));
    CHECK(a - b == b);
    CHECK((b - b).is_zero());
    CHECK((a - b) + b == a);
    auto c = a.scaled_cyc(CycScalar::sqrt_q(3, 3));
    CHECK(c.scaled_cyc(CycScalar::sqrt_q(3, 3)) == a.scaled(Rational(3)));
    CHECK(a.div_by_power_of_q(1) == StarElement::basis(T, 3).scaled(Rational(2, 9)));
}

TEST_CASE("matrix-free apply matches the dense model") {
    auto F3 = FieldCtx::make(3, 1);
    auto W = SymmetricForm::standard(F3, FormType::Odd, 3);
    auto T = TensorSpace::make(F3, 1, W);
    std::mt19937_64 rng(99);
    auto x = rnd_elem(T, rng);
    auto M = x.to_model();
    for (std::uint64_t col = 0; col < T->model_dim(); ++col) {
        auto img = x.apply(col);
        std::size_t nonzero = 0;
        for (std::uint64_t row = 0; row < T->model_dim(); ++row)
            if (!M.at(row, col).is_zero()) ++nonzero;
        CHECK(nonzero == img.size());
        for (auto& [row, coeff] : img) CHECK(M.at(row, col) == coeff);
    }
}

TEST_CASE("heisenberg action composes exhaustively (dim 2, q=3)") {
    auto F3 = FieldCtx::make(3, 1);
    auto T = TensorSpace::make_plain(F3, 1);
    for (std::uint64_t v1 = 0; v1 < 9; ++v1)
        for (Fq c1 = 0; c1 < 3; ++c1)
            for (std::uint64_t v2 = 0; v2 < 9; ++v2)
                for (Fq c2 = 0; c2 < 3; ++c2) {
                    auto g = heisenberg_mul(*T, {v2, c2}, {v1, c1});
                    for (std::uint64_t x = 0; x < 3; ++x) {
                        auto [f1, m1] = heisenberg_apply(*T, 1, v1, c1, x);
                        auto [f2, m2] = heisenberg_apply(*T, 1, v2, c2, m1);
                        auto [fp, mp] = heisenberg_apply(*T, 1, g.first, g.second, x);
                        CHECK(m2 == mp);
                        CHECK(f1 * f2 == fp);
                    }
                }
}

TEST_CASE("JSON rendering carries the space and the terms") {
    auto F3 = FieldCtx::make(3, 1);
    auto T = TensorSpace::make_plain(F3, 1);
    auto e = StarElement::basis(T, T->code_of_coords({1, 2}));
    auto s = e.to_json_string();
    CHECK(s.find("\"char\":1") != std::string::npos);
    CHECK(s.find("\"terms\"") != std::string::npos);
    CHECK(s.find("[1,2]") != std::string::npos);
}

TEST_CASE("model materialisation guard") {
    auto F3 = FieldCtx::make(3, 1);
    auto W = SymmetricForm::standard(F3, FormType::Odd, 5);
    auto T = TensorSpace::make(F3, 2, W); // model dim 3^10
    CHECK_THROWS_AS(StarElement::basis(T, 0).to_model(), SizeLimitError);
}
