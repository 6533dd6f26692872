#include "doctest.h"

#include "finosc/generators.hpp"
#include "finosc/orbits.hpp"

using namespace finosc;

namespace {

TensorSpacePtr space_for(std::uint32_t q, std::uint32_t N, const std::string& spec) {
    auto F = q == 9 ? FieldCtx::make(3, 2) : FieldCtx::make(q, 1);
    auto W = spec == "1dim" ? SymmetricForm::make(F, {1}, 1) : SymmetricForm::parse_spec(F, spec);
    return TensorSpace::make(F, N, W);
}

} // namespace

TEST_CASE("f_lambda support, reflection and idempotent laws") {
    auto T = space_for(3, 1, "plus:2");
    CHECK_THROWS_AS(f_lambda(T, 0), std::invalid_argument);
    auto unit = StarElement::basis(T, 0);
    for (std::uint64_t lam = 1; lam < T->wcard(); ++lam) {
        auto f = f_lambda(T, lam);
        CHECK(f.support_size() == 9); // q^{2N}
        if (T->b_qf(lam) != 0) {
            auto fr = f.div_by_power_of_q(1);
            CHECK(star(fr, fr) == unit);
        } else {
            auto fi = f.div_by_power_of_q(2);
            CHECK(star(fi, fi) == fi);
        }
    }
}

TEST_CASE("claim: f_lambda/q^N acts as the reflection across lambda-perp") {
    for (auto spec : {std::string("1dim"), std::string("plus:2"), std::string("minus:2"),
                      std::string("odd:3")}) {
        auto T = space_for(3, 1, spec);
        for (std::uint64_t lam = 1; lam < T->wcard(); ++lam) {
            if (T->b_qf(lam) == 0) continue;
            auto f = f_lambda(T, lam).div_by_power_of_q(1);
            CHECK(f.to_model() == reflection_model(*T, lam));
        }
    }
    // also at N = 2 (the reflection acts in every tensor factor)
    auto T2 = space_for(3, 2, "plus:2");
    std::uint64_t aniso = 0;
    for (std::uint64_t lam = 1; lam < T2->wcard(); ++lam)
        if (T2->b_qf(lam) != 0) {
            aniso = lam;
            break;
        }
    REQUIRE(aniso != 0);
    auto f2 = f_lambda(T2, aniso).div_by_power_of_q(2);
    CHECK(f2.to_model() == reflection_model(*T2, aniso));
}

TEST_CASE("the diag(1,-1) idempotent of the paper's trace computation") {
    auto F3 = FieldCtx::make(3, 1);
    auto W = SymmetricForm::make(F3, {1, 0, 0, F3->neg(1)}, 2);
    auto T = TensorSpace::make(F3, 1, W);
    std::uint64_t lam = T->ctx()->q() * 1 + 1; // (1,1): isotropic for diag(1,-1)
    REQUIRE(T->b_qf(lam) == 0);
    auto idem = isotropic_idempotent(T, {lam});
    CHECK(star(idem, idem) == idem);
    CHECK(idem.trace() == CycScalar::one(3, 3)); // dim of the image = 1
}

TEST_CASE("isotropic idempotent validation") {
    auto T = space_for(3, 1, "odd:5");
    CHECK_THROWS_AS(isotropic_idempotent(T, {1}), std::domain_error); // (1,0,..) anisotropic
    // lambda and 2*lambda are dependent
    std::uint64_t iso = 0;
    for (std::uint64_t lam = 1; lam < T->wcard(); ++lam)
        if (T->b_qf(lam) == 0) {
            iso = lam;
            break;
        }
    REQUIRE(iso != 0);
    CHECK_THROWS_AS(isotropic_idempotent(T, {iso, T->w_scale_code(2, iso)}),
                    std::domain_error);
}

TEST_CASE("commuting idempotents and trace at k = 2 with rank cross-check") {
    auto T = space_for(3, 1, "odd:5");
    // find an independent isotropic pair spanning an isotropic plane
    std::uint64_t l1 = 0, l2 = 0;
    for (std::uint64_t a = 1; a < T->wcard() && !l2; ++a) {
        if (T->b_qf(a) != 0) continue;
        for (std::uint64_t b = a + 1; b < T->wcard() && !l2; ++b) {
            if (T->b_qf(b) != 0 || T->b_form(a, b) != 0) continue;
            bool dep = false;
            for (Fq c = 1; c < 3; ++c) dep |= (T->w_scale_code(c, a) == b);
            if (!dep) {
                l1 = a;
                l2 = b;
            }
        }
    }
    REQUIRE(l2 != 0);
    auto f1 = f_lambda(T, l1), f2 = f_lambda(T, l2);
    CHECK(star(f1, f2) == star(f2, f1));
    auto idem = isotropic_idempotent(T, {l1, l2});
    CHECK(star(idem, idem) == idem);
    CHECK(idem.trace() == CycScalar::from_int(3, 3, 3)); // q^{N(n-2k)} = 3
    // rank of the model equals the trace (projection onto the image)
    auto M = idem.to_model();
    CHECK(M * M == M);
    CHECK(M.rank() == 3);
}

TEST_CASE("reflection words act as composite reflections") {
    auto T = space_for(3, 1, "odd:3");
    std::vector<std::uint64_t> sample;
    for (std::uint64_t lam = 1; lam < T->wcard(); ++lam)
        if (T->b_qf(lam) != 0) sample.push_back(lam);
    auto checks = reflection_subgroup_check(T, sample, 4, 12, 0x5eed, 1);
    for (auto& c : checks) CHECK(c.pass);
    CHECK_THROWS_AS(reflection_subgroup_check(T, {sample[0], /*isotropic*/ 0}, 2, 2, 1, 1),
                    std::domain_error);
}

TEST_CASE("K constants") {
    auto F3 = FieldCtx::make(3, 1);
    auto W1 = SymmetricForm::make(F3, {1}, 1);
    CHECK(k_constant(*F3, W1, 1).value == gauss_sum(*F3, 1));
    CHECK(k_constant(*F3, W1, 0).value == CycScalar::from_int(3, 3, 3));
    for (std::uint32_t q : {3u, 5u, 9u}) {
        auto F = q == 9 ? FieldCtx::make(3, 2) : FieldCtx::make(q, 1);
        for (auto spec : {std::string("odd:1"), std::string("plus:2"), std::string("odd:3")}) {
            auto W = SymmetricForm::parse_spec(F, spec);
            for (Fq c = 0; c < F->q(); ++c)
                CHECK(k_constant(*F, W, c).value == k_constant_closed(*F, W, c));
        }
    }
}

TEST_CASE("constants identity q^n K(-(t-1)) = K(-t/(t-1)) K(-t) K(1)") {
    for (std::uint32_t q : {3u, 5u, 9u}) {
        auto F = q == 9 ? FieldCtx::make(3, 2) : FieldCtx::make(q, 1);
        for (std::uint32_t n : {1u, 2u, 3u}) {
            auto W = n % 2 ? SymmetricForm::standard(F, FormType::Odd, n)
                           : SymmetricForm::standard(F, FormType::Plus, n);
            auto T = TensorSpace::make(F, 1, W);
            for (Fq t = 2; t < F->q(); ++t) {
                auto res = appendix_check(T, t);
                CHECK(res.constants_identity);
            }
        }
    }
}

TEST_CASE("appendix star identity at q=3 and q=5") {
    for (std::uint32_t q : {3u, 5u}) {
        for (std::uint32_t n : {1u, 2u}) {
            auto T = space_for(q, 1, n == 1 ? "1dim" : "plus:2");
            for (Fq t = 2; t < q; ++t) {
                auto res = appendix_check(T, t);
                CHECK(res.star_identity);
                CHECK(appendix_check_normalized(T, t));
            }
        }
    }
    CHECK_THROWS_AS(appendix_check(space_for(3, 1, "1dim"), 1), std::domain_error);
}

TEST_CASE("generator parameter validation") {
    auto T = space_for(3, 1, "1dim");
    CHECK_THROWS_AS(g_t(T, 0), std::domain_error);
    CHECK_THROWS_AS(alpha_t(T, 1), std::domain_error);
    CHECK_THROWS_AS(gamma_s(T, 0), std::domain_error);
    auto T2 = space_for(3, 2, "1dim");
    CHECK_THROWS_AS(g_t(T2, 2), std::invalid_argument); // needs dim V = 2
}

TEST_CASE("g_t * g_t' lands in the model group generated by the references") {
    // both sides computed exactly: the star product's model must equal the
    // product of the individual models (homomorphism specialised to g's)
    auto T = space_for(5, 1, "1dim");
    for (Fq t = 1; t < 5; ++t)
        for (Fq t2 = 1; t2 < 5; ++t2) {
            auto prod = star(g_t(T, t), g_t(T, t2));
            CHECK(prod.to_model() == g_t(T, t).to_model() * g_t(T, t2).to_model());
        }
}

TEST_CASE("model closure structure of the g_t family") {
    auto T = space_for(3, 1, "1dim");
    auto cl = sl2_model_closure(T);
    CHECK(cl.order == 96);
    CHECK(cl.scalar_count == 4);
    CHECK(cl.projective_order == 24);
    auto F3 = FieldCtx::make(3, 1);
    CHECK(sl2_matrix_closure_order(F3) == 24);
    CHECK(sl2_matrix_closure_order(FieldCtx::make(5, 1)) == 120);
}

TEST_CASE("generator models are invertible") {
    auto T = space_for(3, 1, "1dim");
    for (Fq t = 2; t < 3; ++t) CHECK(alpha_t(T, t).to_model().is_invertible());
    CHECK(beta_element(T).to_model().is_invertible());
    for (Fq s = 1; s < 3; ++s) CHECK(gamma_s(T, s).to_model().is_invertible());
    for (Fq t = 1; t < 3; ++t) CHECK(g_t(T, t).to_model().is_invertible());
}
