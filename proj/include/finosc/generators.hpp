#pragma once

#include <cstdint>
#include <vector>

#include "finosc/star.hpp"

namespace finosc {

// K(c) = sum_{u in W} psi_a(c * B(u,u)), a product of n Gauss sums.
struct GaussConstant {
    Fq c;
    CycScalar value;
};

GaussConstant k_constant(const FieldCtx& ctx, const SymmetricForm& W, Fq c, Fq a = 1);
// Closed form eps_q(a*c)^n * disc(B) * gauss_sum(1)^n for c != 0, q^n at 0.
CycScalar k_constant_closed(const FieldCtx& ctx, const SymmetricForm& W, Fq c, Fq a = 1);

// f_lambda = sum_{v in V} (v tensor lambda); support q^{2N}.  lambda is a
// W-code; throws std::invalid_argument on lambda = 0.
StarElement f_lambda(TensorSpacePtr T, std::uint64_t lambda, Fq a = 1);

// (f_{l_1} * ... * f_{l_k}) / q^{2Nk} for independent isotropic l_i spanning
// an isotropic subspace.  Throws std::domain_error("not isotropic") or
// ("not independent") accordingly.
StarElement isotropic_idempotent(TensorSpacePtr T, const std::vector<std::uint64_t>& lambdas,
                                 Fq a = 1);

// SL2-type generator elements; all require dim V = 2 (N = 1).
// g_t = q^{-n/2} sum_z psi(t B(z,z)/2) (z, tz), t != 0.
StarElement g_t(TensorSpacePtr T, Fq t, Fq a = 1);
StarElement g_t_cleared(TensorSpacePtr T, Fq t, Fq a = 1); // q^{n/2} g_t
// alpha_t = q^{-n} sum psi(-(t+1)/(2(t-1)) B(y+,y-)) (y+,y-), t not in {0,1}.
StarElement alpha_t(TensorSpacePtr T, Fq t, Fq a = 1);
StarElement alpha_t_cleared(TensorSpacePtr T, Fq t, Fq a = 1); // q^n alpha_t
// beta = (K(1) q^{n/2})^{-1} sum psi((B(y+,y+)+B(y-,y-))/4) (y+,y-).
StarElement beta_element(TensorSpacePtr T, Fq a = 1);
StarElement beta_cleared(TensorSpacePtr T, Fq a = 1); // K(1) q^{n/2} beta
// gamma_s = K(-1/(2s))^{-1} sum psi(-B(z,z)/(2s)) (z, 0), s != 0.
StarElement gamma_s(TensorSpacePtr T, Fq s, Fq a = 1);
StarElement gamma_s_cleared(TensorSpacePtr T, Fq s, Fq a = 1); // K(-1/(2s)) gamma_s

// Geometric reflection r_lambda(w) = w - (2 B(w,lambda)/B(lambda,lambda)) lambda
// on W-codes (lambda anisotropic), and its permutation action on the model
// basis (applied in every tensor factor).
std::uint64_t reflect_wcode(const TensorSpace& T, std::uint64_t lambda, std::uint64_t w);
ModelOperator reflection_model(const TensorSpace& T, std::uint64_t lambda);

// The three reference transformations of the oscillator action (dim V = 2):
// diag(t,1/t): (u) -> (t u);   [[0,1],[-1,0]]: (u) -> q^{-n/2} sum_w
// psi(B(-u,w)) (w);   [[1,0],[s,1]]: (u) -> psi(s B(u,u)/2) (u).
ModelOperator action_scale(const TensorSpace& T, Fq t, Fq a = 1);
ModelOperator action_fourier(const TensorSpace& T, Fq a = 1);
ModelOperator action_gamma(const TensorSpace& T, Fq s, Fq a = 1);
// Composite predicted for g_t: action_gamma(2/t) * action_fourier *
// action_scale(1/t).
ModelOperator g_t_predicted_model(const TensorSpace& T, Fq t, Fq a = 1);

struct ReflectionWordCheck {
    std::vector<std::uint64_t> word;
    bool pass = false;
};

// Random words of reflections: the star product of the f_lambda/q^N factors
// must act as the composite geometric reflection.  All lambdas must be
// anisotropic (std::domain_error("isotropic input") otherwise).
std::vector<ReflectionWordCheck> reflection_subgroup_check(
    TensorSpacePtr T, const std::vector<std::uint64_t>& sample, std::size_t max_len,
    std::size_t words, std::uint64_t seed, Fq a = 1);

// BFS closure of {to_model(g_t) : t in F_q^x} under matrix multiplication.
// The operators realize SL2 only projectively: the closure carries a Z/4
// scalar subgroup {+-1, +-i} with i = gauss_sum(1)*s/q, so its order is
// 4*q(q^2-1) and the quotient by scalars has order q(q^2-1).
struct Sl2Closure {
    std::uint64_t order = 0;
    std::uint64_t scalar_count = 0;
    std::uint64_t projective_order = 0; // order / scalar_count
};
Sl2Closure sl2_model_closure(TensorSpacePtr T, Fq a = 1, std::uint64_t limit = 1u << 20);

// BFS closure order of the 2x2 matrices [[0,t],[-1/t,2]] over F_q; these
// generate the full SL2(F_q), of order q(q^2-1).
std::uint64_t sl2_matrix_closure_order(FieldPtr ctx);

struct AppendixResult {
    bool star_identity = false;      // cleared-denominator form
    bool constants_identity = false; // q^n K(-(t-1)) = K(-t/(t-1)) K(-t) K(1)
};

// The composition identity g_t * alpha_t = gamma_{2/t} * beta, asserted in
// the cleared form K(1) K(-t/4) (G_t * A_t) = q^n (C_{2/t} * B~), together
// with the accompanying constants identity.  Requires t not in {0,1}.
AppendixResult appendix_check(TensorSpacePtr T, Fq t, Fq a = 1);
// Fully normalised variant (small spaces only; quadratic-algebra scales).
bool appendix_check_normalized(TensorSpacePtr T, Fq t, Fq a = 1);

} // namespace finosc
