#include "finosc/generators.hpp"

#include <map>
#include <random>
#include <stdexcept>

#include "finosc/orbits.hpp"

namespace finosc {

namespace {

void require_sl2(const TensorSpace& T) {
    if (T.N() != 1) throw std::invalid_argument("this element requires dim V = 2");
}

StarElement from_monomials(TensorSpacePtr T, Fq a,
                           std::vector<std::pair<std::uint64_t, std::uint32_t>> terms) {
    return StarElement::from_zeta_monomials(std::move(T), a, std::move(terms));
}

Rational int_pow(std::int64_t b, std::uint32_t e) {
    Rational r = 1;
    for (std::uint32_t i = 0; i < e; ++i) r *= b;
    return r;
}

// 1/K_a(c) as (rational, cyclotomic-integer) data: K^2 = (eps_q(-1) q)^n, so
// 1/K = K / (eps_q(-1) q)^n.
std::pair<Rational, CycScalar> k_inverse(const FieldCtx& ctx, const SymmetricForm& W, Fq c,
                                         Fq a) {
    CycScalar K = k_constant(ctx, W, c, a).value;
    int em1 = ctx.quad_char(ctx.neg(1));
    Rational denom = int_pow(static_cast<std::int64_t>(em1) * ctx.q(), W.n());
    return {Rational(1) / denom, K};
}

// s^n as a scalar (q^{n/2} for even n, q^{(n-1)/2} s for odd n).
CycScalar sqrtq_pow(std::uint32_t p, std::uint32_t q, std::uint32_t n) {
    return CycScalar::sqrt_q(p, q).pow(n);
}

} // namespace

GaussConstant k_constant(const FieldCtx& ctx, const SymmetricForm& W, Fq c, Fq a) {
    if (a == 0) throw std::domain_error("trivial character");
    const std::uint32_t q = ctx.q(), n = W.n();
    std::vector<Rational> counts(ctx.p(), Rational(0));
    std::vector<Fq> u(n, 0);
    // iterate W by odometer over coordinates
    while (true) {
        Fq b = W.eval(u, u);
        counts[ctx.trace(ctx.mul(a, ctx.mul(c, b)))] += 1;
        std::uint32_t i = 0;
        for (; i < n; ++i) {
            if (++u[i] < q) break;
            u[i] = 0;
        }
        if (i == n) break;
    }
    return {c, CycScalar::from_coords(ctx.p(), q, std::move(counts))};
}

CycScalar k_constant_closed(const FieldCtx& ctx, const SymmetricForm& W, Fq c, Fq a) {
    const std::uint32_t n = W.n();
    if (c == 0) return CycScalar::from_rational(ctx.p(), ctx.q(), int_pow(ctx.q(), n));
    CycScalar g = gauss_sum(ctx, 1, 1).pow(n);
    int sign = ctx.quad_char(ctx.mul(a, c)); // +-1 since a, c != 0
    Rational f = (n % 2 == 0) ? Rational(1) : Rational(sign);
    return g * (f * Rational(W.disc()));
}

StarElement f_lambda(TensorSpacePtr T, std::uint64_t lambda, Fq a) {
    if (lambda == 0) throw std::invalid_argument("lambda must be nonzero");
    const auto& ctx = *T->ctx();
    const std::uint32_t q = ctx.q(), N = T->N();
    // scalar multiples c*lambda for every field scalar
    std::vector<std::uint64_t> scl(q);
    for (Fq cc = 0; cc < q; ++cc) scl[cc] = T->w_scale_code(cc, lambda);
    std::uint64_t vcard = 1;
    for (std::uint32_t i = 0; i < 2 * N; ++i) vcard *= q;
    std::vector<std::uint64_t> wpow(2 * N);
    wpow[0] = 1;
    for (std::uint32_t i = 1; i < 2 * N; ++i) wpow[i] = wpow[i - 1] * T->wcard();
    std::vector<std::pair<std::uint64_t, std::uint32_t>> terms;
    terms.reserve(vcard);
    for (std::uint64_t v = 0; v < vcard; ++v) {
        std::uint64_t code = 0, vv = v;
        for (std::uint32_t i = 0; i < 2 * N; ++i) {
            code += scl[vv % q] * wpow[i];
            vv /= q;
        }
        terms.emplace_back(code, 0);
    }
    return from_monomials(std::move(T), a, std::move(terms));
}

StarElement isotropic_idempotent(TensorSpacePtr T, const std::vector<std::uint64_t>& lambdas,
                                 Fq a) {
    if (lambdas.empty()) throw std::invalid_argument("need at least one lambda");
    const auto& ctx = *T->ctx();
    const std::uint32_t n = T->n(), q = ctx.q();
    // isotropy of the span
    for (auto l1 : lambdas) {
        if (l1 == 0) throw std::invalid_argument("lambda must be nonzero");
        for (auto l2 : lambdas)
            if (T->b_form(l1, l2) != 0) throw std::domain_error("not isotropic");
    }
    // independence
    std::vector<Fq> m;
    for (auto l : lambdas) {
        std::uint64_t u = l;
        for (std::uint32_t i = 0; i < n; ++i) {
            m.push_back(static_cast<Fq>(u % q));
            u /= q;
        }
    }
    std::vector<Fq> mm = m;
    if (row_reduce(ctx, mm, static_cast<std::uint32_t>(lambdas.size()), n) != lambdas.size())
        throw std::domain_error("not independent");

    StarElement prod = f_lambda(T, lambdas[0], a);
    for (std::size_t i = 1; i < lambdas.size(); ++i) prod = star(prod, f_lambda(T, lambdas[i], a));
    return prod.div_by_power_of_q(2 * T->N() * static_cast<std::uint32_t>(lambdas.size()));
}

StarElement g_t_cleared(TensorSpacePtr T, Fq t, Fq a) {
    require_sl2(*T);
    if (t == 0) throw std::domain_error("zero parameter");
    const auto& ctx = *T->ctx();
    std::vector<std::pair<std::uint64_t, std::uint32_t>> terms;
    terms.reserve(T->wcard());
    for (std::uint64_t z = 0; z < T->wcard(); ++z) {
        Fq e = ctx.mul(a, ctx.half(ctx.mul(t, T->b_qf(z))));
        std::uint64_t code = z + T->wcard() * T->w_scale_code(t, z);
        terms.emplace_back(code, ctx.trace(e));
    }
    return from_monomials(std::move(T), a, std::move(terms));
}

StarElement g_t(TensorSpacePtr T, Fq t, Fq a) {
    const std::uint32_t p = T->ctx()->p(), q = T->ctx()->q(), n = T->n();
    StarElement g = g_t_cleared(T, t, a);
    // multiply by q^{-n/2} = s^n / q^n
    return g.scaled_cyc(sqrtq_pow(p, q, n)).scaled(Rational(1) / int_pow(q, n));
}

StarElement alpha_t_cleared(TensorSpacePtr T, Fq t, Fq a) {
    require_sl2(*T);
    if (t == 0 || t == 1) throw std::domain_error("degenerate parameter");
    const auto& ctx = *T->ctx();
    Fq m = ctx.neg(ctx.mul(ctx.add(t, 1), ctx.inv(ctx.mul(ctx.from_int(2), ctx.sub(t, 1)))));
    std::vector<std::pair<std::uint64_t, std::uint32_t>> terms;
    terms.reserve(T->wcard() * T->wcard());
    for (std::uint64_t yp = 0; yp < T->wcard(); ++yp)
        for (std::uint64_t ym = 0; ym < T->wcard(); ++ym) {
            Fq e = ctx.mul(a, ctx.mul(m, T->b_form(yp, ym)));
            terms.emplace_back(yp + T->wcard() * ym, ctx.trace(e));
        }
    return from_monomials(std::move(T), a, std::move(terms));
}

StarElement alpha_t(TensorSpacePtr T, Fq t, Fq a) {
    const std::uint32_t q = T->ctx()->q(), n = T->n();
    return alpha_t_cleared(std::move(T), t, a).scaled(Rational(1) / int_pow(q, n));
}

StarElement beta_cleared(TensorSpacePtr T, Fq a) {
    require_sl2(*T);
    const auto& ctx = *T->ctx();
    Fq quarter = ctx.inv(ctx.from_int(4));
    std::vector<std::pair<std::uint64_t, std::uint32_t>> terms;
    terms.reserve(T->wcard() * T->wcard());
    for (std::uint64_t yp = 0; yp < T->wcard(); ++yp)
        for (std::uint64_t ym = 0; ym < T->wcard(); ++ym) {
            Fq e = ctx.mul(a, ctx.mul(quarter, ctx.add(T->b_qf(yp), T->b_qf(ym))));
            terms.emplace_back(yp + T->wcard() * ym, ctx.trace(e));
        }
    return from_monomials(std::move(T), a, std::move(terms));
}

StarElement beta_element(TensorSpacePtr T, Fq a) {
    const auto& ctx = *T->ctx();
    const std::uint32_t p = ctx.p(), q = ctx.q(), n = T->n();
    auto [r, K] = k_inverse(ctx, T->W(), 1, a);
    StarElement b = beta_cleared(T, a);
    // 1/(K q^{n/2}) = K s^n / ((eps(-1) q)^n q^n)
    return b.scaled_cyc(K * sqrtq_pow(p, q, n)).scaled(r / int_pow(q, n));
}

StarElement gamma_s_cleared(TensorSpacePtr T, Fq s, Fq a) {
    require_sl2(*T);
    if (s == 0) throw std::domain_error("degenerate parameter");
    const auto& ctx = *T->ctx();
    Fq m = ctx.neg(ctx.inv(ctx.mul(ctx.from_int(2), s)));
    std::vector<std::pair<std::uint64_t, std::uint32_t>> terms;
    terms.reserve(T->wcard());
    for (std::uint64_t z = 0; z < T->wcard(); ++z) {
        Fq e = ctx.mul(a, ctx.mul(m, T->b_qf(z)));
        terms.emplace_back(z, ctx.trace(e)); // minus block is zero
    }
    return from_monomials(std::move(T), a, std::move(terms));
}

StarElement gamma_s(TensorSpacePtr T, Fq s, Fq a) {
    const auto& ctx = *T->ctx();
    Fq m = ctx.neg(ctx.inv(ctx.mul(ctx.from_int(2), s)));
    auto [r, K] = k_inverse(ctx, T->W(), m, a);
    return gamma_s_cleared(T, s, a).scaled_cyc(K).scaled(r);
}

std::uint64_t reflect_wcode(const TensorSpace& T, std::uint64_t lambda, std::uint64_t w) {
    const auto& ctx = *T.ctx();
    Fq bll = T.b_qf(lambda);
    if (bll == 0) throw std::domain_error("isotropic input");
    Fq f = ctx.neg(ctx.mul(ctx.from_int(2), ctx.mul(T.b_form(w, lambda), ctx.inv(bll))));
    return T.w_add_code(w, T.w_scale_code(f, lambda));
}

ModelOperator reflection_model(const TensorSpace& T, std::uint64_t lambda) {
    const std::uint32_t p = T.ctx()->p(), q = T.ctx()->q(), N = T.N();
    if (!T.model_dim_exact() || T.model_dim() > (1u << 20))
        throw SizeLimitError("model too large");
    const std::uint64_t dim = T.model_dim();
    // image of each W-code under the reflection
    std::vector<std::uint64_t> img(T.wcard());
    for (std::uint64_t u = 0; u < T.wcard(); ++u) img[u] = reflect_wcode(T, lambda, u);
    ModelOperator M(p, q, dim);
    CycScalar one = CycScalar::one(p, q);
    for (std::uint64_t x = 0; x < dim; ++x) {
        std::uint64_t out = 0, xx = x;
        std::uint64_t mult = 1;
        for (std::uint32_t i = 0; i < N; ++i) {
            out += img[xx % T.wcard()] * mult;
            xx /= T.wcard();
            mult *= T.wcard();
        }
        M.at(out, x) = one;
    }
    return M;
}

ModelOperator action_scale(const TensorSpace& T, Fq t, Fq a) {
    require_sl2(T);
    (void)a;
    const std::uint32_t p = T.ctx()->p(), q = T.ctx()->q();
    ModelOperator M(p, q, T.model_dim());
    CycScalar one = CycScalar::one(p, q);
    for (std::uint64_t u = 0; u < T.model_dim(); ++u) M.at(T.w_scale_code(t, u), u) = one;
    return M;
}

ModelOperator action_fourier(const TensorSpace& T, Fq a) {
    require_sl2(T);
    const auto& ctx = *T.ctx();
    const std::uint32_t p = ctx.p(), q = ctx.q(), n = T.n();
    ModelOperator M(p, q, T.model_dim());
    CycScalar norm = sqrtq_pow(p, q, n) * (Rational(1) / int_pow(q, n));
    for (std::uint64_t u = 0; u < T.model_dim(); ++u)
        for (std::uint64_t w = 0; w < T.model_dim(); ++w) {
            std::uint32_t e = ctx.trace(ctx.mul(a, ctx.neg(T.b_form(u, w))));
            M.at(w, u) = CycScalar::zeta_pow(p, q, e) * norm;
        }
    return M;
}

ModelOperator action_gamma(const TensorSpace& T, Fq s, Fq a) {
    require_sl2(T);
    const auto& ctx = *T.ctx();
    const std::uint32_t p = ctx.p(), q = ctx.q();
    ModelOperator M(p, q, T.model_dim());
    for (std::uint64_t u = 0; u < T.model_dim(); ++u) {
        std::uint32_t e = ctx.trace(ctx.mul(a, ctx.half(ctx.mul(s, T.b_qf(u)))));
        M.at(u, u) = CycScalar::zeta_pow(p, q, e);
    }
    return M;
}

ModelOperator g_t_predicted_model(const TensorSpace& T, Fq t, Fq a) {
    const auto& ctx = *T.ctx();
    Fq two_over_t = ctx.mul(ctx.from_int(2), ctx.inv(t));
    return action_gamma(T, two_over_t, a) * action_fourier(T, a) *
           action_scale(T, ctx.inv(t), a);
}

std::vector<ReflectionWordCheck> reflection_subgroup_check(
    TensorSpacePtr T, const std::vector<std::uint64_t>& sample, std::size_t max_len,
    std::size_t words, std::uint64_t seed, Fq a) {
    for (auto l : sample)
        if (T->b_qf(l) == 0) throw std::domain_error("isotropic input");
    std::mt19937_64 rng(seed);
    std::vector<ReflectionWordCheck> out;
    const std::uint32_t N = T->N();
    for (std::size_t w = 0; w < words; ++w) {
        std::size_t len = 1 + rng() % max_len;
        ReflectionWordCheck chk;
        for (std::size_t i = 0; i < len; ++i) chk.word.push_back(sample[rng() % sample.size()]);
        StarElement prod = f_lambda(T, chk.word[0], a).div_by_power_of_q(N);
        for (std::size_t i = 1; i < len; ++i)
            prod = star(prod, f_lambda(T, chk.word[i], a).div_by_power_of_q(N));
        ModelOperator lhs = prod.to_model();
        ModelOperator rhs = reflection_model(*T, chk.word[0]);
        for (std::size_t i = 1; i < len; ++i) rhs = rhs * reflection_model(*T, chk.word[i]);
        chk.pass = (lhs == rhs);
        out.push_back(std::move(chk));
    }
    return out;
}

Sl2Closure sl2_model_closure(TensorSpacePtr T, Fq a, std::uint64_t limit) {
    require_sl2(*T);
    const std::uint32_t q = T->ctx()->q();
    std::vector<ModelOperator> gens;
    for (Fq t = 1; t < q; ++t) gens.push_back(g_t(T, t, a).to_model());
    struct Less {
        bool operator()(const ModelOperator& x, const ModelOperator& y) const {
            return x.cmp(y) < 0;
        }
    };
    std::map<ModelOperator, bool, Less> seen;
    std::vector<ModelOperator> frontier;
    ModelOperator id = ModelOperator::identity(T->ctx()->p(), q, T->model_dim());
    seen.emplace(id, true);
    frontier.push_back(id);
    while (!frontier.empty()) {
        std::vector<ModelOperator> next;
        for (const auto& m : frontier) {
            for (const auto& g : gens) {
                ModelOperator prod = m * g;
                if (seen.emplace(prod, true).second) {
                    if (seen.size() > limit) throw SizeLimitError("closure exceeds limit");
                    next.push_back(std::move(prod));
                }
            }
        }
        frontier = std::move(next);
    }
    Sl2Closure out;
    out.order = seen.size();
    for (const auto& [m, unused] : seen) {
        bool scalar = true;
        const CycScalar d = m.at(0, 0);
        for (std::uint64_t i = 0; i < m.dim() && scalar; ++i)
            for (std::uint64_t j = 0; j < m.dim() && scalar; ++j) {
                if (i == j)
                    scalar = m.at(i, j) == d;
                else
                    scalar = m.at(i, j).is_zero();
            }
        if (scalar) ++out.scalar_count;
    }
    out.projective_order = out.scalar_count ? out.order / out.scalar_count : 0;
    return out;
}

std::uint64_t sl2_matrix_closure_order(FieldPtr ctx) {
    const std::uint32_t q = ctx->q();
    std::vector<std::vector<Fq>> gens;
    for (Fq t = 1; t < q; ++t)
        gens.push_back({0, t, ctx->neg(ctx->inv(t)), ctx->from_int(2)}); // row-major 2x2
    MatrixGroup G(std::move(ctx), 2, std::move(gens));
    return G.order();
}

AppendixResult appendix_check(TensorSpacePtr T, Fq t, Fq a) {
    require_sl2(*T);
    const auto& ctx = *T->ctx();
    if (t == 0 || t == 1) throw std::domain_error("degenerate parameter");
    const std::uint32_t n = T->n();

    Fq minus_t_over_4 = ctx.neg(ctx.mul(t, ctx.inv(ctx.from_int(4))));
    Fq two_over_t = ctx.mul(ctx.from_int(2), ctx.inv(t));

    CycScalar K1 = k_constant(ctx, T->W(), 1, a).value;
    CycScalar Kt4 = k_constant(ctx, T->W(), minus_t_over_4, a).value;

    StarElement lhs = star(g_t_cleared(T, t, a), alpha_t_cleared(T, t, a)).scaled_cyc(K1 * Kt4);
    StarElement rhs = star(gamma_s_cleared(T, two_over_t, a), beta_cleared(T, a))
                          .scaled(int_pow(ctx.q(), n));

    AppendixResult res;
    res.star_identity = (lhs == rhs);

    Fq tm1 = ctx.sub(t, 1);
    CycScalar k_a = k_constant(ctx, T->W(), ctx.neg(tm1), a).value;
    CycScalar k_b = k_constant(ctx, T->W(), ctx.neg(ctx.mul(t, ctx.inv(tm1))), a).value;
    CycScalar k_c = k_constant(ctx, T->W(), ctx.neg(t), a).value;
    CycScalar lhs_c = k_a * Rational(int_pow(ctx.q(), n));
    CycScalar rhs_c = k_b * k_c * K1;
    res.constants_identity = (lhs_c == rhs_c);
    return res;
}

bool appendix_check_normalized(TensorSpacePtr T, Fq t, Fq a) {
    const auto& ctx = *T->ctx();
    Fq two_over_t = ctx.mul(ctx.from_int(2), ctx.inv(t));
    StarElement lhs = star(g_t(T, t, a), alpha_t(T, t, a));
    StarElement rhs = star(gamma_s(T, two_over_t, a), beta_element(T, a));
    return lhs == rhs;
}

} // namespace finosc
