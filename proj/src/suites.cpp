#include "finosc/suites.hpp"

#include <array>
#include <atomic>
#include <chrono>
#include <functional>
#include <future>
#include <random>
#include <sstream>

#include "finosc/generators.hpp"
#include "finosc/orbits.hpp"
#include "finosc/qcomb.hpp"
#include "finosc/star.hpp"

namespace finosc {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::vector<std::uint32_t> grid_qs(const SuiteOptions& o, std::vector<std::uint32_t> def) {
    if (o.qs.empty()) return def;
    std::vector<std::uint32_t> out;
    for (auto q : def)
        if (std::find(o.qs.begin(), o.qs.end(), q) != o.qs.end()) out.push_back(q);
    return out;
}

FieldPtr field_for(std::uint32_t q) {
    for (std::uint32_t p = 3;; p += 2) {
        if (!is_prime(p)) continue;
        std::uint64_t v = p;
        for (std::uint32_t e = 1; v <= q; ++e, v *= p)
            if (v == q) return FieldCtx::make(p, e);
        if (p > q) throw std::invalid_argument("q is not an odd prime power");
    }
}

// Run parameter points, sequentially or across a small worker pool; the
// report order is the submission order either way.
std::vector<CheckResult> run_points(std::vector<std::function<CheckResult()>> pts, int jobs) {
    std::vector<CheckResult> out(pts.size());
    if (jobs <= 1) {
        for (std::size_t i = 0; i < pts.size(); ++i) out[i] = pts[i]();
        return out;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= pts.size()) return;
            out[i] = pts[i]();
        }
    };
    std::vector<std::future<void>> fs;
    for (int j = 0; j < jobs; ++j) fs.push_back(std::async(std::launch::async, worker));
    for (auto& f : fs) f.get();
    return out;
}

CheckResult timed(const std::string& name, const std::string& params,
                  const std::function<bool(CheckResult&)>& fn) {
    CheckResult r;
    r.name = name;
    r.params = params;
    auto t0 = Clock::now();
    try {
        r.pass = fn(r);
    } catch (const std::exception& e) {
        r.pass = false;
        r.lhs = std::string("exception: ") + e.what();
    }
    r.ms = ms_since(t0);
    return r;
}

SymmetricForm form_for(FieldPtr ctx, std::uint32_t n, bool minus = false) {
    if (n % 2 == 1) return SymmetricForm::standard(std::move(ctx), FormType::Odd, n);
    return SymmetricForm::standard(std::move(ctx), minus ? FormType::Minus : FormType::Plus, n);
}

std::string fmt_params(std::initializer_list<std::pair<const char*, std::string>> kv) {
    std::ostringstream os;
    bool first = true;
    for (auto& [k, v] : kv) {
        if (!first) os << ",";
        os << k << "=" << v;
        first = false;
    }
    return os.str();
}

std::string s(std::uint64_t v) { return std::to_string(v); }

// random sparse star element with small integral coefficients
StarElement random_element(TensorSpacePtr T, std::mt19937_64& rng, Fq a) {
    const std::uint32_t p = T->ctx()->p(), q = T->ctx()->q();
    const std::uint64_t P = T->point_count();
    std::vector<std::pair<std::uint64_t, CycScalar>> terms;
    const std::size_t support = 1 + rng() % 3;
    for (std::size_t i = 0; i < support; ++i) {
        std::uint64_t code = rng() % P;
        CycScalar coeff = CycScalar::zeta_pow(p, q, rng() % p);
        switch (rng() % 4) {
            case 0: coeff = coeff * CycScalar::sqrt_q(p, q); break;
            case 1: coeff = coeff * Rational(1 + rng() % 3); break;
            case 2: coeff = coeff * Rational(1, 1 + rng() % 2); break;
            default: break;
        }
        if (rng() % 2) coeff = -coeff;
        terms.emplace_back(code, coeff);
    }
    return StarElement::from_terms(std::move(T), a, terms);
}

} // namespace

// ---- criterion 1: star/composition homomorphism -------------------------

SuiteReport criterion_star_homomorphism(const SuiteOptions& o) {
    SuiteReport rep;
    rep.suite = "star-homomorphism";
    auto t0 = Clock::now();
    struct Config {
        std::uint32_t q, N, n;
    };
    std::vector<Config> configs;
    for (auto q : grid_qs(o, {3, 5})) {
        configs.push_back({q, 1, 1}); // dim V tensor W = 2
        configs.push_back({q, 1, 2}); // dim 4 via n = 2
        configs.push_back({q, 2, 1}); // dim 4 via N = 2
    }
    std::vector<std::function<CheckResult()>> pts;
    for (auto cfg : configs) {
        pts.push_back([cfg]() {
            return timed("to_model(a*b) = to_model(a)to_model(b)",
                         fmt_params({{"q", s(cfg.q)}, {"N", s(cfg.N)}, {"n", s(cfg.n)}}),
                         [&](CheckResult& r) {
                             auto F = field_for(cfg.q);
                             auto W = cfg.n == 1 ? SymmetricForm::make(F, {1}, 1)
                                                 : form_for(F, cfg.n);
                             auto T = TensorSpace::make(F, cfg.N, W);
                             std::mt19937_64 rng(0x5eed0 + cfg.q * 100 + cfg.N * 10 + cfg.n);
                             int bad = 0;
                             for (int it = 0; it < 100; ++it) {
                                 auto x = random_element(T, rng, 1);
                                 auto y = random_element(T, rng, 1);
                                 auto lhs = star(x, y).to_model();
                                 auto rhs = x.to_model() * y.to_model();
                                 if (!(lhs == rhs)) ++bad;
                             }
                             r.lhs = std::to_string(100 - bad) + "/100 exact";
                             r.rhs = "100/100";
                             return bad == 0;
                         });
        });
    }
    // supporting structure: associativity, unit, Heisenberg, duality
    pts.push_back([]() {
        return timed("star associativity and unit", "q=3,N=1,n=2", [&](CheckResult& r) {
            auto F = FieldCtx::make(3, 1);
            auto T = TensorSpace::make(F, 1, SymmetricForm::standard(F, FormType::Plus, 2));
            std::mt19937_64 rng(42);
            auto unit = StarElement::basis(T, 0);
            for (int it = 0; it < 50; ++it) {
                auto x = random_element(T, rng, 1);
                auto y = random_element(T, rng, 1);
                auto z = random_element(T, rng, 1);
                if (!(star(star(x, y), z) == star(x, star(y, z)))) return false;
                if (!(star(x, unit) == x) || !(star(unit, x) == x)) return false;
            }
            r.lhs = "50/50 exact";
            return true;
        });
    });
    pts.push_back([]() {
        return timed("heisenberg action composes", "q=3,dimV=2", [&](CheckResult& r) {
            auto F = FieldCtx::make(3, 1);
            auto T = TensorSpace::make_plain(F, 1);
            for (std::uint64_t v1 = 0; v1 < 9; ++v1)
                for (Fq c1 = 0; c1 < 3; ++c1)
                    for (std::uint64_t v2 = 0; v2 < 9; ++v2)
                        for (Fq c2 = 0; c2 < 3; ++c2)
                            for (std::uint64_t x = 0; x < 3; ++x) {
                                auto [f1, m1] = heisenberg_apply(*T, 1, v1, c1, x);
                                auto [f2, m2] = heisenberg_apply(*T, 1, v2, c2, m1);
                                auto g = heisenberg_mul(*T, {v2, c2}, {v1, c1});
                                auto [fp, mp] = heisenberg_apply(*T, 1, g.first, g.second, x);
                                if (!(m2 == mp && f1 * f2 == fp)) return false;
                            }
            r.lhs = "2187/2187 exact";
            return true;
        });
    });
    pts.push_back([]() {
        return timed("duality: chi_a * chi_{-a} = permutation character", "q=3,5; n=1",
                     [&](CheckResult& r) {
                         for (std::uint32_t q : {3u, 5u}) {
                             auto F = field_for(q);
                             auto T = TensorSpace::make_plain(F, 1);
                             Fq minus1 = F->neg(1);
                             auto fix_count = [&](std::array<Fq, 4> M) {
                                 // dim ker (M - I) on F_q^2
                                 std::vector<Fq> m = {F->sub(M[0], 1), M[1], M[2],
                                                      F->sub(M[3], 1)};
                                 std::uint32_t rank = row_reduce(*F, m, 2, 2);
                                 std::uint64_t f = 1;
                                 for (std::uint32_t i = 0; i < 2 - rank; ++i) f *= q;
                                 return f;
                             };
                             auto check = [&](const StarElement& ea, const StarElement& eb,
                                              std::array<Fq, 4> M) {
                                 CycScalar prod = ea.to_model().trace() * eb.to_model().trace();
                                 return prod ==
                                        CycScalar::from_int(F->p(), q,
                                                            static_cast<std::int64_t>(
                                                                fix_count(M)));
                             };
                             for (Fq t = 2; t < q; ++t)
                                 if (!check(alpha_t(T, t, 1), alpha_t(T, t, minus1),
                                            {t, 0, 0, F->inv(t)}))
                                     return false;
                             for (Fq ss = 1; ss < q; ++ss)
                                 if (!check(gamma_s(T, ss, 1), gamma_s(T, ss, minus1),
                                            {1, 0, ss, 1}))
                                     return false;
                             if (!check(beta_element(T, 1), beta_element(T, minus1),
                                        {0, 1, minus1, 0}))
                                 return false;
                             for (Fq t = 1; t < q; ++t)
                                 if (!check(g_t(T, t, 1), g_t(T, t, minus1),
                                            {0, t, F->neg(F->inv(t)), F->from_int(2)}))
                                     return false;
                         }
                         r.lhs = "all families exact";
                         return true;
                     });
    });
    rep.results = run_points(std::move(pts), o.jobs);
    rep.total_ms = ms_since(t0);
    return rep;
}

// ---- criterion 2: reflections and the geometric action ------------------

SuiteReport criterion_reflections(const SuiteOptions& o) {
    SuiteReport rep;
    rep.suite = "reflections";
    auto t0 = Clock::now();
    auto qs = grid_qs(o, {3});
    std::vector<std::function<CheckResult()>> pts;
    for (auto q : qs) {
        struct FormCase {
            std::uint32_t n;
            bool minus;
        };
        for (auto fc : {FormCase{1, false}, FormCase{2, false}, FormCase{2, true},
                        FormCase{3, false}}) {
            pts.push_back([q, fc]() {
                std::string tag = fc.n % 2 ? "odd" : (fc.minus ? "minus" : "plus");
                return timed("reflection law + geometric action",
                             fmt_params({{"q", s(q)},
                                         {"N", "1"},
                                         {"form", tag + ":" + s(fc.n)}}),
                             [&](CheckResult& r) {
                                 auto F = field_for(q);
                                 auto W = form_for(F, fc.n, fc.minus);
                                 auto T = TensorSpace::make(F, 1, W);
                                 auto unit = StarElement::basis(T, 0);
                                 std::uint64_t checked = 0;
                                 for (std::uint64_t lam = 1; lam < T->wcard(); ++lam) {
                                     if (T->b_qf(lam) == 0) continue;
                                     auto f = f_lambda(T, lam).div_by_power_of_q(1);
                                     if (!(star(f, f) == unit)) return false;
                                     if (!(f.to_model() == reflection_model(*T, lam)))
                                         return false;
                                     ++checked;
                                 }
                                 r.lhs = s(checked) + " anisotropic lambdas exact";
                                 return checked > 0;
                             });
            });
        }
        // words of reflections act as composite reflections
        pts.push_back([q]() {
            return timed("reflection words", fmt_params({{"q", s(q)}, {"form", "plus:2"}}),
                         [&](CheckResult& r) {
                             auto F = field_for(q);
                             auto T = TensorSpace::make(F, 1, form_for(F, 2));
                             std::vector<std::uint64_t> sample;
                             for (std::uint64_t lam = 1; lam < T->wcard(); ++lam)
                                 if (T->b_qf(lam) != 0) sample.push_back(lam);
                             auto checks =
                                 reflection_subgroup_check(T, sample, 4, 20, 0xabc, 1);
                             for (auto& c : checks)
                                 if (!c.pass) return false;
                             r.lhs = "20 words exact";
                             return true;
                         });
        });
    }
    rep.results = run_points(std::move(pts), o.jobs);
    rep.total_ms = ms_since(t0);
    return rep;
}

// ---- criterion 3: commuting idempotents ----------------------------------

SuiteReport criterion_idempotents(const SuiteOptions& o) {
    SuiteReport rep;
    rep.suite = "idempotents";
    auto t0 = Clock::now();
    auto qs = grid_qs(o, {3});
    std::vector<std::function<CheckResult()>> pts;
    for (auto q : qs) {
        struct FormCase {
            std::uint32_t n;
            bool minus;
        };
        for (auto fc : {FormCase{2, false}, FormCase{3, false}, FormCase{4, false},
                        FormCase{4, true}, FormCase{5, false}}) {
            pts.push_back([q, fc]() {
                std::string tag = fc.n % 2 ? "odd" : (fc.minus ? "minus" : "plus");
                return timed(
                    "idempotents k<=2: idempotence, commutativity, trace",
                    fmt_params({{"q", s(q)}, {"N", "1"}, {"form", tag + ":" + s(fc.n)}}),
                    [&](CheckResult& r) {
                        auto F = field_for(q);
                        auto W = form_for(F, fc.n, fc.minus);
                        auto T = TensorSpace::make(F, 1, W);
                        const std::uint32_t n = fc.n, N = 1;
                        std::vector<std::uint64_t> iso;
                        for (std::uint64_t lam = 1; lam < T->wcard(); ++lam)
                            if (T->b_qf(lam) == 0) iso.push_back(lam);
                        std::uint64_t k1 = 0, k2 = 0;
                        auto expect_trace = [&](std::uint32_t k) {
                            BigInt e = 1;
                            for (std::uint32_t i = 0; i < N * (n - 2 * k); ++i) e *= q;
                            return CycScalar::from_rational(F->p(), q, Rational(e));
                        };
                        for (auto lam : iso) {
                            auto idem = isotropic_idempotent(T, {lam});
                            if (!(star(idem, idem) == idem)) return false;
                            if (!(idem.trace() == expect_trace(1))) return false;
                            ++k1;
                        }
                        for (auto l1 : iso)
                            for (auto l2 : iso) {
                                if (l1 == l2) continue;
                                if (T->b_form(l1, l2) != 0) continue;
                                // independence over F_q
                                bool dep = false;
                                for (Fq c = 1; c < q && !dep; ++c)
                                    dep = (T->w_scale_code(c, l1) == l2);
                                if (dep) continue;
                                auto f1 = f_lambda(T, l1);
                                auto f2 = f_lambda(T, l2);
                                if (!(star(f1, f2) == star(f2, f1))) return false;
                                auto idem = isotropic_idempotent(T, {l1, l2});
                                if (!(star(idem, idem) == idem)) return false;
                                if (!(idem.trace() == expect_trace(2))) return false;
                                ++k2;
                            }
                        r.lhs = s(k1) + " singles, " + s(k2) + " pairs exact";
                        return fc.n > 2 ? k1 > 0 : true;
                    });
            });
        }
    }
    rep.results = run_points(std::move(pts), o.jobs);
    rep.total_ms = ms_since(t0);
    return rep;
}

// ---- criterion 4: SL2 generator suite ------------------------------------

SuiteReport criterion_sl2(const SuiteOptions& o) {
    SuiteReport rep;
    rep.suite = "sl2-generators";
    auto t0 = Clock::now();
    auto qs = grid_qs(o, {3, 5});
    std::vector<std::function<CheckResult()>> pts;
    for (auto q : qs) {
        pts.push_back([q]() {
            return timed("alpha/beta/gamma actions match the reference transforms",
                         fmt_params({{"q", s(q)}, {"n", "1 and 2"}}), [&](CheckResult& r) {
                             auto F = field_for(q);
                             for (std::uint32_t n : {1u, 2u}) {
                                 auto W = n == 1 ? SymmetricForm::make(F, {1}, 1)
                                                 : form_for(F, 2);
                                 auto T = TensorSpace::make(F, 1, W);
                                 for (Fq t = 2; t < q; ++t)
                                     if (!(alpha_t(T, t).to_model() == action_scale(*T, t)))
                                         return false;
                                 if (!(beta_element(T).to_model() == action_fourier(*T)))
                                     return false;
                                 for (Fq ss = 1; ss < q; ++ss)
                                     if (!(gamma_s(T, ss).to_model() == action_gamma(*T, ss)))
                                         return false;
                                 // beta^2 is the exact flip u -> -u
                                 auto b2 = beta_element(T).to_model() *
                                           beta_element(T).to_model();
                                 if (!(b2 == action_scale(*T, F->neg(1)))) return false;
                                 // inverses: alpha_t alpha_{1/t} = beta^4 = gamma_s gamma_{-s}
                                 // = identity (invertibility witnesses)
                                 auto id = ModelOperator::identity(F->p(), q, T->model_dim());
                                 for (Fq t = 2; t < q; ++t) {
                                     if (F->inv(t) == 1 || F->inv(t) == 0) continue;
                                     if (!(alpha_t(T, t).to_model() *
                                               alpha_t(T, F->inv(t)).to_model() ==
                                           id))
                                         return false;
                                 }
                                 if (!(b2 * b2 == id)) return false;
                                 for (Fq ss = 1; ss < q; ++ss)
                                     if (!(gamma_s(T, ss).to_model() *
                                               gamma_s(T, F->neg(ss)).to_model() ==
                                           id))
                                         return false;
                             }
                             r.lhs = "all parameters exact";
                             return true;
                         });
        });
        pts.push_back([q]() {
            return timed("g_t matches the composite matrix action",
                         fmt_params({{"q", s(q)}, {"n", "1 and 2"}}), [&](CheckResult& r) {
                             auto F = field_for(q);
                             for (std::uint32_t n : {1u, 2u}) {
                                 auto W = n == 1 ? SymmetricForm::make(F, {1}, 1)
                                                 : form_for(F, 2);
                                 auto T = TensorSpace::make(F, 1, W);
                                 for (Fq t = 1; t < q; ++t)
                                     if (!(g_t(T, t).to_model() == g_t_predicted_model(*T, t)))
                                         return false;
                             }
                             r.lhs = "all t exact";
                             return true;
                         });
        });
        pts.push_back([q]() {
            return timed("PoissonDists matrices generate SL2", fmt_params({{"q", s(q)}}),
                         [&](CheckResult& r) {
                             auto F = field_for(q);
                             std::uint64_t order = sl2_matrix_closure_order(F);
                             std::uint64_t expect =
                                 static_cast<std::uint64_t>(q) * (q * q - 1);
                             r.lhs = s(order);
                             r.rhs = s(expect);
                             return order == expect;
                         });
        });
        pts.push_back([q]() {
            return timed("model closure: projective SL2 with Z/4 scalars",
                         fmt_params({{"q", s(q)}, {"n", "1"}}), [&](CheckResult& r) {
                             auto F = field_for(q);
                             auto T = TensorSpace::make_plain(F, 1);
                             auto cl = sl2_model_closure(T);
                             std::uint64_t expect =
                                 static_cast<std::uint64_t>(q) * (q * q - 1);
                             r.lhs = "order=" + s(cl.order) + ",scalars=" + s(cl.scalar_count) +
                                     ",projective=" + s(cl.projective_order);
                             r.rhs = "order=" + s(4 * expect) + ",scalars=4,projective=" +
                                     s(expect);
                             return cl.order == 4 * expect && cl.scalar_count == 4 &&
                                    cl.projective_order == expect;
                         });
        });
    }
    rep.results = run_points(std::move(pts), o.jobs);
    rep.total_ms = ms_since(t0);
    return rep;
}

// ---- criterion 5: appendix identity --------------------------------------

SuiteReport criterion_appendix(const SuiteOptions& o) {
    SuiteReport rep;
    rep.suite = "appendix";
    auto t0 = Clock::now();
    auto qs = grid_qs(o, {3, 5, 7, 9});
    std::vector<std::function<CheckResult()>> pts;
    for (auto q : qs) {
        struct FormCase {
            std::uint32_t n;
            bool minus;
        };
        for (auto fc :
             {FormCase{1, false}, FormCase{2, false}, FormCase{2, true}, FormCase{3, false}}) {
            pts.push_back([q, fc]() {
                std::string tag = fc.n % 2 ? "odd" : (fc.minus ? "minus" : "plus");
                return timed("g_t * alpha_t = gamma_{2/t} * beta (cleared) + constants",
                             fmt_params({{"q", s(q)}, {"form", tag + ":" + s(fc.n)}}),
                             [&](CheckResult& r) {
                                 auto F = field_for(q);
                                 auto W = fc.n == 1 ? SymmetricForm::make(F, {1}, 1)
                                                    : form_for(F, fc.n, fc.minus);
                                 auto T = TensorSpace::make(F, 1, W);
                                 std::uint32_t count = 0;
                                 for (Fq t = 2; t < q; ++t) {
                                     auto res = appendix_check(T, t);
                                     if (!res.star_identity || !res.constants_identity)
                                         return false;
                                     ++count;
                                 }
                                 r.lhs = s(count) + " values of t exact";
                                 return count > 0;
                             });
            });
        }
    }
    // normalized secondary check on the small grid
    pts.push_back([&o]() {
        return timed("normalized identity (secondary)", "q in {3,5}, n in {1,2}",
                     [&](CheckResult& r) {
                         for (std::uint32_t q : grid_qs(o, {3, 5}))
                             for (std::uint32_t n : {1u, 2u}) {
                                 auto F = field_for(q);
                                 auto W = n == 1 ? SymmetricForm::make(F, {1}, 1)
                                                 : form_for(F, n);
                                 auto T = TensorSpace::make(F, 1, W);
                                 for (Fq t = 2; t < q; ++t)
                                     if (!appendix_check_normalized(T, t)) return false;
                             }
                         r.lhs = "exact";
                         return true;
                     });
    });
    rep.results = run_points(std::move(pts), o.jobs);
    rep.total_ms = ms_since(t0);
    return rep;
}

// ---- criterion 6: gauss sums ---------------------------------------------

SuiteReport criterion_gauss(const SuiteOptions& o) {
    SuiteReport rep;
    rep.suite = "gauss-sums";
    auto t0 = Clock::now();
    std::vector<std::function<CheckResult()>> pts;
    pts.push_back([&o]() {
        return timed("gauss_sum(1)^2 = eps_q(-1) q", "q in {3,5,7,9,11,13,25,27}",
                     [&](CheckResult& r) {
                         for (auto q : grid_qs(o, {3, 5, 7, 9, 11, 13, 25, 27})) {
                             auto F = field_for(q);
                             auto g = gauss_sum(*F, 1);
                             auto expect = CycScalar::from_int(
                                 F->p(), q,
                                 static_cast<std::int64_t>(F->quad_char(F->neg(1))) * q);
                             if (!(g * g == expect)) return false;
                         }
                         r.lhs = "exact";
                         return true;
                     });
    });
    pts.push_back([]() {
        return timed("Hasse-Davenport lift", "(p,l) in {(3,2),(5,2)}", [&](CheckResult& r) {
            for (std::uint32_t p : {3u, 5u}) {
                auto Fp = FieldCtx::make(p, 1);
                auto Fq = FieldCtx::make(p, 2);
                auto lift = gauss_sum(*Fq, 1);
                auto base = gauss_sum(*Fp, 1);
                // (-1)^{l+1} (g_p)^l at l = 2
                if (!(lift == -(base * base))) return false;
            }
            r.lhs = "exact";
            return true;
        });
    });
    pts.push_back([&o]() {
        return timed("K(c) = eps_q(c)^n disc(B) gauss^n", "q in {3,5,7,9}, n in {1,2,3}",
                     [&](CheckResult& r) {
                         for (auto q : grid_qs(o, {3, 5, 7, 9})) {
                             auto F = field_for(q);
                             std::vector<SymmetricForm> forms = {
                                 SymmetricForm::make(F, {1}, 1),
                                 SymmetricForm::standard(F, FormType::Plus, 2),
                                 SymmetricForm::standard(F, FormType::Minus, 2),
                                 SymmetricForm::standard(F, FormType::Odd, 3)};
                             for (const auto& W : forms)
                                 for (Fq c = 0; c < q; ++c) {
                                     auto direct = k_constant(*F, W, c).value;
                                     auto closed = k_constant_closed(*F, W, c);
                                     if (!(direct == closed)) return false;
                                 }
                         }
                         r.lhs = "exact";
                         return true;
                     });
    });
    pts.push_back([]() {
        return timed("K depends only on the square class", "q=5, n=2", [&](CheckResult& r) {
            auto F = FieldCtx::make(5, 1);
            auto W = SymmetricForm::standard(F, FormType::Plus, 2);
            for (Fq c1 = 1; c1 < 5; ++c1)
                for (Fq c2 = 1; c2 < 5; ++c2)
                    if (F->quad_char(c1) == F->quad_char(c2)) {
                        if (!(k_constant(*F, W, c1).value == k_constant(*F, W, c2).value))
                            return false;
                    }
            r.lhs = "exact";
            return true;
        });
    });
    rep.results = run_points(std::move(pts), o.jobs);
    rep.total_ms = ms_since(t0);
    return rep;
}

// ---- criterion 7: orbit three-way agreement ------------------------------

SuiteReport criterion_orbit_threeway(const SuiteOptions& o) {
    SuiteReport rep;
    rep.suite = "orbit-threeway";
    auto t0 = Clock::now();
    std::vector<std::function<CheckResult()>> pts;
    struct SpCase {
        std::uint32_t q, N, n;
    };
    for (auto c : {SpCase{3, 1, 1}, SpCase{3, 2, 1}, SpCase{3, 2, 2}, SpCase{5, 1, 1}}) {
        if (!o.qs.empty() && std::find(o.qs.begin(), o.qs.end(), c.q) == o.qs.end()) continue;
        pts.push_back([c]() {
            return timed("Sp census: descriptors = closed form = burnside",
                         fmt_params({{"q", s(c.q)}, {"N", s(c.N)}, {"n", s(c.n)}}),
                         [&](CheckResult& r) {
                             auto F = field_for(c.q);
                             auto census =
                                 orbit_census(OrbitSide::Sp, F, c.N, c.n, std::nullopt, true);
                             std::ostringstream os;
                             os << census.descriptor_count << "/" << *census.closed_form << "/"
                                << *census.burnside;
                             r.lhs = os.str();
                             return census.closed_form && census.burnside &&
                                    census.descriptor_count == *census.closed_form &&
                                    census.descriptor_count == *census.burnside;
                         });
        });
    }
    struct OCase {
        std::uint32_t q, N, n;
        bool minus;
        std::uint64_t expect;
    };
    for (auto c : {OCase{3, 1, 4, false, 40}, OCase{3, 1, 5, false, 40}}) {
        if (!o.qs.empty() && std::find(o.qs.begin(), o.qs.end(), c.q) == o.qs.end()) continue;
        pts.push_back([c]() {
            std::string tag = c.n % 2 ? "odd" : (c.minus ? "minus" : "plus");
            return timed("O census: descriptors = closed form = burnside",
                         fmt_params({{"q", s(c.q)},
                                     {"N", s(c.N)},
                                     {"form", tag + ":" + s(c.n)},
                                     {"expect", s(c.expect)}}),
                         [&](CheckResult& r) {
                             auto F = field_for(c.q);
                             auto W = form_for(F, c.n, c.minus);
                             auto census = orbit_census(OrbitSide::O, F, c.N, c.n, W, true);
                             std::ostringstream os;
                             os << census.descriptor_count << "/" << *census.closed_form << "/"
                                << *census.burnside;
                             r.lhs = os.str();
                             r.rhs = s(c.expect);
                             return census.closed_form && census.burnside &&
                                    census.descriptor_count == BigInt(c.expect) &&
                                    *census.closed_form == BigInt(c.expect) &&
                                    *census.burnside == BigInt(c.expect);
                         });
        });
    }
    rep.results = run_points(std::move(pts), o.jobs);
    rep.total_ms = ms_since(t0);
    return rep;
}

// ---- criterion 8: polynomial identities ----------------------------------

SuiteReport criterion_poly_identities(const SuiteOptions& o) {
    SuiteReport rep;
    rep.suite = "polynomial-identities";
    auto t0 = Clock::now();
    std::vector<std::function<CheckResult()>> pts;
    pts.push_back([]() {
        return timed("product identity", "p<=5, 0<=b<r<=7", [&](CheckResult& r) {
            std::uint32_t count = 0;
            for (std::uint32_t p = 0; p <= 5; ++p)
                for (std::uint32_t rr = 1; rr <= 7; ++rr)
                    for (std::uint32_t b = 0; b < rr; ++b, ++count)
                        if (!lemma_identity_check(p, rr, b)) return false;
            r.lhs = s(count) + " cases exact";
            return true;
        });
    });
    pts.push_back([]() {
        return timed("tranche identity", "k,p<=5, b<=k<=r<=5", [&](CheckResult& r) {
            std::uint32_t count = 0;
            for (std::uint32_t p = 0; p <= 5; ++p)
                for (std::uint32_t rr = 0; rr <= 5; ++rr)
                    for (std::uint32_t b = 0; b <= rr; ++b)
                        for (std::uint32_t k = b; k <= rr && k <= 5; ++k, ++count)
                            if (!tranche_identity_check(k, p, b, rr)) return false;
            r.lhs = s(count) + " cases exact";
            return true;
        });
    });
    rep.results = run_points(std::move(pts), o.jobs);
    rep.total_ms = ms_since(t0);
    return rep;
}

// ---- criterion 9: dimension matching -------------------------------------

SuiteReport criterion_dimension_matching(const SuiteOptions& o) {
    SuiteReport rep;
    rep.suite = "dimension-matching";
    auto t0 = Clock::now();
    auto qs = grid_qs(o, {3, 5});
    std::vector<std::function<CheckResult()>> pts;
    for (auto q : qs) {
        // symplectic stable side: W of dimension n <= N <= 3, all types
        struct WCase {
            GroupKind kind;
            std::uint32_t n;
        };
        for (auto w : {WCase{GroupKind::OddO, 1}, WCase{GroupKind::PlusO, 2},
                       WCase{GroupKind::MinusO, 2}, WCase{GroupKind::OddO, 3}}) {
            pts.push_back([q, w]() {
                std::string kind = w.kind == GroupKind::OddO
                                       ? "odd"
                                       : (w.kind == GroupKind::PlusO ? "plus" : "minus");
                return timed("End dim + ell-shifted Hom dims (Sp side)",
                             fmt_params({{"q", s(q)}, {"form", kind + ":" + s(w.n)}}),
                             [&](CheckResult& r) {
                                 std::uint32_t h = witt_index_of_kind(w.kind, w.n);
                                 for (std::uint32_t ell = 0; ell <= h; ++ell) {
                                     auto rep2 = hom_dimension_identity(w.kind, w.n, ell, q);
                                     if (!rep2.pass) return false;
                                     if (ell == 0) {
                                         std::ostringstream os;
                                         os << rep2.lhs_at_q;
                                         r.lhs = os.str();
                                     }
                                 }
                                 return true;
                             });
            });
        }
        // orthogonal stable side: N with 2N <= h_W for some n <= 6
        for (std::uint32_t N : {1u}) {
            pts.push_back([q, N]() {
                return timed("End dim + ell-shifted Hom dims (O side)",
                             fmt_params({{"q", s(q)},
                                         {"N", s(N)},
                                         {"W", "n in {4+,5,6+,6-}"}}),
                             [&](CheckResult& r) {
                                 for (std::uint32_t ell = 0; ell <= N; ++ell) {
                                     auto rep2 =
                                         hom_dimension_identity(GroupKind::Sp, 2 * N, ell, q);
                                     if (!rep2.pass) return false;
                                     if (ell == 0) {
                                         std::ostringstream os;
                                         os << rep2.lhs_at_q;
                                         r.lhs = os.str();
                                     }
                                 }
                                 return true;
                             });
            });
        }
    }
    // cross-check the ell = 0 census against Burnside at the smallest cases
    pts.push_back([]() {
        return timed("census vs burnside cross-check", "q=3: plus:2 (N=2), 2N=2 (n=5)",
                     [&](CheckResult& r) {
                         auto F = FieldCtx::make(3, 1);
                         auto thm = theorem_dimension_check(GroupKind::PlusO, 2, 3);
                         auto census = orbit_census(OrbitSide::Sp, F, 2, 2, std::nullopt, true);
                         if (thm.lhs_at_q != *census.burnside) return false;
                         auto W5 = SymmetricForm::standard(F, FormType::Odd, 5);
                         auto thm2 = theorem_dimension_check(GroupKind::Sp, 2, 3);
                         auto census2 = orbit_census(OrbitSide::O, F, 1, 5, W5, true);
                         if (thm2.lhs_at_q != *census2.burnside) return false;
                         r.lhs = "8 and 40 agree";
                         return true;
                     });
    });
    // degenerate boundary: n = 0 and N = 0 give 1 on both sides
    pts.push_back([]() {
        return timed("degenerate boundary", "n=0 / N=0", [&](CheckResult& r) {
            auto a = theorem_dimension_check(GroupKind::PlusO, 0, 3);
            auto b = theorem_dimension_check(GroupKind::Sp, 0, 3);
            r.lhs = "1/1";
            return a.pass && b.pass && a.lhs_at_q == 1 && b.lhs_at_q == 1;
        });
    });
    rep.results = run_points(std::move(pts), o.jobs);
    rep.total_ms = ms_since(t0);
    return rep;
}

// ---- criterion 10: group orders ------------------------------------------

SuiteReport criterion_group_orders(const SuiteOptions& o) {
    SuiteReport rep;
    rep.suite = "group-orders";
    auto t0 = Clock::now();
    std::vector<std::function<CheckResult()>> pts;
    struct Case {
        GroupFamily fam;
        GroupKind kind;
        std::uint32_t q, param, size;
        const char* name;
    };
    std::vector<Case> cases = {
        {GroupFamily::Sp, GroupKind::Sp, 3, 1, 1, "Sp2(F3)"},
        {GroupFamily::Sp, GroupKind::Sp, 5, 1, 1, "Sp2(F5)"},
        {GroupFamily::Oodd, GroupKind::OddO, 3, 3, 1, "O3(F3)"},
        {GroupFamily::Oplus, GroupKind::PlusO, 3, 2, 1, "O2+(F3)"},
        {GroupFamily::Ominus, GroupKind::MinusO, 3, 2, 1, "O2-(F3)"},
        {GroupFamily::Oplus, GroupKind::PlusO, 3, 4, 2, "O4+(F3)"},
    };
    for (auto c : cases) {
        if (!o.qs.empty() && std::find(o.qs.begin(), o.qs.end(), c.q) == o.qs.end()) continue;
        pts.push_back([c]() {
            return timed("BFS closure order equals the order polynomial",
                         fmt_params({{"group", c.name}}), [&](CheckResult& r) {
                             auto F = field_for(c.q);
                             MatrixGroup G = build_group(c.fam, F, c.param);
                             BigInt expect = group_order(c.kind, c.size).eval(c.q);
                             r.lhs = s(G.order());
                             std::ostringstream os;
                             os << expect;
                             r.rhs = os.str();
                             return BigInt(G.order()) == expect;
                         });
        });
    }
    rep.results = run_points(std::move(pts), o.jobs);
    rep.total_ms = ms_since(t0);
    return rep;
}

std::vector<std::string> suite_names() {
    return {"all", "star", "generators", "appendix", "orbits", "identities"};
}

std::vector<SuiteReport> run_suite(const std::string& name, const SuiteOptions& o) {
    std::vector<SuiteReport> out;
    auto add = [&](SuiteReport r) { out.push_back(std::move(r)); };
    if (name == "star" || name == "all") add(criterion_star_homomorphism(o));
    if (name == "generators" || name == "all") {
        add(criterion_reflections(o));
        add(criterion_idempotents(o));
        add(criterion_sl2(o));
        add(criterion_gauss(o));
    }
    if (name == "appendix" || name == "all") add(criterion_appendix(o));
    if (name == "orbits" || name == "all") {
        add(criterion_orbit_threeway(o));
        add(criterion_group_orders(o));
    }
    if (name == "identities" || name == "all") {
        add(criterion_poly_identities(o));
        add(criterion_dimension_matching(o));
    }
    if (out.empty()) throw std::invalid_argument("unknown suite '" + name + "'");
    return out;
}

} // namespace finosc
