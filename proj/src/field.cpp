#include "finosc/field.hpp"

#include <algorithm>
#include <stdexcept>

namespace finosc {

namespace {

constexpr std::uint32_t kMaxQ = 2048; // table-driven arithmetic; desk scale

using Poly = std::vector<std::uint32_t>; // mod-p coefficients, constant first

Poly poly_trim(Poly f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

Poly poly_mul(const Poly& f, const Poly& g, std::uint32_t p) {
    if (f.empty() || g.empty()) return {};
    Poly h(f.size() + g.size() - 1, 0);
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j)
            h[i + j] = (h[i + j] + f[i] * g[j]) % p;
    return poly_trim(std::move(h));
}

// Remainder of f by monic divisor d.
Poly poly_mod(Poly f, const Poly& d, std::uint32_t p) {
    f = poly_trim(std::move(f));
    const std::size_t dd = d.size() - 1;
    while (f.size() > dd) {
        std::uint32_t c = f.back();
        std::size_t shift = f.size() - 1 - dd;
        for (std::size_t i = 0; i <= dd; ++i) {
            std::uint32_t t = (c * d[i]) % p;
            f[shift + i] = (f[shift + i] + p - t) % p;
        }
        f = poly_trim(std::move(f));
    }
    return f;
}

bool poly_divides(const Poly& d, const Poly& f, std::uint32_t p) {
    return poly_mod(f, d, p).empty();
}

// Irreducibility by trial division over all monic divisors of degree
// 1..deg/2; fine for the desk-scale degrees here.
bool is_irreducible(const Poly& f, std::uint32_t p) {
    const std::size_t deg = f.size() - 1;
    if (deg == 1) return true;
    for (std::size_t dd = 1; dd <= deg / 2; ++dd) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < dd; ++i) count *= p;
        for (std::uint64_t code = 0; code < count; ++code) {
            Poly d(dd + 1, 0);
            std::uint64_t m = code;
            for (std::size_t i = 0; i < dd; ++i) {
                d[i] = static_cast<std::uint32_t>(m % p);
                m /= p;
            }
            d[dd] = 1;
            if (poly_divides(d, f, p)) return false;
        }
    }
    return true;
}

} // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

FieldPtr FieldCtx::make(std::uint32_t p, std::uint32_t ell) {
    if (p % 2 == 0) throw std::invalid_argument("characteristic 2 is not supported");
    if (!is_prime(p)) throw std::invalid_argument("p is not prime");
    if (ell < 1) throw std::invalid_argument("ell must be positive");

    std::uint64_t q64 = 1;
    for (std::uint32_t i = 0; i < ell; ++i) q64 *= p;
    if (q64 > kMaxQ) throw SizeLimitError("field size exceeds the desk-scale limit");
    const std::uint32_t q = static_cast<std::uint32_t>(q64);

    auto ctx = std::shared_ptr<FieldCtx>(new FieldCtx());
    ctx->p_ = p;
    ctx->ell_ = ell;
    ctx->q_ = q;

    // Deterministic modulus: smallest packed code among monic irreducibles.
    Poly mod;
    for (std::uint32_t code = 0;; ++code) {
        Poly f(ell + 1, 0);
        std::uint32_t m = code;
        for (std::uint32_t i = 0; i < ell; ++i) {
            f[i] = m % p;
            m /= p;
        }
        f[ell] = 1;
        if (is_irreducible(f, p)) {
            mod = f;
            break;
        }
    }
    ctx->modulus_ = mod;

    auto decode = [&](Fq a) {
        Poly c(ell, 0);
        for (std::uint32_t i = 0; i < ell; ++i) {
            c[i] = a % p;
            a /= p;
        }
        return c;
    };
    auto encode = [&](const Poly& c) {
        Fq a = 0;
        for (std::uint32_t i = ell; i-- > 0;) a = a * p + (i < c.size() ? c[i] : 0);
        return a;
    };

    ctx->add_.resize(static_cast<std::size_t>(q) * q);
    ctx->mul_.resize(static_cast<std::size_t>(q) * q);
    ctx->neg_.resize(q);
    for (Fq a = 0; a < q; ++a) {
        Poly ca = decode(a);
        Poly cn(ell);
        for (std::uint32_t i = 0; i < ell; ++i) cn[i] = (p - ca[i]) % p;
        ctx->neg_[a] = encode(cn);
        for (Fq b = 0; b < q; ++b) {
            Poly cb = decode(b);
            Poly cs(ell);
            for (std::uint32_t i = 0; i < ell; ++i) cs[i] = (ca[i] + cb[i]) % p;
            ctx->add_[static_cast<std::size_t>(a) * q + b] = encode(cs);
            ctx->mul_[static_cast<std::size_t>(a) * q + b] =
                encode(poly_mod(poly_mul(poly_trim(ca), poly_trim(cb), p), mod, p));
        }
    }

    ctx->inv_.assign(q, 0);
    for (Fq a = 1; a < q; ++a) {
        if (ctx->inv_[a]) continue;
        for (Fq b = 1; b < q; ++b) {
            if (ctx->mul_[static_cast<std::size_t>(a) * q + b] == 1) {
                ctx->inv_[a] = b;
                ctx->inv_[b] = a;
                break;
            }
        }
    }
    ctx->inv2_ = ctx->inv_[ctx->from_int(2)]; // q odd, so 2 is invertible

    ctx->trace_.resize(q);
    ctx->norm_.resize(q);
    for (Fq a = 0; a < q; ++a) {
        Fq t = 0, frob = a;
        for (std::uint32_t i = 0; i < ell; ++i) {
            t = ctx->add_[static_cast<std::size_t>(t) * q + frob];
            frob = ctx->pow(frob, p);
        }
        ctx->trace_[a] = t; // lies in the prime subfield, code < p
        ctx->norm_[a] = ctx->pow(a, (q - 1) / (p - 1));
    }

    ctx->qchar_.resize(q);
    ctx->qchar_[0] = 0;
    const Fq minus_one = ctx->neg_[1];
    for (Fq a = 1; a < q; ++a) {
        Fq s = ctx->pow(a, (q - 1) / 2);
        ctx->qchar_[a] = (s == 1) ? 1 : (s == minus_one ? -1 : 0);
    }

    for (Fq g = 1; g < q; ++g) {
        std::uint32_t ord = 1;
        Fq x = g;
        while (x != 1) {
            x = ctx->mul_[static_cast<std::size_t>(x) * q + g];
            ++ord;
        }
        if (ord == q - 1) {
            ctx->generator_ = g;
            break;
        }
    }

    return ctx;
}

Fq FieldCtx::inv(Fq a) const {
    if (a == 0) throw std::domain_error("division by zero in F_q");
    return inv_[a];
}

Fq FieldCtx::pow(Fq a, std::uint64_t e) const {
    Fq r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

Fq FieldCtx::from_int(std::int64_t v) const {
    std::int64_t m = v % static_cast<std::int64_t>(p_);
    if (m < 0) m += p_;
    return static_cast<Fq>(m);
}

std::vector<std::uint32_t> FieldCtx::decode(Fq a) const {
    std::vector<std::uint32_t> c(ell_);
    for (std::uint32_t i = 0; i < ell_; ++i) {
        c[i] = a % p_;
        a /= p_;
    }
    return c;
}

Fq FieldCtx::encode(const std::vector<std::uint32_t>& c) const {
    Fq a = 0;
    for (std::uint32_t i = ell_; i-- > 0;) a = a * p_ + (i < c.size() ? c[i] % p_ : 0);
    return a;
}

std::string FieldCtx::modulus_string() const {
    std::string s;
    for (std::uint32_t d = ell_ + 1; d-- > 0;) {
        std::uint32_t c = modulus_[d];
        if (c == 0) continue;
        if (!s.empty()) s += " + ";
        if (d == 0) {
            s += std::to_string(c);
        } else {
            if (c != 1) s += std::to_string(c) + "*";
            s += (d == 1) ? "x" : "x^" + std::to_string(d);
        }
    }
    return s.empty() ? "0" : s;
}

} // namespace finosc
