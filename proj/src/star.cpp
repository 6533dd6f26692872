#include "finosc/star.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "json.hpp"

namespace finosc {

namespace {

constexpr std::uint64_t kSaturate = 1ull << 62;
constexpr std::uint64_t kTableCap = 4u << 20;        // entries per lookup table
constexpr std::uint64_t kDenseBudget = 8ull << 20;   // int64 slots for dense star

std::uint64_t sat_pow(std::uint64_t base, std::uint32_t e, bool& exact) {
    std::uint64_t r = 1;
    exact = true;
    for (std::uint32_t i = 0; i < e; ++i) {
        if (r > kSaturate / base) {
            exact = false;
            return kSaturate;
        }
        r *= base;
    }
    return r;
}

// ---- ZCyc helpers ------------------------------------------------------

// Fold coordinate p-1 of each part (zeta^{p-1} = -(1 + ... + zeta^{p-2}))
// and drop an all-zero s-block.
void zc_canon(ZCyc& z, std::uint32_t p) {
    if (z.c.empty()) return;
    auto fold = [&](std::size_t off) {
        std::int64_t top = z.c[off + p - 1];
        if (top) {
            for (std::uint32_t i = 0; i + 1 < p; ++i) z.c[off + i] -= top;
            z.c[off + p - 1] = 0;
        }
    };
    fold(0);
    if (z.c.size() > p) {
        fold(p);
        bool root_zero = true;
        for (std::uint32_t i = 0; i < p; ++i)
            if (z.c[p + i]) {
                root_zero = false;
                break;
            }
        if (root_zero) z.c.resize(p);
    }
}

ZCyc zc_mul(const ZCyc& a, const ZCyc& b, std::uint32_t p, std::uint32_t q) {
    const bool ra = a.c.size() > p, rb = b.c.size() > p;
    ZCyc out;
    out.c.assign((ra || rb) ? 2 * p : p, 0);
    auto conv_into = [&](std::size_t ao, std::size_t bo, std::size_t dst, std::int64_t f) {
        for (std::uint32_t i = 0; i < p; ++i) {
            std::int64_t av = a.c[ao + i];
            if (!av) continue;
            for (std::uint32_t j = 0; j < p; ++j) {
                std::int64_t bv = b.c[bo + j];
                if (!bv) continue;
                std::uint32_t k = i + j;
                if (k >= p) k -= p;
                out.c[dst + k] += f * av * bv;
            }
        }
    };
    conv_into(0, 0, 0, 1);
    if (ra && rb) conv_into(p, p, 0, static_cast<std::int64_t>(q));
    if (ra) conv_into(p, 0, p, 1);
    if (rb) conv_into(0, p, p, 1);
    zc_canon(out, p);
    return out;
}

Rational rational_gcd(const Rational& a, const Rational& b) {
    if (a == 0) return b < 0 ? Rational(-b) : b;
    if (b == 0) return a < 0 ? Rational(-a) : a;
    BigInt na = numerator(a), nb = numerator(b);
    BigInt da = denominator(a), db = denominator(b);
    if (na < 0) na = -na;
    if (nb < 0) nb = -nb;
    BigInt g = gcd(na, nb);
    BigInt l = da / gcd(da, db) * db;
    return Rational(g, l);
}

std::int64_t to_i64(const BigInt& v) {
    if (v > std::numeric_limits<std::int64_t>::max() ||
        v < std::numeric_limits<std::int64_t>::min())
        throw std::overflow_error("integer coefficient exceeds 64 bits");
    return static_cast<std::int64_t>(v);
}

// Factor a scalar as rational * integral cyclotomic.
std::pair<Rational, ZCyc> cyc_factor(const CycScalar& s) {
    const std::uint32_t p = s.p();
    std::vector<Rational> coords(s.base().begin(), s.base().end());
    const bool root = s.has_root_part();
    if (root) coords.insert(coords.end(), s.root().begin(), s.root().end());
    BigInt L = 1;
    bool all_zero = true;
    for (const auto& r : coords) {
        if (r == 0) continue;
        all_zero = false;
        BigInt d = denominator(r);
        L = L / gcd(L, d) * d;
    }
    if (all_zero) return {Rational(0), ZCyc{}};
    std::vector<BigInt> ints(coords.size());
    BigInt G = 0;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        ints[i] = numerator(coords[i]) * (L / denominator(coords[i]));
        BigInt a = ints[i] < 0 ? BigInt(-ints[i]) : ints[i];
        G = gcd(G, a);
    }
    ZCyc z;
    z.c.assign(root ? 2 * p : p, 0);
    for (std::size_t i = 0; i < coords.size(); ++i) {
        std::size_t part = i / (p - 1), idx = i % (p - 1);
        z.c[part * p + idx] = to_i64(ints[i] / G);
    }
    return {Rational(G, L), z};
}

CycScalar cyc_from_z(std::uint32_t p, std::uint32_t q, const Rational& scale, const ZCyc& z,
                     std::uint32_t zeta_shift = 0) {
    std::vector<Rational> base(p, Rational(0)), root;
    const bool has_root = z.c.size() > p;
    if (has_root) root.assign(p, Rational(0));
    for (std::uint32_t i = 0; i < p && i < z.c.size(); ++i)
        if (z.c[i]) base[(i + zeta_shift) % p] += Rational(z.c[i]) * scale;
    if (has_root)
        for (std::uint32_t i = 0; i < p; ++i)
            if (z.c[p + i]) root[(i + zeta_shift) % p] += Rational(z.c[p + i]) * scale;
    return CycScalar::from_coords(p, q, std::move(base), std::move(root));
}

struct MonoView {
    bool ok = false;
    std::vector<std::uint8_t> exp;
    std::vector<std::int8_t> sign;
    std::vector<std::uint8_t> is_root;
};

MonoView mono_view(const std::vector<ZCyc>& zs, std::uint32_t p) {
    MonoView m;
    m.exp.reserve(zs.size());
    m.sign.reserve(zs.size());
    m.is_root.reserve(zs.size());
    for (const auto& z : zs) {
        int found = 0;
        std::uint8_t e = 0, r = 0;
        std::int8_t s = 0;
        for (std::size_t i = 0; i < z.c.size(); ++i) {
            if (!z.c[i]) continue;
            if (++found > 1 || (z.c[i] != 1 && z.c[i] != -1)) return m;
            e = static_cast<std::uint8_t>(i % p);
            r = static_cast<std::uint8_t>(i / p);
            s = static_cast<std::int8_t>(z.c[i]);
        }
        if (found == 0) return m; // zero term should not occur post-normalise
        m.exp.push_back(e);
        m.sign.push_back(s);
        m.is_root.push_back(r);
    }
    m.ok = true;
    return m;
}

} // namespace

// ---- TensorSpace -------------------------------------------------------

TensorSpacePtr TensorSpace::make(FieldPtr ctx, std::uint32_t N, SymmetricForm W) {
    if (N == 0) throw std::invalid_argument("symplectic rank must be positive");
    if (W.n() == 0) throw std::invalid_argument("W must have positive dimension");
    auto T = std::shared_ptr<TensorSpace>(new TensorSpace());
    T->ctx_ = std::move(ctx);
    T->N_ = N;
    T->n_ = W.n();
    T->W_ = std::move(W);
    const std::uint32_t q = T->ctx_->q();
    bool exact = true;
    T->wcard_ = sat_pow(q, T->n_, exact);
    if (!exact) throw SizeLimitError("tensor space exceeds the desk-scale limit");
    T->points_ = sat_pow(q, 2 * N * T->n_, T->points_exact_);
    T->model_dim_ = sat_pow(q, N * T->n_, T->model_exact_);

    const std::uint64_t w = T->wcard_;
    auto digits = [&](std::uint64_t u) {
        std::vector<Fq> d(T->n_);
        for (std::uint32_t i = 0; i < T->n_; ++i) {
            d[i] = static_cast<Fq>(u % q);
            u /= q;
        }
        return d;
    };
    if (w <= kTableCap) {
        T->qtab_.resize(w);
        std::vector<std::vector<Fq>> dec(w);
        for (std::uint64_t u = 0; u < w; ++u) dec[u] = digits(u);
        for (std::uint64_t u = 0; u < w; ++u)
            T->qtab_[u] = static_cast<std::uint16_t>(T->W_.eval(dec[u], dec[u]));
        if (w * w <= kTableCap) {
            T->btab_.resize(w * w);
            T->addw_.resize(w * w);
            for (std::uint64_t u = 0; u < w; ++u) {
                for (std::uint64_t v = 0; v < w; ++v) {
                    T->btab_[u * w + v] = static_cast<std::uint16_t>(T->W_.eval(dec[u], dec[v]));
                    std::uint64_t s = 0;
                    for (std::uint32_t i = T->n_; i-- > 0;)
                        s = s * q + T->ctx_->add(dec[u][i], dec[v][i]);
                    T->addw_[u * w + v] = static_cast<std::uint32_t>(s);
                }
            }
        }
    }
    return T;
}

TensorSpacePtr TensorSpace::make_plain(FieldPtr ctx, std::uint32_t N) {
    auto W = SymmetricForm::make(ctx, {1}, 1);
    return make(std::move(ctx), N, std::move(W));
}

Fq TensorSpace::w_add(std::uint64_t u, std::uint64_t v) const {
    return static_cast<Fq>(w_add_code(u, v));
}

std::uint64_t TensorSpace::w_add_code(std::uint64_t u, std::uint64_t v) const {
    if (!addw_.empty()) return addw_[u * wcard_ + v];
    const std::uint32_t q = ctx_->q();
    std::uint64_t s = 0, m = 1;
    for (std::uint32_t i = 0; i < n_; ++i) {
        s += m * ctx_->add(static_cast<Fq>(u % q), static_cast<Fq>(v % q));
        u /= q;
        v /= q;
        m *= q;
    }
    return s;
}

Fq TensorSpace::b_form(std::uint64_t u, std::uint64_t v) const {
    if (!btab_.empty()) return btab_[u * wcard_ + v];
    const std::uint32_t q = ctx_->q();
    std::vector<Fq> du(n_), dv(n_);
    for (std::uint32_t i = 0; i < n_; ++i) {
        du[i] = static_cast<Fq>(u % q);
        u /= q;
        dv[i] = static_cast<Fq>(v % q);
        v /= q;
    }
    return W_.eval(du, dv);
}

Fq TensorSpace::b_qf(std::uint64_t u) const {
    if (!qtab_.empty()) return qtab_[u];
    return b_form(u, u);
}

std::uint64_t TensorSpace::w_scale_code(Fq c, std::uint64_t u) const {
    const std::uint32_t q = ctx_->q();
    std::uint64_t s = 0, m = 1;
    for (std::uint32_t i = 0; i < n_; ++i) {
        s += m * ctx_->mul(c, static_cast<Fq>(u % q));
        u /= q;
        m *= q;
    }
    return s;
}

std::vector<std::uint64_t> TensorSpace::decode_blocks(std::uint64_t code,
                                                      std::uint32_t nblocks) const {
    std::vector<std::uint64_t> b(nblocks);
    for (std::uint32_t i = 0; i < nblocks; ++i) {
        b[i] = code % wcard_;
        code /= wcard_;
    }
    return b;
}

std::uint64_t TensorSpace::encode_blocks(const std::vector<std::uint64_t>& blocks) const {
    std::uint64_t code = 0;
    for (std::size_t i = blocks.size(); i-- > 0;) code = code * wcard_ + blocks[i];
    return code;
}

Fq TensorSpace::symp_eval_blocks(const std::uint64_t* x, const std::uint64_t* y) const {
    const auto& c = *ctx_;
    Fq acc = 0;
    for (std::uint32_t i = 0; i < N_; ++i) {
        acc = c.add(acc, b_form(x[i], y[N_ + i]));
        acc = c.sub(acc, b_form(x[N_ + i], y[i]));
    }
    return acc;
}

std::vector<Fq> TensorSpace::coords_of(std::uint64_t code) const {
    const std::uint32_t q = ctx_->q();
    std::vector<Fq> out(2 * N_ * n_);
    for (std::uint32_t i = 0; i < 2 * N_ * n_; ++i) {
        out[i] = static_cast<Fq>(code % q);
        code /= q;
    }
    return out;
}

std::uint64_t TensorSpace::code_of_coords(const std::vector<Fq>& coords) const {
    const std::uint32_t q = ctx_->q();
    if (coords.size() != 2ull * N_ * n_) throw std::invalid_argument("coordinate length mismatch");
    std::uint64_t code = 0;
    for (std::size_t i = coords.size(); i-- > 0;) {
        if (coords[i] >= q) throw std::invalid_argument("coordinate out of range");
        code = code * q + coords[i];
    }
    return code;
}

bool TensorSpace::same_space(const TensorSpace& o) const {
    return ctx_->q() == o.ctx_->q() && N_ == o.N_ && W_ == o.W_;
}

// ---- StarElement -------------------------------------------------------

StarElement StarElement::zero(TensorSpacePtr space, Fq a) {
    if (a == 0) throw std::domain_error("trivial character");
    StarElement e;
    e.space_ = std::move(space);
    e.char_a_ = a;
    return e;
}

StarElement StarElement::basis(TensorSpacePtr space, std::uint64_t code, Fq a) {
    StarElement e = zero(std::move(space), a);
    const std::uint32_t p = e.space_->ctx()->p();
    ZCyc z;
    z.c.assign(p, 0);
    z.c[0] = 1;
    e.codes_.push_back(code);
    e.zs_.push_back(std::move(z));
    return e;
}

StarElement StarElement::from_terms(
    TensorSpacePtr space, Fq a,
    const std::vector<std::pair<std::uint64_t, CycScalar>>& terms) {
    StarElement e = zero(std::move(space), a);
    std::map<std::uint64_t, CycScalar> acc;
    for (const auto& [code, s] : terms) {
        auto it = acc.find(code);
        if (it == acc.end())
            acc.emplace(code, s);
        else
            it->second = it->second + s;
    }
    std::vector<Rational> scales;
    std::vector<ZCyc> zs;
    std::vector<std::uint64_t> codes;
    for (auto& [code, s] : acc) {
        auto [r, z] = cyc_factor(s);
        if (r == 0) continue;
        codes.push_back(code);
        scales.push_back(r);
        zs.push_back(std::move(z));
    }
    if (codes.empty()) return e;
    Rational g = 0;
    for (const auto& r : scales) g = rational_gcd(g, r);
    for (std::size_t i = 0; i < codes.size(); ++i) {
        Rational m = scales[i] / g; // integer by construction of the gcd
        std::int64_t mi = to_i64(numerator(m));
        for (auto& v : zs[i].c) v *= mi;
    }
    e.scale_ = g;
    e.codes_ = std::move(codes);
    e.zs_ = std::move(zs);
    e.normalize();
    return e;
}

StarElement StarElement::from_zeta_monomials(
    TensorSpacePtr space, Fq a, std::vector<std::pair<std::uint64_t, std::uint32_t>> terms) {
    StarElement e = zero(std::move(space), a);
    const std::uint32_t p = e.space_->ctx()->p();
    std::sort(terms.begin(), terms.end());
    e.codes_.reserve(terms.size());
    e.zs_.reserve(terms.size());
    for (std::size_t i = 0; i < terms.size();) {
        ZCyc z;
        z.c.assign(p, 0);
        std::uint64_t code = terms[i].first;
        for (; i < terms.size() && terms[i].first == code; ++i) z.c[terms[i].second % p] += 1;
        e.codes_.push_back(code);
        e.zs_.push_back(std::move(z));
    }
    e.normalize();
    return e;
}

void StarElement::normalize() {
    const std::uint32_t p = space_->ctx()->p();
    std::vector<std::uint64_t> codes;
    std::vector<ZCyc> zs;
    codes.reserve(codes_.size());
    zs.reserve(zs_.size());
    for (std::size_t i = 0; i < codes_.size(); ++i) {
        zc_canon(zs_[i], p);
        if (zs_[i].is_zero()) continue;
        codes.push_back(codes_[i]);
        zs.push_back(std::move(zs_[i]));
    }
    codes_ = std::move(codes);
    zs_ = std::move(zs);
    if (codes_.empty() || scale_ == 0) {
        codes_.clear();
        zs_.clear();
        scale_ = 1;
        return;
    }
    std::int64_t g = 0;
    for (const auto& z : zs_) {
        for (auto v : z.c) g = std::gcd(g, v < 0 ? -v : v);
        if (g == 1) break;
    }
    std::int64_t sign = 0;
    for (auto v : zs_.front().c)
        if (v) {
            sign = v < 0 ? -1 : 1;
            break;
        }
    std::int64_t f = g * sign;
    if (f != 1) {
        for (auto& z : zs_)
            for (auto& v : z.c) v /= f;
        scale_ *= Rational(f);
    }
}

CycScalar StarElement::coeff(std::uint64_t code) const {
    auto it = std::lower_bound(codes_.begin(), codes_.end(), code);
    const std::uint32_t p = space_->ctx()->p(), q = space_->ctx()->q();
    if (it == codes_.end() || *it != code) return CycScalar::zero(p, q);
    return cyc_from_z(p, q, scale_, zs_[static_cast<std::size_t>(it - codes_.begin())]);
}

CycScalar StarElement::coeff_at(std::size_t index) const {
    return cyc_from_z(space_->ctx()->p(), space_->ctx()->q(), scale_, zs_.at(index));
}

StarElement StarElement::operator+(const StarElement& o) const {
    if (!space_->same_space(*o.space_)) throw std::invalid_argument("space mismatch");
    if (char_a_ != o.char_a_) throw std::invalid_argument("character mismatch");
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    StarElement r = zero(space_, char_a_);
    Rational g = rational_gcd(scale_, o.scale_);
    std::int64_t fa = to_i64(numerator(Rational(scale_ / g)));
    std::int64_t fb = to_i64(numerator(Rational(o.scale_ / g)));
    r.scale_ = g;
    std::size_t i = 0, j = 0;
    auto scaled_z = [](const ZCyc& z, std::int64_t f) {
        ZCyc out = z;
        for (auto& v : out.c) v *= f;
        return out;
    };
    while (i < codes_.size() || j < o.codes_.size()) {
        if (j == o.codes_.size() || (i < codes_.size() && codes_[i] < o.codes_[j])) {
            r.codes_.push_back(codes_[i]);
            r.zs_.push_back(scaled_z(zs_[i], fa));
            ++i;
        } else if (i == codes_.size() || o.codes_[j] < codes_[i]) {
            r.codes_.push_back(o.codes_[j]);
            r.zs_.push_back(scaled_z(o.zs_[j], fb));
            ++j;
        } else {
            ZCyc za = scaled_z(zs_[i], fa);
            ZCyc zb = scaled_z(o.zs_[j], fb);
            if (za.c.size() < zb.c.size()) std::swap(za, zb);
            for (std::size_t k = 0; k < zb.c.size(); ++k) za.c[k] += zb.c[k];
            r.codes_.push_back(codes_[i]);
            r.zs_.push_back(std::move(za));
            ++i;
            ++j;
        }
    }
    r.normalize();
    return r;
}

StarElement StarElement::operator-() const {
    StarElement r = *this;
    r.scale_ = -r.scale_;
    r.normalize();
    return r;
}

StarElement StarElement::operator-(const StarElement& o) const { return *this + (-o); }

StarElement StarElement::scaled(const Rational& r) const {
    StarElement out = *this;
    out.scale_ *= r;
    out.normalize();
    return out;
}

StarElement StarElement::scaled_cyc(const CycScalar& s) const {
    auto [r, zf] = cyc_factor(s);
    if (r == 0) return zero(space_, char_a_);
    StarElement out = zero(space_, char_a_);
    out.scale_ = scale_ * r;
    out.codes_ = codes_;
    out.zs_.reserve(zs_.size());
    const std::uint32_t p = space_->ctx()->p(), q = space_->ctx()->q();
    for (const auto& z : zs_) out.zs_.push_back(zc_mul(z, zf, p, q));
    out.normalize();
    return out;
}

StarElement StarElement::div_by_power_of_q(std::uint32_t k) const {
    Rational f = 1;
    for (std::uint32_t i = 0; i < k; ++i) f /= space_->ctx()->q();
    return scaled(f);
}

bool StarElement::operator==(const StarElement& o) const {
    if (!space_->same_space(*o.space_) || char_a_ != o.char_a_) return false;
    if (scale_ != o.scale_ || codes_ != o.codes_) return false;
    for (std::size_t i = 0; i < zs_.size(); ++i) {
        const auto& a = zs_[i].c;
        const auto& b = o.zs_[i].c;
        const std::size_t m = std::max(a.size(), b.size());
        for (std::size_t k = 0; k < m; ++k) {
            std::int64_t va = k < a.size() ? a[k] : 0;
            std::int64_t vb = k < b.size() ? b[k] : 0;
            if (va != vb) return false;
        }
    }
    return true;
}

CycScalar StarElement::trace() const {
    const std::uint32_t q = space_->ctx()->q();
    BigInt md = 1;
    for (std::uint32_t i = 0; i < space_->model_rank(); ++i) md *= q;
    return coeff(0) * Rational(md);
}

std::vector<std::pair<std::uint64_t, CycScalar>> StarElement::apply(
    std::uint64_t model_code) const {
    const auto& T = *space_;
    const auto& c = *T.ctx();
    const std::uint32_t p = c.p(), q = c.q(), N = T.N();
    auto xb = T.decode_blocks(model_code, N);
    std::map<std::uint64_t, CycScalar> acc;
    for (std::size_t t = 0; t < codes_.size(); ++t) {
        auto vb = T.decode_blocks(codes_[t], 2 * N);
        Fq s2 = 0, s1 = 0;
        for (std::uint32_t i = 0; i < N; ++i) {
            s2 = c.add(s2, T.b_form(vb[i], vb[N + i]));
            s1 = c.add(s1, T.b_form(vb[i], xb[i]));
        }
        Fq arg = c.add(s1, c.half(s2));
        std::uint32_t e = c.trace(c.mul(char_a_, arg));
        std::vector<std::uint64_t> out(N);
        for (std::uint32_t i = 0; i < N; ++i) out[i] = T.w_add_code(vb[N + i], xb[i]);
        std::uint64_t out_code = 0;
        for (std::uint32_t i = N; i-- > 0;) out_code = out_code * T.wcard() + out[i];
        CycScalar val = cyc_from_z(p, q, scale_, zs_[t], e);
        auto it = acc.find(out_code);
        if (it == acc.end())
            acc.emplace(out_code, val);
        else
            it->second = it->second + val;
    }
    std::vector<std::pair<std::uint64_t, CycScalar>> out;
    for (auto& [k, v] : acc)
        if (!v.is_zero()) out.emplace_back(k, v);
    return out;
}

ModelOperator StarElement::to_model(std::uint64_t max_dim) const {
    const auto& T = *space_;
    if (!T.model_dim_exact() || T.model_dim() > max_dim)
        throw SizeLimitError("model dimension exceeds the dense-materialisation limit");
    const std::uint32_t p = T.ctx()->p(), q = T.ctx()->q();
    const std::uint64_t dim = T.model_dim();
    ModelOperator M(p, q, dim);
    for (std::uint64_t x = 0; x < dim; ++x) {
        for (auto& [out, val] : apply(x)) M.at(out, x) = M.at(out, x) + val;
    }
    return M;
}

std::string StarElement::to_json_string() const {
    nlohmann::json j;
    const auto& T = *space_;
    j["space"] = {{"q", T.ctx()->q()},
                  {"p", T.ctx()->p()},
                  {"N", T.N()},
                  {"n", T.n()},
                  {"form", nlohmann::json::array()},
                  {"type", form_type_name(T.W().type())}};
    for (std::uint32_t i = 0; i < T.n(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::uint32_t k = 0; k < T.n(); ++k) row.push_back(T.W().gram(i, k));
        j["space"]["form"].push_back(row);
    }
    j["char"] = char_a_;
    j["terms"] = nlohmann::json::array();
    for (std::size_t i = 0; i < codes_.size(); ++i) {
        nlohmann::json term;
        term["vec"] = T.coords_of(codes_[i]);
        term["coeff"] = coeff_at(i).to_string();
        j["terms"].push_back(term);
    }
    return j.dump();
}

// ---- star product ------------------------------------------------------

StarElement star(const StarElement& x, const StarElement& y) {
    if (!x.space_->same_space(*y.space_)) throw std::invalid_argument("space mismatch");
    if (x.char_a_ != y.char_a_) throw std::invalid_argument("character mismatch");
    const auto& T = *x.space_;
    const auto& c = *T.ctx();
    const std::uint32_t p = c.p(), q = c.q(), N = T.N();
    StarElement r = StarElement::zero(x.space_, x.char_a_);
    if (x.is_zero() || y.is_zero()) return r;

    // psi_a(1/2 * s) exponent per field value s
    std::vector<std::uint8_t> psi_exp(q);
    for (Fq s = 0; s < q; ++s)
        psi_exp[s] = static_cast<std::uint8_t>(c.trace(c.mul(x.char_a_, c.half(s))));

    const std::size_t nx = x.codes_.size(), ny = y.codes_.size();
    std::vector<std::uint64_t> xb(nx * 2 * N), yb(ny * 2 * N);
    for (std::size_t i = 0; i < nx; ++i) {
        auto b = T.decode_blocks(x.codes_[i], 2 * N);
        std::copy(b.begin(), b.end(), xb.begin() + i * 2 * N);
    }
    for (std::size_t j = 0; j < ny; ++j) {
        auto b = T.decode_blocks(y.codes_[j], 2 * N);
        std::copy(b.begin(), b.end(), yb.begin() + j * 2 * N);
    }

    MonoView mx = mono_view(x.zs_, p);
    MonoView my = mono_view(y.zs_, p);
    const bool mono = mx.ok && my.ok;
    bool any_root = false;
    for (const auto& z : x.zs_) any_root |= z.has_root(p);
    for (const auto& z : y.zs_) any_root |= z.has_root(p);
    const std::uint32_t stride = any_root ? 2 * p : p;

    const std::uint64_t P = T.point_count();
    const bool dense = T.point_count_exact() && P <= kDenseBudget / stride;

    auto emit_general = [&](std::int64_t* slot, const ZCyc& za, const ZCyc& zb,
                            std::uint32_t e) {
        for (std::size_t i = 0; i < za.c.size(); ++i) {
            std::int64_t av = za.c[i];
            if (!av) continue;
            const bool ra = i >= p;
            const std::uint32_t ei = static_cast<std::uint32_t>(ra ? i - p : i);
            for (std::size_t j = 0; j < zb.c.size(); ++j) {
                std::int64_t bv = zb.c[j];
                if (!bv) continue;
                const bool rb = j >= p;
                std::uint32_t ej = static_cast<std::uint32_t>(rb ? j - p : j);
                std::uint32_t k = ei + ej + e;
                k %= p;
                if (ra && rb)
                    slot[k] += av * bv * static_cast<std::int64_t>(q);
                else if (ra || rb)
                    slot[p + k] += av * bv;
                else
                    slot[k] += av * bv;
            }
        }
    };

    std::vector<std::int64_t> acc;
    std::unordered_map<std::uint64_t, ZCyc> sparse;
    if (dense)
        acc.assign(static_cast<std::size_t>(P) * stride, 0);
    else
        sparse.reserve(std::min<std::size_t>(nx * ny, 1u << 20));

    std::vector<std::uint64_t> out_blocks(2 * N);
    for (std::size_t i = 0; i < nx; ++i) {
        const std::uint64_t* xblk = &xb[i * 2 * N];
        for (std::size_t j = 0; j < ny; ++j) {
            const std::uint64_t* yblk = &yb[j * 2 * N];
            Fq sval = 0;
            std::uint64_t out_code = 0, mult = 1;
            for (std::uint32_t k2 = 0; k2 < N; ++k2) {
                sval = c.add(sval, T.b_form(xblk[k2], yblk[N + k2]));
                sval = c.sub(sval, T.b_form(xblk[N + k2], yblk[k2]));
            }
            for (std::uint32_t k2 = 0; k2 < 2 * N; ++k2) {
                out_code += mult * T.w_add_code(xblk[k2], yblk[k2]);
                mult *= T.wcard();
            }
            const std::uint32_t e = psi_exp[sval];
            std::int64_t* slot;
            if (dense) {
                slot = acc.data() + out_code * stride;
            } else {
                auto [it, inserted] = sparse.try_emplace(out_code);
                if (inserted) it->second.c.assign(stride, 0);
                slot = it->second.c.data();
            }
            if (mono) {
                std::uint32_t k = static_cast<std::uint32_t>(mx.exp[i]) + my.exp[j] + e;
                if (k >= p) k -= p;
                if (k >= p) k -= p;
                const std::int64_t sgn =
                    static_cast<std::int64_t>(mx.sign[i]) * my.sign[j];
                if (mx.is_root[i] && my.is_root[j])
                    slot[k] += sgn * static_cast<std::int64_t>(q);
                else if (mx.is_root[i] || my.is_root[j])
                    slot[p + k] += sgn;
                else
                    slot[k] += sgn;
            } else {
                emit_general(slot, x.zs_[i], y.zs_[j], e);
            }
        }
    }

    r.scale_ = x.scale_ * y.scale_;
    if (dense) {
        for (std::uint64_t code = 0; code < P; ++code) {
            const std::int64_t* slot = acc.data() + code * stride;
            bool nz = false;
            for (std::uint32_t k = 0; k < stride; ++k)
                if (slot[k]) {
                    nz = true;
                    break;
                }
            if (!nz) continue;
            ZCyc z;
            z.c.assign(slot, slot + stride);
            r.codes_.push_back(code);
            r.zs_.push_back(std::move(z));
        }
    } else {
        std::vector<std::uint64_t> keys;
        keys.reserve(sparse.size());
        for (auto& [k, v] : sparse) keys.push_back(k);
        std::sort(keys.begin(), keys.end());
        for (auto k : keys) {
            ZCyc& z = sparse[k];
            if (z.is_zero()) continue;
            r.codes_.push_back(k);
            r.zs_.push_back(std::move(z));
        }
    }
    r.normalize();
    return r;
}

// ---- ModelOperator ----------------------------------------------------

ModelOperator ModelOperator::identity(std::uint32_t p, std::uint32_t q, std::uint64_t dim) {
    ModelOperator m(p, q, dim);
    for (std::uint64_t i = 0; i < dim; ++i) m.at(i, i) = CycScalar::one(p, q);
    return m;
}

ModelOperator ModelOperator::operator*(const ModelOperator& o) const {
    if (dim_ != o.dim_) throw std::invalid_argument("dimension mismatch");
    ModelOperator r(p_, q_, dim_);
    for (std::uint64_t i = 0; i < dim_; ++i) {
        for (std::uint64_t k = 0; k < dim_; ++k) {
            const CycScalar& a = at(i, k);
            if (a.is_zero()) continue;
            for (std::uint64_t j = 0; j < dim_; ++j) {
                const CycScalar& b = o.at(k, j);
                if (b.is_zero()) continue;
                r.at(i, j) = r.at(i, j) + a * b;
            }
        }
    }
    return r;
}

ModelOperator ModelOperator::operator*(const CycScalar& s) const {
    ModelOperator r(p_, q_, dim_);
    for (std::uint64_t i = 0; i < dim_ * dim_; ++i) r.m_[i] = m_[i] * s;
    return r;
}

bool ModelOperator::operator==(const ModelOperator& o) const {
    if (dim_ != o.dim_) return false;
    for (std::uint64_t i = 0; i < dim_ * dim_; ++i)
        if (!(m_[i] == o.m_[i])) return false;
    return true;
}

CycScalar ModelOperator::trace() const {
    CycScalar t = CycScalar::zero(p_, q_);
    for (std::uint64_t i = 0; i < dim_; ++i) t = t + at(i, i);
    return t;
}

std::uint64_t ModelOperator::rank() const {
    std::vector<CycScalar> m = m_;
    std::uint64_t rank = 0;
    for (std::uint64_t col = 0; col < dim_ && rank < dim_; ++col) {
        std::uint64_t piv = dim_;
        bool saw_nonzero = false;
        for (std::uint64_t r2 = rank; r2 < dim_ && piv == dim_; ++r2) {
            if (m[r2 * dim_ + col].is_zero()) continue;
            saw_nonzero = true;
            try {
                (void)m[r2 * dim_ + col].invert();
                piv = r2;
            } catch (const NonInvertibleError&) {
            }
        }
        if (piv == dim_) {
            if (saw_nonzero)
                throw NonInvertibleError("rank computation stuck on a zero divisor");
            continue;
        }
        for (std::uint64_t j = 0; j < dim_; ++j)
            std::swap(m[piv * dim_ + j], m[rank * dim_ + j]);
        CycScalar inv = m[rank * dim_ + col].invert();
        for (std::uint64_t j = 0; j < dim_; ++j)
            m[rank * dim_ + j] = m[rank * dim_ + j] * inv;
        for (std::uint64_t r2 = 0; r2 < dim_; ++r2) {
            if (r2 == rank || m[r2 * dim_ + col].is_zero()) continue;
            CycScalar f = m[r2 * dim_ + col];
            for (std::uint64_t j = 0; j < dim_; ++j)
                m[r2 * dim_ + j] = m[r2 * dim_ + j] - f * m[rank * dim_ + j];
        }
        ++rank;
    }
    return rank;
}

bool ModelOperator::is_invertible() const { return rank() == dim_; }

int ModelOperator::cmp(const ModelOperator& o) const {
    if (dim_ != o.dim_) return dim_ < o.dim_ ? -1 : 1;
    for (std::uint64_t i = 0; i < dim_ * dim_; ++i)
        if (int c = m_[i].cmp(o.m_[i])) return c;
    return 0;
}

// ---- Heisenberg --------------------------------------------------------

std::pair<CycScalar, std::uint64_t> heisenberg_apply(const TensorSpace& T, Fq a,
                                                     std::uint64_t vcode, Fq cc,
                                                     std::uint64_t model_code) {
    const auto& c = *T.ctx();
    const std::uint32_t N = T.N();
    auto vb = T.decode_blocks(vcode, 2 * N);
    auto xb = T.decode_blocks(model_code, N);
    Fq s1 = 0;
    for (std::uint32_t i = 0; i < N; ++i) s1 = c.add(s1, T.b_form(vb[i], xb[i]));
    Fq arg = c.add(cc, c.half(s1));
    CycScalar coeff = CycScalar::zeta_pow(c.p(), c.q(), c.trace(c.mul(a, arg)));
    std::uint64_t out = 0;
    for (std::uint32_t i = N; i-- > 0;) out = out * T.wcard() + T.w_add_code(vb[N + i], xb[i]);
    return {coeff, out};
}

std::pair<std::uint64_t, Fq> heisenberg_mul(const TensorSpace& T,
                                            std::pair<std::uint64_t, Fq> g2,
                                            std::pair<std::uint64_t, Fq> g1) {
    const auto& c = *T.ctx();
    const std::uint32_t N = T.N();
    auto v2 = T.decode_blocks(g2.first, 2 * N);
    auto v1 = T.decode_blocks(g1.first, 2 * N);
    Fq s = 0;
    for (std::uint32_t i = 0; i < N; ++i) s = c.add(s, T.b_form(v2[i], v1[N + i]));
    Fq cc = c.add(c.add(g1.second, g2.second), c.half(s));
    std::vector<std::uint64_t> sum(2 * N);
    for (std::uint32_t i = 0; i < 2 * N; ++i) sum[i] = T.w_add_code(v1[i], v2[i]);
    return {T.encode_blocks(sum), cc};
}

} // namespace finosc
