#include "finosc/cyclotomic.hpp"

#include <sstream>
#include <stdexcept>

namespace finosc {

namespace {

// Reduce an unreduced coordinate vector (length up to 2p-3, exponents of
// zeta) modulo zeta^p = 1 and then Phi_p, producing length p-1.
std::vector<Rational> reduce_mod_phi(std::vector<Rational> v, std::uint32_t p) {
    if (v.size() > p) {
        for (std::size_t k = v.size(); k-- > p;) {
            if (v[k] != 0) v[k - p] += v[k];
            v[k] = 0;
        }
    }
    v.resize(p, Rational(0));
    if (v[p - 1] != 0) {
        // zeta^{p-1} = -(1 + zeta + ... + zeta^{p-2})
        for (std::uint32_t i = 0; i + 1 < p; ++i) v[i] -= v[p - 1];
        v[p - 1] = 0;
    }
    v.resize(p - 1);
    return v;
}

std::vector<Rational> vec_mul(const std::vector<Rational>& a,
                              const std::vector<Rational>& b, std::uint32_t p) {
    std::vector<Rational> c(2 * static_cast<std::size_t>(p), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (b[j] == 0) continue;
            c[i + j] += a[i] * b[j];
        }
    }
    return reduce_mod_phi(std::move(c), p);
}

bool vec_zero(const std::vector<Rational>& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

std::string rational_str(const Rational& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << "/" << denominator(r);
    return os.str();
}

std::string part_str(const std::vector<Rational>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        Rational c = v[i];
        bool neg = c < 0;
        if (s.empty()) {
            if (neg) s += "-";
        } else {
            s += neg ? " - " : " + ";
        }
        Rational ac = neg ? Rational(-c) : c;
        std::string cs = rational_str(ac);
        if (i == 0) {
            s += cs;
        } else {
            if (ac != 1) s += cs + "*";
            s += (i == 1) ? "z" : "z^" + std::to_string(i);
        }
    }
    return s.empty() ? "0" : s;
}

} // namespace

CycScalar CycScalar::zero(std::uint32_t p, std::uint32_t q) { return CycScalar(p, q); }

CycScalar CycScalar::one(std::uint32_t p, std::uint32_t q) {
    CycScalar r(p, q);
    r.base_[0] = 1;
    return r;
}

CycScalar CycScalar::from_rational(std::uint32_t p, std::uint32_t q, const Rational& v) {
    CycScalar r(p, q);
    r.base_[0] = v;
    return r;
}

CycScalar CycScalar::from_int(std::uint32_t p, std::uint32_t q, std::int64_t v) {
    return from_rational(p, q, Rational(v));
}

CycScalar CycScalar::zeta_pow(std::uint32_t p, std::uint32_t q, std::int64_t k) {
    std::int64_t m = k % static_cast<std::int64_t>(p);
    if (m < 0) m += p;
    std::vector<Rational> v(p, Rational(0));
    v[static_cast<std::size_t>(m)] = 1;
    CycScalar r(p, q);
    r.base_ = reduce_mod_phi(std::move(v), p);
    return r;
}

CycScalar CycScalar::sqrt_q(std::uint32_t p, std::uint32_t q) {
    CycScalar r(p, q);
    r.root_.assign(p - 1, Rational(0));
    r.root_[0] = 1;
    return r;
}

CycScalar CycScalar::from_coords(std::uint32_t p, std::uint32_t q,
                                 std::vector<Rational> base,
                                 std::vector<Rational> root) {
    base.resize(p, Rational(0));
    CycScalar r(p, q);
    r.base_ = reduce_mod_phi(std::move(base), p);
    if (!root.empty()) {
        root.resize(p, Rational(0));
        r.root_ = reduce_mod_phi(std::move(root), p);
        if (vec_zero(r.root_)) r.root_.clear();
    }
    return r;
}

bool CycScalar::is_zero() const { return vec_zero(base_) && root_.empty(); }

bool CycScalar::has_root_part() const { return !root_.empty(); }

bool CycScalar::as_rational(Rational& out) const {
    if (!root_.empty() && !vec_zero(root_)) return false;
    for (std::size_t i = 1; i < base_.size(); ++i)
        if (base_[i] != 0) return false;
    out = base_.empty() ? Rational(0) : base_[0];
    return true;
}

void CycScalar::check_compatible(const CycScalar& o) const {
    if (p_ != o.p_) throw std::invalid_argument("mixing scalars of different cyclotomic order");
    if (q_ != o.q_ && (!root_.empty() || !o.root_.empty()))
        throw std::invalid_argument("mixing root parts of different q");
}

CycScalar CycScalar::operator+(const CycScalar& o) const {
    check_compatible(o);
    CycScalar r(p_, q_);
    for (std::size_t i = 0; i + 1 < p_; ++i) r.base_[i] = base_[i] + o.base_[i];
    if (!root_.empty() || !o.root_.empty()) {
        r.root_.assign(p_ - 1, Rational(0));
        for (std::size_t i = 0; i + 1 < p_; ++i) {
            if (!root_.empty()) r.root_[i] += root_[i];
            if (!o.root_.empty()) r.root_[i] += o.root_[i];
        }
        if (vec_zero(r.root_)) r.root_.clear();
    }
    return r;
}

CycScalar CycScalar::operator-(const CycScalar& o) const { return *this + (-o); }

CycScalar CycScalar::operator-() const {
    CycScalar r(p_, q_);
    for (std::size_t i = 0; i + 1 < p_; ++i) r.base_[i] = -base_[i];
    if (!root_.empty()) {
        r.root_.resize(p_ - 1);
        for (std::size_t i = 0; i + 1 < p_; ++i) r.root_[i] = -root_[i];
    }
    return r;
}

CycScalar CycScalar::operator*(const CycScalar& o) const {
    check_compatible(o);
    CycScalar r(p_, q_);
    r.base_ = vec_mul(base_, o.base_, p_);
    if (!root_.empty() && !o.root_.empty()) {
        auto rr = vec_mul(root_, o.root_, p_);
        for (std::size_t i = 0; i + 1 < p_; ++i) r.base_[i] += rr[i] * q_;
    }
    std::vector<Rational> root(p_ - 1, Rational(0));
    if (!root_.empty()) {
        auto br = vec_mul(root_, o.base_, p_);
        for (std::size_t i = 0; i + 1 < p_; ++i) root[i] += br[i];
    }
    if (!o.root_.empty()) {
        auto br = vec_mul(base_, o.root_, p_);
        for (std::size_t i = 0; i + 1 < p_; ++i) root[i] += br[i];
    }
    if (!vec_zero(root)) r.root_ = std::move(root);
    return r;
}

CycScalar CycScalar::operator*(const Rational& v) const {
    CycScalar r(p_, q_);
    for (std::size_t i = 0; i + 1 < p_; ++i) r.base_[i] = base_[i] * v;
    if (!root_.empty() && v != 0) {
        r.root_.resize(p_ - 1);
        for (std::size_t i = 0; i + 1 < p_; ++i) r.root_[i] = root_[i] * v;
    }
    return r;
}

bool CycScalar::operator==(const CycScalar& o) const {
    if (p_ != o.p_) return false;
    if ((!root_.empty() || !o.root_.empty()) && q_ != o.q_) return false;
    for (std::size_t i = 0; i + 1 < p_; ++i)
        if (base_[i] != o.base_[i]) return false;
    const bool ra = !root_.empty(), rb = !o.root_.empty();
    if (ra != rb) return false;
    if (ra)
        for (std::size_t i = 0; i + 1 < p_; ++i)
            if (root_[i] != o.root_[i]) return false;
    return true;
}

CycScalar CycScalar::conjugate(std::uint32_t k) const {
    if (k % p_ == 0) throw std::invalid_argument("conjugation exponent divisible by p");
    auto twist = [&](const std::vector<Rational>& v) {
        std::vector<Rational> out(p_, Rational(0));
        // basis coordinate i corresponds to zeta^i
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i] == 0) continue;
            out[(i * k) % p_] += v[i];
        }
        return reduce_mod_phi(std::move(out), p_);
    };
    CycScalar r(p_, q_);
    r.base_ = twist(base_);
    if (!root_.empty()) {
        r.root_ = twist(root_);
        if (vec_zero(r.root_)) r.root_.clear();
    }
    return r;
}

CycScalar CycScalar::invert() const {
    if (is_zero()) throw std::domain_error("division by zero");
    // Write x = b + r*s; then x * (b - r*s) = b^2 - q*r^2 lies in Q(zeta_p),
    // which is inverted by its product of Galois conjugates.
    CycScalar conj_s(p_, q_);
    conj_s.base_ = base_;
    if (!root_.empty()) {
        conj_s.root_.resize(p_ - 1);
        for (std::size_t i = 0; i + 1 < p_; ++i) conj_s.root_[i] = -root_[i];
    }
    CycScalar d = (*this) * conj_s; // base-only
    if (d.is_zero()) throw NonInvertibleError("zero divisor in the quadratic scalar algebra");
    CycScalar prod = CycScalar::one(p_, q_);
    for (std::uint32_t k = 2; k < p_; ++k) prod = prod * d.conjugate(k);
    CycScalar norm = d * prod; // rational
    Rational nr;
    if (!norm.as_rational(nr) || nr == 0)
        throw NonInvertibleError("zero divisor in the quadratic scalar algebra");
    return conj_s * prod * Rational(denominator(nr), numerator(nr));
}

CycScalar CycScalar::div_by_power_of_q(std::uint32_t k) const {
    Rational f(1);
    for (std::uint32_t i = 0; i < k; ++i) f /= q_;
    return *this * f;
}

CycScalar CycScalar::pow(std::uint64_t e) const {
    CycScalar r = CycScalar::one(p_, q_);
    CycScalar b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

int CycScalar::cmp(const CycScalar& o) const {
    if (p_ != o.p_) return p_ < o.p_ ? -1 : 1;
    auto cmp_vec = [&](const std::vector<Rational>& a, const std::vector<Rational>& b) {
        for (std::size_t i = 0; i + 1 < p_; ++i) {
            Rational x = i < a.size() ? a[i] : Rational(0);
            Rational y = i < b.size() ? b[i] : Rational(0);
            if (x != y) return x < y ? -1 : 1;
        }
        return 0;
    };
    if (int c = cmp_vec(base_, o.base_)) return c;
    return cmp_vec(root_, o.root_);
}

std::string CycScalar::to_string() const {
    std::string b = part_str(base_);
    if (root_.empty() || vec_zero(root_)) return b;
    std::string r = "(" + part_str(root_) + ")*s";
    if (b == "0") return r;
    return b + " + " + r;
}

CycScalar psi(const FieldCtx& ctx, Fq a, Fq x) {
    if (a == 0) throw std::domain_error("trivial character");
    return CycScalar::zeta_pow(ctx.p(), ctx.q(), ctx.trace(ctx.mul(a, x)));
}

CycScalar gauss_sum(const FieldCtx& ctx, Fq c, Fq a) {
    if (a == 0) throw std::domain_error("trivial character");
    std::vector<Rational> counts(ctx.p(), Rational(0));
    for (Fq x = 0; x < ctx.q(); ++x) {
        Fq v = ctx.mul(c, ctx.mul(x, x));
        counts[ctx.trace(ctx.mul(a, v))] += 1;
    }
    return CycScalar::from_coords(ctx.p(), ctx.q(), std::move(counts));
}

} // namespace finosc
