#include "finosc/qcomb.hpp"

#include <sstream>
#include <stdexcept>

namespace finosc {

namespace {

void trim(std::vector<BigInt>& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

} // namespace

IntPolynomial::IntPolynomial(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(c_); }

IntPolynomial IntPolynomial::constant(const BigInt& c) { return IntPolynomial({c}); }

IntPolynomial IntPolynomial::monomial(const BigInt& c, std::uint32_t deg) {
    std::vector<BigInt> v(deg + 1, BigInt(0));
    v[deg] = c;
    return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::q_power_plus_one(std::uint32_t n) {
    std::vector<BigInt> v(n + 1, BigInt(0));
    v[0] = 1;
    v[n] += 1;
    return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::q_power_minus_one(std::uint32_t n) {
    std::vector<BigInt> v(n + 1, BigInt(0));
    v[0] = -1;
    v[n] += 1;
    return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::operator+(const IntPolynomial& o) const {
    std::vector<BigInt> v(std::max(c_.size(), o.c_.size()), BigInt(0));
    for (std::size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
    return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::operator-(const IntPolynomial& o) const {
    std::vector<BigInt> v(std::max(c_.size(), o.c_.size()), BigInt(0));
    for (std::size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) v[i] -= o.c_[i];
    return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::operator*(const IntPolynomial& o) const {
    if (c_.empty() || o.c_.empty()) return IntPolynomial();
    std::vector<BigInt> v(c_.size() + o.c_.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
    }
    return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::exact_div(const IntPolynomial& d) const {
    if (d.c_.empty()) throw std::domain_error("polynomial division by zero");
    std::vector<BigInt> rem = c_;
    trim(rem);
    if (rem.empty()) return IntPolynomial();
    if (rem.size() < d.c_.size()) throw std::domain_error("inexact polynomial division");
    std::vector<BigInt> quot(rem.size() - d.c_.size() + 1, BigInt(0));
    const BigInt& lead = d.c_.back();
    for (std::size_t k = quot.size(); k-- > 0;) {
        BigInt top = rem[k + d.c_.size() - 1];
        if (top == 0) continue;
        if (top % lead != 0) throw std::domain_error("inexact polynomial division");
        BigInt f = top / lead;
        quot[k] = f;
        for (std::size_t i = 0; i < d.c_.size(); ++i) rem[k + i] -= f * d.c_[i];
    }
    trim(rem);
    if (!rem.empty()) throw std::domain_error("inexact polynomial division");
    return IntPolynomial(std::move(quot));
}

BigInt IntPolynomial::eval(const BigInt& q) const {
    BigInt r = 0;
    for (std::size_t i = c_.size(); i-- > 0;) r = r * q + c_[i];
    return r;
}

std::string IntPolynomial::to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        BigInt a = c_[i];
        if (first) {
            if (a < 0) os << "-";
            first = false;
        } else {
            os << (a < 0 ? " - " : " + ");
        }
        BigInt aa = a < 0 ? BigInt(-a) : a;
        if (i == 0 || aa != 1) os << aa;
        if (i > 0) {
            if (aa != 1) os << "*";
            os << "q";
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

IntPolynomial gaussian_binomial(std::uint32_t a, std::uint32_t b) {
    if (b > a) throw std::out_of_range("gaussian binomial requires 0 <= b <= a");
    IntPolynomial r = IntPolynomial::constant(1);
    for (std::uint32_t i = 0; i < b; ++i) {
        r = r * IntPolynomial::q_power_minus_one(a - i);
        r = r.exact_div(IntPolynomial::q_power_minus_one(i + 1));
    }
    return r;
}

std::pair<IntPolynomial, IntPolynomial> lemma_identity_sides(std::uint32_t p,
                                                             std::uint32_t r,
                                                             std::uint32_t b) {
    if (r <= b) throw std::out_of_range("identity requires r > b");
    IntPolynomial lhs = IntPolynomial::constant(1);
    for (std::uint32_t j = b + p; j <= r + p; ++j)
        lhs = lhs * IntPolynomial::q_power_plus_one(j);

    IntPolynomial rhs;
    for (std::uint32_t a = 0; a <= p; ++a) {
        if (a > r - b + 1) break; // binomial vanishes
        IntPolynomial term = IntPolynomial::monomial(1, a == 0 ? 0 : a * (b + a - 1));
        term = term * gaussian_binomial(r - b + 1, a);
        for (std::uint32_t i = p - a + 1; i <= p; ++i)
            term = term * IntPolynomial::q_power_minus_one(i);
        for (std::uint32_t j = b + a; j <= r; ++j)
            term = term * IntPolynomial::q_power_plus_one(j);
        rhs = rhs + term;
    }
    return {lhs, rhs};
}

bool lemma_identity_check(std::uint32_t p, std::uint32_t r, std::uint32_t b) {
    auto [lhs, rhs] = lemma_identity_sides(p, r, b);
    return lhs == rhs;
}

namespace {

// Sum of q^{l_1 + ... + l_a} over multisets lo <= l_1 <= ... <= l_a = k
// (the last entry pinned at k).  a >= 1.
void multiset_rec(std::uint32_t remaining, std::uint32_t lo, std::uint32_t k,
                  std::uint32_t acc, IntPolynomial& total) {
    if (remaining == 0) {
        total = total + IntPolynomial::monomial(1, acc + k); // l_a = k
        return;
    }
    for (std::uint32_t v = lo; v <= k; ++v)
        multiset_rec(remaining - 1, v, k, acc + v, total);
}

IntPolynomial multiset_power_sum(std::uint32_t a, std::uint32_t lo, std::uint32_t k) {
    if (lo > k) return IntPolynomial();
    IntPolynomial total;
    multiset_rec(a - 1, lo, k, 0, total);
    return total;
}

} // namespace

bool tranche_identity_check(std::uint32_t k, std::uint32_t p, std::uint32_t b,
                            std::uint32_t r) {
    if (!(b <= k && k <= r)) throw std::out_of_range("tranche identity requires b <= k <= r");
    IntPolynomial lhs = IntPolynomial::monomial(1, k) * IntPolynomial::q_power_minus_one(p);
    for (std::uint32_t j = k + 1; j <= r; ++j)
        lhs = lhs * IntPolynomial::q_power_plus_one(j);
    for (std::uint32_t j = b; j + 1 <= k; ++j)
        lhs = lhs * IntPolynomial::q_power_plus_one(j + p);

    IntPolynomial rhs;
    for (std::uint32_t a = 1; a <= k - b + 1; ++a) {
        if (a > p) break; // the (q^i - 1) product hits i = 0
        IntPolynomial term = multiset_power_sum(a, a + b - 1, k);
        for (std::uint32_t i = p - a + 1; i <= p; ++i)
            term = term * IntPolynomial::q_power_minus_one(i);
        for (std::uint32_t j = b + a; j <= r; ++j)
            term = term * IntPolynomial::q_power_plus_one(j);
        rhs = rhs + term;
    }
    return lhs == rhs;
}

IntPolynomial group_order(GroupKind kind, std::uint32_t size) {
    switch (kind) {
        case GroupKind::Sp: {
            IntPolynomial r = IntPolynomial::monomial(1, size * size);
            for (std::uint32_t i = 1; i <= size; ++i)
                r = r * IntPolynomial::q_power_minus_one(2 * i);
            return r;
        }
        case GroupKind::OddO: {
            IntPolynomial r = IntPolynomial::monomial(2, size * size);
            for (std::uint32_t i = 1; i <= size; ++i)
                r = r * IntPolynomial::q_power_minus_one(2 * i);
            return r;
        }
        case GroupKind::PlusO: {
            if (size == 0) return IntPolynomial::constant(1); // O of the zero space
            IntPolynomial r = IntPolynomial::monomial(2, size * (size - 1));
            r = r * IntPolynomial::q_power_minus_one(size);
            for (std::uint32_t i = 1; i + 1 <= size; ++i)
                r = r * IntPolynomial::q_power_minus_one(2 * i);
            return r;
        }
        case GroupKind::MinusO: {
            if (size == 0) throw std::out_of_range("minus type requires m >= 1");
            IntPolynomial r = IntPolynomial::monomial(2, size * (size - 1));
            r = r * IntPolynomial::q_power_plus_one(size);
            for (std::uint32_t i = 1; i + 1 <= size; ++i)
                r = r * IntPolynomial::q_power_minus_one(2 * i);
            return r;
        }
    }
    throw std::logic_error("unreachable");
}

std::uint32_t witt_index_of_kind(GroupKind kind, std::uint32_t n) {
    switch (kind) {
        case GroupKind::Sp: return n / 2; // n = 2N
        case GroupKind::OddO:
            if (n % 2 == 0) throw std::out_of_range("odd type requires odd dimension");
            return n / 2;
        case GroupKind::PlusO:
            if (n % 2 != 0) throw std::out_of_range("plus type requires even dimension");
            return n / 2;
        case GroupKind::MinusO:
            if (n % 2 != 0 || n == 0) throw std::out_of_range("minus type requires even dimension >= 2");
            return n / 2 - 1;
    }
    throw std::logic_error("unreachable");
}

IntPolynomial quadric_point_count(GroupKind kind, std::uint32_t n) {
    if (n == 0) return IntPolynomial();
    IntPolynomial base =
        IntPolynomial::q_power_minus_one(n - 1).exact_div(IntPolynomial::q_power_minus_one(1));
    switch (kind) {
        case GroupKind::OddO: return base;
        case GroupKind::PlusO: return base + IntPolynomial::monomial(1, (n - 2) / 2);
        case GroupKind::MinusO: return base - IntPolynomial::monomial(1, (n - 2) / 2);
        case GroupKind::Sp: break;
    }
    throw std::out_of_range("quadric point count is defined for orthogonal kinds");
}

IntPolynomial parabolic_index(GroupKind kind, std::uint32_t n, std::uint32_t k) {
    if (kind == GroupKind::Sp) {
        // |Sp_{2N}/P_k| = |O_{2N+1}/P_k|
        return parabolic_index(GroupKind::OddO, n + 1, k);
    }
    if (k == 0) return IntPolynomial::constant(1);
    if (k > witt_index_of_kind(kind, n)) return IntPolynomial();
    IntPolynomial num = IntPolynomial::constant(1);
    for (std::uint32_t l = 0; l < k; ++l) num = num * quadric_point_count(kind, n - 2 * l);
    IntPolynomial den = IntPolynomial::constant(1);
    for (std::uint32_t l = 1; l < k; ++l) {
        // |P^l(F_q)| = (q^{l+1}-1)/(q-1)
        den = den * IntPolynomial::q_power_minus_one(l + 1).exact_div(
                        IntPolynomial::q_power_minus_one(1));
    }
    return num.exact_div(den);
}

IntPolynomial parabolic_index_closed(GroupKind kind, std::uint32_t n, std::uint32_t k) {
    if (kind == GroupKind::Sp) return parabolic_index_closed(GroupKind::OddO, n + 1, k);
    if (k == 0) return IntPolynomial::constant(1);
    if (k > witt_index_of_kind(kind, n)) return IntPolynomial();
    const std::uint32_t m = n / 2;
    IntPolynomial r;
    switch (kind) {
        case GroupKind::OddO: {
            r = gaussian_binomial(m, k);
            for (std::uint32_t i = m - k + 1; i <= m; ++i)
                r = r * IntPolynomial::q_power_plus_one(i);
            return r;
        }
        case GroupKind::PlusO: {
            r = gaussian_binomial(m, k);
            for (std::uint32_t i = m - k; i + 1 <= m; ++i)
                r = r * IntPolynomial::q_power_plus_one(i);
            return r;
        }
        case GroupKind::MinusO: {
            r = gaussian_binomial(m - 1, k);
            for (std::uint32_t i = m - k + 1; i <= m; ++i)
                r = r * IntPolynomial::q_power_plus_one(i);
            return r;
        }
        case GroupKind::Sp: break;
    }
    throw std::logic_error("unreachable");
}

namespace {

// Order of the isometry group of the k-fold Witt reduction of the space.
IntPolynomial reduced_group_order(GroupKind kind, std::uint32_t n, std::uint32_t k) {
    const std::uint32_t nn = n - 2 * k;
    switch (kind) {
        case GroupKind::Sp: return group_order(GroupKind::Sp, nn / 2);
        case GroupKind::OddO: return group_order(GroupKind::OddO, nn / 2);
        case GroupKind::PlusO: return group_order(GroupKind::PlusO, nn / 2);
        case GroupKind::MinusO: return group_order(GroupKind::MinusO, nn / 2);
    }
    throw std::logic_error("unreachable");
}

} // namespace

HomDimReport hom_dimension_identity(GroupKind kind, std::uint32_t n, std::uint32_t ell,
                                    std::uint32_t q) {
    const std::uint32_t h = witt_index_of_kind(kind, n);
    if (ell > h) throw std::out_of_range("ell exceeds the Witt index");

    HomDimReport rep;
    IntPolynomial lhs = IntPolynomial::constant(1);
    if (kind == GroupKind::Sp) {
        // orthogonal stable side: census of O(W) orbits on W^{2N - ell}
        for (std::uint32_t j = 1; j <= n - ell; ++j)
            lhs = lhs * IntPolynomial::q_power_plus_one(j);
    } else {
        // symplectic stable side: census of Sp(V) orbits on V^{n - ell}
        for (std::uint32_t j = 0; j + ell + 1 <= n; ++j)
            lhs = lhs * IntPolynomial::q_power_plus_one(j);
    }

    IntPolynomial rhs;
    for (std::uint32_t k = 0; k + ell <= h; ++k) {
        IntPolynomial term = parabolic_index(kind, n - 2 * ell, k);
        term = term * parabolic_index(kind, n, k + ell);
        term = term * reduced_group_order(kind, n, k + ell);
        rhs = rhs + term;
    }

    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.lhs_at_q = lhs.eval(q);
    rep.rhs_at_q = rhs.eval(q);
    rep.pass = (lhs == rhs) && (rep.lhs_at_q == rep.rhs_at_q);
    return rep;
}

HomDimReport theorem_dimension_check(GroupKind kind, std::uint32_t n, std::uint32_t q) {
    return hom_dimension_identity(kind, n, 0, q);
}

} // namespace finosc
