#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "finosc/cyclotomic.hpp" // BigInt

namespace finosc {

// Polynomial in the indeterminate q with arbitrary-precision integer
// coefficients, kept canonical (no trailing zero coefficients).
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<BigInt> coeffs);
    static IntPolynomial constant(const BigInt& c);
    static IntPolynomial monomial(const BigInt& c, std::uint32_t deg);
    // Q_n = q^n + 1.
    static IntPolynomial q_power_plus_one(std::uint32_t n);
    // q^n - 1.
    static IntPolynomial q_power_minus_one(std::uint32_t n);

    const std::vector<BigInt>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero
    bool is_zero() const { return c_.empty(); }

    IntPolynomial operator+(const IntPolynomial& o) const;
    IntPolynomial operator-(const IntPolynomial& o) const;
    IntPolynomial operator*(const IntPolynomial& o) const;
    bool operator==(const IntPolynomial& o) const { return c_ == o.c_; }
    bool operator!=(const IntPolynomial& o) const { return c_ != o.c_; }

    // Exact division; throws std::domain_error if the remainder is nonzero
    // (a nonzero remainder always indicates a bug, never data).
    IntPolynomial exact_div(const IntPolynomial& d) const;

    BigInt eval(const BigInt& q) const;
    std::string to_string() const;

private:
    std::vector<BigInt> c_;
};

// Gaussian binomial (a choose b)_q as an exact polynomial of degree b(a-b).
// Requires 0 <= b <= a (std::out_of_range otherwise).
IntPolynomial gaussian_binomial(std::uint32_t a, std::uint32_t b);

// Product identity Q_{r+p} Q_{r-1+p} ... Q_{b+p} =
//   sum_{a=0}^{p} q^{a(b+a-1)} (r-b+1 choose a)_q prod_{i=p-a+1}^{p}(q^i-1)
//   prod_{j=b+a}^{r} Q_j,
// compared exactly as polynomials.  Requires r > b >= 0, p >= 0.
bool lemma_identity_check(std::uint32_t p, std::uint32_t r, std::uint32_t b);
// The two sides, for reporting.
std::pair<IntPolynomial, IntPolynomial> lemma_identity_sides(std::uint32_t p,
                                                             std::uint32_t r,
                                                             std::uint32_t b);

// The per-tranche reduction feeding the product identity: for b <= k <= r,
//   q^k (q^p - 1) prod_{j=k+1}^{r} Q_j prod_{j'=b}^{k-1} Q_{j'+p} =
//   sum_{a=1}^{k-b+1} (sum over multisets a+b-1 <= l_1 <= ... <= l_a = k of
//   q^{l_1+...+l_a}) prod_{i=p-a+1}^{p}(q^i-1) prod_{j=b+a}^{r} Q_j.
bool tranche_identity_check(std::uint32_t k, std::uint32_t p, std::uint32_t b,
                            std::uint32_t r);

enum class GroupKind { Sp, OddO, PlusO, MinusO };

// Order polynomials of the finite classical groups.  The size parameter is
// N for Sp_{2N} and m for O_{2m+1}, O^+_{2m}, O^-_{2m}.
IntPolynomial group_order(GroupKind kind, std::uint32_t size);

// Number of isotropic points of the form in projective space, i.e.
// |O(W,B)/P_1| as a polynomial; n is the dimension of W.
IntPolynomial quadric_point_count(GroupKind kind, std::uint32_t n);

// |G/P_k| (number of k-dimensional isotropic subspaces), built from the
// quadric-point recursion.  Zero polynomial when k exceeds the Witt index.
// `n` is dim W for the orthogonal kinds and 2N for Sp.
IntPolynomial parabolic_index(GroupKind kind, std::uint32_t n, std::uint32_t k);
// The same quantity by the closed Gaussian-binomial product; the two are
// asserted equal in the test suite.
IntPolynomial parabolic_index_closed(GroupKind kind, std::uint32_t n, std::uint32_t k);

struct HomDimReport {
    IntPolynomial lhs, rhs;
    BigInt lhs_at_q, rhs_at_q;
    bool pass = false;
};

// Dimension identity for Hom spaces between shifted tensor models.
//   Symplectic side (kind = orthogonal type of W, n = dim W, ell <= h_W):
//     prod_{j=0}^{n-ell-1} Q_j  ==  sum_k |O(W[-ell])/P_k| |O(W)/P_{k+ell}|
//                                        |O(W[-(k+ell)])|
//   Orthogonal side (kind = Sp, n = 2N, ell <= N): LHS prod_{j=1}^{2N-ell} Q_j.
HomDimReport hom_dimension_identity(GroupKind kind, std::uint32_t n,
                                    std::uint32_t ell, std::uint32_t q);

// ell = 0 specialisation: dim of the fixed endomorphism algebra against the
// matrix-algebra block sum sum_k |G/P_k|^2 |G_k|.
HomDimReport theorem_dimension_check(GroupKind kind, std::uint32_t n, std::uint32_t q);

// Witt index carried by each kind at the given dimension n.
std::uint32_t witt_index_of_kind(GroupKind kind, std::uint32_t n);

} // namespace finosc
