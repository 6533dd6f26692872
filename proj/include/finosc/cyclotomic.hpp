#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "finosc/field.hpp"

namespace finosc {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Exact element of Q(zeta_p)[s] / (s^2 - q): the scalar domain for all
// representation coefficients.  Coordinates are kept reduced modulo the
// p-th cyclotomic polynomial, in the basis 1, z, ..., z^{p-2} where z is a
// primitive p-th root of unity; `root` holds the coefficient of the formal
// square root s of q.  Values are immutable once built.
class CycScalar {
public:
    CycScalar() = default; // zero of an unspecified algebra; usable as a sink

    static CycScalar zero(std::uint32_t p, std::uint32_t q);
    static CycScalar one(std::uint32_t p, std::uint32_t q);
    static CycScalar from_rational(std::uint32_t p, std::uint32_t q, const Rational& r);
    static CycScalar from_int(std::uint32_t p, std::uint32_t q, std::int64_t v);
    // zeta^k (k arbitrary, reduced mod p).
    static CycScalar zeta_pow(std::uint32_t p, std::uint32_t q, std::int64_t k);
    // The formal square root s of q.
    static CycScalar sqrt_q(std::uint32_t p, std::uint32_t q);
    // From explicit coordinate vectors (length <= p-1; shorter = padded).
    static CycScalar from_coords(std::uint32_t p, std::uint32_t q,
                                 std::vector<Rational> base,
                                 std::vector<Rational> root = {});

    std::uint32_t p() const { return p_; }
    std::uint32_t q() const { return q_; }
    const std::vector<Rational>& base() const { return base_; }
    const std::vector<Rational>& root() const { return root_; }

    bool is_zero() const;
    bool has_root_part() const;
    // The value as a rational if it lies in Q, otherwise false.
    bool as_rational(Rational& out) const;

    CycScalar operator+(const CycScalar& o) const;
    CycScalar operator-(const CycScalar& o) const;
    CycScalar operator*(const CycScalar& o) const;
    CycScalar operator-() const;
    CycScalar operator*(const Rational& r) const;
    bool operator==(const CycScalar& o) const;
    bool operator!=(const CycScalar& o) const { return !(*this == o); }

    // Exact inverse in the quadratic algebra.  Throws std::domain_error on
    // zero and NonInvertibleError on a nonzero zero divisor.
    CycScalar invert() const;
    CycScalar div_by_power_of_q(std::uint32_t k) const;
    CycScalar pow(std::uint64_t e) const;

    // Galois twist zeta -> zeta^k (s fixed), k not divisible by p.
    CycScalar conjugate(std::uint32_t k) const;

    // Deterministic total order (for use as map keys).
    int cmp(const CycScalar& o) const;

    // Canonical rendering "a0 + a1*z + ... [+ (b0 + ...)*s]".
    std::string to_string() const;

private:
    CycScalar(std::uint32_t p, std::uint32_t q) : p_(p), q_(q), base_(p - 1), root_() {}
    void check_compatible(const CycScalar& o) const;

    std::uint32_t p_ = 0;
    std::uint32_t q_ = 0;
    std::vector<Rational> base_; // length p-1, reduced mod Phi_p
    std::vector<Rational> root_; // empty when the s-part vanishes
};

// Additive character value psi_a(x) = zeta^{Tr(a*x)}.  Requires a != 0
// (throws std::domain_error("trivial character") otherwise).
CycScalar psi(const FieldCtx& ctx, Fq a, Fq x);

// Quadratic Gauss sum sum_{x in F_q} psi_a(c*x^2), by direct summation.
CycScalar gauss_sum(const FieldCtx& ctx, Fq c, Fq a = 1);

} // namespace finosc
