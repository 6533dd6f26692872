#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "finosc/errors.hpp"

namespace finosc {

// Canonical element code of F_q: an integer in [0, q) obtained by base-p
// packing of the coefficients in the power basis of the modulus,
// a = c0 + c1*x + ... + c_{ell-1}*x^{ell-1}  <->  c0 + c1*p + ... .
// The encoding is part of the public contract: orbit enumeration and JSON
// reports index vectors by it.
using Fq = std::uint32_t;

class FieldCtx;
using FieldPtr = std::shared_ptr<const FieldCtx>;

// Arithmetic context for F_q, q = p^ell with p an odd prime.  All operation
// tables are precomputed at construction; instances are immutable and safe
// for unrestricted concurrent use.
class FieldCtx {
public:
    // Builds F_{p^ell} with the deterministic modulus: the monic irreducible
    // polynomial of degree ell whose packed coefficient code is smallest.
    // For ell = 1 this is the polynomial x.
    // Throws std::invalid_argument for p even ("characteristic 2") or
    // p composite ("not prime"), and for ell < 1.
    static FieldPtr make(std::uint32_t p, std::uint32_t ell);

    std::uint32_t p() const { return p_; }
    std::uint32_t ell() const { return ell_; }
    std::uint32_t q() const { return q_; }

    // Modulus coefficients, constant term first, length ell+1, monic.
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }
    std::string modulus_string() const;

    Fq add(Fq a, Fq b) const { return add_[a * q_ + b]; }
    Fq sub(Fq a, Fq b) const { return add_[a * q_ + neg_[b]]; }
    Fq mul(Fq a, Fq b) const { return mul_[a * q_ + b]; }
    Fq neg(Fq a) const { return neg_[a]; }
    Fq half(Fq a) const { return mul_[a * q_ + inv2_]; }
    Fq inv(Fq a) const;
    Fq pow(Fq a, std::uint64_t e) const;

    // Embedding of an integer through the prime subfield (value mod p).
    Fq from_int(std::int64_t v) const;

    // Tr_{F_q/F_p}(a) = a + a^p + ... + a^{p^{ell-1}}, as a residue in [0, p).
    std::uint32_t trace(Fq a) const { return trace_[a]; }
    // N_{F_q/F_p}(a) = a^{(q-1)/(p-1)}, as a residue in [0, p).
    std::uint32_t norm(Fq a) const { return norm_[a]; }
    // Quadratic character eps_q: 1 on nonzero squares, -1 on nonsquares,
    // 0 at 0 (computed as a^{(q-1)/2}).
    int quad_char(Fq a) const { return qchar_[a]; }

    // Smallest element code generating the multiplicative group.
    Fq generator() const { return generator_; }

    std::vector<std::uint32_t> decode(Fq a) const;       // length ell, mod-p digits
    Fq encode(const std::vector<std::uint32_t>& c) const;

private:
    FieldCtx() = default;

    std::uint32_t p_ = 0, ell_ = 0, q_ = 0;
    std::vector<std::uint32_t> modulus_;
    std::vector<Fq> add_, mul_, neg_, inv_;
    std::vector<std::uint32_t> trace_, norm_;
    std::vector<int> qchar_;
    Fq inv2_ = 0, generator_ = 0;
};

bool is_prime(std::uint64_t n);

} // namespace finosc
