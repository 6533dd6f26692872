#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "finosc/cyclotomic.hpp"
#include "finosc/forms.hpp"

namespace finosc {

// Integer element of Z[zeta_p][s]/(s^2 - q).  Coordinates are exponents of
// zeta: c[0..p) is the base part and, when present, c[p..2p) the s-part.
// Canonical form keeps coordinates reduced mod Phi_p (slots p-1 and 2p-1
// zero) and drops the s-block when it vanishes.
struct ZCyc {
    boost::container::small_vector<std::int64_t, 10> c;

    bool is_zero() const {
        for (auto v : c)
            if (v) return false;
        return true;
    }
    bool has_root(std::uint32_t p) const { return c.size() > p; }
};

// The symplectic space V tensor W carrying the oscillator representation:
// V is the standard 2N-dimensional symplectic space, (W,B) a nondegenerate
// symmetric form of dimension n, and the composite form is S tensor B of
// dimension 2Nn.  Vectors are encoded as 2N blocks of W-codes, plus block
// first; the Lagrangian model basis is indexed by N blocks (Lambda_- side).
// The plain symplectic space of dimension 2N is the n = 1, B = (1) case.
class TensorSpace {
public:
    static std::shared_ptr<const TensorSpace> make(FieldPtr ctx, std::uint32_t N,
                                                   SymmetricForm W);
    static std::shared_ptr<const TensorSpace> make_plain(FieldPtr ctx, std::uint32_t N);

    const FieldPtr& ctx() const { return ctx_; }
    const SymmetricForm& W() const { return W_; }
    std::uint32_t N() const { return N_; }
    std::uint32_t n() const { return n_; }
    std::uint32_t dim() const { return 2 * N_ * n_; }        // dim of V tensor W
    std::uint32_t model_rank() const { return N_ * n_; }     // N' with dim omega = q^{N'}
    std::uint64_t wcard() const { return wcard_; }           // q^n
    // |V tensor W| = q^{2Nn}, saturated at 2^62.
    std::uint64_t point_count() const { return points_; }
    bool point_count_exact() const { return points_exact_; }
    // dim omega = q^{Nn}, saturated at 2^62.
    std::uint64_t model_dim() const { return model_dim_; }
    bool model_dim_exact() const { return model_exact_; }

    Fq w_add(std::uint64_t u, std::uint64_t v) const;
    std::uint64_t w_add_code(std::uint64_t u, std::uint64_t v) const;
    Fq b_form(std::uint64_t u, std::uint64_t v) const;
    Fq b_qf(std::uint64_t u) const;
    std::uint64_t w_scale_code(Fq c, std::uint64_t u) const; // c * u in W

    std::vector<std::uint64_t> decode_blocks(std::uint64_t code, std::uint32_t nblocks) const;
    std::uint64_t encode_blocks(const std::vector<std::uint64_t>& blocks) const;

    // S tensor B on block-decoded vectors (2N blocks each).
    Fq symp_eval_blocks(const std::uint64_t* x, const std::uint64_t* y) const;

    // Field-coordinate view (2N*n digits) of a full vector code.
    std::vector<Fq> coords_of(std::uint64_t code) const;
    std::uint64_t code_of_coords(const std::vector<Fq>& coords) const;

    bool same_space(const TensorSpace& o) const;

private:
    TensorSpace() = default;

    FieldPtr ctx_;
    SymmetricForm W_;
    std::uint32_t N_ = 0, n_ = 0;
    std::uint64_t wcard_ = 1, points_ = 1, model_dim_ = 1;
    bool points_exact_ = true, model_exact_ = true;
    std::vector<std::uint16_t> btab_;  // B on W-code pairs, when small enough
    std::vector<std::uint32_t> addw_;  // W-code addition, when small enough
    std::vector<std::uint16_t> qtab_;  // B(u,u) per W-code
};

using TensorSpacePtr = std::shared_ptr<const TensorSpace>;

class ModelOperator;

// Finite formal combination of vectors of V tensor W with scalars in
// Q(zeta_p)[s]/(s^2-q), the carrier of End(omega).  Stored as a rational
// scale times a primitive integer-cyclotomic term map, which keeps the
// star-product inner loops in machine integers.
class StarElement {
public:
    static StarElement zero(TensorSpacePtr space, Fq a = 1);
    // The basis vector (v) for an encoded v; (0) is the unit of the algebra.
    static StarElement basis(TensorSpacePtr space, std::uint64_t code, Fq a = 1);
    static StarElement from_terms(TensorSpacePtr space, Fq a,
                                  const std::vector<std::pair<std::uint64_t, CycScalar>>& terms);
    // Fast path for sums of zeta^e-coefficient terms (duplicates allowed).
    static StarElement from_zeta_monomials(
        TensorSpacePtr space, Fq a,
        std::vector<std::pair<std::uint64_t, std::uint32_t>> terms);

    const TensorSpacePtr& space() const { return space_; }
    Fq char_param() const { return char_a_; }
    bool is_zero() const { return codes_.empty(); }
    std::size_t support_size() const { return codes_.size(); }
    const std::vector<std::uint64_t>& codes() const { return codes_; }
    CycScalar coeff(std::uint64_t code) const;
    CycScalar coeff_at(std::size_t index) const; // by position in codes()

    StarElement operator+(const StarElement& o) const;
    StarElement operator-(const StarElement& o) const;
    StarElement operator-() const;
    StarElement scaled(const Rational& r) const;
    StarElement scaled_cyc(const CycScalar& s) const;
    StarElement div_by_power_of_q(std::uint32_t k) const;
    bool operator==(const StarElement& o) const;
    bool operator!=(const StarElement& o) const { return !(*this == o); }

    // Trace of the corresponding endomorphism: (coefficient of the zero
    // vector) * q^{Nn}.  Note this is the matrix trace of to_model(), whose
    // identity has size q^{Nn} = |V tensor W|^{1/2}.
    CycScalar trace() const;

    // Schroedinger-model action on a model basis vector x (N blocks in
    // Lambda_- tensor W): each term (v) sends x to
    //   psi_a(S(v_+, x) + 1/2 S(v_+, v_-)) * (v_- + x).
    // The output vector is v_- + x; this is the convention forced by
    // compatibility with composition (see the homomorphism tests; the
    // variant emitting v_+ + x fails them and is rejected here).
    std::vector<std::pair<std::uint64_t, CycScalar>> apply(std::uint64_t model_code) const;

    // Dense matrix of the action; guarded by `max_dim` (SizeLimitError).
    ModelOperator to_model(std::uint64_t max_dim = 1024) const;

    std::string to_json_string() const;

private:
    friend StarElement star(const StarElement&, const StarElement&);
    StarElement() = default;
    void normalize();

    TensorSpacePtr space_;
    Fq char_a_ = 1;
    Rational scale_ = 1;
    std::vector<std::uint64_t> codes_; // sorted ascending
    std::vector<ZCyc> zs_;             // parallel to codes_
};

// The star product: bilinear extension of
//   (u) * (v) = psi_a(1/2 (S tensor B)(u, v)) * (u + v).
StarElement star(const StarElement& x, const StarElement& y);

// Dense matrix of CycScalars over the model basis, row-major; entry (r, c)
// is the coefficient of basis r in the image of basis c.
class ModelOperator {
public:
    ModelOperator(std::uint32_t p, std::uint32_t q, std::uint64_t dim)
        : p_(p), q_(q), dim_(dim), m_(dim * dim, CycScalar::zero(p, q)) {}
    static ModelOperator identity(std::uint32_t p, std::uint32_t q, std::uint64_t dim);

    std::uint64_t dim() const { return dim_; }
    std::uint32_t p() const { return p_; }
    std::uint32_t q() const { return q_; }
    const CycScalar& at(std::uint64_t r, std::uint64_t c) const { return m_[r * dim_ + c]; }
    CycScalar& at(std::uint64_t r, std::uint64_t c) { return m_[r * dim_ + c]; }

    ModelOperator operator*(const ModelOperator& o) const;
    ModelOperator operator*(const CycScalar& s) const;
    bool operator==(const ModelOperator& o) const;
    bool operator!=(const ModelOperator& o) const { return !(*this == o); }

    CycScalar trace() const;
    // Rank by Gaussian elimination; requires invertible pivots (throws
    // NonInvertibleError if stuck on a zero divisor).
    std::uint64_t rank() const;
    bool is_invertible() const;

    int cmp(const ModelOperator& o) const; // deterministic total order

private:
    std::uint32_t p_, q_;
    std::uint64_t dim_;
    std::vector<CycScalar> m_;
};

// Action of the Heisenberg group element (v, c) on a model basis vector:
//   (v, c)(x) = psi_a(c + 1/2 S(v_+, x)) * (v_- + x).
std::pair<CycScalar, std::uint64_t> heisenberg_apply(const TensorSpace& T, Fq a,
                                                     std::uint64_t vcode, Fq c,
                                                     std::uint64_t model_code);
// The group law carried by that action: returns (v, c) with
// "first g1 then g2" == action of heisenberg_mul(T, g2, g1).
std::pair<std::uint64_t, Fq> heisenberg_mul(const TensorSpace& T,
                                            std::pair<std::uint64_t, Fq> g2,
                                            std::pair<std::uint64_t, Fq> g1);

// Dimension of the fixed-point subalgebra of (C(V tensor W), star) under
// the chosen factor of the dual pair; equals the orbit count of that group
// on the tuple space (delegated to the orbits module).
enum class DualSide { Sp, O };
std::uint64_t group_fixed_subalgebra_dim(const TensorSpace& T, DualSide side);

} // namespace finosc
