#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "finosc/field.hpp"

namespace finosc {

enum class FormType { Odd, Plus, Minus };

std::string form_type_name(FormType t);

// A hyperbolic pair: B(e,e) = B(f,f) = 0, B(e,f) = 1, in ambient coordinates.
struct HyperbolicPair {
    std::vector<Fq> e, f;
};

// Nondegenerate symmetric bilinear form on F_q^n, with its congruence
// diagonalisation and Witt decomposition cached at construction.
class SymmetricForm {
public:
    SymmetricForm() = default; // empty placeholder; use make() for real forms

    // Validates symmetry and nondegeneracy (std::domain_error otherwise).
    static SymmetricForm make(FieldPtr ctx, std::vector<Fq> gram, std::uint32_t n);

    // Standard fixtures: odd n diag(1,...,1,delta); even n hyperbolic^m
    // (plus) or hyperbolic^{m-1} + diag(1, -delta) with delta the smallest
    // nonsquare (minus).
    static SymmetricForm standard(FieldPtr ctx, FormType type, std::uint32_t n,
                                  std::optional<Fq> delta = std::nullopt);

    // Mini-language "odd:n" / "plus:n" / "minus:n", or a JSON Gram matrix.
    static SymmetricForm parse_spec(FieldPtr ctx, const std::string& spec);

    const FieldPtr& ctx() const { return ctx_; }
    std::uint32_t n() const { return n_; }
    Fq gram(std::uint32_t i, std::uint32_t j) const { return gram_[i * n_ + j]; }
    const std::vector<Fq>& gram_flat() const { return gram_; }

    Fq eval(const std::vector<Fq>& u, const std::vector<Fq>& v) const;
    Fq eval_qf(const std::vector<Fq>& u) const { return eval(u, u); }

    const std::vector<Fq>& diagonal() const { return diag_; }
    // Change of basis P with P^T B P diagonal (columns are the new basis).
    const std::vector<Fq>& diagonal_basis() const { return diag_basis_; }

    std::uint32_t witt_index() const { return witt_; }
    std::uint32_t aniso_dim() const { return n_ - 2 * witt_; }
    FormType type() const { return type_; }
    int disc() const { return disc_; } // eps_q(det B)

    const std::vector<HyperbolicPair>& hyperbolic_pairs() const { return pairs_; }
    const std::vector<std::vector<Fq>>& anisotropic_basis() const { return aniso_basis_; }

    // Witt reduction: the form on the complement of k hyperbolic planes
    // (dimension n - 2k).  Throws std::out_of_range for k > witt_index().
    SymmetricForm reduce(std::uint32_t k) const;

    bool operator==(const SymmetricForm& o) const;

    std::string spec_string() const; // canonical "odd:n"-style tag or "gram:n"

private:
    void analyze(std::uint64_t seed);

    FieldPtr ctx_;
    std::uint32_t n_ = 0;
    std::vector<Fq> gram_;
    std::vector<Fq> diag_, diag_basis_;
    std::uint32_t witt_ = 0;
    FormType type_ = FormType::Plus;
    int disc_ = 1;
    std::vector<HyperbolicPair> pairs_;
    std::vector<std::vector<Fq>> aniso_basis_;
};

// Standard symplectic space of dimension 2N with basis e_1^+..e_N^+,
// e_1^-..e_N^- and Gram matrix ((0, I), (-I, 0)).  Coordinates are ordered
// plus block then minus block.
class SymplecticSpace {
public:
    SymplecticSpace(FieldPtr ctx, std::uint32_t N) : ctx_(std::move(ctx)), N_(N) {}

    const FieldPtr& ctx() const { return ctx_; }
    std::uint32_t N() const { return N_; }
    std::uint32_t dim() const { return 2 * N_; }

    Fq eval(const std::vector<Fq>& u, const std::vector<Fq>& v) const;

    SymplecticSpace reduce(std::uint32_t k) const;

private:
    FieldPtr ctx_;
    std::uint32_t N_;
};

// Matrix utilities over F_q used across modules (row-major storage).
std::uint32_t row_reduce(const FieldCtx& ctx, std::vector<Fq>& m, std::uint32_t rows,
                         std::uint32_t cols); // in-place RREF, returns rank
Fq determinant(const FieldCtx& ctx, std::vector<Fq> m, std::uint32_t n);

} // namespace finosc
