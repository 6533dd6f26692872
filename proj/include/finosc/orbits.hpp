#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "finosc/forms.hpp"
#include "finosc/qcomb.hpp"

namespace finosc {

enum class OrbitSide { Sp, O };

// Label of one group orbit on a tuple space: a full-rank RREF matrix M of
// shape d x tuple_len together with the Gram data of the underlying tuple
// (scalars a_{i<j} on the symplectic side, a_{i<=j} on the orthogonal one).
struct OrbitDescriptor {
    OrbitSide side = OrbitSide::Sp;
    std::uint32_t d = 0, len = 0;
    std::vector<Fq> M;         // d * len, reduced row echelon form
    std::vector<Fq> gram_data; // pair-ordered (1,2),(1,3),...; includes i=j for O
};

// All descriptors in deterministic order: d ascending, pivot columns and
// free entries lexicographic, gram data lexicographic.
std::vector<OrbitDescriptor> enumerate_descriptors(OrbitSide side, std::uint32_t tuple_len,
                                                   const FieldCtx& ctx);
// Streaming variant.
void for_each_descriptor(OrbitSide side, std::uint32_t tuple_len, const FieldCtx& ctx,
                         const std::function<void(const OrbitDescriptor&)>& fn);

// sum_d (len choose d)_q q^{binom(d,2) [+d]} evaluated at q.
BigInt descriptor_count_formula(OrbitSide side, std::uint32_t tuple_len, std::uint32_t q);

// Closed-form stable-range orbit counts: prod_{j=0}^{n-1}(q^j+1) for Sp on
// V^n with n <= N, prod_{j=1}^{2N}(q^j+1) for O on W^{2N} with 2N <= h_W.
// Throws std::domain_error("not in stable range") when violated.
BigInt stable_orbit_count(OrbitSide side, std::uint32_t tuple_len, std::uint32_t q,
                          std::uint32_t N_or_witt);

// Non-emptiness of a symplectic-side descriptor inside Sp_{2N}:
// 2N >= d + dim ker of the antisymmetric Gram.
bool sp_descriptor_nonempty(const OrbitDescriptor& d, const FieldCtx& ctx, std::uint32_t N);
// Orthogonal-side analogue by direct small search for a realising tuple.
bool o_descriptor_nonempty(const OrbitDescriptor& d, const SymmetricForm& W,
                           std::uint64_t search_limit = 10'000'000);

// A finite matrix group over F_q given by generators, with BFS closure.
class MatrixGroup {
public:
    MatrixGroup(FieldPtr ctx, std::uint32_t degree, std::vector<std::vector<Fq>> gens)
        : ctx_(std::move(ctx)), deg_(degree), gens_(std::move(gens)) {}

    const FieldPtr& ctx() const { return ctx_; }
    std::uint32_t degree() const { return deg_; }
    const std::vector<std::vector<Fq>>& generators() const { return gens_; }

    // Full element list (computed once, cached).  Guarded by `limit`.
    const std::vector<std::vector<Fq>>& elements(std::uint64_t limit = 1'000'000) const;
    std::uint64_t order(std::uint64_t limit = 1'000'000) const {
        return elements(limit).size();
    }

private:
    FieldPtr ctx_;
    std::uint32_t deg_;
    std::vector<std::vector<Fq>> gens_;
    mutable std::vector<std::vector<Fq>> elements_;
};

enum class GroupFamily { Sp, Oodd, Oplus, Ominus };

// Sp_{2N} generated by symplectic transvections; orthogonal groups
// generated by the reflections of the given form.
MatrixGroup build_group(GroupFamily kind, FieldPtr ctx, std::uint32_t param);
MatrixGroup build_orthogonal_group(const SymmetricForm& W);
MatrixGroup build_symplectic_group(FieldPtr ctx, std::uint32_t N);

// Orbit count of G acting diagonally on (F_q^deg)^{tuple_len} by Burnside:
// (1/|G|) sum_g |Fix(g)|^... with fixed points streamed over the base space
// per element.  Guarded so that |G| * q^deg stays within `work_limit`.
BigInt burnside_count(const MatrixGroup& G, std::uint32_t tuple_len,
                      std::uint64_t work_limit = 100'000'000);

struct OrbitCensus {
    BigInt descriptor_count;
    std::optional<BigInt> closed_form; // stable range only
    std::optional<BigInt> burnside;    // when the oracle was requested
};

// The three-way census for one configuration.  The symplectic side acts on
// V^{oplus n}; the orthogonal side on W^{oplus 2N}.
OrbitCensus orbit_census(OrbitSide side, FieldPtr ctx, std::uint32_t N, std::uint32_t n,
                         const std::optional<SymmetricForm>& W, bool oracle);

} // namespace finosc
