#include "finosc/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "finosc/star.hpp"

namespace finosc {

namespace {

// Enumerate strictly increasing pivot-column tuples c_0 < ... < c_{d-1}.
void for_each_combination(std::uint32_t len, std::uint32_t d,
                          const std::function<void(const std::vector<std::uint32_t>&)>& fn) {
    std::vector<std::uint32_t> c(d);
    for (std::uint32_t i = 0; i < d; ++i) c[i] = i;
    if (d == 0) {
        fn(c);
        return;
    }
    if (d > len) return;
    while (true) {
        fn(c);
        std::uint32_t i = d;
        while (i-- > 0) {
            if (c[i] < len - (d - i)) {
                ++c[i];
                for (std::uint32_t j = i + 1; j < d; ++j) c[j] = c[j - 1] + 1;
                break;
            }
            if (i == 0) return;
        }
    }
}

std::uint64_t pow_u64(std::uint64_t b, std::uint32_t e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

} // namespace

void for_each_descriptor(OrbitSide side, std::uint32_t tuple_len, const FieldCtx& ctx,
                         const std::function<void(const OrbitDescriptor&)>& fn) {
    const std::uint32_t q = ctx.q();
    for (std::uint32_t d = 0; d <= tuple_len; ++d) {
        const std::uint32_t ngram =
            side == OrbitSide::Sp ? d * (d - (d ? 1 : 0)) / 2 : d * (d + 1) / 2;
        for_each_combination(tuple_len, d, [&](const std::vector<std::uint32_t>& pivots) {
            // free positions: (i, j) with j > pivots[i], j not a later pivot
            std::vector<std::pair<std::uint32_t, std::uint32_t>> free_pos;
            std::vector<bool> is_pivot(tuple_len, false);
            for (auto c : pivots) is_pivot[c] = true;
            for (std::uint32_t i = 0; i < d; ++i)
                for (std::uint32_t j = pivots[i] + 1; j < tuple_len; ++j)
                    if (!is_pivot[j]) free_pos.emplace_back(i, j);
            const std::uint64_t nfree = pow_u64(q, static_cast<std::uint32_t>(free_pos.size()));
            const std::uint64_t ng = pow_u64(q, ngram);
            OrbitDescriptor desc;
            desc.side = side;
            desc.d = d;
            desc.len = tuple_len;
            for (std::uint64_t fcode = 0; fcode < nfree; ++fcode) {
                desc.M.assign(static_cast<std::size_t>(d) * tuple_len, 0);
                for (std::uint32_t i = 0; i < d; ++i) desc.M[i * tuple_len + pivots[i]] = 1;
                std::uint64_t fc = fcode;
                // last free position is the least significant digit
                for (std::size_t k = free_pos.size(); k-- > 0;) {
                    desc.M[free_pos[k].first * tuple_len + free_pos[k].second] =
                        static_cast<Fq>(fc % q);
                    fc /= q;
                }
                for (std::uint64_t gcode = 0; gcode < ng; ++gcode) {
                    desc.gram_data.assign(ngram, 0);
                    std::uint64_t gc = gcode;
                    for (std::size_t k = ngram; k-- > 0;) {
                        desc.gram_data[k] = static_cast<Fq>(gc % q);
                        gc /= q;
                    }
                    fn(desc);
                }
            }
        });
    }
}

std::vector<OrbitDescriptor> enumerate_descriptors(OrbitSide side, std::uint32_t tuple_len,
                                                   const FieldCtx& ctx) {
    std::vector<OrbitDescriptor> out;
    for_each_descriptor(side, tuple_len, ctx,
                        [&](const OrbitDescriptor& d) { out.push_back(d); });
    return out;
}

BigInt descriptor_count_formula(OrbitSide side, std::uint32_t tuple_len, std::uint32_t q) {
    BigInt total = 0;
    for (std::uint32_t d = 0; d <= tuple_len; ++d) {
        BigInt term = gaussian_binomial(tuple_len, d).eval(q);
        std::uint32_t e = d ? d * (d - 1) / 2 : 0;
        if (side == OrbitSide::O) e += d;
        for (std::uint32_t i = 0; i < e; ++i) term *= q;
        total += term;
    }
    return total;
}

BigInt stable_orbit_count(OrbitSide side, std::uint32_t tuple_len, std::uint32_t q,
                          std::uint32_t N_or_witt) {
    BigInt r = 1;
    if (side == OrbitSide::Sp) {
        if (tuple_len > N_or_witt) throw std::domain_error("not in stable range");
        for (std::uint32_t j = 0; j < tuple_len; ++j) {
            BigInt f = 1;
            for (std::uint32_t i = 0; i < j; ++i) f *= q;
            r *= f + 1;
        }
    } else {
        if (tuple_len > N_or_witt) throw std::domain_error("not in stable range");
        for (std::uint32_t j = 1; j <= tuple_len; ++j) {
            BigInt f = 1;
            for (std::uint32_t i = 0; i < j; ++i) f *= q;
            r *= f + 1;
        }
    }
    return r;
}

bool sp_descriptor_nonempty(const OrbitDescriptor& desc, const FieldCtx& ctx, std::uint32_t N) {
    // Gram of the candidate frame: antisymmetric with a_{i<j} above the
    // diagonal; the orbit is realisable iff 2N >= d + dim ker.
    const std::uint32_t d = desc.d;
    if (d == 0) return true;
    std::vector<Fq> A(static_cast<std::size_t>(d) * d, 0);
    std::size_t k = 0;
    for (std::uint32_t i = 0; i < d; ++i)
        for (std::uint32_t j = i + 1; j < d; ++j, ++k) {
            A[i * d + j] = desc.gram_data[k];
            A[j * d + i] = ctx.neg(desc.gram_data[k]);
        }
    std::vector<Fq> copy = A;
    std::uint32_t rank = row_reduce(ctx, copy, d, d);
    return 2 * N >= d + (d - rank);
}

bool o_descriptor_nonempty(const OrbitDescriptor& desc, const SymmetricForm& W,
                           std::uint64_t search_limit) {
    const auto& ctx = *W.ctx();
    const std::uint32_t q = ctx.q(), n = W.n(), d = desc.d;
    if (d == 0) return true;
    if (d > n) return false;
    const std::uint64_t wcard = pow_u64(q, n);
    std::uint64_t work = 1;
    for (std::uint32_t i = 0; i < d; ++i) {
        if (work > search_limit / wcard) throw SizeLimitError("orthogonal search too large");
        work *= wcard;
    }
    auto gram_at = [&](std::uint32_t i, std::uint32_t j) { // i <= j
        std::size_t k = 0;
        for (std::uint32_t a = 0; a < d; ++a)
            for (std::uint32_t b = a; b < d; ++b, ++k)
                if (a == i && b == j) return desc.gram_data[k];
        throw std::logic_error("bad gram index");
    };
    std::vector<std::vector<Fq>> vecs(d, std::vector<Fq>(n));
    std::vector<std::uint64_t> codes(d, 0);
    auto decode = [&](std::uint64_t code, std::vector<Fq>& v) {
        for (std::uint32_t i = 0; i < n; ++i) {
            v[i] = static_cast<Fq>(code % q);
            code /= q;
        }
    };
    std::function<bool(std::uint32_t)> rec = [&](std::uint32_t level) -> bool {
        if (level == d) {
            // independence
            std::vector<Fq> m;
            for (const auto& v : vecs) m.insert(m.end(), v.begin(), v.end());
            return row_reduce(ctx, m, d, n) == d;
        }
        for (std::uint64_t code = 0; code < wcard; ++code) {
            decode(code, vecs[level]);
            bool ok = true;
            for (std::uint32_t i = 0; i <= level && ok; ++i) {
                Fq want = gram_at(i, level);
                if (W.eval(vecs[i], vecs[level]) != want) ok = false;
            }
            if (ok && rec(level + 1)) return true;
        }
        return false;
    };
    return rec(0);
}

const std::vector<std::vector<Fq>>& MatrixGroup::elements(std::uint64_t limit) const {
    if (!elements_.empty()) return elements_;
    const auto& c = *ctx_;
    const std::uint32_t q = c.q(), deg = deg_;
    // packed code must fit 64 bits
    {
        long double bits = deg * static_cast<long double>(deg) * std::log2l(q);
        if (bits > 62) throw SizeLimitError("matrix encoding exceeds 64 bits");
    }
    auto pack = [&](const std::vector<Fq>& m) {
        std::uint64_t code = 0;
        for (std::size_t i = m.size(); i-- > 0;) code = code * q + m[i];
        return code;
    };
    auto matmul = [&](const std::vector<Fq>& A, const std::vector<Fq>& B) {
        std::vector<Fq> C(static_cast<std::size_t>(deg) * deg, 0);
        for (std::uint32_t i = 0; i < deg; ++i)
            for (std::uint32_t k = 0; k < deg; ++k) {
                Fq a = A[i * deg + k];
                if (!a) continue;
                for (std::uint32_t j = 0; j < deg; ++j)
                    C[i * deg + j] = c.add(C[i * deg + j], c.mul(a, B[k * deg + j]));
            }
        return C;
    };
    std::vector<Fq> id(static_cast<std::size_t>(deg) * deg, 0);
    for (std::uint32_t i = 0; i < deg; ++i) id[i * deg + i] = 1;
    std::unordered_set<std::uint64_t> seen;
    std::vector<std::vector<Fq>> out;
    std::vector<std::vector<Fq>> frontier;
    seen.insert(pack(id));
    out.push_back(id);
    frontier.push_back(id);
    while (!frontier.empty()) {
        std::vector<std::vector<Fq>> next;
        for (const auto& m : frontier)
            for (const auto& g : gens_) {
                auto prod = matmul(m, g);
                if (seen.insert(pack(prod)).second) {
                    if (seen.size() > limit) throw SizeLimitError("group closure exceeds limit");
                    out.push_back(prod);
                    next.push_back(std::move(prod));
                }
            }
        frontier = std::move(next);
    }
    elements_ = std::move(out);
    return elements_;
}

MatrixGroup build_symplectic_group(FieldPtr ctx, std::uint32_t N) {
    const auto& c = *ctx;
    const std::uint32_t q = c.q(), deg = 2 * N;
    SymplecticSpace V(ctx, N);
    // symplectic transvections x -> x + t*S(x,v)*v over representatives of
    // nonzero vectors up to sign, with t spanning both square classes
    Fq ns = 1;
    for (Fq x = 1; x < q; ++x)
        if (c.quad_char(x) == -1) {
            ns = x;
            break;
        }
    std::vector<std::vector<Fq>> gens;
    const std::uint64_t vcard = pow_u64(q, deg);
    for (std::uint64_t code = 1; code < vcard; ++code) {
        std::vector<Fq> v(deg);
        std::uint64_t cc = code;
        for (std::uint32_t i = 0; i < deg; ++i) {
            v[i] = static_cast<Fq>(cc % q);
            cc /= q;
        }
        // skip -v representatives
        std::uint64_t neg_code = 0;
        for (std::uint32_t i = deg; i-- > 0;) neg_code = neg_code * q + c.neg(v[i]);
        if (neg_code < code) continue;
        for (Fq t : {Fq(1), ns}) {
            std::vector<Fq> m(static_cast<std::size_t>(deg) * deg, 0);
            for (std::uint32_t j = 0; j < deg; ++j) {
                std::vector<Fq> e(deg, 0);
                e[j] = 1;
                Fq f = c.mul(t, V.eval(e, v));
                for (std::uint32_t i = 0; i < deg; ++i) {
                    Fq val = c.add(i == j ? 1 : 0, c.mul(f, v[i]));
                    m[i * deg + j] = val;
                }
            }
            gens.push_back(std::move(m));
        }
    }
    return MatrixGroup(std::move(ctx), deg, std::move(gens));
}

MatrixGroup build_orthogonal_group(const SymmetricForm& W) {
    const auto& c = *W.ctx();
    const std::uint32_t q = c.q(), n = W.n();
    const std::uint64_t wcard = pow_u64(q, n);
    std::vector<std::vector<Fq>> gens;
    for (std::uint64_t code = 1; code < wcard; ++code) {
        std::vector<Fq> lam(n);
        std::uint64_t cc = code;
        for (std::uint32_t i = 0; i < n; ++i) {
            lam[i] = static_cast<Fq>(cc % q);
            cc /= q;
        }
        std::uint64_t neg_code = 0;
        for (std::uint32_t i = n; i-- > 0;) neg_code = neg_code * q + c.neg(lam[i]);
        if (neg_code < code) continue; // r_lambda = r_{-lambda}
        Fq bll = W.eval(lam, lam);
        if (bll == 0) continue;
        Fq inv_bll = c.inv(bll);
        std::vector<Fq> m(static_cast<std::size_t>(n) * n, 0);
        for (std::uint32_t j = 0; j < n; ++j) {
            std::vector<Fq> e(n, 0);
            e[j] = 1;
            Fq f = c.mul(c.from_int(2), c.mul(W.eval(e, lam), inv_bll));
            for (std::uint32_t i = 0; i < n; ++i)
                m[i * n + j] = c.sub(i == j ? 1 : 0, c.mul(f, lam[i]));
        }
        gens.push_back(std::move(m));
    }
    return MatrixGroup(W.ctx(), n, std::move(gens));
}

MatrixGroup build_group(GroupFamily kind, FieldPtr ctx, std::uint32_t param) {
    switch (kind) {
        case GroupFamily::Sp: return build_symplectic_group(std::move(ctx), param);
        case GroupFamily::Oodd:
            return build_orthogonal_group(
                SymmetricForm::standard(std::move(ctx), FormType::Odd, param));
        case GroupFamily::Oplus:
            return build_orthogonal_group(
                SymmetricForm::standard(std::move(ctx), FormType::Plus, param));
        case GroupFamily::Ominus:
            return build_orthogonal_group(
                SymmetricForm::standard(std::move(ctx), FormType::Minus, param));
    }
    throw std::logic_error("unreachable");
}

BigInt burnside_count(const MatrixGroup& G, std::uint32_t tuple_len,
                      std::uint64_t work_limit) {
    const auto& c = *G.ctx();
    const std::uint32_t q = c.q(), deg = G.degree();
    const std::uint64_t base = pow_u64(q, deg);
    const auto& elems = G.elements();
    if (elems.size() > work_limit / base)
        throw SizeLimitError("burnside work exceeds limit");
    // decoded base-space vectors
    std::vector<Fq> dec(base * deg);
    for (std::uint64_t v = 0; v < base; ++v) {
        std::uint64_t vv = v;
        for (std::uint32_t i = 0; i < deg; ++i) {
            dec[v * deg + i] = static_cast<Fq>(vv % q);
            vv /= q;
        }
    }
    BigInt total = 0;
    for (const auto& m : elems) {
        std::uint64_t fix = 0;
        for (std::uint64_t v = 0; v < base; ++v) {
            const Fq* x = &dec[v * deg];
            bool fixed = true;
            for (std::uint32_t i = 0; i < deg && fixed; ++i) {
                Fq acc = 0;
                for (std::uint32_t j = 0; j < deg; ++j)
                    if (x[j]) acc = c.add(acc, c.mul(m[i * deg + j], x[j]));
                fixed = acc == x[i];
            }
            if (fixed) ++fix;
        }
        BigInt f = fix;
        BigInt powf = 1;
        for (std::uint32_t i = 0; i < tuple_len; ++i) powf *= f;
        total += powf;
    }
    BigInt order = static_cast<std::uint64_t>(elems.size());
    if (total % order != 0) throw std::logic_error("burnside sum not divisible by |G|");
    return total / order;
}

OrbitCensus orbit_census(OrbitSide side, FieldPtr ctx, std::uint32_t N, std::uint32_t n,
                         const std::optional<SymmetricForm>& W, bool oracle) {
    OrbitCensus out;
    const std::uint32_t q = ctx->q();
    const std::uint32_t tuple_len = side == OrbitSide::Sp ? n : 2 * N;
    out.descriptor_count = descriptor_count_formula(side, tuple_len, q);
    // cross-check against the actual enumeration at small sizes
    if (out.descriptor_count < 100000) {
        std::uint64_t seen = 0;
        for_each_descriptor(side, tuple_len, *ctx, [&](const OrbitDescriptor&) { ++seen; });
        if (BigInt(seen) != out.descriptor_count)
            throw std::logic_error("descriptor enumeration disagrees with the formula");
    }
    if (side == OrbitSide::Sp) {
        if (tuple_len <= N) out.closed_form = stable_orbit_count(side, tuple_len, q, N);
        if (oracle) {
            MatrixGroup G = build_symplectic_group(ctx, N);
            out.burnside = burnside_count(G, tuple_len);
        }
    } else {
        if (!W) throw std::invalid_argument("orthogonal side requires a form");
        if (tuple_len <= W->witt_index())
            out.closed_form = stable_orbit_count(side, tuple_len, q, W->witt_index());
        if (oracle) {
            MatrixGroup G = build_orthogonal_group(*W);
            out.burnside = burnside_count(G, tuple_len);
        }
    }
    return out;
}

std::uint64_t group_fixed_subalgebra_dim(const TensorSpace& T, DualSide side) {
    OrbitSide oside = side == DualSide::Sp ? OrbitSide::Sp : OrbitSide::O;
    std::optional<SymmetricForm> W = T.W();
    OrbitCensus census = orbit_census(oside, T.ctx(), T.N(), T.n(), W,
                                      /*oracle=*/!(
                                          (oside == OrbitSide::Sp && T.n() <= T.N()) ||
                                          (oside == OrbitSide::O &&
                                           2 * T.N() <= T.W().witt_index())));
    if (census.closed_form) return census.closed_form->convert_to<std::uint64_t>();
    if (census.burnside) return census.burnside->convert_to<std::uint64_t>();
    throw std::logic_error("census produced no count");
}

} // namespace finosc
