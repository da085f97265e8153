#pragma once

#include <numeric>

#include "sumrank/space.hpp"

namespace sumrank {

/// Ordered block lengths n = (n_1, ..., n_t), N = sum n_i.
struct BlockProfile {
    std::vector<std::uint32_t> n;

    std::uint32_t t() const { return static_cast<std::uint32_t>(n.size()); }
    std::uint32_t N() const { return std::accumulate(n.begin(), n.end(), 0u); }

    bool sorted_descending() const {
        for (std::size_t i = 1; i < n.size(); ++i)
            if (n[i - 1] < n[i]) return false;
        return true;
    }

    std::uint32_t offset(std::uint32_t i) const {
        std::uint32_t o = 0;
        for (std::uint32_t j = 0; j < i; ++j) o += n[j];
        return o;
    }

    friend bool operator==(const BlockProfile& a, const BlockProfile& b) { return a.n == b.n; }
};

using RankList = std::vector<std::uint32_t>;

/// Per-block F_q-column space of the gamma-expansion of a codeword.
struct SumRankSupport {
    std::vector<FMat> blocks;  // block i: RREF over F_q, r_i x n_i

    RankList dims() const {
        RankList r;
        for (const FMat& b : blocks) r.push_back(static_cast<std::uint32_t>(b.rows));
        return r;
    }
};

/// Sum-rank weight: sum over blocks of the F_q-rank of the block expansion.
inline std::uint32_t block_rank(const Tower& T, const Vec& block) {
    FMat M(0, block.size());
    // row l of the transposed expansion: the gamma_l-coordinates of the entries
    std::vector<std::vector<Fe>> coords;
    coords.reserve(block.size());
    for (Fe x : block) coords.push_back(T.gamma_coords(x));
    for (std::uint32_t l = 0; l < T.m; ++l) {
        Vec row(block.size());
        for (std::size_t j = 0; j < block.size(); ++j) row[j] = coords[j][l];
        M.append_row(row);
    }
    return static_cast<std::uint32_t>(rank_of(std::move(M), T));
}

inline RankList rank_list(const Tower& T, const BlockProfile& profile, const Vec& c) {
    RankList r;
    r.reserve(profile.t());
    for (std::uint32_t i = 0; i < profile.t(); ++i) {
        Vec block(c.begin() + profile.offset(i), c.begin() + profile.offset(i) + profile.n[i]);
        r.push_back(block_rank(T, block));
    }
    return r;
}

inline std::uint32_t sum_rank_weight(const Tower& T, const BlockProfile& profile, const Vec& c) {
    RankList r = rank_list(T, profile, c);
    return std::accumulate(r.begin(), r.end(), 0u);
}

inline SumRankSupport support(const Tower& T, const BlockProfile& profile, const Vec& c) {
    SumRankSupport s;
    for (std::uint32_t i = 0; i < profile.t(); ++i) {
        Vec block(c.begin() + profile.offset(i), c.begin() + profile.offset(i) + profile.n[i]);
        FMat M(0, block.size());
        std::vector<std::vector<Fe>> coords;
        for (Fe x : block) coords.push_back(T.gamma_coords(x));
        for (std::uint32_t l = 0; l < T.m; ++l) {
            Vec row(block.size());
            for (std::size_t j = 0; j < block.size(); ++j) row[j] = coords[j][l];
            M.append_row(row);
        }
        rref(M, T);
        s.blocks.push_back(std::move(M));
    }
    return s;
}

/// Blockwise containment supp(a) subseteq supp(b).
inline bool support_contained(const Tower& T, const SumRankSupport& a, const SumRankSupport& b) {
    if (a.blocks.size() != b.blocks.size()) return false;
    for (std::size_t i = 0; i < a.blocks.size(); ++i) {
        FMat M = stack(b.blocks[i], a.blocks[i]);
        if (rank_of(std::move(M), T) != b.blocks[i].rows) return false;
    }
    return true;
}

/// A nondegenerate linear sum-rank metric code given by a generator matrix,
/// partitioned into blocks G_1 | ... | G_t.
class SumRankCode {
  public:
    SumRankCode(TowerPtr tw, BlockProfile profile, std::uint32_t k, FMat G)
        : tw_(std::move(tw)), profile_(std::move(profile)), k_(k), G_(std::move(G)) {
        const Tower& T = *tw_;
        if (G_.rows != k_ || G_.cols != profile_.N())
            throw Error("generator matrix shape does not match profile");
        for (std::uint32_t ni : profile_.n)
            if (ni < 1) throw Error("block lengths must be >= 1");
        if (rank_of(G_, T) != k_) throw Error("generator rows are F_{q^m}-dependent");
        for (std::uint32_t i = 0; i < profile_.t(); ++i)
            if (block_span(i).dim() != profile_.n[i])
                throw Error("degenerate block: columns of G_" + std::to_string(i + 1) +
                            " are F_q-dependent");
    }

    const TowerPtr& tower() const { return tw_; }
    const BlockProfile& profile() const { return profile_; }
    std::uint32_t dimension() const { return k_; }
    std::uint32_t length() const { return profile_.N(); }
    const FMat& generator() const { return G_; }

    Vec column(std::uint32_t j) const {
        Vec v(k_);
        for (std::uint32_t r = 0; r < k_; ++r) v[r] = G_.at(r, j);
        return v;
    }

    /// U_i: the F_q-span of the columns of G_i.
    Subspace block_span(std::uint32_t i) const {
        std::vector<Vec> cols;
        for (std::uint32_t j = 0; j < profile_.n[i]; ++j) cols.push_back(column(profile_.offset(i) + j));
        return Subspace::span(tw_, k_, cols);
    }

    std::vector<Subspace> block_spans() const {
        std::vector<Subspace> us;
        for (std::uint32_t i = 0; i < profile_.t(); ++i) us.push_back(block_span(i));
        return us;
    }

    Vec encode(const Vec& x) const {
        Vec c(length(), Fe{0});
        const Tower& T = *tw_;
        for (std::uint32_t i = 0; i < k_; ++i) {
            if (is_zero(x[i])) continue;
            for (std::uint32_t j = 0; j < length(); ++j)
                c[j] = T.add(c[j], T.mul(x[i], G_.at(i, j)));
        }
        return c;
    }

    /// Visits one codeword per projective message class.
    void for_each_projective_codeword(const std::function<void(const Vec& msg, const Vec& cw)>& fn) const {
        for_each_projective_point(tw_, k_, [&](const Vec& x) { fn(x, encode(x)); });
    }

  private:
    TowerPtr tw_;
    BlockProfile profile_;
    std::uint32_t k_;
    FMat G_;
};

/// Minimum and maximum nonzero weight, computed on both sides of the
/// code/system correspondence and asserted equal: directly over projective
/// codewords, and as N - max/min of hyperplane intersection dimension sums.
inline std::pair<std::uint32_t, std::uint32_t> min_max_weight(const SumRankCode& C) {
    const Tower& T = *C.tower();
    std::uint32_t wmin = C.length() + 1, wmax = 0;
    C.for_each_projective_codeword([&](const Vec&, const Vec& cw) {
        std::uint32_t w = sum_rank_weight(T, C.profile(), cw);
        wmin = std::min(wmin, w);
        wmax = std::max(wmax, w);
    });

    std::vector<Subspace> us = C.block_spans();
    std::uint32_t smin = 0, smax = 0;
    bool first = true;
    for_each_subspace_codim(C.tower(), C.dimension(), 1, [&](const FqmSubspace& H) {
        std::uint32_t s = 0;
        for (const Subspace& U : us) s += intersect_dim(U, H);
        if (first) {
            smin = smax = s;
            first = false;
        } else {
            smin = std::min(smin, s);
            smax = std::max(smax, s);
        }
    });
    std::uint32_t d_geo = C.length() - smax;
    std::uint32_t w_geo = C.length() - smin;
    if (d_geo != wmin || w_geo != wmax)
        throw Error("codeword-side and hyperplane-side weight computations disagree");
    return {wmin, wmax};
}

inline std::uint32_t min_distance(const SumRankCode& C) { return min_max_weight(C).first; }
inline std::uint32_t max_weight(const SumRankCode& C) { return min_max_weight(C).second; }

inline bool is_msrd(const SumRankCode& C) {
    return min_distance(C) == C.length() - C.dimension() + 1;
}

/// r-th generalized sum-rank weight enumerator (exact counts).
struct WeightEnumerator {
    std::uint32_t r = 1;
    std::map<std::uint32_t, Int> counts;  // weight -> number of codim-r subspaces

    std::uint32_t min_weight() const {
        for (const auto& [w, c] : counts)
            if (w > 0 && c > 0) return w;
        return 0;
    }

    Int total() const {
        Int s = 0;
        for (const auto& [w, c] : counts) s += c;
        return s;
    }

    std::vector<std::uint32_t> weights() const {
        std::vector<std::uint32_t> ws;
        for (const auto& [w, c] : counts)
            if (c > 0) ws.push_back(w);
        return ws;
    }

    friend bool operator==(const WeightEnumerator& a, const WeightEnumerator& b) {
        return a.r == b.r && a.counts == b.counts;
    }
};

inline WeightEnumerator weight_enumerator(const SumRankCode& C, std::uint32_t r) {
    if (r < 1 || r > C.dimension()) throw Error("enumerator order out of range");
    WeightEnumerator E;
    E.r = r;
    std::vector<Subspace> us = C.block_spans();
    for_each_subspace_codim(C.tower(), C.dimension(), r, [&](const FqmSubspace& H) {
        std::uint32_t s = 0;
        for (const Subspace& U : us) s += intersect_dim(U, H);
        E.counts[C.length() - s] += 1;
    });
    if (E.total() != gauss_binomial(C.dimension(), C.dimension() - r, C.tower()->size))
        throw Error("weight enumerator total does not match subspace count");
    return E;
}

/// d_r: minimum weight supported by the order-r enumerator.
inline std::uint32_t generalized_weight(const SumRankCode& C, std::uint32_t r) {
    return weight_enumerator(C, r).min_weight();
}

}  // namespace sumrank
