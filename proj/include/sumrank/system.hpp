#pragma once

#include "sumrank/code.hpp"

namespace sumrank {

/// Ordered tuple (U_1, ..., U_t) of F_q-subspaces of F_{q^m}^k spanning the
/// ambient space over F_{q^m}; the geometric side of a sum-rank code.
class System {
  public:
    System(TowerPtr tw, std::uint32_t k, std::vector<Subspace> blocks)
        : tw_(std::move(tw)), k_(k), blocks_(std::move(blocks)) {
        if (blocks_.empty()) throw NotSpanning("system has no blocks");
        FMat M(0, k_);
        for (const Subspace& U : blocks_) {
            if (U.ambient_dim() != k_) throw Error("block ambient dimension mismatch");
            for (const Vec& b : U.basis()) M.append_row(b);
        }
        if (rank_of(std::move(M), *tw_) != k_)
            throw NotSpanning("blocks do not span F_{q^m}^k");
    }

    const TowerPtr& tower() const { return tw_; }
    std::uint32_t ambient_dim() const { return k_; }
    std::uint32_t t() const { return static_cast<std::uint32_t>(blocks_.size()); }
    const std::vector<Subspace>& blocks() const { return blocks_; }
    const Subspace& block(std::uint32_t i) const { return blocks_[i]; }

    BlockProfile profile() const {
        BlockProfile p;
        for (const Subspace& U : blocks_) p.n.push_back(U.dim());
        return p;
    }

    /// Blocks sorted by (dimension descending, echelon bytes); systems are
    /// compared through this form, which identifies tuples up to block
    /// permutation within equal-dimension groups.
    System canonical() const {
        std::vector<Subspace> sorted = blocks_;
        std::sort(sorted.begin(), sorted.end(), [](const Subspace& a, const Subspace& b) {
            if (a.dim() != b.dim()) return a.dim() > b.dim();
            return a < b;
        });
        return System(tw_, k_, std::move(sorted));
    }

    friend bool operator==(const System& a, const System& b) {
        return a.k_ == b.k_ && a.blocks_ == b.blocks_;
    }

  private:
    TowerPtr tw_;
    std::uint32_t k_;
    std::vector<Subspace> blocks_;
};

inline bool canonically_equal(const System& a, const System& b) {
    return a.canonical() == b.canonical();
}

/// System associated with a code: U_i is the F_q-span of the columns of G_i.
inline System system_of(const SumRankCode& C) {
    return System(C.tower(), C.dimension(), C.block_spans());
}

/// Code associated with a system: block columns are the canonical bases.
inline SumRankCode code_of(const System& S) {
    std::uint32_t k = S.ambient_dim();
    BlockProfile profile = S.profile();
    FMat G(k, profile.N());
    std::uint32_t off = 0;
    for (const Subspace& U : S.blocks()) {
        for (const Vec& b : U.basis()) {
            for (std::uint32_t r = 0; r < k; ++r) G.at(r, off) = b[r];
            ++off;
        }
    }
    return SumRankCode(S.tower(), std::move(profile), k, std::move(G));
}

/// Cutting predicate: every hyperplane H satisfies
/// <U_1 cap H, ..., U_t cap H>_{F_{q^m}} = H. The span is tested by taking the
/// F_q-span of the intersections, closing it under multiplication by gamma,
/// and comparing the F_q-dimension against m*(k-1).
inline bool is_cutting(const System& S) {
    const TowerPtr& tw = S.tower();
    const Tower& T = *tw;
    std::uint32_t k = S.ambient_dim();
    bool cutting = true;
    for_each_subspace_codim(tw, k, 1, [&](const FqmSubspace& H) {
        if (!cutting) return;
        std::vector<Vec> gens;
        for (const Subspace& U : S.blocks()) {
            Subspace I = intersect_basis(U, H);
            for (const Vec& b : I.basis())
                for (Fe g : T.gamma) gens.push_back(scale_vec(T, g, b));
        }
        if (Subspace::span(tw, k, gens).dim() != T.m * (k - 1)) cutting = false;
    });
    return cutting;
}

/// Definition-side minimality oracle: exhaustive support-containment scan
/// over unordered pairs of non-proportional projective codeword classes.
inline bool is_minimal_definition(const SumRankCode& C) {
    const Tower& T = *C.tower();
    Int classes = projective_point_count(T, C.dimension());
    guard_scale(classes.fits_ulong_p() ? classes.get_ui() : scale_cap() + 1,
                "projective codeword classes");
    std::vector<SumRankSupport> supports;
    C.for_each_projective_codeword([&](const Vec&, const Vec& cw) {
        supports.push_back(support(T, C.profile(), cw));
    });
    for (std::size_t i = 0; i < supports.size(); ++i)
        for (std::size_t j = i + 1; j < supports.size(); ++j)
            if (support_contained(T, supports[i], supports[j]) ||
                support_contained(T, supports[j], supports[i]))
                return false;
    return true;
}

/// Fast-path minimality check through the cutting correspondence.
inline bool is_minimal(const SumRankCode& C) { return is_cutting(system_of(C)); }

/// Additional columns and/or blocks for extend().
struct Extension {
    // (block index, columns to append to that block)
    std::vector<std::pair<std::uint32_t, std::vector<Vec>>> block_columns;
    // entirely new blocks, each a list of columns
    std::vector<std::vector<Vec>> new_blocks;
};

/// Augments the generator matrix of C; the resulting profile is re-sorted
/// descending. Throws DegenerateExtension if any resulting block has
/// F_q-dependent columns.
inline SumRankCode extend(const SumRankCode& C, const Extension& ext) {
    std::uint32_t k = C.dimension();
    std::vector<std::vector<Vec>> blocks;
    for (std::uint32_t i = 0; i < C.profile().t(); ++i) {
        std::vector<Vec> cols;
        for (std::uint32_t j = 0; j < C.profile().n[i]; ++j)
            cols.push_back(C.column(C.profile().offset(i) + j));
        blocks.push_back(std::move(cols));
    }
    for (const auto& [idx, cols] : ext.block_columns) {
        if (idx >= blocks.size()) throw Error("extension block index out of range");
        blocks[idx].insert(blocks[idx].end(), cols.begin(), cols.end());
    }
    for (const auto& nb : ext.new_blocks) {
        if (nb.empty()) throw DegenerateExtension("new block has no columns");
        blocks.push_back(nb);
    }
    for (const auto& cols : blocks)
        if (Subspace::span(C.tower(), k, cols).dim() != cols.size())
            throw DegenerateExtension("extended block has F_q-dependent columns");
    std::stable_sort(blocks.begin(), blocks.end(),
                     [](const auto& a, const auto& b) { return a.size() > b.size(); });
    BlockProfile profile;
    for (const auto& cols : blocks) profile.n.push_back(static_cast<std::uint32_t>(cols.size()));
    FMat G(k, profile.N());
    std::uint32_t off = 0;
    for (const auto& cols : blocks)
        for (const Vec& c : cols) {
            for (std::uint32_t r = 0; r < k; ++r) G.at(r, off) = c[r];
            ++off;
        }
    return SumRankCode(C.tower(), std::move(profile), k, std::move(G));
}

/// Exact identity behind the standard-equation checks: for every r,
/// sum over r-dim F_{q^m}-subspaces W and blocks of |W cap U_i \ {0}|
/// equals (q^{n_1} + ... + q^{n_t} - t) * gauss(k-1, r-1, q^m).
inline bool standard_equations_hold(const System& S) {
    const TowerPtr& tw = S.tower();
    std::uint32_t k = S.ambient_dim();
    std::uint64_t q = tw->q;
    Int rhs_base = -static_cast<long>(S.t());
    for (const Subspace& U : S.blocks()) rhs_base += int_pow(q, U.dim());
    for (std::uint32_t r = 1; r < k; ++r) {
        Int lhs = 0;
        for_each_subspace_codim(tw, k, k - r, [&](const FqmSubspace& W) {
            for (const Subspace& U : S.blocks())
                lhs += int_pow(q, intersect_dim(U, W)) - 1;
        });
        if (lhs != rhs_base * gauss_binomial(k - 1, r - 1, tw->size)) return false;
    }
    return true;
}

}  // namespace sumrank
