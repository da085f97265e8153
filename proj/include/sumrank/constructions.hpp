#pragma once

#include <numeric>
#include <set>

#include "sumrank/analysis.hpp"
#include "sumrank/gdual.hpp"

namespace sumrank {

/// Family tag plus parameters, recorded as provenance in emitted files.
struct ConstructionRecipe {
    std::string family;
    std::vector<std::pair<std::string, std::string>> params;
};

// ---------------------------------------------------------------------------
// Field model F_{q^m}^k = F_{q^{mk}}
// ---------------------------------------------------------------------------

/// Realizes F_{q^m}^k as the field F_{q^{mk}}: the standard tower's F_{q^m}
/// embeds as the subfield fixed by x -> x^{q^m}, and coordinates are taken
/// with respect to the F_{q^m}-basis (1, h, ..., h^{k-1}) for h primitive.
class FieldEmbedding {
  public:
    FieldEmbedding(TowerPtr std_tower, std::uint32_t k) : std_(std::move(std_tower)), k_(k) {
        const Tower& S = *std_;
        big_ = make_tower(S.p, S.e, S.m * k);
        const Tower& B = *big_;

        // root of the standard modulus inside the q^m-element subfield of B
        std::vector<Fe> candidates{B.zero()};
        std::uint32_t step = (B.size - 1) / (S.size - 1);
        Fe g = B.generator();
        for (std::uint32_t j = 0; j < S.size - 1; ++j)
            candidates.push_back(B.pow(g, (std::uint64_t)j * step));
        std::sort(candidates.begin(), candidates.end());
        rho_ = B.zero();
        bool found = false;
        for (Fe x : candidates) {
            Fe acc = B.zero();
            for (std::uint32_t i = S.em + 1; i-- > 0;)
                acc = B.add(B.mul(acc, x), Fe{S.modulus[i]});
            if (is_zero(acc)) {
                rho_ = x;
                found = true;
                break;
            }
        }
        if (!found) throw Error("standard modulus has no root in the big field");

        h_pow_.resize(k_);
        h_pow_[0] = B.one();
        for (std::uint32_t j = 1; j < k_; ++j) h_pow_[j] = B.mul(h_pow_[j - 1], g);

        std::uint32_t n = B.em;
        std::vector<std::uint32_t> mat(n * n);
        for (std::uint32_t j = 0; j < k_; ++j) {
            Fe rp = B.one();
            for (std::uint32_t i = 0; i < S.em; ++i) {
                auto col = B.coeffs(B.mul(rp, h_pow_[j]));
                for (std::uint32_t r = 0; r < n; ++r) mat[r * n + i + j * S.em] = col[r];
                rp = B.mul(rp, rho_);
            }
        }
        minv_ = fp_inverse(std::move(mat), n, B.p);
    }

    const TowerPtr& big() const { return big_; }
    const TowerPtr& standard() const { return std_; }

    /// Embedding of the standard F_{q^m} into the big field.
    Fe embed(Fe x) const {
        const Tower& B = *big_;
        auto c = std_->coeffs(x);
        Fe acc = B.zero();
        for (std::uint32_t i = std_->em; i-- > 0;) acc = B.add(B.mul(acc, rho_), Fe{c[i]});
        return acc;
    }

    /// Coordinates of a big-field element over (1, h, ..., h^(k-1)).
    Vec to_std_vector(Fe y) const {
        const Tower& B = *big_;
        std::uint32_t n = B.em;
        auto rhs = B.coeffs(y);
        Vec out(k_);
        for (std::uint32_t j = 0; j < k_; ++j) {
            std::vector<std::uint32_t> digits(std_->em);
            for (std::uint32_t i = 0; i < std_->em; ++i) {
                std::uint64_t acc = 0;
                std::uint32_t r = i + j * std_->em;
                for (std::uint32_t c = 0; c < n; ++c) acc += (std::uint64_t)minv_[r * n + c] * rhs[c];
                digits[i] = static_cast<std::uint32_t>(acc % B.p);
            }
            out[j] = std_->from_coeffs(digits);
        }
        return out;
    }

    Fe from_std_vector(const Vec& v) const {
        const Tower& B = *big_;
        Fe acc = B.zero();
        for (std::uint32_t j = 0; j < k_; ++j) acc = B.add(acc, B.mul(embed(v[j]), h_pow_[j]));
        return acc;
    }

    Subspace to_std_subspace(const Subspace& U_big) const {
        std::vector<Vec> gens;
        for (const Vec& b : U_big.basis()) gens.push_back(to_std_vector(b[0]));
        return Subspace::span(std_, k_, gens);
    }

    Subspace to_big_subspace(const Subspace& U_std) const {
        std::vector<Vec> gens;
        for (const Vec& b : U_std.basis()) gens.push_back({from_std_vector(b)});
        return Subspace::span(big_, 1, gens);
    }

  private:
    TowerPtr std_;
    TowerPtr big_;
    std::uint32_t k_;
    Fe rho_;
    std::vector<Fe> h_pow_;
    std::vector<std::uint32_t> minv_;
};

// ---------------------------------------------------------------------------
// Point-weight scans shared by the constructions
// ---------------------------------------------------------------------------

/// Total linear-set weight of every projective point, in enumeration order.
inline std::vector<std::pair<Vec, std::uint32_t>> total_point_weights(
    const TowerPtr& tw, std::uint32_t k, const std::vector<Subspace>& blocks) {
    std::vector<std::pair<Vec, std::uint32_t>> totals;
    for_each_projective_point(tw, k, [&](const Vec& v) {
        FqmSubspace line = FqmSubspace::span(tw, k, {v});
        std::uint32_t s = 0;
        for (const Subspace& U : blocks) s += intersect_dim(U, line);
        totals.emplace_back(v, s);
    });
    return totals;
}

/// Asserts that the blocks' linear sets have constant total point weight and
/// returns that weight.
inline std::uint32_t constant_point_weight(const TowerPtr& tw, std::uint32_t k,
                                           const std::vector<Subspace>& blocks) {
    auto totals = total_point_weights(tw, k, blocks);
    std::uint32_t M = totals.front().second;
    for (const auto& [v, s] : totals)
        if (s != M) throw Error("total point weight is not constant");
    return M;
}

inline void expect_one_weight(const SumRankCode& C, const char* what) {
    auto [wmin, wmax] = min_max_weight(C);
    if (wmin != wmax) throw Error(std::string(what) + ": construction is not one-weight");
}

// ---------------------------------------------------------------------------
// Orbital construction
// ---------------------------------------------------------------------------

/// Singer orbit of U: blocks g^j * U for coset representatives of F_{q^m}^*
/// in F_{q^{mk}}^*, one block per coset class, t = (q^{mk}-1)/(q^m-1).
/// Repeated blocks are retained; use block_multiplicities for the report.
inline System singer_orbital(const TowerPtr& tw, std::uint32_t k, const Subspace& U) {
    if (U.dim() == 0) throw Error("orbital construction needs dim(U) >= 1");
    FieldEmbedding emb(tw, k);
    const Tower& B = *emb.big();
    Subspace U_big = emb.to_big_subspace(U);
    std::uint64_t t = (B.size - 1) / (tw->size - 1);
    guard_scale(t, "orbit blocks");
    Fe g = B.generator();
    std::vector<Subspace> blocks;
    blocks.reserve(t);
    for (std::uint64_t j = 0; j < t; ++j)
        blocks.push_back(emb.to_std_subspace(U_big.scaled(B.pow(g, j))));
    System S(tw, k, std::move(blocks));
    expect_one_weight(code_of(S), "orbital");
    return S;
}

/// Multiplicity of each block among the blocks of S (canonical equality).
inline std::vector<std::uint32_t> block_multiplicities(const System& S) {
    std::vector<std::uint32_t> mult(S.t(), 0);
    for (std::uint32_t i = 0; i < S.t(); ++i)
        for (std::uint32_t j = 0; j < S.t(); ++j)
            if (S.block(i) == S.block(j)) ++mult[i];
    return mult;
}

// ---------------------------------------------------------------------------
// Doubly extended linearized Reed-Solomon codes of dimension 2
// ---------------------------------------------------------------------------

/// Smallest q-1 field elements (in index order) with pairwise distinct norms.
inline std::vector<Fe> default_norm_representatives(const Tower& T) {
    std::vector<Fe> out;
    std::set<std::uint32_t> seen;
    for (std::uint32_t idx = 1; idx < T.size && out.size() < T.q - 1; ++idx) {
        Fe a{idx};
        if (seen.insert(T.norm_rel(a).v).second) out.push_back(a);
    }
    return out;
}

inline void validate_norm_list(const Tower& T, const std::vector<Fe>& a_list) {
    if (a_list.size() != T.q - 1)
        throw NormClash("need exactly q-1 slope elements, got " + std::to_string(a_list.size()));
    std::set<std::uint32_t> norms;
    for (Fe a : a_list) {
        if (is_zero(a)) throw NormClash("slope element 0 has norm 0");
        if (!norms.insert(T.norm_rel(a).v).second)
            throw NormClash("slope elements do not have pairwise distinct norms");
    }
}

/// System ({(x, a_i x^q)}_i, <(1,0)>_{F_q}, <(0,1)>_{F_q}) with parameters
/// [(m,...,m,1,1), 2]. One-weight MSRD with d = (q-1)m + 1; the associated
/// linear sets partition PG(1, q^m). All postconditions are verified.
inline SumRankCode dlrs2(const TowerPtr& tw, std::vector<Fe> a_list = {}) {
    const Tower& T = *tw;
    if (a_list.empty()) a_list = default_norm_representatives(T);
    validate_norm_list(T, a_list);
    std::vector<Subspace> blocks;
    for (Fe a : a_list) {
        std::vector<Vec> gens;
        for (Fe g : T.gamma) gens.push_back({g, T.mul(a, T.pow(g, T.q))});
        blocks.push_back(Subspace::span(tw, 2, gens));
    }
    blocks.push_back(Subspace::span(tw, 2, {Vec{T.one(), T.zero()}}));
    blocks.push_back(Subspace::span(tw, 2, {Vec{T.zero(), T.one()}}));
    if (constant_point_weight(tw, 2, blocks) != 1)
        throw Error("dlrs2 linear sets do not partition the projective line");
    SumRankCode C = code_of(System(tw, 2, blocks));
    auto [wmin, wmax] = min_max_weight(C);
    if (wmin != wmax || wmin != (T.q - 1) * T.m + 1)
        throw Error("dlrs2 is not one-weight of weight (q-1)m + 1");
    return C;
}

/// Canonical basis of ker(Tr_{q^m/q}) as field elements (m-1 of them).
inline std::vector<Fe> trace_kernel_basis(const Tower& T) {
    FMat M(1, T.m);
    for (std::uint32_t l = 0; l < T.m; ++l) M.at(0, l) = T.trace_rel(T.gamma[l]);
    FMat K = kernel(std::move(M), T);
    std::vector<Fe> out;
    for (std::size_t r = 0; r < K.rows; ++r) out.push_back(T.from_gamma_coords(K.row(r)));
    return out;
}

/// Explicit generator matrix of the geometric dual of dlrs2 under the
/// alternating form: q-1 blocks with columns (b_j^q, a_i^{q^(m-1)} b_j),
/// then two trace-kernel blocks of width 2m-1. Column orthogonality to the
/// primal blocks and canonical equality with geometric_dual(dlrs2) are
/// verified at runtime.
inline SumRankCode dlrs2_gdual_matrix(const TowerPtr& tw, std::vector<Fe> a_list = {}) {
    const Tower& T = *tw;
    if (a_list.empty()) a_list = default_norm_representatives(T);
    validate_norm_list(T, a_list);
    std::uint32_t m = T.m, q = T.q;
    const std::vector<Fe>& b = T.gamma;
    std::vector<Fe> c = trace_kernel_basis(T);

    DualityContext ctx = DualityContext::alternating2(tw);
    std::vector<std::vector<Vec>> blocks;
    for (Fe a : a_list) {
        Fe a_conj = T.frobenius(a, m - 1);  // a^{q^(m-1)}
        std::vector<Vec> cols;
        for (std::uint32_t j = 0; j < m; ++j)
            cols.push_back({T.pow(b[j], q), T.mul(a_conj, b[j])});
        // each column must be sigma'-orthogonal to U_i = {(x, a x^q)}
        for (const Vec& col : cols)
            for (Fe g : T.gamma)
                if (!is_zero(ctx.sigma_prime({g, T.mul(a, T.pow(g, q))}, col)))
                    throw Error("dual block column is not orthogonal to its primal block");
        blocks.push_back(std::move(cols));
    }
    std::vector<Vec> blk_q, blk_q1;
    for (std::uint32_t j = 0; j < m; ++j) blk_q.push_back({b[j], T.zero()});
    for (std::uint32_t j = 0; j + 1 < m; ++j) blk_q.push_back({T.zero(), c[j]});
    for (std::uint32_t j = 0; j < m; ++j) blk_q1.push_back({T.zero(), b[j]});
    for (std::uint32_t j = 0; j + 1 < m; ++j) blk_q1.push_back({c[j], T.zero()});
    blocks.push_back(std::move(blk_q));
    blocks.push_back(std::move(blk_q1));

    BlockProfile profile;
    for (const auto& cols : blocks) profile.n.push_back(static_cast<std::uint32_t>(cols.size()));
    FMat G(2, profile.N());
    std::uint32_t off = 0;
    for (const auto& cols : blocks)
        for (const Vec& col : cols) {
            G.at(0, off) = col[0];
            G.at(1, off) = col[1];
            ++off;
        }
    SumRankCode D(tw, std::move(profile), 2, std::move(G));

    SumRankCode via_dual = geometric_dual(dlrs2(tw, a_list), ctx);
    if (!canonically_equal(system_of(D), system_of(via_dual)))
        throw Error("explicit dual generator does not match the geometric dual");
    expect_one_weight(D, "dlrs2 dual");
    return D;
}

// ---------------------------------------------------------------------------
// Partitions of projective spaces into scattered linear sets
// ---------------------------------------------------------------------------

/// Partition of PG(2, q^m): every line through a fixed point P (and one
/// transversal line) is partitioned by transported dlrs2 line partitions,
/// leaving (q-1)(q^m+2) scattered m-dim blocks plus 3 one-dim point blocks.
/// Constant total point weight 1 is verified.
inline System plane_partition(const TowerPtr& tw) {
    const Tower& T = *tw;
    std::vector<Fe> a_list = default_norm_representatives(T);
    Vec v = {T.one(), T.zero(), T.zero()};  // P

    std::vector<Vec> qpoints;  // the points Q_i of the line x_0 = 0
    for (std::uint32_t idx = 0; idx < T.size; ++idx)
        qpoints.push_back({T.zero(), T.one(), Fe{idx}});
    qpoints.push_back({T.zero(), T.zero(), T.one()});

    std::vector<Subspace> blocks;
    // lines through P, partitioned minus {P, Q_i}
    for (const Vec& vi : qpoints)
        for (Fe a : a_list) {
            std::vector<Vec> gens;
            for (Fe g : T.gamma) {
                Vec w = add_vec(T, scale_vec(T, g, v), scale_vec(T, T.mul(a, T.pow(g, T.q)), vi));
                gens.push_back(w);
            }
            blocks.push_back(Subspace::span(tw, 3, gens));
        }
    // the transversal line itself, minus {Q_1, Q_2}
    for (Fe a : a_list) {
        std::vector<Vec> gens;
        for (Fe g : T.gamma) {
            Vec w = add_vec(T, scale_vec(T, g, qpoints[0]),
                            scale_vec(T, T.mul(a, T.pow(g, T.q)), qpoints[1]));
            gens.push_back(w);
        }
        blocks.push_back(Subspace::span(tw, 3, gens));
    }
    blocks.push_back(Subspace::span(tw, 3, {v}));
    blocks.push_back(Subspace::span(tw, 3, {qpoints[0]}));
    blocks.push_back(Subspace::span(tw, 3, {qpoints[1]}));

    if (constant_point_weight(tw, 3, blocks) != 1)
        throw Error("plane partition does not have constant point weight 1");
    return System(tw, 3, std::move(blocks));
}

/// Partition of PG(k-1, q^m) into canonical subgeometries PG(k-1, q),
/// realized as multiplicative cosets of F_{q^k}^* F_{q^m}^* in F_{q^{mk}}^*.
/// Requires gcd(k, m) = 1; the partition property is verified pointwise.
inline System subgeometry_partition(const TowerPtr& tw, std::uint32_t k) {
    const Tower& T = *tw;
    if (std::gcd<std::uint64_t>(k, T.m) != 1)
        throw GcdViolation("subgeometry partition requires gcd(k, m) = 1");
    FieldEmbedding emb(tw, k);
    const Tower& B = *emb.big();
    std::uint64_t qk = detail::pow_u64(T.q, k);
    Fe g = B.generator();
    Fe hk = B.pow(g, (B.size - 1) / (qk - 1));  // generates F_{q^k}^*

    std::vector<Vec> f_qk_basis;  // F_q-basis of F_{q^k}: powers of hk
    Fe cur = B.one();
    for (std::uint32_t i = 0; i < k; ++i) {
        f_qk_basis.push_back({cur});
        cur = B.mul(cur, hk);
    }
    Subspace U0 = Subspace::span(emb.big(), 1, f_qk_basis);
    if (U0.dim() != k) throw Error("F_{q^k} basis is degenerate");

    std::uint64_t subgroup = (qk - 1) / (T.q - 1) * (T.size - 1);
    std::uint64_t t = (B.size - 1) / subgroup;
    guard_scale(t, "subgeometry blocks");
    std::vector<Subspace> blocks;
    for (std::uint64_t j = 0; j < t; ++j)
        blocks.push_back(emb.to_std_subspace(U0.scaled(B.pow(g, j))));

    if (constant_point_weight(tw, k, blocks) != 1)
        throw Error("subgeometries do not partition the projective space");
    System S(tw, k, std::move(blocks));
    expect_one_weight(code_of(S), "subgeometry partition");
    return S;
}

// ---------------------------------------------------------------------------
// Lift and the one-weight extension
// ---------------------------------------------------------------------------

/// Appends point-supported blocks until the total point weight is constant:
/// a point with deficiency c*m + d gains c copies of <v>_{F_{q^m}} and, when
/// d > 0, the span of the first d gamma-multiples of v.
inline System lift(const std::vector<Subspace>& us) {
    if (us.empty()) throw Error("lift needs a nonempty list of subspaces");
    TowerPtr tw = us.front().tower();
    const Tower& T = *tw;
    std::uint32_t k = us.front().ambient_dim();
    for (const Subspace& U : us)
        if (U.dim() == 0) throw Error("lift blocks must have dimension >= 1");

    auto totals = total_point_weights(tw, k, us);
    std::uint32_t M = 0;
    for (const auto& [v, s] : totals) M = std::max(M, s);

    std::vector<Subspace> blocks = us;
    for (const auto& [v, s] : totals) {
        std::uint32_t deficiency = M - s;
        std::uint32_t copies = deficiency / T.m, d = deficiency % T.m;
        for (std::uint32_t c = 0; c < copies; ++c)
            blocks.push_back(FqmSubspace::span(tw, k, {v}).as_fq_subspace());
        if (d > 0) {
            std::vector<Vec> gens;
            for (std::uint32_t l = 0; l < d; ++l) gens.push_back(scale_vec(T, T.gamma[l], v));
            blocks.push_back(Subspace::span(tw, k, gens));
        }
    }
    if (constant_point_weight(tw, k, blocks) != M)
        throw Error("lift did not reach constant point weight");
    return System(tw, k, std::move(blocks));
}

/// Extends C to a one-weight code: lift the dual system, dualize the added
/// blocks back, and append their canonical bases to the generator matrix.
/// The output generator has C's generator as a blockwise prefix.
inline SumRankCode one_weight_extension(const SumRankCode& C, const DualityContext& ctx) {
    const Tower& T = *C.tower();
    std::uint32_t k = C.dimension(), km = k * T.m;
    for (std::uint32_t ni : C.profile().n)
        if (ni >= km)
            throw PreconditionViolated("a block spans the full F_q-space; its dual is trivial");
    System S = system_of(C);
    if (!gdual_precondition(S))
        throw PreconditionViolated("intersection of the blocks contains an F_{q^m}-line");

    std::vector<Subspace> duals;
    for (const Subspace& U : S.blocks()) duals.push_back(perp_prime(U, ctx));
    System lifted = lift(duals);

    std::vector<Subspace> extra;
    for (std::uint32_t i = S.t(); i < lifted.t(); ++i)
        extra.push_back(perp_prime(lifted.block(i), ctx));

    BlockProfile profile = C.profile();
    std::uint32_t extra_cols = 0;
    for (const Subspace& W : extra) {
        profile.n.push_back(W.dim());
        extra_cols += W.dim();
    }
    FMat G(k, C.length() + extra_cols);
    for (std::uint32_t r = 0; r < k; ++r)
        for (std::uint32_t j = 0; j < C.length(); ++j) G.at(r, j) = C.generator().at(r, j);
    std::uint32_t off = C.length();
    for (const Subspace& W : extra)
        for (const Vec& bvec : W.basis()) {
            for (std::uint32_t r = 0; r < k; ++r) G.at(r, off) = bvec[r];
            ++off;
        }
    SumRankCode out(C.tower(), std::move(profile), k, std::move(G));
    expect_one_weight(out, "one-weight extension");
    return out;
}

// ---------------------------------------------------------------------------
// Two-weight families from disjoint scattered linear sets
// ---------------------------------------------------------------------------

/// Geometric dual of the code associated with mutually disjoint scattered
/// linear sets that do not cover the space. Parameters [(mk-n_i), k]; the
/// weights {tm, tm-1} and the rank-list set are verified against the
/// two-weight theorem.
inline SumRankCode disjoint_scattered_code(const std::vector<Subspace>& us,
                                           const DualityContext& ctx) {
    if (us.empty()) throw Error("need at least one scattered subspace");
    TowerPtr tw = us.front().tower();
    const Tower& T = *tw;
    std::uint32_t k = us.front().ambient_dim();

    std::vector<std::set<Vec>> point_sets;
    Int covered = 0;
    for (const Subspace& U : us) {
        if (!is_scattered(U)) throw NotScattered("a block's linear set is not scattered");
        std::set<Vec> pts;
        for (const auto& pw : linear_set(U)) pts.insert(pw.point);
        covered += static_cast<unsigned long>(pts.size());
        point_sets.push_back(std::move(pts));
    }
    for (std::size_t i = 0; i < point_sets.size(); ++i)
        for (std::size_t j = i + 1; j < point_sets.size(); ++j)
            for (const Vec& pt : point_sets[i])
                if (point_sets[j].count(pt))
                    throw NotDisjoint("linear sets are not pairwise disjoint");
    if (covered >= projective_point_count(T, k))
        throw CoversSpace("linear sets cover the whole projective space");

    SumRankCode primal = code_of(System(tw, k, us));
    SumRankCode dual = geometric_dual(primal, ctx);

    std::uint32_t t = primal.profile().t(), m = T.m;
    auto [wmin, wmax] = min_max_weight(dual);
    if (wmin != t * m - 1 || wmax != t * m)
        throw Error("two-weight construction does not have weights {tm-1, tm}");
    std::set<RankList> expected;
    expected.insert(RankList(t, m));
    for (std::uint32_t j = 0; j < t; ++j) {
        RankList rl(t, m);
        rl[j] = m - 1;
        expected.insert(rl);
    }
    if (rank_list_set(dual) != expected)
        throw Error("two-weight construction rank-list set mismatch");
    return dual;
}

/// The k = 3 two-block family from U_1 = {(x, x^q, 0)}, U_2 = {(0, x, x^q)}:
/// a minimal two-weight code whose AB-condition holds exactly when q = 2,
/// and whose single blocks are not minimal. All three facts are verified.
inline SumRankCode two_block_scattered(const TowerPtr& tw) {
    const Tower& T = *tw;
    if (T.m < 2) throw Error("two-block family needs m >= 2");
    std::vector<Vec> g1, g2;
    for (Fe g : T.gamma) {
        g1.push_back({g, T.pow(g, T.q), T.zero()});
        g2.push_back({T.zero(), g, T.pow(g, T.q)});
    }
    Subspace U1 = Subspace::span(tw, 3, g1);
    Subspace U2 = Subspace::span(tw, 3, g2);
    DualityContext ctx = DualityContext::standard_dot(tw, 3);
    SumRankCode C = disjoint_scattered_code({U1, U2}, ctx);

    if (!is_minimal(C)) throw Error("two-block code is unexpectedly non-minimal");
    if (ab_condition(C).satisfied != (T.q == 2))
        throw Error("two-block AB-condition does not match the q = 2 criterion");
    System dual_sys = system_of(C);
    for (const Subspace& W : dual_sys.blocks())
        if (is_minimal(code_of(System(tw, 3, {W}))))
            throw Error("a single dual block is unexpectedly minimal");
    return C;
}

}  // namespace sumrank
