#pragma once

#include "sumrank/system.hpp"

namespace sumrank {

/// True iff U_1 cap ... cap U_t contains no 1-dimensional F_{q^m}-subspace
/// (checked by intersecting and scanning points of the intersection for
/// weight m). This is exactly the condition for the dual tuple to span.
inline bool gdual_precondition(const System& S) {
    Subspace I = S.block(0);
    for (std::uint32_t i = 1; i < S.t(); ++i) I = I.intersect(S.block(i));
    if (I.dim() == 0) return true;
    for (const auto& pw : linear_set(I))
        if (pw.weight == S.tower()->m) return false;
    return true;
}

/// Blockwise dual system (U_1^perp', ..., U_t^perp') in the original order.
inline System dual_system(const System& S, const DualityContext& ctx) {
    std::vector<Subspace> duals;
    duals.reserve(S.t());
    for (const Subspace& U : S.blocks()) duals.push_back(perp_prime(U, ctx));
    return System(S.tower(), S.ambient_dim(), std::move(duals));
}

/// Geometric dual: the code associated with the dual system. Parameters are
/// [(km - n_1, ..., km - n_t), k]; applying it twice returns a code whose
/// system is the canonical primal system.
inline SumRankCode geometric_dual(const SumRankCode& C, const DualityContext& ctx) {
    const Tower& T = *C.tower();
    std::uint32_t km = C.dimension() * T.m;
    for (std::uint32_t ni : C.profile().n)
        if (ni >= km)
            throw PreconditionViolated("a block spans the full F_q-space; its dual is trivial");
    System S = system_of(C);
    if (!gdual_precondition(S))
        throw PreconditionViolated("intersection of the blocks contains an F_{q^m}-line");
    return code_of(dual_system(S, ctx));
}

/// Enumerator pair for one order of the duality relation.
struct EnumeratorPair {
    std::uint32_t order_primal;  // k - r
    std::uint32_t order_dual;    // r
    WeightEnumerator primal;     // order-0 case synthesized as {0 -> 1}
    WeightEnumerator dual;
    bool matches;
};

struct GeometricDualReport {
    BlockProfile primal_profile;
    BlockProfile dual_profile;
    std::uint32_t k = 0;
    std::string form;
    std::vector<EnumeratorPair> orders;
    bool relation_holds = false;       // all coefficient identities
    std::uint32_t d1_primal = 0;       // d_1(C)
    std::uint32_t dk1_dual = 0;        // d_{k-1}(dual)
    bool distance_identity = false;    // d_1 = d_{k-1}(dual) + N - t(k-1)m
};

/// Checks A_w^{k-r}(C) = B_{w - N + trm}^{r}(C^dual) coefficientwise for all
/// orders r, plus the derived minimum-distance identity.
inline GeometricDualReport enumerator_relation_check(const SumRankCode& C,
                                                     const DualityContext& ctx) {
    const Tower& T = *C.tower();
    SumRankCode D = geometric_dual(C, ctx);
    GeometricDualReport rep;
    rep.primal_profile = C.profile();
    rep.dual_profile = D.profile();
    rep.k = C.dimension();
    rep.form = ctx.tag();
    std::uint32_t k = C.dimension(), t = C.profile().t(), m = T.m;
    std::int64_t N = C.length();
    bool all_match = true;
    for (std::uint32_t r = 1; r <= k; ++r) {
        EnumeratorPair pair;
        pair.order_primal = k - r;
        pair.order_dual = r;
        if (r == k) {
            pair.primal.r = 0;
            pair.primal.counts[0] = 1;  // the single codim-0 subspace (ambient)
        } else {
            pair.primal = weight_enumerator(C, k - r);
        }
        pair.dual = weight_enumerator(D, r);
        std::int64_t shift = -N + (std::int64_t)t * r * m;
        std::map<std::uint32_t, Int> shifted;
        for (const auto& [w, c] : pair.primal.counts) {
            std::int64_t w2 = (std::int64_t)w + shift;
            if (w2 < 0 && c > 0) {
                shifted.clear();
                shifted[0] = -1;  // marks impossible shift
                break;
            }
            if (c > 0) shifted[static_cast<std::uint32_t>(w2)] = c;
        }
        std::map<std::uint32_t, Int> dual_nonzero;
        for (const auto& [w, c] : pair.dual.counts)
            if (c > 0) dual_nonzero[w] = c;
        pair.matches = (shifted == dual_nonzero);
        all_match = all_match && pair.matches;
        rep.orders.push_back(std::move(pair));
    }
    rep.relation_holds = all_match;
    rep.d1_primal = generalized_weight(C, 1);
    rep.dk1_dual = k >= 2 ? generalized_weight(D, k - 1) : 0;
    rep.distance_identity =
        (std::int64_t)rep.d1_primal ==
        (std::int64_t)rep.dk1_dual + N - (std::int64_t)t * (k - 1) * m;
    return rep;
}

}  // namespace sumrank
