#pragma once

#include <set>

#include "sumrank/system.hpp"

namespace sumrank {

// ---------------------------------------------------------------------------
// Associated Hamming-metric code
// ---------------------------------------------------------------------------

/// Multiset expansion of a sum-rank code into a Hamming-metric code: one
/// column per projective point of each block's linear set, with multiplicity
/// (q^w - 1)/(q - 1) for a point of weight w.
struct HammingExpansion {
    Int M = 0;       // (q^{n_1} + ... + q^{n_t} - t)/(q - 1)
    FMat G_ext;      // k x M
    std::vector<std::uint32_t> weights;  // distinct nonzero Hamming weights, ascending
};

inline Int hamming_length(const Tower& T, const BlockProfile& profile) {
    Int s = -static_cast<long>(profile.t());
    for (std::uint32_t ni : profile.n) s += int_pow(T.q, ni);
    return s / (T.q - 1);
}

inline HammingExpansion hamming_expand(const SumRankCode& C) {
    const Tower& T = *C.tower();
    HammingExpansion H;
    H.M = hamming_length(T, C.profile());
    guard_scale(H.M.fits_ulong_p() ? H.M.get_ui() : scale_cap() + 1, "Hamming expansion length");
    std::vector<Vec> cols;
    for (std::uint32_t i = 0; i < C.profile().t(); ++i) {
        for (const auto& pw : linear_set(C.block_span(i))) {
            Int mult = (int_pow(T.q, pw.weight) - 1) / (T.q - 1);
            for (Int c = 0; c < mult; ++c) cols.push_back(pw.point);
        }
    }
    if (Int(cols.size()) != H.M) throw Error("Hamming expansion column count mismatch");
    H.G_ext = FMat(C.dimension(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::uint32_t r = 0; r < C.dimension(); ++r) H.G_ext.at(r, j) = cols[j][r];

    // Cross-check: the direct Hamming weight of v*G_ext must equal the
    // rank-list formula sum_i (q^{n_i} - q^{n_i - r_i})/(q - 1) for every
    // projective message.
    std::set<std::uint32_t> wset;
    for_each_projective_point(C.tower(), C.dimension(), [&](const Vec& v) {
        std::uint32_t direct = 0;
        for (std::size_t j = 0; j < cols.size(); ++j) {
            Fe s = T.zero();
            for (std::uint32_t r = 0; r < C.dimension(); ++r)
                s = T.add(s, T.mul(v[r], H.G_ext.at(r, j)));
            if (!is_zero(s)) ++direct;
        }
        RankList rl = rank_list(T, C.profile(), C.encode(v));
        Int formula = 0;
        for (std::uint32_t i = 0; i < C.profile().t(); ++i)
            formula +=
                (int_pow(T.q, C.profile().n[i]) - int_pow(T.q, C.profile().n[i] - rl[i])) / (T.q - 1);
        if (formula != Int(direct))
            throw Error("Hamming weight formula disagrees with direct expansion weight");
        wset.insert(direct);
    });
    H.weights.assign(wset.begin(), wset.end());
    return H;
}

// ---------------------------------------------------------------------------
// Ashikhmin-Barg condition
// ---------------------------------------------------------------------------

struct ABReport {
    Int delta_max = 0;
    Int delta_min = 0;
    Rat threshold;  // q^m/(q^m - 1), exact
    bool satisfied = false;
};

/// Realized rank-lists of the code, over projective codeword classes.
inline std::set<RankList> rank_list_set(const SumRankCode& C) {
    const Tower& T = *C.tower();
    std::set<RankList> S;
    C.for_each_projective_codeword(
        [&](const Vec&, const Vec& cw) { S.insert(rank_list(T, C.profile(), cw)); });
    return S;
}

/// delta_max/delta_min over the associated Hamming weights of the realized
/// rank-list set, compared against q^m/(q^m-1) in exact rational arithmetic.
/// Satisfied implies minimal (one direction only).
inline ABReport ab_condition(const SumRankCode& C) {
    const Tower& T = *C.tower();
    ABReport rep;
    rep.threshold = Rat(int_pow(T.size, 1), int_pow(T.size, 1) - 1);
    rep.threshold.canonicalize();
    bool first = true;
    for (const RankList& rl : rank_list_set(C)) {
        Int delta = 0;
        for (std::uint32_t i = 0; i < C.profile().t(); ++i)
            delta +=
                (int_pow(T.q, C.profile().n[i]) - int_pow(T.q, C.profile().n[i] - rl[i])) / (T.q - 1);
        if (first) {
            rep.delta_max = rep.delta_min = delta;
            first = false;
        } else {
            if (delta > rep.delta_max) rep.delta_max = delta;
            if (delta < rep.delta_min) rep.delta_min = delta;
        }
    }
    Rat ratio(rep.delta_max, rep.delta_min);
    ratio.canonicalize();
    rep.satisfied = ratio < rep.threshold;
    return rep;
}

// ---------------------------------------------------------------------------
// Length bounds for minimal codes
// ---------------------------------------------------------------------------

inline std::uint32_t ceil_log(std::uint64_t q, std::uint64_t x) {
    std::uint32_t a = 0;
    Int acc = 1;
    while (acc < Int(static_cast<unsigned long>(x))) {
        acc *= static_cast<unsigned long>(q);
        ++a;
    }
    return a;
}

struct BoundsReport {
    std::uint32_t t = 0, k = 0, N = 0;
    bool minimal_certified = false;
    std::uint32_t max_w = 0;
    bool max_weight_bound = false;  // max_w <= N - k + 1
    bool used_bound1 = false;       // t >= k case
    Int lhs = 0, rhs = 0;
    bool holds = false;
    bool equality = false;
    bool asymptotic_holds = false;  // advisory (valid for large q only)
};

/// Evaluates the applicable length bound in exact integers. The asymptotic
/// predicate is reported as an advisory flag, never asserted.
inline BoundsReport check_length_bounds(const SumRankCode& C) {
    const Tower& T = *C.tower();
    BoundsReport rep;
    rep.t = C.profile().t();
    rep.k = C.dimension();
    rep.N = C.length();
    rep.minimal_certified = is_minimal(C);
    rep.max_w = max_weight(C);
    rep.max_weight_bound = rep.max_w <= rep.N - rep.k + 1;

    Int sum_qn = -static_cast<long>(rep.t);
    for (std::uint32_t ni : C.profile().n) sum_qn += int_pow(T.q, ni);
    Int left_factor = int_pow(T.size, rep.k - 1) - 1;  // q^{m(k-1)} - 1
    rep.lhs = sum_qn * left_factor;
    if (rep.t >= rep.k) {
        rep.used_bound1 = true;
        rep.rhs = Int(T.q - 1) * (rep.k - 1) * (int_pow(T.size, rep.k) - 1);
        rep.asymptotic_holds =
            rep.N >= rep.t + T.m + ceil_log(T.q, rep.k);
    } else {
        rep.used_bound1 = false;
        std::uint32_t fl = (rep.k - 1) / rep.t;
        rep.rhs = Int(rep.t) * (int_pow(T.q, fl) - 1) * (int_pow(T.size, rep.k) - 1);
        rep.asymptotic_holds =
            rep.N >= fl + T.m + ceil_log(T.q, rep.t) + rep.t - 1;
    }
    rep.holds = rep.lhs >= rep.rhs;
    rep.equality = rep.lhs == rep.rhs;
    return rep;
}

// ---------------------------------------------------------------------------
// Standard equations and existence margin
// ---------------------------------------------------------------------------

inline bool standard_equations_check(const System& S) { return standard_equations_hold(S); }

/// Gauss binomial with base q (not q^m), needed by the existence count.
inline Int gauss_binomial_q(std::uint64_t N, std::uint64_t K, std::uint64_t q) {
    return gauss_binomial(N, K, q);
}

/// Exact evaluation of the existence expression: positive value implies the
/// existence of a minimal [n, k] code. Requires n_i >= m for all i.
inline Rat existence_margin(std::uint64_t q, std::uint32_t m, std::uint32_t k,
                            const std::vector<std::uint32_t>& n) {
    for (std::uint32_t ni : n)
        if (ni < m) throw HypothesisViolated("existence bound requires n_i >= m for all i");
    std::uint32_t t = static_cast<std::uint32_t>(n.size());
    std::uint64_t N = 0;
    for (std::uint32_t ni : n) N += ni;
    Int qm = int_pow(q, m);
    Rat term1(
        (int_pow(q, (std::uint64_t)m * N) - 1) * (int_pow(q, (std::uint64_t)m * (N - 1)) - 1),
        (int_pow(q, (std::uint64_t)m * k) - 1) * (int_pow(q, (std::uint64_t)m * (k - 1)) - 1));
    term1.canonicalize();

    Int inner_sum = 0;
    if (m >= 2 && t >= 1) {
        std::vector<std::uint32_t> idx(t, 2);
        while (true) {
            Int prod = 1;
            for (std::uint32_t r = 0; r < t; ++r) {
                std::uint32_t ir = idx[r];
                Int factor = gauss_binomial_q(m, ir, q);
                for (std::uint32_t j = 0; j < ir; ++j) factor *= int_pow(q, n[r]) - int_pow(q, j);
                factor *= (int_pow(q, (std::uint64_t)m * ir) - 1) / (qm - 1) - 1;
                prod *= factor;
            }
            inner_sum += prod;
            std::uint32_t pos = 0;
            while (pos < t) {
                if (++idx[pos] <= m) break;
                idx[pos] = 2;
                ++pos;
            }
            if (pos == t) break;
        }
    }
    Rat term2(inner_sum, 2 * (qm - 1));
    term2.canonicalize();
    Rat margin = term1 - term2;
    margin.canonicalize();
    return margin;
}

// ---------------------------------------------------------------------------
// MSRD minimality characterization
// ---------------------------------------------------------------------------

struct MsrdMinimalWitness {
    bool minimal = false;
    bool one_weight = false;
    std::uint32_t d = 0;
    bool biconditional = false;  // minimal <=> (one-weight with d = N-k+1)
};

/// For MSRD codes: minimal iff one-weight with d = N-k+1, returned as a
/// verified biconditional witness. Throws NotMSRD otherwise.
inline MsrdMinimalWitness msrd_minimal_check(const SumRankCode& C) {
    auto [wmin, wmax] = min_max_weight(C);
    if (wmin != C.length() - C.dimension() + 1) throw NotMSRD("code is not MSRD");
    MsrdMinimalWitness w;
    w.d = wmin;
    w.one_weight = (wmin == wmax);
    w.minimal = is_minimal(C);
    w.biconditional = (w.minimal == (w.one_weight && w.d == C.length() - C.dimension() + 1));
    if (!w.biconditional) throw Error("MSRD minimality characterization violated");
    return w;
}

}  // namespace sumrank
