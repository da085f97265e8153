#pragma once

#include <gmpxx.h>

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "sumrank/linalg.hpp"

namespace sumrank {

using Int = mpz_class;
using Rat = mpq_class;

inline Int int_pow(std::uint64_t base, std::uint64_t e) {
    Int b(static_cast<unsigned long>(base)), r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e));
    return r;
}

/// Gauss binomial coefficient: number of K-dimensional subspaces of F_Q^N.
inline Int gauss_binomial(std::uint64_t N, std::uint64_t K, std::uint64_t Q) {
    if (K > N) return 0;
    Int num = 1, den = 1;
    for (std::uint64_t i = 0; i < K; ++i) {
        num *= int_pow(Q, N) - int_pow(Q, i);
        den *= int_pow(Q, K) - int_pow(Q, i);
    }
    return num / den;
}

// ---------------------------------------------------------------------------
// Coordinate expansion F_{q^m}^k -> F_q^{km} with respect to gamma
// ---------------------------------------------------------------------------

/// F_q-coordinates of v, blockwise per ambient coordinate (m entries each).
inline Vec expand(const Tower& T, const Vec& v) {
    Vec out;
    out.reserve(v.size() * T.m);
    for (Fe x : v) {
        auto c = T.gamma_coords(x);
        out.insert(out.end(), c.begin(), c.end());
    }
    return out;
}

/// Inverse of expand for a row of length k*m.
inline Vec combine(const Tower& T, const Vec& row, std::uint32_t k) {
    Vec v(k);
    for (std::uint32_t j = 0; j < k; ++j) {
        std::vector<Fe> c(row.begin() + j * T.m, row.begin() + (j + 1) * T.m);
        v[j] = T.from_gamma_coords(c);
    }
    return v;
}

inline Vec scale_vec(const Tower& T, Fe s, const Vec& v) {
    Vec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = T.mul(s, v[i]);
    return r;
}

inline Vec add_vec(const Tower& T, const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = T.add(a[i], b[i]);
    return r;
}

inline bool is_zero_vec(const Vec& v) {
    for (Fe x : v)
        if (!is_zero(x)) return false;
    return true;
}

/// Projective normalization: scale so the first nonzero coordinate is 1.
inline Vec normalize_point(const Tower& T, const Vec& v) {
    for (Fe x : v)
        if (!is_zero(x)) return scale_vec(T, T.inv(x), v);
    return v;
}

// ---------------------------------------------------------------------------
// Subspace: F_q-subspace of F_{q^m}^k in canonical echelon form
// ---------------------------------------------------------------------------

class Subspace {
  public:
    Subspace(TowerPtr tw, std::uint32_t k) : tw_(std::move(tw)), k_(k), rows_(0, k * tw_->m) {}

    /// F_q-span of a set of vectors in F_{q^m}^k.
    static Subspace span(TowerPtr tw, std::uint32_t k, const std::vector<Vec>& vectors) {
        Subspace U(std::move(tw), k);
        FMat M(0, k * U.tw_->m);
        for (const Vec& v : vectors) M.append_row(expand(*U.tw_, v));
        rref(M, *U.tw_);
        U.rows_ = std::move(M);
        return U;
    }

    /// Subspace from F_q-coordinate rows (rows are reduced internally).
    static Subspace from_fq_rows(TowerPtr tw, std::uint32_t k, FMat rows) {
        Subspace U(std::move(tw), k);
        rref(rows, *U.tw_);
        U.rows_ = std::move(rows);
        return U;
    }

    const TowerPtr& tower() const { return tw_; }
    std::uint32_t ambient_dim() const { return k_; }
    std::uint32_t dim() const { return static_cast<std::uint32_t>(rows_.rows); }
    const FMat& fq_rows() const { return rows_; }

    std::vector<Vec> basis() const {
        std::vector<Vec> b;
        b.reserve(rows_.rows);
        for (std::size_t r = 0; r < rows_.rows; ++r) b.push_back(combine(*tw_, rows_.row(r), k_));
        return b;
    }

    bool contains(const Vec& v) const {
        FMat M = rows_;
        M.append_row(expand(*tw_, v));
        return rank_of(std::move(M), *tw_) == rows_.rows;
    }

    bool contains(const Subspace& other) const {
        FMat M = stack(rows_, other.rows_);
        return rank_of(std::move(M), *tw_) == rows_.rows;
    }

    Subspace intersect(const Subspace& other) const {
        Subspace U(tw_, k_);
        U.rows_ = row_space_intersection(rows_, other.rows_, *tw_);
        return U;
    }

    Subspace sum(const Subspace& other) const {
        return from_fq_rows(tw_, k_, stack(rows_, other.rows_));
    }

    /// Image under v -> s*v (s a field scalar).
    Subspace scaled(Fe s) const {
        std::vector<Vec> b;
        for (const Vec& v : basis()) b.push_back(scale_vec(*tw_, s, v));
        return span(tw_, k_, b);
    }

    /// Visits every nonzero element once (q^dim - 1 elements).
    void for_each_nonzero(const std::function<void(const Vec&)>& fn) const {
        std::uint32_t n = dim();
        const auto& sf = tw_->subfield();
        std::uint64_t total = 1;
        for (std::uint32_t i = 0; i < n; ++i) total *= sf.size();
        guard_scale(total, "subspace element enumeration");
        std::vector<Vec> bas = basis();
        std::vector<std::size_t> digit(n, 0);
        for (std::uint64_t it = 1; it < total; ++it) {
            std::size_t pos = 0;
            while (true) {
                digit[pos] = (digit[pos] + 1) % sf.size();
                if (digit[pos] != 0) break;
                ++pos;
            }
            Vec v(k_, Fe{0});
            for (std::uint32_t i = 0; i < n; ++i)
                if (digit[i]) v = add_vec(*tw_, v, scale_vec(*tw_, sf[digit[i]], bas[i]));
            fn(v);
        }
    }

    friend bool operator==(const Subspace& x, const Subspace& y) {
        return x.k_ == y.k_ && x.rows_ == y.rows_ && x.tw_->same_parameters(*y.tw_);
    }
    friend bool operator!=(const Subspace& x, const Subspace& y) { return !(x == y); }

    /// Total order on canonical forms (dimension, then echelon entries).
    friend bool operator<(const Subspace& x, const Subspace& y) {
        if (x.rows_.rows != y.rows_.rows) return x.rows_.rows < y.rows_.rows;
        return x.rows_.a < y.rows_.a;
    }

  private:
    TowerPtr tw_;
    std::uint32_t k_;
    FMat rows_;  // RREF over F_q, dim x (k*m)
};

// ---------------------------------------------------------------------------
// FqmSubspace: F_{q^m}-subspace of F_{q^m}^k
// ---------------------------------------------------------------------------

class FqmSubspace {
  public:
    FqmSubspace(TowerPtr tw, std::uint32_t k) : tw_(std::move(tw)), k_(k), rows_(0, k) {}

    static FqmSubspace span(TowerPtr tw, std::uint32_t k, const std::vector<Vec>& vectors) {
        FqmSubspace W(std::move(tw), k);
        FMat M(0, k);
        for (const Vec& v : vectors) M.append_row(v);
        rref(M, *W.tw_);
        W.rows_ = std::move(M);
        return W;
    }

    static FqmSubspace from_rref(TowerPtr tw, std::uint32_t k, FMat rows) {
        FqmSubspace W(std::move(tw), k);
        rref(rows, *W.tw_);
        W.rows_ = std::move(rows);
        return W;
    }

    const TowerPtr& tower() const { return tw_; }
    std::uint32_t ambient_dim() const { return k_; }
    std::uint32_t dim() const { return static_cast<std::uint32_t>(rows_.rows); }
    const FMat& rows() const { return rows_; }

    std::vector<Vec> basis() const {
        std::vector<Vec> b;
        for (std::size_t r = 0; r < rows_.rows; ++r) b.push_back(rows_.row(r));
        return b;
    }

    /// The same space viewed as an F_q-subspace of dimension m*dim.
    Subspace as_fq_subspace() const {
        std::vector<Vec> gens;
        for (const Vec& b : basis())
            for (Fe g : tw_->gamma) gens.push_back(scale_vec(*tw_, g, b));
        return Subspace::span(tw_, k_, gens);
    }

    friend bool operator==(const FqmSubspace& x, const FqmSubspace& y) {
        return x.k_ == y.k_ && x.rows_ == y.rows_;
    }

  private:
    TowerPtr tw_;
    std::uint32_t k_;
    FMat rows_;  // RREF over F_{q^m}, dim x k
};

/// Exact F_q-dimension of U cap W for an F_{q^m}-subspace W.
inline std::uint32_t intersect_dim(const Subspace& U, const FqmSubspace& W) {
    return U.intersect(W.as_fq_subspace()).dim();
}

inline Subspace intersect_basis(const Subspace& U, const FqmSubspace& W) {
    return U.intersect(W.as_fq_subspace());
}

// ---------------------------------------------------------------------------
// Enumeration of points and subspaces
// ---------------------------------------------------------------------------

inline Int projective_point_count(const Tower& T, std::uint32_t k) {
    return (int_pow(T.size, k) - 1) / (T.size - 1);
}

/// Visits one normalized representative per projective point of PG(k-1,q^m).
inline void for_each_projective_point(const TowerPtr& tw, std::uint32_t k,
                                      const std::function<void(const Vec&)>& fn) {
    const Tower& T = *tw;
    Int count = projective_point_count(T, k);
    guard_scale(count.fits_ulong_p() ? count.get_ui() : scale_cap() + 1, "projective points");
    for (std::uint32_t lead = 0; lead < k; ++lead) {
        std::uint32_t free = k - lead - 1;
        std::uint64_t total = detail::pow_u64(T.size, free);
        for (std::uint64_t it = 0; it < total; ++it) {
            Vec v(k, Fe{0});
            v[lead] = T.one();
            std::uint64_t x = it;
            for (std::uint32_t j = 0; j < free; ++j) {
                v[lead + 1 + j] = T.from_index(static_cast<std::uint32_t>(x % T.size));
                x /= T.size;
            }
            fn(v);
        }
    }
}

/// Enumerates d-dimensional subspaces of scalars^cols via reduced echelon
/// forms; `scalars` is either the full field or the subfield table.
inline void for_each_echelon_space(const TowerPtr& tw, const std::vector<Fe>& scalars,
                                   std::uint32_t cols, std::uint32_t d,
                                   const std::function<void(const FMat&)>& fn) {
    if (d > cols) return;
    if (d == 0) {
        FMat M(0, cols);
        fn(M);
        return;
    }
    Int cnt = gauss_binomial(cols, d, scalars.size());
    guard_scale(cnt.fits_ulong_p() ? cnt.get_ui() : scale_cap() + 1, "subspace enumeration");
    // choose pivot columns
    std::vector<std::uint32_t> piv(d);
    for (std::uint32_t i = 0; i < d; ++i) piv[i] = i;
    const Tower& T = *tw;
    while (true) {
        // free positions: (row i, col c) with c > piv[i], c not a pivot
        std::vector<std::pair<std::uint32_t, std::uint32_t>> free_pos;
        std::vector<bool> is_piv(cols, false);
        for (std::uint32_t c : piv) is_piv[c] = true;
        for (std::uint32_t i = 0; i < d; ++i)
            for (std::uint32_t c = piv[i] + 1; c < cols; ++c)
                if (!is_piv[c]) free_pos.emplace_back(i, c);
        std::uint64_t total = 1;
        for (std::size_t i = 0; i < free_pos.size(); ++i) total *= scalars.size();
        for (std::uint64_t it = 0; it < total; ++it) {
            FMat M(d, cols);
            for (std::uint32_t i = 0; i < d; ++i) M.at(i, piv[i]) = T.one();
            std::uint64_t x = it;
            for (auto [r, c] : free_pos) {
                M.at(r, c) = scalars[x % scalars.size()];
                x /= scalars.size();
            }
            fn(M);
        }
        // next pivot combination (lexicographic)
        std::int32_t i = static_cast<std::int32_t>(d) - 1;
        while (i >= 0 && piv[i] == cols - d + i) --i;
        if (i < 0) break;
        ++piv[i];
        for (std::uint32_t j = i + 1; j < d; ++j) piv[j] = piv[j - 1] + 1;
    }
}

/// Visits each F_{q^m}-subspace of codimension r exactly once.
inline void for_each_subspace_codim(const TowerPtr& tw, std::uint32_t k, std::uint32_t r,
                                    const std::function<void(const FqmSubspace&)>& fn) {
    if (r > k) throw Error("codimension out of range");
    std::vector<Fe> all(tw->size);
    for (std::uint32_t i = 0; i < tw->size; ++i) all[i] = tw->from_index(i);
    for_each_echelon_space(tw, all, k, k - r, [&](const FMat& M) {
        fn(FqmSubspace::from_rref(tw, k, M));
    });
}

/// Visits each hyperplane exactly once as x^perp, x a normalized point.
inline void for_each_hyperplane(const TowerPtr& tw, std::uint32_t k,
                                const std::function<void(const FqmSubspace&, const Vec&)>& fn) {
    if (k < 2) throw Error("hyperplane enumeration needs k >= 2");
    for_each_projective_point(tw, k, [&](const Vec& x) {
        FMat M(1, k);
        M.set_row(0, x);
        FMat K = kernel(std::move(M), *tw);
        fn(FqmSubspace::from_rref(tw, k, K), x);
    });
}

/// Visits each d-dimensional F_q-subspace of F_q^n exactly once (as RREF rows).
inline void for_each_fq_subspace(const TowerPtr& tw, std::uint32_t n, std::uint32_t d,
                                 const std::function<void(const FMat&)>& fn) {
    for_each_echelon_space(tw, tw->subfield(), n, d, fn);
}

// ---------------------------------------------------------------------------
// Linear sets
// ---------------------------------------------------------------------------

/// A projective point together with its weight dim_{F_q}(U cap <v>).
struct LinearSetPoint {
    Vec point;             // normalized representative
    std::uint32_t weight;  // in [1, m]
};

/// All points of L_U with their weights, sorted by representative.
inline std::vector<LinearSetPoint> linear_set(const Subspace& U) {
    const Tower& T = *U.tower();
    std::map<Vec, std::uint64_t> mult;
    U.for_each_nonzero([&](const Vec& v) { ++mult[normalize_point(T, v)]; });
    std::vector<LinearSetPoint> out;
    out.reserve(mult.size());
    for (auto& [pt, cnt] : mult) {
        // cnt = q^w - 1 nonzero vectors of U on the point
        std::uint32_t w = 0;
        std::uint64_t acc = 1;
        while (acc - 1 != cnt) {
            acc *= T.q;
            if (++w > T.m) throw Error("point multiplicity is not of the form q^w - 1");
        }
        out.push_back({pt, w});
    }
    return out;
}

/// Weight of a single point in L_U.
inline std::uint32_t point_weight(const Subspace& U, const Vec& v) {
    return intersect_dim(U, FqmSubspace::span(U.tower(), U.ambient_dim(), {v}));
}

/// True iff every point of L_U has weight one.
inline bool is_scattered(const Subspace& U) {
    for (const auto& pw : linear_set(U))
        if (pw.weight != 1) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Duality
// ---------------------------------------------------------------------------

/// A nondegenerate reflexive bilinear form sigma on F_{q^m}^k; the duality
/// sigma'(x,y) = Tr_{q^m/q}(sigma(x,y)) defines perp' on F_q-subspaces.
class DualityContext {
  public:
    static DualityContext standard_dot(TowerPtr tw, std::uint32_t k) {
        FMat g(k, k);
        for (std::uint32_t i = 0; i < k; ++i) g.at(i, i) = tw->one();
        return DualityContext(std::move(tw), k, std::move(g), "standard-dot");
    }

    /// sigma((x,y),(z,t)) = x t - y z on F_{q^m}^2.
    static DualityContext alternating2(TowerPtr tw) {
        FMat g(2, 2);
        g.at(0, 1) = tw->one();
        g.at(1, 0) = tw->neg(tw->one());
        return DualityContext(std::move(tw), 2, std::move(g), "alternating-2d");
    }

    static DualityContext user_form(TowerPtr tw, std::uint32_t k, FMat gram) {
        return DualityContext(std::move(tw), k, std::move(gram), "user");
    }

    const TowerPtr& tower() const { return tw_; }
    std::uint32_t ambient_dim() const { return k_; }
    const FMat& gram() const { return gram_; }
    const std::string& tag() const { return tag_; }

    Fe sigma(const Vec& x, const Vec& y) const {
        const Tower& T = *tw_;
        Fe s = T.zero();
        for (std::uint32_t i = 0; i < k_; ++i) {
            if (is_zero(x[i])) continue;
            for (std::uint32_t j = 0; j < k_; ++j)
                s = T.add(s, T.mul(x[i], T.mul(gram_.at(i, j), y[j])));
        }
        return s;
    }

    Fe sigma_prime(const Vec& x, const Vec& y) const { return tw_->trace_rel(sigma(x, y)); }

  private:
    DualityContext(TowerPtr tw, std::uint32_t k, FMat gram, std::string tag)
        : tw_(std::move(tw)), k_(k), gram_(std::move(gram)), tag_(std::move(tag)) {
        const Tower& T = *tw_;
        if (gram_.rows != k_ || gram_.cols != k_) throw Error("gram matrix must be k x k");
        if (rank_of(gram_, T) != k_) throw Error("form is degenerate (nonzero radical)");
        bool sym = true, alt = true;
        for (std::uint32_t i = 0; i < k_; ++i)
            for (std::uint32_t j = 0; j < k_; ++j) {
                if (gram_.at(i, j) != gram_.at(j, i)) sym = false;
                if (gram_.at(i, j) != T.neg(gram_.at(j, i))) alt = false;
            }
        if (!sym && !alt) throw Error("form is not reflexive");
    }

    TowerPtr tw_;
    std::uint32_t k_;
    FMat gram_;
    std::string tag_;
};

/// Dual of an F_q-subspace under sigma': {v : Tr(sigma(u,v)) = 0 for all u in U}.
inline Subspace perp_prime(const Subspace& U, const DualityContext& ctx) {
    const Tower& T = *U.tower();
    std::uint32_t k = U.ambient_dim(), m = T.m;
    std::vector<Vec> bas = U.basis();
    FMat M(bas.size(), k * m);
    for (std::size_t r = 0; r < bas.size(); ++r) {
        // w = u * gram; entry (j,l) is Tr(gamma_l * w_j)
        Vec w(k, Fe{0});
        for (std::uint32_t j = 0; j < k; ++j)
            for (std::uint32_t i = 0; i < k; ++i)
                w[j] = T.add(w[j], T.mul(bas[r][i], ctx.gram().at(i, j)));
        for (std::uint32_t j = 0; j < k; ++j)
            for (std::uint32_t l = 0; l < m; ++l)
                M.at(r, j * m + l) = T.trace_rel(T.mul(T.gamma[l], w[j]));
    }
    FMat K = kernel(std::move(M), T);
    return Subspace::from_fq_rows(U.tower(), k, std::move(K));
}

/// Orthogonal complement of an F_{q^m}-subspace under sigma.
inline FqmSubspace perp(const FqmSubspace& W, const DualityContext& ctx) {
    const Tower& T = *W.tower();
    std::uint32_t k = W.ambient_dim();
    std::vector<Vec> bas = W.basis();
    FMat M(bas.size(), k);
    for (std::size_t r = 0; r < bas.size(); ++r)
        for (std::uint32_t j = 0; j < k; ++j) {
            Fe s = T.zero();
            for (std::uint32_t i = 0; i < k; ++i)
                s = T.add(s, T.mul(bas[r][i], ctx.gram().at(i, j)));
            M.at(r, j) = s;
        }
    FMat K = kernel(std::move(M), T);
    return FqmSubspace::from_rref(W.tower(), k, std::move(K));
}

}  // namespace sumrank
