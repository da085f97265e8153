#pragma once

#include <cstddef>
#include <vector>

#include "sumrank/gf.hpp"

namespace sumrank {

using Vec = std::vector<Fe>;

/// Dense row-major matrix with entries in a tower field. Used both for
/// matrices over F_{q^m} and for matrices whose entries lie in the subfield
/// F_q (row reduction never leaves the subfield).
struct FMat {
    std::size_t rows = 0, cols = 0;
    std::vector<Fe> a;

    FMat() = default;
    FMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, Fe{0}) {}

    Fe& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    Fe at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

    Vec row(std::size_t r) const { return Vec(a.begin() + r * cols, a.begin() + (r + 1) * cols); }

    void set_row(std::size_t r, const Vec& v) {
        for (std::size_t c = 0; c < cols; ++c) at(r, c) = v[c];
    }

    void append_row(const Vec& v) {
        a.insert(a.end(), v.begin(), v.end());
        ++rows;
    }

    friend bool operator==(const FMat& x, const FMat& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
};

/// In-place reduced row echelon form; returns the pivot columns.
inline std::vector<std::size_t> rref(FMat& M, const Tower& T) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < M.cols && row < M.rows; ++col) {
        std::size_t sel = row;
        while (sel < M.rows && is_zero(M.at(sel, col))) ++sel;
        if (sel == M.rows) continue;
        if (sel != row)
            for (std::size_t c = 0; c < M.cols; ++c) std::swap(M.at(sel, c), M.at(row, c));
        Fe s = T.inv(M.at(row, col));
        for (std::size_t c = col; c < M.cols; ++c) M.at(row, c) = T.mul(M.at(row, c), s);
        for (std::size_t r = 0; r < M.rows; ++r) {
            if (r == row || is_zero(M.at(r, col))) continue;
            Fe f = M.at(r, col);
            for (std::size_t c = col; c < M.cols; ++c)
                M.at(r, c) = T.sub(M.at(r, c), T.mul(f, M.at(row, c)));
        }
        pivots.push_back(col);
        ++row;
    }
    M.rows = row;  // drop zero rows
    M.a.resize(row * M.cols);
    return pivots;
}

inline std::size_t rank_of(FMat M, const Tower& T) { return rref(M, T).size(); }

/// Basis of the right kernel {x : M x = 0}, returned in RREF.
inline FMat kernel(FMat M, const Tower& T) {
    std::vector<std::size_t> pivots = rref(M, T);
    std::vector<bool> is_pivot(M.cols, false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    FMat K(0, M.cols);
    for (std::size_t f = 0; f < M.cols; ++f) {
        if (is_pivot[f]) continue;
        Vec x(M.cols, Fe{0});
        x[f] = T.one();
        for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = T.neg(M.at(i, f));
        K.append_row(x);
    }
    rref(K, T);
    return K;
}

/// Basis of the intersection of two row spaces (Zassenhaus), returned in RREF.
inline FMat row_space_intersection(const FMat& A, const FMat& B, const Tower& T) {
    std::size_t n = A.cols;
    FMat Z(A.rows + B.rows, 2 * n);
    for (std::size_t r = 0; r < A.rows; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            Z.at(r, c) = A.at(r, c);
            Z.at(r, n + c) = A.at(r, c);
        }
    for (std::size_t r = 0; r < B.rows; ++r)
        for (std::size_t c = 0; c < n; ++c) Z.at(A.rows + r, c) = B.at(r, c);
    rref(Z, T);
    FMat I(0, n);
    for (std::size_t r = 0; r < Z.rows; ++r) {
        bool left_zero = true;
        for (std::size_t c = 0; c < n && left_zero; ++c) left_zero = is_zero(Z.at(r, c));
        if (left_zero) {
            Vec v(n);
            for (std::size_t c = 0; c < n; ++c) v[c] = Z.at(r, n + c);
            I.append_row(v);
        }
    }
    rref(I, T);
    return I;
}

inline FMat stack(const FMat& A, const FMat& B) {
    FMat S(0, A.cols);
    for (std::size_t r = 0; r < A.rows; ++r) S.append_row(A.row(r));
    for (std::size_t r = 0; r < B.rows; ++r) S.append_row(B.row(r));
    return S;
}

/// General inverse of an n x n matrix over F_p (plain residues).
inline std::vector<std::uint32_t> fp_inverse(std::vector<std::uint32_t> a, std::uint32_t n,
                                             std::uint32_t p) {
    std::vector<std::uint32_t> inv(n * n, 0);
    for (std::uint32_t i = 0; i < n; ++i) inv[i * n + i] = 1;
    for (std::uint32_t col = 0, row = 0; col < n; ++col) {
        std::uint32_t piv = row;
        while (piv < n && a[piv * n + col] % p == 0) ++piv;
        if (piv == n) throw Error("singular matrix over F_p");
        if (piv != row)
            for (std::uint32_t c = 0; c < n; ++c) {
                std::swap(a[piv * n + c], a[row * n + c]);
                std::swap(inv[piv * n + c], inv[row * n + c]);
            }
        std::uint32_t s = detail::inv_mod_p(a[row * n + col] % p, p);
        for (std::uint32_t c = 0; c < n; ++c) {
            a[row * n + c] = static_cast<std::uint32_t>((std::uint64_t)a[row * n + c] * s % p);
            inv[row * n + c] = static_cast<std::uint32_t>((std::uint64_t)inv[row * n + c] * s % p);
        }
        for (std::uint32_t r = 0; r < n; ++r) {
            if (r == row) continue;
            std::uint32_t f = a[r * n + col] % p;
            if (!f) continue;
            for (std::uint32_t c = 0; c < n; ++c) {
                a[r * n + c] =
                    static_cast<std::uint32_t>((a[r * n + c] + (std::uint64_t)(p - f) * a[row * n + c]) % p);
                inv[r * n + c] =
                    static_cast<std::uint32_t>((inv[r * n + c] + (std::uint64_t)(p - f) * inv[row * n + c]) % p);
            }
        }
        ++row;
    }
    return inv;
}

}  // namespace sumrank
