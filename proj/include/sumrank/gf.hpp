#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <vector>

#include "sumrank/errors.hpp"

namespace sumrank {

/// Element of F_{q^m}, stored as the base-p packing of its coordinates with
/// respect to the power basis of the defining modulus (lowest degree first).
struct Fe {
    std::uint32_t v = 0;

    friend bool operator==(Fe a, Fe b) { return a.v == b.v; }
    friend bool operator!=(Fe a, Fe b) { return a.v != b.v; }
    friend bool operator<(Fe a, Fe b) { return a.v < b.v; }
};

inline bool is_zero(Fe a) { return a.v == 0; }

namespace detail {

inline bool is_prime_u32(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> fs;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            fs.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

inline std::uint64_t pow_u64(std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

inline std::uint32_t inv_mod_p(std::uint32_t a, std::uint32_t p) {
    // Fermat; p prime, a != 0 mod p.
    std::uint64_t r = 1, b = a % p, e = p - 2;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
}

}  // namespace detail

/// The arithmetic context F_p c F_q = F_{p^e} c F_{q^m}.
///
/// The top field is realized as F_p[X]/(modulus) with deg(modulus) = e*m and
/// F_q located as the fixed field of x -> x^q. All arithmetic goes through
/// exp/log tables of a fixed primitive element g; the ordered F_q-basis
/// gamma = (1, g, ..., g^{m-1}) drives all coordinate expansions.
class Tower {
  public:
    std::uint32_t p, e, m;
    std::uint32_t em;           // e*m
    std::uint32_t q;            // p^e
    std::uint32_t size;         // p^(e*m) = q^m
    std::vector<std::uint32_t> modulus;  // monic, length em+1, lowest degree first

    static constexpr std::uint64_t kMaxSize = 1u << 20;

    Tower(std::uint32_t p_, std::uint32_t e_, std::uint32_t m_,
          std::vector<std::uint32_t> modulus_coeffs = {},
          std::vector<Fe> gamma_basis = {})
        : p(p_), e(e_), m(m_) {
        if (!detail::is_prime_u32(p)) throw NonPrime("p = " + std::to_string(p) + " is not prime");
        if (e < 1 || m < 1) throw DegreeOverflow("extension degrees must be >= 1");
        em = e * m;
        std::uint64_t sz = 1;
        for (std::uint32_t i = 0; i < em; ++i) {
            sz *= p;
            if (sz > kMaxSize) throw DegreeOverflow("p^(e*m) exceeds 2^20");
        }
        size = static_cast<std::uint32_t>(sz);
        q = static_cast<std::uint32_t>(detail::pow_u64(p, e));

        if (modulus_coeffs.empty())
            modulus = smallest_irreducible();
        else {
            modulus = std::move(modulus_coeffs);
            if (modulus.size() != em + 1 || modulus[em] != 1)
                throw ParseError("modulus must be monic of degree e*m");
            for (auto& c : modulus) c %= p;
            if (!is_irreducible(modulus)) throw ParseError("supplied modulus is reducible");
        }

        build_tables();
        build_subfield();
        if (gamma_basis.empty()) {
            gamma.resize(m);
            for (std::uint32_t i = 0; i < m; ++i) gamma[i] = exp_[i % order()];
            if (m == 1) gamma[0] = one();
        } else {
            if (gamma_basis.size() != m) throw ParseError("gamma must have m entries");
            gamma = std::move(gamma_basis);
        }
        build_expansion();  // throws if gamma is not an F_q-basis
    }

    // --- basic constants ---
    Fe zero() const { return Fe{0}; }
    Fe one() const { return Fe{1}; }
    Fe generator() const { return exp_[1 % order()]; }
    std::uint32_t order() const { return size - 1; }

    Fe from_index(std::uint32_t idx) const { return Fe{idx}; }

    // --- element <-> p-ary coefficient vectors (lowest degree first) ---
    std::vector<std::uint32_t> coeffs(Fe a) const {
        std::vector<std::uint32_t> c(em);
        std::uint32_t v = a.v;
        for (std::uint32_t i = 0; i < em; ++i) {
            c[i] = v % p;
            v /= p;
        }
        return c;
    }

    Fe from_coeffs(const std::vector<std::uint32_t>& c) const {
        if (c.size() != em) throw ParseError("coefficient vector must have e*m entries");
        std::uint32_t v = 0;
        for (std::uint32_t i = em; i-- > 0;) {
            if (c[i] >= p) throw ParseError("coefficient out of range");
            v = v * p + c[i];
        }
        return Fe{v};
    }

    // --- arithmetic ---
    Fe add(Fe a, Fe b) const {
        if (p == 2) return Fe{a.v ^ b.v};
        std::uint32_t r = 0, mul = 1, x = a.v, y = b.v;
        for (std::uint32_t i = 0; i < em; ++i) {
            r += (x + y) % p * mul;
            x /= p;
            y /= p;
            mul *= p;
        }
        return Fe{r};
    }

    Fe neg(Fe a) const {
        if (p == 2) return a;
        std::uint32_t r = 0, mul = 1, x = a.v;
        for (std::uint32_t i = 0; i < em; ++i) {
            std::uint32_t d = x % p;
            r += (d ? p - d : 0) * mul;
            x /= p;
            mul *= p;
        }
        return Fe{r};
    }

    Fe sub(Fe a, Fe b) const { return add(a, neg(b)); }

    Fe mul(Fe a, Fe b) const {
        if (a.v == 0 || b.v == 0) return Fe{0};
        std::uint64_t l = (std::uint64_t)log_[a.v] + log_[b.v];
        return exp_[l % order()];
    }

    Fe inv(Fe a) const {
        if (a.v == 0) throw DivisionByZero("inv(0)");
        return exp_[(order() - log_[a.v]) % order()];
    }

    Fe div(Fe a, Fe b) const { return mul(a, inv(b)); }

    Fe pow(Fe a, std::uint64_t n) const {
        if (a.v == 0) return n == 0 ? one() : zero();
        std::uint64_t l = (std::uint64_t)log_[a.v] * (n % order());
        return exp_[l % order()];
    }

    /// x^(q^i); the identity for i = m (relative Galois group has order m).
    Fe frobenius(Fe a, std::uint32_t i) const {
        return pow(a, detail::pow_u64(q, i % m));
    }

    /// Relative trace onto F_q: sum of x^(q^i) for i in [0, m).
    Fe trace_rel(Fe a) const {
        Fe s = zero();
        Fe t = a;
        for (std::uint32_t i = 0; i < m; ++i) {
            s = add(s, t);
            t = pow(t, q);
        }
        return s;
    }

    /// Relative norm onto F_q: x^((q^m-1)/(q-1)), with norm(0) = 0.
    Fe norm_rel(Fe a) const {
        if (a.v == 0) return zero();
        return pow(a, order() / (q - 1));
    }

    bool in_subfield(Fe a) const { return pow(a, q) == a; }

    /// The q elements of F_q inside F_{q^m}, sorted by index.
    const std::vector<Fe>& subfield() const { return subfield_; }

    /// Ordered F_q-basis gamma of F_{q^m}; gamma[0] = 1 when m > 0.
    std::vector<Fe> gamma;

    /// Coordinates of a with respect to gamma (m values in F_q).
    std::vector<Fe> gamma_coords(Fe a) const {
        std::vector<std::uint32_t> rhs = coeffs(a);
        std::vector<std::uint32_t> sol(em, 0);
        for (std::uint32_t r = 0; r < em; ++r) {
            std::uint64_t acc = 0;
            for (std::uint32_t c = 0; c < em; ++c) acc += (std::uint64_t)ainv_[r * em + c] * rhs[c];
            sol[r] = static_cast<std::uint32_t>(acc % p);
        }
        std::vector<Fe> out(m);
        for (std::uint32_t i = 0; i < m; ++i) {
            std::uint32_t chunk = 0;
            for (std::uint32_t j = e; j-- > 0;) chunk = chunk * p + sol[i * e + j];
            out[i] = chunk_table_[chunk];
        }
        return out;
    }

    /// Inverse of gamma_coords: sum of c[i] * gamma[i].
    Fe from_gamma_coords(const std::vector<Fe>& c) const {
        Fe s = zero();
        for (std::uint32_t i = 0; i < m; ++i) s = add(s, mul(c[i], gamma[i]));
        return s;
    }

    bool same_parameters(const Tower& o) const {
        return p == o.p && e == o.e && m == o.m && modulus == o.modulus && gamma == o.gamma;
    }

  private:
    std::vector<Fe> exp_;                 // exp_[i] = g^i, i in [0, size-1)
    std::vector<std::uint32_t> log_;      // log_[x.v], undefined at 0
    std::vector<Fe> subfield_;
    std::vector<Fe> chunk_table_;         // base-p chunk value -> element of F_q
    std::vector<std::uint32_t> ainv_;     // inverse of the {gamma_i * beta_j} matrix over F_p

    // --- raw polynomial arithmetic mod (p, modulus), used only during setup ---
    std::vector<std::uint32_t> to_poly(std::uint32_t v) const {
        std::vector<std::uint32_t> c(em);
        for (std::uint32_t i = 0; i < em; ++i) {
            c[i] = v % p;
            v /= p;
        }
        return c;
    }

    std::uint32_t from_poly(const std::vector<std::uint32_t>& c) const {
        std::uint32_t v = 0;
        for (std::uint32_t i = em; i-- > 0;) v = v * p + c[i] % p;
        return v;
    }

    std::uint32_t raw_mul(std::uint32_t a, std::uint32_t b) const {
        std::vector<std::uint32_t> pa = to_poly(a), pb = to_poly(b);
        std::vector<std::uint64_t> prod(2 * em, 0);
        for (std::uint32_t i = 0; i < em; ++i) {
            if (!pa[i]) continue;
            for (std::uint32_t j = 0; j < em; ++j) prod[i + j] += (std::uint64_t)pa[i] * pb[j];
        }
        // reduce mod modulus (monic)
        for (std::uint32_t d = 2 * em; d-- > em;) {
            std::uint64_t c = prod[d] % p;
            if (!c) continue;
            for (std::uint32_t i = 0; i <= em; ++i)
                prod[d - em + i] += c * (p - modulus[i] % p);
            prod[d] = 0;
        }
        std::vector<std::uint32_t> out(em);
        for (std::uint32_t i = 0; i < em; ++i) out[i] = static_cast<std::uint32_t>(prod[i] % p);
        return from_poly(out);
    }

    std::uint32_t raw_pow(std::uint32_t a, std::uint64_t n) const {
        std::uint32_t r = 1;
        while (n) {
            if (n & 1) r = raw_mul(r, a);
            a = raw_mul(a, a);
            n >>= 1;
        }
        return r;
    }

    // Polynomial helpers over F_p for the irreducibility test.
    using Pol = std::vector<std::uint32_t>;  // lowest degree first, no trailing zeros

    static void trim(Pol& f) {
        while (!f.empty() && f.back() == 0) f.pop_back();
    }

    Pol pol_mod(Pol a, const Pol& f) const {
        trim(a);
        while (a.size() >= f.size()) {
            std::uint32_t lead = a.back() % p;
            if (lead) {
                std::uint32_t scale = (std::uint64_t)lead * detail::inv_mod_p(f.back(), p) % p;
                std::size_t shift = a.size() - f.size();
                for (std::size_t i = 0; i < f.size(); ++i)
                    a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (std::uint64_t)scale * (p - f[i] % p)) % p);
            }
            a.pop_back();
            trim(a);
        }
        return a;
    }

    Pol pol_mulmod(const Pol& a, const Pol& b, const Pol& f) const {
        if (a.empty() || b.empty()) return {};
        Pol prod(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + (std::uint64_t)a[i] * b[j]) % p);
        return pol_mod(std::move(prod), f);
    }

    Pol pol_powmod(Pol base, std::uint64_t n, const Pol& f) const {
        Pol r = {1};
        base = pol_mod(std::move(base), f);
        while (n) {
            if (n & 1) r = pol_mulmod(r, base, f);
            base = pol_mulmod(base, base, f);
            n >>= 1;
        }
        return r;
    }

    Pol pol_gcd(Pol a, Pol b) const {
        trim(a);
        trim(b);
        while (!b.empty()) {
            Pol r = pol_mod(a, b);
            a = std::move(b);
            b = std::move(r);
        }
        return a;
    }

    /// Rabin test: f (monic, degree n) is irreducible over F_p iff
    /// x^(p^n) = x mod f and gcd(x^(p^(n/r)) - x, f) = 1 for primes r | n.
    bool is_irreducible(const Pol& f) const {
        std::uint32_t n = static_cast<std::uint32_t>(f.size()) - 1;
        Pol x = {0, 1};
        Pol xp = pol_powmod(x, detail::pow_u64(p, n), f);
        trim(xp);
        Pol xt = pol_mod(x, f);
        trim(xt);
        if (xp != xt) return false;
        for (std::uint64_t r : detail::prime_factors(n)) {
            Pol g = pol_powmod(x, detail::pow_u64(p, n / r), f);
            // g - x
            if (g.size() < 2) g.resize(2, 0);
            g[1] = (g[1] + p - 1) % p;
            trim(g);
            Pol d = pol_gcd(f, g);
            if (d.size() != 1) return false;
        }
        return true;
    }

    std::vector<std::uint32_t> smallest_irreducible() const {
        // Scan monic degree-em polynomials in base-p index order of the
        // non-leading coefficients; deterministic across runs.
        for (std::uint32_t v = 0; v < size; ++v) {
            Pol f = to_poly(v);
            f.resize(em + 1, 0);
            f[em] = 1;
            if (is_irreducible(f)) return f;
        }
        throw Error("no irreducible polynomial found");  // unreachable
    }

    void build_tables() {
        // primitive element: smallest index whose order is size-1
        std::uint32_t ord = size - 1;
        auto primes = detail::prime_factors(ord);
        std::uint32_t g = 0;
        for (std::uint32_t cand = 2; cand < size; ++cand) {
            bool ok = true;
            for (std::uint64_t r : primes)
                if (raw_pow(cand, ord / r) == 1) {
                    ok = false;
                    break;
                }
            if (ok) {
                g = cand;
                break;
            }
        }
        if (g == 0) {
            if (size == 2) g = 1;  // F_2: trivial group
            else throw Error("no primitive element found");
        }
        exp_.resize(ord);
        log_.assign(size, 0);
        std::uint32_t cur = 1;
        for (std::uint32_t i = 0; i < ord; ++i) {
            exp_[i] = Fe{cur};
            log_[cur] = i;
            cur = raw_mul(cur, g);
        }
        if (cur != 1) throw Error("primitive element order mismatch");
    }

    void build_subfield() {
        subfield_.clear();
        subfield_.push_back(zero());
        std::uint32_t ord = size - 1;
        std::uint32_t step = ord / (q - 1);
        for (std::uint32_t j = 0; j < q - 1; ++j) subfield_.push_back(exp_[(std::uint64_t)j * step % ord]);
        std::sort(subfield_.begin(), subfield_.end());
        if (subfield_.size() != q) throw Error("subfield size mismatch");
        for (Fe x : subfield_)
            if (pow(x, q) != x) throw Error("subfield element not fixed by Frobenius");
        if (q <= 256) {
            for (Fe x : subfield_)
                for (Fe y : subfield_) {
                    if (!std::binary_search(subfield_.begin(), subfield_.end(), add(x, y)) ||
                        !std::binary_search(subfield_.begin(), subfield_.end(), mul(x, y)))
                        throw Error("subfield not closed under field operations");
                }
        }
    }

    void build_expansion() {
        // beta = (1, h, ..., h^(e-1)) with h generating F_q^*: an F_p-basis of F_q.
        std::vector<Fe> beta(e);
        Fe h = q > 2 ? exp_[(size - 1) / (q - 1)] : one();
        beta[0] = one();
        for (std::uint32_t j = 1; j < e; ++j) beta[j] = mul(beta[j - 1], h);

        chunk_table_.resize(q);
        for (std::uint32_t chunk = 0; chunk < q; ++chunk) {
            Fe s = zero();
            std::uint32_t v = chunk;
            for (std::uint32_t j = 0; j < e; ++j) {
                std::uint32_t d = v % p;
                v /= p;
                Fe term = zero();
                for (std::uint32_t rep = 0; rep < d; ++rep) term = add(term, beta[j]);
                s = add(s, term);
            }
            chunk_table_[chunk] = s;
        }

        // A[r][c] over F_p: power-basis coords of gamma_i * beta_j, c = i*e + j.
        std::vector<std::uint32_t> a(em * em);
        for (std::uint32_t i = 0; i < m; ++i)
            for (std::uint32_t j = 0; j < e; ++j) {
                auto col = coeffs(mul(gamma[i], beta[j]));
                for (std::uint32_t r = 0; r < em; ++r) a[r * em + i * e + j] = col[r];
            }
        ainv_ = invert_fp(a);
    }

    std::vector<std::uint32_t> invert_fp(std::vector<std::uint32_t> a) const {
        std::uint32_t n = em;
        std::vector<std::uint32_t> inv(n * n, 0);
        for (std::uint32_t i = 0; i < n; ++i) inv[i * n + i] = 1;
        for (std::uint32_t col = 0, row = 0; col < n && row < n; ++col) {
            std::uint32_t piv = row;
            while (piv < n && a[piv * n + col] % p == 0) ++piv;
            if (piv == n) throw ParseError("gamma is not an F_q-basis of F_{q^m}");
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
                    a[r * n + c] = static_cast<std::uint32_t>((a[r * n + c] + (std::uint64_t)(p - f) * a[row * n + c]) % p);
                    inv[r * n + c] = static_cast<std::uint32_t>((inv[r * n + c] + (std::uint64_t)(p - f) * inv[row * n + c]) % p);
                }
            }
            ++row;
        }
        return inv;
    }
};

using TowerPtr = std::shared_ptr<const Tower>;

/// Deterministic tower: lexicographically smallest monic irreducible modulus,
/// gamma = (1, g, ..., g^(m-1)) for the smallest primitive element g.
inline TowerPtr make_tower(std::uint32_t p, std::uint32_t e, std::uint32_t m) {
    return std::make_shared<const Tower>(p, e, m);
}

/// Tower with an explicitly supplied modulus and gamma basis (as read back
/// from a serialized file); both are validated.
inline TowerPtr make_tower(std::uint32_t p, std::uint32_t e, std::uint32_t m,
                           std::vector<std::uint32_t> modulus, std::vector<Fe> gamma) {
    return std::make_shared<const Tower>(p, e, m, std::move(modulus), std::move(gamma));
}

}  // namespace sumrank
