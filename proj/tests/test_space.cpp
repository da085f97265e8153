#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "sumrank/space.hpp"

namespace sumrank {
inline bool operator<(const FMat& a, const FMat& b) {
    if (a.rows != b.rows) return a.rows < b.rows;
    if (a.cols != b.cols) return a.cols < b.cols;
    return a.a < b.a;
}
}  // namespace sumrank

using namespace sumrank;

namespace {

// Bitmask rank oracle over F_2, independent of the library's row reduction.
std::size_t f2_rank(std::vector<std::uint32_t> rows) {
    std::size_t rank = 0;
    for (int bit = 31; bit >= 0; --bit) {
        std::size_t piv = rank;
        while (piv < rows.size() && !(rows[piv] >> bit & 1)) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (r != rank && (rows[r] >> bit & 1)) rows[r] ^= rows[rank];
        ++rank;
    }
    return rank;
}

std::uint32_t row_to_mask(const Vec& row) {
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < row.size(); ++i)
        if (!is_zero(row[i])) mask |= 1u << i;
    return mask;
}

Subspace span_of_graph(const TowerPtr& t, const std::vector<Fe>& xs,
                       const std::function<Fe(Fe)>& f) {
    std::vector<Vec> vs;
    for (Fe x : xs) vs.push_back({x, f(x)});
    return Subspace::span(t, 2, vs);
}

}  // namespace

TEST_CASE("gauss binomial", "[space]") {
    CHECK(gauss_binomial(2, 1, 4) == 5);
    CHECK(gauss_binomial(7, 0, 3) == 1);
    CHECK(gauss_binomial(4, 2, 2) == 35);
    // oracle: count distinct 2-dim spans of F_2^4 by brute force over pairs
    std::set<std::vector<std::uint32_t>> spans;
    for (std::uint32_t a = 1; a < 16; ++a)
        for (std::uint32_t b = 1; b < 16; ++b) {
            if (a == b) continue;
            std::set<std::uint32_t> span = {0};
            for (std::uint32_t s = 1; s < 4; ++s) {
                std::uint32_t v = ((s & 1) ? a : 0) ^ ((s & 2) ? b : 0);
                span.insert(v);
            }
            if (span.size() != 4) continue;  // a, b dependent
            spans.insert(std::vector<std::uint32_t>(span.begin(), span.end()));
        }
    CHECK(Int(static_cast<unsigned long>(spans.size())) == gauss_binomial(4, 2, 2));
}

TEST_CASE("expand", "[space]") {
    TowerPtr t = make_tower(2, 1, 2);
    Fe w = t->from_coeffs({0, 1});
    SECTION("zero maps to zero") {
        Vec z = expand(*t, Vec{t->zero(), t->zero()});
        CHECK(is_zero_vec(z));
    }
    SECTION("gamma coordinates of w are (0, 1)") {
        REQUIRE(t->gamma == std::vector<Fe>{t->one(), w});
        Vec e = expand(*t, Vec{w});
        CHECK(e == Vec{t->zero(), t->one()});
    }
    SECTION("F_q-linearity, exhaustively in F_4^2 over F_2") {
        for (Fe a : t->subfield())
            for (std::uint32_t x = 0; x < 4; ++x)
                for (std::uint32_t y = 0; y < 4; ++y) {
                    Vec v = {Fe{x}, Fe{y}};
                    Vec lhs = expand(*t, scale_vec(*t, a, v));
                    Vec rhs = scale_vec(*t, a, expand(*t, v));
                    CHECK(lhs == rhs);
                }
    }
    SECTION("combine inverts expand") {
        for (std::uint32_t x = 0; x < 4; ++x)
            for (std::uint32_t y = 0; y < 4; ++y) {
                Vec v = {Fe{x}, Fe{y}};
                CHECK(combine(*t, expand(*t, v), 2) == v);
            }
    }
}

TEST_CASE("span and canonical form", "[space]") {
    TowerPtr t = make_tower(2, 1, 2);
    Fe w = t->from_coeffs({0, 1});
    SECTION("span of zero vector has dimension 0") {
        Subspace U = Subspace::span(t, 2, {Vec{t->zero(), t->zero()}});
        CHECK(U.dim() == 0);
    }
    SECTION("(1,0) and (w,0) are independent over F_2") {
        Subspace U = Subspace::span(t, 2, {Vec{t->one(), t->zero()}, Vec{w, t->zero()}});
        CHECK(U.dim() == 2);
    }
    SECTION("graph of x -> x^2 has dimension 2, with bitmask oracle") {
        std::vector<Fe> all = {Fe{0}, Fe{1}, Fe{2}, Fe{3}};
        Subspace U = span_of_graph(t, all, [&](Fe x) { return t->mul(x, x); });
        CHECK(U.dim() == 2);
        // oracle: rank over F_2 of the 4x4 expansion rows packed as bitmasks
        std::vector<std::uint32_t> rows;
        for (Fe x : all) rows.push_back(row_to_mask(expand(*t, Vec{x, t->mul(x, x)})));
        CHECK(f2_rank(rows) == 2);
    }
    SECTION("span(basis(U)) == U") {
        std::mt19937 rng(7);
        for (int it = 0; it < 30; ++it) {
            std::vector<Vec> gens;
            for (int i = 0; i < 3; ++i)
                gens.push_back({Fe{static_cast<std::uint32_t>(rng() % 4)},
                                Fe{static_cast<std::uint32_t>(rng() % 4)}});
            Subspace U = Subspace::span(t, 2, gens);
            CHECK(Subspace::span(t, 2, U.basis()) == U);
        }
    }
}

TEST_CASE("intersection dimensions", "[space]") {
    TowerPtr t = make_tower(2, 1, 2);
    std::vector<Fe> all = {Fe{0}, Fe{1}, Fe{2}, Fe{3}};
    Subspace U = span_of_graph(t, all, [&](Fe x) { return t->mul(x, x); });
    SECTION("U cap ambient = dim U") {
        FqmSubspace amb = FqmSubspace::span(t, 2, {Vec{t->one(), t->zero()}, Vec{t->zero(), t->one()}});
        CHECK(intersect_dim(U, amb) == U.dim());
    }
    SECTION("U cap <(1,1)> solves x = x^2") {
        FqmSubspace W = FqmSubspace::span(t, 2, {Vec{t->one(), t->one()}});
        // oracle: enumerate x in F_4 with x^2 = x (x in the prime field)
        std::uint32_t count = 0;
        for (Fe x : all)
            if (t->mul(x, x) == x && !is_zero(x)) ++count;
        CHECK(count == 1);
        CHECK(intersect_dim(U, W) == 1);
    }
    SECTION("U cap {0} = 0") {
        FqmSubspace z(t, 2);
        CHECK(intersect_dim(U, z) == 0);
    }
}

TEST_CASE("hyperplane and subspace enumeration counts", "[space]") {
    SECTION("k=2 over F_4: 5 hyperplanes, no duplicates") {
        TowerPtr t = make_tower(2, 1, 2);
        std::set<FMat> seen;
        std::size_t n = 0;
        for_each_hyperplane(t, 2, [&](const FqmSubspace& H, const Vec&) {
            ++n;
            // set semantics via the canonical echelon rows
            auto [it, fresh] = seen.insert(H.rows());
            CHECK(fresh);
        });
        CHECK(n == 5);
    }
    SECTION("k=3 over F_4: 21 hyperplanes") {
        TowerPtr t = make_tower(2, 1, 2);
        std::size_t n = 0;
        for_each_hyperplane(t, 3, [&](const FqmSubspace&, const Vec&) { ++n; });
        CHECK(n == 21);
    }
    SECTION("codim-1 count equals the hyperplane count") {
        TowerPtr t = make_tower(3, 1, 2);
        std::size_t a = 0, b = 0;
        for_each_subspace_codim(t, 2, 1, [&](const FqmSubspace&) { ++a; });
        for_each_hyperplane(t, 2, [&](const FqmSubspace&, const Vec&) { ++b; });
        CHECK(a == b);
        CHECK(Int(static_cast<unsigned long>(a)) == gauss_binomial(2, 1, 9));
    }
    SECTION("k=3 codim-2 over F_4: 21 lines") {
        TowerPtr t = make_tower(2, 1, 2);
        std::size_t n = 0;
        for_each_subspace_codim(t, 3, 2, [&](const FqmSubspace& W) {
            CHECK(W.dim() == 1);
            ++n;
        });
        CHECK(n == 21);
    }
    SECTION("k=4 codim-2 over F_2: 35, against the Gauss binomial") {
        TowerPtr t = make_tower(2, 1, 1);
        std::size_t n = 0;
        for_each_subspace_codim(t, 4, 2, [&](const FqmSubspace&) { ++n; });
        CHECK(Int(static_cast<unsigned long>(n)) == gauss_binomial(4, 2, 2));
    }
    SECTION("enumeration respects the scale cap") {
        TowerPtr t = make_tower(2, 1, 2);
        std::uint64_t old = scale_cap();
        set_scale_cap(3);
        CHECK_THROWS_AS(
            for_each_subspace_codim(t, 3, 1, [](const FqmSubspace&) {}),
            ScaleExceeded);
        set_scale_cap(old);
    }
}

TEST_CASE("linear sets and scatteredness", "[space]") {
    TowerPtr t = make_tower(2, 1, 2);
    Fe w = t->from_coeffs({0, 1});
    std::vector<Fe> all = {Fe{0}, Fe{1}, Fe{2}, Fe{3}};
    SECTION("line <(1,0)>_{F_2}: one point of weight 1") {
        Subspace U = Subspace::span(t, 2, {Vec{t->one(), t->zero()}});
        auto L = linear_set(U);
        REQUIRE(L.size() == 1);
        CHECK(L[0].point == Vec{t->one(), t->zero()});
        CHECK(L[0].weight == 1);
        CHECK(is_scattered(U));
    }
    SECTION("graph of squaring: 3 points, weight 1, scattered") {
        Subspace U = span_of_graph(t, all, [&](Fe x) { return t->mul(x, x); });
        auto L = linear_set(U);
        CHECK(L.size() == 3);
        for (const auto& pw : L) CHECK(pw.weight == 1);
        CHECK(is_scattered(U));
    }
    SECTION("<(1,0),(w,0)>_{F_2}: one point of weight 2, not scattered") {
        Subspace U = Subspace::span(t, 2, {Vec{t->one(), t->zero()}, Vec{w, t->zero()}});
        auto L = linear_set(U);
        REQUIRE(L.size() == 1);
        CHECK(L[0].weight == 2);
        CHECK_FALSE(is_scattered(U));
    }
    SECTION("multiplicity-derived weights agree with intersect_dim") {
        std::mt19937 rng(11);
        for (int it = 0; it < 40; ++it) {
            std::vector<Vec> gens;
            for (int i = 0; i < 1 + (int)(rng() % 3); ++i)
                gens.push_back({Fe{static_cast<std::uint32_t>(rng() % 4)},
                                Fe{static_cast<std::uint32_t>(rng() % 4)}});
            Subspace U = Subspace::span(t, 2, gens);
            if (U.dim() == 0) continue;
            for (const auto& pw : linear_set(U)) CHECK(pw.weight == point_weight(U, pw.point));
        }
    }
    SECTION("size bound and fiber count identity") {
        std::mt19937 rng(13);
        for (int it = 0; it < 40; ++it) {
            std::vector<Vec> gens;
            for (int i = 0; i < 1 + (int)(rng() % 3); ++i)
                gens.push_back({Fe{static_cast<std::uint32_t>(rng() % 4)},
                                Fe{static_cast<std::uint32_t>(rng() % 4)}});
            Subspace U = Subspace::span(t, 2, gens);
            if (U.dim() == 0) continue;
            auto L = linear_set(U);
            Int bound = (int_pow(t->q, U.dim()) - 1) / (t->q - 1);
            CHECK(Int(static_cast<unsigned long>(L.size())) <= bound);
            Int fibers = 0;
            for (const auto& pw : L) fibers += (int_pow(t->q, pw.weight) - 1) / (t->q - 1);
            CHECK(fibers == bound);
        }
    }
    SECTION("scattered rank bound dim <= mk/2") {
        std::mt19937 rng(17);
        for (int it = 0; it < 60; ++it) {
            std::vector<Vec> gens;
            for (int i = 0; i < 1 + (int)(rng() % 4); ++i)
                gens.push_back({Fe{static_cast<std::uint32_t>(rng() % 4)},
                                Fe{static_cast<std::uint32_t>(rng() % 4)}});
            Subspace U = Subspace::span(t, 2, gens);
            if (U.dim() >= 1 && is_scattered(U)) CHECK(2 * U.dim() <= t->m * 2);
        }
    }
}

TEST_CASE("duality", "[space]") {
    TowerPtr t = make_tower(2, 1, 2);
    std::vector<Fe> all = {Fe{0}, Fe{1}, Fe{2}, Fe{3}};
    DualityContext dot = DualityContext::standard_dot(t, 2);
    DualityContext alt = DualityContext::alternating2(t);

    SECTION("perp_prime dimension is km - n, and involution holds") {
        std::mt19937 rng(23);
        for (std::uint32_t k = 2; k <= 3; ++k) {
            DualityContext ctx = DualityContext::standard_dot(t, k);
            for (int it = 0; it < 30; ++it) {
                std::vector<Vec> gens;
                for (int i = 0; i < 1 + (int)(rng() % 4); ++i) {
                    Vec v(k);
                    for (auto& x : v) x = Fe{static_cast<std::uint32_t>(rng() % 4)};
                    gens.push_back(v);
                }
                Subspace U = Subspace::span(t, k, gens);
                Subspace D = perp_prime(U, ctx);
                CHECK(D.dim() == k * t->m - U.dim());
                CHECK(perp_prime(D, ctx) == U);
                // direct orthogonality of every basis pair
                for (const Vec& u : U.basis())
                    for (const Vec& v : D.basis()) CHECK(is_zero(ctx.sigma_prime(u, v)));
            }
        }
    }
    SECTION("the squaring graph is self-dual under the alternating form") {
        Subspace U = span_of_graph(t, all, [&](Fe x) { return t->mul(x, x); });
        CHECK(perp_prime(U, alt) == U);
    }
    SECTION("ambient dualizes to zero") {
        std::vector<Vec> gens;
        for (Fe g : t->gamma) {
            gens.push_back({g, t->zero()});
            gens.push_back({t->zero(), g});
        }
        Subspace amb = Subspace::span(t, 2, gens);
        REQUIRE(amb.dim() == 4);
        CHECK(perp_prime(amb, dot).dim() == 0);
    }
    SECTION("perp agrees with perp_prime on F_{q^m}-subspaces, both forms") {
        for (const DualityContext& ctx : {dot, alt}) {
            for_each_hyperplane(t, 2, [&](const FqmSubspace& W, const Vec&) {
                FqmSubspace Wp = perp(W, ctx);
                CHECK(Wp.dim() == 2 - W.dim());
                CHECK(perp_prime(W.as_fq_subspace(), ctx) == Wp.as_fq_subspace());
                CHECK(perp(Wp, ctx) == W);
            });
        }
    }
    SECTION("weight-duality identity, exhaustively at q=2, m=2, k=2") {
        // dim(U^perp' cap W^perp) = dim(U cap W) + km - dim U - m dim W
        std::vector<FqmSubspace> Ws;
        Ws.push_back(FqmSubspace(t, 2));  // zero
        for_each_subspace_codim(t, 2, 1, [&](const FqmSubspace& W) { Ws.push_back(W); });
        for_each_subspace_codim(t, 2, 0, [&](const FqmSubspace& W) { Ws.push_back(W); });
        for (std::uint32_t d = 0; d <= 3; ++d) {
            for_each_fq_subspace(t, 4, d, [&](const FMat& rows) {
                Subspace U = Subspace::from_fq_rows(t, 2, rows);
                Subspace Up = perp_prime(U, dot);
                for (const FqmSubspace& W : Ws) {
                    FqmSubspace Wp = perp(W, dot);
                    int lhs = (int)intersect_dim(Up, Wp);
                    int rhs = (int)U.intersect(W.as_fq_subspace()).dim() + 4 - (int)U.dim() -
                              (int)(t->m * W.dim());
                    CHECK(lhs == rhs);
                }
            });
        }
    }
    SECTION("degenerate or non-reflexive user forms are rejected") {
        FMat singular(2, 2);
        singular.at(0, 0) = t->one();
        CHECK_THROWS(DualityContext::user_form(t, 2, singular));
        TowerPtr t9 = make_tower(3, 1, 2);
        FMat skew(2, 2);
        skew.at(0, 0) = t9->one();
        skew.at(0, 1) = t9->one();
        skew.at(1, 0) = t9->from_coeffs({2, 0});
        skew.at(1, 1) = t9->one();
        CHECK_THROWS(DualityContext::user_form(t9, 2, skew));
    }
}
