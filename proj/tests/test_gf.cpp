#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "sumrank/gf.hpp"

using namespace sumrank;

namespace {

// Independent irreducibility oracle for low degrees: a monic polynomial of
// degree <= 3 over F_p is reducible iff it has a root.
bool has_root_mod_p(const std::vector<std::uint32_t>& poly, std::uint32_t p) {
    for (std::uint32_t x = 0; x < p; ++x) {
        std::uint64_t acc = 0, xp = 1;
        for (std::uint32_t c : poly) {
            acc = (acc + (std::uint64_t)c * xp) % p;
            xp = xp * x % p;
        }
        if (acc == 0) return true;
    }
    return false;
}

std::vector<std::uint32_t> smallest_irreducible_low_degree(std::uint32_t p, std::uint32_t deg) {
    REQUIRE(deg >= 2);
    REQUIRE(deg <= 3);
    std::uint64_t total = 1;
    for (std::uint32_t i = 0; i < deg; ++i) total *= p;
    for (std::uint64_t v = 0; v < total; ++v) {
        std::vector<std::uint32_t> f(deg + 1);
        std::uint64_t x = v;
        for (std::uint32_t i = 0; i < deg; ++i) {
            f[i] = static_cast<std::uint32_t>(x % p);
            x /= p;
        }
        f[deg] = 1;
        if (!has_root_mod_p(f, p)) return f;
    }
    FAIL("no irreducible polynomial found by oracle");
    return {};
}

}  // namespace

TEST_CASE("tower construction is deterministic and validated", "[gf]") {
    SECTION("F_4 has the unique irreducible quadratic x^2+x+1") {
        TowerPtr t = make_tower(2, 1, 2);
        CHECK(t->modulus == std::vector<std::uint32_t>{1, 1, 1});
        CHECK(t->q == 2);
        CHECK(t->size == 4);
    }
    SECTION("F_9 modulus matches the root-search oracle") {
        TowerPtr t = make_tower(3, 1, 2);
        CHECK(t->modulus == smallest_irreducible_low_degree(3, 2));
        CHECK(t->modulus == std::vector<std::uint32_t>{1, 0, 1});  // x^2 + 1
    }
    SECTION("F_8 modulus matches the root-search oracle") {
        TowerPtr t = make_tower(2, 1, 3);
        CHECK(t->modulus == smallest_irreducible_low_degree(2, 3));
        CHECK(t->modulus == std::vector<std::uint32_t>{1, 1, 0, 1});  // x^3 + x + 1
    }
    SECTION("non-prime p is rejected") {
        CHECK_THROWS_AS(make_tower(4, 1, 2), NonPrime);
    }
    SECTION("oversized towers are rejected") {
        CHECK_THROWS_AS(make_tower(2, 1, 21), DegreeOverflow);
    }
    SECTION("reducible supplied modulus is rejected") {
        CHECK_THROWS_AS(make_tower(2, 1, 2, {0, 0, 1}, {}), ParseError);
    }
}

TEST_CASE("field arithmetic in F_4", "[gf]") {
    TowerPtr t = make_tower(2, 1, 2);
    Fe w = t->from_coeffs({0, 1});  // the class of X
    Fe w2 = t->mul(w, w);
    CHECK(w2 == t->from_coeffs({1, 1}));  // w^2 = w + 1

    SECTION("inverse matches exhaustive search") {
        for (std::uint32_t i = 1; i < t->size; ++i) {
            Fe a{i};
            Fe found{0};
            for (std::uint32_t j = 1; j < t->size; ++j)
                if (t->mul(a, Fe{j}) == t->one()) found = Fe{j};
            CHECK(t->inv(a) == found);
        }
        CHECK(t->inv(w) == w2);
    }
    SECTION("inv(0) throws") {
        CHECK_THROWS_AS(t->inv(t->zero()), DivisionByZero);
    }
    SECTION("field axioms, exhaustively") {
        for (std::uint32_t a = 0; a < 4; ++a)
            for (std::uint32_t b = 0; b < 4; ++b) {
                CHECK(t->add(Fe{a}, Fe{b}) == t->add(Fe{b}, Fe{a}));
                CHECK(t->mul(Fe{a}, Fe{b}) == t->mul(Fe{b}, Fe{a}));
                for (std::uint32_t c = 0; c < 4; ++c) {
                    CHECK(t->mul(Fe{a}, t->mul(Fe{b}, Fe{c})) ==
                          t->mul(t->mul(Fe{a}, Fe{b}), Fe{c}));
                    CHECK(t->mul(Fe{a}, t->add(Fe{b}, Fe{c})) ==
                          t->add(t->mul(Fe{a}, Fe{b}), t->mul(Fe{a}, Fe{c})));
                }
            }
    }
    SECTION("pow agrees with repeated multiplication") {
        for (std::uint32_t a = 0; a < 4; ++a)
            for (std::uint32_t e = 0; e < 8; ++e) {
                Fe acc = t->one();
                for (std::uint32_t i = 0; i < e; ++i) acc = t->mul(acc, Fe{a});
                CHECK(t->pow(Fe{a}, e) == acc);
            }
    }
}

TEST_CASE("a * inv(a) = 1 for all nonzero a in F_9", "[gf]") {
    TowerPtr t = make_tower(3, 1, 2);
    for (std::uint32_t i = 1; i < t->size; ++i) CHECK(t->mul(Fe{i}, t->inv(Fe{i})) == t->one());
}

TEST_CASE("relative trace and norm", "[gf]") {
    SECTION("F_4 over F_2") {
        TowerPtr t = make_tower(2, 1, 2);
        Fe w = t->from_coeffs({0, 1});
        CHECK(t->trace_rel(t->zero()) == t->zero());
        // Tr(w) = w + w^2 = w + (w+1) = 1
        CHECK(t->trace_rel(w) == t->one());
        CHECK(t->norm_rel(t->one()) == t->one());
        CHECK(t->norm_rel(w) == t->one());  // w^3 = 1
    }
    SECTION("F_9 over F_3 with i^2 = -1") {
        TowerPtr t = make_tower(3, 1, 2);
        Fe i = t->from_coeffs({0, 1});
        CHECK(t->trace_rel(i) == t->zero());  // i + i^3 = i - i
        CHECK(t->norm_rel(i) == t->one());    // i^4 = 1
        CHECK(t->norm_rel(t->zero()) == t->zero());
    }
    SECTION("values land in the subfield and are Frobenius-fixed") {
        TowerPtr t = make_tower(3, 1, 2);
        for (std::uint32_t i = 0; i < t->size; ++i) {
            Fe tr = t->trace_rel(Fe{i});
            Fe nm = t->norm_rel(Fe{i});
            CHECK(t->in_subfield(tr));
            CHECK(t->in_subfield(nm));
            CHECK(t->frobenius(tr, 1) == tr);
            CHECK(t->frobenius(nm, 1) == nm);
        }
    }
    SECTION("trace is F_q-linear, exhaustively in F_9/F_3") {
        TowerPtr t = make_tower(3, 1, 2);
        for (Fe a : t->subfield())
            for (Fe b : t->subfield())
                for (std::uint32_t x = 0; x < t->size; ++x)
                    for (std::uint32_t y = 0; y < t->size; ++y) {
                        Fe lhs = t->trace_rel(t->add(t->mul(a, Fe{x}), t->mul(b, Fe{y})));
                        Fe rhs = t->add(t->mul(a, t->trace_rel(Fe{x})),
                                        t->mul(b, t->trace_rel(Fe{y})));
                        if (lhs != rhs) FAIL("trace not F_q-linear");
                    }
        SUCCEED();
    }
    SECTION("norm is multiplicative on nonzero elements") {
        TowerPtr t = make_tower(3, 1, 2);
        for (std::uint32_t x = 1; x < t->size; ++x)
            for (std::uint32_t y = 1; y < t->size; ++y)
                if (t->norm_rel(t->mul(Fe{x}, Fe{y})) !=
                    t->mul(t->norm_rel(Fe{x}), t->norm_rel(Fe{y})))
                    FAIL("norm not multiplicative");
        SUCCEED();
    }
}

TEST_CASE("frobenius powers", "[gf]") {
    TowerPtr t = make_tower(2, 1, 2);
    Fe w = t->from_coeffs({0, 1});
    CHECK(t->frobenius(w, 0) == w);
    CHECK(t->frobenius(w, 1) == t->mul(w, w));
    TowerPtr t9 = make_tower(3, 1, 2);
    for (std::uint32_t x = 0; x < t9->size; ++x)
        CHECK(t9->frobenius(t9->frobenius(Fe{x}, 1), t9->m - 1) == Fe{x});
}

TEST_CASE("subfield table of a genuine tower F_2 c F_4 c F_16", "[gf]") {
    TowerPtr t = make_tower(2, 2, 2);
    CHECK(t->q == 4);
    CHECK(t->subfield().size() == 4);
    for (std::uint32_t i = 0; i < t->size; ++i) {
        bool in_table = std::binary_search(t->subfield().begin(), t->subfield().end(), Fe{i});
        CHECK(t->in_subfield(Fe{i}) == in_table);
    }
}

TEST_CASE("gamma coordinates are an F_q-linear bijection", "[gf]") {
    for (auto [p, e, m] :
         {std::tuple<unsigned, unsigned, unsigned>{2, 1, 2}, {3, 1, 2}, {2, 2, 2}, {2, 1, 3}}) {
        TowerPtr t = make_tower(p, e, m);
        std::set<std::vector<std::uint32_t>> images;
        for (std::uint32_t i = 0; i < t->size; ++i) {
            auto c = t->gamma_coords(Fe{i});
            REQUIRE(c.size() == t->m);
            for (Fe ci : c) CHECK(t->in_subfield(ci));
            CHECK(t->from_gamma_coords(c) == Fe{i});
            std::vector<std::uint32_t> key;
            for (Fe ci : c) key.push_back(ci.v);
            images.insert(key);
        }
        CHECK(images.size() == t->size);
    }
}

TEST_CASE("element serialization round-trip", "[gf]") {
    TowerPtr t = make_tower(3, 1, 2);
    for (std::uint32_t i = 0; i < t->size; ++i) {
        auto c = t->coeffs(Fe{i});
        CHECK(c.size() == t->em);
        CHECK(t->from_coeffs(c) == Fe{i});
    }
    CHECK_THROWS_AS(t->from_coeffs({1}), ParseError);
    CHECK_THROWS_AS(t->from_coeffs({3, 0}), ParseError);
}
