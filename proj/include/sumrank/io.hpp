#pragma once

#include <fstream>
#include <optional>
#include <sstream>

#include "json.hpp"
#include "sumrank/analysis.hpp"
#include "sumrank/constructions.hpp"
#include "sumrank/gdual.hpp"

namespace sumrank {

using json = nlohmann::ordered_json;

// Big integers and exact rationals are serialized as decimal strings so that
// files round-trip bit-exactly regardless of magnitude.
inline std::string int_str(const Int& v) { return v.get_str(); }
inline std::string rat_str(const Rat& v) { return v.get_str(); }

inline json element_to_json(const Tower& T, Fe a) {
    json arr = json::array();
    for (std::uint32_t c : T.coeffs(a)) arr.push_back(c);
    return arr;
}

inline Fe element_from_json(const Tower& T, const json& j) {
    if (!j.is_array()) throw ParseError("element must be a coefficient array");
    std::vector<std::uint32_t> c;
    for (const auto& x : j) {
        if (!x.is_number_unsigned()) throw ParseError("element coefficients must be non-negative integers");
        c.push_back(x.get<std::uint32_t>());
    }
    return T.from_coeffs(c);
}

inline json vec_to_json(const Tower& T, const Vec& v) {
    json arr = json::array();
    for (Fe x : v) arr.push_back(element_to_json(T, x));
    return arr;
}

inline Vec vec_from_json(const Tower& T, const json& j, std::uint32_t k) {
    if (!j.is_array() || j.size() != k) throw ParseError("vector has wrong length");
    Vec v;
    for (const auto& x : j) v.push_back(element_from_json(T, x));
    return v;
}

inline json tower_header(const Tower& T, std::uint32_t k) {
    json h;
    h["p"] = T.p;
    h["e"] = T.e;
    h["m"] = T.m;
    h["k"] = k;
    json mod = json::array();
    for (std::uint32_t c : T.modulus) mod.push_back(c);
    h["modulus"] = mod;
    json gam = json::array();
    for (Fe g : T.gamma) gam.push_back(element_to_json(T, g));
    h["gamma"] = gam;
    return h;
}

inline std::pair<TowerPtr, std::uint32_t> tower_from_header(const json& j) {
    try {
        std::uint32_t p = j.at("p").get<std::uint32_t>();
        std::uint32_t e = j.at("e").get<std::uint32_t>();
        std::uint32_t m = j.at("m").get<std::uint32_t>();
        std::uint32_t k = j.at("k").get<std::uint32_t>();
        std::vector<std::uint32_t> modulus;
        for (const auto& c : j.at("modulus")) modulus.push_back(c.get<std::uint32_t>());
        // construct once without gamma to parse the gamma elements
        TowerPtr plain = make_tower(p, e, m, modulus, {});
        std::vector<Fe> gamma;
        for (const auto& g : j.at("gamma")) gamma.push_back(element_from_json(*plain, g));
        return {make_tower(p, e, m, modulus, gamma), k};
    } catch (const json::exception& ex) {
        throw ParseError(std::string("malformed header: ") + ex.what());
    }
}

inline json code_to_json(const SumRankCode& C,
                         const std::optional<ConstructionRecipe>& provenance = std::nullopt) {
    const Tower& T = *C.tower();
    json j;
    j["format"] = "sumrank-code";
    json h = tower_header(T, C.dimension());
    for (auto& [key, val] : h.items()) j[key] = val;
    json blocks = json::array();
    for (std::uint32_t ni : C.profile().n) blocks.push_back(ni);
    j["blocks"] = blocks;
    json gen = json::array();
    for (std::uint32_t r = 0; r < C.dimension(); ++r) {
        json row = json::array();
        for (std::uint32_t c = 0; c < C.length(); ++c)
            row.push_back(element_to_json(T, C.generator().at(r, c)));
        gen.push_back(row);
    }
    j["generator"] = gen;
    if (provenance) {
        json pv;
        pv["family"] = provenance->family;
        json params;
        for (const auto& [key, val] : provenance->params) params[key] = val;
        pv["params"] = params;
        j["provenance"] = pv;
    }
    return j;
}

inline SumRankCode code_from_json(const json& j) {
    if (!j.is_object() || j.value("format", "") != "sumrank-code")
        throw ParseError("not a sumrank-code file");
    auto [tw, k] = tower_from_header(j);
    try {
        BlockProfile profile;
        for (const auto& b : j.at("blocks")) profile.n.push_back(b.get<std::uint32_t>());
        const json& gen = j.at("generator");
        if (gen.size() != k) throw ParseError("generator row count != k");
        FMat G(k, profile.N());
        for (std::uint32_t r = 0; r < k; ++r) {
            if (gen[r].size() != profile.N()) throw ParseError("generator column count != N");
            for (std::uint32_t c = 0; c < profile.N(); ++c)
                G.at(r, c) = element_from_json(*tw, gen[r][c]);
        }
        return SumRankCode(tw, std::move(profile), k, std::move(G));
    } catch (const json::exception& ex) {
        throw ParseError(std::string("malformed code file: ") + ex.what());
    }
}

inline json system_to_json(const System& S) {
    const Tower& T = *S.tower();
    json j;
    j["format"] = "sumrank-system";
    json h = tower_header(T, S.ambient_dim());
    for (auto& [key, val] : h.items()) j[key] = val;
    json blocks = json::array();
    for (const Subspace& U : S.blocks()) {
        json basis = json::array();
        for (const Vec& v : U.basis()) basis.push_back(vec_to_json(T, v));
        blocks.push_back(basis);
    }
    j["blocks"] = blocks;
    return j;
}

inline System system_from_json(const json& j) {
    if (!j.is_object() || j.value("format", "") != "sumrank-system")
        throw ParseError("not a sumrank-system file");
    auto [tw, k] = tower_from_header(j);
    try {
        std::vector<Subspace> blocks;
        for (const auto& basis : j.at("blocks")) {
            std::vector<Vec> vs;
            for (const auto& v : basis) vs.push_back(vec_from_json(*tw, v, k));
            blocks.push_back(Subspace::span(tw, k, vs));
        }
        return System(tw, k, std::move(blocks));
    } catch (const json::exception& ex) {
        throw ParseError(std::string("malformed system file: ") + ex.what());
    }
}

inline std::string dump_canonical(const json& j) { return j.dump(2) + "\n"; }

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open for writing: " + path);
    out << text;
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& ex) {
        throw ParseError(std::string("invalid JSON in ") + path + ": " + ex.what());
    }
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

inline json ab_to_json(const ABReport& ab) {
    json j;
    j["delta_max"] = int_str(ab.delta_max);
    j["delta_min"] = int_str(ab.delta_min);
    j["threshold"] = rat_str(ab.threshold);
    j["satisfied"] = ab.satisfied;
    return j;
}

inline json bounds_to_json(const BoundsReport& b) {
    json j;
    j["t"] = b.t;
    j["k"] = b.k;
    j["N"] = b.N;
    j["minimal_certified"] = b.minimal_certified;
    j["max_weight"] = b.max_w;
    j["max_weight_bound_holds"] = b.max_weight_bound;
    j["bound"] = b.used_bound1 ? "t>=k" : "t<=k-1";
    j["lhs"] = int_str(b.lhs);
    j["rhs"] = int_str(b.rhs);
    j["holds"] = b.holds;
    j["equality"] = b.equality;
    j["asymptotic_holds"] = b.asymptotic_holds;
    return j;
}

inline json enumerator_to_json(const WeightEnumerator& E) {
    json counts;
    for (const auto& [w, c] : E.counts)
        if (c > 0) counts[std::to_string(w)] = int_str(c);
    json j;
    j["r"] = E.r;
    j["counts"] = counts;
    return j;
}

/// Full per-code certificate report used by the `check` CLI verb.
inline json check_report(const SumRankCode& C) {
    const Tower& T = *C.tower();
    json j;
    j["format"] = "sumrank-check-report";
    json params;
    params["p"] = T.p;
    params["e"] = T.e;
    params["m"] = T.m;
    params["q"] = T.q;
    params["k"] = C.dimension();
    json blocks = json::array();
    for (std::uint32_t ni : C.profile().n) blocks.push_back(ni);
    params["blocks"] = blocks;
    params["N"] = C.length();
    params["t"] = C.profile().t();
    j["parameters"] = params;

    auto [wmin, wmax] = min_max_weight(C);
    j["minimal"] = is_minimal(C);
    j["msrd"] = (wmin == C.length() - C.dimension() + 1);
    j["one_weight"] = (wmin == wmax);
    j["d"] = wmin;
    j["max_weight"] = wmax;
    WeightEnumerator E = weight_enumerator(C, 1);
    json weights = json::array();
    for (std::uint32_t w : E.weights()) weights.push_back(w);
    j["weights"] = weights;
    json rls = json::array();
    for (const RankList& rl : rank_list_set(C)) {
        json r = json::array();
        for (std::uint32_t x : rl) r.push_back(x);
        rls.push_back(r);
    }
    j["rank_lists"] = rls;
    j["ab"] = ab_to_json(ab_condition(C));
    j["bounds"] = bounds_to_json(check_length_bounds(C));
    HammingExpansion H = hamming_expand(C);
    json hj;
    hj["M"] = int_str(H.M);
    json hw = json::array();
    for (std::uint32_t w : H.weights) hw.push_back(w);
    hj["weights"] = hw;
    j["hamming"] = hj;
    return j;
}

inline json gdual_report_to_json(const GeometricDualReport& rep) {
    json j;
    j["format"] = "sumrank-gdual-report";
    json pp = json::array(), dp = json::array();
    for (std::uint32_t ni : rep.primal_profile.n) pp.push_back(ni);
    for (std::uint32_t ni : rep.dual_profile.n) dp.push_back(ni);
    j["primal_blocks"] = pp;
    j["dual_blocks"] = dp;
    j["k"] = rep.k;
    j["form"] = rep.form;
    json orders = json::array();
    for (const EnumeratorPair& pr : rep.orders) {
        json o;
        o["order_primal"] = pr.order_primal;
        o["order_dual"] = pr.order_dual;
        o["primal"] = enumerator_to_json(pr.primal);
        o["dual"] = enumerator_to_json(pr.dual);
        o["matches"] = pr.matches;
        orders.push_back(o);
    }
    j["orders"] = orders;
    j["relation_holds"] = rep.relation_holds;
    j["d1_primal"] = rep.d1_primal;
    j["dk1_dual"] = rep.dk1_dual;
    j["distance_identity"] = rep.distance_identity;
    return j;
}

}  // namespace sumrank
