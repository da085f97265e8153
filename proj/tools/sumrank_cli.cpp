// Command-line surface: construct the code families, check certificates,
// compute enumerators, geometric duals, Hamming expansions, length bounds,
// and run the verification suite.

#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "sumrank/suite.hpp"
#include "sumrank/sumrank.hpp"

namespace {

using namespace sumrank;

struct TowerArgs {
    std::uint32_t q = 0, p = 0, e = 0, m = 0;
};

std::pair<std::uint32_t, std::uint32_t> factor_prime_power(std::uint32_t q) {
    if (q < 2) throw Error("q must be >= 2");
    std::uint32_t p = 2;
    while (q % p != 0) ++p;
    std::uint32_t e = 0, r = q;
    while (r % p == 0) {
        r /= p;
        ++e;
    }
    if (r != 1) throw Error("q = " + std::to_string(q) + " is not a prime power");
    return {p, e};
}

TowerPtr tower_from_args(const TowerArgs& a) {
    if (a.m == 0) throw Error("--m is required");
    if (a.q != 0) {
        auto [p, e] = factor_prime_power(a.q);
        return make_tower(p, e, a.m);
    }
    if (a.p == 0) throw Error("either --q or --p/--e is required");
    return make_tower(a.p, a.e == 0 ? 1 : a.e, a.m);
}

SumRankCode load_code_or_system(const std::string& path) {
    json j = load_json_file(path);
    std::string fmt = j.value("format", "");
    if (fmt == "sumrank-code") return code_from_json(j);
    if (fmt == "sumrank-system") return code_of(system_from_json(j));
    throw ParseError("unrecognized file format: " + fmt);
}

Subspace orbital_seed(const TowerPtr& tw, std::uint32_t k, std::uint32_t n) {
    // span of the first n vectors gamma_l * e_j, j-major
    std::vector<Vec> gens;
    for (std::uint32_t j = 0; j < k && gens.size() < n; ++j)
        for (std::uint32_t l = 0; l < tw->m && gens.size() < n; ++l) {
            Vec v(k, Fe{0});
            v[j] = tw->gamma[l];
            gens.push_back(v);
        }
    Subspace U = Subspace::span(tw, k, gens);
    if (U.dim() != n) throw Error("orbital seed dimension mismatch");
    return U;
}

void emit_code_file(const SumRankCode& C, const ConstructionRecipe& recipe,
                    const std::string& out_path) {
    json j = code_to_json(C, recipe);
    std::string text = dump_canonical(j);
    if (out_path.empty())
        std::cout << text;
    else
        write_text_file(out_path, text);
}

void print_construction_report(const SumRankCode& C, const ConstructionRecipe& recipe) {
    auto [wmin, wmax] = min_max_weight(C);
    std::ostringstream os;
    os << "family: " << recipe.family << "\n";
    os << "parameters: [(";
    for (std::uint32_t i = 0; i < C.profile().t(); ++i)
        os << (i ? "," : "") << C.profile().n[i];
    os << "), " << C.dimension() << "]  N=" << C.length() << "\n";
    os << "weights: " << wmin;
    if (wmax != wmin) os << ".." << wmax;
    os << "  one_weight=" << (wmin == wmax ? "true" : "false");
    os << "  msrd=" << (wmin == C.length() - C.dimension() + 1 ? "true" : "false");
    os << "  minimal=" << (is_minimal(C) ? "true" : "false") << "\n";
    std::cerr << os.str();
}

int run(int argc, char** argv) {
    CLI::App app{"sum-rank-metric code toolkit"};
    app.require_subcommand(1);

    std::uint64_t cap = scale_cap();
    if (const char* env = std::getenv("SUMRANK_CAP")) cap = std::strtoull(env, nullptr, 10);
    app.add_option("--cap", cap, "enumeration cap (overrides SUMRANK_CAP)");

    // ---- construct ----
    auto* construct = app.add_subcommand("construct", "build a code family and emit a code file");
    std::string family;
    construct->add_option("family", family,
                          "dlrs2 | dlrs2-gdual | singer-orbital | plane-partition | "
                          "subgeometry-partition | lift | one-weight-extension | "
                          "disjoint-scattered | two-block-scattered")
        ->required();
    TowerArgs targs;
    construct->add_option("--q", targs.q, "subfield size q (prime power)");
    construct->add_option("--p", targs.p, "characteristic");
    construct->add_option("--e", targs.e, "degree of F_q over F_p");
    construct->add_option("--m", targs.m, "extension degree of F_{q^m} over F_q");
    std::uint32_t k_arg = 0, n_arg = 1;
    construct->add_option("--k", k_arg, "ambient dimension");
    construct->add_option("--n", n_arg, "seed subspace dimension (singer-orbital)");
    std::string in_path, out_path;
    construct->add_option("--in", in_path, "input code/system file (lift, extension, disjoint)");
    construct->add_option("--out", out_path, "output code file (stdout when omitted)");

    // ---- check ----
    auto* check = app.add_subcommand("check", "verify certificates of a code or system file");
    std::string check_in;
    bool req_minimal = false, req_msrd = false, req_one_weight = false, with_oracle = false;
    check->add_option("--in", check_in, "code or system file")->required();
    check->add_flag("--require-minimal", req_minimal, "exit nonzero unless minimal");
    check->add_flag("--require-msrd", req_msrd, "exit nonzero unless MSRD");
    check->add_flag("--require-one-weight", req_one_weight, "exit nonzero unless one-weight");
    check->add_flag("--oracle", with_oracle,
                    "also run the definition-side minimality scan and verify agreement");

    // ---- weights ----
    auto* weights = app.add_subcommand("weights", "generalized weight enumerator");
    std::string weights_in;
    std::uint32_t order = 1;
    weights->add_option("--in", weights_in, "code or system file")->required();
    weights->add_option("-r,--order", order, "enumerator order (default 1)");

    // ---- gdual ----
    auto* gdual = app.add_subcommand("gdual", "geometric dual and enumerator relation report");
    std::string gdual_in, gdual_out, form = "standard";
    gdual->add_option("--in", gdual_in, "code file")->required();
    gdual->add_option("--out", gdual_out, "output dual code file");
    gdual->add_option("--form", form, "standard | alternating (k = 2 only)");

    // ---- hamming ----
    auto* hamming = app.add_subcommand("hamming", "associated Hamming-metric code");
    std::string hamming_in, hamming_out;
    hamming->add_option("--in", hamming_in, "code or system file")->required();
    hamming->add_option("--out", hamming_out, "write the expansion as a code file");

    // ---- bounds ----
    auto* bounds = app.add_subcommand("bounds", "length bounds for minimal codes");
    std::string bounds_in;
    bounds->add_option("--in", bounds_in, "code or system file")->required();

    // ---- suite ----
    auto* suite = app.add_subcommand("suite", "run the verification suite");
    SuiteOptions sopt;
    suite->add_option("--max-q", sopt.max_q, "largest subfield size (default 3)");
    suite->add_option("--max-m", sopt.max_m, "largest extension degree (default 3)");
    suite->add_option("--max-k", sopt.max_k, "largest ambient dimension (default 3)");
    suite->add_option("--fixture", sopt.fixtures, "extra code files to certify")->expected(-1);

    CLI11_PARSE(app, argc, argv);
    set_scale_cap(cap);

    if (*construct) {
        TowerPtr tw;
        ConstructionRecipe recipe;
        recipe.family = family;
        auto param = [&](const std::string& key, std::uint64_t v) {
            recipe.params.emplace_back(key, std::to_string(v));
        };
        SumRankCode* result = nullptr;
        std::optional<SumRankCode> C;
        if (family == "dlrs2" || family == "dlrs2-gdual" || family == "plane-partition" ||
            family == "subgeometry-partition" || family == "two-block-scattered" ||
            family == "singer-orbital") {
            tw = tower_from_args(targs);
            param("q", tw->q);
            param("m", tw->m);
        }
        if (family == "dlrs2") {
            C = dlrs2(tw);
        } else if (family == "dlrs2-gdual") {
            C = dlrs2_gdual_matrix(tw);
        } else if (family == "singer-orbital") {
            if (k_arg == 0) throw Error("singer-orbital requires --k");
            param("k", k_arg);
            param("n", n_arg);
            System S = singer_orbital(tw, k_arg, orbital_seed(tw, k_arg, n_arg));
            auto mult = block_multiplicities(S);
            std::uint32_t maxmult = *std::max_element(mult.begin(), mult.end());
            param("block_multiplicity", maxmult);
            C = code_of(S);
        } else if (family == "plane-partition") {
            C = code_of(plane_partition(tw));
        } else if (family == "subgeometry-partition") {
            if (k_arg == 0) throw Error("subgeometry-partition requires --k");
            param("k", k_arg);
            C = code_of(subgeometry_partition(tw, k_arg));
        } else if (family == "two-block-scattered") {
            C = two_block_scattered(tw);
        } else if (family == "lift") {
            if (in_path.empty()) throw Error("lift requires --in");
            SumRankCode base = load_code_or_system(in_path);
            C = code_of(lift(system_of(base).blocks()));
        } else if (family == "one-weight-extension") {
            if (in_path.empty()) throw Error("one-weight-extension requires --in");
            SumRankCode base = load_code_or_system(in_path);
            C = one_weight_extension(
                base, DualityContext::standard_dot(base.tower(), base.dimension()));
        } else if (family == "disjoint-scattered") {
            if (in_path.empty()) throw Error("disjoint-scattered requires --in (system file)");
            System S = system_from_json(load_json_file(in_path));
            C = disjoint_scattered_code(
                S.blocks(), DualityContext::standard_dot(S.tower(), S.ambient_dim()));
        } else {
            throw Error("unknown family: " + family);
        }
        (void)result;
        print_construction_report(*C, recipe);
        emit_code_file(*C, recipe, out_path);
        return 0;
    }

    if (*check) {
        SumRankCode C = load_code_or_system(check_in);
        json rep = check_report(C);
        if (with_oracle) {
            bool agree = is_minimal_definition(C) == rep["minimal"].get<bool>();
            rep["minimality_oracle_agrees"] = agree;
            if (!agree) {
                std::cout << dump_canonical(rep);
                return 1;
            }
        }
        std::cout << dump_canonical(rep);
        if (req_minimal && !rep["minimal"].get<bool>()) return 1;
        if (req_msrd && !rep["msrd"].get<bool>()) return 1;
        if (req_one_weight && !rep["one_weight"].get<bool>()) return 1;
        return 0;
    }

    if (*weights) {
        SumRankCode C = load_code_or_system(weights_in);
        json j;
        j["format"] = "sumrank-weights-report";
        j["enumerator"] = enumerator_to_json(weight_enumerator(C, order));
        j["d_r"] = generalized_weight(C, order);
        std::cout << dump_canonical(j);
        return 0;
    }

    if (*gdual) {
        SumRankCode C = code_from_json(load_json_file(gdual_in));
        DualityContext ctx = form == "alternating"
                                 ? DualityContext::alternating2(C.tower())
                                 : DualityContext::standard_dot(C.tower(), C.dimension());
        GeometricDualReport rep = enumerator_relation_check(C, ctx);
        SumRankCode D = geometric_dual(C, ctx);
        if (!gdual_out.empty()) {
            ConstructionRecipe recipe;
            recipe.family = "geometric-dual";
            recipe.params.emplace_back("form", ctx.tag());
            write_text_file(gdual_out, dump_canonical(code_to_json(D, recipe)));
        }
        std::cout << dump_canonical(gdual_report_to_json(rep));
        return rep.relation_holds && rep.distance_identity ? 0 : 1;
    }

    if (*hamming) {
        SumRankCode C = load_code_or_system(hamming_in);
        HammingExpansion H = hamming_expand(C);
        if (!hamming_out.empty()) {
            BlockProfile profile;
            profile.n.assign(static_cast<std::size_t>(H.M.get_ui()), 1);
            SumRankCode ham(C.tower(), profile, C.dimension(), H.G_ext);
            ConstructionRecipe recipe;
            recipe.family = "hamming-expansion";
            write_text_file(hamming_out, dump_canonical(code_to_json(ham, recipe)));
        }
        json j;
        j["format"] = "sumrank-hamming-report";
        j["M"] = int_str(H.M);
        json ws = json::array();
        for (std::uint32_t w : H.weights) ws.push_back(w);
        j["weights"] = ws;
        std::cout << dump_canonical(j);
        return 0;
    }

    if (*bounds) {
        SumRankCode C = load_code_or_system(bounds_in);
        std::cout << dump_canonical(bounds_to_json(check_length_bounds(C)));
        return 0;
    }

    if (*suite) {
        auto results = run_acceptance_suite(sopt);
        int failures = print_suite_results(results, std::cout);
        return failures == 0 ? 0 : 1;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const sumrank::ParseError& ex) {
        std::cerr << "parse error: " << ex.what() << "\n";
        return 2;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
}
