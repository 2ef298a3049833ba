#include "qpde/io.hpp"
#include "qpde/monic.hpp"
#include "qpde/rodrigues.hpp"
#include "qpde/suites.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <random>

using namespace qpde;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string equation;
    std::string preset;
    std::vector<std::string> params;
    std::string backend = "auto";
    unsigned precision = 192;
    int truncation = 200;
    std::optional<int> max_degree;
    std::string out;
    std::string format;
    std::uint64_t seed = 1;
    std::string family = "monic";
    int n = 1, m = 1;
    std::string suite;

    void validate() const {
        if (precision < 64) throw UsageError("--precision must be at least 64 bits");
        if (truncation < 16) throw UsageError("--truncation must be at least 16");
        if (max_degree && (*max_degree < 0 || *max_degree > 12)) throw UsageError("--max-degree must lie in 0..12");
        if (n < 0 || m < 0) throw UsageError("--n and --m must be non-negative");
        if (n + m > 12) throw UsageError("total degree n + m exceeds the guardrail of 12");
    }
    EquationSource source() const {
        if (!equation.empty() && !preset.empty()) throw UsageError("give either --equation or --preset, not both");
        if (!equation.empty()) {
            if (!params.empty()) throw UsageError("--param applies to presets only");
            return parse_equation_file(equation);
        }
        return preset_source(preset.empty() ? "big-q-jacobi" : preset, params);
    }
};

void add_common(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--equation", cfg.equation, "equation file (key = value)");
    sub->add_option("--preset", cfg.preset, "named preset; big-q-jacobi is the default");
    sub->add_option("--param", cfg.params, "preset parameter override, e.g. a=1/3")->take_all();
    sub->add_option("--backend", cfg.backend, "exact or float")->check(CLI::IsMember({"auto", "exact", "float"}));
    sub->add_option("--precision", cfg.precision, "float precision in bits");
    sub->add_option("--truncation", cfg.truncation, "series and quadrature truncation");
    sub->add_option("--max-degree", cfg.max_degree, "total degree bound");
    sub->add_option("--out", cfg.out, "output file; written atomically");
    sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--seed", cfg.seed, "seed for randomized checks");
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty())
        std::cout << text;
    else
        atomic_write(cfg.out, text);
}

Json header(const char* command, const EquationSource& src) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    j["q"] = to_string(src.equation.qv());
    if (src.preset) {
        const auto& p = *src.preset;
        j["preset"] = {{"name", "big-q-jacobi"}, {"a", to_string(p.a)}, {"b", to_string(p.b)},
                       {"c", to_string(p.c)}, {"d", to_string(p.d)}};
    }
    return j;
}

std::string report_csv(const Report& r) {
    std::string out = csv_line({"check", "pass", "detail"});
    for (const auto& c : r.items()) out += csv_line({c.name, c.pass ? "pass" : "fail", c.detail});
    return out;
}

// ---- check ----

int cmd_check(const RunConfig& cfg) {
    const auto src = cfg.source();
    const auto& e = src.equation;
    const int bound = cfg.max_degree.value_or(10);
    Report r;
    auto adm = admissibility(e);
    r.append(adm.report, "admissibility: ");

    Json eig = Json::array();
    for (int n = 0; n <= bound; ++n) {
        Rational lam = eigenvalue(e, n);
        eig.push_back({{"n", n}, {"lambda", to_string(lam)}});
        if (src.preset) r.add("eigenvalue matches preset closed form n=" + std::to_string(n), lam == preset_eigenvalue(*src.preset, n));
    }

    std::mt19937_64 gen(cfg.seed);
    bool ops = true;
    std::string first;
    for (int k = 0; k < 20; ++k) {
        auto f = random_bipoly<Rational>(gen, 4);
        auto g = random_bipoly<Rational>(gen, 4);
        auto rep = verify_operator_relations(e.q, f, g);
        if (!rep.all_passed() && ops) {
            ops = false;
            first = rep.failures().front();
        }
    }
    r.add("operator relations on 20 seeded random pairs", ops, first);

    if (adm.admissible) {
        try {
            r.append(verify_pearson_identities(e, 3, 3), "pearson: ");
        } catch (const std::exception& ex) {
            r.add("pearson identities", false, ex.what());
        }
    } else {
        r.add("pearson identities", false, "skipped: equation is not admissible");
    }

    if (cfg.format == "csv") {
        emit(cfg, report_csv(r));
    } else {
        Json j = header("check", src);
        j["passed"] = r.all_passed();
        j["failures"] = r.failures();
        j["checks"] = to_json(r);
        j["eigenvalues"] = eig;
        emit(cfg, j.dump(2) + "\n");
    }
    for (const auto& f : r.failures()) std::cerr << "failed: " << f << "\n";
    return r.all_passed() ? kExitOk : kExitFailed;
}

// ---- generate ----

template <class Poly>
Json poly_json(const RunConfig& cfg, const Poly& p) {
    if (cfg.backend != "float") return to_json(p);
    PrecisionScope ps(cfg.precision);
    return to_json(convert<BigFloat>(p));
}

int cmd_generate(const RunConfig& cfg) {
    const auto src = cfg.source();
    const auto& e = src.equation;
    Json doc = header("generate", src);
    doc["family"] = cfg.family;
    doc["backend"] = cfg.backend == "float" ? "float" : "exact";
    if (cfg.backend == "float") doc["precision"] = cfg.precision;
    Json side;
    side["schema_version"] = kSchemaVersion;
    side["family"] = cfg.family;
    Report r;

    auto residual = [&](const BiPoly<Rational>& u, int N, const std::string& name) {
        bool zero = (apply_operator(e, u) + eigenvalue(e, N) * u).is_zero();
        r.add("residual " + name, zero);
    };
    auto tag = [](int a, int b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; };

    if (cfg.family == "monic") {
        const int N = cfg.max_degree.value_or(3);
        auto fam = oracle_family(e, N);
        Json recs = Json::array();
        for (int n = 0; n <= N; ++n) {
            recs.push_back({{"degree", n}, {"polynomials", Json::array()}});
            for (std::size_t k = 0; k < fam.P[n].size(); ++k) {
                recs.back()["polynomials"].push_back(poly_json(cfg, fam.P[n][k]));
                residual(fam.P[n][k], n, "P" + tag(n - int(k), int(k)));
                r.add("monic P" + tag(n - int(k), int(k)), fam.P[n][k].coeff(n - int(k), int(k)) == 1);
            }
        }
        doc["max_degree"] = N;
        doc["records"] = recs;
    } else if (cfg.family == "rodrigues") {
        auto res = rodrigues_poly(e, RodriguesSpec<Rational>{cfg.n, cfg.m});
        doc["n"] = cfg.n;
        doc["m"] = cfg.m;
        doc["base_point"] = {to_string(res.base_x), to_string(res.base_y)};
        doc["polynomial"] = poly_json(cfg, res.poly);
        r.add("degree at most n+m", res.polynomial_degree_ok);
        residual(res.poly, cfg.n + cfg.m, "rodrigues" + tag(cfg.n, cfg.m));
    } else if (cfg.family == "nonmonic" || cfg.family == "hypergeometric") {
        if (!src.preset) throw UsageError("family " + cfg.family + " requires the big-q-jacobi preset");
        const auto& p = *src.preset;
        doc["n"] = cfg.n;
        doc["m"] = cfg.m;
        if (cfg.family == "nonmonic") {
            // --n is the total degree, --m the second index k <= n
            if (cfg.m > cfg.n) throw UsageError("nonmonic needs m <= n");
            auto u = nonmonic_poly(p, cfg.n, cfg.m);
            doc["polynomial"] = poly_json(cfg, u);
            residual(u, cfg.n, "nonmonic" + tag(cfg.n, cfg.m));
        } else {
            auto u = monic_hypergeometric(p, cfg.n, cfg.m);
            doc["polynomial"] = poly_json(cfg, u);
            residual(u, cfg.n + cfg.m, "hypergeometric" + tag(cfg.n, cfg.m));
            r.append(check_monic_hypergeometric(p, cfg.n, cfg.m, u));
        }
    } else {
        throw UsageError("unknown family " + cfg.family);
    }

    side["passed"] = r.all_passed();
    side["checks"] = to_json(r);
    if (cfg.out.empty()) {
        Json both;
        both["schema_version"] = kSchemaVersion;
        both["document"] = doc;
        both["residual"] = side;
        std::cout << both.dump(2) << "\n";
    } else {
        std::filesystem::path sidecar(cfg.out);
        sidecar.replace_extension(".residual.json");
        atomic_write(sidecar, side.dump(2) + "\n");
        atomic_write(cfg.out, doc.dump(2) + "\n");
    }
    for (const auto& f : r.failures()) std::cerr << "failed: " << f << "\n";
    return r.all_passed() ? kExitOk : kExitFailed;
}

// ---- verify ----

int cmd_verify(const RunConfig& cfg) {
    const auto src = cfg.source();
    const bool needs_float = cfg.suite == "orthogonality" || cfg.suite == "limits";
    if (needs_float && cfg.backend == "exact") throw UsageError("suite " + cfg.suite + " needs the float backend");
    if (!needs_float && cfg.backend == "float") throw UsageError("suite " + cfg.suite + " runs exactly; drop --backend float");

    SuiteTable t;
    if (cfg.suite == "orthogonality") {
        if (!src.preset) throw UsageError("orthogonality needs a closed-form weight; use the big-q-jacobi preset");
        OrthogonalityConfig oc;
        oc.max_degree = cfg.max_degree.value_or(3);
        if (oc.max_degree > 6) throw UsageError("orthogonality supports --max-degree <= 6");
        oc.precision = cfg.precision;
        oc.truncation = cfg.truncation;
        t = suite_orthogonality(*src.preset, oc);
    } else if (cfg.suite == "consistency") {
        t = suite_consistency(src.equation, src.preset, cfg.max_degree.value_or(4));
    } else if (cfg.suite == "recurrence") {
        t = suite_recurrence(src.equation, src.preset, cfg.max_degree.value_or(4));
    } else if (cfg.suite == "limits") {
        // classical parameters alpha = beta = gamma = delta = 1; the preset parameters are not used
        ClassicalParams cp{Rational(1), Rational(1), Rational(1), Rational(1)};
        t = suite_limits(cp, {Rational(1, 1000), Rational(1, 10000)}, cfg.precision);
    } else {
        throw UsageError("unknown suite " + cfg.suite);
    }

    if (cfg.format == "json") {
        Json j = header("verify", src);
        j["suite"] = t.name;
        j["passed"] = t.passed();
        j["failures"] = t.failures();
        j["header"] = t.header;
        Json rows = Json::array();
        for (const auto& row : t.rows) rows.push_back({{"cells", row.cells}, {"asserted", row.asserted}, {"pass", row.pass}});
        j["rows"] = rows;
        emit(cfg, j.dump(2) + "\n");
    } else {
        emit(cfg, "# schema_version=" + std::to_string(kSchemaVersion) + " suite=" + t.name + "\n" + t.csv());
    }
    std::cerr << t.name << ": " << t.failures() << " asserted failure(s)\n";
    return t.passed() ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bivariate q-difference equations: construction and verification"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto* check = app.add_subcommand("check", "form, admissibility, eigenvalues, Pearson identities");
    add_common(check, cfg);

    auto* generate = app.add_subcommand("generate", "polynomial solutions as JSON");
    add_common(generate, cfg);
    generate->add_option("--family", cfg.family, "monic, rodrigues, nonmonic or hypergeometric")
        ->check(CLI::IsMember({"monic", "rodrigues", "nonmonic", "hypergeometric"}));
    generate->add_option("--n", cfg.n, "first index");
    generate->add_option("--m", cfg.m, "second index");

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    add_common(verify, cfg);
    verify->add_option("--suite", cfg.suite, "orthogonality, consistency, limits or recurrence")
        ->required()
        ->check(CLI::IsMember({"orthogonality", "consistency", "limits", "recurrence"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& ex) {
        int code = app.exit(ex);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        cfg.validate();
        if (check->parsed()) return cmd_check(cfg);
        if (generate->parsed()) return cmd_generate(cfg);
        return cmd_verify(cfg);
    } catch (const ParseError& ex) {
        std::cerr << "parse error: " << ex.what() << "\n";
        return kExitUsage;
    } catch (const UsageError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& ex) {
        std::cerr << "failed: " << ex.what() << "\n";
        return kExitFailed;
    }
}
