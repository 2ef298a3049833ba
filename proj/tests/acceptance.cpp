// One line per acceptance criterion. Exit status is the number of failed criteria.
#include "qpde/monic.hpp"
#include "qpde/pearson.hpp"
#include "qpde/rodrigues.hpp"
#include "qpde/suites.hpp"

#include <iostream>
#include <random>
#include <sstream>

using namespace qpde;
using P = BiPoly<Rational>;
using R = Rational;

namespace {

struct Verdict {
    bool pass = true;
    std::ostringstream note;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            note << " [" << what << "]";
        }
    }
};

const auto params = test_params<R>();
const auto eq = preset_equation(params);

Verdict operator_relations() {
    Verdict v;
    std::mt19937_64 gen(20);
    const R x(3, 7), y(-2, 5), qv = eq.q.value();
    int checked = 0;
    for (int k = 0; k < 100; ++k) {
        auto f = random_bipoly<R>(gen, 4);
        auto g = random_bipoly<R>(gen, 4);
        auto r = verify_operator_relations(eq.q, f, g);
        for (const auto& name : r.failures()) v.require(false, "trial " + std::to_string(k) + ": " + name);
        // pointwise quotients as an independent check of the symbolic operators
        v.require(D1(f, eq.q).eval(x, y) == (f.eval(qv * x, y) - f.eval(x, y)) / ((qv - 1) * x), "D1 pointwise");
        v.require(Dm2(f, eq.q).eval(x, y) == qv * (f.eval(x, y) - f.eval(x, y / qv)) / ((qv - 1) * y),
                  "Dm2 pointwise");
        ++checked;
    }
    v.note << " pairs=" << checked;
    return v;
}

Verdict derived() {
    Verdict v;
    const R lam = eigenvalue(eq, 4);
    int cases = 0;
    for (int k = 0; k <= 6; ++k)
        for (int l = 0; l <= 6; ++l) {
            try {
                auto d = derived_coeffs(eq, k, l, lam);
                v.require(d.coeffs.A12d == eq.A12d / eq.q.pow(k + l), "A12d scaling");
                ++cases;
            } catch (const DerivationMismatch& ex) {
                v.require(false, ex.what());
            }
        }
    // q-differences of degree-4 solutions must solve the derived equations
    auto fam = oracle_family(eq, 4);
    for (const auto& u : fam.P[4])
        for (int k = 0; k <= 2; ++k)
            for (int l = 0; l <= 2; ++l) {
                auto d = derived_coeffs(eq, k, l, lam);
                P w = u;
                for (int i = 0; i < k; ++i) w = D1(w, eq.q);
                for (int j = 0; j < l; ++j) w = D2(w, eq.q);
                v.require((apply_operator(d, w) + d.mu * w).is_zero(), "difference of solution");
            }
    v.note << " (k,l)=" << cases;
    return v;
}

Verdict eigen() {
    Verdict v;
    auto adm = admissibility(eq);
    v.require(adm.admissible, "admissibility");
    for (const auto& name : adm.report.failures()) v.require(false, name);
    for (int n = 0; n <= 10; ++n) v.require(eigenvalue(eq, n) == preset_eigenvalue(params, n), "lambda_" + std::to_string(n));
    v.require(eigenvalue(eq, 1) == R(-479, 480), "lambda_1");
    v.note << " lambda_1=" << to_string(eigenvalue(eq, 1));
    return v;
}

Verdict weight() {
    Verdict v;
    auto ident = verify_pearson_identities(eq, 3, 3);
    for (const auto& name : ident.failures()) v.require(false, name);

    const R qv = eq.q.value();
    const R x0 = params.d * qv;
    auto w = make_weight(eq, x0, x0);
    int both = 0, generic = 0, total = 0;
    const R xg(2, 7), yg(3, 11);
    for (int s = 0; s <= 12; ++s)
        for (int t = 0; s + t <= 12; ++t) {
            ++total;
            R b = rho_ratio_y_first(w.pearson, w.q, x0, x0, s, t);
            try {
                v.require(rho_ratio(w.pearson, w.q, x0, x0, s, t) == b, "path at anchor");
                ++both;
            } catch (const PoleOnPath&) {
                v.require(s >= 1 && s <= t, "unexpected pole");
            }
            v.require(rho_ratio(w.pearson, w.q, xg, yg, s, t) == rho_ratio_y_first(w.pearson, w.q, xg, yg, s, t),
                      "generic path");
            ++generic;
        }
    for (int s = 0; s <= 3; ++s)
        for (int t = 0; t <= 3; ++t) v.require(check_pearson_system_at(w, eq, s, t).all_passed(), "system");

    PrecisionScope ps(192);
    auto pf = convert<BigFloat>(params);
    const BigFloat q = pf.q.value(), tol("1e-30");
    auto g1 = preset_G1(pf);
    BigFloat worst(0);
    for (auto [x, y] : std::vector<std::pair<BigFloat, BigFloat>>{
             {BigFloat(1) / 7, BigFloat(2) / 9}, {BigFloat(-1) / 9, BigFloat(1) / 5}, {BigFloat(1) / 11, BigFloat(3) / 10}}) {
        BigFloat err = abs(weight_W(pf, BigFloat(q * x), y) / weight_W(pf, x, y) - g1.eval(x, y));
        worst = std::max(worst, err);
        v.require(err < tol, "closed-form ratio");
    }
    v.note << " paths both=" << both << "/" << total << " generic=" << generic << "/" << total
           << " weight err=" << worst.str(3, std::ios::scientific);
    return v;
}

Verdict residuals() {
    Verdict v;
    auto rf = generate_monic_rf(eq, 5);
    v.require(rf.inverse_ok, "generalized inverse");
    v.require(rf.matches_oracle, "recursion vs oracle " + rf.first_difference);
    for (int n = 0; n <= 5; ++n)
        for (std::size_t k = 0; k <= std::size_t(n); ++k) {
            const auto& u = rf.family.P[n][k];
            v.require((apply_operator(eq, u) + eigenvalue(eq, n) * u).is_zero(), "monic residual");
            v.require(u.homogeneous_part(n) == P::monomial(n - int(k), int(k)), "monic leading part");
        }
    for (int n = 0; n <= 2; ++n)
        for (int m = 0; m <= 2; ++m) {
            auto r = rodrigues_poly(eq, RodriguesSpec<R>{n, m});
            v.require(r.residual_zero && r.polynomial_degree_ok, "rodrigues");
            v.require((apply_operator(eq, r.poly) + eigenvalue(eq, n + m) * r.poly).is_zero(), "rodrigues residual");
        }
    for (int n = 0; n <= 3; ++n)
        for (int k = 0; k <= n; ++k) {
            auto u = nonmonic_poly(params, n, k);
            v.require((apply_operator(eq, u) + eigenvalue(eq, n) * u).is_zero(), "nonmonic residual");
            v.require(u.eval(R(2, 9), R(-3, 7)) == nonmonic_value(params, n, k, R(2, 9), R(-3, 7)), "nonmonic value");
        }
    return v;
}

Verdict from_suite(const SuiteTable& t) {
    Verdict v;
    std::size_t reported = 0, mismatched = 0;
    for (const auto& r : t.rows) {
        if (!r.asserted) ++reported;
        if (!r.asserted && !r.pass) ++mismatched;
        if (r.asserted && !r.pass) {
            std::string s;
            for (const auto& c : r.cells) s += (s.empty() ? "" : " ") + c;
            v.require(false, s);
        }
    }
    v.note << " rows=" << t.rows.size() << " report-only=" << reported << " report-only mismatches=" << mismatched;
    return v;
}

}  // namespace

int main() {
    struct Criterion {
        const char* title;
        Verdict (*run)();
    };
    const Criterion all[] = {
        {"operator relations on 100 random pairs", operator_relations},
        {"derived coefficients for k,l <= 6", derived},
        {"admissibility and eigenvalues", eigen},
        {"weight functions and lattice paths", weight},
        {"residuals of monic, Rodrigues and nonmonic families", residuals},
        {"consistency suite", [] { return from_suite(suite_consistency(eq, params, 4)); }},
        {"recurrence suite", [] { return from_suite(suite_recurrence(eq, params, 4)); }},
        {"orthogonality suite", [] { return from_suite(suite_orthogonality(params, OrthogonalityConfig{})); }},
        {"limit suite", [] {
             return from_suite(suite_limits(ClassicalParams{R(1), R(1), R(1), R(1)}, {R(1, 1000), R(1, 10000)}, 192));
         }},
    };
    int failed = 0;
    int k = 1;
    for (const auto& c : all) {
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& ex) {
            v.require(false, std::string("exception: ") + ex.what());
        }
        failed += !v.pass;
        std::cout << "criterion " << k++ << ": " << (v.pass ? "PASS" : "FAIL") << " " << c.title << v.note.str()
                  << std::endl;
    }
    return failed;
}
