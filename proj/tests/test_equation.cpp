#include "qpde/bigqjacobi.hpp"
#include "qpde/monic.hpp"

#include <doctest.h>

using namespace qpde;
using P = BiPoly<Rational>;
using R = Rational;

namespace {
const auto params = test_params<R>();
const auto eq = preset_equation(params);
}

TEST_CASE("hypergeometric form") {
    CHECK(check_hypergeometric_form(eq).all_passed());
    auto bad = eq;
    bad.A12a += P::monomial(2, 0);
    auto r = check_hypergeometric_form(bad);
    REQUIRE(r.failures().size() == 1);
    CHECK(r.failures()[0] == "A12a bilinear");
    EquationCoeffs<R> zero{QParam<R>(R(1, 2)), P(), P(), P(), P(), P(), P()};
    CHECK(check_hypergeometric_form(zero).all_passed());
}

TEST_CASE("admissibility and eigenvalues") {
    auto adm = admissibility(eq);
    CHECK(adm.admissible);
    CHECK(adm.eigenvalue(0) == 0);
    CHECK(adm.eigenvalue(1) == R(-479, 480));
    for (int n = 0; n <= 10; ++n) CHECK(eigenvalue(eq, n) == preset_eigenvalue(params, n));
    // f1 and a1 as extracted from the coefficients
    const R q = params.q.value();
    CHECK(eq.a1() == 1);
    CHECK(eq.f1() == q * (params.a * params.b * params.c * q * q * q - 1) / (q - 1));
    CHECK(eq.a3a() == params.a * params.b * params.c * q * q * q * q);
    CHECK(eq.a3a() == eq.a1() * q + eq.f1() * (q - 1));

    auto bad = eq;
    bad.A12d += P::monomial(1, 1);
    auto r = admissibility(bad);
    CHECK_FALSE(r.admissible);
    REQUIRE(r.report.failures().size() == 1);
    CHECK(r.report.failures()[0] == "condition 4: a3d = a1");
}

TEST_CASE("operator action") {
    CHECK(apply_operator(eq, P(R(1))).is_zero());
    CHECK(apply_operator(eq, P::y()) == eq.f2() * P::y() + P(eq.g2()));
    CHECK(apply_adjoint(eq, P()).is_zero());
}

TEST_CASE("derived coefficients") {
    const R lam = eigenvalue(eq, 2);
    auto d0 = derived_coeffs(eq, 0, 0, lam);
    CHECK(d0.coeffs == eq);
    CHECK(d0.mu == lam);
    for (int k = 0; k <= 6; ++k)
        for (int l = 0; l <= 6; ++l) {
            auto d = derived_coeffs(eq, k, l, lam);
            REQUIRE(d.coeffs.A12d == eq.A12d / params.q.pow(k + l));
        }
    CHECK(derived_coeffs(eq, 1, 0, lam).mu == lam + eq.f1());

    // differences of a solution solve the derived equation
    auto u = oracle_family(eq, 3).P[3][1];
    const R l3 = eigenvalue(eq, 3);
    for (auto [k, l] : {std::pair{1, 0}, {0, 1}, {1, 1}, {2, 1}}) {
        auto d = derived_coeffs(eq, k, l, l3);
        P v = u;
        for (int i = 0; i < k; ++i) v = D1(v, eq.q);
        for (int j = 0; j < l; ++j) v = D2(v, eq.q);
        CHECK((apply_operator(d, v) + d.mu * v).is_zero());
    }
}

TEST_CASE("closed forms agree on a general admissible equation") {
    // random bilinear/quadratic data constrained by the admissibility conditions
    const QParam<R> q(R(2, 3));
    const R a1(3, 5), f1(-7, 4);
    const P X = P::x(), Y = P::y();
    EquationCoeffs<R> e{q,
                        q.value() * (a1 * X * X + R(1, 3) * X + P(R(-2, 7))),
                        q.value() * (a1 * Y * Y + R(-1, 4) * Y + P(R(1, 9))),
                        (a1 * q.value() + f1 * (q.value() - 1)) * X * Y + R(1, 5) * X + R(-1, 6) * Y + P(R(1, 8)),
                        a1 * X * Y + R(2, 5) * X + R(1, 7) * Y + P(R(-3, 8)),
                        f1 * X + P(R(5, 11)),
                        f1 * Y + P(R(-2, 13))};
    CHECK(admissibility(e).admissible);
    for (int k = 0; k <= 6; ++k)
        for (int l = 0; l <= 6; ++l) CHECK_NOTHROW(derived_coeffs(e, k, l, R(0)));
}

TEST_CASE("weighted pairing on the big q-Jacobi domain") {
    PrecisionScope ps(192);
    auto pf = convert<BigFloat>(params);
    auto nodes = orthogonality_nodes(pf, 120);
    auto ef = convert<BigFloat>(eq);
    auto [lhs, rhs] = bilinear_selfadjoint_check(ef, nodes.nodes, BiPoly<BigFloat>::x(), BiPoly<BigFloat>::y());
    CHECK(abs(lhs - rhs) < BigFloat(1e-25) * abs(lhs));
    auto u = convert<BigFloat>(oracle_family(eq, 2).P[2][1]);
    BigFloat du = weighted_inner(nodes.nodes, apply_operator(ef, u), u);
    BigFloat uu = weighted_inner(nodes.nodes, u, u);
    CHECK(abs(du + eigenvalue(ef, 2) * uu) < BigFloat(1e-25) * abs(uu));
}
