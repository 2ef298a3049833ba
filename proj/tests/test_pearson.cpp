#include "qpde/bigqjacobi.hpp"
#include "qpde/pearson.hpp"

#include <doctest.h>

#include <random>

using namespace qpde;
using P = BiPoly<Rational>;
using R = Rational;

namespace {
const auto params = test_params<R>();
const auto eq = preset_equation(params);
const R qv = params.q.value();
}

TEST_CASE("Pearson data of the preset") {
    auto p = build_pearson(eq);
    // omega1(qx, y) vanishes on x = d
    auto r = divide(p.omega1.scaled(qv, R(1)), P(params.d * qv) - qv * P::x());
    CHECK(r.remainder.is_zero());
    // G1 = phi1 / omega1(qx, .) at a rational point
    R x(2, 7), y(-3, 11);
    CHECK(p.G1.eval(x, y) == p.phi1.eval(x, y) / p.omega1.eval(qv * x, y));
    CHECK(p.G2.eval(x, y) == p.phi2.eval(x, y) / p.omega2.eval(x, qv * y));
    // reduced closed form of G1
    CHECK(ratfn_equal(p.G1, preset_G1(params)));
}

TEST_CASE("Pearson identities and coupling") {
    auto r = verify_pearson_identities(eq, 3, 3);
    CHECK(r.all_passed());
    CHECK(r.items().size() >= 16);

    auto bad = eq;
    bad.A12d += P::monomial(1, 1);
    auto rb = verify_pearson_identities(bad, 0, 0);
    CHECK_FALSE(rb.all_passed());
}

TEST_CASE("lattice weight") {
    const R x0 = params.d * qv, y0 = params.d * qv;
    auto w = make_weight(eq, x0, y0);
    CHECK(weight_at_lattice(w, 0, 0) == 1);
    CHECK(weight_at_lattice(w, 1, 0) == w.pearson.G1.eval(x0, y0));
    CHECK_THROWS_AS(weight_at_lattice(w, -1, 0), std::invalid_argument);

    // from (dq, dq) the x-first path crosses a pole of G2 when 1 <= s <= t; compare where both are defined
    int both = 0;
    for (int s = 0; s <= 6; ++s)
        for (int t = 0; t <= 6; ++t) {
            R b = rho_ratio_y_first(w.pearson, w.q, x0, y0, s, t);
            std::optional<R> a;
            try {
                a = rho_ratio(w.pearson, w.q, x0, y0, s, t);
            } catch (const PoleOnPath&) {
                CHECK((s >= 1 && s <= t));
            }
            if (a) {
                REQUIRE(*a == b);
                ++both;
            }
        }
    CHECK(both == 28);

    std::mt19937_64 gen(3);
    std::uniform_int_distribution<int> d(0, 6);
    const R xg(2, 7), yg(3, 11);
    for (int k = 0; k < 20; ++k) {
        int s = d(gen), t = d(gen);
        REQUIRE(rho_ratio(w.pearson, w.q, xg, yg, s, t) == rho_ratio_y_first(w.pearson, w.q, xg, yg, s, t));
    }
    for (int s = 0; s <= 3; ++s)
        for (int t = 0; t <= 3; ++t) CHECK(check_pearson_system_at(w, eq, s, t).all_passed());
    // the backward stencil at s = 0 reaches x = d, outside the support
    for (int s = 1; s <= 3; ++s)
        for (int t = 0; t <= 3; ++t) CHECK(check_pearson_difference_form_at(w, s, t).all_passed());
    CHECK_THROWS_AS(check_pearson_difference_form_at(w, 0, 0), MissingNode);
}

TEST_CASE("closed-form weight") {
    PrecisionScope ps(192);
    auto pf = convert<BigFloat>(params);
    const BigFloat q = pf.q.value();
    const BigFloat tol("1e-30");
    auto g1 = preset_G1(pf);
    std::vector<std::pair<BigFloat, BigFloat>> pts = {
        {BigFloat(1) / 7, BigFloat(2) / 9}, {BigFloat(-1) / 9, BigFloat(1) / 5}, {BigFloat(1) / 11, BigFloat(3) / 10}};
    for (const auto& [x, y] : pts) {
        BigFloat ratio = weight_W(pf, BigFloat(q * x), y) / weight_W(pf, x, y);
        CHECK(abs(ratio - g1.eval(x, y)) < tol);
        // the second closed form differs by the constant -d/c
        BigFloat c = weight_alt(pf, x, y) / weight_W(pf, x, y);
        CHECK(abs(c - BigFloat(5) / 2) < tol);
    }
    // zero factors: (x/d; q)_inf at x = d, (y/a; q)_inf at y = a
    CHECK(weight_W(pf, pf.d, BigFloat(1) / 5) == 0);
    CHECK(weight_W(pf, BigFloat(1) / 11, pf.a) == 0);
}

TEST_CASE("weights of derived equations") {
    // the lattice path from (dq, dq) crosses a pole of G2 for the derived equations, so a generic anchor is used
    const R x0(2, 7), y0(3, 11);
    auto base = make_weight(eq, x0, y0);
    auto w00 = rho_kl(eq, 0, 0, x0, y0);
    CHECK(ratfn_equal(w00.pearson.G1, base.pearson.G1));
    CHECK(ratfn_equal(w00.pearson.G2, base.pearson.G2));
    for (auto [k, l] : {std::pair{1, 0}, {0, 1}, {1, 1}, {2, 1}}) {
        RhoKlCheck c;
        rho_kl(eq, k, l, x0, y0, &c);
        CHECK_MESSAGE(c.orders_commute, k << "," << l);
        CHECK_MESSAGE(c.product_identity, k << "," << l << " " << c.detail);
        CHECK_MESSAGE(c.derived_pearson, k << "," << l << " " << c.detail);
    }
}
