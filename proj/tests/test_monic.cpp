#include "qpde/bigqjacobi.hpp"
#include "qpde/monic.hpp"

#include <doctest.h>

using namespace qpde;
using P = BiPoly<Rational>;
using R = Rational;
using M = Mat<R>;

namespace {
const auto params = test_params<R>();
const auto eq = preset_equation(params);
const QParam<R> half(R(1, 2));
}

TEST_CASE("structure matrices") {
    for (int n = 0; n <= 5; ++n)
        for (int j = 1; j <= 2; ++j) CHECK(L_matrix<R>(n, j) * L_matrix<R>(n, j).transpose() == M::identity(n + 1));
    auto s = structure_matrices(2, half);
    CHECK(s.E1 == M{{R(3, 2), R(0)}, {R(0), R(1)}, {R(0), R(0)}});
    CHECK(s.K1(0, 0) == 3);
    CHECK(s.L1 == L_matrix<R>(2, 1));
    CHECK(s.L2 == L_matrix<R>(2, 2));
}

TEST_CASE("leading-coefficient blocks") {
    CHECK(F_matrix(eq, 0, 1) == M{{eq.f1()}});
    // printed S_1 has a zero subdiagonal, so the printed formula gives (g1/f1, 0)
    auto printed = ghat_printed(eq, 1);
    CHECK(printed.G1 == M{{eq.g1() / eq.f1()}, {R(0)}});
    auto oracle = ghat_oracle(eq, 1);
    CHECK(oracle.G[0] == M{{eq.g1() / eq.f1()}, {eq.g2() / eq.f1()}});
    CHECK(oracle.P[0] == P::x() + P(eq.g1() / eq.f1()));
    CHECK(oracle.P[1] == P::y() + P(eq.g2() / eq.f1()));
    CHECK(ghat_oracle(eq, 0).P == PolyVec<R>{P(R(1))});

    // T_n agrees with the operator's degree n-2 block
    for (int n = 2; n <= 5; ++n) CHECK(T_printed(eq, n) == action_matrix(eq, n, n - 2));

    // the linear system with F_1(lambda_2) recovers G_{2,1} when S_2 is read off the operator
    auto s_op = [](const EquationCoeffs<R>& e, int m) { return S_operator(e, m); };
    for (int n = 1; n <= 4; ++n) {
        auto g = ghat_oracle(eq, n);
        auto f = ghat_formula(eq, n, s_op, &g.G[n - 1]);
        CHECK(f.G1 == g.G[n - 1]);
        if (n >= 2) CHECK(*f.G2 == g.G[n - 2]);
        CHECK(S_reindexed(eq, n) == S_operator(eq, n));
    }
}

TEST_CASE("oracle families solve the equation") {
    auto fam = oracle_family(eq, 5);
    for (int n = 0; n <= 5; ++n)
        for (std::size_t k = 0; k < fam.P[n].size(); ++k) {
            const auto& u = fam.P[n][k];
            CHECK((apply_operator(eq, u) + eigenvalue(eq, n) * u).is_zero());
            CHECK(u.coeff(n - int(k), int(k)) == 1);
            CHECK(u.homogeneous_part(n) == P::monomial(n - int(k), int(k)));
        }
}

TEST_CASE("three-term recurrence") {
    auto fam = oracle_family(eq, 5);
    for (int n = 0; n <= 4; ++n) {
        auto t = ttr_matrices(fam, n);
        for (int j = 1; j <= 2; ++j) {
            CHECK(t.A[j - 1] == L_matrix<R>(n, j));
            CHECK(is_zero(ttr_residual(fam, t, n, j)));
            if (n >= 1) CHECK(rank(t.C[j - 1]) == std::size_t(n));
        }
    }
}

TEST_CASE("generalized inverse and the stacked recursion") {
    M d1{{R(1), R(0), R(0), R(0)}, {R(0), R(1, 2), R(1, 2), R(0)}, {R(0), R(0), R(0), R(1)}};
    CHECK(generalized_inverse_explicit<R>(1) == d1);
    for (int n = 0; n <= 6; ++n) {
        CHECK(generalized_inverse_explicit<R>(n) * joint_L<R>(n) == M::identity(n + 2));
        CHECK(generalized_inverse_explicit<R>(n) == generalized_inverse_formula<R>(n));
    }
    auto rf = generate_monic_rf(eq, 4);
    CHECK(rf.inverse_ok);
    CHECK(rf.matches_oracle);
    CHECK(rf.family.P[1] == oracle_family(eq, 1).P[1]);
    auto rf0 = generate_monic_rf(eq, 0);
    CHECK(rf0.family.P.size() == 1);
    CHECK(rf0.family.P[0] == PolyVec<R>{P(R(1))});
}

TEST_CASE("moment matrices") {
    PrecisionScope ps(192);
    auto nodes = orthogonality_nodes(convert<BigFloat>(params), 200).nodes;
    auto fam = oracle_family(eq, 1);
    PolyVec<BigFloat> p0{BiPoly<BigFloat>(BigFloat(1))}, p1;
    for (const auto& u : fam.P[1]) p1.push_back(convert<BigFloat>(u));
    auto h0 = gram_matrix(p0, 0, nodes);
    CHECK(h0(0, 0) > 0);
    auto g = gram_matrix(p1, 0, nodes);
    CHECK(g.rows() == 1);
    CHECK(g.cols() == 2);
    const BigFloat tol("1e-25");
    for (std::size_t c = 0; c < 2; ++c) CHECK(abs(g(0, c)) < tol * h0(0, 0));
    auto h1 = gram_matrix(p1, 1, nodes);
    BigFloat det = determinant(h1);
    CHECK(abs(det) > BigFloat("1e-6") * abs(h1(0, 0) * h1(1, 1)));
}
