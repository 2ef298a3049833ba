#include "qpde/matrix.hpp"
#include "qpde/ratfn.hpp"

#include <doctest.h>

using namespace qpde;
using P = BiPoly<Rational>;
using R = Rational;

TEST_CASE("ring operations") {
    const P x = P::x(), y = P::y();
    CHECK((x + y) * (x - y) == x * x - y * y);
    CHECK((x * y).scaled(R(1, 2), R(1)) == R(1, 2) * (x * y));
    CHECK((x * x * y).eval(R(2), R(3)) == 12);
    CHECK((x - x).is_zero());
    CHECK((x * x * y + P(3)).degree() == 3);
    CHECK(((x + y).pow(3)).coeff(2, 1) == 3);
    CHECK((x * y).swapped() == y * x);
}

TEST_CASE("exact division") {
    const P x = P::x(), y = P::y();
    P d = x + y + P(1);
    P f = (x * x - y) * d;
    auto r = divide(f, d);
    CHECK(r.quotient == x * x - y);
    CHECK(r.remainder.is_zero());
    CHECK_FALSE(divide(x * x + P(1), x + y).remainder.is_zero());
}

TEST_CASE("rational function equality") {
    const P x = P::x(), y = P::y();
    P z = x + P(1);
    CHECK(ratfn_equal(RationalFn<R>(x, y), RationalFn<R>(x * z, y * z)));
    CHECK_FALSE(ratfn_equal(RationalFn<R>(x, y), RationalFn<R>(y, x)));
    CHECK_THROWS_AS(RationalFn<R>(x, P()), std::domain_error);
    CHECK_THROWS_AS(RationalFn<R>(x, y).eval(R(1), R(0)), std::domain_error);
}

TEST_CASE("solve_exact") {
    Mat<R> b{{R(1), R(2)}, {R(3), R(4)}};
    CHECK(solve_exact(Mat<R>::identity(2), b) == b);
    Mat<R> a{{R(2), R(0)}, {R(0), R(4)}};
    CHECK(solve_exact(a, Mat<R>{{R(1)}, {R(1)}}) == Mat<R>{{R(1, 2)}, {R(1, 4)}});
    CHECK_THROWS_AS(solve_exact(Mat<R>{{R(1), R(2)}, {R(2), R(4)}}, Mat<R>::identity(2)), SingularMatrix);
}

TEST_CASE("rank and determinant") {
    Mat<R> m{{R(1), R(2), R(3)}, {R(2), R(4), R(6)}, {R(0), R(1), R(1)}};
    CHECK(rank(m) == 2);
    CHECK(determinant(m) == 0);
    CHECK(determinant(Mat<R>{{R(0), R(1)}, {R(1), R(0)}}) == -1);
}

TEST_CASE("interpolation") {
    Mat<R> v{{R(0), R(0)}, {R(0), R(1)}};
    CHECK(interpolate_2d<R>({R(0), R(1)}, {R(0), R(1)}, v) == P::x() * P::y());
    CHECK(interpolate_2d<R>({R(0), R(1)}, {R(0), R(1)}, Mat<R>(2, 2)).is_zero());

    // x^2 + y sampled on a 3 x 2 grid of powers of 1/2
    std::vector<R> xs{R(1), R(1, 2), R(1, 4)}, ys{R(1), R(1, 2)};
    P f = P::x() * P::x() + P::y();
    Mat<R> s(3, 2);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 2; ++j) s(i, j) = f.eval(xs[i], ys[j]);
    CHECK(interpolate_2d(xs, ys, s) == f);
}

TEST_CASE("scalar text round trip") {
    CHECK(parse_rational("-3/6") == R(-1, 2));
    CHECK(parse_rational(" 7 ") == 7);
    CHECK(to_string(R(-1, 2)) == "-1/2");
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
}

TEST_CASE("float backend") {
    PrecisionScope ps(192);
    BiPoly<BigFloat> f = convert<BigFloat>(P::x() * P::x() + P::y());
    BigFloat v = f.eval(BigFloat(1) / 3, BigFloat(1) / 7);
    BigFloat expected = BigFloat(1) / 9 + BigFloat(1) / 7;
    CHECK(abs(v - expected) < BigFloat(1e-55));
    CHECK(current_precision_bits() >= 192);
}
