#pragma once

#include "qpde/matrix.hpp"
#include "qpde/pearson.hpp"

namespace qpde {

template <Field T>
struct BigQJacobiParams {
    T a, b, c, d;
    QParam<T> q;
};

// 0 < aq, bq, cq < 1 and d < 0.
template <Field T>
void validate(const BigQJacobiParams<T>& p) {
    const T& qv = p.q.value();
    auto unit = [&](const T& v, const char* name) {
        T s = v * qv;
        if (!(s > 0 && s < 1)) throw std::invalid_argument(std::string("big q-Jacobi parameter ") + name + " needs 0 < " + name + "q < 1");
    };
    unit(p.a, "a");
    unit(p.b, "b");
    unit(p.c, "c");
    if (!(p.d < 0)) throw std::invalid_argument("big q-Jacobi parameter d must be negative");
}

template <Field T>
BigQJacobiParams<T> test_params() {
    return {T(1) / T(3), T(1) / T(4), T(1) / T(5), T(-1) / T(2), QParam<T>(T(1) / T(2))};
}

template <Field U, Field T>
BigQJacobiParams<U> convert(const BigQJacobiParams<T>& p) {
    auto cv = [](const T& v) {
        if constexpr (is_exact_v<T>)
            return from_rational<U>(v);
        else
            return U(v);
    };
    return {cv(p.a), cv(p.b), cv(p.c), cv(p.d), QParam<U>(cv(p.q.value()))};
}

template <Field T>
EquationCoeffs<T> preset_equation(const BigQJacobiParams<T>& p) {
    validate(p);
    const T& q = p.q.value();
    const T &a = p.a, &b = p.b, &c = p.c, &d = p.d;
    const T one(1);
    using P = BiPoly<T>;
    const P X = P::x(), Y = P::y();
    const T q2 = q * q, q4 = q2 * q2;
    P C11 = q * ((P(d * q) - X) * (P(a * c * q2) - X));
    P C22 = q * ((P(a * q) - Y) * (P(d * q) - Y));
    P A12a = (a * c * q4) * ((P(d) - b * X) * (P(one) - Y));
    P A12d = (P(d * q) - X) * (P(a * q) - Y);
    P B1 = (q / (q - one)) * (q * (P(d - a * c * d * q2) + (a * c * q) * (P(one) + (b * q) * (X - P(one)))) - X);
    P B2 = (q / (q - one)) * (P(d * q) + (a * q) * (P(one - d * q) + (b * c * q2) * (Y - P(one))) - Y);
    return {p.q, C11, C22, A12a, A12d, B1, B2};
}

// q^{2-n}[n](1 - abc q^{n+2})/(q-1)
template <Field T>
T preset_eigenvalue(const BigQJacobiParams<T>& p, int n) {
    const T& qv = p.q.value();
    return p.q.pow(2 - n) * qnum<T>(n, p.q) * (T(1) - p.a * p.b * p.c * p.q.pow(n + 2)) / (qv - T(1));
}

// Reduced G1 = c (x - y)(bx - d) / ((x - d)(x - cy)).
template <Field T>
RationalFn<T> preset_G1(const BigQJacobiParams<T>& p) {
    using P = BiPoly<T>;
    const P X = P::x(), Y = P::y();
    return {p.c * ((X - Y) * (p.b * X - P(p.d))), (X - P(p.d)) * (X - p.c * Y)};
}

// Rodrigues bracket K x^{2n} y^{2m} (dq/x)_n (aq/y)_m (x/y)_m (cqy/x)_n as a polynomial,
// K = (q^2 a)^n q^{-n(n-1)} (q^2 d)^m q^{-m(m-1)}.
template <Field T>
BiPoly<T> rodrigues_bracket(const BigQJacobiParams<T>& p, int n, int m) {
    using P = BiPoly<T>;
    const auto& q = p.q;
    const P X = P::x(), Y = P::y();
    const T q2 = q.pow(2);
    P r(integer_power(T(q2 * p.a), n) * q.pow(-n * (n - 1)) * integer_power(T(q2 * p.d), m) * q.pow(-m * (m - 1)));
    for (int j = 0; j < n; ++j) r *= (X - P(p.d * q.pow(j + 1))) * (X - (p.c * q.pow(j + 1)) * Y);
    for (int j = 0; j < m; ++j) r *= (Y - P(p.a * q.pow(j + 1))) * (Y - q.pow(j) * X);
    return r;
}

// ---- closed-form weight (float backend) ----

inline BigFloat qpoch_ratio_inf(const std::vector<BigFloat>& num, const std::vector<BigFloat>& den,
                                const QParam<BigFloat>& q, std::optional<int> terms) {
    BigFloat r(1);
    for (const auto& a : num) r *= qpochhammer_inf(a, q, terms);
    for (const auto& a : den) {
        BigFloat v = qpochhammer_inf(a, q, terms);
        if (v == 0) throw std::domain_error("zero denominator factor in closed-form weight");
        r /= v;
    }
    return r;
}

// W(x,y) = (dq/y, x/(cy), x/d, y/a, y/d)_inf / (y (d/(cy), cqy/d, x/y, bx/d, y)_inf).
// With `finite_i`, the ratio (dq/y)_inf/(x/y)_inf is replaced by (dq/y)_i, valid at x = dq^{i+1}.
inline BigFloat weight_W(const BigQJacobiParams<BigFloat>& p, const BigFloat& x, const BigFloat& y,
                         std::optional<int> finite_i = std::nullopt, std::optional<int> terms = std::nullopt) {
    const auto& q = p.q;
    const BigFloat& qv = q.value();
    const BigFloat &a = p.a, &b = p.b, &c = p.c, &d = p.d;
    if (y == 0) throw std::domain_error("closed-form weight undefined at y = 0");
    BigFloat r = qpoch_ratio_inf({x / (c * y), x / d, y / a, y / d}, {d / (c * y), c * qv * y / d, b * x / d, y}, q, terms) / y;
    if (finite_i)
        r *= qpochhammer(BigFloat(d * qv / y), q, *finite_i);
    else
        r *= qpoch_ratio_inf({d * qv / y}, {x / y}, q, terms);
    return r;
}

// (y/a, x/d, dq/y, x/(cy), y/d)_inf / (y, x/y, bx/d, dq/(cy), cy/d)_inf
inline BigFloat weight_alt(const BigQJacobiParams<BigFloat>& p, const BigFloat& x, const BigFloat& y,
                           std::optional<int> terms = std::nullopt) {
    const BigFloat& qv = p.q.value();
    const BigFloat &a = p.a, &b = p.b, &c = p.c, &d = p.d;
    return qpoch_ratio_inf({y / a, x / d, d * qv / y, x / (c * y), y / d},
                           {y, x / y, b * x / d, d * qv / (c * y), c * y / d}, p.q, terms);
}

struct QuadratureNodes {
    std::vector<WeightedNode<BigFloat>> nodes;
    std::size_t nonpositive = 0;
};

// Nodes of the iterated Jackson integral over y in (dq, aq), x in (dq, cqy), weighted by W.
// Outer: y = aq^{t+1}, y = dq^{t+1}. Inner: x = cqy q^i and x = dq^{i+1}. Along each inner
// chain W is carried by the reduced G1 from its closed-form start value. Structurally zero
// nodes (x = cqy chain for y < 0, x = dq^{i+1} with i > t for y = dq^{t+1}) are left out.
inline QuadratureNodes orthogonality_nodes(const BigQJacobiParams<BigFloat>& p, int terms) {
    const auto& q = p.q;
    const BigFloat& qv = q.value();
    const BigFloat one(1);
    const auto G1 = preset_G1(p);
    QuadratureNodes out;
    auto push = [&](const BigFloat& x, const BigFloat& y, const BigFloat& mass) {
        if (!boost::multiprecision::isfinite(mass)) throw std::domain_error("non-finite weight at a node");
        if (mass <= 0) ++out.nonpositive;
        out.nodes.push_back({x, y, mass});
    };
    BigFloat qt(1);
    for (int t = 0; t <= terms; ++t) {
        for (int branch = 0; branch < 2; ++branch) {
            const bool neg = branch == 1;
            const BigFloat ya = neg ? p.d * qv : p.a * qv;
            const BigFloat y = ya * qt;
            const BigFloat wy = (neg ? BigFloat(-1) : one) * (one - qv) * ya * qt;
            if (!neg) {
                BigFloat x = p.c * qv * y;
                BigFloat w = weight_W(p, x, y);
                BigFloat qi(1);
                for (int i = 0; i <= terms; ++i) {
                    push(x, y, (one - qv) * p.c * qv * y * qi * wy * w);
                    w *= G1.eval(x, y);
                    x *= qv;
                    qi *= qv;
                }
            }
            BigFloat x = p.d * qv;
            BigFloat w = weight_W(p, x, y, 0);
            BigFloat qi(1);
            for (int i = 0; i <= terms; ++i) {
                if (neg && i > t) break;
                push(x, y, -(one - qv) * p.d * qv * qi * wy * w);
                w *= G1.eval(x, y);
                x *= qv;
                qi *= qv;
            }
        }
        qt *= qv;
    }
    return out;
}

// ---- non-monic family ----

// P_m(t; A, B, C) = 3phi2(q^{-m}, ABq^{m+1}, t; Aq, Cq; q, q)
template <Field T>
T big_q_jacobi_1d(int m, const T& t, const T& A, const T& B, const T& C, const QParam<T>& q) {
    const T& qv = q.value();
    return phi_rs<T>({q.pow(-m), A * B * q.pow(m + 1), t}, {A * qv, C * qv}, q, qv);
}

// P_{n,k} = P_{n-k}(y; a, bcq^{2k+1}, dq^k) y^k (dq/y)_k P_k(x/y; c, b, d/y)
template <Field T>
T nonmonic_value(const BigQJacobiParams<T>& p, int n, int k, const T& x, const T& y) {
    if (k < 0 || k > n) throw std::invalid_argument("non-monic index needs 0 <= k <= n");
    if (y == 0) throw std::domain_error("non-monic evaluation needs y != 0");
    const auto& q = p.q;
    T first = big_q_jacobi_1d(n - k, y, p.a, T(p.b * p.c * q.pow(2 * k + 1)), T(p.d * q.pow(k)), q);
    T bridge = integer_power(y, k) * qpochhammer(T(p.d * q.value() / y), q, k);
    T second = big_q_jacobi_1d(k, T(x / y), p.c, p.b, T(p.d / y), q);
    return first * bridge * second;
}

template <Field T>
BiPoly<T> nonmonic_poly(const BigQJacobiParams<T>& p, int n, int k) {
    static_assert(is_exact_v<T>, "polynomial recovery is exact");
    std::vector<T> xs, ys;
    for (int i = 0; i <= n; ++i) {
        xs.push_back(T(2 * i + 1) / T(7));
        ys.push_back(T(3 * i + 2) / T(5));
    }
    Mat<T> vals(n + 1, n + 1);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) vals(i, j) = nonmonic_value(p, n, k, xs[i], ys[j]);
    BiPoly<T> r = interpolate_2d(xs, ys, vals);
    if (r.degree() > n) throw std::runtime_error("non-monic interpolant exceeds total degree n");
    return r;
}

// ---- explicit recurrence matrices (1-based i, j) ----

template <Field T>
struct ExplicitBC {
    Mat<T> B1, B2, C1, C2;
};

template <Field T>
ExplicitBC<T> explicit_BC(const BigQJacobiParams<T>& p, int n) {
    if (n < 1) throw std::invalid_argument("explicit recurrence matrices need n >= 1");
    const auto& Q = p.q;
    const T &a = p.a, &b = p.b, &c = p.c, &d = p.d, &q = Q.value();
    const T one(1);
    auto P = [&](long e) { return Q.pow(e); };
    auto qn = [&](long z) { return qnum<T>(z, Q); };
    // (q;q)_num / (q;q)_den for num >= den
    auto qpr = [&](long num, long den) {
        T r(1);
        for (long t = den; t < num; ++t) r *= one - P(t + 1);
        return r;
    };
    const T abc = a * b * c;
    const T e1 = abc * P(2 * n + 1) - one, e3 = abc * P(2 * n + 3) - one;
    const T den = (abc * P(2 * n) - one) * e1 * e1 * (abc * P(2 * n + 2) - one);

    ExplicitBC<T> m{Mat<T>(n + 1, n + 1), Mat<T>(n + 1, n + 1), Mat<T>(n + 1, n), Mat<T>(n + 1, n)};
    for (int i = 1; i <= n + 1; ++i) {
        // B_{n,1}
        m.B1(i - 1, i - 1) =
            (d * P(-i + n + 2) *
                 (a * c * P(2 * i - 1) * (P(-i + n + 1) * (b * (a * c * P(i + n + 1) + P(-i + n + 2) - q - one) - q - one) + one) + one) +
             a * c * P(n + 2) * (-b * (q + one) * P(n - i) * (a * c * P(2 * i) + q) + a * b * (b + one) * c * P(2 * n + 2) + b + one)) /
            (e1 * e3);
        if (i >= 2)
            m.B1(i - 1, i - 2) = -((P(i - 1) - one) * (a * P(i - 1) - one) * P(-i + n + 2) *
                                   (abc * d * P(2 * n + 2) - abc * (q + one) * P(n + 1) + d)) /
                                 (e1 * e3);
        // B_{n,2}
        m.B2(i - 1, i - 1) = P(-i) * (q * qn(i) * (a * P(i) - one) * (d * P(n + 1) - one) / e3 +
                                      q * qn(i - 1) * (q - a * P(i)) * (d * P(n) - one) / e1 + q);
        if (i <= n)
            m.B2(i - 1, i) = -(a * c * P(i + 1) * (P(-i + n + 1) - one) * (b * P(-i + n + 1) - one) *
                               (abc * P(2 * (n + 1)) - d * (q + one) * P(n) + one)) /
                             (e1 * e3);
        // C_{n,1}
        if (i <= n)
            m.C1(i - 1, i - 1) = -(a * c * P(n + 2) * (d * P(n) - one) * (P(-i + n + 1) - one) * (b * P(-i + n + 1) - one)) / den *
                                 (a * c * P(i + n) - one) * (abc * P(n + 1) - d) * (abc * P(i + n) - one);
        if (i >= 2 && i - 1 <= n)
            m.C1(i - 1, i - 2) = -(a * c * (P(i - 1) - one) * (a * P(i - 1) - one) * (d * P(n) - one) * P(-i + 2 * n + 3) *
                                   (abc * P(n + 1) - d)) /
                                 den *
                                 (-b * (q + one) * P(-i + n - 1) * (a * c * P(2 * i) + q * q) + a * b * (b + one) * c * P(2 * n + 1) + b + one);
        if (i >= 3 && i - 2 <= n)
            m.C1(i - 1, i - 3) = -(abc * (a * P(i) - q) * (a * P(i) - q * q) * (d * P(n) - one) * P(-2 * i + 3 * n + 2) *
                                   qpr(i - 1, i - 3) * (abc * P(n + 1) - d)) /
                                 den;
        // C_{n,2}
        if (i <= n)
            m.C2(i - 1, i - 1) = -(a * c * (q - one) * (d * P(n) - one) * P(n - i) * qn(-i + n + 1) * (b * P(n + 1) - P(i)) *
                                   (abc * P(n + 1) - d)) /
                                 den *
                                 ((a + one) * P(i + 1) * (abc * P(2 * n + 1) + one) - abc * (q + one) * P(2 * n + 2) -
                                  a * (q + one) * P(2 * i));
        if (i >= 2 && i - 1 <= n)
            m.C2(i - 1, i - 2) = -(a * (P(i - 1) - one) * P(n + 1) * (a * P(i - 1) - one) * (d * P(n) - one) *
                                   (b * c * P(-i + 2 * n + 2) - one)) /
                                 den * (abc * P(n + 1) - d) * (abc * P(-i + 2 * n + 2) - one);
        if (i + 1 <= n)
            m.C2(i - 1, i) = -(a * a * c * c * P(n + 2) * (d * P(n) - one) * (P(i) - b * P(n)) * (P(i) - b * P(n + 1)) *
                               qpr(n - i + 1, n - i - 1) * (abc * P(n + 1) - d)) /
                             den;
    }
    return m;
}

// ---- hypergeometric monic form ----

template <Field T>
T monic_hypergeometric_prefactor(const BigQJacobiParams<T>& p, int n, int m) {
    const auto& q = p.q;
    const T &a = p.a, &b = p.b, &c = p.c, &d = p.d, &qv = q.value();
    const T abc = a * b * c;
    T num = integer_power(T(d / b), n) * qpochhammer(T(a * qv), q, m) * qpochhammer(T(b * qv), q, n) *
            qpochhammer(T(d * q.pow(n + 1)), q, m) * qpochhammer(T(abc * q.pow(m + 2) / d), q, n);
    T den = qpochhammer(T(abc * q.pow(m + n + 2)), q, n + m);
    if (den == 0) throw std::domain_error("vanishing denominator Pochhammer in the hypergeometric prefactor");
    return num / den;
}

template <Field T>
BiPoly<T> monic_hypergeometric(const BigQJacobiParams<T>& p, int n, int m) {
    if (n < 0 || m < 0) throw std::invalid_argument("degrees must be non-negative");
    const auto& q = p.q;
    const T &a = p.a, &b = p.b, &c = p.c, &d = p.d, &qv = q.value();
    const T abc = a * b * c;
    using P = BiPoly<T>;
    const P bxd = (b / d) * P::x();
    BiPoly<T> sum;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= m; ++j) {
            T den = qpochhammer(T(a * qv), q, j) * qpochhammer(T(b * qv), q, i) * qpochhammer(T(d * q.pow(n + 1)), q, j) *
                    qpochhammer(T(abc * q.pow(m + 2) / d), q, i);
            if (den == 0) throw std::domain_error("vanishing denominator Pochhammer in the hypergeometric sum");
            T coef = ((i + j) % 2 ? T(-1) : T(1)) * qbinomial(n, i, q) * qbinomial(m, j, q) *
                     q.pow((i * (i - 2 * n + 1) + j * (j - 2 * m + 1)) / 2) *
                     qpochhammer(T(abc * q.pow(m + n + 2)), q, i + j) / den;
            sum += coef * (qpochhammer<P, T>(bxd, q, i) * qpochhammer<P, T>(P::y(), q, j));
        }
    return monic_hypergeometric_prefactor(p, n, m) * sum;
}

// Parameter groups of the bivariate Phi form at the point (x, y); arguments are (q, q).
template <Field T>
PhiSeries<T> monic_phi_series(const BigQJacobiParams<T>& p, int n, int m, const T& x, const T& y) {
    const auto& q = p.q;
    const T &a = p.a, &b = p.b, &c = p.c, &d = p.d, &qv = q.value();
    const T abc = a * b * c;
    PhiSeries<T> s;
    s.joint_num = {abc * q.pow(n + m + 2)};
    s.a = {q.pow(-n), b * x / d};
    s.b = {b * qv, abc * q.pow(m + 2) / d};
    s.c = {q.pow(-m), y};
    s.d = {a * qv, d * q.pow(n + 1)};
    return s;
}

template <Field T>
Report check_monic_hypergeometric(const BigQJacobiParams<T>& p, int n, int m, const BiPoly<T>& u) {
    static_assert(is_exact_v<T>, "hypergeometric checks are exact");
    Report r;
    std::string tag = " (" + std::to_string(n) + "," + std::to_string(m) + ")";
    r.add("coefficient of x^n y^m is 1" + tag, u.coeff(n, m) == 1);
    const std::vector<std::pair<T, T>> pts = {{T(1) / T(7), T(2) / T(9)}, {T(-1) / T(11), T(3) / T(13)}, {T(2) / T(17), T(-1) / T(19)}};
    bool ok = true;
    for (const auto& [x, y] : pts) {
        T v = monic_hypergeometric_prefactor(p, n, m) * phi_bivariate(monic_phi_series(p, n, m, x, y), p.q, p.q.value(), p.q.value());
        ok = ok && v == u.eval(x, y);
    }
    r.add("double sum equals the Phi form at sample points" + tag, ok);
    return r;
}

// ---- classical limits ----

struct ClassicalParams {
    Rational alpha, beta, gamma, delta;
};

// a = q^alpha, b = q^beta, c = q^gamma, d = -q^delta at q = 1 - eps (integer exponents).
inline BigQJacobiParams<Rational> limit_params(const ClassicalParams& cp, const Rational& eps) {
    auto ex = [](const Rational& v) {
        if (denominator(v) != 1) throw std::invalid_argument("limit study needs integer exponents");
        return numerator(v).convert_to<long>();
    };
    QParam<Rational> q(Rational(1) - eps);
    return {q.pow(ex(cp.alpha)), q.pow(ex(cp.beta)), q.pow(ex(cp.gamma)), Rational(-q.pow(ex(cp.delta))), q};
}

// Monic Appell-type solution via the Kampe de Feriet series in ((x+1)/2, (1-y)/2).
inline BiPoly<Rational> appell_monic(const ClassicalParams& cp, int n, int m) {
    using P = BiPoly<Rational>;
    const Rational one(1), half(Rational(1) / 2);
    Rational A = cp.alpha + cp.beta + cp.gamma + Rational(m + n + 2);
    KdFSeries<Rational> s;
    s.joint_num = {A};
    s.a = {Rational(-n)};
    s.b = {cp.beta + one};
    s.c = {Rational(-m)};
    s.d = {cp.alpha + one};
    P X = (P::x() + P(one)) * half, Y = (P(one) - P::y()) * half;
    Rational pre = Rational(n % 2 ? -1 : 1) * integer_power(Rational(2), n + m) * pochhammer(Rational(cp.alpha + one), m) *
                   pochhammer(Rational(cp.beta + one), n) / pochhammer(A, n + m);
    return pre * kampe_de_feriet<Rational, P>(s, X, Y);
}

// J_{n,m} = (y+1)^m 2F1(-m, b+g+m+1; g+1; (y-x)/(y+1)) 2F1(m-n, a+b+g+m+n+2; a+1; (1-y)/2), 0 <= m <= n.
inline BiPoly<Rational> jnm(const ClassicalParams& cp, int n, int m) {
    if (m < 0 || m > n) throw std::invalid_argument("J_{n,m} needs 0 <= m <= n");
    using P = BiPoly<Rational>;
    const Rational one(1);
    const P X = P::x(), Y = P::y();
    P first;
    for (int k = 0; k <= m; ++k) {
        Rational ck = pochhammer(Rational(-m), k) * pochhammer(Rational(cp.beta + cp.gamma + Rational(m + 1)), k) /
                      (pochhammer(Rational(cp.gamma + one), k) * factorial<Rational>(k));
        first += ck * ((Y - X).pow(k) * (Y + P(one)).pow(m - k));
    }
    P second = gauss_2f1_terminating<Rational, P>(Rational(m - n), Rational(cp.alpha + cp.beta + cp.gamma + Rational(m + n + 2)),
                                                  Rational(cp.alpha + one), (P(one) - Y) * Rational(Rational(1) / 2));
    return first * second;
}

// Product of two Jacobi polynomials, the same J_{n,m} at a point.
inline Rational jnm_jacobi_form(const ClassicalParams& cp, int n, int m, const Rational& x, const Rational& y) {
    const Rational one(1);
    Rational t = (one + Rational(2) * x - y) / (y + one);
    Rational f1 = integer_power(Rational(y + one), m) * jacobi_poly<Rational, Rational>(m, cp.gamma, cp.beta, t) *
                  factorial<Rational>(m) / pochhammer(Rational(cp.gamma + one), m);
    Rational f2 = jacobi_poly<Rational, Rational>(n - m, cp.alpha, Rational(cp.beta + cp.gamma + Rational(2 * m + 1)), y) *
                  factorial<Rational>(n - m) / pochhammer(Rational(cp.alpha + one), n - m);
    return f1 * f2;
}

template <Field T>
T classical_weight(const ClassicalParams& cp, const T& x, const T& y) {
    if constexpr (is_exact_v<T>) {
        auto ex = [](const Rational& v) {
            if (denominator(v) != 1) throw std::invalid_argument("exact classical weight needs integer exponents");
            return numerator(v).convert_to<long>();
        };
        return integer_power(T(T(1) - y), ex(cp.alpha)) * integer_power(T(x + T(1)), ex(cp.beta)) * integer_power(T(y - x), ex(cp.gamma));
    } else {
        auto f = [](const Rational& v) { return from_rational<BigFloat>(v); };
        return boost::multiprecision::pow(T(T(1) - y), f(cp.alpha)) * boost::multiprecision::pow(T(x + T(1)), f(cp.beta)) *
               boost::multiprecision::pow(T(y - x), f(cp.gamma));
    }
}

// (1/rho) d^n/dx^n d^m/dy^m [(x+1)^{beta+n} (1-y)^{alpha+m} (y-x)^{gamma+n+m}] by exact division.
inline DivResult<Rational> classical_rodrigues(const ClassicalParams& cp, int n, int m) {
    using P = BiPoly<Rational>;
    auto ex = [](const Rational& v) {
        if (denominator(v) != 1 || v < 0) throw std::invalid_argument("classical Rodrigues needs non-negative integer exponents");
        return numerator(v).convert_to<int>();
    };
    const int al = ex(cp.alpha), be = ex(cp.beta), ga = ex(cp.gamma);
    const P one(Rational(1)), X = P::x(), Y = P::y();
    P F = (X + one).pow(be + n) * (one - Y).pow(al + m) * (Y - X).pow(ga + n + m);
    for (int i = 0; i < n; ++i) F = F.diff_x();
    for (int j = 0; j < m; ++j) F = F.diff_y();
    P rho = (one - Y).pow(al) * (X + one).pow(be) * (Y - X).pow(ga);
    return divide(F, rho);
}

// Residual of the limit partial differential equation with eigenvalue -N(alpha+beta+gamma+N+2).
inline BiPoly<Rational> classical_pde_residual(const ClassicalParams& cp, const BiPoly<Rational>& u, int N) {
    using P = BiPoly<Rational>;
    const P one(Rational(1)), X = P::x(), Y = P::y();
    const Rational s = cp.alpha + cp.beta + cp.gamma;
    P ux = u.diff_x(), uy = u.diff_y();
    return (X * X - one) * ux.diff_x() + (Y * Y - one) * uy.diff_y() + Rational(2) * ((X + one) * (Y - one) * ux.diff_y()) +
           (Rational(s + Rational(3)) * X + P(Rational(cp.alpha - cp.beta + cp.gamma + Rational(1)))) * ux +
           (Rational(s + Rational(3)) * Y + P(Rational(cp.alpha - cp.beta - cp.gamma - Rational(1)))) * uy -
           Rational(Rational(N) * (s + Rational(N + 2))) * u;
}

struct LimitRow {
    Rational eps;
    int point = 0;
    Rational error;
    std::optional<Rational> ratio;  // error at this eps over error at the previous eps
};

// |P_hat_{n,m}(x, y; q = 1 - eps) - A_hat_{n,m}(x, y)| for each eps and point.
inline std::vector<LimitRow> limit_table(const ClassicalParams& cp, const std::vector<Rational>& eps, int n, int m,
                                         const std::vector<std::pair<Rational, Rational>>& points) {
    BiPoly<Rational> target = appell_monic(cp, n, m);
    std::vector<LimitRow> rows;
    std::vector<Rational> prev(points.size());
    for (std::size_t e = 0; e < eps.size(); ++e) {
        BiPoly<Rational> u = monic_hypergeometric(limit_params(cp, eps[e]), n, m);
        for (std::size_t k = 0; k < points.size(); ++k) {
            const auto& [x, y] = points[k];
            Rational err = abs_value(Rational(u.eval(x, y) - target.eval(x, y)));
            LimitRow row{eps[e], int(k), err, std::nullopt};
            if (e > 0 && prev[k] != 0) row.ratio = err / prev[k];
            prev[k] = err;
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace qpde
