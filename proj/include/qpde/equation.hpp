#pragma once

#include "qpde/qcalc.hpp"
#include "qpde/report.hpp"

#include <functional>
#include <sstream>

namespace qpde {

// Canonical equation
//   C11 D1 Dm1 u + C22 D2 Dm2 u + A12a D1 D2 u + A12d Dm1 Dm2 u + B1 D1 u + B2 D2 u + lambda u = 0,
// with C11 = q(a1 x^2 + b1 x + c1) and C22 = q(a2 y^2 + b2 y + c2).
template <Field T>
struct EquationCoeffs {
    QParam<T> q;
    BiPoly<T> C11, C22, A12a, A12d, B1, B2;

    const T& qv() const { return q.value(); }

    T a1() const { return C11.coeff(2, 0) / qv(); }
    T b1() const { return C11.coeff(1, 0) / qv(); }
    T c1() const { return C11.coeff(0, 0) / qv(); }
    T a2() const { return C22.coeff(0, 2) / qv(); }
    T b2() const { return C22.coeff(0, 1) / qv(); }
    T c2() const { return C22.coeff(0, 0) / qv(); }
    T a3a() const { return A12a.coeff(1, 1); }
    T b3a() const { return A12a.coeff(1, 0); }
    T c3a() const { return A12a.coeff(0, 1); }
    T d3a() const { return A12a.coeff(0, 0); }
    T a3d() const { return A12d.coeff(1, 1); }
    T b3d() const { return A12d.coeff(1, 0); }
    T c3d() const { return A12d.coeff(0, 1); }
    T d3d() const { return A12d.coeff(0, 0); }
    T f1() const { return B1.coeff(1, 0); }
    T g1() const { return B1.coeff(0, 0); }
    T f2() const { return B2.coeff(0, 1); }
    T g2() const { return B2.coeff(0, 0); }

    std::vector<const BiPoly<T>*> polys() const { return {&C11, &C22, &A12a, &A12d, &B1, &B2}; }
    friend bool operator==(const EquationCoeffs& a, const EquationCoeffs& b) {
        return a.qv() == b.qv() && a.C11 == b.C11 && a.C22 == b.C22 && a.A12a == b.A12a && a.A12d == b.A12d &&
               a.B1 == b.B1 && a.B2 == b.B2;
    }
};

inline const char* const kCoeffNames[6] = {"C11", "C22", "A12a", "A12d", "B1", "B2"};

// Coefficients of the equation satisfied by D1^k D2^l u, with its spectral parameter mu.
template <Field T>
struct DerivedCoeffs {
    int k = 0, l = 0;
    EquationCoeffs<T> coeffs;
    T mu;
};

namespace detail {

template <Field T>
bool keys_within(const BiPoly<T>& p, const std::vector<std::pair<int, int>>& allowed) {
    for (const auto& [key, c] : p.terms()) {
        bool ok = false;
        for (const auto& a : allowed) ok = ok || key == a;
        if (!ok) return false;
    }
    return true;
}

}  // namespace detail

template <Field T>
Report check_hypergeometric_form(const EquationCoeffs<T>& e) {
    Report r;
    r.add("C11 univariate in x of degree <= 2", detail::keys_within(e.C11, {{0, 0}, {1, 0}, {2, 0}}));
    r.add("C22 univariate in y of degree <= 2", detail::keys_within(e.C22, {{0, 0}, {0, 1}, {0, 2}}));
    r.add("A12a bilinear", detail::keys_within(e.A12a, {{0, 0}, {1, 0}, {0, 1}, {1, 1}}));
    r.add("A12d bilinear", detail::keys_within(e.A12d, {{0, 0}, {1, 0}, {0, 1}, {1, 1}}));
    r.add("B1 univariate in x of degree <= 1", detail::keys_within(e.B1, {{0, 0}, {1, 0}}));
    r.add("B2 univariate in y of degree <= 1", detail::keys_within(e.B2, {{0, 0}, {0, 1}}));
    return r;
}

template <Field T>
BiPoly<T> apply_operator(const EquationCoeffs<T>& e, const BiPoly<T>& f) {
    const auto& q = e.q;
    return e.C11 * D1(Dm1(f, q), q) + e.C22 * D2(Dm2(f, q), q) + e.A12a * D1(D2(f, q), q) +
           e.A12d * Dm1(Dm2(f, q), q) + e.B1 * D1(f, q) + e.B2 * D2(f, q);
}

template <Field T>
BiPoly<T> apply_operator(const DerivedCoeffs<T>& d, const BiPoly<T>& f) {
    return apply_operator(d.coeffs, f);
}

// Formal adjoint with respect to the Jackson pairing.
template <Field T>
BiPoly<T> apply_adjoint(const EquationCoeffs<T>& e, const BiPoly<T>& f) {
    const auto& q = e.q;
    const T& qv = e.qv();
    return D1(Dm1(e.C11 * f, q), q) + D2(Dm2(e.C22 * f, q), q) + (qv * qv) * D1(D2(e.A12d * f, q), q) +
           (T(1) / (qv * qv)) * Dm1(Dm2(e.A12a * f, q), q) - (T(1) / qv) * Dm1(e.B1 * f, q) -
           (T(1) / qv) * Dm2(e.B2 * f, q);
}

template <Field T>
T eigenvalue(const EquationCoeffs<T>& e, int n) {
    return -qnum<T>(n, e.q) * (e.f1() - e.a1() * e.qv() * qnum<T>(1 - n, e.q));
}

template <Field T>
struct Admissibility {
    bool admissible = false;
    Report report;
    std::function<T(int)> eigenvalue;
};

// f1 - a1 q [1-m] != 0 for every m >= 0, decided exactly.
template <Field T>
bool nonvanishing_for_all_m(const EquationCoeffs<T>& e) {
    const T& qv = e.qv();
    if (e.a1() == 0) return e.f1() != 0;
    // f1/a1 = q [1-m]  <=>  q^(1-m) = 1 + (f1/a1)(q-1)/q
    T r = T(1) + e.f1() / e.a1() * (qv - T(1)) / qv;
    if (r <= 0) return true;
    T p = qv;  // q^(1-m) at m = 0
    while (p <= r) {
        if (p == r) return false;
        p /= qv;
    }
    return true;
}

template <Field T>
Admissibility<T> admissibility(const EquationCoeffs<T>& e, int bound = 64) {
    Admissibility<T> out;
    auto& r = out.report;
    r.append(check_hypergeometric_form(e), "form: ");
    r.add("condition 1: f2 = f1", e.f2() == e.f1());
    r.add("condition 2: a2 = a1", e.a2() == e.a1());
    r.add("condition 3: a3a = a1 q + f1 (q-1)", e.a3a() == e.a1() * e.qv() + e.f1() * (e.qv() - T(1)));
    r.add("condition 4: a3d = a1", e.a3d() == e.a1());
    bool nz = true;
    int first_zero = -1;
    for (int m = 0; m <= bound && nz; ++m)
        if (e.f1() - e.a1() * e.qv() * qnum<T>(1 - m, e.q) == 0) {
            nz = false;
            first_zero = m;
        }
    r.add("f1 - a1 q [1-m] != 0 for m <= " + std::to_string(bound), nz,
          nz ? "" : "vanishes at m = " + std::to_string(first_zero));
    if constexpr (is_exact_v<T>) r.add("f1 - a1 q [1-m] != 0 for all m (exact)", nonvanishing_for_all_m(e));
    bool distinct = true;
    std::vector<T> lams;
    for (int n = 0; n <= bound; ++n) lams.push_back(eigenvalue(e, n));
    for (int m = 0; m <= bound && distinct; ++m)
        for (int n = m + 1; n <= bound; ++n)
            if (lams[m] == lams[n]) {
                distinct = false;
                break;
            }
    r.add("eigenvalues distinct for n <= " + std::to_string(bound), distinct);
    out.admissible = r.all_passed();
    out.eigenvalue = [e](int n) { return eigenvalue(e, n); };
    return out;
}

// One generalized-difference step along x (D1 applied to the equation).
template <Field T>
DerivedCoeffs<T> step_x(const DerivedCoeffs<T>& d) {
    const auto& c = d.coeffs;
    const auto& q = c.q;
    const T& qv = c.qv();
    const T one(1);
    EquationCoeffs<T> n{q,
                        c.C11 / qv,
                        c.C22 + (one - qv) * BiPoly<T>::y() * D1(c.A12d, q),
                        c.A12a.scaled(qv, one),
                        c.A12d / qv,
                        c.B1.scaled(qv, one) + D1(c.C11, q) / qv,
                        c.B2 + D1(c.A12a, q) + D1(c.A12d, q)};
    return {d.k + 1, d.l, std::move(n), d.mu + D1(c.B1, q).coeff(0, 0)};
}

template <Field T>
DerivedCoeffs<T> step_y(const DerivedCoeffs<T>& d) {
    const auto& c = d.coeffs;
    const auto& q = c.q;
    const T& qv = c.qv();
    const T one(1);
    EquationCoeffs<T> n{q,
                        c.C11 + (one - qv) * BiPoly<T>::x() * D2(c.A12d, q),
                        c.C22 / qv,
                        c.A12a.scaled(one, qv),
                        c.A12d / qv,
                        c.B1 + D2(c.A12a, q) + D2(c.A12d, q),
                        c.B2.scaled(one, qv) + D2(c.C22, q) / qv};
    return {d.k, d.l + 1, std::move(n), d.mu + D2(c.B2, q).coeff(0, 0)};
}

template <Field T>
DerivedCoeffs<T> derived_by_recurrence(const EquationCoeffs<T>& e, int k, int l, const T& lambda) {
    DerivedCoeffs<T> d{0, 0, e, lambda};
    for (int i = 0; i < k; ++i) d = step_x(d);
    for (int j = 0; j < l; ++j) d = step_y(d);
    return d;
}

template <Field T>
DerivedCoeffs<T> derived_by_closed_form(const EquationCoeffs<T>& e, int k, int l, const T& lambda) {
    const auto& q = e.q;
    const T one(1);
    const BiPoly<T> X = BiPoly<T>::x(), Y = BiPoly<T>::y();
    auto qp = [&](long p) { return q.pow(p); };
    auto qn = [&](long z) { return qnum<T>(z, q); };
    const T a1 = e.a1(), b1 = e.b1(), a2 = e.a2(), b2 = e.b2();
    const T a3a = e.a3a(), b3a = e.b3a(), c3a = e.c3a();
    const T a3d = e.a3d(), b3d = e.b3d(), c3d = e.c3d();
    const T f1 = e.f1(), f2 = e.f2();
    const T s = qp(k + l - 1);

    BiPoly<T> C11 = e.C11 / qp(k) + ((one - qp(l)) / s) * X * (BiPoly<T>(c3d) + a3d * X);
    BiPoly<T> C22 = e.C22 / qp(l) + ((one - qp(k)) / s) * Y * (BiPoly<T>(b3d) + a3d * Y);
    BiPoly<T> A = e.A12a.scaled(qp(k), qp(l));
    BiPoly<T> D = e.A12d / qp(k + l);
    BiPoly<T> B1 = e.B1.scaled(qp(k), one) +
                   ((one - q.value()) * qn(k) * qn(l) / s) * (BiPoly<T>(c3d) + (a3d - a3a * s) * X) +
                   (qn(k) / qp(k - 1)) * (BiPoly<T>(b1) + a1 * (qp(k) + one) * X) +
                   (qn(l) / qp(l - 1)) * (BiPoly<T>(c3d) + a3d * X + qp(l - 1) * (BiPoly<T>(c3a) + a3a * X));
    BiPoly<T> B2 = e.B2.scaled(one, qp(l)) +
                   ((one - q.value()) * qn(k) * qn(l) / s) * (BiPoly<T>(b3d) + (a3d - a3a * s) * Y) +
                   (qn(l) / qp(l - 1)) * (BiPoly<T>(b2) + a2 * (qp(l) + one) * Y) +
                   (qn(k) / qp(k - 1)) * (BiPoly<T>(b3d) + a3d * Y + qp(k - 1) * (BiPoly<T>(b3a) + a3a * Y));
    T mu = lambda + qn(k) * (f1 * qp(k - 2) + a1 * qn(k - 1)) / qp(k - 2) +
           qn(l) * (f2 * qp(l - 2) + a2 * qn(l - 1)) / qp(l - 2) +
           qn(k) * qn(l) * (a3d + a3a * qp(k + l - 2)) / qp(k + l - 2);
    return {k, l, EquationCoeffs<T>{q, C11, C22, A, D, B1, B2}, mu};
}

class DerivationMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Recurrence result, cross-checked against the closed forms.
template <Field T>
DerivedCoeffs<T> derived_coeffs(const EquationCoeffs<T>& e, int k, int l, const T& lambda) {
    static_assert(is_exact_v<T>, "derived coefficients are compared exactly");
    auto rec = derived_by_recurrence(e, k, l, lambda);
    auto closed = derived_by_closed_form(e, k, l, lambda);
    auto rp = rec.coeffs.polys(), cp = closed.coeffs.polys();
    for (int i = 0; i < 6; ++i)
        if (!(*rp[i] == *cp[i]))
            throw DerivationMismatch(std::string("closed form disagrees with recurrence for ") + kCoeffNames[i] +
                                     " at order (" + std::to_string(k) + "," + std::to_string(l) + ")");
    if (rec.mu != closed.mu) throw DerivationMismatch("closed form disagrees with recurrence for mu");
    return rec;
}

template <Field T>
struct WeightedNode {
    T x, y, mass;
};

// Values of f at every node, for reuse across many inner products.
template <Field T>
std::vector<T> node_values(const std::vector<WeightedNode<T>>& nodes, const BiPoly<T>& f) {
    std::vector<T> v;
    v.reserve(nodes.size());
    for (const auto& n : nodes) v.push_back(f.eval(n.x, n.y));
    return v;
}

template <Field T>
T weighted_dot(const std::vector<WeightedNode<T>>& nodes, const std::vector<T>& f, const std::vector<T>& g) {
    T s(0);
    for (std::size_t i = 0; i < nodes.size(); ++i) s += nodes[i].mass * f[i] * g[i];
    return s;
}

template <Field T>
T weighted_inner(const std::vector<WeightedNode<T>>& nodes, const BiPoly<T>& f, const BiPoly<T>& g) {
    return weighted_dot(nodes, node_values(nodes, f), node_values(nodes, g));
}

// (<D f, g>, <f, D g>) under the weighted quadrature.
template <Field T>
std::pair<T, T> bilinear_selfadjoint_check(const EquationCoeffs<T>& e, const std::vector<WeightedNode<T>>& nodes,
                                           const BiPoly<T>& f, const BiPoly<T>& g) {
    static_assert(!is_exact_v<T>, "weighted integrals need the float backend");
    for (const auto& n : nodes)
        if (!boost::multiprecision::isfinite(n.mass)) throw std::domain_error("non-finite weight at a node");
    return {weighted_inner(nodes, apply_operator(e, f), g), weighted_inner(nodes, f, apply_operator(e, g))};
}

template <Field U, Field T>
EquationCoeffs<U> convert(const EquationCoeffs<T>& e) {
    U qv;
    if constexpr (is_exact_v<T>)
        qv = from_rational<U>(e.qv());
    else
        qv = U(e.qv());
    return {QParam<U>(qv),           convert<U>(e.C11), convert<U>(e.C22), convert<U>(e.A12a),
            convert<U>(e.A12d), convert<U>(e.B1),  convert<U>(e.B2)};
}

}  // namespace qpde
