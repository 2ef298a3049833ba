#pragma once

#include "qpde/matrix.hpp"
#include "qpde/pearson.hpp"

namespace qpde {

template <Field T>
struct RodriguesSpec {
    int n = 0, m = 0;
    T Lambda = T(1);
    bool normalize_monic = false;
};

template <Field T>
struct RodriguesResult {
    BiPoly<T> poly;
    T base_x, base_y;
    bool polynomial_degree_ok = false;  // no interpolated coefficient above total degree n+m
    bool residual_zero = false;
};

class RodriguesFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

// Applies D2^m then D1^n to a table g[a][b] = f(q^a X, q^b Y); returns the value at (X, Y).
template <Field T>
T forward_differences(std::vector<std::vector<T>> g, const QParam<T>& q, const T& X, const T& Y, int n, int m) {
    const T& qv = q.value();
    for (int step = 0; step < m; ++step)
        for (std::size_t a = 0; a < g.size(); ++a)
            for (std::size_t b = 0; b + 1 < g[a].size() - step; ++b)
                g[a][b] = (g[a][b + 1] - g[a][b]) / ((qv - T(1)) * q.pow(long(b)) * Y);
    for (int step = 0; step < n; ++step)
        for (std::size_t a = 0; a + 1 < g.size() - step; ++a) g[a][0] = (g[a + 1][0] - g[a][0]) / ((qv - T(1)) * q.pow(long(a)) * X);
    return g[0][0];
}

// Backward analogue on a table g[a][b] = f(q^-a X, q^-b Y).
template <Field T>
T backward_differences(std::vector<std::vector<T>> g, const QParam<T>& q, const T& X, const T& Y, int n, int m) {
    const T& qv = q.value();
    for (int step = 0; step < m; ++step)
        for (std::size_t a = 0; a < g.size(); ++a)
            for (std::size_t b = 0; b + 1 < g[a].size() - step; ++b)
                g[a][b] = qv * (g[a][b] - g[a][b + 1]) / ((qv - T(1)) * q.pow(-long(b)) * Y);
    for (int step = 0; step < n; ++step)
        for (std::size_t a = 0; a + 1 < g.size() - step; ++a)
            g[a][0] = qv * (g[a][0] - g[a + 1][0]) / ((qv - T(1)) * q.pow(-long(a)) * X);
    return g[0][0];
}

}  // namespace detail

// (1/rho) D1^n D2^m [rho Pi_{n,m}] at (X, Y), without the q-power prefactor.
template <Field T>
T rodrigues_forward_value(const PearsonData<T>& p, const BiPoly<T>& pi, const QParam<T>& q, const T& X, const T& Y,
                          int n, int m) {
    std::vector<std::vector<T>> g(n + 1, std::vector<T>(m + 1));
    for (int a = 0; a <= n; ++a)
        for (int b = 0; b <= m; ++b) g[a][b] = rho_ratio(p, q, X, Y, a, b) * pi.eval(q.pow(a) * X, q.pow(b) * Y);
    return detail::forward_differences(std::move(g), q, X, Y, n, m);
}

// (1/rho) Dm1^n Dm2^m [rho^{(n,m)}] at (X, Y), with rho^{(n,m)}(x,y) = rho(q^n x, q^m y) Pi(q^n x, q^m y).
template <Field T>
T rodrigues_backward_value(const PearsonData<T>& p, const BiPoly<T>& pi, const QParam<T>& q, const T& X, const T& Y,
                           int n, int m) {
    std::vector<std::vector<T>> g(n + 1, std::vector<T>(m + 1));
    for (int a = 0; a <= n; ++a)
        for (int b = 0; b <= m; ++b)
            g[a][b] = rho_ratio(p, q, X, Y, n - a, m - b) * pi.eval(q.pow(n - a) * X, q.pow(m - b) * Y);
    return detail::backward_differences(std::move(g), q, X, Y, n, m);
}

template <Field T>
const std::vector<std::pair<T, T>>& rodrigues_base_points() {
    static const std::vector<std::pair<T, T>> pts = {
        {T(2) / T(7), T(3) / T(11)},   {T(5) / T(13), T(7) / T(17)}, {T(3) / T(19), T(11) / T(23)},
        {T(7) / T(29), T(13) / T(31)}, {T(-2) / T(37), T(5) / T(41)}, {T(11) / T(43), T(-3) / T(47)},
        {T(13) / T(53), T(17) / T(59)}, {T(-5) / T(61), T(-7) / T(67)}};
    return pts;
}

// q^{n(1-n)/2 + m(1-m)/2}
template <Field T>
T rodrigues_prefactor(const QParam<T>& q, int n, int m) {
    return q.pow(n * (1 - n) / 2 + m * (1 - m) / 2);
}

template <Field T>
RodriguesResult<T> rodrigues_poly(const EquationCoeffs<T>& e, const RodriguesSpec<T>& spec) {
    static_assert(is_exact_v<T>, "Rodrigues polynomials are built exactly");
    const auto& q = e.q;
    const int n = spec.n, m = spec.m, N = n + m;
    if (n < 0 || m < 0) throw std::invalid_argument("Rodrigues degrees must be non-negative");
    const auto p = build_pearson(e);
    const BiPoly<T> pi = omega_product(p, q, n, m);
    std::string last_error;
    for (const auto& [xb, yb] : rodrigues_base_points<T>()) {
        try {
            std::vector<T> xs, ys;
            for (int i = 0; i <= N; ++i) {
                xs.push_back(q.pow(-i) * xb);
                ys.push_back(q.pow(-i) * yb);
            }
            Mat<T> vals(N + 1, N + 1);
            for (int i = 0; i <= N; ++i)
                for (int j = 0; j <= N; ++j) vals(i, j) = rodrigues_forward_value(p, pi, q, xs[i], ys[j], n, m);
            BiPoly<T> poly = interpolate_2d(xs, ys, vals);
            RodriguesResult<T> r{BiPoly<T>(), xb, yb};
            r.polynomial_degree_ok = poly.degree() <= N;
            if (!r.polynomial_degree_ok) throw RodriguesFailure("Rodrigues interpolant exceeds total degree n+m");
            poly *= spec.Lambda * rodrigues_prefactor(q, n, m);
            if (spec.normalize_monic && !poly.is_zero()) {
                // lexicographically largest monomial of top total degree
                poly /= poly.homogeneous_part(poly.degree()).lex_leading()->second;
            }
            r.poly = poly;
            r.residual_zero = (apply_operator(e, poly) + eigenvalue(e, N) * poly).is_zero();
            return r;
        } catch (const PoleOnPath& ex) {
            last_error = ex.what();
        } catch (const std::domain_error& ex) {
            last_error = ex.what();
        }
    }
    throw RodriguesFailure("no pole-free base point for the Rodrigues stencil: " + last_error);
}

// Ratio of the backward-derivative form to the forward-derivative form at lattice points;
// returns the common constant, or nothing if the ratio varies.
template <Field T>
std::optional<T> rodrigues_line_ratio(const EquationCoeffs<T>& e, int n, int m, int samples = 3) {
    const auto& q = e.q;
    const auto p = build_pearson(e);
    const BiPoly<T> pi = omega_product(p, q, n, m);
    std::optional<T> ratio;
    auto [xb, yb] = rodrigues_base_points<T>()[0];
    for (int s = 0; s < samples; ++s)
        for (int t = 0; t < samples; ++t) {
            T X = q.pow(-s) * xb, Y = q.pow(-t) * yb;
            T fwd = rodrigues_forward_value(p, pi, q, X, Y, n, m) * rodrigues_prefactor(q, n, m);
            T bwd = rodrigues_backward_value(p, pi, q, X, Y, n, m);
            if (fwd == 0) {
                if (bwd != 0) return std::nullopt;
                continue;
            }
            T r = bwd / fwd;
            if (!ratio)
                ratio = r;
            else if (*ratio != r)
                return std::nullopt;
        }
    return ratio;
}

// Weighted integrals of u * x^i y^j for i + j < deg(u).
template <Field T>
std::vector<std::pair<std::pair<int, int>, T>> orthogonality_against_lower(const BiPoly<T>& u,
                                                                           const std::vector<WeightedNode<T>>& nodes) {
    std::vector<std::pair<std::pair<int, int>, T>> out;
    int d = u.degree();
    for (int s = 0; s < d; ++s)
        for (int j = 0; j <= s; ++j)
            out.push_back({{s - j, j}, weighted_inner(nodes, u, BiPoly<T>::monomial(s - j, j))});
    return out;
}

}  // namespace qpde
