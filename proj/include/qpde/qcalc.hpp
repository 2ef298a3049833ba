#pragma once

#include "qpde/bipoly.hpp"
#include "qpde/report.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace qpde {

template <Field T>
class QParam {
public:
    explicit QParam(T q) : q_(std::move(q)) {
        if (!(q_ > 0 && q_ < 1)) throw std::invalid_argument("q must satisfy 0 < q < 1");
    }
    const T& value() const { return q_; }
    T pow(long e) const { return integer_power(q_, e); }

private:
    T q_;
};

// [z]_q = (q^z - 1)/(q - 1)
template <Field T>
T qnum(long z, const QParam<T>& q) {
    return (q.pow(z) - T(1)) / (q.value() - T(1));
}

// (a; q)_k for any value type supporting a*scalar and 1 - a.
template <class V, Field T>
V qpochhammer(const V& a, const QParam<T>& q, int k) {
    if (k < 0) throw std::invalid_argument("negative q-Pochhammer length");
    V r(T(1));
    T qj(1);
    for (int j = 0; j < k; ++j) {
        r = r * (V(T(1)) - a * qj);
        qj *= q.value();
    }
    return r;
}

template <Field T>
T qpochhammer(const T& a, const QParam<T>& q, int k) {
    return qpochhammer<T, T>(a, q, k);
}

// (a; q)_inf. Stops once the remaining geometric tail |a| q^J / (1 - q) is below tolerance,
// or after exactly `terms` factors when given.
inline BigFloat qpochhammer_inf(const BigFloat& a, const QParam<BigFloat>& q,
                                std::optional<int> terms = std::nullopt) {
    BigFloat r(1);
    BigFloat t = a;
    if (terms) {
        for (int j = 0; j < *terms; ++j) {
            r *= BigFloat(1) - t;
            t *= q.value();
        }
        return r;
    }
    const BigFloat tol = series_tolerance() * (BigFloat(1) - q.value());
    for (long j = 0; abs_value(t) >= tol; ++j) {
        r *= BigFloat(1) - t;
        t *= q.value();
        if (j > 100000000) throw std::runtime_error("q-Pochhammer truncation did not converge");
    }
    return r;
}

template <Field T>
T qbinomial(int n, int k, const QParam<T>& q) {
    if (k < 0 || k > n) throw std::invalid_argument("q-binomial index out of range");
    const T& qv = q.value();
    return qpochhammer(qv, q, n) / (qpochhammer(qv, q, k) * qpochhammer(qv, q, n - k));
}

enum class Axis { x = 1, y = 2 };
enum class Direction { forward, backward };

// Partial q-difference operators on polynomials, evaluated through their stencils.
template <Field T>
BiPoly<T> dq(Axis axis, Direction dir, const BiPoly<T>& f, const QParam<T>& q) {
    const T& qv = q.value();
    const T one(1);
    if (dir == Direction::forward) {
        BiPoly<T> shifted = axis == Axis::x ? f.scaled(qv, one) : f.scaled(one, qv);
        BiPoly<T> diff = (shifted - f) / (qv - one);
        return axis == Axis::x ? diff.div_x() : diff.div_y();
    }
    T inv = one / qv;
    BiPoly<T> shifted = axis == Axis::x ? f.scaled(inv, one) : f.scaled(one, inv);
    BiPoly<T> diff = (f - shifted) * (qv / (qv - one));
    return axis == Axis::x ? diff.div_x() : diff.div_y();
}

template <Field T>
BiPoly<T> D1(const BiPoly<T>& f, const QParam<T>& q) { return dq(Axis::x, Direction::forward, f, q); }
template <Field T>
BiPoly<T> D2(const BiPoly<T>& f, const QParam<T>& q) { return dq(Axis::y, Direction::forward, f, q); }
template <Field T>
BiPoly<T> Dm1(const BiPoly<T>& f, const QParam<T>& q) { return dq(Axis::x, Direction::backward, f, q); }
template <Field T>
BiPoly<T> Dm2(const BiPoly<T>& f, const QParam<T>& q) { return dq(Axis::y, Direction::backward, f, q); }

class MissingNode : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

template <Field T>
using LatticeFn = std::function<std::optional<T>(const T&, const T&)>;

// Difference quotient of tabulated values at (x, y).
template <Field T>
T dq_grid(Axis axis, Direction dir, const LatticeFn<T>& f, const T& x, const T& y, const QParam<T>& q) {
    auto at = [&](const T& a, const T& b) {
        auto v = f(a, b);
        if (!v) throw MissingNode("lattice value missing at stencil node");
        return *v;
    };
    const T& qv = q.value();
    const T& h = axis == Axis::x ? x : y;
    if (dir == Direction::forward) {
        T shifted = axis == Axis::x ? at(qv * x, y) : at(x, qv * y);
        return (shifted - at(x, y)) / ((qv - T(1)) * h);
    }
    T shifted = axis == Axis::x ? at(x / qv, y) : at(x, y / qv);
    return qv * (at(x, y) - shifted) / ((qv - T(1)) * h);
}

// Commutation, conversion and product-rule identities for the four operators.
template <Field T>
Report verify_operator_relations(const QParam<T>& q, const BiPoly<T>& f, const BiPoly<T>& g) {
    static_assert(is_exact_v<T>, "operator identities are checked exactly");
    Report r;
    const T& qv = q.value();
    const T one(1);
    r.add("D1 Dm2 = Dm2 D1", D1(Dm2(f, q), q) == Dm2(D1(f, q), q));
    r.add("D2 Dm1 = Dm1 D2", D2(Dm1(f, q), q) == Dm1(D2(f, q), q));
    r.add("D1 D2 = D2 D1", D1(D2(f, q), q) == D2(D1(f, q), q));
    r.add("Dm1 Dm2 = Dm2 Dm1", Dm1(Dm2(f, q), q) == Dm2(Dm1(f, q), q));
    r.add("Dm1 = D1 + (1-q) x D1 Dm1",
          Dm1(f, q) == D1(f, q) + (one - qv) * BiPoly<T>::x() * D1(Dm1(f, q), q));
    r.add("Dm2 = D2 + (1-q) y D2 Dm2",
          Dm2(f, q) == D2(f, q) + (one - qv) * BiPoly<T>::y() * D2(Dm2(f, q), q));
    r.add("D1(fg) = f D1 g + g(qx,y) D1 f", D1(f * g, q) == f * D1(g, q) + g.scaled(qv, one) * D1(f, q));
    r.add("D2(fg) = f D2 g + g(x,qy) D2 f", D2(f * g, q) == f * D2(g, q) + g.scaled(one, qv) * D2(f, q));
    return r;
}

// ---- Jackson integration ----

template <Field T>
T jackson_integral_1d(const std::function<T(const T&)>& f, const T& upper, const QParam<T>& q, int terms) {
    T sum(0);
    T qj(1);
    for (int j = 0; j <= terms; ++j) {
        T v = f(upper * qj);
        if constexpr (!is_exact_v<T>)
            if (!boost::multiprecision::isfinite(v)) throw std::domain_error("non-finite integrand at a Jackson node");
        sum += qj * v;
        qj *= q.value();
    }
    return (T(1) - q.value()) * upper * sum;
}

template <Field T>
T jackson_integral(const std::function<T(const T&)>& f, const T& lower, const T& upper, const QParam<T>& q,
                   int terms) {
    return jackson_integral_1d(f, upper, q, terms) - jackson_integral_1d(f, lower, q, terms);
}

// Endpoint alpha + beta * y.
template <Field T>
struct AffineEnd {
    T alpha;
    T beta;
    T at(const T& y) const { return alpha + beta * y; }
};

template <Field T>
struct QDomain {
    T y_lower, y_upper;
    AffineEnd<T> x_lower, x_upper;
};

// One quadrature node of an iterated Jackson integral. Branch 0 is the upper endpoint
// (positive sign), branch 1 the lower one.
template <Field T>
struct JacksonNode {
    T x, y, mass;
    int y_branch, t, x_branch, i;
};

template <Field T>
std::vector<JacksonNode<T>> jackson_nodes(const QDomain<T>& dom, const QParam<T>& q, int terms) {
    std::vector<JacksonNode<T>> out;
    const T& qv = q.value();
    const T one(1);
    for (int yb = 0; yb < 2; ++yb) {
        T ya = yb == 0 ? dom.y_upper : dom.y_lower;
        if (ya == 0) continue;
        T qt(1);
        for (int t = 0; t <= terms; ++t) {
            T y = ya * qt;
            T wy = (one - qv) * ya * qt * (yb == 0 ? one : T(-1));
            for (int xb = 0; xb < 2; ++xb) {
                T xa = xb == 0 ? dom.x_upper.at(y) : dom.x_lower.at(y);
                if (xa == 0) continue;
                T qi(1);
                for (int i = 0; i <= terms; ++i) {
                    T wx = (one - qv) * xa * qi * (xb == 0 ? one : T(-1));
                    out.push_back({xa * qi, y, wx * wy, yb, t, xb, i});
                    qi *= qv;
                }
            }
            qt *= qv;
        }
    }
    return out;
}

template <Field T>
T jackson_double(const std::function<T(const T&, const T&)>& f, const QDomain<T>& dom, const QParam<T>& q,
                 int terms) {
    T sum(0);
    for (const auto& n : jackson_nodes(dom, q, terms)) {
        T v = f(n.x, n.y);
        if constexpr (!is_exact_v<T>)
            if (!boost::multiprecision::isfinite(v)) throw std::domain_error("non-finite integrand at a Jackson node");
        sum += n.mass * v;
    }
    return sum;
}

// ---- series ----

namespace detail {

// Smallest m with a q^m = 1, if any, up to a generous bound.
template <Field T>
std::optional<int> termination_index(const T& a, const QParam<T>& q, int limit = 4096) {
    T v = a;
    for (int m = 0; m <= limit; ++m) {
        if constexpr (is_exact_v<T>) {
            if (v == 1) return m;
        } else {
            if (abs_value(T(v - T(1))) < series_tolerance() * 1024) return m;
        }
        if (abs_value(v) < 1) break;
        v *= q.value();
    }
    return std::nullopt;
}

template <Field T>
std::optional<int> classical_termination(const T& a) {
    if constexpr (is_exact_v<T>) {
        if (a <= 0 && denominator(a) == 1) return static_cast<int>(-numerator(a).template convert_to<long>());
    } else {
        T r = boost::multiprecision::round(a);
        if (a <= 0 && abs_value(T(a - r)) < series_tolerance() * 1024) return static_cast<int>(-r.template convert_to<long>());
    }
    return std::nullopt;
}

template <Field T>
std::optional<int> min_termination(const std::vector<T>& params, const QParam<T>& q) {
    std::optional<int> best;
    for (const auto& a : params)
        if (auto m = termination_index(a, q); m && (!best || *m < *best)) best = m;
    return best;
}

}  // namespace detail

// r phi s (a; b; q, z), terminating.
template <Field T>
T phi_rs(const std::vector<T>& num, const std::vector<T>& den, const QParam<T>& q, const T& z) {
    auto m = detail::min_termination(num, q);
    if (!m) throw std::invalid_argument("basic hypergeometric series does not terminate");
    const int extra = 1 + int(den.size()) - int(num.size());
    T sum(0);
    T term(1);
    for (int k = 0; k <= *m; ++k) {
        sum += term;
        if (k == *m) break;
        T qk = q.pow(k);
        T ratio = z / (T(1) - qk * q.value());
        for (const auto& a : num) ratio *= T(1) - a * qk;
        for (const auto& b : den) {
            T f = T(1) - b * qk;
            if (f == 0) throw std::domain_error("denominator q-Pochhammer vanishes before termination");
            ratio /= f;
        }
        if (extra != 0) {
            T s = -qk;
            ratio *= integer_power(s, extra);
        }
        term *= ratio;
    }
    return sum;
}

template <Field T>
struct PhiSeries {
    std::vector<T> joint_num, joint_den;  // over the (m+n) index
    std::vector<T> a, b;                  // first index
    std::vector<T> c, d;                  // second index
    int i = 0, j = 0, k = 0;              // exponents of q^{i C(m,2) + j C(n,2) + k m n}
};

template <Field T>
T phi_bivariate(const PhiSeries<T>& s, const QParam<T>& q, const T& x, const T& y) {
    auto joint = detail::min_termination(s.joint_num, q);
    auto mm = detail::min_termination(s.a, q);
    auto nn = detail::min_termination(s.c, q);
    if (joint) {
        if (!mm || *joint < *mm) mm = joint;
        if (!nn || *joint < *nn) nn = joint;
    }
    if (!mm || !nn) throw std::invalid_argument("bivariate basic hypergeometric series does not terminate");
    auto prod = [&](const std::vector<T>& ps, int len) {
        T r(1);
        for (const auto& p : ps) r *= qpochhammer(p, q, len);
        return r;
    };
    T sum(0);
    for (int m = 0; m <= *mm; ++m)
        for (int n = 0; n <= *nn; ++n) {
            T numer = prod(s.joint_num, m + n) * prod(s.a, m) * prod(s.c, n);
            if (numer == 0) continue;
            T denom = prod(s.joint_den, m + n) * prod(s.b, m) * prod(s.d, n) * qpochhammer(q.value(), q, m) *
                      qpochhammer(q.value(), q, n);
            if (denom == 0) throw std::domain_error("denominator q-Pochhammer vanishes in bivariate series");
            long e = long(s.i) * m * (m - 1) / 2 + long(s.j) * n * (n - 1) / 2 + long(s.k) * m * n;
            sum += numer / denom * integer_power(x, m) * integer_power(y, n) * q.pow(e);
        }
    return sum;
}

// Rising factorial (a)_k.
template <Field T>
T pochhammer(const T& a, int k) {
    T r(1);
    for (int j = 0; j < k; ++j) r *= a + T(j);
    return r;
}

template <Field T>
T factorial(int n) {
    T r(1);
    for (int j = 2; j <= n; ++j) r *= T(j);
    return r;
}

template <Field T>
struct KdFSeries {
    std::vector<T> joint_num, joint_den;
    std::vector<T> a, b;
    std::vector<T> c, d;
};

// Classical double series; V may be a scalar or a polynomial.
template <Field T, class V>
V kampe_de_feriet(const KdFSeries<T>& s, const V& x, const V& y) {
    auto bound = [](const std::vector<T>& ps) {
        std::optional<int> best;
        for (const auto& p : ps)
            if (auto m = detail::classical_termination(p); m && (!best || *m < *best)) best = m;
        return best;
    };
    auto mm = bound(s.a), nn = bound(s.c), joint = bound(s.joint_num);
    if (joint) {
        if (!mm || *joint < *mm) mm = joint;
        if (!nn || *joint < *nn) nn = joint;
    }
    if (!mm || !nn) throw std::invalid_argument("Kampe de Feriet series does not terminate");
    auto prod = [](const std::vector<T>& ps, int len) {
        T r(1);
        for (const auto& p : ps) r *= pochhammer(p, len);
        return r;
    };
    V sum(T(0));
    V xm(T(1));
    for (int m = 0; m <= *mm; ++m) {
        V yn(T(1));
        for (int n = 0; n <= *nn; ++n) {
            T numer = prod(s.joint_num, m + n) * prod(s.a, m) * prod(s.c, n);
            if (numer != 0) {
                T denom = prod(s.joint_den, m + n) * prod(s.b, m) * prod(s.d, n) * factorial<T>(m) * factorial<T>(n);
                if (denom == 0) throw std::domain_error("denominator Pochhammer vanishes in Kampe de Feriet series");
                sum = sum + xm * yn * T(numer / denom);
            }
            yn = yn * y;
        }
        xm = xm * x;
    }
    return sum;
}

template <Field T, class V>
V gauss_2f1_terminating(const T& a, const T& b, const T& c, const V& z) {
    auto m = detail::classical_termination(a);
    if (auto mb = detail::classical_termination(b); mb && (!m || *mb < *m)) m = mb;
    if (!m) throw std::invalid_argument("2F1 does not terminate");
    V sum(T(0));
    V zk(T(1));
    for (int k = 0; k <= *m; ++k) {
        T den = pochhammer(c, k) * factorial<T>(k);
        if (den == 0) throw std::domain_error("2F1 denominator vanishes");
        sum = sum + zk * T(pochhammer(a, k) * pochhammer(b, k) / den);
        zk = zk * z;
    }
    return sum;
}

// P_n^{(a,b)}(x) = (a+1)_n / n! 2F1(-n, n+a+b+1; a+1; (1-x)/2)
template <Field T, class V>
V jacobi_poly(int n, const T& a, const T& b, const V& x) {
    V z = (V(T(1)) - x) * T(T(1) / T(2));
    return gauss_2f1_terminating<T, V>(T(-n), T(T(n) + a + b + T(1)), T(a + T(1)), z) *
           T(pochhammer(T(a + T(1)), n) / factorial<T>(n));
}

}  // namespace qpde
