#pragma once

#include "qpde/equation.hpp"
#include "qpde/ratfn.hpp"

#include <optional>

namespace qpde {

template <Field T>
struct PearsonData {
    BiPoly<T> phi1, phi2, omega1, omega2;
    RationalFn<T> G1, G2;
    int k = 0, l = 0;
};

template <Field T>
PearsonData<T> build_pearson(const EquationCoeffs<T>& e, int k = 0, int l = 0) {
    const T& qv = e.qv();
    const T one(1);
    const BiPoly<T> X = BiPoly<T>::x(), Y = BiPoly<T>::y();
    BiPoly<T> w1 = Y * e.C11 - qv * (X * e.A12d);
    BiPoly<T> w2 = X * e.C22 - qv * (Y * e.A12d);
    if (w1.is_zero() || w2.is_zero()) throw std::domain_error("degenerate equation: omega vanishes identically");
    BiPoly<T> p1 = Y * e.C11 - X * e.A12a + (qv - one) * (X * Y * e.B1);
    BiPoly<T> p2 = X * e.C22 - Y * e.A12a + (qv - one) * (X * Y * e.B2);
    return {p1, p2, w1, w2, RationalFn<T>(p1, w1.scaled(qv, one)), RationalFn<T>(p2, w2.scaled(one, qv)), k, l};
}

template <Field T>
PearsonData<T> build_pearson(const DerivedCoeffs<T>& d) {
    return build_pearson(d.coeffs, d.k, d.l);
}

template <Field T>
RationalFn<T> dq_ratfn(Axis axis, const RationalFn<T>& f, const QParam<T>& q) {
    const T& qv = q.value();
    const T one(1);
    RationalFn<T> s = axis == Axis::x ? f.scaled(qv, one) : f.scaled(one, qv);
    BiPoly<T> h = (qv - one) * (axis == Axis::x ? BiPoly<T>::x() : BiPoly<T>::y());
    return {s.num() * f.den() - f.num() * s.den(), h * s.den() * f.den()};
}

// The three identities implied by the Pearson system, at every derived order up to the bounds,
// plus the coupling condition.
template <Field T>
Report verify_pearson_identities(const EquationCoeffs<T>& e, int k_max, int l_max) {
    static_assert(is_exact_v<T>, "Pearson identities are checked exactly");
    Report r;
    const auto& q = e.q;
    const T& qv = e.qv();
    const T one(1);
    const BiPoly<T> X = BiPoly<T>::x(), Y = BiPoly<T>::y();
    std::map<std::pair<int, int>, DerivedCoeffs<T>> derived;
    auto get = [&](int k, int l) -> const DerivedCoeffs<T>& {
        auto it = derived.find({k, l});
        if (it == derived.end()) it = derived.emplace(std::make_pair(k, l), derived_by_recurrence(e, k, l, T(0))).first;
        return it->second;
    };
    std::map<std::pair<int, int>, PearsonData<T>> pear;
    auto pd = [&](int k, int l) -> const PearsonData<T>& {
        auto it = pear.find({k, l});
        if (it == pear.end()) it = pear.emplace(std::make_pair(k, l), build_pearson(get(k, l))).first;
        return it->second;
    };
    for (int k = 0; k <= k_max; ++k)
        for (int l = 0; l <= l_max; ++l) {
            const auto& c = get(k, l).coeffs;
            const auto& p = pd(k, l);
            std::string tag = " (" + std::to_string(k) + "," + std::to_string(l) + ")";
            RationalFn<T> dshift(c.A12d.scaled(qv, qv) * (qv * qv));
            RationalFn<T> A(c.A12a);
            r.add("A12a = q^2 G1(x,y) G2(qx,y) A12d(qx,qy)" + tag,
                  ratfn_equal(A, p.G1 * p.G2.scaled(qv, one) * dshift));
            r.add("A12a = q^2 G1(x,qy) G2(x,y) A12d(qx,qy)" + tag,
                  ratfn_equal(A, p.G1.scaled(one, qv) * p.G2 * dshift));
            r.add("y G2 D2 G1 = x G1 D1 G2" + tag,
                  ratfn_equal(Y * (p.G2 * dq_ratfn(Axis::y, p.G1, q)), X * (p.G1 * dq_ratfn(Axis::x, p.G2, q))));
            BiPoly<T> lhs = pd(k, l + 1).omega1.scaled(qv, one) * p.omega2.scaled(qv, qv);
            BiPoly<T> rhs = pd(k + 1, l).omega2.scaled(one, qv) * p.omega1.scaled(qv, qv);
            r.add("coupling" + tag, lhs == rhs);
        }
    return r;
}

class PoleOnPath : public std::domain_error {
public:
    PoleOnPath(const std::string& what, int step) : std::domain_error(what + " at step " + std::to_string(step)), step_(step) {}
    int step() const { return step_; }

private:
    int step_;
};

// rho(q^i X, q^j Y) / rho(X, Y) along the x-first path; i, j may be negative.
template <Field T>
T rho_ratio(const PearsonData<T>& p, const QParam<T>& q, const T& X, const T& Y, int i, int j) {
    T r(1);
    // forward steps multiply by G, backward steps divide by it
    auto g = [&](const RationalFn<T>& G, const T& a, const T& b, const char* name, int step, bool divide) {
        T d = G.den().eval(a, b);
        T n = G.num().eval(a, b);
        if (d == 0 || (divide && n == 0)) throw PoleOnPath(std::string("pole of ") + name + " on lattice path", step);
        return n / d;
    };
    for (int s = 0; s < i; ++s) r *= g(p.G1, q.pow(s) * X, Y, "G1", s, false);
    for (int s = -1; s >= i; --s) r /= g(p.G1, q.pow(s) * X, Y, "G1", s, true);
    T xi = q.pow(i) * X;
    for (int t = 0; t < j; ++t) r *= g(p.G2, xi, q.pow(t) * Y, "G2", t, false);
    for (int t = -1; t >= j; --t) r /= g(p.G2, xi, q.pow(t) * Y, "G2", t, true);
    return r;
}

// Same ratio along the y-first path.
template <Field T>
T rho_ratio_y_first(const PearsonData<T>& p, const QParam<T>& q, const T& X, const T& Y, int i, int j) {
    RationalFn<T> g1 = p.G1, g2 = p.G2;
    PearsonData<T> swapped{p.phi2.swapped(), p.phi1.swapped(), p.omega2.swapped(), p.omega1.swapped(),
                           RationalFn<T>(g2.num().swapped(), g2.den().swapped()),
                           RationalFn<T>(g1.num().swapped(), g1.den().swapped()), p.l, p.k};
    return rho_ratio(swapped, q, Y, X, j, i);
}

template <Field T>
struct WeightEvaluator {
    T x0, y0;
    PearsonData<T> pearson;
    QParam<T> q;
};

template <Field T>
T weight_at_lattice(const WeightEvaluator<T>& w, int s, int t) {
    if (s < 0 || t < 0) throw std::invalid_argument("lattice indices must be non-negative");
    // from (dq, dq) the x-first path meets a pole of G2 when 1 <= s <= t; the y-first one does not
    try {
        return rho_ratio(w.pearson, w.q, w.x0, w.y0, s, t);
    } catch (const PoleOnPath&) {
        return rho_ratio_y_first(w.pearson, w.q, w.x0, w.y0, s, t);
    }
}

template <Field T>
WeightEvaluator<T> make_weight(const EquationCoeffs<T>& e, const T& x0, const T& y0) {
    return {x0, y0, build_pearson(e), e.q};
}

// The three lines of the Pearson system at lattice point (s, t) of the weight.
template <Field T>
Report check_pearson_system_at(const WeightEvaluator<T>& w, const EquationCoeffs<T>& e, int s, int t) {
    Report r;
    const T& qv = e.qv();
    T x = w.q.pow(s) * w.x0, y = w.q.pow(t) * w.y0;
    T rho = weight_at_lattice(w, s, t);
    T rho_qx = weight_at_lattice(w, s + 1, t);
    T rho_qy = weight_at_lattice(w, s, t + 1);
    T rho_qxy = weight_at_lattice(w, s + 1, t + 1);
    const auto& p = w.pearson;
    r.add("rho A12a = q^2 rho(qx,qy) A12d(qx,qy)", rho * e.A12a.eval(x, y) == qv * qv * rho_qxy * e.A12d.eval(qv * x, qv * y));
    r.add("rho phi1 = rho(qx,y) omega1(qx,y)", rho * p.phi1.eval(x, y) == rho_qx * p.omega1.eval(qv * x, y));
    r.add("rho phi2 = rho(x,qy) omega2(x,qy)", rho * p.phi2.eval(x, y) == rho_qy * p.omega2.eval(x, qv * y));
    return r;
}

// Divided-difference form of the Pearson system, evaluated with the lattice stencils.
template <Field T>
Report check_pearson_difference_form_at(const WeightEvaluator<T>& w, int s, int t) {
    Report r;
    const auto& p = w.pearson;
    const auto& q = w.q;
    const T& qv = q.value();
    auto idx = [&](const T& a, const T& b, int& i, int& j) {
        // recover lattice indices of (a, b) relative to the anchor
        for (i = -2; i <= s + 2; ++i)
            if (q.pow(i) * w.x0 == a) break;
        for (j = -2; j <= t + 2; ++j)
            if (q.pow(j) * w.y0 == b) break;
    };
    auto rho_at = [&](const T& a, const T& b) -> std::optional<T> {
        int i, j;
        idx(a, b, i, j);
        if (i > s + 2 || j > t + 2) return std::nullopt;
        try {
            return rho_ratio(p, q, w.x0, w.y0, i, j);
        } catch (const PoleOnPath&) {
        }
        try {
            return rho_ratio_y_first(p, q, w.x0, w.y0, i, j);
        } catch (const PoleOnPath&) {
            return std::nullopt;
        }
    };
    LatticeFn<T> w1rho = [&](const T& a, const T& b) -> std::optional<T> {
        auto v = rho_at(a, b);
        if (!v) return v;
        return *v * p.omega1.eval(a, b);
    };
    LatticeFn<T> p1rho = [&](const T& a, const T& b) -> std::optional<T> {
        auto v = rho_at(a, b);
        if (!v) return v;
        return *v * p.phi1.eval(a, b);
    };
    LatticeFn<T> w2rho = [&](const T& a, const T& b) -> std::optional<T> {
        auto v = rho_at(a, b);
        if (!v) return v;
        return *v * p.omega2.eval(a, b);
    };
    LatticeFn<T> p2rho = [&](const T& a, const T& b) -> std::optional<T> {
        auto v = rho_at(a, b);
        if (!v) return v;
        return *v * p.phi2.eval(a, b);
    };
    T x = q.pow(s) * w.x0, y = q.pow(t) * w.y0;
    r.add("D1(omega1 rho) = Dm1(phi1 rho)/q",
          dq_grid(Axis::x, Direction::forward, w1rho, x, y, q) ==
              dq_grid(Axis::x, Direction::backward, p1rho, x, y, q) / qv);
    r.add("D2(omega2 rho) = Dm2(phi2 rho)/q",
          dq_grid(Axis::y, Direction::forward, w2rho, x, y, q) ==
              dq_grid(Axis::y, Direction::backward, p2rho, x, y, q) / qv);
    return r;
}

struct RhoKlCheck {
    bool orders_commute = false;      // derived coefficients via x-first and y-first agree
    bool product_identity = false;    // shifted product identity at sampled lattice points
    bool derived_pearson = false;     // derived weight ratios equal derived G functions
    std::string detail;
};

// Pi_{k,l}(x,y) = prod_{i<k} omega1(q^-i x, y) prod_{s<l} omega2(x, q^-s y)
template <Field T>
BiPoly<T> omega_product(const PearsonData<T>& base, const QParam<T>& q, int k, int l) {
    BiPoly<T> pi(T(1));
    const T one(1);
    for (int i = 0; i < k; ++i) pi *= base.omega1.scaled(q.pow(-i), one);
    for (int s = 0; s < l; ++s) pi *= base.omega2.scaled(one, q.pow(-s));
    return pi;
}

// Weight of the order-(k,l) derived equation, anchored like the base weight.
template <Field T>
WeightEvaluator<T> rho_kl(const EquationCoeffs<T>& e, int k, int l, const T& x0, const T& y0,
                          RhoKlCheck* check = nullptr, int samples = 3) {
    static_assert(is_exact_v<T>, "derived weights are built exactly");
    auto dx = derived_by_recurrence(e, k, l, T(0));
    WeightEvaluator<T> w{x0, y0, build_pearson(dx), e.q};
    if (!check) return w;

    // y-first derivation
    DerivedCoeffs<T> dy{0, 0, e, T(0)};
    for (int j = 0; j < l; ++j) dy = step_y(dy);
    for (int i = 0; i < k; ++i) dy = step_x(dy);
    check->orders_commute = dx.coeffs == dy.coeffs && dx.mu == dy.mu;

    // rho^{(k,l)}(q^-k x, q^-l y) is proportional to rho(x,y) Pi_{k,l}(x,y) on the lattice.
    const auto base = build_pearson(e);
    const auto& q = e.q;
    BiPoly<T> pi = omega_product(base, q, k, l);
    bool prod_ok = true, pear_ok = true;
    std::ostringstream os;
    T ref_lhs(0), ref_rhs(0);
    bool have_ref = false;
    for (int s = 1; s <= samples; ++s)
        for (int t = 1; t <= samples; ++t) {
            T X = q.pow(s) * x0, Y = q.pow(t) * y0;
            T lhs = rho_ratio(w.pearson, q, x0, y0, s - k, t - l);
            T rhs = rho_ratio(base, q, x0, y0, s, t) * pi.eval(X, Y);
            if (!have_ref) {
                ref_lhs = lhs;
                ref_rhs = rhs;
                have_ref = true;
            } else if (lhs * ref_rhs != rhs * ref_lhs) {
                prod_ok = false;
                os << "product identity fails at (" << s << "," << t << "); ";
            }
            // derived Pearson ratios from the base weight
            T r0 = rho_ratio(base, q, x0, y0, s + k, t + l) * pi.eval(q.pow(k) * X, q.pow(l) * Y);
            T r1 = rho_ratio(base, q, x0, y0, s + k + 1, t + l) * pi.eval(q.pow(k + 1) * X, q.pow(l) * Y);
            T r2 = rho_ratio(base, q, x0, y0, s + k, t + l + 1) * pi.eval(q.pow(k) * X, q.pow(l + 1) * Y);
            if (r1 != w.pearson.G1.eval(X, Y) * r0 || r2 != w.pearson.G2.eval(X, Y) * r0) {
                pear_ok = false;
                os << "derived Pearson ratio fails at (" << s << "," << t << "); ";
            }
        }
    check->product_identity = prod_ok;
    check->derived_pearson = pear_ok;
    check->detail = os.str();
    return w;
}

}  // namespace qpde
