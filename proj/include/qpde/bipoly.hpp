#pragma once

#include "qpde/scalar.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <utility>
#include <vector>

namespace qpde {

// Sparse polynomial in x, y. Keys are (i, j) for x^i y^j; zero coefficients are never stored.
template <Field T>
class BiPoly {
public:
    using Key = std::pair<int, int>;
    using Terms = std::map<Key, T>;

    BiPoly() = default;
    BiPoly(const T& c) { add_term(0, 0, c); }
    BiPoly(int c) : BiPoly(T(c)) {}

    static BiPoly monomial(int i, int j, const T& c = T(1)) {
        BiPoly p;
        p.add_term(i, j, c);
        return p;
    }
    static BiPoly x() { return monomial(1, 0); }
    static BiPoly y() { return monomial(0, 1); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    T coeff(int i, int j) const {
        auto it = terms_.find({i, j});
        return it == terms_.end() ? T(0) : it->second;
    }

    // -1 for the zero polynomial.
    int degree() const {
        int d = -1;
        for (const auto& [k, c] : terms_) d = std::max(d, k.first + k.second);
        return d;
    }
    int degree_x() const {
        int d = -1;
        for (const auto& [k, c] : terms_) d = std::max(d, k.first);
        return d;
    }
    int degree_y() const {
        int d = -1;
        for (const auto& [k, c] : terms_) d = std::max(d, k.second);
        return d;
    }

    void add_term(int i, int j, const T& c) {
        if (i < 0 || j < 0) throw std::invalid_argument("negative exponent");
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace({i, j}, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    BiPoly& operator+=(const BiPoly& o) {
        for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
        return *this;
    }
    BiPoly& operator-=(const BiPoly& o) {
        for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, -c);
        return *this;
    }
    BiPoly& operator*=(const T& s) {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [k, c] : terms_) c *= s;
        return *this;
    }
    BiPoly& operator/=(const T& s) {
        if (s == 0) throw std::domain_error("division of polynomial by zero");
        for (auto& [k, c] : terms_) c /= s;
        return *this;
    }

    friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
    friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
    friend BiPoly operator-(BiPoly a) { return a *= T(-1); }
    friend BiPoly operator*(BiPoly a, const T& s) { return a *= s; }
    friend BiPoly operator*(const T& s, BiPoly a) { return a *= s; }
    friend BiPoly operator/(BiPoly a, const T& s) { return a /= s; }
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
        BiPoly r;
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_) r.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
        return r;
    }
    BiPoly& operator*=(const BiPoly& o) { return *this = *this * o; }

    friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.terms_ == b.terms_; }

    BiPoly pow(int e) const {
        BiPoly r(T(1));
        for (int i = 0; i < e; ++i) r *= *this;
        return r;
    }

    // p(alpha x, beta y)
    BiPoly scaled(const T& alpha, const T& beta) const {
        BiPoly r;
        for (const auto& [k, c] : terms_)
            r.add_term(k.first, k.second, c * integer_power(alpha, k.first) * integer_power(beta, k.second));
        return r;
    }

    BiPoly swapped() const {
        BiPoly r;
        for (const auto& [k, c] : terms_) r.add_term(k.second, k.first, c);
        return r;
    }

    T eval(const T& xv, const T& yv) const {
        T s(0);
        for (const auto& [k, c] : terms_) s += c * integer_power(xv, k.first) * integer_power(yv, k.second);
        return s;
    }

    // Substitute polynomials for x and y.
    BiPoly compose(const BiPoly& px, const BiPoly& py) const {
        BiPoly r;
        std::vector<BiPoly> xp{BiPoly(T(1))}, yp{BiPoly(T(1))};
        for (int i = 1; i <= degree_x(); ++i) xp.push_back(xp.back() * px);
        for (int j = 1; j <= degree_y(); ++j) yp.push_back(yp.back() * py);
        for (const auto& [k, c] : terms_) r += c * (xp[k.first] * yp[k.second]);
        return r;
    }

    // Exact division by x (resp. y); every term must carry the factor.
    BiPoly div_x() const {
        BiPoly r;
        for (const auto& [k, c] : terms_) {
            if (k.first == 0) throw std::domain_error("polynomial not divisible by x");
            r.add_term(k.first - 1, k.second, c);
        }
        return r;
    }
    BiPoly div_y() const {
        BiPoly r;
        for (const auto& [k, c] : terms_) {
            if (k.second == 0) throw std::domain_error("polynomial not divisible by y");
            r.add_term(k.first, k.second - 1, c);
        }
        return r;
    }

    BiPoly diff_x() const {
        BiPoly r;
        for (const auto& [k, c] : terms_)
            if (k.first > 0) r.add_term(k.first - 1, k.second, c * T(k.first));
        return r;
    }
    BiPoly diff_y() const {
        BiPoly r;
        for (const auto& [k, c] : terms_)
            if (k.second > 0) r.add_term(k.first, k.second - 1, c * T(k.second));
        return r;
    }

    BiPoly homogeneous_part(int deg) const {
        BiPoly r;
        for (const auto& [k, c] : terms_)
            if (k.first + k.second == deg) r.add_term(k.first, k.second, c);
        return r;
    }

    // Terms with i+j <= deg.
    BiPoly truncated(int deg) const {
        BiPoly r;
        for (const auto& [k, c] : terms_)
            if (k.first + k.second <= deg) r.add_term(k.first, k.second, c);
        return r;
    }

    // Leading term in lex order (x before y).
    std::optional<std::pair<Key, T>> lex_leading() const {
        if (terms_.empty()) return std::nullopt;
        auto it = std::prev(terms_.end());
        return std::make_pair(it->first, it->second);
    }

private:
    Terms terms_;
};

template <Field U, Field T>
BiPoly<U> convert(const BiPoly<T>& p) {
    BiPoly<U> r;
    for (const auto& [k, c] : p.terms()) {
        if constexpr (std::same_as<T, Rational>)
            r.add_term(k.first, k.second, from_rational<U>(c));
        else
            r.add_term(k.first, k.second, U(c));
    }
    return r;
}

template <Field T>
struct DivResult {
    BiPoly<T> quotient;
    BiPoly<T> remainder;
};

// Multivariate division by a single divisor under lex order (x > y).
template <Field T>
DivResult<T> divide(BiPoly<T> p, const BiPoly<T>& d) {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    auto [dk, dc] = *d.lex_leading();
    DivResult<T> out;
    while (!p.is_zero()) {
        // find the largest term of p divisible by the leading monomial of d
        bool found = false;
        for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
            auto [k, c] = *it;
            if (k.first >= dk.first && k.second >= dk.second) {
                auto t = BiPoly<T>::monomial(k.first - dk.first, k.second - dk.second, c / dc);
                out.quotient += t;
                p -= t * d;
                found = true;
                break;
            }
        }
        if (!found) {
            out.remainder += p;
            break;
        }
    }
    return out;
}

// Random polynomial of total degree <= deg with small rational coefficients; about half the monomials are set.
template <Field T, class URBG>
BiPoly<T> random_bipoly(URBG& gen, int deg) {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 7), keep(0, 1);
    BiPoly<T> p;
    for (int n = 0; n <= deg; ++n)
        for (int j = 0; j <= n; ++j)
            if (keep(gen)) {
                int a = num(gen);
                int b = den(gen);
                p.add_term(n - j, j, from_rational<T>(Rational(a, b)));
            }
    return p;
}

}  // namespace qpde
