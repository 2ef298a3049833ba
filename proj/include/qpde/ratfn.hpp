#pragma once

#include "qpde/bipoly.hpp"

namespace qpde {

// Quotient num/den with no gcd normalization; equality by cross-multiplication.
template <Field T>
class RationalFn {
public:
    RationalFn(BiPoly<T> num, BiPoly<T> den = BiPoly<T>(T(1))) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
    }

    const BiPoly<T>& num() const { return num_; }
    const BiPoly<T>& den() const { return den_; }

    friend RationalFn operator+(const RationalFn& a, const RationalFn& b) {
        if (a.den_ == b.den_) return {a.num_ + b.num_, a.den_};
        return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
    }
    friend RationalFn operator-(const RationalFn& a, const RationalFn& b) {
        if (a.den_ == b.den_) return {a.num_ - b.num_, a.den_};
        return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
    }
    friend RationalFn operator*(const RationalFn& a, const RationalFn& b) {
        return {a.num_ * b.num_, a.den_ * b.den_};
    }
    friend RationalFn operator/(const RationalFn& a, const RationalFn& b) {
        return {a.num_ * b.den_, a.den_ * b.num_};
    }
    friend RationalFn operator*(const RationalFn& a, const BiPoly<T>& p) { return {a.num_ * p, a.den_}; }
    friend RationalFn operator*(const BiPoly<T>& p, const RationalFn& a) { return {a.num_ * p, a.den_}; }

    RationalFn scaled(const T& alpha, const T& beta) const {
        return {num_.scaled(alpha, beta), den_.scaled(alpha, beta)};
    }

    // Throws if the denominator vanishes at the point.
    T eval(const T& xv, const T& yv) const {
        T d = den_.eval(xv, yv);
        if (d == 0) throw std::domain_error("pole of rational function");
        return num_.eval(xv, yv) / d;
    }

    bool is_zero() const { return num_.is_zero(); }

private:
    BiPoly<T> num_;
    BiPoly<T> den_;
};

template <Field T>
bool ratfn_equal(const RationalFn<T>& f, const RationalFn<T>& g) {
    return (f.num() * g.den() - g.num() * f.den()).is_zero();
}

}  // namespace qpde
