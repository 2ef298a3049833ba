#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qpde {

namespace bmp = boost::multiprecision;
using Rational = bmp::number<bmp::gmp_rational, bmp::et_off>;
using Integer = bmp::number<bmp::gmp_int, bmp::et_off>;
using BigFloat = bmp::number<bmp::mpfr_float_backend<0>, bmp::et_off>;

template <class T>
concept Field = std::same_as<T, Rational> || std::same_as<T, BigFloat>;

template <Field T>
inline constexpr bool is_exact_v = std::same_as<T, Rational>;

enum class Backend { exact, big_float };

// Sets the working precision of BigFloat for the lifetime of the object.
class PrecisionScope {
public:
    explicit PrecisionScope(unsigned bits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_digits10_;
};

unsigned current_precision_bits();

// Parses "p", "p/q", or a decimal literal (float backend only for decimals).
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& r);
std::string to_string(const BigFloat& f, int digits = 0);

template <Field T>
T from_rational(const Rational& r) {
    if constexpr (is_exact_v<T>)
        return r;
    else
        return BigFloat(numerator(r)) / BigFloat(denominator(r));
}

template <Field T>
T integer_power(const T& base, long e) {
    if (e < 0) return T(1) / integer_power(base, -e);
    T result(1);
    T b = base;
    while (e > 0) {
        if (e & 1) result *= b;
        b *= b;
        e >>= 1;
    }
    return result;
}

template <Field T>
T abs_value(const T& v) {
    return v < 0 ? T(-v) : v;
}

// 2^(-bits+8): the tolerance used for truncating geometric tails.
BigFloat series_tolerance();

}  // namespace qpde
