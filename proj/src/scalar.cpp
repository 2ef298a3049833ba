#include "qpde/scalar.hpp"

#include <cctype>
#include <sstream>

namespace qpde {

namespace {

unsigned bits_to_digits10(unsigned bits) {
    return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

}  // namespace

PrecisionScope::PrecisionScope(unsigned bits) : saved_digits10_(BigFloat::default_precision()) {
    if (bits < 64) throw std::invalid_argument("float precision must be at least 64 bits");
    BigFloat::default_precision(bits_to_digits10(bits));
}

PrecisionScope::~PrecisionScope() { BigFloat::default_precision(saved_digits10_); }

unsigned current_precision_bits() {
    return static_cast<unsigned>(std::floor(BigFloat::default_precision() / 0.30102999566398120));
}

Rational parse_rational(const std::string& raw) {
    std::string text;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) text += c;
    if (text.empty()) throw std::invalid_argument("empty number");
    auto slash = text.find('/');
    auto valid_int = [](const std::string& s) {
        std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (i >= s.size()) return false;
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    };
    auto to_int = [](std::string s) {
        if (!s.empty() && s[0] == '+') s.erase(0, 1);
        return Integer(s);
    };
    if (slash != std::string::npos) {
        std::string num = text.substr(0, slash), den = text.substr(slash + 1);
        if (!valid_int(num) || !valid_int(den)) throw std::invalid_argument("malformed fraction: " + raw);
        Integer d = to_int(den);
        if (d == 0) throw std::invalid_argument("zero denominator: " + raw);
        return Rational(to_int(num), d);
    }
    auto dot = text.find('.');
    if (dot != std::string::npos) {
        std::string whole = text.substr(0, dot), frac = text.substr(dot + 1);
        std::string digits = whole + frac;
        if (whole.empty() || whole == "-" || whole == "+") digits = whole + "0" + frac;
        if (!valid_int(digits) || frac.empty()) throw std::invalid_argument("malformed decimal: " + raw);
        Integer scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        return Rational(to_int(digits), scale);
    }
    if (!valid_int(text)) throw std::invalid_argument("malformed number: " + raw);
    return Rational(to_int(text));
}

std::string to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

std::string to_string(const BigFloat& f, int digits) {
    std::ostringstream os;
    os.precision(digits > 0 ? digits : static_cast<int>(BigFloat::default_precision()));
    os << std::scientific << f;
    return os.str();
}

BigFloat series_tolerance() {
    return boost::multiprecision::ldexp(BigFloat(1), -static_cast<int>(current_precision_bits()) + 8);
}

}  // namespace qpde
