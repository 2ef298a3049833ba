#pragma once

#include "qpde/bigqjacobi.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>

namespace qpde {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line) : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what) {}
};

struct EquationSource {
    EquationCoeffs<Rational> equation;
    std::optional<BigQJacobiParams<Rational>> preset;
};

// Key-value equation file. Either
//   preset = big-q-jacobi ; q, a, b, c, d = fractions
// or
//   q = fraction ; C11, C22, A12a, A12d, B1, B2 = (i,j,coef) (i,j,coef) ...
EquationSource parse_equation_text(const std::string& text);
EquationSource parse_equation_file(const std::filesystem::path& path);

// Preset from name and "key=value" overrides of the test parameters.
EquationSource preset_source(const std::string& name, const std::vector<std::string>& params);

// Writes to a sibling temporary file, then renames over the target.
void atomic_write(const std::filesystem::path& path, const std::string& content);

std::string csv_line(const std::vector<std::string>& cells);

inline Json to_json(const Rational& r) { return to_string(r); }
inline Json to_json(const BigFloat& f) { return to_string(f, 40); }

template <Field T>
Json to_json(const BiPoly<T>& p) {
    Json arr = Json::array();
    for (const auto& [k, c] : p.terms()) {
        Json t;
        t["i"] = k.first;
        t["j"] = k.second;
        if constexpr (is_exact_v<T>) {
            t["numerator"] = numerator(c).str();
            t["denominator"] = denominator(c).str();
        } else {
            t["value"] = to_string(c, 40);
        }
        arr.push_back(std::move(t));
    }
    return arr;
}

template <Field T>
Json to_json(const Mat<T>& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

template <Field T>
Json to_json(const PolyVec<T>& v) {
    Json arr = Json::array();
    for (const auto& p : v) arr.push_back(to_json(p));
    return arr;
}

inline Json to_json(const Report& r) {
    Json arr = Json::array();
    for (const auto& c : r.items()) {
        Json item;
        item["name"] = c.name;
        item["pass"] = c.pass;
        if (!c.detail.empty()) item["detail"] = c.detail;
        arr.push_back(std::move(item));
    }
    return arr;
}

}  // namespace qpde
