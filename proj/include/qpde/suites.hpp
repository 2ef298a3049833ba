#pragma once

#include "qpde/bigqjacobi.hpp"

#include <string>
#include <vector>

namespace qpde {

// One measured case. Rows with asserted = false are reported but never fail a suite.
struct SuiteRow {
    std::vector<std::string> cells;
    bool asserted = true;
    bool pass = true;
};

struct SuiteTable {
    std::string name;
    std::vector<std::string> header;
    std::vector<SuiteRow> rows;

    void add(std::vector<std::string> cells, bool pass, bool asserted = true) {
        rows.push_back({std::move(cells), asserted, pass});
    }
    bool passed() const {
        for (const auto& r : rows)
            if (r.asserted && !r.pass) return false;
        return true;
    }
    std::size_t failures() const {
        std::size_t n = 0;
        for (const auto& r : rows) n += r.asserted && !r.pass;
        return n;
    }
    std::string csv() const;
};

struct OrthogonalityConfig {
    int max_degree = 3;
    unsigned precision = 192;
    int truncation = 200;
    double tolerance = 1e-25;
};

// Weighted inner products over the two-component Jackson domain.
SuiteTable suite_orthogonality(const BigQJacobiParams<Rational>& p, const OrthogonalityConfig& cfg);

// Hypergeometric vs oracle, recursion vs oracle, Rodrigues vs monic.
SuiteTable suite_consistency(const EquationCoeffs<Rational>& e, const std::optional<BigQJacobiParams<Rational>>& p,
                             int max_degree);

// q -> 1 convergence and the limit differential equation.
SuiteTable suite_limits(const ClassicalParams& cp, const std::vector<Rational>& eps, unsigned precision);

// Three-term recurrence, printed leading-coefficient formulas, explicit matrices.
SuiteTable suite_recurrence(const EquationCoeffs<Rational>& e, const std::optional<BigQJacobiParams<Rational>>& p,
                            int max_degree);

// c with a = c b, if any.
std::optional<Rational> proportionality(const BiPoly<Rational>& a, const BiPoly<Rational>& b);

std::string decimal(const Rational& r, int digits = 6);

}  // namespace qpde
