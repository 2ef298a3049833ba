#include "qpde/suites.hpp"

#include "qpde/io.hpp"
#include "qpde/monic.hpp"
#include "qpde/rodrigues.hpp"

namespace qpde {

namespace {

std::string str(int v) { return std::to_string(v); }

std::string label(int n, int m) { return "(" + str(n) + "," + str(m) + ")"; }

const std::vector<std::pair<Rational, Rational>>& interior_points() {
    static const std::vector<std::pair<Rational, Rational>> pts = {
        {Rational(1, 3), Rational(1, 2)}, {Rational(-1, 2), Rational(1, 4)}, {Rational(0), Rational(3, 4)}};
    return pts;
}

std::string point_label(std::size_t k) {
    const auto& [x, y] = interior_points()[k];
    return "(" + to_string(x) + " " + to_string(y) + ")";
}

bool in_band(const Rational& r) { return r >= Rational(1, 20) && r <= Rational(1, 5); }

}  // namespace

std::string SuiteTable::csv() const {
    std::vector<std::string> h = header;
    h.push_back("asserted");
    h.push_back("status");
    std::string out = csv_line(h);
    for (const auto& r : rows) {
        std::vector<std::string> c = r.cells;
        c.push_back(r.asserted ? "yes" : "no");
        c.push_back(r.pass ? "pass" : "fail");
        out += csv_line(c);
    }
    return out;
}

std::optional<Rational> proportionality(const BiPoly<Rational>& a, const BiPoly<Rational>& b) {
    if (b.is_zero()) return a.is_zero() ? std::optional<Rational>(Rational(1)) : std::nullopt;
    auto [key, bc] = *b.terms().begin();
    Rational c = a.coeff(key.first, key.second) / bc;
    if (a == c * b) return c;
    return std::nullopt;
}

std::string decimal(const Rational& r, int digits) {
    PrecisionScope ps(std::max(128u, current_precision_bits()));
    return to_string(from_rational<BigFloat>(r), digits);
}

// ---- orthogonality ----

SuiteTable suite_orthogonality(const BigQJacobiParams<Rational>& p, const OrthogonalityConfig& cfg) {
    SuiteTable t{"orthogonality", {"family", "first", "second", "value"}, {}};
    if (cfg.max_degree > 6) throw std::invalid_argument("orthogonality suite supports total degree <= 6");
    const auto e = preset_equation(p);
    const int D = cfg.max_degree;

    // exact families first, then everything at the working precision
    struct ExactMember {
        std::string label;
        int degree;
        BiPoly<Rational> poly;
    };
    std::vector<std::pair<std::string, std::vector<ExactMember>>> families;
    {
        std::vector<ExactMember> nm, mo, ro;
        for (int n = 0; n <= D; ++n)
            for (int k = 0; k <= n; ++k) nm.push_back({"P" + label(n, k), n, nonmonic_poly(p, n, k)});
        auto fam = oracle_family(e, D);
        for (int n = 0; n <= D; ++n)
            for (int k = 0; k <= n; ++k) mo.push_back({"Phat" + label(n - k, k), n, fam.P[n][k]});
        for (int N = 0; N <= D; ++N)
            for (int m = 0; m <= N; ++m) ro.push_back({"Ptilde" + label(N - m, m), N, rodrigues_poly(e, RodriguesSpec<Rational>{N - m, m}).poly});
        families = {{"nonmonic", nm}, {"monic", mo}, {"rodrigues", ro}};
    }

    PrecisionScope ps(cfg.precision);
    const BigFloat tol(cfg.tolerance);
    auto pf = convert<BigFloat>(p);
    auto nodes = orthogonality_nodes(pf, cfg.truncation);
    const auto& N = nodes.nodes;
    t.add({"weight", "nodes=" + std::to_string(N.size()), "nonpositive=" + std::to_string(nodes.nonpositive), "0"},
          nodes.nonpositive == 0);

    for (const auto& [fname, members] : families) {
        std::vector<std::vector<BigFloat>> vals;
        std::vector<BigFloat> norms;
        for (const auto& m : members) {
            vals.push_back(node_values(N, convert<BigFloat>(m.poly)));
            norms.push_back(weighted_dot(N, vals.back(), vals.back()));
            t.add({fname, m.label, m.label, to_string(norms.back(), 6)}, norms.back() > 0);
        }
        for (std::size_t i = 0; i < members.size(); ++i)
            for (std::size_t j = i + 1; j < members.size(); ++j) {
                BigFloat v = weighted_dot(N, vals[i], vals[j]);
                BigFloat nv = v / sqrt(norms[i] * norms[j]);
                // same-degree members are orthogonal only for the non-monic family
                bool asserted = fname == "nonmonic" || members[i].degree != members[j].degree;
                t.add({fname, members[i].label, members[j].label, to_string(nv, 6)}, abs(nv) < tol, asserted);
            }
    }

    // H_1 = L(x^1 Phat_1^T)
    auto fam = oracle_family(e, 1);
    PolyVec<BigFloat> p1;
    for (const auto& u : fam.P[1]) p1.push_back(convert<BigFloat>(u));
    Mat<BigFloat> H = gram_matrix(p1, 1, N);
    BigFloat det = determinant(H);
    BigFloat scale = abs(H(0, 0) * H(1, 1)) + abs(H(0, 1) * H(1, 0));
    t.add({"gram", "H1", "det/scale", to_string(BigFloat(det / scale), 6)}, abs(det) > scale * BigFloat(1e-12));

    // potential self-adjointness and the eigen relation
    auto ef = convert<BigFloat>(e);
    auto [lhs, rhs] = bilinear_selfadjoint_check(ef, N, BiPoly<BigFloat>::x(), BiPoly<BigFloat>::y());
    BigFloat rel = abs(lhs - rhs) / std::max(abs(lhs), abs(rhs));
    t.add({"selfadjoint", "x", "y", to_string(rel, 6)}, rel < tol);
    auto u = convert<BigFloat>(oracle_family(e, 2).P[2][1]);
    BigFloat du = weighted_inner(N, apply_operator(ef, u), u), uu = weighted_inner(N, u, u);
    BigFloat lam = eigenvalue(ef, 2);
    BigFloat erel = abs(du + lam * uu) / abs(lam * uu);
    t.add({"eigen", "Phat(1,1)", "Phat(1,1)", to_string(erel, 6)}, erel < tol);
    return t;
}

// ---- consistency ----

SuiteTable suite_consistency(const EquationCoeffs<Rational>& e, const std::optional<BigQJacobiParams<Rational>>& p,
                             int max_degree) {
    SuiteTable t{"consistency", {"check", "n", "m", "value"}, {}};
    const int D = max_degree;
    auto fam = oracle_family(e, D);
    for (int N = 0; N <= D; ++N)
        for (int k = 0; k <= N; ++k) {
            const auto& u = fam.P[N][k];
            bool res = (apply_operator(e, u) + eigenvalue(e, N) * u).is_zero();
            t.add({"monic residual", str(N - k), str(k), res ? "0" : "nonzero"}, res);
            if (p) {
                BiPoly<Rational> diff = monic_hypergeometric(*p, N - k, k) - u;
                t.add({"hypergeometric - monic", str(N - k), str(k), diff.is_zero() ? "0" : std::to_string(diff.terms().size()) + " terms"},
                      diff.is_zero());
            }
        }
    auto rf = generate_monic_rf(e, D);
    t.add({"recursion equals oracle", "0.." + str(D), "", rf.matches_oracle ? "0" : rf.first_difference}, rf.matches_oracle);
    t.add({"explicit inverse times L is identity", "0.." + str(D - 1), "", rf.inverse_ok ? "0" : "nonzero"}, rf.inverse_ok);
    for (int n = 0; n <= 6; ++n) {
        Mat<Rational> Dn = generalized_inverse_explicit<Rational>(n);
        bool left = Dn * joint_L<Rational>(n) == Mat<Rational>::identity(n + 2);
        bool formula = Dn == generalized_inverse_formula<Rational>(n);
        t.add({"D_n^+ L_n = I", str(n), "", left ? "0" : "nonzero"}, left);
        t.add({"D_n^+ equals (L^T L)^-1 L^T", str(n), "", formula ? "0" : "nonzero"}, formula);
    }
    for (int N = 0; N <= D; ++N)
        for (int m = 0; m <= N; ++m) {
            const int n = N - m;
            auto r = rodrigues_poly(e, RodriguesSpec<Rational>{n, m});
            t.add({"rodrigues residual", str(n), str(m), r.residual_zero ? "0" : "nonzero"}, r.residual_zero && r.polynomial_degree_ok);
            auto c = proportionality(r.poly, fam.P[N][m]);
            t.add({"rodrigues proportional to monic entry", str(n), str(m), c ? to_string(*c) : "not proportional"}, c.has_value());
            BiPoly<Rational> span;
            std::string coeffs;
            for (int k = 0; k <= N; ++k) {
                Rational ck = r.poly.coeff(N - k, k);
                span += ck * fam.P[N][k];
                coeffs += (k ? " " : "") + to_string(ck);
            }
            t.add({"rodrigues in span of monic vector", str(n), str(m), coeffs}, span == r.poly);
        }
    return t;
}

// ---- limits ----

SuiteTable suite_limits(const ClassicalParams& cp, const std::vector<Rational>& eps, unsigned precision) {
    SuiteTable t{"limits", {"quantity", "n", "m", "eps", "point", "error", "ratio"}, {}};
    const auto& pts = interior_points();
    const std::vector<std::pair<int, int>> cases = {{1, 0}, {1, 1}, {2, 1}};
    for (auto [n, m] : cases)
        for (const auto& row : limit_table(cp, eps, n, m, pts)) {
            std::string ratio = row.ratio ? decimal(*row.ratio, 4) : "";
            t.add({"monic", str(n), str(m), to_string(row.eps), point_label(row.point), decimal(row.error), ratio},
                  !row.ratio || in_band(*row.ratio), row.ratio.has_value());
        }

    // Rodrigues pair, both normalized by the x^n y^m coefficient
    for (auto [n, m] : cases) {
        auto cls = classical_rodrigues(cp, n, m).quotient;
        cls /= cls.coeff(n, m);
        std::vector<Rational> prev(pts.size());
        for (std::size_t e = 0; e < eps.size(); ++e) {
            auto lp = limit_params(cp, eps[e]);
            auto r = rodrigues_poly(preset_equation(lp), RodriguesSpec<Rational>{n, m}).poly;
            r /= r.coeff(n, m);
            for (std::size_t k = 0; k < pts.size(); ++k) {
                Rational err = abs_value(Rational(r.eval(pts[k].first, pts[k].second) - cls.eval(pts[k].first, pts[k].second)));
                std::string ratio = e > 0 && prev[k] != 0 ? decimal(Rational(err / prev[k]), 4) : "";
                prev[k] = err;
                t.add({"rodrigues (normalized)", str(n), str(m), to_string(eps[e]), point_label(k), decimal(err), ratio}, true, false);
            }
        }
    }

    // weight pair at one interior point
    {
        PrecisionScope ps(precision);
        BigFloat x = from_rational<BigFloat>(pts[0].first), y = from_rational<BigFloat>(pts[0].second);
        BigFloat rho = classical_weight(cp, x, y);
        std::optional<BigFloat> prev;
        for (const auto& ep : eps) {
            auto lp = convert<BigFloat>(limit_params(cp, ep));
            BigFloat dev = abs(BigFloat(weight_W(lp, x, y) / rho - 1));
            BigFloat epsf = from_rational<BigFloat>(ep);
            std::string ratio;
            bool ok = dev < BigFloat(10) * epsf;
            if (prev) {
                BigFloat r = dev / *prev;
                ratio = to_string(r, 4);
                ok = ok && r >= BigFloat(0.05) && r <= BigFloat(0.2);
            }
            prev = dev;
            t.add({"weight |W/rho - 1|", "", "", to_string(ep), point_label(0), to_string(dev, 6), ratio}, ok);
        }
    }

    // limit differential equation and the classical Rodrigues formula
    for (int N = 0; N <= 3; ++N)
        for (int m = 0; m <= N; ++m) {
            const int n = N - m;
            auto A = appell_monic(cp, n, m);
            bool ra = classical_pde_residual(cp, A, N).is_zero();
            t.add({"appell residual", str(n), str(m), "", "", ra ? "0" : "nonzero", ""}, ra);
            t.add({"appell leading coefficient", str(n), str(m), "", "", to_string(A.coeff(n, m)), ""}, A.coeff(n, m) == 1);
            auto div = classical_rodrigues(cp, n, m);
            t.add({"classical rodrigues remainder", str(n), str(m), "", "", div.remainder.is_zero() ? "0" : "nonzero", ""},
                  div.remainder.is_zero());
            auto c = proportionality(div.quotient, A);
            t.add({"classical rodrigues proportional to appell", str(n), str(m), "", "", c ? to_string(*c) : "not proportional", ""},
                  c.has_value());
            BiPoly<Rational> span;
            for (int k = 0; k <= N; ++k) span += div.quotient.coeff(N - k, k) * appell_monic(cp, N - k, k);
            t.add({"classical rodrigues in span of appell vector", str(n), str(m), "", "", span == div.quotient ? "0" : "nonzero", ""},
                  span == div.quotient);
        }
    for (int n = 0; n <= 3; ++n)
        for (int m = 0; m <= n; ++m) {
            auto J = jnm(cp, n, m);
            bool rj = classical_pde_residual(cp, J, n).is_zero();
            t.add({"J residual", str(n), str(m), "", "", rj ? "0" : "nonzero", ""}, rj);
            bool same = true;
            for (const auto& [x, y] : pts) same = same && J.eval(x, y) == jnm_jacobi_form(cp, n, m, x, y);
            t.add({"J equals Jacobi product form", str(n), str(m), "", "", same ? "0" : "nonzero", ""}, same);
        }
    return t;
}

// ---- recurrence ----

SuiteTable suite_recurrence(const EquationCoeffs<Rational>& e, const std::optional<BigQJacobiParams<Rational>>& p,
                            int max_degree) {
    SuiteTable t{"recurrence", {"check", "n", "j", "value"}, {}};
    const int D = max_degree;
    auto fam = oracle_family(e, D + 1);
    std::vector<TTRMatrices<Rational>> ttr;
    for (int n = 0; n <= D; ++n) ttr.push_back(ttr_matrices(fam, n));
    for (int n = 0; n <= D; ++n)
        for (int j = 1; j <= 2; ++j) {
            bool zero = is_zero(ttr_residual(fam, ttr[n], n, j));
            t.add({"x_j P_n - A P_{n+1} - B P_n - C P_{n-1}", str(n), str(j), zero ? "0" : "nonzero"}, zero);
            bool a_is_l = ttr[n].A[j - 1] == L_matrix<Rational>(n, j);
            t.add({"A_{n,j} = L_{n,j}", str(n), str(j), a_is_l ? "0" : "nonzero"}, a_is_l);
            if (n >= 1) {
                std::size_t rk = rank(ttr[n].C[j - 1]);
                t.add({"rank C_{n,j}", str(n), str(j), std::to_string(rk)}, rk == std::size_t(n));
            }
        }
    for (int n = 0; n <= D; ++n) {
        std::size_t rk = rank(joint_L<Rational>(n));
        t.add({"rank L_n", str(n), "", std::to_string(rk)}, rk == std::size_t(n + 2));
    }

    auto s_op = [](const EquationCoeffs<Rational>& eq, int m) { return S_operator(eq, m); };
    for (int n = 1; n <= D; ++n) {
        // printed S_n against the operator
        Mat<Rational> sp = S_printed(e, n), so = S_operator(e, n);
        std::string where;
        for (std::size_t r = 0; r < sp.rows(); ++r)
            for (std::size_t c = 0; c < sp.cols(); ++c)
                if (sp(r, c) != so(r, c)) where += (where.empty() ? "" : " ") + ("s" + str(int(r) + 1) + "," + str(int(c) + 1));
        t.add({"printed S_n equals operator block", str(n), "", where.empty() ? "0" : "differs at " + where}, where.empty(), false);
        bool reidx = S_reindexed(e, n) == so;
        t.add({"reindexed S_n equals operator block", str(n), "", reidx ? "0" : "nonzero"}, reidx, false);

        auto verbatim = ghat_printed(e, n);
        t.add({"G_{n,n-1} printed formula equals oracle", str(n), "", verbatim.G1 == fam.G[n][n - 1] ? "0" : "nonzero"},
              verbatim.G1 == fam.G[n][n - 1], false);
        auto op = ghat_formula(e, n, s_op, &fam.G[n][n - 1]);
        t.add({"G_{n,n-1} with operator S_n equals oracle", str(n), "", op.G1 == fam.G[n][n - 1] ? "0" : "nonzero"},
              op.G1 == fam.G[n][n - 1]);
        if (n >= 2) {
            bool v2 = *verbatim.G2 == fam.G[n][n - 2];
            t.add({"G_{n,n-2} printed formula equals oracle", str(n), "", v2 ? "0" : "nonzero"}, v2, false);
            bool o2 = *op.G2 == fam.G[n][n - 2];
            t.add({"G_{n,n-2} with operator S_{n-1} equals oracle", str(n), "", o2 ? "0" : "nonzero"}, o2);
        }
        bool tn = true;
        if (n >= 2) {
            // T_n is the degree-(n-2) block of the operator on x^n
            tn = T_printed(e, n) == action_matrix(e, n, n - 2);
            t.add({"printed T_n equals operator block", str(n), "", tn ? "0" : "nonzero"}, tn, false);
        }
    }

    if (p)
        for (int n = 1; n <= D; ++n) {
            auto x = explicit_BC(*p, n);
            const std::pair<const char*, std::pair<const Mat<Rational>*, const Mat<Rational>*>> cmp[] = {
                {"B_{n,1}", {&x.B1, &ttr[n].B[0]}},
                {"B_{n,2}", {&x.B2, &ttr[n].B[1]}},
                {"C_{n,1}", {&x.C1, &ttr[n].C[0]}},
                {"C_{n,2}", {&x.C2, &ttr[n].C[1]}}};
            for (const auto& [name, mats] : cmp) {
                std::string where;
                const auto& a = *mats.first;
                const auto& b = *mats.second;
                for (std::size_t r = 0; r < a.rows(); ++r)
                    for (std::size_t c = 0; c < a.cols(); ++c)
                        if (a(r, c) != b(r, c)) where += (where.empty() ? "" : " ") + ("(" + str(int(r) + 1) + "," + str(int(c) + 1) + ")");
                t.add({std::string("explicit ") + name + " equals recurrence matrix", str(n), "", where.empty() ? "0" : "differs at " + where},
                      where.empty(), false);
            }
        }
    return t;
}

}  // namespace qpde
