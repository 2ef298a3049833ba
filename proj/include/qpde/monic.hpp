#pragma once

#include "qpde/equation.hpp"
#include "qpde/matrix.hpp"

#include <optional>

namespace qpde {

// Monomial vector x^n = (x^n, x^{n-1} y, ..., y^n) in graded lexicographic order.
template <Field T>
PolyVec<T> monomial_vector(int n) {
    PolyVec<T> v;
    for (int k = 0; k <= n; ++k) v.push_back(BiPoly<T>::monomial(n - k, k));
    return v;
}

template <Field T>
struct StructureMatrices {
    Mat<T> E1, E2, K1, K2, L1, L2;
};

template <Field T>
StructureMatrices<T> structure_matrices(int n, const QParam<T>& q) {
    const std::size_t r = n + 1;
    StructureMatrices<T> s{Mat<T>(r, n), Mat<T>(r, n), Mat<T>(r, n), Mat<T>(r, n), Mat<T>(r, n + 2), Mat<T>(r, n + 2)};
    for (int k = 0; k <= n; ++k) {
        if (k < n) {
            s.E1(k, k) = qnum<T>(n - k, q);
            s.K1(k, k) = q.pow(1 - (n - k)) * qnum<T>(n - k, q);
        }
        if (k >= 1) {
            s.E2(k, k - 1) = qnum<T>(k, q);
            s.K2(k, k - 1) = q.pow(1 - k) * qnum<T>(k, q);
        }
        s.L1(k, k) = T(1);
        s.L2(k, k + 1) = T(1);
    }
    return s;
}

template <Field T>
Mat<T> L_matrix(int n, int j) {
    Mat<T> m(n + 1, n + 2);
    for (int k = 0; k <= n; ++k) m(k, k + (j - 1)) = T(1);
    return m;
}

// Joint L_n = [L_{n,1}; L_{n,2}].
template <Field T>
Mat<T> joint_L(int n) {
    return Mat<T>::vstack(L_matrix<T>(n, 1), L_matrix<T>(n, 2));
}

// Explicit left inverse of L_n: first row 1, interior rows average the two blocks, last row 1.
template <Field T>
Mat<T> generalized_inverse_explicit(int n) {
    Mat<T> d(n + 2, 2 * n + 2);
    d(0, 0) = T(1);
    for (int r = 1; r <= n; ++r) {
        d(r, r) = T(1) / T(2);
        d(r, (n + 1) + (r - 1)) = T(1) / T(2);
    }
    d(n + 1, 2 * n + 1) = T(1);
    return d;
}

// (L^T L)^{-1} L^T
template <Field T>
Mat<T> generalized_inverse_formula(int n) {
    Mat<T> l = joint_L<T>(n);
    return solve_exact(l.transpose() * l, l.transpose());
}

// Row k of G_{n,j} holds the coefficients of x^{j-kk} y^kk in entry k.
template <Field T>
Mat<T> coefficient_block(const PolyVec<T>& p, int j) {
    Mat<T> g(p.size(), j + 1);
    for (std::size_t k = 0; k < p.size(); ++k)
        for (int kk = 0; kk <= j; ++kk) g(k, kk) = p[k].coeff(j - kk, kk);
    return g;
}

// Degree-d2 block of the operator applied to x^d: row k, column kk is the coefficient of
// x^{d2-kk} y^kk in D(x^{d-k} y^k).
template <Field T>
Mat<T> action_matrix(const EquationCoeffs<T>& e, int d, int d2) {
    Mat<T> m(d + 1, d2 + 1);
    for (int k = 0; k <= d; ++k) {
        BiPoly<T> img = apply_operator(e, BiPoly<T>::monomial(d - k, k));
        for (int kk = 0; kk <= d2; ++kk) m(k, kk) = img.coeff(d2 - kk, kk);
    }
    return m;
}

template <Field T>
struct OracleResult {
    PolyVec<T> P;
    std::vector<Mat<T>> G;  // G[j] for j = 0..n, G[n] = I
};

// Coefficient matching: the degree-d block of (D + lambda_n) P_n = 0 gives
// G_{n,d} (A_{d,d} + lambda_n I) = - sum_{j>d} G_{n,j} A_{j,d}.
template <Field T>
OracleResult<T> ghat_oracle(const EquationCoeffs<T>& e, int n) {
    const T lam = eigenvalue(e, n);
    std::vector<Mat<T>> G(n + 1);
    G[n] = Mat<T>::identity(n + 1);
    std::map<std::pair<int, int>, Mat<T>> act;
    auto A = [&](int j, int d) -> const Mat<T>& {
        auto it = act.find({j, d});
        if (it == act.end()) it = act.emplace(std::make_pair(j, d), action_matrix(e, j, d)).first;
        return it->second;
    };
    for (int d = n - 1; d >= 0; --d) {
        Mat<T> rhs(n + 1, d + 1);
        for (int j = d + 1; j <= n; ++j) rhs = rhs - G[j] * A(j, d);
        Mat<T> sys = A(d, d) + lam * Mat<T>::identity(d + 1);
        // X sys = rhs  <=>  sys^T X^T = rhs^T
        try {
            G[d] = solve_exact(sys.transpose(), rhs.transpose()).transpose();
        } catch (const SingularMatrix& ex) {
            throw std::runtime_error("singular coefficient block at degree " + std::to_string(d) +
                                     " (equation not admissible): " + ex.what());
        }
    }
    OracleResult<T> out{PolyVec<T>(n + 1), G};
    for (int j = 0; j <= n; ++j) out.P = out.P + G[j] * monomial_vector<T>(j);
    return out;
}

// ---- printed formulas ----

// S_n with entries as printed (1-based s_{i,i} and s_{i+1,i}).
template <Field T>
Mat<T> S_printed(const EquationCoeffs<T>& e, int n) {
    const auto& q = e.q;
    auto qn = [&](long z) { return qnum<T>(z, q); };
    Mat<T> s(n + 1, n);
    for (int i = 1; i <= n; ++i) {
        s(i - 1, i - 1) = qn(n - i + 1) * (e.g1() + q.pow(1 + i - n) * e.b1() * qn(n - i) + e.c3a() * qn(i - 1) +
                                           q.pow(2 - n) * e.c3d() * qn(i - 1));
        s(i, i - 1) = qn(i - 1) * (e.b2() * q.pow(3 - i) * qn(i - 2) + qn(n + 1 - i) * (e.b3a() + e.b3d() * q.pow(2 - n)) +
                                   e.g2());
    }
    return s;
}

// S_n with the subdiagonal expression evaluated one index later.
template <Field T>
Mat<T> S_reindexed(const EquationCoeffs<T>& e, int n) {
    const auto& q = e.q;
    auto qn = [&](long z) { return qnum<T>(z, q); };
    Mat<T> s = S_printed(e, n);
    for (int i = 1; i <= n; ++i)
        s(i, i - 1) = qn(i) * (e.b2() * q.pow(2 - i) * qn(i - 1) + qn(n - i) * (e.b3a() + e.b3d() * q.pow(2 - n)) + e.g2());
    return s;
}

// S_n read off the operator: the degree-(n-1) block of D acting on x^n.
template <Field T>
Mat<T> S_operator(const EquationCoeffs<T>& e, int n) {
    return action_matrix(e, n, n - 1);
}

template <Field T>
Mat<T> T_printed(const EquationCoeffs<T>& e, int n) {
    auto sn = structure_matrices(n, e.q);
    auto sm = structure_matrices(n - 1, e.q);
    const T& qv = e.qv();
    return e.d3a() * (sn.E2 * sm.E1) + (e.c1() * qv) * (sn.K1 * sm.E1) + (e.c2() * qv) * (sn.K2 * sm.E2) +
           e.d3d() * (sn.K2 * sm.K1);
}

// F_n(lambda_l) = (lambda_n - lambda_l) I_{n+1}
template <Field T>
Mat<T> F_matrix(const EquationCoeffs<T>& e, int n, int l) {
    return (eigenvalue(e, n) - eigenvalue(e, l)) * Mat<T>::identity(n + 1);
}

template <Field T>
struct PrintedGhat {
    Mat<T> G1;                 // G_{n,n-1}
    std::optional<Mat<T>> G2;  // G_{n,n-2} for n >= 2
};

// G_{n,n-1} = S_n F_{n-1}^{-1}(lambda_n), G_{n,n-2} = (T_n + G_{n,n-1} S_{n-1}) F_{n-2}^{-1}(lambda_n).
// `S` selects how S_n is formed.
template <Field T, class SFn>
PrintedGhat<T> ghat_formula(const EquationCoeffs<T>& e, int n, SFn S, const Mat<T>* g1_override = nullptr) {
    if (n < 1) throw std::invalid_argument("leading-coefficient formulas need n >= 1");
    auto inv = [&](int m) {
        Mat<T> f = F_matrix(e, m, n);
        return solve_exact(f, Mat<T>::identity(m + 1));
    };
    PrintedGhat<T> out{S(e, n) * inv(n - 1), std::nullopt};
    if (n >= 2) {
        const Mat<T>& g1 = g1_override ? *g1_override : out.G1;
        out.G2 = (T_printed(e, n) + g1 * S(e, n - 1)) * inv(n - 2);
    }
    return out;
}

template <Field T>
PrintedGhat<T> ghat_printed(const EquationCoeffs<T>& e, int n) {
    return ghat_formula(e, n, [](const EquationCoeffs<T>& eq, int m) { return S_printed(eq, m); });
}

// ---- recurrence ----

template <Field T>
struct TTRMatrices {
    Mat<T> A[2], B[2], C[2];  // index j-1; C empty for n = 0
};

template <Field T>
struct MonicFamily {
    std::vector<PolyVec<T>> P;              // P[0..N]
    std::vector<std::vector<Mat<T>>> G;     // G[n][j]
    std::vector<TTRMatrices<T>> ttr;        // ttr[n] for n = 0..N-1 when available
};

template <Field T>
MonicFamily<T> oracle_family(const EquationCoeffs<T>& e, int N) {
    MonicFamily<T> f;
    for (int n = 0; n <= N; ++n) {
        auto o = ghat_oracle(e, n);
        f.P.push_back(std::move(o.P));
        f.G.push_back(std::move(o.G));
    }
    return f;
}

// B_{n,j}, C_{n,j} from the leading coefficient blocks; needs G for n-1, n, n+1.
template <Field T>
TTRMatrices<T> ttr_matrices(const MonicFamily<T>& f, int n) {
    if (n + 1 >= int(f.G.size())) throw std::invalid_argument("ttr_matrices needs the family up to degree n+1");
    TTRMatrices<T> t;
    const auto& G = f.G;
    for (int j = 1; j <= 2; ++j) {
        Mat<T> L = L_matrix<T>(n, j);
        t.A[j - 1] = L;
        if (n == 0) {
            t.B[j - 1] = -(L * G[1][0]);
            continue;
        }
        t.B[j - 1] = G[n][n - 1] * L_matrix<T>(n - 1, j) - L * G[n + 1][n];
        if (n == 1)
            t.C[j - 1] = -(L * G[2][0] + t.B[j - 1] * G[1][0]);
        else
            t.C[j - 1] = G[n][n - 2] * L_matrix<T>(n - 2, j) - L * G[n + 1][n - 1] - t.B[j - 1] * G[n][n - 1];
    }
    return t;
}

// x_j P_n - A_{n,j} P_{n+1} - B_{n,j} P_n - C_{n,j} P_{n-1}
template <Field T>
PolyVec<T> ttr_residual(const MonicFamily<T>& f, const TTRMatrices<T>& t, int n, int j) {
    BiPoly<T> xj = j == 1 ? BiPoly<T>::x() : BiPoly<T>::y();
    PolyVec<T> r = f.P[n];
    for (auto& p : r) p *= xj;
    r = r - t.A[j - 1] * f.P[n + 1] - t.B[j - 1] * f.P[n];
    if (n >= 1) r = r - t.C[j - 1] * f.P[n - 1];
    return r;
}

template <Field T>
struct RFResult {
    MonicFamily<T> family;
    bool inverse_ok = false;
    bool matches_oracle = false;
    std::string first_difference;
};

// Builds P_0..P_N by the stacked recursion with D_n^+; B_n, C_n from the oracle leading blocks.
template <Field T>
RFResult<T> generate_monic_rf(const EquationCoeffs<T>& e, int N) {
    RFResult<T> out;
    MonicFamily<T> oracle = oracle_family(e, N + 1);
    auto& fam = out.family;
    fam.G = oracle.G;
    fam.P.push_back(PolyVec<T>{BiPoly<T>(T(1))});
    out.inverse_ok = true;
    for (int n = 0; n < N; ++n) {
        TTRMatrices<T> t = ttr_matrices(oracle, n);
        fam.ttr.push_back(t);
        Mat<T> D = generalized_inverse_explicit<T>(n);
        out.inverse_ok = out.inverse_ok && D * joint_L<T>(n) == Mat<T>::identity(n + 2);
        Mat<T> Bn = Mat<T>::vstack(t.B[0], t.B[1]);
        PolyVec<T> stacked;
        for (const auto& p : fam.P[n]) stacked.push_back(BiPoly<T>::x() * p);
        for (const auto& p : fam.P[n]) stacked.push_back(BiPoly<T>::y() * p);
        stacked = stacked - Bn * fam.P[n];
        if (n >= 1) stacked = stacked - Mat<T>::vstack(t.C[0], t.C[1]) * fam.P[n - 1];
        fam.P.push_back(D * stacked);
    }
    out.matches_oracle = true;
    for (int n = 0; n <= N && out.matches_oracle; ++n)
        for (std::size_t k = 0; k < fam.P[n].size(); ++k)
            if (!(fam.P[n][k] == oracle.P[n][k])) {
                out.matches_oracle = false;
                BiPoly<T> diff = fam.P[n][k] - oracle.P[n][k];
                auto [key, c] = *diff.terms().begin();
                out.first_difference = "degree " + std::to_string(n) + " entry " + std::to_string(k) +
                                       " monomial x^" + std::to_string(key.first) + " y^" +
                                       std::to_string(key.second);
                break;
            }
    return out;
}

// Moment matrix L(x^m P_n^T) under a weighted quadrature.
template <Field T>
Mat<T> gram_matrix(const PolyVec<T>& Pn, int m, const std::vector<WeightedNode<T>>& nodes) {
    static_assert(!is_exact_v<T>, "Gram matrices need the float backend");
    Mat<T> g(m + 1, Pn.size());
    auto xm = monomial_vector<T>(m);
    for (std::size_t r = 0; r <= std::size_t(m); ++r)
        for (std::size_t c = 0; c < Pn.size(); ++c) g(r, c) = weighted_inner(nodes, xm[r], Pn[c]);
    return g;
}

}  // namespace qpde
