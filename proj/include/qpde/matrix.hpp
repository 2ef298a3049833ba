#pragma once

#include "qpde/bipoly.hpp"

#include <string>
#include <vector>

namespace qpde {

template <Field T>
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
    Mat(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        for (const auto& row : init) {
            if (row.size() != cols_) throw std::invalid_argument("ragged matrix literal");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Mat transpose() const {
        Mat t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    bool is_zero() const {
        for (const auto& v : data_)
            if (v != 0) return false;
        return true;
    }

    friend Mat operator+(Mat a, const Mat& b) {
        a.check_same(b);
        for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
        return a;
    }
    friend Mat operator-(Mat a, const Mat& b) {
        a.check_same(b);
        for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
        return a;
    }
    friend Mat operator-(Mat a) {
        for (auto& v : a.data_) v = -v;
        return a;
    }
    friend Mat operator*(const T& s, Mat a) {
        for (auto& v : a.data_) v *= s;
        return a;
    }
    friend Mat operator*(const Mat& a, const Mat& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix dimension mismatch in product");
        Mat r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a(i, k) == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += a(i, k) * b(k, j);
            }
        return r;
    }
    friend bool operator==(const Mat& a, const Mat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    // [a; b]
    static Mat vstack(const Mat& a, const Mat& b) {
        if (a.cols_ != b.cols_) throw std::invalid_argument("vstack column mismatch");
        Mat r(a.rows_ + b.rows_, a.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j) r(i, j) = a(i, j);
        for (std::size_t i = 0; i < b.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j) r(a.rows_ + i, j) = b(i, j);
        return r;
    }

private:
    void check_same(const Mat& b) const {
        if (rows_ != b.rows_ || cols_ != b.cols_) throw std::invalid_argument("matrix dimension mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

template <Field T>
using PolyVec = std::vector<BiPoly<T>>;

template <Field T>
PolyVec<T> operator*(const Mat<T>& m, const PolyVec<T>& v) {
    if (m.cols() != v.size()) throw std::invalid_argument("matrix/vector dimension mismatch");
    PolyVec<T> r(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j) != 0) r[i] += m(i, j) * v[j];
    return r;
}

template <Field T>
PolyVec<T> operator+(PolyVec<T> a, const PolyVec<T>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

template <Field T>
PolyVec<T> operator-(PolyVec<T> a, const PolyVec<T>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

template <Field T>
bool is_zero(const PolyVec<T>& v) {
    for (const auto& p : v)
        if (!p.is_zero()) return false;
    return true;
}

class SingularMatrix : public std::runtime_error {
public:
    SingularMatrix(std::size_t column)
        : std::runtime_error("singular matrix: rank deficiency at pivot column " + std::to_string(column)),
          column_(column) {}
    std::size_t column() const { return column_; }

private:
    std::size_t column_;
};

namespace detail {

// Row-reduces m in place to echelon form; returns pivot columns.
template <Field T>
std::vector<std::size_t> echelon(Mat<T>& m, Mat<T>* rhs = nullptr, std::size_t* swaps = nullptr) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t best = m.rows();
        for (std::size_t r = row; r < m.rows(); ++r) {
            if (m(r, col) == 0) continue;
            if constexpr (is_exact_v<T>) {
                best = r;
                break;
            } else {
                if (best == m.rows() || abs_value(m(r, col)) > abs_value(m(best, col))) best = r;
            }
        }
        if (best == m.rows()) continue;
        if (best != row) {
            if (swaps) ++*swaps;
            for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(row, c), m(best, c));
            if (rhs)
                for (std::size_t c = 0; c < rhs->cols(); ++c) std::swap((*rhs)(row, c), (*rhs)(best, c));
        }
        for (std::size_t r = row + 1; r < m.rows(); ++r) {
            if (m(r, col) == 0) continue;
            T f = m(r, col) / m(row, col);
            for (std::size_t c = col; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
            if (rhs)
                for (std::size_t c = 0; c < rhs->cols(); ++c) (*rhs)(r, c) -= f * (*rhs)(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace detail

// Solves A X = B by Gaussian elimination.
template <Field T>
Mat<T> solve_exact(Mat<T> a, Mat<T> b) {
    if (a.rows() != a.cols()) throw std::invalid_argument("solve_exact requires a square matrix");
    if (b.rows() != a.rows()) throw std::invalid_argument("solve_exact right-hand side mismatch");
    const std::size_t n = a.rows();
    auto pivots = detail::echelon(a, &b);
    for (std::size_t i = 0; i < n; ++i)
        if (i >= pivots.size() || pivots[i] != i) throw SingularMatrix(i);
    Mat<T> x(n, b.cols());
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t c = 0; c < b.cols(); ++c) {
            T s = b(i, c);
            for (std::size_t k = i + 1; k < n; ++k) s -= a(i, k) * x(k, c);
            x(i, c) = s / a(i, i);
        }
    }
    return x;
}

template <Field T>
std::size_t rank(Mat<T> m) {
    static_assert(is_exact_v<T>, "rank is only defined exactly");
    return detail::echelon(m).size();
}

template <Field T>
T determinant(Mat<T> m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    std::size_t swaps = 0;
    auto pivots = detail::echelon(m, static_cast<Mat<T>*>(nullptr), &swaps);
    if (pivots.size() < m.rows()) return T(0);
    T det(1);
    for (std::size_t i = 0; i < m.rows(); ++i) det *= m(i, i);
    return swaps % 2 ? T(-det) : det;
}

// Unique polynomial with deg_x < |xs|, deg_y < |ys| taking values(r, c) at (xs[r], ys[c]).
template <Field T>
BiPoly<T> interpolate_2d(const std::vector<T>& xs, const std::vector<T>& ys, const Mat<T>& values) {
    if (values.rows() != xs.size() || values.cols() != ys.size())
        throw std::invalid_argument("interpolation values have wrong shape");
    auto vandermonde = [](const std::vector<T>& nodes) {
        for (std::size_t i = 0; i < nodes.size(); ++i)
            for (std::size_t j = i + 1; j < nodes.size(); ++j)
                if (nodes[i] == nodes[j]) throw std::invalid_argument("repeated interpolation node");
        Mat<T> v(nodes.size(), nodes.size());
        for (std::size_t r = 0; r < nodes.size(); ++r) {
            T p(1);
            for (std::size_t c = 0; c < nodes.size(); ++c) {
                v(r, c) = p;
                p *= nodes[r];
            }
        }
        return v;
    };
    Mat<T> vx = vandermonde(xs), vy = vandermonde(ys);
    // values = Vx C Vy^T
    Mat<T> z = solve_exact(vx, values);
    Mat<T> ct = solve_exact(vy, z.transpose());
    BiPoly<T> p;
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = 0; j < ys.size(); ++j) p.add_term(int(i), int(j), ct(j, i));
    return p;
}

}  // namespace qpde
