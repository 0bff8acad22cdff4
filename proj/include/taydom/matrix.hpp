#pragma once

#include <stdexcept>
#include <vector>

#include "taydom/poly.hpp"
#include "taydom/rational.hpp"

namespace taydom {

/// Dense matrix over an exact scalar, sized for the small companion systems
/// in this project (dimension <= a few dozen).
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols, T(0)) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    T& at(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const T& at(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.c_ != b.r_) throw std::invalid_argument("Matrix: shape mismatch");
        Matrix r(a.r_, b.c_);
        for (std::size_t i = 0; i < a.r_; ++i)
            for (std::size_t k = 0; k < a.c_; ++k) {
                const T& aik = a.at(i, k);
                if (aik == T(0)) continue;
                for (std::size_t j = 0; j < b.c_; ++j) r.at(i, j) += aik * b.at(k, j);
            }
        return r;
    }
    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        Matrix r = a;
        for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += b.a_[i];
        return r;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        Matrix r = a;
        for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] -= b.a_[i];
        return r;
    }

    std::vector<T> apply(const std::vector<T>& v) const {
        if (v.size() != c_) throw std::invalid_argument("Matrix: vector size");
        std::vector<T> out(r_, T(0));
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j) out[i] += at(i, j) * v[j];
        return out;
    }

    T trace() const {
        T s(0);
        for (std::size_t i = 0; i < r_; ++i) s += at(i, i);
        return s;
    }

    /// Max |entry| (for Rat this is exact).
    T norm_max() const {
        T m(0);
        for (auto& v : a_) {
            T av = v < T(0) ? T(0) - v : v;
            if (m < av) m = av;
        }
        return m;
    }

private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<T> a_;
};

using MatQ = Matrix<Rat>;

/// Characteristic polynomial det(xI - A) by the Faddeev-LeVerrier recurrence,
/// exact over Rat. Returned ascending in x, monic.
inline PolyQ char_poly(const MatQ& A) {
    if (A.rows() != A.cols()) throw std::invalid_argument("char_poly: square matrix required");
    const std::size_t n = A.rows();
    std::vector<Rat> c(n + 1, Rat(0));
    c[n] = Rat(1);
    MatQ M = MatQ::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        M = A * M;
        Rat ck = -(M.trace() / Rat(static_cast<long>(k)));
        c[n - k] = ck;
        for (std::size_t i = 0; i < n; ++i) M.at(i, i) += ck;
    }
    return PolyQ(std::move(c), "x");
}

/// Row-echelon rank, exact.
inline std::size_t rank(MatQ m) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
        std::size_t piv = rank;
        while (piv < m.rows() && m.at(piv, col).is_zero()) ++piv;
        if (piv == m.rows()) continue;
        if (piv != rank)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(rank, j));
        Rat inv = m.at(rank, col).inv();
        for (std::size_t j = col; j < m.cols(); ++j) m.at(rank, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == rank || m.at(i, col).is_zero()) continue;
            Rat f = m.at(i, col);
            for (std::size_t j = col; j < m.cols(); ++j) m.at(i, j) -= f * m.at(rank, j);
        }
        ++rank;
    }
    return rank;
}

/// Basis of the null space of m (columns as vectors), exact.
inline std::vector<std::vector<Rat>> kernel(MatQ m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<long> pivot_of_col(cols, -1);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && m.at(piv, col).is_zero()) ++piv;
        if (piv == rows) continue;
        if (piv != rank)
            for (std::size_t j = 0; j < cols; ++j) std::swap(m.at(piv, j), m.at(rank, j));
        Rat inv = m.at(rank, col).inv();
        for (std::size_t j = col; j < cols; ++j) m.at(rank, j) *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rank || m.at(i, col).is_zero()) continue;
            Rat f = m.at(i, col);
            for (std::size_t j = col; j < cols; ++j) m.at(i, j) -= f * m.at(rank, j);
        }
        pivot_of_col[col] = static_cast<long>(rank);
        ++rank;
    }
    std::vector<std::vector<Rat>> basis;
    for (std::size_t free_col = 0; free_col < cols; ++free_col) {
        if (pivot_of_col[free_col] >= 0) continue;
        std::vector<Rat> v(cols, Rat(0));
        v[free_col] = Rat(1);
        for (std::size_t col = 0; col < cols; ++col)
            if (pivot_of_col[col] >= 0) v[col] = -m.at(static_cast<std::size_t>(pivot_of_col[col]), free_col);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace taydom
