#pragma once

#include "scaleinv/core/matrix.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace scaleinv {

struct EchelonForm {
    Matrix reduced;                   // reduced row echelon form
    std::vector<std::size_t> pivots;  // pivot column of each nonzero row
    std::size_t rank() const { return pivots.size(); }
};

/// Reduced row echelon form over Q. Zero rows are dropped from `reduced`.
inline EchelonForm row_reduce(Matrix m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m(p, c) == 0)
            ++p;
        if (p == rows)
            continue;
        if (p != r)
            for (std::size_t j = 0; j < cols; ++j)
                std::swap(m(p, j), m(r, j));
        Rational inv = Rational(1) / m(r, c);
        for (std::size_t j = c; j < cols; ++j)
            m(r, j) *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m(i, c) == 0)
                continue;
            Rational f = m(i, c);
            for (std::size_t j = c; j < cols; ++j)
                if (m(r, j) != 0)
                    m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return {m.block(0, 0, r, cols), std::move(pivots)};
}

inline std::size_t rank(const Matrix& m) { return row_reduce(m).rank(); }

/// Basis of {v : m v = 0}, one vector per free column, in canonical form.
inline std::vector<Vector> nullspace(const Matrix& m) {
    auto ef = row_reduce(m);
    const std::size_t cols = m.cols();
    std::vector<bool> is_pivot(cols, false);
    for (auto p : ef.pivots)
        is_pivot[p] = true;
    std::vector<Vector> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f])
            continue;
        Vector v = zero_vector(cols);
        v[f] = 1;
        for (std::size_t i = 0; i < ef.pivots.size(); ++i)
            v[ef.pivots[i]] = -ef.reduced(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

inline Rational determinant(Matrix m) {
    if (!m.is_square())
        throw DimensionError("determinant of non-square matrix");
    const std::size_t n = m.rows();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m(p, c) == 0)
            ++p;
        if (p == n)
            return 0;
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(m(p, j), m(c, j));
            det = -det;
        }
        det *= m(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m(i, c) == 0)
                continue;
            Rational f = m(i, c) / m(c, c);
            for (std::size_t j = c; j < n; ++j)
                m(i, j) -= f * m(c, j);
        }
    }
    return det;
}

inline std::optional<Matrix> try_inverse(const Matrix& m) {
    if (!m.is_square())
        throw DimensionError("inverse of non-square matrix");
    const std::size_t n = m.rows();
    Matrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    auto ef = row_reduce(aug);
    if (ef.rank() < n || ef.pivots[n - 1] != n - 1)
        return std::nullopt;
    return ef.reduced.block(0, n, n, n);
}

inline Matrix inverse(const Matrix& m) {
    auto inv = try_inverse(m);
    if (!inv)
        throw InvalidInput("matrix is singular");
    return *inv;
}

/// Some solution of m x = b, or nullopt when inconsistent.
inline std::optional<Vector> solve(const Matrix& m, std::span<const Rational> b) {
    if (b.size() != m.rows())
        throw DimensionError("right-hand side length mismatch");
    Matrix aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j)
            aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    auto ef = row_reduce(aug);
    if (!ef.pivots.empty() && ef.pivots.back() == m.cols())
        return std::nullopt;
    Vector x = zero_vector(m.cols());
    for (std::size_t i = 0; i < ef.pivots.size(); ++i)
        x[ef.pivots[i]] = ef.reduced(i, m.cols());
    return x;
}

/// Canonical basis (reduced echelon rows) of the span of the given vectors.
inline Matrix span_basis(const std::vector<Vector>& vectors, std::size_t dim) {
    if (vectors.empty())
        return Matrix(0, dim);
    return row_reduce(Matrix::from_rows(vectors)).reduced;
}

inline Matrix stack_rows(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols() && a.rows() && b.rows())
        throw DimensionError("column counts differ");
    const std::size_t cols = a.rows() ? a.cols() : b.cols();
    Matrix s(a.rows() + b.rows(), cols);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < cols; ++j)
            s(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < cols; ++j)
            s(a.rows() + i, j) = b(i, j);
    return s;
}

/// `m` expressed in the basis given by the columns of `basis`.
inline Matrix change_of_basis(const Matrix& m, const Matrix& basis) {
    return inverse(basis) * m * basis;
}

} // namespace scaleinv
