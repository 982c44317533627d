#pragma once

#include "scaleinv/core/matrix.hpp"

#include <algorithm>
#include <vector>

namespace scaleinv {

/// Dense integer matrix used internally by the unimodular reductions.
class IntMatrix {
  public:
    IntMatrix() = default;
    IntMatrix(std::size_t r, std::size_t c) : rows_(r), cols_(c), d_(r * c, Integer(0)) {}

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    static IntMatrix from(const Matrix& m) {
        if (!m.is_integral())
            throw InvalidInput("integer matrix expected");
        IntMatrix r(m.rows(), m.cols());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                r(i, j) = m(i, j).get_num();
        return r;
    }

    Matrix to_rational() const {
        Matrix m(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                m(i, j) = Rational((*this)(i, j));
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Integer& operator()(std::size_t i, std::size_t j) { return d_[i * cols_ + j]; }
    const Integer& operator()(std::size_t i, std::size_t j) const { return d_[i * cols_ + j]; }

    void swap_rows(std::size_t a, std::size_t b) {
        for (std::size_t j = 0; j < cols_; ++j)
            std::swap((*this)(a, j), (*this)(b, j));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        for (std::size_t i = 0; i < rows_; ++i)
            std::swap((*this)(i, a), (*this)(i, b));
    }
    /// row[dst] += f * row[src]
    void add_row(std::size_t dst, std::size_t src, const Integer& f) {
        if (f == 0)
            return;
        for (std::size_t j = 0; j < cols_; ++j)
            (*this)(dst, j) += f * (*this)(src, j);
    }
    /// col[dst] += f * col[src]
    void add_col(std::size_t dst, std::size_t src, const Integer& f) {
        if (f == 0)
            return;
        for (std::size_t i = 0; i < rows_; ++i)
            (*this)(i, dst) += f * (*this)(i, src);
    }
    void negate_row(std::size_t r) {
        for (std::size_t j = 0; j < cols_; ++j)
            (*this)(r, j) = -(*this)(r, j);
    }

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Integer> d_;
};

struct SmithForm {
    std::vector<Integer> invariant_factors;  // d_1 | d_2 | ..., length min(rows, cols)
    Matrix left;                             // U, unimodular
    Matrix right;                            // V, unimodular
    Matrix diagonal;                         // D = U m V
};

/// Smith normal form of an integer matrix: U m V = D with d_i | d_{i+1}.
inline SmithForm smith_form(const Matrix& input) {
    IntMatrix a = IntMatrix::from(input);
    const std::size_t rows = a.rows(), cols = a.cols();
    IntMatrix u = IntMatrix::identity(rows), v = IntMatrix::identity(cols);
    const std::size_t n = std::min(rows, cols);

    for (std::size_t t = 0; t < n; ++t) {
        for (;;) {
            // smallest nonzero entry of the trailing block goes to (t, t)
            std::size_t bi = rows, bj = cols;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (a(i, j) != 0 && (bi == rows || abs(a(i, j)) < abs(a(bi, bj)))) {
                        bi = i;
                        bj = j;
                    }
            if (bi == rows)
                break;
            if (bi != t) {
                a.swap_rows(bi, t);
                u.swap_rows(bi, t);
            }
            if (bj != t) {
                a.swap_cols(bj, t);
                v.swap_cols(bj, t);
            }
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
                a.add_row(i, t, -q);
                u.add_row(i, t, -q);
                if (a(i, t) != 0)
                    clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
                a.add_col(j, t, -q);
                v.add_col(j, t, -q);
                if (a(t, j) != 0)
                    clean = false;
            }
            if (!clean)
                continue;
            // divisibility of the remaining block
            bool divides_all = true;
            for (std::size_t i = t + 1; i < rows && divides_all; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (a(i, j) % a(t, t) != 0) {
                        a.add_row(t, i, Integer(1));
                        u.add_row(t, i, Integer(1));
                        divides_all = false;
                        break;
                    }
            if (divides_all)
                break;
        }
        if (a(t, t) < 0) {
            a.negate_row(t);
            u.negate_row(t);
        }
    }

    SmithForm sf;
    for (std::size_t i = 0; i < n; ++i)
        sf.invariant_factors.push_back(a(i, i));
    sf.left = u.to_rational();
    sf.right = v.to_rational();
    sf.diagonal = a.to_rational();
    return sf;
}

} // namespace scaleinv
