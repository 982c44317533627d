#pragma once

#include "scaleinv/core/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace scaleinv {

using Vector = std::vector<Rational>;

inline Vector zero_vector(std::size_t n) { return Vector(n, Rational(0)); }

inline Vector unit_vector(std::size_t n, std::size_t i) {
    Vector v = zero_vector(n);
    v.at(i) = 1;
    return v;
}

inline bool is_zero(std::span<const Rational> v) {
    for (const auto& x : v)
        if (x != 0)
            return false;
    return true;
}

inline bool is_integral(std::span<const Rational> v) {
    for (const auto& x : v)
        if (!is_integer(x))
            return false;
    return true;
}

inline Vector add(std::span<const Rational> a, std::span<const Rational> b) {
    if (a.size() != b.size())
        throw DimensionError("vector sizes differ");
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] + b[i];
    return r;
}

inline Vector sub(std::span<const Rational> a, std::span<const Rational> b) {
    if (a.size() != b.size())
        throw DimensionError("vector sizes differ");
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] - b[i];
    return r;
}

inline Vector scale(const Rational& s, std::span<const Rational> a) {
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = s * a[i];
    return r;
}

inline Vector negate(std::span<const Rational> a) { return scale(Rational(-1), a); }

inline Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
    if (a.size() != b.size())
        throw DimensionError("vector sizes differ");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

/// Dense rational matrix, row-major.
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

    Matrix(std::initializer_list<std::initializer_list<long>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_)
                throw DimensionError("ragged matrix literal");
            for (long v : row)
                data_.emplace_back(v);
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    static Matrix diagonal(std::span<const Rational> d) {
        Matrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i)
            m(i, i) = d[i];
        return m;
    }

    static Matrix from_rows(const std::vector<Vector>& rows) {
        if (rows.empty())
            return {};
        Matrix m(rows.size(), rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_)
                throw DimensionError("ragged row list");
            for (std::size_t j = 0; j < m.cols_; ++j)
                m(i, j) = rows[i][j];
        }
        return m;
    }

    static Matrix from_columns(const std::vector<Vector>& cols) {
        return from_rows(cols).transpose();
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const {
        return data_[i * cols_ + j];
    }

    std::span<const Rational> row_span(std::size_t i) const {
        return {data_.data() + i * cols_, cols_};
    }
    Vector row(std::size_t i) const {
        auto s = row_span(i);
        return {s.begin(), s.end()};
    }
    Vector column(std::size_t j) const {
        Vector c(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            c[i] = (*this)(i, j);
        return c;
    }
    void set_row(std::size_t i, std::span<const Rational> v) {
        if (v.size() != cols_)
            throw DimensionError("row length mismatch");
        for (std::size_t j = 0; j < cols_; ++j)
            (*this)(i, j) = v[j];
    }
    void set_column(std::size_t j, std::span<const Rational> v) {
        if (v.size() != rows_)
            throw DimensionError("column length mismatch");
        for (std::size_t i = 0; i < rows_; ++i)
            (*this)(i, j) = v[i];
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        if (r0 + nr > rows_ || c0 + nc > cols_)
            throw DimensionError("block out of range");
        Matrix b(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j)
                b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }

    bool is_integral() const {
        for (const auto& x : data_)
            if (!is_integer(x))
                return false;
        return true;
    }

    bool is_zero() const { return scaleinv::is_zero(data_); }

    Rational trace() const {
        if (!is_square())
            throw DimensionError("trace of non-square matrix");
        Rational t = 0;
        for (std::size_t i = 0; i < rows_; ++i)
            t += (*this)(i, i);
        return t;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    Matrix& operator+=(const Matrix& o) {
        check_same(o);
        for (std::size_t i = 0; i < data_.size(); ++i)
            data_[i] += o.data_[i];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        check_same(o);
        for (std::size_t i = 0; i < data_.size(); ++i)
            data_[i] -= o.data_[i];
        return *this;
    }
    Matrix& operator*=(const Rational& s) {
        for (auto& x : data_)
            x *= s;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(const Rational& s, Matrix a) { return a *= s; }
    friend Matrix operator-(Matrix a) { return a *= Rational(-1); }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_)
            throw DimensionError("matrix product dimension mismatch");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Rational& aik = a(i, k);
                if (aik == 0)
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (b(k, j) != 0)
                        c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend Vector operator*(const Matrix& a, std::span<const Rational> v) {
        if (a.cols_ != v.size())
            throw DimensionError("matrix-vector dimension mismatch");
        Vector r(a.rows_, Rational(0));
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j)
                if (a(i, j) != 0 && v[j] != 0)
                    r[i] += a(i, j) * v[j];
        return r;
    }
    friend Vector operator*(const Matrix& a, const Vector& v) {
        return a * std::span<const Rational>(v);
    }

    friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
        os << '[';
        for (std::size_t i = 0; i < m.rows_; ++i) {
            os << (i ? ", [" : "[");
            for (std::size_t j = 0; j < m.cols_; ++j)
                os << (j ? ", " : "") << m(i, j).get_str();
            os << ']';
        }
        return os << ']';
    }

  private:
    void check_same(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw DimensionError("matrix shapes differ");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

inline Matrix matrix_power(const Matrix& m, unsigned long e) {
    if (!m.is_square())
        throw DimensionError("power of non-square matrix");
    Matrix result = Matrix::identity(m.rows());
    Matrix base = m;
    while (e) {
        if (e & 1u)
            result = result * base;
        e >>= 1u;
        if (e)
            base = base * base;
    }
    return result;
}

inline std::string to_string(std::span<const Rational> v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += ", ";
        s += v[i].get_str();
    }
    return s + ")";
}

} // namespace scaleinv
