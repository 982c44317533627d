#pragma once

#include "scaleinv/core/linalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace scaleinv {

/// A finite-dimensional rational Lie algebra given by structure constants
/// [e_i, e_j] = sum_k c_ij^k e_k. Indices are 0-based.
class LieAlgebra {
  public:
    struct Entry {
        std::size_t i, j, k;
        Rational value;
    };

    LieAlgebra() = default;
    explicit LieAlgebra(std::size_t dim) : dim_(dim), c_(dim * dim * dim, Rational(0)) {}

    std::size_t dim() const { return dim_; }

    const Rational& constant(std::size_t i, std::size_t j, std::size_t k) const {
        return c_[index(i, j, k)];
    }

    /// Sets c_ij^k only; the caller decides what c_ji^k is.
    void set_constant(std::size_t i, std::size_t j, std::size_t k, const Rational& value) {
        if (i >= dim_ || j >= dim_ || k >= dim_)
            throw DimensionError("structure constant index out of range");
        c_[index(i, j, k)] = value;
        entries_.reset();
    }

    /// Sets c_ij^k = value and c_ji^k = -value.
    void set_bracket(std::size_t i, std::size_t j, std::size_t k, const Rational& value) {
        set_constant(i, j, k, value);
        set_constant(j, i, k, -value);
    }

    /// Nonzero structure constants, ordered by (i, j, k).
    const std::vector<Entry>& entries() const {
        if (!entries_) {
            std::vector<Entry> out;
            for (std::size_t i = 0; i < dim_; ++i)
                for (std::size_t j = 0; j < dim_; ++j)
                    for (std::size_t k = 0; k < dim_; ++k)
                        if (const auto& v = constant(i, j, k); v != 0)
                            out.push_back({i, j, k, v});
            entries_ = std::move(out);
        }
        return *entries_;
    }

    Vector bracket(std::span<const Rational> x, std::span<const Rational> y) const {
        if (x.size() != dim_ || y.size() != dim_)
            throw DimensionError("bracket argument has wrong length");
        Vector out = zero_vector(dim_);
        for (const auto& e : entries()) {
            if (x[e.i] == 0 || y[e.j] == 0)
                continue;
            out[e.k] += e.value * x[e.i] * y[e.j];
        }
        return out;
    }

    Vector bracket_basis(std::size_t i, std::size_t j) const {
        Vector out = zero_vector(dim_);
        for (std::size_t k = 0; k < dim_; ++k)
            out[k] = constant(i, j, k);
        return out;
    }

    /// Matrix of ad(x): column j is [x, e_j].
    Matrix ad(std::span<const Rational> x) const {
        Matrix m(dim_, dim_);
        for (const auto& e : entries())
            if (x[e.i] != 0)
                m(e.k, e.j) += e.value * x[e.i];
        return m;
    }

    friend bool operator==(const LieAlgebra& a, const LieAlgebra& b) {
        return a.dim_ == b.dim_ && a.c_ == b.c_;
    }

  private:
    std::size_t index(std::size_t i, std::size_t j, std::size_t k) const {
        return (i * dim_ + j) * dim_ + k;
    }

    std::size_t dim_ = 0;
    std::vector<Rational> c_;
    mutable std::optional<std::vector<Entry>> entries_;
};

/// The same algebra written in the basis formed by the columns of `basis`.
inline LieAlgebra change_basis(const LieAlgebra& algebra, const Matrix& basis) {
    const std::size_t d = algebra.dim();
    if (basis.rows() != d || basis.cols() != d)
        throw DimensionError("basis change has wrong shape");
    auto inv = try_inverse(basis);
    if (!inv)
        throw InvalidInput("basis change is singular");
    LieAlgebra out(d);
    std::vector<Vector> cols;
    for (std::size_t j = 0; j < d; ++j)
        cols.push_back(basis.column(j));
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) {
            Vector coords = *inv * algebra.bracket(cols[a], cols[b]);
            for (std::size_t k = 0; k < d; ++k)
                out.set_constant(a, b, k, coords[k]);
        }
    return out;
}

struct Violation {
    enum class Kind { antisymmetry, jacobi, not_nilpotent };
    Kind kind;
    std::size_t i = 0, j = 0, k = 0;  // 0-based

    std::string describe() const {
        auto one = [](std::size_t v) { return std::to_string(v + 1); };
        switch (kind) {
        case Kind::antisymmetry:
            return "antisymmetry violated: c[" + one(i) + "," + one(j) + "]^" + one(k) +
                   " != -c[" + one(j) + "," + one(i) + "]^" + one(k);
        case Kind::jacobi:
            return "Jacobi identity fails on triple (" + one(i) + "," + one(j) + "," + one(k) + ")";
        default:
            return "lower central series does not reach 0";
        }
    }
};

struct ValidationReport {
    bool ok = false;
    std::size_t nilpotency_class = 0;
    std::optional<Violation> violation;
};

inline std::optional<Violation> check_antisymmetry(const LieAlgebra& a) {
    const std::size_t d = a.dim();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k)
                if (a.constant(i, j, k) != -a.constant(j, i, k))
                    return Violation{Violation::Kind::antisymmetry, i, j, k};
    return std::nullopt;
}

inline std::optional<Violation> check_jacobi(const LieAlgebra& a) {
    const std::size_t d = a.dim();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j)
            for (std::size_t k = j + 1; k < d; ++k) {
                Vector ei = unit_vector(d, i), ej = unit_vector(d, j), ek = unit_vector(d, k);
                Vector s = a.bracket(ei, a.bracket_basis(j, k));
                s = add(s, a.bracket(ej, a.bracket_basis(k, i)));
                s = add(s, a.bracket(ek, a.bracket_basis(i, j)));
                if (!is_zero(s))
                    return Violation{Violation::Kind::jacobi, i, j, k};
            }
    return std::nullopt;
}

} // namespace scaleinv
