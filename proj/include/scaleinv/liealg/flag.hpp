#pragma once

#include "scaleinv/liealg/lie_algebra.hpp"

#include <vector>

namespace scaleinv {

/// A rational subspace stored as its reduced echelon row basis, so equal
/// subspaces compare equal.
class Subspace {
  public:
    Subspace() = default;
    explicit Subspace(std::size_t ambient) : basis_(0, ambient), ambient_(ambient) {}
    Subspace(const std::vector<Vector>& spanning, std::size_t ambient)
        : basis_(span_basis(spanning, ambient)), ambient_(ambient) {}

    static Subspace whole(std::size_t ambient) {
        Subspace s;
        s.basis_ = Matrix::identity(ambient);
        s.ambient_ = ambient;
        return s;
    }

    std::size_t dim() const { return basis_.rows(); }
    std::size_t ambient() const { return ambient_; }
    const Matrix& basis() const { return basis_; }
    std::vector<Vector> vectors() const {
        std::vector<Vector> out;
        for (std::size_t i = 0; i < basis_.rows(); ++i)
            out.push_back(basis_.row(i));
        return out;
    }

    bool contains(std::span<const Rational> v) const {
        if (is_zero(v))
            return true;
        auto rows = vectors();
        rows.emplace_back(v.begin(), v.end());
        return rank(Matrix::from_rows(rows)) == dim();
    }

    bool contains(const Subspace& other) const {
        for (std::size_t i = 0; i < other.dim(); ++i)
            if (!contains(other.basis_.row_span(i)))
                return false;
        return true;
    }

    /// Rows whose null space is this subspace.
    Matrix annihilator() const {
        auto ns = nullspace(basis_.rows() ? basis_ : Matrix(0, ambient_));
        if (basis_.rows() == 0) {
            ns.clear();
            for (std::size_t j = 0; j < ambient_; ++j)
                ns.push_back(unit_vector(ambient_, j));
        }
        return ns.empty() ? Matrix(0, ambient_) : Matrix::from_rows(ns);
    }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }

  private:
    Matrix basis_;
    std::size_t ambient_ = 0;
};

/// Descending chain of subspaces V = subspaces[0] > subspaces[1] > ... > 0.
struct Flag {
    std::vector<Subspace> subspaces;
    std::vector<std::size_t> layer_dims;  // dim subspaces[i] - dim subspaces[i+1]

    std::size_t length() const { return layer_dims.size(); }
};

inline Flag make_flag(std::vector<Subspace> chain) {
    Flag f;
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
        f.layer_dims.push_back(chain[i].dim() - chain[i + 1].dim());
    f.subspaces = std::move(chain);
    return f;
}

/// [U, W] as a subspace.
inline Subspace bracket_span(const LieAlgebra& a, const Subspace& u, const Subspace& w) {
    std::vector<Vector> out;
    for (const auto& x : u.vectors())
        for (const auto& y : w.vectors()) {
            Vector b = a.bracket(x, y);
            if (!is_zero(b))
                out.push_back(std::move(b));
        }
    return Subspace(out, a.dim());
}

/// gamma_1 = n, gamma_{i+1} = [n, gamma_i], stopping at 0 or when the
/// series stabilises (in which case the last subspace is nonzero).
inline std::vector<Subspace> lower_central_chain(const LieAlgebra& a) {
    std::vector<Subspace> chain{Subspace::whole(a.dim())};
    const Subspace all = chain.front();
    while (chain.back().dim() > 0) {
        Subspace next = bracket_span(a, all, chain.back());
        if (next.dim() == chain.back().dim())
            break;
        chain.push_back(std::move(next));
    }
    return chain;
}

inline Flag lower_central_series(const LieAlgebra& a) {
    auto chain = lower_central_chain(a);
    if (chain.back().dim() != 0)
        throw PreconditionError("algebra is not nilpotent");
    return make_flag(std::move(chain));
}

/// {x : [x, e_j] in below for every j}.
inline Subspace central_preimage(const LieAlgebra& a, const Subspace& below) {
    const std::size_t d = a.dim();
    Matrix ann = below.annihilator();
    Matrix system(0, d);
    for (std::size_t j = 0; j < d; ++j) {
        // [x, e_j] = -ad(e_j) x
        Matrix rows = ann * a.ad(unit_vector(d, j));
        system = stack_rows(system, rows);
    }
    if (system.rows() == 0)
        return Subspace::whole(d);
    return Subspace(nullspace(system), d);
}

inline Subspace center(const LieAlgebra& a) { return central_preimage(a, Subspace(a.dim())); }

/// Upper central series read top-down: n = zeta_c > ... > zeta_1 > 0.
inline Flag upper_central_series(const LieAlgebra& a) {
    std::vector<Subspace> up{Subspace(a.dim())};
    while (up.back().dim() < a.dim()) {
        Subspace next = central_preimage(a, up.back());
        if (next.dim() == up.back().dim())
            throw PreconditionError("algebra is not nilpotent");
        up.push_back(std::move(next));
    }
    return make_flag(std::vector<Subspace>(up.rbegin(), up.rend()));
}

inline ValidationReport validate(const LieAlgebra& a) {
    ValidationReport r;
    if ((r.violation = check_antisymmetry(a)))
        return r;
    if ((r.violation = check_jacobi(a)))
        return r;
    auto chain = lower_central_chain(a);
    if (chain.back().dim() != 0) {
        r.violation = Violation{Violation::Kind::not_nilpotent};
        return r;
    }
    r.ok = true;
    r.nilpotency_class = chain.size() - 1;
    return r;
}

/// Basis adapted to the flag: rows grouped by layer, layer i rows lying in
/// subspaces[i] and completing subspaces[i+1] to it. Chosen greedily from the
/// echelon rows, so the standard basis is returned whenever it is adapted.
inline Matrix adapted_basis(const Flag& flag) {
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < flag.length(); ++i) {
        std::vector<Vector> current = flag.subspaces[i + 1].vectors();
        std::size_t have = current.size();
        for (const auto& v : flag.subspaces[i].vectors()) {
            current.push_back(v);
            if (rank(Matrix::from_rows(current)) > have) {
                ++have;
                rows.push_back(v);
            } else {
                current.pop_back();
            }
        }
    }
    return Matrix::from_rows(rows);
}

} // namespace scaleinv
