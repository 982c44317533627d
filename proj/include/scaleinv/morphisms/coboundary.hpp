#pragma once

#include "scaleinv/morphisms/morphism.hpp"

namespace scaleinv {

struct CoboundaryResult {
    std::optional<GroupElement> solution;        // y with x = y phi(y)^-1
    std::optional<GroupElement> fixed_witness;   // nonzero exp(X) with phi(X) = X, when 1 is an eigenvalue

    bool unique() const { return solution.has_value(); }

    friend bool operator==(const CoboundaryResult&, const CoboundaryResult&) = default;
};

/// Nonzero fixed vector of the morphism, if 1 is an eigenvalue.
inline std::optional<GroupElement> fixed_vector(const LieMorphism& phi) {
    const std::size_t d = phi.matrix.rows();
    auto ns = nullspace(phi.matrix - Matrix::identity(d));
    if (ns.empty())
        return std::nullopt;
    return ns.front();
}

/// Solves x = y phi(y)^-1 layer by layer along a central series flag
/// (each [n, F_i] inside F_{i+1}, each F_i phi-invariant): on F_i / F_{i+1}
/// the equation is linear, (I - phi_i) y_i = x_i, and the correction
/// y_i^-1 x_i phi(y_i) lies in F_{i+1}.
inline CoboundaryResult coboundary_solve(const MalcevGroup& group, const LieMorphism& phi,
                                         const GroupElement& x, const Flag& flag) {
    const std::size_t d = group.dim();
    if (phi.matrix.rows() != d || phi.matrix.cols() != d || x.size() != d)
        throw DimensionError("coboundary input does not match the algebra dimension");
    CoboundaryResult out;
    if (charpoly(phi.matrix)(Rational(1)) == 0) {
        out.fixed_witness = fixed_vector(phi);
        return out;
    }
    const Matrix basis = adapted_basis(flag).transpose();
    const Matrix coords = inverse(basis);
    for (std::size_t i = 0; i < flag.length(); ++i)
        for (const auto& v : flag.subspaces[i].vectors())
            if (!flag.subspaces[i].contains(phi.apply(v)))
                throw PreconditionError("flag is not invariant under the morphism");
    const Matrix adapted = coords * phi.matrix * basis;

    GroupElement y = group.identity();
    GroupElement rem = x;
    std::size_t start = 0;
    for (std::size_t m : flag.layer_dims) {
        Matrix block = adapted.block(start, start, m, m);
        Vector c = coords * rem;
        Vector rhs(c.begin() + static_cast<long>(start), c.begin() + static_cast<long>(start + m));
        auto sol = solve(Matrix::identity(m) - block, rhs);
        if (!sol)
            throw std::logic_error("layer system singular without eigenvalue 1");
        Vector yi = zero_vector(d);
        for (std::size_t k = 0; k < m; ++k)
            yi = add(yi, scale((*sol)[k], basis.column(start + k)));
        rem = group.mul(group.mul(group.inverse(yi), rem), phi.apply(yi));
        y = group.mul(y, yi);
        start += m;
    }
    if (!is_zero(rem))
        throw std::logic_error("coboundary recursion left a remainder");
    out.solution = std::move(y);
    return out;
}

inline CoboundaryResult coboundary_solve(const MalcevGroup& group, const LieMorphism& phi,
                                         const GroupElement& x) {
    return coboundary_solve(group, phi, x, lower_central_series(group.algebra()));
}

/// y phi(y)^-1
inline GroupElement twisted_coboundary(const MalcevGroup& group, const LieMorphism& phi,
                                       const GroupElement& y) {
    return group.mul(y, group.inverse(phi.apply(y)));
}

} // namespace scaleinv
