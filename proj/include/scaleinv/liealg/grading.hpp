#pragma once

#include "scaleinv/core/fourier_motzkin.hpp"
#include "scaleinv/liealg/lie_algebra.hpp"

#include <map>
#include <optional>
#include <vector>

namespace scaleinv {

/// Weight decomposition n = (+) n_w. Column j of basis_change is the j-th
/// weight vector in standard coordinates and carries weights[j].
struct Grading {
    std::vector<Integer> weights;
    Matrix basis_change;

    static Grading diagonal(std::vector<Integer> weights) {
        Grading g;
        g.basis_change = Matrix::identity(weights.size());
        g.weights = std::move(weights);
        return g;
    }

    Integer max_weight() const {
        Integer m = 0;
        for (const auto& w : weights)
            if (w > m)
                m = w;
        return m;
    }

    /// Basis of n_w in standard coordinates.
    std::vector<Vector> weight_space(const Integer& w) const {
        std::vector<Vector> out;
        for (std::size_t j = 0; j < weights.size(); ++j)
            if (weights[j] == w)
                out.push_back(basis_change.column(j));
        return out;
    }

    /// Distinct weights in increasing order.
    std::vector<Integer> distinct_weights() const {
        std::vector<Integer> out(weights);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    friend bool operator==(const Grading&, const Grading&) = default;
};

inline void check_grading_shape(const LieAlgebra& a, const Grading& g) {
    if (g.weights.size() != a.dim() || g.basis_change.rows() != a.dim() ||
        g.basis_change.cols() != a.dim())
        throw DimensionError("grading does not match the algebra dimension");
    for (const auto& w : g.weights)
        if (w < 1)
            throw InvalidInput("grading weights must be positive");
    if (!try_inverse(g.basis_change))
        throw InvalidInput("grading basis change is singular");
}

inline bool verify_grading(const LieAlgebra& a, const Grading& g) {
    check_grading_shape(a, g);
    const LieAlgebra w = change_basis(a, g.basis_change);
    for (const auto& e : w.entries())
        if (g.weights[e.i] + g.weights[e.j] != g.weights[e.k])
            return false;
    return true;
}

/// The derivation acting as multiplication by w on n_w, in standard coordinates.
inline Matrix grading_derivation(const Grading& g) {
    Vector diag;
    for (const auto& w : g.weights)
        diag.emplace_back(w);
    return g.basis_change * Matrix::diagonal(diag) * inverse(g.basis_change);
}

struct GradingSearch {
    std::optional<Grading> grading;
    // Present when the diagonal search is infeasible. This only rules out
    // gradings diagonal in the supplied basis.
    std::optional<InfeasibilityCertificate> certificate;
    Matrix constraints;  // one row w_i + w_j - w_k per nonzero c_ij^k, i < j

    bool found() const { return grading.has_value(); }
};

inline Matrix grading_constraints(const LieAlgebra& a) {
    const std::size_t d = a.dim();
    std::vector<Vector> rows;
    for (const auto& e : a.entries()) {
        if (e.i >= e.j)
            continue;
        Vector r = zero_vector(d);
        r[e.i] += 1;
        r[e.j] += 1;
        r[e.k] -= 1;
        if (std::find(rows.begin(), rows.end(), r) == rows.end())
            rows.push_back(std::move(r));
    }
    return rows.empty() ? Matrix(0, d) : Matrix::from_rows(rows);
}

inline GradingSearch find_positive_grading(const LieAlgebra& a) {
    GradingSearch out;
    out.constraints = grading_constraints(a);
    auto lp = positive_lp_feasible(out.constraints, a.dim());
    if (!lp.feasible) {
        out.certificate = std::move(lp.certificate);
        return out;
    }
    Grading g = Grading::diagonal(std::move(lp.weights));
    if (!verify_grading(a, g))
        throw std::logic_error("diagonal grading from the LP fails verification");
    out.grading = std::move(g);
    return out;
}

} // namespace scaleinv
