#pragma once

#include "scaleinv/core/roots.hpp"
#include "scaleinv/malcev/lattice.hpp"

#include <optional>
#include <string>
#include <vector>

namespace scaleinv {

/// An automorphism of the rational Lie algebra; column j is the image of e_j.
/// Acts linearly on first-kind coordinates.
struct LieMorphism {
    Matrix matrix;

    GroupElement apply(const GroupElement& x) const { return matrix * x; }
    friend bool operator==(const LieMorphism&, const LieMorphism&) = default;
};

/// First basis pair (i, j) with phi[e_i, e_j] != [phi e_i, phi e_j].
inline std::optional<std::pair<std::size_t, std::size_t>> bracket_incompatibility(const LieAlgebra& a,
                                                                                 const Matrix& m) {
    const std::size_t d = a.dim();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j)
            if (m * a.bracket_basis(i, j) != a.bracket(m.column(i), m.column(j)))
                return std::make_pair(i, j);
    return std::nullopt;
}

inline LieMorphism validate_morphism(const LieAlgebra& a, const Matrix& m) {
    if (m.rows() != a.dim() || m.cols() != a.dim())
        throw DimensionError("morphism matrix must be " + std::to_string(a.dim()) + "x" +
                             std::to_string(a.dim()));
    if (auto bad = bracket_incompatibility(a, m))
        throw InvalidInput("morphism is not bracket compatible on pair (" +
                           std::to_string(bad->first + 1) + "," + std::to_string(bad->second + 1) + ")");
    if (determinant(m) == 0)
        throw InvalidInput("morphism is singular, so it is not an automorphism of the rational completion");
    return LieMorphism{m};
}

inline LieMorphism compose(const LieMorphism& f, const LieMorphism& g) {
    return LieMorphism{f.matrix * g.matrix};
}

inline LieMorphism morphism_power(const LieMorphism& f, unsigned long k) {
    return LieMorphism{matrix_power(f.matrix, k)};
}

/// Columns are the adapted basis vectors of the lattice.
inline Matrix adapted_columns(const Lattice& l) { return l.basis().transpose(); }

/// Generator whose image leaves the lattice, if any.
inline std::optional<std::size_t> invariance_failure(const Lattice& l, const LieMorphism& phi) {
    for (std::size_t i = 0; i < l.dim(); ++i)
        if (!l.contains(phi.apply(l.generators()[i])))
            return i;
    return std::nullopt;
}

struct LayerMaps {
    std::vector<Matrix> blocks;  // integer maps on the layer quotients Z^{m_i}
    Matrix adapted;              // the morphism in the adapted basis, block lower triangular

    Rational abs_det() const {
        Rational p = 1;
        for (const auto& b : blocks)
            p *= abs(determinant(b));
        return p;
    }
};

inline LayerMaps layer_maps(const Lattice& l, const LieMorphism& phi) {
    if (phi.matrix.rows() != l.dim() || phi.matrix.cols() != l.dim())
        throw DimensionError("morphism does not match the lattice dimension");
    if (auto bad = invariance_failure(l, phi))
        throw PreconditionError("lattice is not invariant: generator " + std::to_string(*bad + 1) +
                                " maps to " + to_string(phi.apply(l.generators()[*bad])) +
                                ", which has non-integral second-kind coordinates");
    LayerMaps out;
    out.adapted = change_of_basis(phi.matrix, adapted_columns(l));
    std::size_t start = 0;
    for (std::size_t m : l.layer_dims()) {
        Matrix b = out.adapted.block(start, start, m, m);
        if (!b.is_integral())
            throw std::logic_error("layer map of an invariant lattice is not integral");
        if (determinant(b) == 0)
            throw PreconditionError("morphism is not injective on layer " +
                                    std::to_string(out.blocks.size() + 1));
        out.blocks.push_back(std::move(b));
        start += m;
    }
    return out;
}

enum class SsiVerdict { not_ssi, ssi_certified, inconclusive };

inline std::string to_string(SsiVerdict v) {
    switch (v) {
    case SsiVerdict::not_ssi: return "NOT_SSI";
    case SsiVerdict::ssi_certified: return "SSI_CERTIFIED";
    default: return "INCONCLUSIVE";
    }
}

struct EigenReport {
    std::vector<Polynomial> char_polys;
    bool has_eigenvalue_one = false;
    bool has_root_of_unity = false;
    bool expanding = false;
    bool is_automorphism_of_lattice = false;
    Rational abs_det = 0;
    SsiVerdict verdict = SsiVerdict::inconclusive;
    std::string reason;

    friend bool operator==(const EigenReport&, const EigenReport&) = default;
};

inline EigenReport classify(const LayerMaps& maps) {
    EigenReport r;
    r.expanding = true;
    for (const auto& b : maps.blocks) {
        Polynomial p = charpoly(b);
        if (p(Rational(1)) == 0)
            r.has_eigenvalue_one = true;
        if (p.degree() > 0) {
            if (!cyclotomic_factors(p).empty())
                r.has_root_of_unity = true;
            // all roots of p outside the closed disk <=> all roots of reverse(p) inside the open disk
            Polynomial rev = p.reversed();
            if (rev.degree() != p.degree() || unit_disk_root_analysis(rev).inside != rev.degree())
                r.expanding = false;
        }
        r.char_polys.push_back(std::move(p));
    }
    r.abs_det = maps.abs_det();
    r.is_automorphism_of_lattice = r.abs_det == 1;
    if (r.has_eigenvalue_one) {
        r.verdict = SsiVerdict::not_ssi;
        r.reason = "1 is an eigenvalue";
    } else if (r.is_automorphism_of_lattice) {
        r.verdict = SsiVerdict::not_ssi;
        r.reason = "automorphism of an infinite group";
    } else if (r.has_root_of_unity) {
        r.verdict = SsiVerdict::not_ssi;
        r.reason = "root of unity eigenvalue: some power has eigenvalue 1";
    } else if (r.expanding) {
        r.verdict = SsiVerdict::ssi_certified;
        r.reason = "expanding";
    } else {
        r.verdict = SsiVerdict::inconclusive;
        r.reason = "eigenvalues inside or on the unit circle";
    }
    return r;
}

} // namespace scaleinv
