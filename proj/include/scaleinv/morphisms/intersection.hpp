#pragma once

#include "scaleinv/morphisms/morphism.hpp"

#include <algorithm>

namespace scaleinv {

/// Whether y lies in phi^n(N), i.e. phi^-n(y) is a lattice point.
inline bool image_membership(const Lattice& l, const LieMorphism& phi, unsigned long n,
                             const GroupElement& y) {
    Matrix inv = inverse(phi.matrix);
    return l.contains(matrix_power(inv, n) * y);
}

/// [N : phi^k(N)], from the images of the lattice generators.
inline IndexValue image_index(const Lattice& l, const LieMorphism& phi, unsigned long k) {
    Matrix mk = matrix_power(phi.matrix, k);
    std::vector<GroupElement> gens;
    for (const auto& g : l.generators())
        gens.push_back(mk * g);
    return sublattice_index(l, gens);
}

struct BoundedIntersection {
    unsigned long depth = 0;
    long ball = 0;
    std::vector<Vector> points;  // second-kind coordinates, sorted

    bool trivial() const { return points.size() == 1 && is_zero(points.front()); }

    friend bool operator==(const BoundedIntersection&, const BoundedIntersection&) = default;
};

namespace detail {

inline bool lex_less(const Vector& a, const Vector& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

/// Integer vectors in [-ball, ball]^m.
inline std::vector<Vector> integer_box(std::size_t m, long ball) {
    std::vector<Vector> out;
    std::vector<long> c(m, -ball);
    for (;;) {
        out.emplace_back(c.begin(), c.end());
        std::size_t i = 0;
        while (i < m && c[i] == ball)
            c[i++] = -ball;
        if (i == m)
            break;
        ++c[i];
    }
    return out;
}

} // namespace detail

/// Lattice points with second-kind coordinates in [-ball, ball] that lie in
/// phi^n(N) for every n <= depth. The images are nested, so only n = depth is
/// tested. Layers are enumerated top-down: while every earlier layer is zero,
/// a point of layer i can only lie in the image if its layer coordinates lie
/// in phi_i^depth(Z^{m_i}), which prunes the box.
inline BoundedIntersection bounded_intersection(const Lattice& l, const LieMorphism& phi,
                                                unsigned long depth = 8, long ball = 16) {
    if (ball < 0)
        throw InvalidInput("ball radius must be nonnegative");
    const LayerMaps maps = layer_maps(l, phi);
    std::vector<Matrix> layer_inverse_power;
    for (const auto& b : maps.blocks)
        layer_inverse_power.push_back(matrix_power(inverse(b), depth));
    const Matrix inv_power = matrix_power(inverse(phi.matrix), depth);

    BoundedIntersection out;
    out.depth = depth;
    out.ball = ball;
    const std::size_t layers = maps.blocks.size();
    Vector coords = zero_vector(l.dim());

    auto test_point = [&] {
        if (l.contains(inv_power * l.from_second_kind(coords)))
            out.points.push_back(coords);
    };
    // enumerate layer `i` onward; `zero_prefix` says all earlier layers vanish
    auto recurse = [&](std::size_t i, bool zero_prefix, auto&& self) -> void {
        if (i == layers) {
            test_point();
            return;
        }
        const std::size_t start = l.layer_start(i), m = l.layer_dims()[i];
        for (const auto& c : detail::integer_box(m, ball)) {
            const bool zero = is_zero(c);
            if (zero_prefix && !zero && !is_integral(layer_inverse_power[i] * c))
                continue;
            for (std::size_t k = 0; k < m; ++k)
                coords[start + k] = c[k];
            self(i + 1, zero_prefix && zero, self);
        }
        for (std::size_t k = 0; k < m; ++k)
            coords[start + k] = 0;
    };
    recurse(0, true, recurse);
    std::sort(out.points.begin(), out.points.end(), detail::lex_less);
    return out;
}

} // namespace scaleinv
