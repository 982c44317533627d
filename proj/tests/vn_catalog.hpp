#pragma once

// Virtually nilpotent catalog groups built in code.

#include "catalog.hpp"
#include "scaleinv/vn/construction.hpp"

namespace vn_catalog {

using namespace scaleinv;

inline Matrix scalar(long v) { return Matrix::diagonal(Vector{Rational(v)}); }

/// Z x| Z_2 with Z_2 = {1, -1} acting by multiplication, embedded via
/// (z, t) -> (z, t). Element 0 of F is 1, element 1 is -1.
inline VNGroup z_rtimes_z2_i1() {
    const LieAlgebra a = catalog::abelian(1);
    FiniteGroup f(FiniteGroup::cyclic(2).table(), {"+1", "-1"});
    Action rho(a, f, {scalar(1), scalar(-1)});
    VNGroup g(Lattice::standard(MalcevGroup(a)), f, rho, {{0, Vector{0}}, {1, Vector{0}}});
    g.set_lattice_names({"a"});
    g.set_coset_name(1, "b");
    return g;
}

/// The same group over F = Z_2 + Z_2 with rho(t1, t2) = t1 and N = 2Z;
/// (z, t) goes to (z, t, (-1)^z).
inline VNGroup z_rtimes_z2_i2() {
    const LieAlgebra a = catalog::abelian(1);
    const FiniteGroup z2 = FiniteGroup::cyclic(2);
    FiniteGroup f(FiniteGroup::product(z2, z2).table(), {"(+1,+1)", "(+1,-1)", "(-1,+1)", "(-1,-1)"});
    Action rho(a, f, {scalar(1), scalar(1), scalar(-1), scalar(-1)});
    Lattice n(MalcevGroup(a), Matrix::diagonal(Vector{Rational(2)}));
    VNGroup g(n, f, rho, {{0, Vector{0}}, {1, Vector{1}}, {2, Vector{0}}, {3, Vector{1}}});
    g.set_lattice_names({"a2"});
    g.set_coset_name(1, "a");
    g.set_coset_name(2, "b");
    g.set_coset_name(3, "ab");
    return g;
}

/// h3 x| Z_2 with rho(-1) = diag(-1, 1, -1), split over the integer lattice.
inline VNGroup h3_rtimes_z2() {
    const LieAlgebra a = catalog::heisenberg();
    FiniteGroup f(FiniteGroup::cyclic(2).table(), {"+1", "-1"});
    Matrix r = Matrix::identity(3);
    r(0, 0) = -1;
    r(2, 2) = -1;
    Action rho(a, f, {Matrix::identity(3), r});
    VNGroup g(Lattice::standard(MalcevGroup(a)), f, rho, {{0, zero_vector(3)}, {1, zero_vector(3)}});
    g.set_lattice_names({"x", "y", "z"});
    g.set_coset_name(1, "s");
    return g;
}

/// N with trivial F.
inline VNGroup torsion_free(const Lattice& l) {
    FiniteGroup f = FiniteGroup::trivial();
    return VNGroup(l, f, Action::trivial(l.algebra(), f), {});
}

/// Z x Z_2, the Z_2 factor acting trivially.
inline VNGroup z_times_z2() {
    const LieAlgebra a = catalog::abelian(1);
    FiniteGroup f(FiniteGroup::cyclic(2).table(), {"e", "h"});
    VNGroup g(Lattice::standard(MalcevGroup(a)), f, Action::trivial(a, f), {{0, Vector{0}}, {1, Vector{0}}});
    g.set_lattice_names({"a"});
    g.set_coset_name(1, "h");
    return g;
}

inline Lattice refined_standard(const LieAlgebra& a) {
    return Lattice::refined(MalcevGroup(a), adapted_basis(lower_central_series(a)));
}

} // namespace vn_catalog
