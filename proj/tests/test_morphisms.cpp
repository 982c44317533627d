#include "catalog.hpp"
#include "scaleinv/morphisms/coboundary.hpp"
#include "scaleinv/morphisms/intersection.hpp"
#include "scaleinv/liealg/derivations.hpp"

#include <gtest/gtest.h>

using namespace scaleinv;

namespace {

Vector v(std::initializer_list<long> xs) { return {xs.begin(), xs.end()}; }

Matrix diag(std::initializer_list<long> xs) {
    Vector d(xs.begin(), xs.end());
    return Matrix::diagonal(d);
}

// Automorphism of h3: (e1, e2) -> P, e3 -> det(P) e3 plus e3-components
// (u, w) on the images of e1, e2. With `lattice` the e3-components are chosen
// so that the integer lattice is preserved.
Matrix random_h3_morphism(std::mt19937& rng, bool lattice) {
    std::uniform_int_distribution<int> c(-3, 3);
    for (;;) {
        long p11 = c(rng), p12 = c(rng), p21 = c(rng), p22 = c(rng);
        long det = p11 * p22 - p12 * p21;
        if (det == 0)
            continue;
        Rational u = c(rng), w = c(rng);
        if (lattice) {
            u += make_rational(p11 * p21, 2) - make_rational(p11 * p21 / 2, 1);
            w += make_rational(p12 * p22, 2) - make_rational(p12 * p22 / 2, 1);
        } else {
            u /= 2;
            w /= 3;
        }
        Matrix m{{p11, p12, 0}, {p21, p22, 0}, {0, 0, det}};
        m(2, 0) = u;
        m(2, 1) = w;
        return m;
    }
}

// exp(ad x), an inner automorphism.
Matrix inner_automorphism(const LieAlgebra& a, const Vector& x) {
    Matrix ad = a.ad(x);
    Matrix sum = Matrix::identity(a.dim()), term = Matrix::identity(a.dim());
    for (std::size_t k = 1; k <= a.dim(); ++k) {
        term = term * ad;
        term *= Rational(1, static_cast<long>(k));
        sum += term;
    }
    return sum;
}

Lattice standard_refined(const LieAlgebra& a) {
    return Lattice::refined(MalcevGroup(a), adapted_basis(lower_central_series(a)));
}

} // namespace

TEST(ValidateMorphism, Examples) {
    auto h = catalog::heisenberg();
    EXPECT_NO_THROW(validate_morphism(h, diag({2, 2, 4})));
    EXPECT_THROW(validate_morphism(h, diag({2, 2, 2})), InvalidInput);
    EXPECT_NO_THROW(validate_morphism(h, Matrix::identity(3)));
    EXPECT_THROW(validate_morphism(h, Matrix::identity(2)), DimensionError);
    EXPECT_THROW(validate_morphism(catalog::abelian(2), Matrix{{1, 1}, {1, 1}}), InvalidInput);
    EXPECT_EQ(bracket_incompatibility(h, diag({2, 2, 2})), std::make_pair(std::size_t{0}, std::size_t{1}));
}

TEST(LayerMaps, Examples) {
    Lattice h = Lattice::standard(MalcevGroup(catalog::heisenberg()));
    auto maps = layer_maps(h, LieMorphism{diag({2, 2, 4})});
    ASSERT_EQ(maps.blocks.size(), 2u);
    EXPECT_EQ(maps.blocks[0], diag({2, 2}));
    EXPECT_EQ(maps.blocks[1], diag({4}));

    auto id = layer_maps(h, LieMorphism{Matrix::identity(3)});
    EXPECT_EQ(id.blocks[0], Matrix::identity(2));
    EXPECT_EQ(id.blocks[1], Matrix::identity(1));

    Lattice z2 = Lattice::standard(MalcevGroup(catalog::abelian(2)));
    Matrix cat{{2, 1}, {1, 1}};
    auto zm = layer_maps(z2, LieMorphism{cat});
    ASSERT_EQ(zm.blocks.size(), 1u);
    EXPECT_EQ(zm.blocks[0], cat);
}

TEST(LayerMaps, NonInvariantLatticeReported) {
    Lattice z = Lattice::standard(MalcevGroup(catalog::abelian(1)));
    Matrix half(1, 1);
    half(0, 0) = make_rational(1, 2);
    EXPECT_THROW(layer_maps(z, LieMorphism{half}), PreconditionError);
}

TEST(Classify, Examples) {
    Lattice z2 = Lattice::standard(MalcevGroup(catalog::abelian(2)));
    auto cat = classify(layer_maps(z2, LieMorphism{Matrix{{2, 1}, {1, 1}}}));
    EXPECT_FALSE(cat.has_eigenvalue_one);
    EXPECT_EQ(cat.abs_det, 1);
    EXPECT_TRUE(cat.is_automorphism_of_lattice);
    EXPECT_EQ(cat.verdict, SsiVerdict::not_ssi);

    Lattice h = Lattice::standard(MalcevGroup(catalog::heisenberg()));
    auto ex = classify(layer_maps(h, LieMorphism{diag({2, 2, 4})}));
    EXPECT_TRUE(ex.expanding);
    EXPECT_EQ(ex.verdict, SsiVerdict::ssi_certified);
    EXPECT_EQ(ex.abs_det, 16);

    Lattice z = Lattice::standard(MalcevGroup(catalog::abelian(1)));
    auto id = classify(layer_maps(z, LieMorphism{Matrix::identity(1)}));
    EXPECT_TRUE(id.has_eigenvalue_one);
    EXPECT_EQ(id.verdict, SsiVerdict::not_ssi);
}

TEST(Classify, RootOfUnityAndInconclusive) {
    Lattice z3 = Lattice::standard(MalcevGroup(catalog::abelian(3)));
    // -1 (x) diag(2, 3): -1 is a root of unity
    auto r = classify(layer_maps(z3, LieMorphism{diag({-1, 2, 3})}));
    EXPECT_TRUE(r.has_root_of_unity);
    EXPECT_FALSE(r.has_eigenvalue_one);
    EXPECT_EQ(r.verdict, SsiVerdict::not_ssi);
    // eigenvalues (3 +- sqrt 5)/2 and 4: one eigenvalue inside the disk
    Lattice z3b = Lattice::standard(MalcevGroup(catalog::abelian(3)));
    auto inc = classify(layer_maps(z3b, LieMorphism{Matrix{{2, 1, 0}, {1, 1, 0}, {0, 0, 4}}}));
    EXPECT_FALSE(inc.expanding);
    EXPECT_EQ(inc.abs_det, 4);
    EXPECT_EQ(inc.verdict, SsiVerdict::inconclusive);
}

TEST(Classify, EigenvalueUnionAndIterates) {
    std::mt19937 rng(8);
    Lattice h = Lattice::standard(MalcevGroup(catalog::heisenberg()));
    for (int t = 0; t < 30; ++t) {
        LieMorphism phi{random_h3_morphism(rng, true)};
        ASSERT_FALSE(invariance_failure(h, phi));
        auto maps = layer_maps(h, phi);
        Polynomial prod = Polynomial::constant(1);
        for (const auto& b : maps.blocks)
            prod = prod * charpoly(b);
        EXPECT_EQ(charpoly(maps.adapted), prod);
        EXPECT_EQ(charpoly(phi.matrix), prod);
        const bool expanding = classify(maps).expanding;
        for (unsigned k = 2; k <= 3; ++k)
            EXPECT_EQ(classify(layer_maps(h, morphism_power(phi, k))).expanding, expanding);
    }
}

TEST(Classify, InducedIdentityIsUnipotent) {
    std::mt19937 rng(12);
    for (const auto& a : {catalog::heisenberg(), catalog::filiform(4), catalog::filiform(5),
                          catalog::dixmier_lister()}) {
        Lattice l = standard_refined(a);
        int checked = 0;
        for (int t = 0; t < 5; ++t) {
            Vector x = zero_vector(a.dim());
            std::uniform_int_distribution<int> c(-2, 2);
            for (auto& xi : x)
                xi = 2 * c(rng);  // even steps keep the refined lattice invariant
            LieMorphism phi{inner_automorphism(a, x)};
            ASSERT_TRUE(is_derivation(a, a.ad(x)));
            if (invariance_failure(l, phi))
                continue;
            ++checked;
            auto maps = layer_maps(l, phi);
            ASSERT_EQ(maps.blocks[0], Matrix::identity(maps.blocks[0].rows()));
            for (std::size_t i = 0; i < a.dim(); ++i) {
                EXPECT_EQ(maps.adapted(i, i), 1);
                for (std::size_t j = i + 1; j < a.dim(); ++j)
                    EXPECT_EQ(maps.adapted(i, j), 0);
            }
        }
        EXPECT_GT(checked, 0) << a.dim();
    }
}

TEST(IndexIdentity, PowersMultiply) {
    std::mt19937 rng(31);
    Lattice h = Lattice::standard(MalcevGroup(catalog::heisenberg()));
    std::vector<LieMorphism> cases{LieMorphism{diag({2, 2, 4})}};
    for (int t = 0; t < 4; ++t)
        cases.push_back(LieMorphism{random_h3_morphism(rng, true)});
    for (const auto& phi : cases) {
        auto maps = layer_maps(h, phi);
        const Integer det = maps.abs_det().get_num();
        Integer expected = 1;
        for (unsigned k = 1; k <= 4; ++k) {
            expected *= det;
            EXPECT_EQ(image_index(h, phi, k), IndexValue::finite(expected)) << phi.matrix << k;
        }
    }
    EXPECT_EQ(image_index(h, LieMorphism{diag({2, 2, 4})}, 1), IndexValue::finite(16));
}

TEST(Coboundary, Examples) {
    MalcevGroup z(catalog::abelian(1));
    auto r = coboundary_solve(z, LieMorphism{diag({2})}, v({1}));
    ASSERT_TRUE(r.unique());
    EXPECT_EQ(*r.solution, v({-1}));

    MalcevGroup h(catalog::heisenberg());
    LieMorphism phi{diag({2, 2, 4})};
    auto s = coboundary_solve(h, phi, v({1, 0, 0}));
    ASSERT_TRUE(s.unique());
    EXPECT_EQ((*s.solution)[0], -1);
    EXPECT_EQ((*s.solution)[1], 0);
    EXPECT_EQ(twisted_coboundary(h, phi, *s.solution), v({1, 0, 0}));

    auto id = coboundary_solve(h, LieMorphism{Matrix::identity(3)}, v({1, 2, 3}));
    EXPECT_FALSE(id.unique());
    ASSERT_TRUE(id.fixed_witness);
    EXPECT_FALSE(is_zero(*id.fixed_witness));
}

TEST(Coboundary, RandomHeisenbergUniqueAcrossOrders) {
    std::mt19937 rng(77);
    MalcevGroup h(catalog::heisenberg());
    const Flag lower = lower_central_series(h.algebra());
    const Flag upper = upper_central_series(h.algebra());
    int solved = 0;
    while (solved < 50) {
        LieMorphism phi{random_h3_morphism(rng, false)};
        if (charpoly(phi.matrix)(Rational(1)) == 0)
            continue;
        Vector x = catalog::random_vector(rng, 3);
        auto a = coboundary_solve(h, phi, x, lower);
        auto b = coboundary_solve(h, phi, x, upper);
        ASSERT_TRUE(a.unique());
        ASSERT_TRUE(b.unique());
        EXPECT_EQ(twisted_coboundary(h, phi, *a.solution), x);
        EXPECT_EQ(*a.solution, *b.solution);
        ++solved;
    }
}

TEST(Coboundary, FixedWitnessIsFixed) {
    MalcevGroup l4(catalog::filiform(4));
    LieMorphism phi{inner_automorphism(l4.algebra(), v({1, 1, 0, 0}))};
    auto r = coboundary_solve(l4, phi, v({1, 0, 0, 0}));
    EXPECT_FALSE(r.unique());
    ASSERT_TRUE(r.fixed_witness);
    EXPECT_EQ(phi.apply(*r.fixed_witness), *r.fixed_witness);
}

TEST(ImageMembership, Examples) {
    Lattice h = Lattice::standard(MalcevGroup(catalog::heisenberg()));
    LieMorphism phi{diag({2, 2, 4})};
    EXPECT_TRUE(image_membership(h, phi, 1, v({2, 0, 0})));
    EXPECT_FALSE(image_membership(h, phi, 1, v({1, 0, 0})));
    LieMorphism id{Matrix::identity(3)};
    EXPECT_TRUE(image_membership(h, id, 5, Vector{1, 1, make_rational(1, 2)}));
}

TEST(BoundedIntersection, Examples) {
    Lattice h = Lattice::standard(MalcevGroup(catalog::heisenberg()));
    auto r = bounded_intersection(h, LieMorphism{diag({2, 2, 4})}, 8, 16);
    EXPECT_TRUE(r.trivial());

    auto all = bounded_intersection(h, LieMorphism{Matrix::identity(3)}, 8, 2);
    EXPECT_EQ(all.points.size(), 125u);
    EXPECT_TRUE(std::is_sorted(all.points.begin(), all.points.end(), detail::lex_less));

    Lattice z = Lattice::standard(MalcevGroup(catalog::abelian(1)));
    auto three = bounded_intersection(z, LieMorphism{diag({3})}, 4, 100);
    EXPECT_EQ(three.points, (std::vector<Vector>{v({-81}), v({0}), v({81})}));
}

TEST(BoundedIntersection, PruningAgreesWithExhaustiveSearch) {
    // phi = diag(1, 2, 2) on h3 is not expanding; compare with checking every ball point
    Lattice h = Lattice::standard(MalcevGroup(catalog::heisenberg()));
    LieMorphism phi{diag({1, 2, 2})};
    auto fast = bounded_intersection(h, phi, 2, 4);
    std::vector<Vector> slow;
    for (const auto& c : detail::integer_box(3, 4))
        if (image_membership(h, phi, 1, h.from_second_kind(c)) &&
            image_membership(h, phi, 2, h.from_second_kind(c)))
            slow.push_back(c);
    std::sort(slow.begin(), slow.end(), detail::lex_less);
    EXPECT_EQ(fast.points, slow);
    EXPECT_GT(fast.points.size(), 1u);
}

TEST(BoundedIntersection, FiliformGradingScaling) {
    Lattice l4 = standard_refined(catalog::filiform(4));
    LieMorphism phi{diag({2, 4, 8, 16})};
    ASSERT_NO_THROW(validate_morphism(l4.algebra(), phi.matrix));
    EXPECT_TRUE(bounded_intersection(l4, phi, 8, 16).trivial());
    EXPECT_EQ(image_index(l4, phi, 1), IndexValue::finite(1024));
}
