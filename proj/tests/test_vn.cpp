#include "vn_catalog.hpp"

#include <gtest/gtest.h>

using namespace scaleinv;

namespace {

Matrix diag(std::initializer_list<long> xs) {
    Vector d(xs.begin(), xs.end());
    return Matrix::diagonal(d);
}

SemidirectElement random_element(std::mt19937& rng, const VNGroup& g) {
    std::uniform_int_distribution<std::size_t> f(0, g.finite_group().order() - 1);
    return {catalog::random_vector(rng, g.dim(), 3, 3), f(rng)};
}

std::vector<Vector> grid(std::size_t d, const std::vector<Rational>& values) {
    std::vector<Vector> out{Vector{}};
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<Vector> next;
        for (const auto& v : out)
            for (const auto& c : values) {
                Vector w = v;
                w.push_back(c);
                next.push_back(w);
            }
        out = std::move(next);
    }
    return out;
}

} // namespace

TEST(FiniteGroup, TablesValidated) {
    const auto c3 = FiniteGroup::cyclic(3);
    EXPECT_EQ(c3.order(), 3u);
    EXPECT_EQ(c3.inverse(1), 2u);
    const auto k4 = FiniteGroup::product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
    for (std::size_t a = 0; a < 4; ++a)
        EXPECT_EQ(k4.mul(a, a), k4.identity());
    EXPECT_THROW(FiniteGroup({{0, 1}, {0, 1}}), InvalidInput);
    EXPECT_THROW(FiniteGroup({{0, 1, 2}, {1, 0, 2}, {2, 2, 0}}), InvalidInput);
    EXPECT_THROW(FiniteGroup({{0, 1}, {1}}), InvalidInput);
}

TEST(Action, Validated) {
    const auto a = catalog::abelian(1);
    const auto z2 = FiniteGroup::cyclic(2);
    EXPECT_THROW(Action(a, z2, {vn_catalog::scalar(1), vn_catalog::scalar(2)}), InvalidInput);
    EXPECT_THROW(Action(a, z2, {vn_catalog::scalar(-1), vn_catalog::scalar(-1)}), InvalidInput);
    const auto h = catalog::heisenberg();
    EXPECT_THROW(Action(h, z2, {Matrix::identity(3), diag({-1, 1, 1})}), InvalidInput);
    Action rho(a, z2, {vn_catalog::scalar(1), vn_catalog::scalar(-1)});
    EXPECT_EQ(rho.kernel(), std::vector<std::size_t>{0});
}

TEST(Semidirect, Examples) {
    const auto g = vn_catalog::z_rtimes_z2_i1();
    EXPECT_EQ(g.mul({Vector{1}, 1}, {Vector{1}, 1}), (SemidirectElement{Vector{0}, 0}));
    EXPECT_EQ(g.mul(g.identity(), {Vector{5}, 1}), (SemidirectElement{Vector{5}, 1}));
    const auto h = vn_catalog::h3_rtimes_z2();
    const Vector x{1, 2, 3}, y{-1, 1, 0};
    EXPECT_EQ(h.mul({x, 0}, {y, 0}), (SemidirectElement{h.group().mul(x, y), 0}));
}

TEST(Semidirect, GroupAxioms) {
    std::mt19937 rng(99);
    for (const auto& g : {vn_catalog::h3_rtimes_z2(), vn_catalog::z_rtimes_z2_i2()}) {
        for (int t = 0; t < 200; ++t) {
            const auto a = random_element(rng, g), b = random_element(rng, g), c = random_element(rng, g);
            ASSERT_EQ(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
        }
        for (int t = 0; t < 50; ++t) {
            const auto a = random_element(rng, g);
            const auto inv = g.inverse(a);
            const std::size_t fi = g.finite_group().inverse(a.f);
            EXPECT_EQ(inv, (SemidirectElement{g.action()(fi) * g.group().inverse(a.x), fi}));
            EXPECT_EQ(g.mul(a, inv), g.identity());
            EXPECT_EQ(g.mul(inv, a), g.identity());
        }
    }
}

TEST(VNGroup, RejectsBrokenCosetData) {
    const auto a = catalog::abelian(1);
    FiniteGroup f = FiniteGroup::cyclic(2);
    Action rho(a, f, {vn_catalog::scalar(1), vn_catalog::scalar(-1)});
    const Lattice z = Lattice::standard(MalcevGroup(a));
    // (1/2, -1)^2 = (0, 1) is fine, but the identity coset must be in N
    EXPECT_THROW(VNGroup(z, f, rho, {{0, Vector{make_rational(1, 2)}}}), InvalidInput);
    // trivial action with translation 1/2 over h: (1/2, h)^2 = (1, e) is in N, so this is Z
    FiniteGroup e2(FiniteGroup::cyclic(2).table());
    EXPECT_NO_THROW(VNGroup(z, e2, Action::trivial(a, e2), {{1, Vector{make_rational(1, 2)}}}));
    // translation 1/3 over h: (1/3, h)^2 = (2/3, e) is not in N
    EXPECT_THROW(VNGroup(z, e2, Action::trivial(a, e2), {{1, Vector{make_rational(1, 3)}}}), InvalidInput);
}

TEST(Centralizer, Examples) {
    const auto i1 = vn_catalog::z_rtimes_z2_i1();
    const auto c1 = centralizer_of_lattice(i1);
    EXPECT_EQ(c1.center.dim(), 1u);
    EXPECT_EQ(c1.kernel, std::vector<std::size_t>{0});

    const auto h = vn_catalog::torsion_free(Lattice::standard(MalcevGroup(catalog::heisenberg())));
    const auto ch = centralizer_of_lattice(h);
    EXPECT_EQ(ch.center, Subspace({Vector{0, 0, 1}}, 3));
    EXPECT_EQ(ch.kernel.size(), 1u);

    const auto zz = vn_catalog::z_times_z2();
    EXPECT_EQ(centralizer_of_lattice(zz).kernel.size(), 2u);
}

TEST(Centralizer, FormulaMatchesBruteForce) {
    const std::vector<Rational> values{0, 1, -1, make_rational(1, 2)};
    for (const auto& g : {vn_catalog::h3_rtimes_z2(), vn_catalog::z_rtimes_z2_i1(), vn_catalog::z_times_z2(),
                          vn_catalog::torsion_free(Lattice::standard(MalcevGroup(catalog::heisenberg())))}) {
        const auto c = centralizer_of_lattice(g);
        int inside = 0;
        for (const auto& x : grid(g.dim(), values))
            for (std::size_t f = 0; f < g.finite_group().order(); ++f) {
                const SemidirectElement a{x, f};
                const bool brute = centralizes_lattice(g, a);
                EXPECT_EQ(brute, c.contains(a)) << to_string(x) << " " << f;
                inside += brute;
            }
        EXPECT_GT(inside, 0);
    }
}

TEST(MaxFiniteNormal, Examples) {
    const auto i2 = max_finite_normal(vn_catalog::z_rtimes_z2_i2());
    ASSERT_EQ(i2.size(), 1u);
    EXPECT_TRUE(is_zero(i2.front().x));
    EXPECT_EQ(max_finite_normal(vn_catalog::z_rtimes_z2_i1()).size(), 1u);
    const auto zz = vn_catalog::z_times_z2();
    const auto h = max_finite_normal(zz);
    ASSERT_EQ(h.size(), 2u);
    EXPECT_EQ(h[1], (SemidirectElement{Vector{0}, 1}));
    // the elements are torsion and normal
    for (const auto& a : h)
        for (const auto& gen : zz.generators())
            EXPECT_TRUE(std::find(h.begin(), h.end(), zz.conjugate(gen, a)) != h.end());
}

TEST(Conjugator, SemidirectExample) {
    const auto g = vn_catalog::z_rtimes_z2_i1();
    EXPECT_FALSE(verify_conjugator(g, Vector{0}));
    EXPECT_TRUE(verify_conjugator(g, Vector{make_rational(1, 4)}));
    EXPECT_FALSE(verify_conjugator(g, Vector{make_rational(1, 2)}));
    const auto r = conjugator_search(g);
    EXPECT_EQ(r.direction, Vector{1});
    EXPECT_NE(std::find(r.family.begin(), r.family.end(), 4), r.family.end());
    EXPECT_EQ(r.family.front(), 3);
    // translation of x b x^-1 is 2x; it leaves Z exactly when m does not divide 2
    for (long m = 1; m <= 16; ++m)
        EXPECT_EQ(std::find(r.family.begin(), r.family.end(), m) != r.family.end(), 2 % m != 0) << m;
}

TEST(Conjugator, TrivialActionAndHeisenberg) {
    const auto zz = vn_catalog::z_times_z2();
    const auto r = conjugator_search(zz);
    EXPECT_TRUE(r.trivial);
    EXPECT_TRUE(is_zero(r.x));

    const auto h = vn_catalog::h3_rtimes_z2();
    const auto c = conjugator_search(h);
    ASSERT_FALSE(c.trivial);
    EXPECT_NE(c.x[0], 0);
    EXPECT_GT(c.x[0].get_den(), 1);
    EXPECT_TRUE(verify_conjugator(h, c.x));
    // after conjugation the coset over -1 has no element with trivial translation
    const SemidirectElement xe{c.x, 0};
    const auto s = h.conjugate(xe, {zero_vector(3), 1});
    EXPECT_FALSE(is_integral(h.lattice().to_second_kind(s.x)));
}

TEST(ExpandingEndo, Examples) {
    const auto g = vn_catalog::z_rtimes_z2_i1();
    const auto e = build_expanding_endo(g, Grading::diagonal({1}), 3);
    EXPECT_EQ(e.matrix, vn_catalog::scalar(3));
    EXPECT_EQ(e.k, 1u);

    const auto h = vn_catalog::torsion_free(Lattice::standard(MalcevGroup(catalog::heisenberg())));
    const auto eh = build_expanding_endo(h, Grading::diagonal({1, 1, 2}), 2);
    EXPECT_EQ(eh.matrix, diag({2, 2, 4}));
    EXPECT_EQ(eh.k, 1u);

    const auto ec = build_expanding_endo(g, Grading::diagonal({1}), 3, Vector{make_rational(1, 4)});
    EXPECT_EQ(ec.k, 1u);
    const SsiMorphism phi(g, ec.matrix, Vector{make_rational(1, 4)});
    EXPECT_EQ(g.word(phi.apply({Vector{1}, 0})), "a^3");
    EXPECT_EQ(g.word(phi.apply({Vector{0}, 1})), "a*b");
    // with x = 1/4 no power of 2 works
    EXPECT_THROW(build_expanding_endo(g, Grading::diagonal({1}), 2, Vector{make_rational(1, 4)}, 8),
                 PreconditionError);
}

TEST(ExpandingEndo, CommutesWithAction) {
    for (const auto& g : {vn_catalog::h3_rtimes_z2(), vn_catalog::z_rtimes_z2_i1(), vn_catalog::z_rtimes_z2_i2()}) {
        const auto gr = find_positive_grading(g.algebra());
        ASSERT_TRUE(gr.found());
        for (unsigned long p : {2ul, 3ul, 5ul}) {
            const Matrix phi_p = weight_scaling(invariant_grading(g, *gr.grading), p);
            for (const auto& m : g.action().images())
                EXPECT_EQ(phi_p * m, m * phi_p);
        }
        const auto e = build_expanding_endo(g, *gr.grading, 3);
        for (const auto& m : g.action().images())
            EXPECT_EQ(e.matrix * m, m * e.matrix);
    }
}

TEST(ExpandingEndo, AveragingRepairsGrading) {
    // Z^2 with the swap; weights (1, 2) on the standard basis are not swap-invariant
    const auto a = catalog::abelian(2);
    FiniteGroup f = FiniteGroup::cyclic(2);
    Action rho(a, f, {Matrix::identity(2), Matrix{{0, 1}, {1, 0}}});
    VNGroup g(Lattice::standard(MalcevGroup(a)), f, rho, {{1, zero_vector(2)}});
    const Grading uneven = Grading::diagonal({1, 2});
    EXPECT_FALSE(grading_preserved(g, uneven));
    EXPECT_FALSE(average_grading(g, uneven));
    EXPECT_THROW(build_expanding_endo(g, uneven, 2), PreconditionError);
    // a grading with a single weight is preserved
    EXPECT_TRUE(grading_preserved(g, Grading::diagonal({1, 1})));
    // L4-type grading in a skewed basis: the average is again a grading
    const auto h = catalog::heisenberg();
    FiniteGroup z2 = FiniteGroup::cyclic(2);
    Action swap(h, z2, {Matrix::identity(3), Matrix{{0, 1, 0}, {1, 0, 0}, {0, 0, -1}}});
    VNGroup hs(Lattice::standard(MalcevGroup(h)), z2, swap, {{1, zero_vector(3)}});
    Grading skew;
    skew.weights = {1, 1, 2};
    skew.basis_change = Matrix{{1, 0, 0}, {0, 1, 0}, {1, 0, 1}};
    ASSERT_TRUE(verify_grading(h, skew));
    EXPECT_FALSE(grading_preserved(hs, skew));
    const auto avg = average_grading(hs, skew);
    ASSERT_TRUE(avg);
    EXPECT_TRUE(grading_preserved(hs, *avg));
    EXPECT_NO_THROW(build_expanding_endo(hs, skew, 2));
}

TEST(ConstructSsi, SemidirectWorkedExample) {
    const auto g = vn_catalog::z_rtimes_z2_i1();
    const auto r = construct_ssi(g);
    ASSERT_EQ(r.status, SsiStatus::constructed) << r.message;
    EXPECT_EQ(r.p, 3u);
    EXPECT_EQ(r.k, 1u);
    EXPECT_EQ(r.m, 4);
    EXPECT_EQ(r.conjugator.x, Vector{make_rational(1, 4)});
    EXPECT_EQ(r.summary(), "phi(a)=a^3, phi(b)=a*b; intersection(ball)=trivial");
    EXPECT_TRUE(r.intersection_matches);
    EXPECT_EQ(r.lattice_report.verdict, SsiVerdict::ssi_certified);
}

TEST(ConstructSsi, IntersectionMatchesStepwiseIteration) {
    // one-shot membership in phi^8(Gamma) against pulling back one step at a time
    const auto g = vn_catalog::z_rtimes_z2_i1();
    const auto r = construct_ssi(g);
    std::vector<SemidirectElement> stepwise;
    for (const auto& rep : g.reps())
        for (long z = -16; z <= 16; ++z) {
            SemidirectElement a = g.from_normal_form(Vector{z}, rep.f), cur = a;
            bool in = true;
            for (int n = 0; n < 8 && in; ++n) {
                cur = r.morphism.apply_inverse(cur);
                in = g.contains(cur);
            }
            if (in)
                stepwise.push_back(a);
        }
    EXPECT_EQ(stepwise, r.intersection.elements);
}

TEST(ConstructSsi, CatalogGroups) {
    const auto h = vn_catalog::torsion_free(Lattice::standard(MalcevGroup(catalog::heisenberg())));
    const auto rh = construct_ssi(h);
    ASSERT_EQ(rh.status, SsiStatus::constructed);
    EXPECT_EQ(rh.morphism.matrix(), diag({2, 2, 4}));
    EXPECT_EQ(rh.intersection.elements.size(), 1u);
    EXPECT_TRUE(rh.intersection_matches);

    for (const auto& g : {vn_catalog::h3_rtimes_z2(), vn_catalog::z_rtimes_z2_i2(), vn_catalog::z_times_z2()}) {
        const auto r = construct_ssi(g);
        ASSERT_EQ(r.status, SsiStatus::constructed) << r.message;
        EXPECT_TRUE(r.intersection_matches) << r.summary();
        EXPECT_EQ(r.lattice_report.verdict, SsiVerdict::ssi_certified);
        for (const auto& gen : g.generators())
            EXPECT_TRUE(g.contains(r.morphism.apply(gen)));
    }
    const auto zz = construct_ssi(vn_catalog::z_times_z2());
    EXPECT_EQ(zz.intersection.elements.size(), 2u);
}

TEST(ConstructSsi, CharacteristicallyNilpotentIsNotConstructible) {
    const auto dl = vn_catalog::torsion_free(vn_catalog::refined_standard(catalog::dixmier_lister()));
    const auto r = construct_ssi(dl);
    EXPECT_EQ(r.status, SsiStatus::not_constructible);
    ASSERT_TRUE(r.nilpotence);
    EXPECT_TRUE(r.nilpotence->all_nilpotent);
    EXPECT_EQ(r.summary(), "NOT_CONSTRUCTIBLE: no positive grading: every derivation is nilpotent");
}
