#include "catalog.hpp"
#include "reidemeister_oracle.hpp"
#include "scaleinv/reidemeister/reidemeister.hpp"

#include <gtest/gtest.h>

using namespace scaleinv;

namespace {

Matrix diag(std::initializer_list<long> xs) {
    Vector d(xs.begin(), xs.end());
    return Matrix::diagonal(d);
}

// [[2,1],[1,1]] on the abelianization; the e3 entry keeps the integer lattice invariant
Matrix cat_on_h3() {
    Matrix m{{2, 1, 0}, {1, 1, 0}, {0, 0, 1}};
    m(2, 1) = make_rational(1, 2);
    return m;
}

Lattice standard(const LieAlgebra& a) { return Lattice::standard(MalcevGroup(a)); }

std::vector<long> finite_values(const std::vector<ReidemeisterValue>& seq) {
    std::vector<long> out;
    for (const auto& r : seq)
        out.push_back(r.is_infinite() ? -1 : r.value->get_si());
    return out;
}

// Coefficients of exp(sum_n R_n z^n / n) from n Z_n = sum_k R_k Z_{n-k}.
std::vector<Rational> exp_series(const std::vector<ReidemeisterValue>& r, std::size_t terms) {
    std::vector<Rational> z(terms, Rational(0));
    z[0] = 1;
    for (std::size_t n = 1; n < terms; ++n) {
        Rational s = 0;
        for (std::size_t k = 1; k <= n; ++k)
            s += Rational(*r[k - 1].value) * z[n - k];
        z[n] = s / static_cast<long>(n);
    }
    return z;
}

} // namespace

TEST(ReidemeisterAbelian, Examples) {
    EXPECT_EQ(reidemeister_abelian(diag({2})), ReidemeisterValue::finite(1));
    EXPECT_TRUE(reidemeister_abelian(Matrix::identity(3)).is_infinite());
    EXPECT_EQ(reidemeister_abelian(Matrix{{2, 1}, {1, 1}}), ReidemeisterValue::finite(1));
    EXPECT_EQ(reidemeister_abelian(diag({3, 3})), ReidemeisterValue::finite(4));
    EXPECT_EQ(reidemeister_abelian(diag({-2})).to_string(), "3");
    EXPECT_THROW(reidemeister_abelian(Matrix::diagonal(Vector{make_rational(1, 2)})), InvalidInput);
}

TEST(ReidemeisterAbelian, MatchesCosetEnumeration) {
    std::mt19937 rng(2024);
    for (const auto& m : oracle::reidemeister_cases(rng, 50)) {
        const long brute = oracle::coset_count(m);
        const auto r = reidemeister_abelian(m);
        ASSERT_FALSE(r.is_infinite());
        EXPECT_EQ(*r.value, brute) << m;
        EXPECT_EQ(oracle::smith_box_size_checked(m), brute) << m;
        EXPECT_EQ(Rational(*r.value), abs(determinant(Matrix::identity(m.rows()) - m)));
    }
}

TEST(ReidemeisterNilpotent, Examples) {
    const Lattice h = standard(catalog::heisenberg());
    EXPECT_EQ(reidemeister_nilpotent(h, LieMorphism{diag({2, 2, 4})}), ReidemeisterValue::finite(3));
    EXPECT_TRUE(reidemeister_nilpotent(h, LieMorphism{Matrix::identity(3)}).is_infinite());
    const Lattice z2 = standard(catalog::abelian(2));
    EXPECT_EQ(reidemeister_nilpotent(z2, LieMorphism{diag({3, 3})}), ReidemeisterValue::finite(4));
    EXPECT_EQ(oracle::coset_count(diag({3, 3})), 4);
}

TEST(ReidemeisterSequence, Examples) {
    const Lattice z = standard(catalog::abelian(1));
    EXPECT_EQ(finite_values(reidemeister_sequence(z, LieMorphism{diag({2})}, 4)),
              (std::vector<long>{1, 3, 7, 15}));
    EXPECT_EQ(finite_values(reidemeister_sequence(z, LieMorphism{diag({-2})}, 4)),
              (std::vector<long>{3, 3, 9, 15}));
    const Lattice h = standard(catalog::heisenberg());
    // frozen from the layer-power coset oracle below
    EXPECT_EQ(finite_values(reidemeister_sequence(h, LieMorphism{diag({2, 2, 4})}, 2)),
              (std::vector<long>{3, 135}));
}

TEST(ReidemeisterSequence, LayerPowerOracle) {
    const Lattice h = standard(catalog::heisenberg());
    const LieMorphism phi{diag({2, 2, 4})};
    const auto blocks = layer_maps(h, phi).blocks;
    const auto seq = reidemeister_sequence(h, phi, 3);
    for (unsigned long n = 1; n <= 3; ++n) {
        long expected = 1;
        for (const auto& b : blocks)
            expected *= oracle::coset_count(matrix_power(b, n));
        EXPECT_EQ(*seq[n - 1].value, expected) << n;
    }
}

TEST(ReidemeisterSequence, MultiplicativeUnderIteration) {
    std::mt19937 rng(5);
    const Lattice z3 = standard(catalog::abelian(3));
    const Lattice h = standard(catalog::heisenberg());
    std::vector<std::pair<const Lattice*, LieMorphism>> cases{
        {&h, LieMorphism{diag({2, 2, 4})}},
        {&h, LieMorphism{cat_on_h3() + Matrix{{0, 0, 0}, {0, 0, 0}, {1, 0, 0}}}},
        {&z3, LieMorphism{oracle::random_integer_matrix(rng, 3)}},
        {&z3, LieMorphism{diag({-2, 3, 1})}},
    };
    for (const auto& [l, phi] : cases) {
        if (determinant(phi.matrix) == 0)
            continue;
        const auto base = reidemeister_sequence(*l, phi, 12);
        for (unsigned k = 2; k <= 4; ++k) {
            const auto strided = reidemeister_sequence(*l, morphism_power(phi, k), 12 / k);
            for (std::size_t n = 1; n <= strided.size(); ++n)
                EXPECT_EQ(strided[n - 1], base[n * k - 1]) << phi.matrix << k << " " << n;
        }
    }
}

TEST(ReidemeisterNilpotent, AbelianizationFiniteWhenGroupFinite) {
    std::mt19937 rng(9);
    std::vector<std::pair<Lattice, LieMorphism>> cases;
    const Lattice h = standard(catalog::heisenberg());
    cases.emplace_back(h, LieMorphism{diag({2, 2, 4})});
    cases.emplace_back(h, LieMorphism{cat_on_h3()});
    cases.emplace_back(h, LieMorphism{Matrix::identity(3)});
    const Lattice l4 = Lattice::refined(MalcevGroup(catalog::filiform(4)),
                                        adapted_basis(lower_central_series(catalog::filiform(4))));
    cases.emplace_back(l4, LieMorphism{diag({2, 4, 8, 16})});
    cases.emplace_back(l4, LieMorphism{diag({-1, 2, -2, 2})});
    const Lattice z2 = standard(catalog::abelian(2));
    for (int t = 0; t < 10; ++t) {
        Matrix m = oracle::random_integer_matrix(rng, 2);
        if (determinant(m) != 0)
            cases.emplace_back(z2, LieMorphism{m});
    }
    int finite = 0;
    for (const auto& [l, phi] : cases) {
        ASSERT_NO_THROW(validate_morphism(l.algebra(), phi.matrix));
        const auto maps = layer_maps(l, phi);
        if (!reidemeister_nilpotent(l, phi).is_infinite()) {
            ++finite;
            EXPECT_FALSE(reidemeister_abelian(maps.blocks.front()).is_infinite()) << phi.matrix;
        }
    }
    EXPECT_GE(finite, 3);
}

TEST(ExteriorPower, TracesGiveDeterminant) {
    std::mt19937 rng(17);
    for (int t = 0; t < 10; ++t) {
        Matrix a = oracle::random_integer_matrix(rng, 3, 2);
        EXPECT_EQ(exterior_power(a, 0), Matrix::identity(1));
        EXPECT_EQ(exterior_power(a, 1), a);
        EXPECT_EQ(exterior_power(a, 3)(0, 0), determinant(a));
        Matrix b = oracle::random_integer_matrix(rng, 3, 2);
        EXPECT_EQ(exterior_power(a * b, 2), exterior_power(a, 2) * exterior_power(b, 2));
        const auto seq = signed_lefschetz_sequence(a, 3);
        for (unsigned long n = 1; n <= 3; ++n)
            EXPECT_EQ(Rational(seq[n - 1]), determinant(Matrix::identity(3) - matrix_power(a, n)));
    }
}

TEST(Zeta, TimesTwo) {
    const Lattice z = standard(catalog::abelian(1));
    const auto r = zeta_certificate(z, LieMorphism{diag({2})}, 20);
    ASSERT_EQ(r.status, ZetaStatus::certified) << r.message;
    EXPECT_EQ(r.certificate->to_string(), "(1 - z)/(1 - 2z), verified_order=20");
    EXPECT_EQ(r.certificate->numerator, (Polynomial{1, -1}));
    EXPECT_EQ(r.certificate->denominator, (Polynomial{1, -2}));
    EXPECT_EQ(r.certificate->sign_period, 1u);
}

TEST(Zeta, MinusTwoHasSignPeriodTwo) {
    const Lattice z = standard(catalog::abelian(1));
    const auto r = zeta_certificate(z, LieMorphism{diag({-2})}, 20);
    ASSERT_EQ(r.status, ZetaStatus::certified) << r.message;
    EXPECT_EQ(r.certificate->rational_function(), "(1 + z)/(1 - 2z)");
    EXPECT_EQ(r.certificate->sign_period, 2u);
}

TEST(Zeta, FinitenessFails) {
    const Lattice z = standard(catalog::abelian(1));
    const auto r = zeta_certificate(z, LieMorphism{diag({-1})}, 20);
    EXPECT_EQ(r.status, ZetaStatus::finiteness_fails);
    EXPECT_EQ(r.first_bad, 2u);
    EXPECT_THROW(zeta_certificate(z, LieMorphism{diag({2})}, 10), InvalidInput);
}

TEST(Zeta, CertificatesMatchExponentialSeries) {
    std::vector<std::pair<Lattice, LieMorphism>> cases;
    const Lattice h = standard(catalog::heisenberg());
    cases.emplace_back(h, LieMorphism{diag({2, 2, 4})});
    cases.emplace_back(h, LieMorphism{diag({-2, 3, -6})});
    cases.emplace_back(h, LieMorphism{cat_on_h3()});
    cases.emplace_back(standard(catalog::abelian(2)), LieMorphism{Matrix{{0, -1}, {1, 3}}});
    cases.emplace_back(standard(catalog::abelian(2)), LieMorphism{Matrix{{1, 2}, {3, 1}}});
    const Lattice l4 = Lattice::refined(MalcevGroup(catalog::filiform(4)),
                                        adapted_basis(lower_central_series(catalog::filiform(4))));
    cases.emplace_back(l4, LieMorphism{diag({2, 4, 8, 16})});
    int certified = 0;
    for (const auto& [l, phi] : cases) {
        const auto r = zeta_certificate(l, phi, 20);
        if (r.status == ZetaStatus::finiteness_fails)
            continue;
        ASSERT_EQ(r.status, ZetaStatus::certified) << phi.matrix << r.message;
        ++certified;
        const auto& c = *r.certificate;
        EXPECT_EQ(c.numerator.coeff(0), 1);
        EXPECT_EQ(c.denominator.coeff(0), 1);
        EXPECT_EQ(gcd(c.numerator, c.denominator).degree(), 0);
        EXPECT_EQ(series_quotient(c.numerator, c.denominator, 21), exp_series(r.sequence, 21)) << phi.matrix;
    }
    EXPECT_EQ(certified, 5);
}

TEST(Zeta, HeisenbergFactorisation) {
    // eigenvalue products by exterior degree: {1}, {2,2,4}, {4,8,8}, {16};
    // the common factor 1 - 4z cancels
    const Lattice h = standard(catalog::heisenberg());
    const auto r = zeta_certificate(h, LieMorphism{diag({2, 2, 4})}, 20);
    ASSERT_EQ(r.status, ZetaStatus::certified);
    for (unsigned long n = 1; n <= 20; ++n) {
        Integer p = integer_pow(2, n) - 1;
        EXPECT_EQ(*r.sequence[n - 1].value, p * p * (integer_pow(4, n) - 1));
    }
    const Polynomial one_minus_8z{1, -8}, one_minus_2z{1, -2};
    EXPECT_EQ(r.certificate->numerator, Polynomial({1, -1}) * one_minus_8z * one_minus_8z);
    EXPECT_EQ(r.certificate->denominator, one_minus_2z * one_minus_2z * Polynomial({1, -16}));
}
