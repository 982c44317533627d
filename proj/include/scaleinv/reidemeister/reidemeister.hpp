#pragma once

#include "scaleinv/core/smith.hpp"
#include "scaleinv/morphisms/morphism.hpp"

#include <string>
#include <vector>

namespace scaleinv {

/// Positive integer or INFINITE.
using ReidemeisterValue = IndexValue;

inline ReidemeisterValue operator*(const ReidemeisterValue& a, const ReidemeisterValue& b) {
    if (a.is_infinite() || b.is_infinite())
        return ReidemeisterValue::infinite();
    return ReidemeisterValue::finite(*a.value * *b.value);
}

/// Number of cosets of (I - M)Z^m in Z^m: the product of the Smith invariant
/// factors of I - M, or INFINITE when I - M is singular.
inline ReidemeisterValue reidemeister_abelian(const Matrix& m) {
    if (!m.is_square())
        throw DimensionError("Reidemeister number of a non-square matrix");
    if (!m.is_integral())
        throw InvalidInput("Reidemeister number needs an integer matrix");
    if (m.rows() == 0)
        return ReidemeisterValue::finite(1);
    SmithForm s = smith_form(Matrix::identity(m.rows()) - m);
    Integer prod = 1;
    for (const auto& d : s.invariant_factors)
        prod *= abs(d);
    if (prod == 0)
        return ReidemeisterValue::infinite();
    return ReidemeisterValue::finite(prod);
}

inline ReidemeisterValue reidemeister_of_blocks(const std::vector<Matrix>& blocks, unsigned long n = 1) {
    ReidemeisterValue r = ReidemeisterValue::finite(1);
    for (const auto& b : blocks)
        r = r * reidemeister_abelian(matrix_power(b, n));
    return r;
}

/// R(phi) as the product of the layer values.
inline ReidemeisterValue reidemeister_nilpotent(const Lattice& l, const LieMorphism& phi) {
    return reidemeister_of_blocks(layer_maps(l, phi).blocks);
}

/// R(phi^n) for n = 1..count.
inline std::vector<ReidemeisterValue> reidemeister_sequence(const Lattice& l, const LieMorphism& phi,
                                                            unsigned long count) {
    const auto blocks = layer_maps(l, phi).blocks;
    std::vector<ReidemeisterValue> out;
    std::vector<Matrix> powers = blocks;
    for (unsigned long n = 1; n <= count; ++n) {
        out.push_back(reidemeister_of_blocks(powers));
        for (std::size_t i = 0; i < powers.size(); ++i)
            powers[i] = powers[i] * blocks[i];
    }
    return out;
}

namespace detail {

inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> s(k);
    for (std::size_t i = 0; i < k; ++i)
        s[i] = i;
    if (k > n)
        return out;
    for (;;) {
        out.push_back(s);
        std::size_t i = k;
        while (i > 0 && s[i - 1] == n - k + i - 1)
            --i;
        if (i == 0)
            return out;
        ++s[i - 1];
        for (std::size_t j = i; j < k; ++j)
            s[j] = s[j - 1] + 1;
    }
}

inline Rational minor(const Matrix& a, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
    Matrix m(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
            m(i, j) = a(rows[i], cols[j]);
    return determinant(m);
}

} // namespace detail

/// k-th exterior power in the basis of increasing index subsets.
inline Matrix exterior_power(const Matrix& a, std::size_t k) {
    if (!a.is_square())
        throw DimensionError("exterior power of a non-square matrix");
    const auto sets = detail::subsets(a.rows(), k);
    Matrix out(sets.size(), sets.size());
    for (std::size_t i = 0; i < sets.size(); ++i)
        for (std::size_t j = 0; j < sets.size(); ++j)
            out(i, j) = k == 0 ? Rational(1) : detail::minor(a, sets[i], sets[j]);
    return out;
}

/// tr(Lambda^k a), the sum of principal k x k minors.
inline Rational exterior_trace(const Matrix& a, std::size_t k) {
    Rational t = 0;
    for (const auto& s : detail::subsets(a.rows(), k))
        t += k == 0 ? Rational(1) : detail::minor(a, s, s);
    return t;
}

/// a_n = sum_k (-1)^k tr(Lambda^k a^n) = det(I - a^n), for n = 1..count.
inline std::vector<Integer> signed_lefschetz_sequence(const Matrix& a, unsigned long count) {
    std::vector<Integer> out;
    Matrix p = a;
    for (unsigned long n = 1; n <= count; ++n) {
        Rational s = 0;
        for (std::size_t k = 0; k <= a.rows(); ++k)
            s += (k % 2 ? -1 : 1) * exterior_trace(p, k);
        if (!is_integer(s))
            throw std::logic_error("exterior trace sum is not an integer");
        out.push_back(s.get_num());
        p = p * a;
    }
    return out;
}

/// Coefficients of num/den as a power series, z^0 .. z^{terms-1}; den(0) != 0.
inline std::vector<Rational> series_quotient(const Polynomial& num, const Polynomial& den, std::size_t terms) {
    if (den.coeff(0) == 0)
        throw InvalidInput("power series quotient needs a unit constant term");
    std::vector<Rational> q(terms, Rational(0));
    const Rational inv = Rational(1) / den.coeff(0);
    for (std::size_t n = 0; n < terms; ++n) {
        Rational c = num.coeff(n);
        for (std::size_t j = 1; j <= n && j <= static_cast<std::size_t>(std::max<long>(den.degree(), 0)); ++j)
            c -= den.coeff(j) * q[n - j];
        q[n] = c * inv;
    }
    return q;
}

/// Coefficients of d/dz log(num/den), z^0 .. z^{terms-1}.
inline std::vector<Rational> log_derivative_series(const Polynomial& num, const Polynomial& den, std::size_t terms) {
    auto a = series_quotient(num.derivative(), num, terms);
    auto b = series_quotient(den.derivative(), den, terms);
    for (std::size_t i = 0; i < terms; ++i)
        a[i] -= b[i];
    return a;
}

struct ZetaCertificate {
    Polynomial numerator;    // constant term 1
    Polynomial denominator;  // constant term 1
    unsigned sign_period = 1;
    unsigned long verified_order = 0;

    std::string rational_function() const {
        return "(" + numerator.to_string_ascending("z") + ")/(" + denominator.to_string_ascending("z") + ")";
    }
    std::string to_string() const {
        return rational_function() + ", verified_order=" + std::to_string(verified_order);
    }
    friend bool operator==(const ZetaCertificate&, const ZetaCertificate&) = default;
};

enum class ZetaStatus { certified, finiteness_fails, not_rational_at_order };

inline std::string to_string(ZetaStatus s) {
    switch (s) {
    case ZetaStatus::certified: return "CERTIFIED";
    case ZetaStatus::finiteness_fails: return "FINITENESS_FAILS";
    default: return "NOT_RATIONAL_AT_ORDER";
    }
}

struct ZetaResult {
    ZetaStatus status = ZetaStatus::certified;
    std::optional<ZetaCertificate> certificate;
    unsigned long first_bad = 0;  // failing n or first differing coefficient index
    std::vector<ReidemeisterValue> sequence;
    std::string message;

    friend bool operator==(const ZetaResult&, const ZetaResult&) = default;
};

/// Sign of det(I - a^n) from the real eigenvalues of a: each real root
/// lambda > 1 contributes -1, each lambda < -1 contributes -1 for even n.
inline int real_eigenvalue_sign(const Polynomial& charpoly_a, unsigned long n) {
    const Rational one = 1, minus_one = -1;
    long above = 0, below = 0;
    const auto factors = squarefree_decomposition(charpoly_a);
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const auto& f = factors[i];
        if (f.degree() <= 0)
            continue;
        const long mult = static_cast<long>(i) + 1;
        above += mult * count_real_roots(f, &one, nullptr);
        below += mult * count_real_roots(f, nullptr, &minus_one);
    }
    const long negatives = above + (n % 2 == 0 ? below : 0);
    return negatives % 2 ? -1 : 1;
}

/// Certifies exp(sum_n R(phi^n) z^n / n) as a rational function. With
/// R(phi^n) = sigma tau^n a_n the zeta function is
/// prod_k det(I - tau z Lambda^k A)^{(-1)^{k+1} sigma}.
inline ZetaResult zeta_certificate(const Lattice& l, const LieMorphism& phi, unsigned long order) {
    if (order < 20)
        throw InvalidInput("zeta certificate order must be at least 20");
    ZetaResult out;
    const LayerMaps maps = layer_maps(l, phi);
    out.sequence = reidemeister_sequence(l, phi, order);
    for (unsigned long n = 1; n <= order; ++n)
        if (out.sequence[n - 1].is_infinite()) {
            out.status = ZetaStatus::finiteness_fails;
            out.first_bad = n;
            out.message = "R(phi^" + std::to_string(n) + ") is infinite";
            return out;
        }

    const Matrix& a = maps.adapted;
    const auto signed_seq = signed_lefschetz_sequence(a, order);
    std::vector<int> eps;
    for (unsigned long n = 1; n <= order; ++n) {
        const Integer& r = *out.sequence[n - 1].value;
        const Integer& s = signed_seq[n - 1];
        if (abs(s) != r)
            throw std::logic_error("layer product and exterior traces disagree at n = " + std::to_string(n));
        eps.push_back(sign(s));
    }
    const int sigma = eps[1];
    const int tau = eps[0] * eps[1];
    const Polynomial cp = charpoly(a);
    for (unsigned long n = 1; n <= order; ++n) {
        const int predicted = sigma * (tau < 0 && n % 2 ? -1 : 1);
        if (eps[n - 1] != predicted || real_eigenvalue_sign(cp, n) != eps[n - 1]) {
            out.status = ZetaStatus::not_rational_at_order;
            out.first_bad = n;
            out.message = "sign of det(I - phi^n) is not of the form sigma tau^n at n = " + std::to_string(n);
            return out;
        }
    }

    Polynomial num = Polynomial::constant(1), den = Polynomial::constant(1);
    for (std::size_t k = 0; k <= a.rows(); ++k) {
        const Matrix ext = exterior_power(a, k);
        const std::size_t m = ext.rows();
        // det(I - z B) is the characteristic polynomial with reversed coefficients
        std::vector<Rational> c(m + 1, Rational(0));
        const Polynomial p = charpoly(ext);
        for (std::size_t j = 0; j <= m; ++j)
            c[m - j] = p.coeff(j);
        Polynomial factor{std::move(c)};
        if (tau < 0)
            factor = factor.negated_variable();
        const bool upstairs = ((k % 2 == 1) ? 1 : -1) * sigma > 0;
        (upstairs ? num : den) = (upstairs ? num : den) * factor;
    }
    const Polynomial g = gcd(num, den);
    num = num / g;
    den = den / g;
    num = num.scaled(Rational(1) / num.coeff(0));
    den = den.scaled(Rational(1) / den.coeff(0));

    const auto series = log_derivative_series(num, den, order);
    for (unsigned long n = 1; n <= order; ++n)
        if (series[n - 1] != Rational(*out.sequence[n - 1].value)) {
            out.status = ZetaStatus::not_rational_at_order;
            out.first_bad = n;
            out.message = "coefficient of z^" + std::to_string(n - 1) + " differs";
            return out;
        }
    out.certificate = ZetaCertificate{num, den, tau < 0 ? 2u : 1u, order};
    return out;
}

} // namespace scaleinv
