#pragma once

// Exact root location relative to the unit circle.
//
// Roots on the circle are split off first: after square-free decomposition,
// gcd(p, reverse(p)) collects every root whose inverse is also a root. That
// factor is self-reciprocal, so it can be rewritten in x = t + 1/t, and its
// circle roots are exactly the real roots of the reduced polynomial in
// (-2, 2) (Sturm count). The remaining factor has no circle roots; it is
// mapped to the left half-plane by t -> (s + 1)/(s - 1) and counted with a
// Cauchy-index (Routh-Hurwitz) computation on the imaginary axis, which has
// no singular cases.

#include "scaleinv/core/polynomial.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace scaleinv {

/// Signed remainder sequence f0 = a, f1 = b, f_{k+1} = -rem(f_{k-1}, f_k).
inline std::vector<Polynomial> signed_remainder_sequence(const Polynomial& a, const Polynomial& b) {
    std::vector<Polynomial> seq{a};
    if (b.is_zero())
        return seq;
    seq.push_back(b);
    for (;;) {
        Polynomial r = -(seq[seq.size() - 2] % seq.back());
        if (r.is_zero())
            break;
        seq.push_back(std::move(r));
    }
    return seq;
}

namespace detail {

inline int count_variations(const std::vector<int>& signs) {
    int v = 0, last = 0;
    for (int s : signs) {
        if (s == 0)
            continue;
        if (last != 0 && s != last)
            ++v;
        last = s;
    }
    return v;
}

inline int sign_at_infinity(const Polynomial& p, bool positive) {
    if (p.is_zero())
        return 0;
    int s = sign(p.leading());
    if (!positive && p.degree() % 2 == 1)
        s = -s;
    return s;
}

} // namespace detail

inline int variations_at(const std::vector<Polynomial>& seq, const Rational& x) {
    std::vector<int> signs;
    for (const auto& f : seq)
        signs.push_back(sign(f(x)));
    return detail::count_variations(signs);
}

inline int variations_at_infinity(const std::vector<Polynomial>& seq, bool positive) {
    std::vector<int> signs;
    for (const auto& f : seq)
        signs.push_back(detail::sign_at_infinity(f, positive));
    return detail::count_variations(signs);
}

/// Number of distinct real roots of p in the open interval (a, b); a, b must
/// not be roots. Infinite ends are selected with the flags.
inline int count_real_roots(const Polynomial& p, const Rational* a, const Rational* b) {
    if (p.is_zero())
        throw InvalidInput("root count of the zero polynomial");
    if ((a && p(*a) == 0) || (b && p(*b) == 0))
        throw PreconditionError("interval endpoint is a root");
    auto seq = signed_remainder_sequence(p, p.derivative());
    int va = a ? variations_at(seq, *a) : variations_at_infinity(seq, false);
    int vb = b ? variations_at(seq, *b) : variations_at_infinity(seq, true);
    return va - vb;
}

inline std::uint64_t euler_phi(std::uint64_t n) {
    std::uint64_t result = n;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p)
            continue;
        while (n % p == 0)
            n /= p;
        result -= result / p;
    }
    if (n > 1)
        result -= result / n;
    return result;
}

inline int moebius(std::uint64_t n) {
    int mu = 1;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p)
            continue;
        n /= p;
        if (n % p == 0)
            return 0;
        mu = -mu;
    }
    if (n > 1)
        mu = -mu;
    return mu;
}

/// n-th cyclotomic polynomial, prod_{d | n} (t^d - 1)^{mu(n/d)}.
inline Polynomial cyclotomic(std::uint64_t n) {
    if (n == 0)
        throw InvalidInput("cyclotomic index must be positive");
    Polynomial num = Polynomial::constant(1), den = Polynomial::constant(1);
    for (std::uint64_t d = 1; d <= n; ++d) {
        if (n % d)
            continue;
        int mu = moebius(n / d);
        if (mu == 0)
            continue;
        Polynomial f = Polynomial::monomial(1, d) - Polynomial::constant(1);
        (mu > 0 ? num : den) = (mu > 0 ? num : den) * f;
    }
    return num / den;
}

struct CyclotomicFactor {
    std::uint64_t index;     // n in Phi_n
    unsigned multiplicity;
    friend bool operator==(const CyclotomicFactor&, const CyclotomicFactor&) = default;
};

/// Cyclotomic polynomials dividing p, by trial division over every n with
/// phi(n) <= deg p.
inline std::vector<CyclotomicFactor> cyclotomic_factors(const Polynomial& p) {
    if (p.is_zero())
        throw InvalidInput("cyclotomic factors of the zero polynomial");
    std::vector<CyclotomicFactor> out;
    const auto deg = static_cast<std::uint64_t>(p.degree());
    // phi(n) >= sqrt(n / 2)
    const std::uint64_t bound = 2 * deg * deg + 2;
    for (std::uint64_t n = 1; n <= bound; ++n) {
        if (euler_phi(n) > deg)
            continue;
        Polynomial phi = cyclotomic(n);
        Polynomial rest = p;
        unsigned mult = 0;
        for (;;) {
            auto [q, r] = Polynomial::divmod(rest, phi);
            if (!r.is_zero())
                break;
            rest = std::move(q);
            ++mult;
        }
        if (mult)
            out.push_back({n, mult});
    }
    return out;
}

struct UnitDiskAnalysis {
    int inside = 0;     // |lambda| < 1, with multiplicity
    int on_circle = 0;  // |lambda| = 1
    int outside = 0;    // |lambda| > 1
    std::vector<CyclotomicFactor> cyclotomic;
};

namespace detail {

/// Roots of a real polynomial without imaginary-axis roots lying in Re s < 0.
inline int left_half_plane_count(const Polynomial& q) {
    const long n = q.degree();
    if (n <= 0)
        return 0;
    std::vector<Rational> a_coef(static_cast<std::size_t>(n) + 1, Rational(0));
    std::vector<Rational> b_coef(static_cast<std::size_t>(n) + 1, Rational(0));
    for (long k = 0; k <= n; ++k) {
        // i^k: 1, i, -1, -i
        const Rational& c = q.coeff(static_cast<std::size_t>(k));
        switch (k % 4) {
        case 0: a_coef[k] = c; break;
        case 1: b_coef[k] = c; break;
        case 2: a_coef[k] = -c; break;
        default: b_coef[k] = -c; break;
        }
    }
    Polynomial a(std::move(a_coef)), b(std::move(b_coef));
    if (a.is_zero())
        throw std::logic_error("polynomial has a root on the imaginary axis");
    int index = 0;
    if (!b.is_zero()) {
        auto seq = signed_remainder_sequence(a, b);
        index = variations_at_infinity(seq, false) - variations_at_infinity(seq, true);
    }
    int end_term = 0;
    if (!b.is_zero() && b.degree() > a.degree()) {
        int plus = sign_at_infinity(b, true) * sign_at_infinity(a, true);
        int minus = sign_at_infinity(b, false) * sign_at_infinity(a, false);
        end_term = (plus - minus) / 2;
    }
    const int diff = end_term - index;  // n_left - n_right
    if ((n + diff) % 2 != 0)
        throw std::logic_error("inconsistent half-plane count");
    return static_cast<int>((n + diff) / 2);
}

/// Roots inside the open unit disk of a polynomial with no roots on the circle.
inline int inside_count_off_circle(const Polynomial& h) {
    const long n = h.degree();
    if (n <= 0)
        return 0;
    // q(s) = (s - 1)^n h((s + 1)/(s - 1))
    const Polynomial sp1{1, 1}, sm1{-1, 1};
    Polynomial q;
    for (long k = 0; k <= n; ++k) {
        const Rational& c = h.coeff(static_cast<std::size_t>(k));
        if (c == 0)
            continue;
        q = q + (power(sp1, static_cast<unsigned long>(k)) *
                 power(sm1, static_cast<unsigned long>(n - k))).scaled(c);
    }
    return left_half_plane_count(q);
}

struct CircleSplit {
    int inside = 0;
    int on_circle = 0;
};

/// Square-free, monic input.
inline CircleSplit analyse_squarefree(const Polynomial& s) {
    CircleSplit out;
    Polynomial g = gcd(s, s.reversed());
    Polynomial h = s / g;
    // strip the real circle roots 1 and -1
    for (const Polynomial& lin : {Polynomial{-1, 1}, Polynomial{1, 1}}) {
        if (lin.divides(g)) {
            g = g / lin;
            out.on_circle += 1;
        }
    }
    if (g.degree() > 0) {
        const long deg = g.degree();
        if (deg % 2)
            throw std::logic_error("self-reciprocal factor of odd degree");
        const std::size_t m = static_cast<std::size_t>(deg / 2);
        for (std::size_t i = 0; i <= static_cast<std::size_t>(deg); ++i)
            if (g.coeff(i) != g.coeff(static_cast<std::size_t>(deg) - i))
                throw std::logic_error("reciprocal factor is not palindromic");
        // g(t) = t^m G(t + 1/t) via Dickson polynomials D_j(x) = t^j + t^-j
        Polynomial big = Polynomial::constant(g.coeff(m));
        Polynomial d_prev = Polynomial::constant(2), d_cur{0, 1};
        const Polynomial x{0, 1};
        for (std::size_t j = 1; j <= m; ++j) {
            big = big + d_cur.scaled(g.coeff(m + j));
            Polynomial d_next = x * d_cur - d_prev;
            d_prev = std::move(d_cur);
            d_cur = std::move(d_next);
        }
        const Rational lo(-2), hi(2);
        const int real_in = count_real_roots(big, &lo, &hi);
        out.on_circle += 2 * real_in;
        out.inside += static_cast<int>(m) - real_in;
    }
    out.inside += inside_count_off_circle(h);
    return out;
}

} // namespace detail

/// Exact counts of roots inside, on and outside the unit circle, with
/// multiplicity, plus the cyclotomic factors of p.
inline UnitDiskAnalysis unit_disk_root_analysis(const Polynomial& p) {
    if (p.is_zero())
        throw InvalidInput("unit-disk analysis of the zero polynomial");
    UnitDiskAnalysis r;
    auto parts = squarefree_decomposition(p);
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i].degree() <= 0)
            continue;
        auto split = detail::analyse_squarefree(parts[i]);
        const int mult = static_cast<int>(i + 1);
        r.inside += mult * split.inside;
        r.on_circle += mult * split.on_circle;
    }
    r.outside = static_cast<int>(p.degree()) - r.inside - r.on_circle;
    r.cyclotomic = cyclotomic_factors(p);
    return r;
}

} // namespace scaleinv
