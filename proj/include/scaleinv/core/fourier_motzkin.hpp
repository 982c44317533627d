#pragma once

#include "scaleinv/core/linalg.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

namespace scaleinv {

/// Nonnegative multipliers on the bounds w_i >= 1 whose weighted sum lies in
/// the row space of the equalities: sum_i lambda_i w_i = sum_r mu_r (E w)_r = 0
/// for every solution of E w = 0, contradicting sum_i lambda_i w_i >= sum lambda > 0.
struct InfeasibilityCertificate {
    Vector lambda;  // one per unknown, >= 0, not all zero
    Vector mu;      // one per equality
};

struct PositiveLpResult {
    bool feasible = false;
    std::vector<Integer> weights;                      // primitive, all >= 1
    std::optional<InfeasibilityCertificate> certificate;
};

namespace detail {

struct FmRow {
    Vector coef;    // over the free unknowns
    Rational rhs;   // coef . x >= rhs
    Vector origin;  // multipliers on the original bounds w_i >= 1
};

// Scales the row so that |coef[k]| = 1.
inline void normalise(FmRow& row, std::size_t k) {
    Rational scale = abs(row.coef[k]);
    if (scale == 0 || scale == 1)
        return;
    Rational inv = Rational(1) / scale;
    for (auto& c : row.coef)
        c *= inv;
    row.rhs *= inv;
    for (auto& o : row.origin)
        o *= inv;
}

} // namespace detail

/// Decides whether E w = 0 has a solution with every w_i >= 1. `equalities`
/// has one row per constraint and one column per unknown. Feasible answers
/// are scaled to a primitive positive integer vector; infeasible answers
/// carry a certificate derived from the Fourier-Motzkin elimination.
inline PositiveLpResult positive_lp_feasible(const Matrix& equalities, std::size_t unknowns) {
    if (equalities.rows() && equalities.cols() != unknowns)
        throw DimensionError("constraint width does not match the number of unknowns");
    const std::size_t d = unknowns;
    PositiveLpResult result;
    if (d == 0) {
        result.feasible = true;
        return result;
    }

    // Express every unknown as a linear form in the free unknowns.
    EchelonForm ef = equalities.rows() ? row_reduce(equalities) : EchelonForm{Matrix(0, d), {}};
    std::vector<bool> is_pivot(d, false);
    for (auto p : ef.pivots)
        is_pivot[p] = true;
    std::vector<std::size_t> free_vars;
    for (std::size_t j = 0; j < d; ++j)
        if (!is_pivot[j])
            free_vars.push_back(j);
    const std::size_t nf = free_vars.size();
    std::vector<Vector> expr(d, zero_vector(nf));
    for (std::size_t f = 0; f < nf; ++f)
        expr[free_vars[f]][f] = 1;
    for (std::size_t i = 0; i < ef.pivots.size(); ++i)
        for (std::size_t f = 0; f < nf; ++f)
            expr[ef.pivots[i]][f] = -ef.reduced(i, free_vars[f]);

    std::vector<detail::FmRow> rows;
    for (std::size_t i = 0; i < d; ++i)
        rows.push_back({expr[i], Rational(1), unit_vector(d, i)});

    // stages[k] holds the system over free unknowns 0..k-1 (stages[nf] = input)
    std::vector<std::vector<detail::FmRow>> stages(nf + 1);
    stages[nf] = rows;
    std::optional<Vector> contradiction;
    auto check_constants = [&](const std::vector<detail::FmRow>& sys) {
        for (const auto& r : sys)
            if (is_zero(r.coef) && r.rhs > 0) {
                contradiction = r.origin;
                return true;
            }
        return false;
    };
    if (!check_constants(stages[nf])) {
        for (std::size_t k = nf; k-- > 0;) {
            std::vector<detail::FmRow> lower, upper, next;
            for (auto r : stages[k + 1]) {
                detail::normalise(r, k);
                if (r.coef[k] > 0)
                    lower.push_back(std::move(r));
                else if (r.coef[k] < 0)
                    upper.push_back(std::move(r));
                else
                    next.push_back(std::move(r));
            }
            for (const auto& lo : lower)
                for (const auto& up : upper) {
                    // lo.coef[k] = 1, up.coef[k] = -1 after normalisation
                    detail::FmRow comb{add(lo.coef, up.coef), lo.rhs + up.rhs, add(lo.origin, up.origin)};
                    comb.coef[k] = 0;
                    next.push_back(std::move(comb));
                }
            // drop exact duplicates
            std::vector<detail::FmRow> unique;
            for (auto& r : next) {
                bool dup = std::any_of(unique.begin(), unique.end(), [&](const detail::FmRow& u) {
                    return u.coef == r.coef && u.rhs >= r.rhs;
                });
                if (!dup)
                    unique.push_back(std::move(r));
            }
            stages[k] = std::move(unique);
            if (check_constants(stages[k]))
                break;
        }
    }

    if (contradiction) {
        InfeasibilityCertificate cert;
        cert.lambda = *contradiction;
        auto mu = equalities.rows() ? solve(equalities.transpose(), cert.lambda) : std::nullopt;
        if (!mu)
            throw std::logic_error("Fourier-Motzkin certificate outside the equality row space");
        cert.mu = *mu;
        result.certificate = std::move(cert);
        return result;
    }

    // Back-substitution, taking the tightest lower bound for each unknown.
    Vector x = zero_vector(nf);
    for (std::size_t k = 0; k < nf; ++k) {
        std::optional<Rational> lo, hi;
        for (const auto& r : stages[k + 1]) {
            const Rational& a = r.coef[k];
            if (a == 0)
                continue;
            Rational rest = r.rhs;
            for (std::size_t j = 0; j < k; ++j)
                rest -= r.coef[j] * x[j];
            Rational bound = rest / a;
            if (a > 0)
                lo = lo ? std::max(*lo, bound) : bound;
            else
                hi = hi ? std::min(*hi, bound) : bound;
        }
        if (lo)
            x[k] = *lo;
        else if (hi)
            x[k] = std::min(*hi, Rational(0));
    }

    Vector w(d);
    for (std::size_t i = 0; i < d; ++i)
        w[i] = dot(expr[i], x);
    Integer den = 1;
    for (const auto& v : w)
        den = lcm(den, Integer(v.get_den()));
    Integer g = 0;
    std::vector<Integer> iw(d);
    for (std::size_t i = 0; i < d; ++i) {
        Rational scaled = w[i] * den;
        iw[i] = scaled.get_num();
        g = gcd(g, iw[i]);
    }
    for (auto& v : iw) {
        v /= g;
        if (v < 1)
            throw std::logic_error("Fourier-Motzkin back-substitution left a nonpositive weight");
    }
    result.feasible = true;
    result.weights = std::move(iw);
    return result;
}

} // namespace scaleinv
