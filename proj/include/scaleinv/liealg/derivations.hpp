#pragma once

#include "scaleinv/liealg/flag.hpp"

#include <map>
#include <optional>
#include <vector>

namespace scaleinv {

/// Basis of Der(n): matrices D (columns are images of basis vectors) with
/// D[x,y] = [Dx,y] + [x,Dy].
inline std::vector<Matrix> derivation_space(const LieAlgebra& a) {
    const std::size_t d = a.dim();
    const std::size_t unknowns = d * d;  // D(r, s) at index r * d + s
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k) {
                Vector row = zero_vector(unknowns);
                for (std::size_t m = 0; m < d; ++m)
                    row[k * d + m] += a.constant(i, j, m);
                for (std::size_t r = 0; r < d; ++r) {
                    row[r * d + i] -= a.constant(r, j, k);
                    row[r * d + j] -= a.constant(i, r, k);
                }
                if (!is_zero(row))
                    rows.push_back(std::move(row));
            }
    std::vector<Vector> sol;
    if (rows.empty()) {
        for (std::size_t u = 0; u < unknowns; ++u)
            sol.push_back(unit_vector(unknowns, u));
    } else {
        sol = nullspace(Matrix::from_rows(rows));
    }
    std::vector<Matrix> out;
    for (const auto& v : sol) {
        Matrix m(d, d);
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t s = 0; s < d; ++s)
                m(r, s) = v[r * d + s];
        out.push_back(std::move(m));
    }
    return out;
}

/// First basis pair (i, j) on which the Leibniz rule fails, if any.
inline std::optional<std::pair<std::size_t, std::size_t>> leibniz_failure(const LieAlgebra& a,
                                                                          const Matrix& dm) {
    const std::size_t d = a.dim();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            Vector lhs = dm * a.bracket_basis(i, j);
            Vector rhs = add(a.bracket(dm.column(i), unit_vector(d, j)),
                             a.bracket(unit_vector(d, i), dm.column(j)));
            if (lhs != rhs)
                return std::make_pair(i, j);
        }
    return std::nullopt;
}

inline bool is_derivation(const LieAlgebra& a, const Matrix& dm) {
    return !leibniz_failure(a, dm).has_value();
}

/// Sparse polynomial in indeterminates t_1..t_s over Q.
class MultiPoly {
  public:
    using Monomial = std::vector<unsigned short>;

    MultiPoly() = default;
    explicit MultiPoly(std::size_t vars) : vars_(vars) {}

    static MultiPoly variable(std::size_t vars, std::size_t i, const Rational& coeff = 1) {
        MultiPoly p(vars);
        if (coeff != 0) {
            Monomial m(vars, 0);
            m[i] = 1;
            p.terms_.emplace(std::move(m), coeff);
        }
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Monomial, Rational>& terms() const { return terms_; }

    MultiPoly& operator+=(const MultiPoly& o) {
        for (const auto& [m, c] : o.terms_) {
            auto it = terms_.find(m);
            if (it == terms_.end()) {
                terms_.emplace(m, c);
            } else if ((it->second += c) == 0) {
                terms_.erase(it);
            }
        }
        return *this;
    }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        MultiPoly out(a.vars_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m(ma);
                for (std::size_t i = 0; i < m.size(); ++i)
                    m[i] += mb[i];
                auto it = out.terms_.find(m);
                Rational c = ca * cb;
                if (it == out.terms_.end()) {
                    out.terms_.emplace(std::move(m), std::move(c));
                } else if ((it->second += c) == 0) {
                    out.terms_.erase(it);
                }
            }
        return out;
    }

    Rational operator()(const std::vector<Rational>& t) const {
        Rational acc = 0;
        for (const auto& [m, c] : terms_) {
            Rational term = c;
            for (std::size_t i = 0; i < m.size(); ++i)
                for (unsigned short e = 0; e < m[i]; ++e)
                    term *= t[i];
            acc += term;
        }
        return acc;
    }

  private:
    std::size_t vars_ = 0;
    std::map<Monomial, Rational> terms_;
};

struct CharNilpotenceReport {
    bool all_nilpotent = false;
    std::size_t derivation_dim = 0;
    // When false: a derivation D and a power k with trace(D^k) != 0.
    std::optional<Matrix> witness;
    std::size_t witness_power = 0;

    friend bool operator==(const CharNilpotenceReport&, const CharNilpotenceReport&) = default;
};

namespace detail {

using PolyMatrix = std::vector<std::vector<MultiPoly>>;

inline PolyMatrix poly_mul(const PolyMatrix& a, const PolyMatrix& b, std::size_t vars) {
    const std::size_t n = a.size();
    PolyMatrix out(n, std::vector<MultiPoly>(n, MultiPoly(vars)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k].is_zero())
                continue;
            for (std::size_t j = 0; j < n; ++j)
                if (!b[k][j].is_zero())
                    out[i][j] += a[i][k] * b[k][j];
        }
    return out;
}

/// A point where a nonzero polynomial does not vanish, by search over a
/// growing integer box.
inline std::vector<Rational> nonvanishing_point(const MultiPoly& p, std::size_t vars) {
    for (long bound = 1;; ++bound) {
        std::vector<long> t(vars, -bound);
        for (;;) {
            std::vector<Rational> q(t.begin(), t.end());
            if (p(q) != 0)
                return q;
            std::size_t i = 0;
            while (i < vars && t[i] == bound)
                t[i++] = -bound;
            if (i == vars)
                break;
            ++t[i];
        }
    }
}

} // namespace detail

/// Decides whether every derivation is nilpotent by expanding
/// trace((sum t_i D_i)^k) symbolically for k = 1..dim. Derivations preserve
/// the lower central series, so in an adapted basis the generic derivation is
/// block triangular and the trace splits over the diagonal layer blocks.
inline CharNilpotenceReport all_derivations_nilpotent(const LieAlgebra& a) {
    CharNilpotenceReport out;
    const auto ders = derivation_space(a);
    const std::size_t s = ders.size();
    out.derivation_dim = s;
    const Flag lcs = lower_central_series(a);
    const Matrix basis = adapted_basis(lcs).transpose();  // columns = adapted vectors
    std::vector<Matrix> adapted;
    for (const auto& dm : ders)
        adapted.push_back(change_of_basis(dm, basis));

    std::vector<detail::PolyMatrix> blocks, powers;
    std::size_t offset = 0;
    for (std::size_t m : lcs.layer_dims) {
        detail::PolyMatrix b(m, std::vector<MultiPoly>(m, MultiPoly(s)));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                for (std::size_t v = 0; v < s; ++v)
                    b[i][j] += MultiPoly::variable(s, v, adapted[v](offset + i, offset + j));
        blocks.push_back(b);
        offset += m;
    }
    powers = blocks;
    for (std::size_t k = 1; k <= a.dim(); ++k) {
        if (k > 1)
            for (std::size_t l = 0; l < blocks.size(); ++l)
                powers[l] = detail::poly_mul(powers[l], blocks[l], s);
        MultiPoly tr(s);
        for (const auto& p : powers)
            for (std::size_t i = 0; i < p.size(); ++i)
                tr += p[i][i];
        if (!tr.is_zero()) {
            auto t = detail::nonvanishing_point(tr, s);
            Matrix w(a.dim(), a.dim());
            for (std::size_t v = 0; v < s; ++v) {
                Matrix term = ders[v];
                term *= t[v];
                w += term;
            }
            out.witness = std::move(w);
            out.witness_power = k;
            return out;
        }
    }
    out.all_nilpotent = true;
    return out;
}

} // namespace scaleinv
