#pragma once

#include "scaleinv/core/linalg.hpp"

#include <string>
#include <utility>
#include <vector>

namespace scaleinv {

/// Univariate polynomial over Q, coefficients lowest degree first.
/// The coefficient list never carries trailing zeros, so the zero
/// polynomial is the empty list.
class Polynomial {
  public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
    Polynomial(std::initializer_list<long> coeffs) {
        for (long v : coeffs)
            c_.emplace_back(v);
        trim();
    }

    static Polynomial constant(const Rational& a) { return Polynomial(std::vector<Rational>{a}); }
    static Polynomial monomial(const Rational& a, std::size_t deg) {
        std::vector<Rational> c(deg + 1, Rational(0));
        c[deg] = a;
        return Polynomial(std::move(c));
    }
    /// t - root
    static Polynomial linear_factor(const Rational& root) {
        return Polynomial(std::vector<Rational>{-root, Rational(1)});
    }

    bool is_zero() const { return c_.empty(); }
    /// Degree; -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const std::vector<Rational>& coefficients() const { return c_; }
    Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
    Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

    Rational operator()(const Rational& x) const {
        Rational acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            acc = acc * x + *it;
        return acc;
    }

    Polynomial monic() const {
        if (is_zero())
            return *this;
        return scaled(Rational(1) / leading());
    }

    Polynomial scaled(const Rational& s) const {
        std::vector<Rational> c = c_;
        for (auto& x : c)
            x *= s;
        return Polynomial(std::move(c));
    }

    Polynomial derivative() const {
        if (c_.size() <= 1)
            return {};
        std::vector<Rational> c(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i)
            c[i - 1] = c_[i] * static_cast<long>(i);
        return Polynomial(std::move(c));
    }

    /// t^deg p(1/t)
    Polynomial reversed() const {
        std::vector<Rational> c(c_.rbegin(), c_.rend());
        return Polynomial(std::move(c));
    }

    /// p(-t)
    Polynomial negated_variable() const {
        std::vector<Rational> c = c_;
        for (std::size_t i = 1; i < c.size(); i += 2)
            c[i] = -c[i];
        return Polynomial(std::move(c));
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            c[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i)
            c[i] += b.c_[i];
        return Polynomial(std::move(c));
    }
    friend Polynomial operator-(const Polynomial& a) { return a.scaled(Rational(-1)); }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero())
            return {};
        std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0)
                continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                c[i + j] += a.c_[i] * b.c_[j];
        }
        return Polynomial(std::move(c));
    }

    /// Quotient and remainder of Euclidean division.
    static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
        if (b.is_zero())
            throw InvalidInput("polynomial division by zero");
        if (a.degree() < b.degree())
            return {Polynomial{}, a};
        std::vector<Rational> rem = a.c_;
        std::vector<Rational> quo(a.c_.size() - b.c_.size() + 1, Rational(0));
        const Rational lead_inv = Rational(1) / b.leading();
        for (std::size_t k = quo.size(); k-- > 0;) {
            Rational q = rem[k + b.c_.size() - 1] * lead_inv;
            quo[k] = q;
            if (q == 0)
                continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                rem[k + j] -= q * b.c_[j];
        }
        rem.resize(b.c_.size() - 1);
        return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
    }

    friend Polynomial operator/(const Polynomial& a, const Polynomial& b) { return divmod(a, b).first; }
    friend Polynomial operator%(const Polynomial& a, const Polynomial& b) { return divmod(a, b).second; }

    bool divides(const Polynomial& a) const { return (a % *this).is_zero(); }

    /// Human-readable form in the given variable, highest degree first,
    /// e.g. "t^2 - 3t + 1".
    std::string to_string(const std::string& var = "t") const { return format(var, true); }

    /// Lowest degree first, e.g. "1 - 2z".
    std::string to_string_ascending(const std::string& var = "z") const { return format(var, false); }

  private:
    void trim() {
        while (!c_.empty() && c_.back() == 0)
            c_.pop_back();
    }

    std::string format(const std::string& var, bool descending) const {
        if (c_.empty())
            return "0";
        std::string out;
        bool first = true;
        auto emit = [&](std::size_t i) {
            const Rational& a = c_[i];
            if (a == 0)
                return;
            Rational mag = abs(a);
            if (first)
                out += a < 0 ? "-" : "";
            else
                out += a < 0 ? " - " : " + ";
            first = false;
            if (i == 0 || mag != 1)
                out += mag.get_str();
            if (i >= 1)
                out += var;
            if (i >= 2)
                out += "^" + std::to_string(i);
        };
        if (descending)
            for (std::size_t i = c_.size(); i-- > 0;)
                emit(i);
        else
            for (std::size_t i = 0; i < c_.size(); ++i)
                emit(i);
        return out;
    }

    std::vector<Rational> c_;
};

/// Monic greatest common divisor (zero if both inputs are zero).
inline Polynomial gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
        auto r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

inline Polynomial power(const Polynomial& p, unsigned long e) {
    Polynomial r = Polynomial::constant(1);
    for (unsigned long i = 0; i < e; ++i)
        r = r * p;
    return r;
}

/// Yun's square-free decomposition: p = lc * prod_i factors[i]^(i+1), each
/// factor monic and square-free, pairwise coprime (entries may be 1).
inline std::vector<Polynomial> squarefree_decomposition(const Polynomial& p) {
    if (p.is_zero())
        throw InvalidInput("square-free decomposition of the zero polynomial");
    std::vector<Polynomial> out;
    Polynomial f = p.monic();
    if (f.degree() == 0)
        return out;
    Polynomial fp = f.derivative();
    Polynomial a = gcd(f, fp);
    Polynomial b = f / a;
    Polynomial c = fp / a;
    Polynomial d = c - b.derivative();
    while (b.degree() > 0) {
        Polynomial g = gcd(b, d);
        out.push_back(g);
        b = b / g;
        c = d / g;
        d = c - b.derivative();
    }
    while (!out.empty() && out.back().degree() == 0)
        out.pop_back();
    return out;
}

/// det(t I - m), computed by reduction to Hessenberg form.
inline Polynomial charpoly(const Matrix& m) {
    if (!m.is_square())
        throw DimensionError("characteristic polynomial of a non-square matrix");
    const std::size_t n = m.rows();
    Matrix h = m;
    for (std::size_t col = 0; col + 2 < n + 0 && col + 1 < n; ++col) {
        // eliminate below the subdiagonal in column `col`
        std::size_t piv = col + 1;
        while (piv < n && h(piv, col) == 0)
            ++piv;
        if (piv == n)
            continue;
        if (piv != col + 1) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(h(piv, j), h(col + 1, j));
            for (std::size_t i = 0; i < n; ++i)
                std::swap(h(i, piv), h(i, col + 1));
        }
        const Rational t = h(col + 1, col);
        for (std::size_t i = col + 2; i < n; ++i) {
            if (h(i, col) == 0)
                continue;
            Rational u = h(i, col) / t;
            for (std::size_t j = 0; j < n; ++j)
                h(i, j) -= u * h(col + 1, j);
            for (std::size_t r = 0; r < n; ++r)
                h(r, col + 1) += u * h(r, i);
        }
    }
    // p_k = charpoly of the leading k x k block of the Hessenberg matrix
    std::vector<Polynomial> p(n + 1);
    p[0] = Polynomial::constant(1);
    const Polynomial t_var{0, 1};
    for (std::size_t k = 1; k <= n; ++k) {
        const std::size_t m0 = k - 1;
        Polynomial acc = (t_var - Polynomial::constant(h(m0, m0))) * p[k - 1];
        Rational prod = 1;
        for (std::size_t i = m0; i-- > 0;) {
            prod *= h(i + 1, i);
            if (prod == 0)
                break;
            acc = acc - p[i].scaled(prod * h(i, m0));
        }
        p[k] = std::move(acc);
    }
    return p[n];
}

} // namespace scaleinv
