#pragma once

#include "scaleinv/liealg/flag.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace scaleinv {

/// A point of N^Q in first-kind coordinates: the logarithm of the element in
/// the standard basis of the Lie algebra.
using GroupElement = Vector;

namespace detail {

/// One right-nested bracket [w_1, [w_2, ... [w_{N-1}, w_N]]] over the
/// letters X, Y, with its Dynkin coefficient.
struct DynkinTerm {
    std::string word;
    Rational coefficient;
};

inline void dynkin_enumerate(std::size_t max_len, std::size_t n, std::size_t len, Rational denom,
                             std::string& word, std::map<std::string, Rational>& acc) {
    if (n > 0 && len > 0) {
        Rational c = Rational(n % 2 ? 1 : -1) / (denom * Rational(static_cast<long>(n)) *
                                                  Rational(static_cast<long>(len)));
        auto& slot = acc[word];
        slot += c;
    }
    // append one more block X^r Y^s with r + s >= 1
    for (std::size_t r = 0; len + r <= max_len; ++r)
        for (std::size_t s = (r == 0 ? 1 : 0); len + r + s <= max_len; ++s) {
            const std::size_t before = word.size();
            word.append(r, 'X');
            word.append(s, 'Y');
            Rational d = denom * Rational(factorial(r)) * Rational(factorial(s));
            dynkin_enumerate(max_len, n + 1, len + r + s, d, word, acc);
            word.resize(before);
        }
}

/// Dynkin expansion of log(exp X exp Y) up to words of length `max_len`.
/// Words ending in XX or YY vanish; ...YX is folded into -...XY.
inline std::vector<DynkinTerm> dynkin_terms_uncached(std::size_t max_len) {
    std::map<std::string, Rational> raw, acc;
    std::string word;
    dynkin_enumerate(max_len, 0, 0, Rational(1), word, raw);
    for (auto& [w, c] : raw) {
        const std::size_t n = w.size();
        if (n >= 2 && w[n - 1] == w[n - 2])
            continue;
        if (n >= 2 && w[n - 2] == 'Y') {
            std::string flipped = w;
            std::swap(flipped[n - 2], flipped[n - 1]);
            acc[flipped] -= c;
        } else {
            acc[w] += c;
        }
    }
    std::vector<DynkinTerm> out;
    for (auto& [w, c] : acc)
        if (c != 0)
            out.push_back({w, c});
    return out;
}

} // namespace detail

/// Cached Dynkin table per truncation length; safe for concurrent use.
inline std::shared_ptr<const std::vector<detail::DynkinTerm>> dynkin_terms(std::size_t max_len) {
    static std::mutex mutex;
    static std::map<std::size_t, std::shared_ptr<const std::vector<detail::DynkinTerm>>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[max_len];
    if (!slot)
        slot = std::make_shared<const std::vector<detail::DynkinTerm>>(
            detail::dynkin_terms_uncached(max_len));
    return slot;
}

/// N^Q for a validated nilpotent Lie algebra, with BCH multiplication.
class MalcevGroup {
  public:
    MalcevGroup() = default;
    explicit MalcevGroup(LieAlgebra algebra) : algebra_(std::move(algebra)) {
        auto report = validate(algebra_);
        if (!report.ok)
            throw InvalidInput(report.violation->describe());
        class_ = report.nilpotency_class;
        terms_ = dynkin_terms(class_);
    }

    const LieAlgebra& algebra() const { return algebra_; }
    std::size_t dim() const { return algebra_.dim(); }
    std::size_t nilpotency_class() const { return class_; }

    GroupElement identity() const { return zero_vector(dim()); }

    /// log(exp x exp y), exact: brackets longer than the class vanish.
    GroupElement mul(const GroupElement& x, const GroupElement& y) const {
        check(x);
        check(y);
        if (is_zero(x))
            return y;
        if (is_zero(y))
            return x;
        // right-nested brackets share suffixes
        std::unordered_map<std::string, Vector> memo;
        auto nested = [&](const std::string& w, auto&& self) -> const Vector& {
            auto it = memo.find(w);
            if (it != memo.end())
                return it->second;
            Vector v;
            if (w.size() == 1) {
                v = w[0] == 'X' ? x : y;
            } else {
                const Vector& tail = self(w.substr(1), self);
                v = is_zero(tail) ? tail : algebra_.bracket(w[0] == 'X' ? x : y, tail);
            }
            return memo.emplace(w, std::move(v)).first->second;
        };
        Vector out = zero_vector(dim());
        for (const auto& t : *terms_) {
            const Vector& v = nested(t.word, nested);
            if (is_zero(v))
                continue;
            for (std::size_t k = 0; k < out.size(); ++k)
                if (v[k] != 0)
                    out[k] += t.coefficient * v[k];
        }
        return out;
    }

    GroupElement inverse(const GroupElement& x) const {
        check(x);
        return negate(x);
    }

    GroupElement power(const GroupElement& x, const Rational& q) const {
        check(x);
        return scale(q, x);
    }

    /// x y x^-1 y^-1
    GroupElement commutator(const GroupElement& x, const GroupElement& y) const {
        return mul(mul(x, y), mul(inverse(x), inverse(y)));
    }

    /// g x g^-1
    GroupElement conjugate(const GroupElement& g, const GroupElement& x) const {
        return mul(mul(g, x), inverse(g));
    }

    GroupElement product(const std::vector<GroupElement>& xs) const {
        GroupElement acc = identity();
        for (const auto& x : xs)
            acc = mul(acc, x);
        return acc;
    }

  private:
    void check(const GroupElement& x) const {
        if (x.size() != dim())
            throw DimensionError("group element has wrong length");
    }

    LieAlgebra algebra_;
    std::size_t class_ = 0;
    std::shared_ptr<const std::vector<detail::DynkinTerm>> terms_;
};

inline GroupElement bch(const LieAlgebra& algebra, const GroupElement& x, const GroupElement& y) {
    return MalcevGroup(algebra).mul(x, y);
}

} // namespace scaleinv
