#pragma once

#include "scaleinv/core/rational.hpp"

#include <string>
#include <vector>

namespace scaleinv {

/// Finite group given by its multiplication table on indices 0..order-1.
class FiniteGroup {
  public:
    FiniteGroup() : FiniteGroup(std::vector<std::vector<std::size_t>>{{0}}) {}

    explicit FiniteGroup(std::vector<std::vector<std::size_t>> table, std::vector<std::string> names = {})
        : table_(std::move(table)), names_(std::move(names)) {
        const std::size_t n = table_.size();
        if (n == 0)
            throw InvalidInput("finite group needs at least one element");
        for (const auto& row : table_) {
            if (row.size() != n)
                throw InvalidInput("multiplication table must be square");
            for (std::size_t v : row)
                if (v >= n)
                    throw InvalidInput("multiplication table entry out of range");
        }
        identity_ = n;
        for (std::size_t e = 0; e < n && identity_ == n; ++e) {
            bool ok = true;
            for (std::size_t g = 0; g < n && ok; ++g)
                ok = table_[e][g] == g && table_[g][e] == g;
            if (ok)
                identity_ = e;
        }
        if (identity_ == n)
            throw InvalidInput("multiplication table has no identity");
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c)
                    if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
                        throw InvalidInput("multiplication table is not associative at (" + std::to_string(a + 1) +
                                           "," + std::to_string(b + 1) + "," + std::to_string(c + 1) + ")");
        inverse_.assign(n, n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                if (table_[a][b] == identity_)
                    inverse_[a] = b;
        for (std::size_t a = 0; a < n; ++a)
            if (inverse_[a] == n)
                throw InvalidInput("element " + std::to_string(a + 1) + " has no inverse");
        if (names_.empty())
            for (std::size_t a = 0; a < n; ++a)
                names_.push_back("f" + std::to_string(a + 1));
        if (names_.size() != n)
            throw InvalidInput("finite group names do not match the order");
    }

    static FiniteGroup trivial() { return FiniteGroup(); }

    static FiniteGroup cyclic(std::size_t n) {
        std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                t[a][b] = (a + b) % n;
        return FiniteGroup(std::move(t));
    }

    /// Pairs (a, b) indexed as a * |h| + b.
    static FiniteGroup product(const FiniteGroup& g, const FiniteGroup& h) {
        const std::size_t n = g.order() * h.order();
        std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                t[x][y] = g.mul(x / h.order(), y / h.order()) * h.order() + h.mul(x % h.order(), y % h.order());
        return FiniteGroup(std::move(t));
    }

    std::size_t order() const { return table_.size(); }
    std::size_t identity() const { return identity_; }
    std::size_t mul(std::size_t a, std::size_t b) const { return table_.at(a).at(b); }
    std::size_t inverse(std::size_t a) const { return inverse_.at(a); }
    const std::vector<std::vector<std::size_t>>& table() const { return table_; }
    const std::string& name(std::size_t a) const { return names_.at(a); }
    const std::vector<std::string>& names() const { return names_; }

    std::size_t index_of(const std::string& name) const {
        for (std::size_t a = 0; a < names_.size(); ++a)
            if (names_[a] == name)
                return a;
        throw InvalidInput("unknown finite group element '" + name + "'");
    }

  private:
    std::vector<std::vector<std::size_t>> table_;
    std::vector<std::string> names_;
    std::size_t identity_ = 0;
    std::vector<std::size_t> inverse_;
};

} // namespace scaleinv
