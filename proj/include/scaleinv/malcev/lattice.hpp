#pragma once

#include "scaleinv/malcev/bch.hpp"

#include <optional>
#include <vector>

namespace scaleinv {

/// Positive integer or infinite.
struct IndexValue {
    std::optional<Integer> value;  // nullopt = infinite

    static IndexValue infinite() { return {}; }
    static IndexValue finite(Integer v) { return {std::move(v)}; }
    bool is_infinite() const { return !value.has_value(); }
    std::string to_string() const { return value ? value->get_str() : "INFINITE"; }
    friend bool operator==(const IndexValue&, const IndexValue&) = default;
};

/// A full subgroup N of N^Q: the elements exp(v_1 b_1) ... exp(v_d b_d) with
/// v integral, where the rows b_i of `basis` are adapted to the lower central
/// series (grouped by layer, in order).
class Lattice {
  public:
    Lattice() = default;

    Lattice(MalcevGroup group, Matrix basis) : group_(std::move(group)), basis_(std::move(basis)) {
        const std::size_t d = group_.dim();
        if (basis_.rows() != d || basis_.cols() != d)
            throw DimensionError("lattice basis must be a square matrix of the algebra dimension");
        auto inv = try_inverse(basis_);
        if (!inv)
            throw InvalidInput("lattice basis is singular");
        coords_ = inv->transpose();
        const Flag lcs = lower_central_series(group_.algebra());
        layer_dims_ = lcs.layer_dims;
        // rows of layers >= i must span gamma_i exactly
        std::size_t start = d;
        for (std::size_t i = lcs.length(); i-- > 0;) {
            start -= layer_dims_[i];
            std::vector<Vector> rows;
            for (std::size_t r = start; r < d; ++r)
                rows.push_back(basis_.row(r));
            if (!(Subspace(rows, d) == lcs.subspaces[i]))
                throw InvalidInput("lattice basis is not adapted to the lower central series (layer " +
                                   std::to_string(i + 1) + ")");
        }
        for (std::size_t i = 0; i < layer_dims_.size(); ++i)
            for (std::size_t k = 0; k < layer_dims_[i]; ++k)
                layer_of_.push_back(i);
        for (std::size_t r = 0; r < d; ++r)
            generators_.push_back(basis_.row(r));
    }

    /// The lattice with the greedy adapted basis of the standard basis.
    static Lattice standard(MalcevGroup group) {
        Matrix b = adapted_basis(lower_central_series(group.algebra()));
        return Lattice(std::move(group), std::move(b));
    }

    /// Divides basis vectors by the denominators that appear in conjugates of
    /// generators until the integer points form a subgroup. The result
    /// contains exp(b_i) for every row b_i of the input.
    static Lattice refined(MalcevGroup group, Matrix basis) {
        for (int round = 0; round < 64; ++round) {
            Lattice l(group, basis);
            auto bad = l.closure_failure();
            if (!bad)
                return l;
            const auto& gi = l.generators_[bad->first];
            const auto& gj = l.generators_[bad->second];
            Vector c = l.to_second_kind(group.conjugate(gi, gj));
            if (is_integral(c))
                c = l.to_second_kind(group.conjugate(group.inverse(gi), gj));
            for (std::size_t k = 0; k < c.size(); ++k)
                if (c[k].get_den() != 1)
                    basis.set_row(k, scale(Rational(1) / Rational(c[k].get_den()), basis.row(k)));
        }
        throw std::logic_error("lattice refinement did not converge");
    }

    const MalcevGroup& group() const { return group_; }
    const LieAlgebra& algebra() const { return group_.algebra(); }
    std::size_t dim() const { return group_.dim(); }
    const Matrix& basis() const { return basis_; }
    const std::vector<std::size_t>& layer_dims() const { return layer_dims_; }
    std::size_t layer_of(std::size_t position) const { return layer_of_[position]; }
    std::size_t layer_start(std::size_t layer) const {
        std::size_t s = 0;
        for (std::size_t i = 0; i < layer; ++i)
            s += layer_dims_[i];
        return s;
    }
    /// exp(b_i), in first-kind coordinates.
    const std::vector<GroupElement>& generators() const { return generators_; }

    /// Coordinates of a Lie algebra vector in the adapted basis.
    Vector basis_coords(const Vector& x) const { return coords_ * x; }

    Vector to_second_kind(const GroupElement& x) const {
        const std::size_t d = dim();
        if (x.size() != d)
            throw DimensionError("group element has wrong length");
        Vector v = zero_vector(d);
        GroupElement rem = x;
        for (std::size_t j = 0; j < d; ++j) {
            if (is_zero(rem))
                break;
            Rational c = dot(coords_.row_span(j), rem);
            v[j] = c;
            if (c != 0)
                rem = group_.mul(group_.power(generators_[j], -c), rem);
        }
        if (!is_zero(rem))
            throw std::logic_error("second-kind coordinates did not terminate");
        return v;
    }

    GroupElement from_second_kind(const Vector& v) const {
        if (v.size() != dim())
            throw DimensionError("coordinate vector has wrong length");
        GroupElement acc = group_.identity();
        for (std::size_t j = 0; j < dim(); ++j)
            if (v[j] != 0)
                acc = group_.mul(acc, group_.power(generators_[j], v[j]));
        return acc;
    }

    bool contains(const GroupElement& x) const { return is_integral(to_second_kind(x)); }

    /// Conjugates g_i^{+-1} g_j g_i^{-+1} for i < j must lie in the lattice;
    /// returns the first failing pair.
    std::optional<std::pair<std::size_t, std::size_t>> closure_failure() const {
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t j = i + 1; j < dim(); ++j) {
                const auto& gi = generators_[i];
                const auto& gj = generators_[j];
                if (!contains(group_.conjugate(gi, gj)) ||
                    !contains(group_.conjugate(group_.inverse(gi), gj)))
                    return std::make_pair(i, j);
            }
        return std::nullopt;
    }

  private:
    MalcevGroup group_;
    Matrix basis_;
    Matrix coords_;  // rows: dual basis, so coords_ * x = coordinates in the rows of basis_
    std::vector<std::size_t> layer_dims_;
    std::vector<std::size_t> layer_of_;
    std::vector<GroupElement> generators_;
};

inline bool lattice_membership(const Lattice& lattice, const GroupElement& x) {
    return lattice.contains(x);
}

namespace detail {

/// Triangular table of subgroup elements indexed by the position of their
/// first nonzero second-kind coordinate, which is kept positive.
class SiftTable {
  public:
    explicit SiftTable(const Lattice& l) : lattice_(l), rows_(l.dim()) {}

    /// Reduces x against the table and inserts what remains. Returns true when
    /// the table changed.
    bool sift(GroupElement x) {
        const auto& g = lattice_.group();
        bool changed = false;
        for (;;) {
            if (is_zero(x))
                return changed;
            Vector v = lattice_.to_second_kind(x);
            std::size_t p = 0;
            while (v[p] == 0)
                ++p;
            if (v[p] < 0) {
                x = g.inverse(x);
                v = lattice_.to_second_kind(x);
            }
            if (!rows_[p]) {
                rows_[p] = Entry{x, v[p].get_num()};
                return true;
            }
            Entry& e = *rows_[p];
            Integer q = v[p].get_num() / e.lead;  // truncating; both positive
            Integer r = v[p].get_num() - q * e.lead;
            x = g.mul(g.power(e.element, -Rational(q)), x);
            if (r != 0) {
                // x now leads with r < e.lead: it replaces the entry
                std::swap(x, e.element);
                e.lead = r;
                changed = true;
            }
        }
    }

    bool complete() const {
        for (const auto& r : rows_)
            if (!r)
                return false;
        return true;
    }

    Integer index() const {
        Integer prod = 1;
        for (const auto& r : rows_)
            prod *= r->lead;
        return prod;
    }

    std::vector<GroupElement> elements() const {
        std::vector<GroupElement> out;
        for (const auto& r : rows_)
            if (r)
                out.push_back(r->element);
        return out;
    }

  private:
    struct Entry {
        GroupElement element;
        Integer lead;
    };
    const Lattice& lattice_;
    std::vector<std::optional<Entry>> rows_;
};

} // namespace detail

/// Index of the subgroup generated by `generators` in the lattice. Generators
/// are sifted into a layer-by-layer triangular table; commutators of table
/// elements are sifted in until nothing changes, so lower layers are
/// saturated before ranks are judged.
inline IndexValue sublattice_index(const Lattice& lattice, const std::vector<GroupElement>& generators) {
    for (const auto& g : generators)
        if (!lattice.contains(g))
            throw PreconditionError("generator " + to_string(g) + " lies outside the lattice");
    const auto& grp = lattice.group();
    detail::SiftTable table(lattice);
    for (const auto& g : generators)
        table.sift(g);
    for (bool changed = true; changed;) {
        changed = false;
        auto elems = table.elements();
        for (std::size_t i = 0; i < elems.size(); ++i)
            for (std::size_t j = i + 1; j < elems.size(); ++j) {
                changed |= table.sift(grp.commutator(elems[i], elems[j]));
                changed |= table.sift(grp.commutator(grp.inverse(elems[i]), elems[j]));
            }
    }
    if (!table.complete())
        return IndexValue::infinite();
    return IndexValue::finite(table.index());
}

} // namespace scaleinv
