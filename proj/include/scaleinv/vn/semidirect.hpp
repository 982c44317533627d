#pragma once

#include "scaleinv/morphisms/morphism.hpp"
#include "scaleinv/vn/finite_group.hpp"

#include <map>
#include <string>
#include <vector>

namespace scaleinv {

/// rho: F -> Aut(n^Q), one automorphism per element of F.
class Action {
  public:
    Action() = default;

    Action(const LieAlgebra& a, const FiniteGroup& f, std::vector<Matrix> images) : images_(std::move(images)) {
        if (images_.size() != f.order())
            throw InvalidInput("action needs one matrix per finite group element");
        for (std::size_t i = 0; i < images_.size(); ++i) {
            try {
                validate_morphism(a, images_[i]);
            } catch (const Error& e) {
                throw InvalidInput("action of " + f.name(i) + ": " + e.what());
            }
        }
        if (images_[f.identity()] != Matrix::identity(a.dim()))
            throw InvalidInput("action of the identity is not the identity");
        for (std::size_t x = 0; x < f.order(); ++x)
            for (std::size_t y = 0; y < f.order(); ++y)
                if (images_[f.mul(x, y)] != images_[x] * images_[y])
                    throw InvalidInput("action is not a homomorphism at (" + f.name(x) + "," + f.name(y) + ")");
        for (std::size_t x = 0; x < f.order(); ++x)
            if (images_[x] == Matrix::identity(a.dim()))
                kernel_.push_back(x);
    }

    static Action trivial(const LieAlgebra& a, const FiniteGroup& f) {
        return Action(a, f, std::vector<Matrix>(f.order(), Matrix::identity(a.dim())));
    }

    const Matrix& operator()(std::size_t f) const { return images_.at(f); }
    const std::vector<Matrix>& images() const { return images_; }
    const std::vector<std::size_t>& kernel() const { return kernel_; }
    bool in_kernel(std::size_t f) const { return std::find(kernel_.begin(), kernel_.end(), f) != kernel_.end(); }

  private:
    std::vector<Matrix> images_;
    std::vector<std::size_t> kernel_;
};

/// (x, f) in N^Q x| F, x in first-kind coordinates.
struct SemidirectElement {
    GroupElement x;
    std::size_t f = 0;
    friend bool operator==(const SemidirectElement&, const SemidirectElement&) = default;
};

/// (x1, f1)(x2, f2) = (x1 rho(f1)(x2), f1 f2)
inline SemidirectElement semidirect_mul(const MalcevGroup& g, const FiniteGroup& f, const Action& rho,
                                        const SemidirectElement& a, const SemidirectElement& b) {
    return {g.mul(a.x, rho(a.f) * b.x), f.mul(a.f, b.f)};
}

/// (x, f)^-1 = (rho(f^-1)(x^-1), f^-1)
inline SemidirectElement semidirect_inverse(const MalcevGroup& g, const FiniteGroup& f, const Action& rho,
                                            const SemidirectElement& a) {
    const std::size_t fi = f.inverse(a.f);
    return {rho(fi) * g.inverse(a.x), fi};
}

/// Translation part x_f of the coset of Gamma lying over f.
struct CosetRep {
    std::size_t f = 0;
    GroupElement x;
};

/// Gamma inside N^Q x|_rho F as the union of the cosets (N x_f, f), with
/// N = Gamma cap N^Q a full subgroup.
class VNGroup {
  public:
    VNGroup() = default;

    VNGroup(Lattice lattice, FiniteGroup f, Action rho, std::vector<CosetRep> reps)
        : lattice_(std::move(lattice)), f_(std::move(f)), rho_(std::move(rho)), reps_(std::move(reps)) {
        const std::size_t d = lattice_.dim();
        if (rho_.images().size() != f_.order())
            throw InvalidInput("action does not match the finite group");
        rep_of_.assign(f_.order(), npos);
        for (std::size_t i = 0; i < reps_.size(); ++i) {
            if (reps_[i].f >= f_.order())
                throw InvalidInput("coset representative over an unknown element");
            if (reps_[i].x.size() != d)
                throw DimensionError("coset representative has wrong length");
            if (rep_of_[reps_[i].f] != npos)
                throw InvalidInput("two coset representatives over " + f_.name(reps_[i].f));
            rep_of_[reps_[i].f] = i;
        }
        if (rep_of_[f_.identity()] == npos) {
            rep_of_[f_.identity()] = reps_.size();
            reps_.push_back({f_.identity(), zero_vector(d)});
        }
        if (!lattice_.contains(rep(f_.identity()).x))
            throw InvalidInput("coset representative over the identity is not in the lattice");
        // N normal in Gamma
        for (const auto& r : reps_)
            for (const auto& n : lattice_.generators()) {
                const auto c = mul(mul(SemidirectElement{r.x, r.f}, {n, f_.identity()}),
                                   inverse(SemidirectElement{r.x, r.f}));
                if (!lattice_.contains(c.x))
                    throw InvalidInput("lattice is not normalised by the coset over " + f_.name(r.f));
            }
        // closure of the cosets
        for (const auto& a : reps_)
            for (const auto& b : reps_)
                if (!contains(mul({a.x, a.f}, {b.x, b.f})))
                    throw InvalidInput("cosets over " + f_.name(a.f) + " and " + f_.name(b.f) +
                                       " do not multiply into the group");
        lattice_names_.clear();
        for (std::size_t i = 0; i < d; ++i)
            lattice_names_.push_back("n" + std::to_string(i + 1));
    }

    const Lattice& lattice() const { return lattice_; }
    const MalcevGroup& group() const { return lattice_.group(); }
    const LieAlgebra& algebra() const { return lattice_.algebra(); }
    const FiniteGroup& finite_group() const { return f_; }
    const Action& action() const { return rho_; }
    const std::vector<CosetRep>& reps() const { return reps_; }
    std::size_t dim() const { return lattice_.dim(); }

    bool has_coset(std::size_t f) const { return rep_of_.at(f) != npos; }
    const CosetRep& rep(std::size_t f) const {
        if (!has_coset(f))
            throw InvalidInput("no coset over " + f_.name(f));
        return reps_[rep_of_[f]];
    }

    SemidirectElement identity() const { return {zero_vector(dim()), f_.identity()}; }
    SemidirectElement mul(const SemidirectElement& a, const SemidirectElement& b) const {
        return semidirect_mul(group(), f_, rho_, a, b);
    }
    SemidirectElement inverse(const SemidirectElement& a) const { return semidirect_inverse(group(), f_, rho_, a); }
    SemidirectElement conjugate(const SemidirectElement& g, const SemidirectElement& x) const {
        return mul(mul(g, x), inverse(g));
    }

    /// n in N with (y, f) = (n, e)(x_f, f), i.e. n = y x_f^-1.
    GroupElement lattice_part(const SemidirectElement& a) const {
        return group().mul(a.x, group().inverse(rep(a.f).x));
    }

    bool contains(const SemidirectElement& a) const {
        return has_coset(a.f) && lattice_.contains(lattice_part(a));
    }

    /// (n, e) for lattice coordinates c followed by the coset representative.
    SemidirectElement from_normal_form(const Vector& c, std::size_t f) const {
        return mul({lattice_.from_second_kind(c), f_.identity()}, {rep(f).x, f});
    }

    /// Lattice generators (n_i, e), then the representatives over f != e.
    std::vector<SemidirectElement> generators() const {
        std::vector<SemidirectElement> out;
        for (const auto& n : lattice_.generators())
            out.push_back({n, f_.identity()});
        for (const auto& r : reps_)
            if (r.f != f_.identity())
                out.push_back({r.x, r.f});
        return out;
    }

    /// Generator names: lattice generators first, then one per non-identity coset.
    std::vector<std::string> generator_names() const {
        std::vector<std::string> out = lattice_names_;
        for (const auto& r : reps_)
            if (r.f != f_.identity())
                out.push_back(coset_name(r.f));
        return out;
    }
    void set_lattice_names(std::vector<std::string> names) {
        if (names.size() != dim())
            throw InvalidInput("need one name per lattice generator");
        lattice_names_ = std::move(names);
    }
    void set_coset_name(std::size_t f, std::string name) { coset_names_[f] = std::move(name); }
    std::string coset_name(std::size_t f) const {
        auto it = coset_names_.find(f);
        return it == coset_names_.end() ? f_.name(f) : it->second;
    }

    /// Word n_1^c_1 ... n_d^c_d * (coset generator) for an element of Gamma.
    std::string word(const SemidirectElement& a) const {
        if (!contains(a))
            throw PreconditionError("element is not in the group");
        const Vector c = lattice_.to_second_kind(lattice_part(a));
        std::vector<std::string> parts;
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (c[i] == 0)
                continue;
            parts.push_back(c[i] == 1 ? lattice_names_[i] : lattice_names_[i] + "^" + c[i].get_str());
        }
        if (a.f != f_.identity())
            parts.push_back(coset_name(a.f));
        if (parts.empty())
            return "e";
        std::string out = parts.front();
        for (std::size_t i = 1; i < parts.size(); ++i)
            out += "*" + parts[i];
        return out;
    }

  private:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    Lattice lattice_;
    FiniteGroup f_;
    Action rho_;
    std::vector<CosetRep> reps_;
    std::vector<std::size_t> rep_of_;
    std::vector<std::string> lattice_names_;
    std::map<std::size_t, std::string> coset_names_;
};

/// C_G(N) = {(x, f) : x in Z(n^Q), f in ker rho}.
struct CentralizerDescription {
    Subspace center;
    std::vector<std::size_t> kernel;

    bool contains(const SemidirectElement& a) const {
        return center.contains(a.x) && std::find(kernel.begin(), kernel.end(), a.f) != kernel.end();
    }
};

inline CentralizerDescription centralizer_of_lattice(const VNGroup& g) {
    return {center(g.algebra()), g.action().kernel()};
}

/// Whether (x, f) commutes with every lattice generator, by direct multiplication.
inline bool centralizes_lattice(const VNGroup& g, const SemidirectElement& a) {
    for (const auto& n : g.lattice().generators()) {
        const SemidirectElement ne{n, g.finite_group().identity()};
        if (g.mul(a, ne) != g.mul(ne, a))
            return false;
    }
    return true;
}

/// Gamma cap ker(rho): the elements (0, f) of Gamma with rho(f) trivial.
inline std::vector<SemidirectElement> max_finite_normal(const VNGroup& g) {
    std::vector<SemidirectElement> out;
    for (std::size_t f : g.action().kernel()) {
        SemidirectElement a{zero_vector(g.dim()), f};
        if (g.contains(a))
            out.push_back(std::move(a));
    }
    return out;
}

} // namespace scaleinv
