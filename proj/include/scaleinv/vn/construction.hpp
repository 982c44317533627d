#pragma once

#include "scaleinv/liealg/derivations.hpp"
#include "scaleinv/liealg/grading.hpp"
#include "scaleinv/morphisms/intersection.hpp"
#include "scaleinv/vn/semidirect.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace scaleinv {

namespace detail {

inline std::size_t abelian_rank(const VNGroup& g) { return g.lattice().layer_dims().front(); }

/// rho(f) on n / [n, n] in the layer-one lattice coordinates.
inline Matrix abelianized_action(const VNGroup& g, std::size_t f) {
    const std::size_t m = abelian_rank(g);
    return change_of_basis(g.action()(f), adapted_columns(g.lattice())).block(0, 0, m, m);
}

/// Layer-one lattice coordinates of x, i.e. its image in N^Q / [N^Q, N^Q].
inline Vector abelianized(const VNGroup& g, const GroupElement& x) {
    Vector c = g.lattice().basis_coords(x);
    c.resize(abelian_rank(g));
    return c;
}

/// The Lie vector with layer-one lattice coordinates y.
inline GroupElement lift_abelian(const VNGroup& g, const Vector& y) {
    GroupElement x = zero_vector(g.dim());
    for (std::size_t i = 0; i < y.size(); ++i)
        x = add(x, scale(y[i], g.lattice().generators()[i]));
    return x;
}

/// exp(ad x), so that exp(x) exp(v) exp(-x) = exp(Ad(x) v).
inline Matrix adjoint_exp(const LieAlgebra& a, const GroupElement& x) {
    const Matrix ad = a.ad(x);
    Matrix sum = Matrix::identity(a.dim()), term = Matrix::identity(a.dim());
    for (std::size_t k = 1; k <= a.dim(); ++k) {
        term = term * ad;
        term *= Rational(1, static_cast<long>(k));
        sum += term;
    }
    return sum;
}

/// Nonzero integer vectors by increasing max-norm; within a norm, smaller
/// absolute values first and positive before negative, coordinate by coordinate.
inline std::vector<Vector> small_vectors(std::size_t m, long norm) {
    std::vector<Vector> out;
    for (const auto& v : integer_box(m, norm)) {
        Rational mx = 0;
        for (const auto& c : v)
            mx = std::max(mx, Rational(abs(c)));
        if (mx == norm)
            out.push_back(v);
    }
    auto key = [](const Vector& v) {
        std::vector<std::pair<Rational, bool>> k;
        for (const auto& c : v)
            k.emplace_back(abs(c), c < 0);
        return k;
    };
    std::sort(out.begin(), out.end(), [&](const Vector& a, const Vector& b) { return key(a) < key(b); });
    return out;
}

} // namespace detail

/// x Gamma x^-1 cap F lies in ker rho iff, for every coset over f outside
/// ker rho, the translation part of (x, e)(x_f, f)(x, e)^-1 leaves the
/// lattice image in the abelianization.
inline bool verify_conjugator(const VNGroup& g, const GroupElement& x) {
    const SemidirectElement xe{x, g.finite_group().identity()};
    for (const auto& r : g.reps()) {
        if (g.action().in_kernel(r.f))
            continue;
        const auto c = g.conjugate(xe, {r.x, r.f});
        if (is_integral(detail::abelianized(g, c.x)))
            return false;
    }
    return true;
}

struct ConjugatorResult {
    Vector direction;         // y, in layer-one lattice coordinates
    std::vector<long> family; // every m <= m_max for which x = y/m passes verification
    GroupElement x;           // y / family.front()
    bool trivial = false;     // rho is trivial on Gamma: x = 0

    GroupElement member(const VNGroup& g, long m) const {
        return detail::lift_abelian(g, scale(Rational(1, m), direction));
    }

    friend bool operator==(const ConjugatorResult&, const ConjugatorResult&) = default;
};

/// Picks the first small integer y outside the fixed spaces of every
/// rho(f), f not in ker rho, then lists the scalings x = y/m that verify.
inline ConjugatorResult conjugator_search(const VNGroup& g, long m_max = 16) {
    ConjugatorResult out;
    std::vector<std::size_t> moving;
    for (const auto& r : g.reps())
        if (!g.action().in_kernel(r.f))
            moving.push_back(r.f);
    const std::size_t m1 = detail::abelian_rank(g);
    if (moving.empty()) {
        out.trivial = true;
        out.direction = zero_vector(m1);
        out.x = zero_vector(g.dim());
        return out;
    }
    std::vector<Matrix> moves;
    for (std::size_t f : moving)
        moves.push_back(Matrix::identity(m1) - detail::abelianized_action(g, f));
    for (long norm = 1; norm <= 64 && out.direction.empty(); ++norm)
        for (const auto& y : detail::small_vectors(m1, norm)) {
            bool ok = true;
            for (const auto& mv : moves)
                ok = ok && !is_zero(mv * y);
            if (ok) {
                out.direction = y;
                break;
            }
        }
    if (out.direction.empty())
        throw std::logic_error("no vector avoids the fixed spaces of the action");
    for (long m = 1; m <= m_max; ++m)
        if (verify_conjugator(g, out.member(g, m)))
            out.family.push_back(m);
    if (out.family.empty())
        throw PreconditionError("no conjugator y/m with m <= " + std::to_string(m_max) + " passes verification");
    out.x = out.member(g, out.family.front());
    return out;
}

/// Whether rho(f) commutes with the weight-space scaling for every f in F.
inline bool grading_preserved(const VNGroup& g, const Grading& gr) {
    const Matrix d = grading_derivation(gr);
    for (const auto& m : g.action().images())
        if (m * d != d * m)
            return false;
    return true;
}

/// Averages the grading derivation over rho(F); returns a grading if the
/// average is diagonalizable with the same weights and is preserved.
inline std::optional<Grading> average_grading(const VNGroup& g, const Grading& gr) {
    const std::size_t d = g.dim();
    const Matrix dg = grading_derivation(gr);
    Matrix avg(d, d);
    for (const auto& m : g.action().images())
        avg += m * dg * inverse(m);
    avg *= Rational(1, static_cast<long>(g.finite_group().order()));
    Grading out;
    std::vector<Vector> cols;
    for (const auto& w : gr.distinct_weights())
        for (auto& v : nullspace(avg - Rational(w) * Matrix::identity(d))) {
            cols.push_back(std::move(v));
            out.weights.push_back(w);
        }
    if (cols.size() != d)
        return std::nullopt;
    out.basis_change = Matrix::from_columns(cols);
    if (!verify_grading(g.algebra(), out) || !grading_preserved(g, out))
        return std::nullopt;
    return out;
}

/// Multiplication by p^w on the weight-w space.
inline Matrix weight_scaling(const Grading& gr, unsigned long p) {
    Vector diag;
    for (const auto& w : gr.weights)
        diag.push_back(Rational(integer_pow(Integer(p), w.get_ui())));
    return gr.basis_change * Matrix::diagonal(diag) * inverse(gr.basis_change);
}

/// The automorphism gamma -> x^-1 Phi(x gamma x^-1) x of N^Q x| F, where
/// Phi(y, f) = (phi y, f) and phi commutes with rho(F).
class SsiMorphism {
  public:
    SsiMorphism() = default;
    SsiMorphism(const VNGroup& g, Matrix phi, GroupElement x)
        : g_(&g), phi_(std::move(phi)), phi_inv_(inverse(phi_)), x_(std::move(x)) {}

    const Matrix& matrix() const { return phi_; }
    const GroupElement& conjugator() const { return x_; }

    SemidirectElement apply(const SemidirectElement& a) const { return through(a, phi_); }
    SemidirectElement apply_inverse(const SemidirectElement& a) const { return through(a, phi_inv_); }
    SemidirectElement apply_inverse_power(SemidirectElement a, unsigned long n) const {
        return through(a, matrix_power(phi_inv_, n));
    }

    /// Every generator of Gamma maps into Gamma.
    bool preserves_group() const {
        for (const auto& gen : g_->generators())
            if (!g_->contains(apply(gen)))
                return false;
        return true;
    }

    /// The map on N^Q: Ad(x)^-1 phi Ad(x).
    LieMorphism lattice_part() const {
        const auto& a = g_->algebra();
        return LieMorphism{detail::adjoint_exp(a, negate(x_)) * phi_ * detail::adjoint_exp(a, x_)};
    }

  private:
    SemidirectElement through(const SemidirectElement& a, const Matrix& m) const {
        const SemidirectElement xe{x_, g_->finite_group().identity()};
        SemidirectElement c = g_->conjugate(xe, a);
        c.x = m * c.x;
        return g_->conjugate(g_->inverse(xe), c);
    }

    const VNGroup* g_ = nullptr;
    Matrix phi_, phi_inv_;
    GroupElement x_;
};

/// Least k <= k_max with Gamma invariant under the k-th power of phi_p.
inline std::optional<unsigned> least_invariant_power(const VNGroup& g, const Matrix& phi_p, const GroupElement& x,
                                                     unsigned k_max) {
    Matrix m = phi_p;
    for (unsigned k = 1; k <= k_max; ++k) {
        if (SsiMorphism(g, m, x).preserves_group())
            return k;
        m = m * phi_p;
    }
    return std::nullopt;
}

struct ExpandingEndo {
    Grading grading;  // the rho(F)-invariant grading used
    Matrix phi_p;
    unsigned long p = 0;
    unsigned k = 0;
    Matrix matrix;  // phi_p^k
};

/// The rho(F)-invariant version of a grading: the grading itself, or its
/// rho(F)-average.
inline Grading invariant_grading(const VNGroup& g, const Grading& gr) {
    check_grading_shape(g.algebra(), gr);
    if (!verify_grading(g.algebra(), gr))
        throw InvalidInput("weights do not define a grading of the algebra");
    if (grading_preserved(g, gr))
        return gr;
    if (auto avg = average_grading(g, gr))
        return *avg;
    throw PreconditionError("grading is not preserved by rho(F) and its rho(F)-average is not a grading");
}

inline ExpandingEndo build_expanding_endo(const VNGroup& g, const Grading& gr, unsigned long p,
                                          const GroupElement& x, unsigned k_max = 64) {
    ExpandingEndo out;
    out.grading = invariant_grading(g, gr);
    out.p = p;
    out.phi_p = weight_scaling(out.grading, p);
    auto k = least_invariant_power(g, out.phi_p, x, k_max);
    if (!k)
        throw PreconditionError("no power k <= " + std::to_string(k_max) + " of phi_" + std::to_string(p) +
                                " leaves the group invariant");
    out.k = *k;
    out.matrix = matrix_power(out.phi_p, out.k);
    return out;
}

inline ExpandingEndo build_expanding_endo(const VNGroup& g, const Grading& gr, unsigned long p, unsigned k_max = 64) {
    return build_expanding_endo(g, gr, p, zero_vector(g.dim()), k_max);
}

struct GroupIntersection {
    unsigned long depth = 0;
    long ball = 0;
    std::vector<SemidirectElement> elements;

    friend bool operator==(const GroupIntersection&, const GroupIntersection&) = default;
};

/// Elements of Gamma with lattice coordinates in [-ball, ball] that lie in
/// phi^depth(Gamma), hence in every phi^n(Gamma), n <= depth. The layer-one
/// coordinates are screened first with the induced affine map on
/// N^Q / [N^Q, N^Q] x| F, which is a necessary condition.
inline GroupIntersection bounded_group_intersection(const VNGroup& g, const SsiMorphism& phi,
                                                    unsigned long depth = 8, long ball = 16) {
    GroupIntersection out{depth, ball, {}};
    const Matrix inv_power = matrix_power(inverse(phi.matrix()), depth);
    const SsiMorphism back(g, inv_power, phi.conjugator());
    const std::size_t d = g.dim(), m1 = detail::abelian_rank(g);
    const Matrix ab_back =
        change_of_basis(inv_power, adapted_columns(g.lattice())).block(0, 0, m1, m1);
    const Vector xa = detail::abelianized(g, phi.conjugator());
    for (const auto& r : g.reps()) {
        const Matrix ab_rho = detail::abelianized_action(g, r.f);
        const Vector shift = sub(xa, ab_rho * xa);
        const Vector rep_ab = detail::abelianized(g, r.x);
        for (const auto& top : detail::integer_box(m1, ball)) {
            // abelian image of back.apply(a) minus that of x_f must be integral
            const Vector y = add(top, rep_ab);
            const Vector image = sub(ab_back * add(shift, y), shift);
            if (!is_integral(sub(image, rep_ab)))
                continue;
            for (const auto& rest : detail::integer_box(d - m1, ball)) {
                Vector c = top;
                c.insert(c.end(), rest.begin(), rest.end());
                const SemidirectElement a = g.from_normal_form(c, r.f);
                if (g.contains(back.apply(a)))
                    out.elements.push_back(a);
            }
        }
    }
    return out;
}

enum class SsiStatus { constructed, not_constructible, search_failed };

inline std::string to_string(SsiStatus s) {
    switch (s) {
    case SsiStatus::constructed: return "CONSTRUCTED";
    case SsiStatus::not_constructible: return "NOT_CONSTRUCTIBLE";
    default: return "SEARCH_FAILED";
    }
}

struct SsiOptions {
    std::optional<Grading> grading;
    unsigned long depth = 8;
    long ball = 16;
    long m_max = 16;
    unsigned long p_max = 97;
    unsigned k_max = 64;
};

struct SsiConstruction {
    SsiStatus status = SsiStatus::search_failed;
    std::string message;
    std::optional<Grading> grading;
    std::optional<CharNilpotenceReport> nilpotence;  // set when no grading was found
    ConjugatorResult conjugator;
    long m = 0;  // x = direction / m
    unsigned long p = 0;
    unsigned k = 0;
    SsiMorphism morphism;
    std::vector<std::pair<std::string, std::string>> images;  // generator name, word of its image
    EigenReport lattice_report;
    GroupIntersection intersection;
    std::vector<SemidirectElement> finite_normal;
    bool intersection_matches = false;

    std::string summary() const {
        if (status != SsiStatus::constructed)
            return to_string(status) + ": " + message;
        std::string out;
        for (std::size_t i = 0; i < images.size(); ++i)
            out += (i ? ", " : "") + std::string("phi(") + images[i].first + ")=" + images[i].second;
        const bool trivial = intersection.elements.size() == 1 && is_zero(intersection.elements.front().x);
        out += "; intersection(ball)=" + (trivial ? std::string("trivial")
                                                 : std::to_string(intersection.elements.size()) + " elements");
        return out;
    }
};

inline bool is_prime(unsigned long n) {
    if (n < 2)
        return false;
    for (unsigned long d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

/// Grading, conjugator, expanding endomorphism and its restriction to Gamma,
/// with the bounded intersection compared to Gamma cap ker rho. Among the
/// conjugator family and primes p <= p_max the least p^k is chosen.
inline SsiConstruction construct_ssi(const VNGroup& g, const SsiOptions& opt = {}) {
    SsiConstruction out;
    std::optional<Grading> gr = opt.grading;
    if (!gr) {
        auto search = find_positive_grading(g.algebra());
        if (!search.found()) {
            out.nilpotence = all_derivations_nilpotent(g.algebra());
            out.status = SsiStatus::not_constructible;
            out.message = out.nilpotence->all_nilpotent
                              ? "no positive grading: every derivation is nilpotent"
                              : "no positive grading diagonal in the given basis";
            return out;
        }
        gr = search.grading;
    }
    try {
        out.grading = invariant_grading(g, *gr);
    } catch (const PreconditionError& e) {
        out.status = SsiStatus::search_failed;
        out.message = e.what();
        return out;
    }
    out.conjugator = conjugator_search(g, opt.m_max);
    std::vector<long> family = out.conjugator.family;
    if (out.conjugator.trivial)
        family = {0};

    std::optional<Integer> best;
    for (long m : family) {
        const GroupElement x = m == 0 ? zero_vector(g.dim()) : out.conjugator.member(g, m);
        for (unsigned long p = 2; p <= opt.p_max; ++p) {
            if (!is_prime(p))
                continue;
            if (best && Integer(p) >= *best)
                break;
            const Matrix phi_p = weight_scaling(*out.grading, p);
            Matrix power = phi_p;
            Integer pk = p;
            for (unsigned k = 1; k <= opt.k_max && (!best || pk < *best); ++k) {
                if (SsiMorphism(g, power, x).preserves_group()) {
                    best = pk;
                    out.m = m;
                    out.p = p;
                    out.k = k;
                    break;
                }
                power = power * phi_p;
                pk *= p;
            }
        }
    }
    if (!best) {
        out.status = SsiStatus::search_failed;
        out.message = "no p <= " + std::to_string(opt.p_max) + ", k <= " + std::to_string(opt.k_max) +
                      " leaves the group invariant";
        return out;
    }
    if (out.m != 0)
        out.conjugator.x = out.conjugator.member(g, out.m);
    out.morphism = SsiMorphism(g, matrix_power(weight_scaling(*out.grading, out.p), out.k), out.conjugator.x);

    const auto names = g.generator_names();
    const auto gens = g.generators();
    for (std::size_t i = 0; i < gens.size(); ++i)
        out.images.emplace_back(names[i], g.word(out.morphism.apply(gens[i])));
    out.lattice_report = classify(layer_maps(g.lattice(), out.morphism.lattice_part()));
    out.intersection = bounded_group_intersection(g, out.morphism, opt.depth, opt.ball);
    out.finite_normal = max_finite_normal(g);
    auto sorted = [](std::vector<SemidirectElement> v) {
        std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
            return a.f != b.f ? a.f < b.f : detail::lex_less(a.x, b.x);
        });
        return v;
    };
    out.intersection_matches = sorted(out.intersection.elements) == sorted(out.finite_normal);
    out.status = SsiStatus::constructed;
    out.message = out.intersection_matches ? "intersection equals the maximal finite normal subgroup"
                                           : "intersection differs from the maximal finite normal subgroup";
    return out;
}

} // namespace scaleinv
