#pragma once

// JSON encoding of results. Rationals and integers are decimal strings
// ("3", "-1/2"), vectors are arrays, matrices are arrays of rows, and
// polynomials are ascending coefficient arrays. Every encoder has a matching
// decoder.

#include "scaleinv/liealg/derivations.hpp"
#include "scaleinv/liealg/grading.hpp"
#include "scaleinv/morphisms/coboundary.hpp"
#include "scaleinv/morphisms/intersection.hpp"
#include "scaleinv/reidemeister/reidemeister.hpp"
#include "scaleinv/vn/construction.hpp"

#include <json.hpp>

namespace nlohmann {

template <>
struct adl_serializer<mpq_class> {
    static void to_json(json& j, const mpq_class& q) { j = q.get_str(); }
    static void from_json(const json& j, mpq_class& q) { q = scaleinv::parse_rational(j.get<std::string>()); }
};

template <>
struct adl_serializer<mpz_class> {
    static void to_json(json& j, const mpz_class& z) { j = z.get_str(); }
    static void from_json(const json& j, mpz_class& z) {
        if (z.set_str(j.get<std::string>(), 10) != 0)
            throw scaleinv::InvalidInput("bad integer '" + j.get<std::string>() + "'");
    }
};

} // namespace nlohmann

namespace scaleinv {

using nlohmann::json;

inline void to_json(json& j, const Matrix& m) {
    j = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r)
        j.push_back(m.row(r));
}
inline void from_json(const json& j, Matrix& m) {
    const auto rows = j.get<std::vector<Vector>>();
    m = rows.empty() ? Matrix() : Matrix::from_rows(rows);
}

inline void to_json(json& j, const Polynomial& p) { j = p.coefficients(); }
inline void from_json(const json& j, Polynomial& p) { p = Polynomial(j.get<std::vector<Rational>>()); }

inline void to_json(json& j, const IndexValue& v) { j = v.to_string(); }
inline void from_json(const json& j, IndexValue& v) {
    const auto s = j.get<std::string>();
    v = s == "INFINITE" ? IndexValue::infinite() : IndexValue::finite(Integer(s));
}

inline void to_json(json& j, const Grading& g) { j = {{"weights", g.weights}, {"basis_change", g.basis_change}}; }
inline void from_json(const json& j, Grading& g) {
    j.at("weights").get_to(g.weights);
    j.at("basis_change").get_to(g.basis_change);
}

inline void to_json(json& j, const LieAlgebra& a) {
    json constants = json::array();
    for (const auto& e : a.entries())
        constants.push_back({e.i + 1, e.j + 1, e.k + 1, e.value});
    j = {{"dim", a.dim()}, {"constants", constants}};
}
inline void from_json(const json& j, LieAlgebra& a) {
    a = LieAlgebra(j.at("dim").get<std::size_t>());
    for (const auto& c : j.at("constants"))
        a.set_constant(c[0].get<std::size_t>() - 1, c[1].get<std::size_t>() - 1, c[2].get<std::size_t>() - 1,
                       c[3].get<Rational>());
}

inline SsiVerdict ssi_verdict_from_string(const std::string& s) {
    for (auto v : {SsiVerdict::not_ssi, SsiVerdict::ssi_certified, SsiVerdict::inconclusive})
        if (to_string(v) == s)
            return v;
    throw InvalidInput("unknown verdict '" + s + "'");
}

inline void to_json(json& j, const EigenReport& r) {
    j = {{"verdict", to_string(r.verdict)},
         {"reason", r.reason},
         {"char_polys", r.char_polys},
         {"has_eigenvalue_one", r.has_eigenvalue_one},
         {"has_root_of_unity", r.has_root_of_unity},
         {"expanding", r.expanding},
         {"is_automorphism_of_lattice", r.is_automorphism_of_lattice},
         {"abs_det", r.abs_det}};
}
inline void from_json(const json& j, EigenReport& r) {
    r.verdict = ssi_verdict_from_string(j.at("verdict").get<std::string>());
    j.at("reason").get_to(r.reason);
    j.at("char_polys").get_to(r.char_polys);
    j.at("has_eigenvalue_one").get_to(r.has_eigenvalue_one);
    j.at("has_root_of_unity").get_to(r.has_root_of_unity);
    j.at("expanding").get_to(r.expanding);
    j.at("is_automorphism_of_lattice").get_to(r.is_automorphism_of_lattice);
    j.at("abs_det").get_to(r.abs_det);
}

namespace detail {

template <class T>
json optional_json(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

template <class T>
void optional_from(const json& j, const char* key, std::optional<T>& v) {
    if (j.at(key).is_null())
        v.reset();
    else
        v = j.at(key).get<T>();
}

} // namespace detail

inline void to_json(json& j, const CoboundaryResult& r) {
    j = {{"unique", r.unique()},
         {"solution", detail::optional_json(r.solution)},
         {"fixed_witness", detail::optional_json(r.fixed_witness)}};
}
inline void from_json(const json& j, CoboundaryResult& r) {
    detail::optional_from(j, "solution", r.solution);
    detail::optional_from(j, "fixed_witness", r.fixed_witness);
}

inline void to_json(json& j, const BoundedIntersection& b) {
    j = {{"depth", b.depth}, {"ball", b.ball}, {"trivial", b.trivial()}, {"points", b.points}};
}
inline void from_json(const json& j, BoundedIntersection& b) {
    j.at("depth").get_to(b.depth);
    j.at("ball").get_to(b.ball);
    j.at("points").get_to(b.points);
}

inline void to_json(json& j, const ZetaCertificate& c) {
    j = {{"text", c.rational_function()},
         {"numerator", c.numerator},
         {"denominator", c.denominator},
         {"sign_period", c.sign_period},
         {"verified_order", c.verified_order}};
}
inline void from_json(const json& j, ZetaCertificate& c) {
    j.at("numerator").get_to(c.numerator);
    j.at("denominator").get_to(c.denominator);
    j.at("sign_period").get_to(c.sign_period);
    j.at("verified_order").get_to(c.verified_order);
}

inline ZetaStatus zeta_status_from_string(const std::string& s) {
    for (auto v : {ZetaStatus::certified, ZetaStatus::finiteness_fails, ZetaStatus::not_rational_at_order})
        if (to_string(v) == s)
            return v;
    throw InvalidInput("unknown zeta status '" + s + "'");
}

inline void to_json(json& j, const ZetaResult& r) {
    j = {{"status", to_string(r.status)},
         {"certificate", detail::optional_json(r.certificate)},
         {"first_bad", r.first_bad},
         {"sequence", r.sequence},
         {"message", r.message}};
}
inline void from_json(const json& j, ZetaResult& r) {
    r.status = zeta_status_from_string(j.at("status").get<std::string>());
    detail::optional_from(j, "certificate", r.certificate);
    j.at("first_bad").get_to(r.first_bad);
    j.at("sequence").get_to(r.sequence);
    j.at("message").get_to(r.message);
}

inline void to_json(json& j, const CharNilpotenceReport& r) {
    j = {{"all_nilpotent", r.all_nilpotent},
         {"derivation_dim", r.derivation_dim},
         {"witness", detail::optional_json(r.witness)},
         {"witness_power", r.witness_power}};
}
inline void from_json(const json& j, CharNilpotenceReport& r) {
    j.at("all_nilpotent").get_to(r.all_nilpotent);
    j.at("derivation_dim").get_to(r.derivation_dim);
    detail::optional_from(j, "witness", r.witness);
    j.at("witness_power").get_to(r.witness_power);
}

inline void to_json(json& j, const SemidirectElement& a) { j = {{"x", a.x}, {"f", a.f}}; }
inline void from_json(const json& j, SemidirectElement& a) {
    j.at("x").get_to(a.x);
    j.at("f").get_to(a.f);
}

inline void to_json(json& j, const ConjugatorResult& c) {
    j = {{"direction", c.direction}, {"family", c.family}, {"x", c.x}, {"trivial", c.trivial}};
}
inline void from_json(const json& j, ConjugatorResult& c) {
    j.at("direction").get_to(c.direction);
    j.at("family").get_to(c.family);
    j.at("x").get_to(c.x);
    j.at("trivial").get_to(c.trivial);
}

inline void to_json(json& j, const GroupIntersection& g) {
    j = {{"depth", g.depth}, {"ball", g.ball}, {"elements", g.elements}};
}
inline void from_json(const json& j, GroupIntersection& g) {
    j.at("depth").get_to(g.depth);
    j.at("ball").get_to(g.ball);
    j.at("elements").get_to(g.elements);
}

inline SsiStatus ssi_status_from_string(const std::string& s) {
    for (auto v : {SsiStatus::constructed, SsiStatus::not_constructible, SsiStatus::search_failed})
        if (to_string(v) == s)
            return v;
    throw InvalidInput("unknown construction status '" + s + "'");
}

// The morphism is written as its matrix and conjugator; decoding needs the
// group, so it is restored separately with restore_morphism.
inline void to_json(json& j, const SsiConstruction& c) {
    j = {{"status", to_string(c.status)},
         {"message", c.message},
         {"summary", c.summary()},
         {"grading", detail::optional_json(c.grading)},
         {"nilpotence", detail::optional_json(c.nilpotence)},
         {"conjugator", c.conjugator},
         {"m", c.m},
         {"p", c.p},
         {"k", c.k},
         {"images", c.images},
         {"intersection", c.intersection},
         {"finite_normal", c.finite_normal},
         {"intersection_matches", c.intersection_matches}};
    if (c.status == SsiStatus::constructed) {
        j["morphism"] = {{"matrix", c.morphism.matrix()}, {"conjugator", c.morphism.conjugator()}};
        j["lattice_report"] = c.lattice_report;
    }
}
inline void from_json(const json& j, SsiConstruction& c) {
    c.status = ssi_status_from_string(j.at("status").get<std::string>());
    j.at("message").get_to(c.message);
    detail::optional_from(j, "grading", c.grading);
    detail::optional_from(j, "nilpotence", c.nilpotence);
    j.at("conjugator").get_to(c.conjugator);
    j.at("m").get_to(c.m);
    j.at("p").get_to(c.p);
    j.at("k").get_to(c.k);
    j.at("images").get_to(c.images);
    j.at("intersection").get_to(c.intersection);
    j.at("finite_normal").get_to(c.finite_normal);
    j.at("intersection_matches").get_to(c.intersection_matches);
    if (j.contains("lattice_report"))
        j.at("lattice_report").get_to(c.lattice_report);
}

inline SsiMorphism restore_morphism(const VNGroup& g, const json& j) {
    const auto& m = j.at("morphism");
    return SsiMorphism(g, m.at("matrix").get<Matrix>(), m.at("conjugator").get<GroupElement>());
}

} // namespace scaleinv
