#pragma once

#include "scaleinv/cli/fixture.hpp"
#include "scaleinv/cli/report.hpp"

#include <sstream>

namespace scaleinv::cli {

enum ExitCode { exit_ok = 0, exit_input_error = 1, exit_negative = 2 };

struct Report {
    int exit_code = exit_ok;
    std::string status;  // e.g. VALID, NOT_SSI, CERTIFIED
    std::string text;    // human-readable lines
    json data;           // machine-readable payload

    json document(const std::string& command, const std::string& fixture) const {
        return {{"schema", 1},
                {"command", command},
                {"fixture", fixture},
                {"status", status},
                {"exit_code", exit_code},
                {"result", data}};
    }
};

struct Options {
    std::string grading_mode = "find";  // grading find|verify
    std::string x;                      // coboundary target, comma separated
    unsigned long depth = 8;
    long ball = 16;
    unsigned long upto = 10;
    unsigned long order = 20;
    unsigned long p_max = 97;
};

namespace detail {

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i)
        out += (i ? sep : "") + parts[i];
    return out;
}

template <class T>
std::string join_values(const std::vector<T>& v, const std::string& sep = ", ") {
    std::vector<std::string> parts;
    for (const auto& e : v) {
        std::ostringstream s;
        s << e;
        parts.push_back(s.str());
    }
    return join(parts, sep);
}

inline Vector parse_vector(const std::string& s, std::size_t dim) {
    Vector v;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ','))
        if (!item.empty())
            v.push_back(parse_rational(item));
    if (v.size() != dim)
        throw InvalidInput("expected " + std::to_string(dim) + " comma separated entries, got '" + s + "'");
    return v;
}

inline std::string matrix_lines(const Matrix& m, const std::string& indent) {
    std::string out;
    for (std::size_t r = 0; r < m.rows(); ++r)
        out += indent + to_string(m.row(r)) + "\n";
    return out;
}

inline std::vector<std::string> index_strings(const std::vector<IndexValue>& v) {
    std::vector<std::string> out;
    for (const auto& e : v)
        out.push_back(e.to_string());
    return out;
}

} // namespace detail

inline Report cmd_validate(const FixtureFile& fx) {
    Report r;
    const ValidationReport v = validate(fx.algebra);
    if (!v.ok) {
        r.exit_code = exit_input_error;
        r.status = "INVALID";
        r.text = "INVALID: " + v.violation->describe() + "\n";
        r.data = {{"valid", false}, {"violation", v.violation->describe()}};
        return r;
    }
    r.status = "VALID";
    r.data = {{"valid", true}, {"dim", fx.dim}, {"nilpotency_class", v.nilpotency_class}};
    std::string what = "Lie algebra of dimension " + std::to_string(fx.dim) + ", nilpotency class " +
                       std::to_string(v.nilpotency_class);
    const Lattice l = fixture_lattice(fx);
    r.data["lattice_basis"] = l.basis();
    if (fx.morphism) {
        const LieMorphism phi = fixture_morphism(fx);
        if (auto bad = invariance_failure(l, phi))
            throw InvalidInput("morphism does not preserve the lattice (generator " + std::to_string(*bad + 1) + ")");
        what += "; morphism preserves the lattice";
        r.data["morphism"] = phi.matrix;
    }
    if (fx.grading) {
        check_grading_shape(fx.algebra, *fx.grading);
        const bool ok = verify_grading(fx.algebra, *fx.grading);
        if (!ok)
            throw InvalidInput("[grading] is not a grading of the algebra");
        what += "; grading verified";
        r.data["grading"] = *fx.grading;
    }
    if (!fx.group_elements.empty() || !fx.cosets.empty()) {
        const VNGroup g = fixture_vngroup(fx);
        what += "; virtually nilpotent group with |F| = " + std::to_string(g.finite_group().order());
        r.data["finite_group_order"] = g.finite_group().order();
    }
    r.text = "VALID: " + what + "\n";
    return r;
}

inline Report cmd_lcs(const FixtureFile& fx) {
    Report r;
    const MalcevGroup grp = fixture_group(fx);
    const Flag lower = lower_central_series(fx.algebra);
    const Flag upper = upper_central_series(fx.algebra);
    const Matrix basis = adapted_basis(lower);
    r.status = "OK";
    r.data = {{"nilpotency_class", grp.nilpotency_class()},
              {"lower_layer_dims", lower.layer_dims},
              {"upper_layer_dims", upper.layer_dims},
              {"adapted_basis", basis}};
    r.text = "class " + std::to_string(grp.nilpotency_class()) + "\nlower central layers: (" +
             detail::join_values(lower.layer_dims) + ")\nupper central layers: (" +
             detail::join_values(upper.layer_dims) + ")\nadapted basis:\n" + detail::matrix_lines(basis, "  ");
    return r;
}

inline Report cmd_grading(const FixtureFile& fx, const Options& opt) {
    Report r;
    fixture_group(fx);
    if (opt.grading_mode == "verify") {
        if (!fx.grading)
            throw InvalidInput(fx.path + ": missing [grading] section");
        const bool ok = verify_grading(fx.algebra, *fx.grading);
        r.status = ok ? "GRADING" : "NOT_A_GRADING";
        r.exit_code = ok ? exit_ok : exit_negative;
        r.data = {{"grading", *fx.grading}, {"valid", ok}};
        r.text = r.status + ": weights (" + detail::join_values(fx.grading->weights) + ")\n";
        return r;
    }
    if (opt.grading_mode != "find")
        throw InvalidInput("grading mode must be 'find' or 'verify'");
    const GradingSearch s = find_positive_grading(fx.algebra);
    if (s.found()) {
        r.status = "FOUND";
        r.data = {{"found", true}, {"grading", *s.grading}};
        r.text = "FOUND: weights (" + detail::join_values(s.grading->weights) + ")\n";
        return r;
    }
    r.status = "NOT_FOUND";
    r.exit_code = exit_negative;
    r.data = {{"found", false},
              {"lambda", s.certificate->lambda},
              {"mu", s.certificate->mu},
              {"constraints", s.constraints}};
    r.text = "NOT_FOUND: no positive grading diagonal in the given basis\ncertificate lambda = " +
             to_string(s.certificate->lambda) + ", mu = " + to_string(s.certificate->mu) + "\n";
    return r;
}

inline Report cmd_char_nilpotent(const FixtureFile& fx) {
    Report r;
    fixture_group(fx);
    const CharNilpotenceReport c = all_derivations_nilpotent(fx.algebra);
    r.status = c.all_nilpotent ? "ALL_NILPOTENT" : "NOT_ALL_NILPOTENT";
    r.data = c;
    r.text = r.status + ": dim Der = " + std::to_string(c.derivation_dim) + "\n";
    if (c.witness)
        r.text += "witness D with trace(D^" + std::to_string(c.witness_power) + ") != 0:\n" +
                  detail::matrix_lines(*c.witness, "  ");
    return r;
}

inline Report cmd_classify(const FixtureFile& fx) {
    Report r;
    const Lattice l = fixture_lattice(fx);
    const LieMorphism phi = fixture_morphism(fx);
    const EigenReport e = classify(layer_maps(l, phi));
    r.status = to_string(e.verdict);
    r.exit_code = e.verdict == SsiVerdict::not_ssi ? exit_negative : exit_ok;
    r.data = e;
    std::vector<std::string> polys;
    for (const auto& p : e.char_polys)
        polys.push_back(p.to_string());
    r.text = r.status + ": " + e.reason + "\n|det| = " + e.abs_det.get_str() + "\neigenvalue 1: " +
             (e.has_eigenvalue_one ? "yes" : "no") + "\nlayer characteristic polynomials: " +
             detail::join(polys, "; ") + "\n";
    return r;
}

inline Report cmd_coboundary(const FixtureFile& fx, const Options& opt) {
    Report r;
    const MalcevGroup grp = fixture_group(fx);
    const LieMorphism phi = fixture_morphism(fx);
    const GroupElement x = detail::parse_vector(opt.x, fx.dim);
    const CoboundaryResult c = coboundary_solve(grp, phi, x);
    r.data = c;
    if (c.unique()) {
        r.status = "UNIQUE";
        r.text = "UNIQUE: y = " + to_string(*c.solution) + "\n";
    } else {
        r.status = "NOT_UNIQUE";
        r.exit_code = exit_negative;
        r.text = "NOT_UNIQUE: 1 is an eigenvalue, fixed vector " + to_string(*c.fixed_witness) + "\n";
    }
    return r;
}

inline Report cmd_intersect(const FixtureFile& fx, const Options& opt) {
    Report r;
    const Lattice l = fixture_lattice(fx);
    const LieMorphism phi = fixture_morphism(fx);
    const BoundedIntersection b = bounded_intersection(l, phi, opt.depth, opt.ball);
    r.status = b.trivial() ? "TRIVIAL" : "NONTRIVIAL";
    r.data = b;
    r.text = r.status + ": " + std::to_string(b.points.size()) + " point(s) with |coordinates| <= " +
             std::to_string(b.ball) + " in the image of phi^" + std::to_string(b.depth) + "\n";
    if (!b.trivial())
        for (const auto& p : b.points)
            r.text += "  " + to_string(p) + "\n";
    return r;
}

inline Report cmd_reidemeister(const FixtureFile& fx, const Options& opt) {
    Report r;
    const Lattice l = fixture_lattice(fx);
    const LieMorphism phi = fixture_morphism(fx);
    const auto seq = reidemeister_sequence(l, phi, opt.upto);
    r.status = seq.front().is_infinite() ? "INFINITE" : "FINITE";
    r.data = {{"sequence", seq}};
    r.text = "R(phi^n), n = 1.." + std::to_string(opt.upto) + ": " +
             detail::join(detail::index_strings(seq), ", ") + "\n";
    return r;
}

inline Report cmd_zeta(const FixtureFile& fx, const Options& opt) {
    Report r;
    const Lattice l = fixture_lattice(fx);
    const LieMorphism phi = fixture_morphism(fx);
    const ZetaResult z = zeta_certificate(l, phi, opt.order);
    r.status = to_string(z.status);
    r.data = z;
    if (z.certificate) {
        r.text = z.certificate->to_string() + "\n";
    } else {
        r.exit_code = exit_negative;
        r.text = r.status + ": " + z.message + "\n";
    }
    return r;
}

inline Report cmd_centralizer(const FixtureFile& fx) {
    Report r;
    const VNGroup g = fixture_vngroup(fx);
    const CentralizerDescription c = centralizer_of_lattice(g);
    std::vector<std::string> kernel;
    for (std::size_t f : c.kernel)
        kernel.push_back(g.finite_group().name(f));
    const auto finite = max_finite_normal(g);
    std::vector<std::string> finite_words;
    for (const auto& a : finite)
        finite_words.push_back(g.word(a));
    r.status = "OK";
    r.data = {{"center_basis", c.center.basis()},
              {"kernel", c.kernel},
              {"kernel_names", kernel},
              {"max_finite_normal", finite}};
    r.text = "C(N) = {(x, f) : x in Z(n), f in ker rho}\ncenter dimension " + std::to_string(c.center.dim()) +
             "\nker rho = {" + detail::join(kernel, ", ") + "}\nGamma cap ker rho = {" +
             detail::join(finite_words, ", ") + "}\n";
    return r;
}

inline Report cmd_conjugate(const FixtureFile& fx) {
    Report r;
    const VNGroup g = fixture_vngroup(fx);
    const ConjugatorResult c = conjugator_search(g);
    r.data = c;
    if (c.trivial) {
        r.status = "TRIVIAL";
        r.text = "TRIVIAL: rho is trivial on Gamma, x = 0\n";
        return r;
    }
    if (c.family.empty()) {
        r.status = "NOT_FOUND";
        r.exit_code = exit_negative;
        r.text = "NOT_FOUND: no conjugator y/m with m <= 16\n";
        return r;
    }
    r.status = "FOUND";
    r.text = "FOUND: x = " + to_string(c.x) + "\ndirection y = " + to_string(c.direction) +
             "\nfamily x = y/m, m in {" + detail::join_values(c.family) + "}\n";
    return r;
}

inline Report cmd_construct_ssi(const FixtureFile& fx, const Options& opt) {
    Report r;
    const VNGroup g = fixture_vngroup(fx);
    SsiOptions so;
    so.grading = fx.grading;
    so.depth = opt.depth;
    so.ball = opt.ball;
    so.p_max = opt.p_max;
    const SsiConstruction c = construct_ssi(g, so);
    r.status = to_string(c.status);
    r.exit_code = c.status == SsiStatus::constructed ? exit_ok : exit_negative;
    r.data = c;
    r.text = c.summary() + "\n";
    if (c.status == SsiStatus::constructed)
        r.text += "x = " + to_string(c.morphism.conjugator()) + ", p = " + std::to_string(c.p) +
                  ", k = " + std::to_string(c.k) + "\n";
    return r;
}

inline const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names{"validate",  "lcs",       "grading",   "char-nilpotent",
                                                "morphism",  "coboundary", "intersect", "reidemeister",
                                                "zeta",      "centralizer", "conjugate", "construct-ssi"};
    return names;
}

/// Runs one command. Input problems (parse errors, failed preconditions)
/// become exit code 1 with the message as text.
inline Report run(const std::string& command, const std::string& fixture_path, const Options& opt) {
    try {
        const FixtureFile fx = load_fixture(fixture_path);
        if (command == "validate")
            return cmd_validate(fx);
        if (command == "lcs")
            return cmd_lcs(fx);
        if (command == "grading")
            return cmd_grading(fx, opt);
        if (command == "char-nilpotent")
            return cmd_char_nilpotent(fx);
        if (command == "morphism")
            return cmd_classify(fx);
        if (command == "coboundary")
            return cmd_coboundary(fx, opt);
        if (command == "intersect")
            return cmd_intersect(fx, opt);
        if (command == "reidemeister")
            return cmd_reidemeister(fx, opt);
        if (command == "zeta")
            return cmd_zeta(fx, opt);
        if (command == "centralizer")
            return cmd_centralizer(fx);
        if (command == "conjugate")
            return cmd_conjugate(fx);
        if (command == "construct-ssi")
            return cmd_construct_ssi(fx, opt);
        throw InvalidInput("unknown command '" + command + "'");
    } catch (const Error& e) {
        Report r;
        r.exit_code = exit_input_error;
        r.status = "ERROR";
        r.text = std::string("error: ") + e.what() + "\n";
        r.data = {{"error", e.what()}};
        return r;
    }
}

} // namespace scaleinv::cli
