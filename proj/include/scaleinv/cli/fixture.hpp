#pragma once

// Plain-text fixture files:
//
//   format = 1
//   [algebra]
//   dim 3
//   bracket 1 2 3 1          # [e1, e2] = 1 e3, and [e2, e1] = -1 e3
//   constant 1 2 3 1         # c_12^3 only
//   [lattice]
//   row 1 0 0                # adapted basis rows; omitted means the refined standard lattice
//   refine                   # divide rows until the integer points form a subgroup
//   [morphism]
//   row 2 0 0                # matrix rows; column j is the image of e_j
//   [grading]
//   weights 1 1 2
//   column 1 0 0             # optional weight vectors, one per weight
//   [finite_group]
//   elements +1 -1           # names; the first is not required to be the identity
//   row +1 -1                # multiplication table, one row per element, by name
//   [action]
//   element -1               # followed by dim rows; omitted elements act trivially
//   row -1 0 0
//   [vngroup]
//   coset -1 0 0 0           # translation part over an element of F
//   [names]
//   lattice a b c            # names of the lattice generators
//   coset -1 s               # name of the coset generator over -1
//
// Rational literals are p or p/q; '#' starts a comment.

#include "scaleinv/liealg/grading.hpp"
#include "scaleinv/vn/semidirect.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace scaleinv {

struct ParseError : InvalidInput {
    ParseError(const std::string& file, std::size_t line, const std::string& msg)
        : InvalidInput(file + ":" + std::to_string(line) + ": " + msg), line(line) {}
    std::size_t line;
};

struct FixtureFile {
    std::string path;
    std::size_t dim = 0;
    bool has_algebra = false;
    LieAlgebra algebra;
    std::optional<Matrix> lattice_rows;
    bool refine = false;
    std::optional<Matrix> morphism;
    std::optional<Grading> grading;
    std::vector<std::string> group_elements;
    std::vector<std::vector<std::string>> group_table;
    std::map<std::string, Matrix> action;
    std::vector<std::pair<std::string, Vector>> cosets;
    std::vector<std::string> lattice_names;
    std::map<std::string, std::string> coset_names;
};

namespace detail {

inline std::vector<std::string> split_words(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    for (std::string w; in >> w;)
        out.push_back(w);
    return out;
}

} // namespace detail

inline FixtureFile parse_fixture(std::istream& in, const std::string& name = "<input>") {
    FixtureFile fx;
    fx.path = name;
    std::string section;
    std::string line;
    std::size_t lineno = 0;
    bool saw_format = false;
    std::vector<Vector> lattice_rows, morphism_rows, grading_columns;
    std::string action_element;
    std::vector<Vector> action_rows;
    std::size_t action_line = 0;

    auto fail = [&](const std::string& msg) { throw ParseError(name, lineno, msg); };
    auto rational = [&](const std::string& w) {
        try {
            return parse_rational(w);
        } catch (const Error& e) {
            fail(e.what());
        }
        return Rational(0);
    };
    auto index = [&](const std::string& w) {
        std::size_t pos = 0;
        long v = 0;
        try {
            v = std::stol(w, &pos);
        } catch (const std::exception&) {
            fail("expected an index, got '" + w + "'");
        }
        if (pos != w.size() || v < 1 || static_cast<std::size_t>(v) > fx.dim)
            fail("index '" + w + "' out of range 1.." + std::to_string(fx.dim));
        return static_cast<std::size_t>(v - 1);
    };
    auto vector_of = [&](const std::vector<std::string>& words, std::size_t from) {
        if (words.size() - from != fx.dim)
            fail("expected " + std::to_string(fx.dim) + " entries, got " + std::to_string(words.size() - from));
        Vector v;
        for (std::size_t i = from; i < words.size(); ++i)
            v.push_back(rational(words[i]));
        return v;
    };
    auto flush_action = [&] {
        if (action_element.empty())
            return;
        if (action_rows.size() != fx.dim)
            throw ParseError(name, action_line, "action of '" + action_element + "' needs " +
                                                    std::to_string(fx.dim) + " rows");
        fx.action[action_element] = Matrix::from_rows(action_rows);
        action_element.clear();
        action_rows.clear();
    };
    auto need_algebra = [&] {
        if (!fx.has_algebra)
            fail("section [" + section + "] needs the [algebra] section first");
    };

    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        auto words = detail::split_words(line);
        if (words.empty())
            continue;
        if (!saw_format) {
            if (words.size() != 3 || words[0] != "format" || words[1] != "=")
                fail("expected 'format = 1' header");
            if (words[2] != "1")
                fail("unsupported fixture format " + words[2]);
            saw_format = true;
            continue;
        }
        if (words[0].front() == '[') {
            if (words.size() != 1 || words[0].back() != ']')
                fail("malformed section header");
            if (section == "action")
                flush_action();
            section = words[0].substr(1, words[0].size() - 2);
            static const std::vector<std::string> known{"algebra", "lattice",      "morphism", "grading",
                                                        "finite_group", "action", "vngroup", "names"};
            if (std::find(known.begin(), known.end(), section) == known.end())
                fail("unknown section [" + section + "]");
            if (section != "algebra")
                need_algebra();
            continue;
        }
        const std::string& key = words[0];
        if (section.empty())
            fail("content outside a section");
        if (section == "algebra") {
            if (key == "dim") {
                if (words.size() != 2)
                    fail("expected 'dim N'");
                long d = 0;
                try {
                    d = std::stol(words[1]);
                } catch (const std::exception&) {
                    fail("bad dimension '" + words[1] + "'");
                }
                if (d < 1 || d > 64)
                    fail("dimension must be between 1 and 64");
                fx.dim = static_cast<std::size_t>(d);
                fx.algebra = LieAlgebra(fx.dim);
                fx.has_algebra = true;
            } else if (key == "bracket" || key == "constant") {
                if (!fx.has_algebra)
                    fail("'dim' must come before structure constants");
                if (words.size() != 5)
                    fail("expected '" + key + " i j k value'");
                const std::size_t i = index(words[1]), j = index(words[2]), k = index(words[3]);
                const Rational v = rational(words[4]);
                if (key == "bracket") {
                    if (i == j)
                        fail("bracket of a basis vector with itself");
                    fx.algebra.set_bracket(i, j, k, v);
                } else {
                    fx.algebra.set_constant(i, j, k, v);
                }
            } else {
                fail("unknown key '" + key + "' in [algebra]");
            }
        } else if (section == "lattice") {
            if (key == "row")
                lattice_rows.push_back(vector_of(words, 1));
            else if (key == "refine" && words.size() == 1)
                fx.refine = true;
            else
                fail("unknown key '" + key + "' in [lattice]");
        } else if (section == "morphism") {
            if (key != "row")
                fail("unknown key '" + key + "' in [morphism]");
            morphism_rows.push_back(vector_of(words, 1));
        } else if (section == "grading") {
            if (key == "weights") {
                if (words.size() - 1 != fx.dim)
                    fail("expected " + std::to_string(fx.dim) + " weights");
                Grading g;
                for (std::size_t i = 1; i < words.size(); ++i) {
                    Rational w = rational(words[i]);
                    if (!is_integer(w))
                        fail("weights must be integers");
                    g.weights.push_back(w.get_num());
                }
                fx.grading = std::move(g);
            } else if (key == "column") {
                grading_columns.push_back(vector_of(words, 1));
            } else {
                fail("unknown key '" + key + "' in [grading]");
            }
        } else if (section == "finite_group") {
            if (key == "elements") {
                fx.group_elements.assign(words.begin() + 1, words.end());
                if (fx.group_elements.empty())
                    fail("a finite group needs elements");
            } else if (key == "row") {
                if (fx.group_elements.empty())
                    fail("'elements' must come before the table");
                if (words.size() - 1 != fx.group_elements.size())
                    fail("table row needs " + std::to_string(fx.group_elements.size()) + " entries");
                fx.group_table.emplace_back(words.begin() + 1, words.end());
            } else {
                fail("unknown key '" + key + "' in [finite_group]");
            }
        } else if (section == "action") {
            if (key == "element") {
                flush_action();
                if (words.size() != 2)
                    fail("expected 'element NAME'");
                action_element = words[1];
                action_line = lineno;
            } else if (key == "row") {
                if (action_element.empty())
                    fail("'element' must come before its rows");
                action_rows.push_back(vector_of(words, 1));
            } else {
                fail("unknown key '" + key + "' in [action]");
            }
        } else if (section == "vngroup") {
            if (key != "coset" || words.size() < 2)
                fail("expected 'coset ELEMENT x1 ... xn'");
            fx.cosets.emplace_back(words[1], vector_of(words, 2));
        } else if (section == "names") {
            if (key == "lattice") {
                if (words.size() - 1 != fx.dim)
                    fail("expected " + std::to_string(fx.dim) + " lattice generator names");
                fx.lattice_names.assign(words.begin() + 1, words.end());
            } else if (key == "coset" && words.size() == 3) {
                fx.coset_names[words[1]] = words[2];
            } else {
                fail("unknown key '" + key + "' in [names]");
            }
        }
    }
    if (!saw_format)
        throw ParseError(name, lineno, "empty fixture: expected 'format = 1' header");
    flush_action();
    if (!fx.has_algebra)
        throw ParseError(name, lineno, "missing [algebra] section");
    if (!lattice_rows.empty()) {
        if (lattice_rows.size() != fx.dim)
            throw ParseError(name, lineno, "[lattice] needs " + std::to_string(fx.dim) + " rows");
        fx.lattice_rows = Matrix::from_rows(lattice_rows);
    }
    if (!morphism_rows.empty()) {
        if (morphism_rows.size() != fx.dim)
            throw ParseError(name, lineno, "[morphism] needs " + std::to_string(fx.dim) + " rows");
        fx.morphism = Matrix::from_rows(morphism_rows);
    }
    if (fx.grading) {
        if (grading_columns.empty())
            fx.grading->basis_change = Matrix::identity(fx.dim);
        else if (grading_columns.size() != fx.dim)
            throw ParseError(name, lineno, "[grading] needs " + std::to_string(fx.dim) + " columns");
        else
            fx.grading->basis_change = Matrix::from_columns(grading_columns);
    } else if (!grading_columns.empty()) {
        throw ParseError(name, lineno, "[grading] columns without weights");
    }
    if (!fx.group_elements.empty() && fx.group_table.size() != fx.group_elements.size())
        throw ParseError(name, lineno, "multiplication table needs " + std::to_string(fx.group_elements.size()) +
                                           " rows");
    return fx;
}

/// Opens `path`, or `path` + ".fixture" when the former does not exist.
inline FixtureFile load_fixture(const std::string& path) {
    for (const std::string& candidate : {path, path + ".fixture"}) {
        std::ifstream in(candidate);
        if (in)
            return parse_fixture(in, candidate);
    }
    throw InvalidInput("cannot open fixture '" + path + "'");
}

inline bool has_lattice(const FixtureFile& fx) { return fx.lattice_rows.has_value(); }

/// Validated group; throws InvalidInput with the violated property.
inline MalcevGroup fixture_group(const FixtureFile& fx) { return MalcevGroup(fx.algebra); }

inline Lattice fixture_lattice(const FixtureFile& fx) {
    MalcevGroup g = fixture_group(fx);
    Matrix rows = fx.lattice_rows ? *fx.lattice_rows : adapted_basis(lower_central_series(fx.algebra));
    if (!fx.lattice_rows || fx.refine)
        return Lattice::refined(std::move(g), std::move(rows));
    Lattice l(std::move(g), std::move(rows));
    if (auto bad = l.closure_failure())
        throw InvalidInput("lattice is not a subgroup: conjugating generator " + std::to_string(bad->second + 1) +
                           " by generator " + std::to_string(bad->first + 1) + " leaves it");
    return l;
}

inline LieMorphism fixture_morphism(const FixtureFile& fx) {
    if (!fx.morphism)
        throw InvalidInput(fx.path + ": missing [morphism] section");
    return validate_morphism(fx.algebra, *fx.morphism);
}

inline FiniteGroup fixture_finite_group(const FixtureFile& fx) {
    if (fx.group_elements.empty())
        return FiniteGroup::trivial();
    const auto& names = fx.group_elements;
    auto idx = [&](const std::string& n) {
        auto it = std::find(names.begin(), names.end(), n);
        if (it == names.end())
            throw InvalidInput(fx.path + ": unknown finite group element '" + n + "'");
        return static_cast<std::size_t>(it - names.begin());
    };
    std::vector<std::vector<std::size_t>> table;
    for (const auto& row : fx.group_table) {
        table.emplace_back();
        for (const auto& n : row)
            table.back().push_back(idx(n));
    }
    return FiniteGroup(std::move(table), names);
}

inline VNGroup fixture_vngroup(const FixtureFile& fx) {
    Lattice l = fixture_lattice(fx);
    FiniteGroup f = fixture_finite_group(fx);
    std::vector<Matrix> images(f.order(), Matrix::identity(fx.dim));
    for (const auto& [name, m] : fx.action)
        images[f.index_of(name)] = m;
    Action rho(fx.algebra, f, std::move(images));
    std::vector<CosetRep> reps;
    for (const auto& [name, x] : fx.cosets)
        reps.push_back({f.index_of(name), x});
    VNGroup g(std::move(l), f, std::move(rho), std::move(reps));
    if (!fx.lattice_names.empty())
        g.set_lattice_names(fx.lattice_names);
    for (const auto& [elem, name] : fx.coset_names)
        g.set_coset_name(f.index_of(elem), name);
    return g;
}

} // namespace scaleinv
