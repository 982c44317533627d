#include "scaleinv/cli/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    using namespace scaleinv::cli;
    CLI::App app{"Exact computations for strongly scale-invariant virtually nilpotent groups"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "print the machine-readable report");

    Options opt;
    std::string fixture;
    std::string action;

    auto add = [&](const std::string& name, const std::string& help) {
        CLI::App* sub = app.add_subcommand(name, help);
        return sub;
    };
    auto fixture_arg = [&](CLI::App* sub) { sub->add_option("fixture", fixture, "fixture file")->required(); };

    fixture_arg(add("validate", "check the algebra and every other section"));
    fixture_arg(add("lcs", "lower and upper central series"));
    {
        auto* sub = add("grading", "find or verify a positive grading");
        sub->add_option("mode", opt.grading_mode, "find | verify")
            ->required()
            ->check(CLI::IsMember({"find", "verify"}));
        fixture_arg(sub);
    }
    fixture_arg(add("char-nilpotent", "whether every derivation is nilpotent"));
    {
        auto* sub = add("morphism", "eigenvalue classification of the fixture morphism");
        sub->add_option("action", action, "classify")->required()->check(CLI::IsMember({"classify"}));
        fixture_arg(sub);
    }
    {
        auto* sub = add("coboundary", "solve x = y phi(y)^-1");
        fixture_arg(sub);
        sub->add_option("--x", opt.x, "target element, comma separated first-kind coordinates")->required();
    }
    {
        auto* sub = add("intersect", "bounded intersection of the iterated images");
        fixture_arg(sub);
        sub->add_option("--depth", opt.depth, "iterate")->capture_default_str();
        sub->add_option("--ball", opt.ball, "coordinate bound")->capture_default_str();
    }
    {
        auto* sub = add("reidemeister", "Reidemeister numbers of the iterates");
        fixture_arg(sub);
        sub->add_option("--upto", opt.upto, "number of iterates")->capture_default_str()->check(CLI::Range(1, 200));
    }
    {
        auto* sub = add("zeta", "rational Reidemeister zeta function");
        fixture_arg(sub);
        sub->add_option("--order", opt.order, "series order to verify (at least 20)")->capture_default_str();
    }
    fixture_arg(add("centralizer", "centralizer of the lattice"));
    fixture_arg(add("conjugate", "conjugator family making the action non-integral"));
    {
        auto* sub = add("construct-ssi", "construct a strongly scale-invariant monomorphism");
        fixture_arg(sub);
        sub->add_option("--depth", opt.depth, "iterate for the intersection")->capture_default_str();
        sub->add_option("--ball", opt.ball, "coordinate bound for the intersection")->capture_default_str();
        sub->add_option("--p-max", opt.p_max, "largest prime tried")->capture_default_str();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_input_error;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    const Report r = run(command, fixture, opt);
    if (as_json)
        std::cout << r.document(command, fixture).dump(2) << "\n";
    else
        (r.exit_code == exit_input_error ? std::cerr : std::cout) << r.text;
    return r.exit_code;
}
