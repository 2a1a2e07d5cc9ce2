#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cli.hpp"

#ifndef TORSIONLAB_DEFAULT_CORPUS
#define TORSIONLAB_DEFAULT_CORPUS ""
#endif

int main(int argc, char** argv) {
    using namespace torsionlab::cli;

    CLI::App app{"torsionlab: twisted Alexander functions, combinatorial torsion and Ruelle special values"};
    app.require_subcommand(1);

    std::string input;
    std::string xi_arg;
    std::string rep_path;
    std::string z_arg = "3,0";
    std::string cutoffs_arg;
    std::string format_arg = "text";
    double tol = kDefaultAgreementTolerance;

    struct Spec {
        const char* name;
        Command command;
        const char* help;
        const char* input_help;
    };
    const Spec specs[] = {
        {"talex", Command::talex, "twisted Alexander function and R(0) for a knot group", "presentation file"},
        {"verify-knot", Command::verify_knot, "compare Fox, Laplacian and closed-form R(0) for a character",
         "presentation file"},
        {"torsion-cw", Command::torsion_cw, "combinatorial Laplacian torsion of a twisted CW complex", "complex file"},
        {"ruelle-eval", Command::ruelle_eval, "truncated Euler product over a length spectrum", "spectrum file"},
    };

    RunConfig cfg;
    for (const auto& s : specs) {
        auto* sub = app.add_subcommand(s.name, s.help);
        sub->add_option("input", input, s.input_help)->required();
        sub->add_option("--xi", xi_arg, "rank-one character rho(t) = xi, as re,im");
        sub->add_option("--rep", rep_path, "representation file");
        sub->add_option("--z", z_arg, "evaluation point re,im (ruelle-eval)");
        sub->add_option("--cutoffs", cutoffs_arg, "comma-separated length cutoffs (ruelle-eval)");
        sub->add_option("--format", format_arg, "text or json-lines")->check(CLI::IsMember({"text", "json-lines"}));
        sub->add_option("--tol", tol, "agreement tolerance (verify-knot)");
        sub->callback([&cfg, cmd = s.command] { cfg.command = cmd; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        cfg.input = input;
        if (!xi_arg.empty()) cfg.xi = parse_complex_arg(xi_arg);
        if (!rep_path.empty()) cfg.rep_path = rep_path;
        cfg.z = parse_complex_arg(z_arg);
        if (!cutoffs_arg.empty()) cfg.cutoffs = parse_list_arg(cutoffs_arg);
        cfg.format = format_arg == "json-lines" ? Format::json_lines : Format::text;
        cfg.tolerance = tol;
        cfg.corpus_dir = corpus_directory(TORSIONLAB_DEFAULT_CORPUS);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInputError;
    }
    return run(cfg, std::cout, std::cerr);
}
