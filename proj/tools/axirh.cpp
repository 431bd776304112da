// axirh: solve, verify and cross-check axial Riemann-Hilbert problems from JSON configs.

#include <CLI11.hpp>

#include "axirh/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Riemann-Hilbert solver for axially monogenic and meta-monogenic functions"};
    app.require_subcommand(1, 1);

    axirh::cli::Options opt;
    std::string config, output_dir = ".", fields;
    long seed = 0;

    for (const auto& name : axirh::cli::commands()) {
        auto* sub = app.add_subcommand(name, "");
        sub->add_option("--config", config, "problem JSON")->required()->check(CLI::ExistingFile);
        sub->add_option("--output-dir", output_dir, "directory for CSV and report outputs");
        sub->add_option("--override", opt.overrides, "dot-path override, e.g. solver.max_iter=80")->take_all();
        sub->add_option("--seed", seed, "seed for randomized boundary data");
        if (name == "verify") sub->add_option("--fields", fields, "fields CSV to verify");
    }
    app.get_subcommand("solve")->description("solve the problem and write fields CSV plus report");
    app.get_subcommand("verify")->description("recompute residuals of a fields CSV against the problem");
    app.get_subcommand("oracle-compare")->description("compare the solver with the finite-difference oracle");
    app.get_subcommand("index")->description("print the index m and the solvability moments at nu = 0");
    app.get_subcommand("map-check")->description("print conformal map diagnostics");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : axirh::cli::usage;
    }

    const CLI::App* sub = app.get_subcommands().front();
    opt.command = sub->get_name();
    opt.config = config;
    opt.output_dir = output_dir;
    opt.fields = fields;
    if (sub->count("--seed") > 0) opt.seed = seed;
    return axirh::cli::run(opt);
}
