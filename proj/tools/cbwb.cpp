// cbwb: command-line front end.

#include "cbwb/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv)
{
    using cbwb::cli::JobSpec;
    JobSpec job;
    CLI::App app{"Chiral Borel-Weil-Bott characters, genera and Drinfeld-Sokolov checks"};
    app.require_subcommand(1, 1);

    for (const auto& name : cbwb::cli::commands()) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--cartan", job.cartan, "Cartan type, e.g. A2, B2, G2");
        sub->add_option("--weight", job.weight, "weight in fundamental coordinates, e.g. 1,1 or 1/2");
        sub->add_option("--N", job.N, "max delta exponent");
        sub->add_option("--D", job.D, "max depth height");
        sub->add_option("--cutoff", job.cutoff, "conformal cutoff (affine sl2 commands)");
        sub->add_option("--output", job.output, "json | csv | plain");
        sub->add_option("--seed", job.seed, "seed for randomized sweeps");
        sub->add_option("--samples", job.samples, "number of random weights (denominator)");
        sub->add_option("--tail", job.tail, "tail of nu(z); accepted and ignored");
        sub->add_option("--path", job.path, "euler: wakimoto | factored | both");
        sub->add_option("--level", job.level, "level for ds-verma");
        sub->callback([&job, name] { job.command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cbwb::cli::invalid_input;
    }
    return cbwb::cli::run(job, std::cout, std::cerr);
}
