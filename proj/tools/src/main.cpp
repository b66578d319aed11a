// Copyright 2026 The unruh-sim Authors
// SPDX-License-Identifier: Apache-2.0
// Command-line front end: unruh <subcommand> --config <path> [options].
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "unruh_cli/runner.hpp"

int main(int argc, char** argv)
{
    using namespace unruh::cli;
    CLI::App app{"Quantum (pair) and classical (Larmor) radiation of a pulse-accelerated electron"};
    app.require_subcommand(1);

    RunRequest request;
    std::string config, out;
    for (auto name : subcommands())
    {
        auto* sub = app.add_subcommand(std::string(name));
        sub->add_option("--config,-c", config, "run configuration (TOML subset)")->required();
        sub->add_option("--out,-o", out, "output directory (overrides config and $" + std::string(kOutputDirVariable) + ")");
        sub->add_option("--threads,-j", request.threads, "worker threads (0: all cores)")->check(CLI::NonNegativeNumber);
        sub->add_option("--tolerance-scale", request.tolerance_scale, "multiply every tolerance by this factor")
            ->check(CLI::PositiveNumber);
    }

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::ParseError const& e)
    {
        int const code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    request.subcommand = app.get_subcommands().front()->get_name();
    request.config_path = config;
    if (!out.empty())
        request.out = out;
    return run(request, std::cout, std::cerr);
}
