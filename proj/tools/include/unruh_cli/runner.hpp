// Copyright 2026 The unruh-sim Authors
// SPDX-License-Identifier: Apache-2.0
//! \file runner.hpp
//! Executes one subcommand for a run configuration and writes its outputs.
#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace unruh::cli {

enum ExitCode : int
{
    kExitOk = 0,
    kExitConfig = 2,
    kExitConvergence = 3,
    kExitIo = 4,
};

//! Environment variable that overrides [output] directory (but not --out).
inline constexpr char const* kOutputDirVariable = "UNRUH_OUTPUT_DIR";

std::vector<std::string_view> subcommands();

struct RunRequest
{
    std::string subcommand;
    std::filesystem::path config_path;
    std::optional<std::filesystem::path> out;
    unsigned threads{0};
    double tolerance_scale{1};
};

//! Runs the request; progress goes to `log`, diagnostics to `err`.
int run(RunRequest const& request, std::ostream& log, std::ostream& err);

}  // namespace unruh::cli
