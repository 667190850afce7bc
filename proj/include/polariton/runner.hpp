// runner.hpp — Executes one validated configuration and writes its outputs

#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>

#include "polariton/config.hpp"

namespace polariton {

inline constexpr std::string_view kVersion = "0.1.0";

enum ExitCode : int { exit_success = 0, exit_validation = 1, exit_invariant = 2, exit_truncation = 3 };

struct RunOptions {
    std::filesystem::path out_dir;  // empty: use run.output from the configuration
    int threads{1};
    std::uint64_t seed{0};
};

// Runs `cfg`, writes CSV files into the output directory and a short summary
// to `log`. Returns one of ExitCode.
int run(const RunConfig& cfg, const RunOptions& opts, std::ostream& log);

}  // namespace polariton
