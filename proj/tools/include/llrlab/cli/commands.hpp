#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "llrlab/cli/config.hpp"

namespace llrlab::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 2,
    kExitNumerical = 3,
    kExitIo = 4,
};

struct RunResult {
    int status = kExitOk;
    std::vector<std::filesystem::path> files;  // written files (empty on failure)
    std::string diagnostic;                    // one line, set on failure
    std::vector<std::string> summary;          // human-readable result lines
};

// Runs one command. Outputs are assembled in memory first and written afterwards; if any
// step fails nothing is left behind in output_dir.
RunResult run_command(const RunConfig& config);

}  // namespace llrlab::cli
