#pragma once
// Run configuration for the llr-lab tool.
//
// Text format: one `key = value` per line, `#` starts a comment, optional `[section]` headers.
// Matrices are nested bracketed rows (`[[1,.2],[.2,1]]`), vectors `[2,2]` or `2,2`, lists
// comma-separated. Keys may be written bare (`dims = 3,7,11`) or with their section, and
// command-line overrides use the dotted form (`--experiment.dims 3,7`).

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "llrlab/bayesllr.hpp"
#include "llrlab/errors.hpp"
#include "llrlab/mcharness.hpp"

namespace llrlab::cli {

enum class Command { density, roc, normal_deviate, learning_curve, variance_study, simulate };

const char* to_string(Command c) noexcept;
std::optional<Command> parse_command(std::string_view name) noexcept;

// Bad configuration text or overrides. line() is 1-based; 0 for command-line overrides.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

struct Override {
    std::string key;  // dotted path or bare key
    std::string value;
};

struct RunConfig {
    Command command = Command::learning_curve;
    TwoClassProblem problem = reference_problem();
    ExperimentConfig experiment;
    std::size_t n_scores = 10000;    // simulated scores per class (density, roc, normal-deviate, simulate)
    std::size_t grid_points = 2000;  // h grid for density
    std::filesystem::path output_dir = "llr-lab-out";
    bool emit_svg = true;
    bool emit_csv = true;
};

inline constexpr std::uint64_t kDefaultSeed = 20190801;

// Parses `text`, then applies `overrides` in order. When no seed is given by either,
// `fallback_seed` (e.g. from the environment) is used before the built-in default.
RunConfig parse_config(std::string_view text, const std::vector<Override>& overrides, Command command,
                       std::optional<std::uint64_t> fallback_seed = std::nullopt);

// Value parsers, exposed for tests.
Matrix parse_matrix(std::string_view text);
std::vector<double> parse_real_list(std::string_view text);
std::vector<std::size_t> parse_count_list(std::string_view text);

}  // namespace llrlab::cli
