// llr-lab <command> [--config FILE] [--seed N] [--out DIR] [--no-svg] [--key value]...

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "llrlab/cli/commands.hpp"
#include "llrlab/cli/config.hpp"

namespace {

using namespace llrlab::cli;

// Remaining `--key value` / `--key=value` arguments become config overrides.
std::vector<Override> collect_overrides(const std::vector<std::string>& extras) {
    std::vector<Override> out;
    for (std::size_t i = 0; i < extras.size(); ++i) {
        const std::string& arg = extras[i];
        if (arg.rfind("--", 0) != 0 || arg.size() < 3)
            throw ParseError(0, "unexpected argument '" + arg + "'");
        const std::string body = arg.substr(2);
        if (const auto eq = body.find('='); eq != std::string::npos) {
            out.push_back({body.substr(0, eq), body.substr(eq + 1)});
            continue;
        }
        if (i + 1 >= extras.size()) throw ParseError(0, "option '" + arg + "' needs a value");
        out.push_back({body, extras[++i]});
    }
    return out;
}

std::optional<std::uint64_t> env_seed() {
    const char* s = std::getenv("LLR_LAB_SEED");
    if (!s || !*s) return std::nullopt;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s, &end, 10);
    if (*end != '\0' || s[0] == '-') throw ParseError(0, "LLR_LAB_SEED is not a non-negative integer");
    return v;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bayes log-likelihood-ratio laboratory"};
    app.allow_extras();
    std::string command_name, config_path, out_dir;
    std::optional<std::uint64_t> seed;
    bool no_svg = false;
    app.add_option("command", command_name,
                   "density | roc | normal-deviate | learning-curve | variance-study | simulate")
        ->required();
    app.add_option("--config", config_path, "configuration file");
    app.add_option("--seed", seed, "base seed (overrides config and LLR_LAB_SEED)");
    app.add_option("--out", out_dir, "output directory");
    app.add_flag("--no-svg", no_svg, "skip SVG plots");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    RunConfig config;
    try {
        const auto command = parse_command(command_name);
        if (!command) throw ParseError(0, "unknown command '" + command_name + "'");
        std::string text;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) {
                std::cerr << "llr-lab: cannot read " << config_path << '\n';
                return kExitIo;
            }
            std::ostringstream ss;
            ss << in.rdbuf();
            text = ss.str();
        }
        auto overrides = collect_overrides(app.remaining());
        if (seed) overrides.push_back({"seed", std::to_string(*seed)});
        if (!out_dir.empty()) overrides.push_back({"out", out_dir});
        if (no_svg) overrides.push_back({"svg", "false"});
        config = parse_config(text, overrides, *command, env_seed());
    } catch (const llrlab::Error& e) {
        std::cerr << "llr-lab: config: " << e.what() << '\n';
        return kExitConfig;
    }

    const RunResult r = run_command(config);
    if (r.status != kExitOk) {
        std::cerr << "llr-lab: " << r.diagnostic << '\n';
        return r.status;
    }
    for (const auto& line : r.summary) std::cout << line << '\n';
    for (const auto& f : r.files) std::cout << "wrote " << f.string() << '\n';
    return kExitOk;
}
