#include "llrlab/cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>

namespace llrlab::cli {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double parse_real(std::string_view s) {
    s = trim(s);
    if (s.empty()) throw ContractError("expected a number");
    const std::string buf(s);
    char* end = nullptr;
    const double v = std::strtod(buf.c_str(), &end);
    if (end != buf.c_str() + buf.size() || !std::isfinite(v))
        throw ContractError("'" + buf + "' is not a finite number");
    return v;
}

std::uint64_t parse_u64(std::string_view s) {
    s = trim(s);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        throw ContractError("'" + std::string(s) + "' is not a non-negative integer");
    return v;
}

bool parse_bool(std::string_view s) {
    s = trim(s);
    if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
    if (s == "false" || s == "0" || s == "no" || s == "off") return false;
    throw ContractError("'" + std::string(s) + "' is not a boolean");
}

// Splits on top-level commas (commas inside brackets are kept).
std::vector<std::string_view> split_top(std::string_view s) {
    std::vector<std::string_view> parts;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '[') ++depth;
        if (s[i] == ']') --depth;
        if (depth < 0) throw ContractError("unbalanced brackets");
        if (s[i] == ',' && depth == 0) {
            parts.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    if (depth != 0) throw ContractError("unbalanced brackets");
    parts.push_back(trim(s.substr(start)));
    return parts;
}

std::string_view strip_brackets(std::string_view s) {
    s = trim(s);
    if (s.size() >= 2 && s.front() == '[' && s.back() == ']') return trim(s.substr(1, s.size() - 2));
    return s;
}

struct KeyInfo {
    const char* section;
    const char* name;
};

constexpr KeyInfo kKeys[] = {
    {"problem", "mu1"},           {"problem", "sigma1"},       {"problem", "mu2"},
    {"problem", "sigma2"},        {"problem", "prior1"},       {"problem", "prior2"},
    {"problem", "costs"},         {"experiment", "dims"},      {"experiment", "train_sizes"},
    {"experiment", "trials"},     {"experiment", "test_size"}, {"experiment", "delta_sq"},
    {"experiment", "seed"},       {"experiment", "threads"},   {"simulation", "n_scores"},
    {"simulation", "grid_points"}, {"output", "out"},           {"output", "svg"},
    {"output", "csv"},
};

// Resolves a bare or dotted key against the known keys; returns "section.name".
std::optional<std::string> resolve_key(std::string_view section, std::string_view key) {
    const auto dot = key.find('.');
    if (dot != std::string_view::npos) {
        section = key.substr(0, dot);
        key = key.substr(dot + 1);
    }
    for (const auto& k : kKeys) {
        if (key != k.name) continue;
        if (!section.empty() && section != k.section) return std::nullopt;
        return std::string(k.section) + "." + k.name;
    }
    return std::nullopt;
}

bool known_section(std::string_view s) {
    return std::any_of(std::begin(kKeys), std::end(kKeys), [&](const KeyInfo& k) { return s == k.section; });
}

struct Setting {
    std::string value;
    std::size_t line;
};

}  // namespace

const char* to_string(Command c) noexcept {
    switch (c) {
        case Command::density: return "density";
        case Command::roc: return "roc";
        case Command::normal_deviate: return "normal-deviate";
        case Command::learning_curve: return "learning-curve";
        case Command::variance_study: return "variance-study";
        case Command::simulate: return "simulate";
    }
    return "?";
}

std::optional<Command> parse_command(std::string_view name) noexcept {
    for (Command c : {Command::density, Command::roc, Command::normal_deviate, Command::learning_curve,
                      Command::variance_study, Command::simulate})
        if (name == to_string(c)) return c;
    return std::nullopt;
}

ParseError::ParseError(std::size_t line, const std::string& what)
    : Error(line == 0 ? "command line: " + what : "line " + std::to_string(line) + ": " + what), line_(line) {}

Matrix parse_matrix(std::string_view text) {
    const std::string_view body = trim(text);
    if (body.size() < 2 || body.front() != '[' || body.back() != ']')
        throw ContractError("matrix must be written as [[a,b],[c,d]]");
    std::vector<std::vector<double>> rows;
    for (auto row : split_top(strip_brackets(body))) {
        if (row.empty() || row.front() != '[') throw ContractError("matrix rows must be bracketed");
        std::vector<double> values;
        for (auto v : split_top(strip_brackets(row))) values.push_back(parse_real(v));
        rows.push_back(std::move(values));
    }
    if (rows.empty() || rows.front().empty()) throw ContractError("empty matrix");
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols()) throw ContractError("matrix rows have different lengths");
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
    }
    return m;
}

std::vector<double> parse_real_list(std::string_view text) {
    std::vector<double> out;
    for (auto v : split_top(strip_brackets(text))) out.push_back(parse_real(v));
    return out;
}

std::vector<std::size_t> parse_count_list(std::string_view text) {
    std::vector<std::size_t> out;
    for (auto v : split_top(strip_brackets(text))) out.push_back(static_cast<std::size_t>(parse_u64(v)));
    return out;
}

RunConfig parse_config(std::string_view text, const std::vector<Override>& overrides, Command command,
                       std::optional<std::uint64_t> fallback_seed) {
    std::map<std::string, Setting> settings;

    std::string section;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) {
            if (eol == text.size()) break;
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') throw ParseError(line_no, "malformed section header");
            section = std::string(trim(line.substr(1, line.size() - 2)));
            if (!known_section(section)) throw ParseError(line_no, "unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ParseError(line_no, "expected `key = value`");
        const auto key = trim(line.substr(0, eq));
        const auto resolved = resolve_key(section, key);
        if (!resolved) throw ParseError(line_no, "unknown key '" + std::string(key) + "'");
        settings[*resolved] = Setting{std::string(trim(line.substr(eq + 1))), line_no};
        if (eol == text.size()) break;
    }
    for (const auto& o : overrides) {
        const auto resolved = resolve_key("", o.key);
        if (!resolved) throw ParseError(0, "unknown key '" + o.key + "'");
        settings[*resolved] = Setting{o.value, 0};
    }

    RunConfig cfg;
    cfg.command = command;
    cfg.experiment.base_seed = fallback_seed.value_or(kDefaultSeed);
    if (command == Command::variance_study) cfg.experiment.dims = {11};

    for (const auto& [key, s] : settings) {
        try {
            const std::string& v = s.value;
            if (key == "problem.mu1") cfg.problem.class1.mu = Vector(parse_real_list(v));
            else if (key == "problem.mu2") cfg.problem.class2.mu = Vector(parse_real_list(v));
            else if (key == "problem.sigma1") cfg.problem.class1.sigma = parse_matrix(v);
            else if (key == "problem.sigma2") cfg.problem.class2.sigma = parse_matrix(v);
            else if (key == "problem.prior1") cfg.problem.prior1 = parse_real(v);
            else if (key == "problem.prior2") cfg.problem.prior2 = parse_real(v);
            else if (key == "problem.costs") {
                const Matrix c = parse_matrix(v);
                if (c.rows() != 2 || c.cols() != 2) throw ContractError("costs must be a 2x2 matrix");
                cfg.problem.costs = {{{c(0, 0), c(0, 1)}, {c(1, 0), c(1, 1)}}};
            } else if (key == "experiment.dims") cfg.experiment.dims = parse_count_list(v);
            else if (key == "experiment.train_sizes") cfg.experiment.train_sizes = parse_count_list(v);
            else if (key == "experiment.trials") cfg.experiment.n_trials = parse_u64(v);
            else if (key == "experiment.test_size") cfg.experiment.test_size = parse_u64(v);
            else if (key == "experiment.delta_sq") cfg.experiment.target_delta_sq = parse_real(v);
            else if (key == "experiment.seed") cfg.experiment.base_seed = parse_u64(v);
            else if (key == "experiment.threads") cfg.experiment.threads = static_cast<unsigned>(parse_u64(v));
            else if (key == "simulation.n_scores") cfg.n_scores = parse_u64(v);
            else if (key == "simulation.grid_points") cfg.grid_points = parse_u64(v);
            else if (key == "output.out") cfg.output_dir = std::string(trim(v));
            else if (key == "output.svg") cfg.emit_svg = parse_bool(v);
            else if (key == "output.csv") cfg.emit_csv = parse_bool(v);
        } catch (const ContractError& e) {
            throw ParseError(s.line, key + ": " + e.what());
        }
    }

    // Cross-field validation, reported against the line that set the offending value.
    auto line_of = [&](const char* key) {
        const auto it = settings.find(key);
        return it == settings.end() ? std::size_t{0} : it->second.line;
    };
    auto check_class = [&](const GaussianParams& g, const char* mu_key, const char* sigma_key) {
        if (g.sigma.rows() != g.mu.size() || g.sigma.cols() != g.mu.size())
            throw ParseError(line_of(sigma_key), std::string(sigma_key) + " does not match the dimension of " + mu_key);
        try {
            (void)cholesky(g.sigma);
        } catch (const DecompositionError& e) {
            throw ParseError(line_of(sigma_key), std::string(sigma_key) + " is not positive definite (" + e.what() + ")");
        } catch (const ContractError& e) {
            throw ParseError(line_of(sigma_key), std::string(sigma_key) + ": " + e.what());
        }
    };
    check_class(cfg.problem.class1, "problem.mu1", "problem.sigma1");
    check_class(cfg.problem.class2, "problem.mu2", "problem.sigma2");
    try {
        cfg.problem.validate();
    } catch (const Error& e) {
        throw ParseError(line_of("problem.prior1"), e.what());
    }
    if (command == Command::learning_curve || command == Command::variance_study) {
        try {
            cfg.experiment.validate();
        } catch (const ContractError& e) {
            throw ParseError(line_of("experiment.train_sizes"), e.what());
        }
        if (command == Command::variance_study) {
            std::set<std::size_t> distinct(cfg.experiment.dims.begin(), cfg.experiment.dims.end());
            if (distinct.size() != 1)
                throw ParseError(line_of("experiment.dims"), "variance-study takes exactly one dimensionality");
        }
    }
    if (cfg.n_scores < 2) throw ParseError(line_of("simulation.n_scores"), "n_scores must be at least 2");
    if (cfg.grid_points < 2) throw ParseError(line_of("simulation.grid_points"), "grid_points must be at least 2");
    return cfg;
}

}  // namespace llrlab::cli
