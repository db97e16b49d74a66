#include "llrlab/cli/commands.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <system_error>

#include "llrlab/cli/svg.hpp"
#include "llrlab/format.hpp"
#include "llrlab/llrdist.hpp"
#include "llrlab/mcharness.hpp"
#include "llrlab/normal.hpp"
#include "llrlab/rocauc.hpp"

namespace llrlab::cli {

namespace {

// Files are keyed by name; std::map keeps the write order stable.
using Outputs = std::map<std::string, std::string>;

struct Built {
    Outputs files;
    std::vector<std::string> summary;
};

// Stream tags for the tool's own simulations, kept apart from the harness streams.
constexpr std::uint64_t kSimTag = 0x6c6c722d6c6162ULL;

ScoreSet simulate_both(const RunConfig& cfg) {
    const std::uint64_t seed = cfg.experiment.base_seed;
    SeededRng r1(seed, derive_stream_id({kSimTag, 1}));
    SeededRng r2(seed, derive_stream_id({kSimTag, 2}));
    ScoreSet s;
    s.class1 = simulate_scores(cfg.problem, ClassLabel::omega1, cfg.n_scores, r1);
    s.class2 = simulate_scores(cfg.problem, ClassLabel::omega2, cfg.n_scores, r2);
    return s;
}

// At most ~max_points evenly strided points (always keeping the last) so large curves stay
// readable in the plot; the CSVs carry every point.
Series thin(std::string name, const std::vector<double>& xs, const std::vector<double>& ys,
            std::size_t max_points = 1000) {
    Series s{std::move(name), {}, {}};
    const std::size_t stride = xs.size() > max_points ? (xs.size() + max_points - 1) / max_points : 1;
    for (std::size_t i = 0; i < xs.size(); i += stride) {
        s.xs.push_back(xs[i]);
        s.ys.push_back(ys[i]);
    }
    if (!xs.empty() && s.xs.back() != xs.back()) {
        s.xs.push_back(xs.back());
        s.ys.push_back(ys.back());
    }
    return s;
}

Series roc_series(std::string name, const RocCurve& curve) {
    std::vector<double> xs, ys;
    for (const auto& p : curve.points) {
        xs.push_back(p.fpf);
        ys.push_back(p.tpf);
    }
    return thin(std::move(name), xs, ys);
}

// Histogram drawn as a step outline.
Series histogram_series(std::string name, const HistogramComparison& cmp) {
    Series s{std::move(name), {}, {}};
    for (const auto& b : cmp.bins) {
        s.xs.insert(s.xs.end(), {b.lo, b.hi});
        s.ys.insert(s.ys.end(), {b.empirical_density, b.empirical_density});
    }
    return s;
}

MarginalOptions marginal_options(const RunConfig& cfg) {
    MarginalOptions opt;
    opt.threads = cfg.experiment.threads;
    return opt;
}

Built build_density(const RunConfig& cfg) {
    Built out;
    const auto grid = default_h_grid(cfg.problem, cfg.grid_points);
    const auto opt = marginal_options(cfg);
    const DensityGrid d1 = marginal_density(grid, ClassLabel::omega1, cfg.problem, opt);
    const DensityGrid d2 = marginal_density(grid, ClassLabel::omega2, cfg.problem, opt);
    const ScoreSet scores = simulate_both(cfg);
    const auto cmp1 = histogram_vs_analytic(scores.class1, d1);
    const auto cmp2 = histogram_vs_analytic(scores.class2, d2);
    const ScoreRange support = score_support(cfg.problem);

    if (cfg.emit_csv) {
        std::ostringstream c1, c2, sum;
        write_density_csv(c1, d1);
        write_density_csv(c2, d2);
        sum << "class,integral,ks_statistic,n_scores,support_lower,support_upper,flagged_points\n";
        for (const auto* p : {&d1, &d2}) {
            const auto& cmp = p == &d1 ? cmp1 : cmp2;
            std::size_t flagged = 0;
            for (auto f : p->flagged) flagged += f;
            sum << to_string(p->label) << ',' << format_real(grid_integral(*p)) << ','
                << format_real(cmp.ks_statistic) << ',' << cfg.n_scores << ',' << format_real(support.lower) << ','
                << format_real(support.upper) << ',' << flagged << '\n';
        }
        out.files["density_omega1.csv"] = c1.str();
        out.files["density_omega2.csv"] = c2.str();
        out.files["density_summary.csv"] = sum.str();
    }
    if (cfg.emit_svg) {
        PlotSpec spec{PlotKind::density_overlay, "LLR score densities", "h", "density", {}};
        spec.series.push_back(thin("f(h|omega1)", d1.h_values, d1.density));
        spec.series.push_back(thin("f(h|omega2)", d2.h_values, d2.density));
        spec.series.push_back(histogram_series("histogram omega1", cmp1));
        spec.series.push_back(histogram_series("histogram omega2", cmp2));
        out.files["density.svg"] = render_svg(spec);
    }
    out.summary.push_back("integral omega1 = " + format_real(grid_integral(d1)));
    out.summary.push_back("integral omega2 = " + format_real(grid_integral(d2)));
    out.summary.push_back("KS omega1 = " + format_real(cmp1.ks_statistic) +
                          ", KS omega2 = " + format_real(cmp2.ks_statistic));
    if (d1.any_flagged() || d2.any_flagged())
        out.summary.push_back("warning: quadrature did not converge at some grid points (see est_error)");
    return out;
}

Built build_roc(const RunConfig& cfg) {
    Built out;
    const ScoreSet scores = simulate_both(cfg);
    const RocCurve roc = empirical_roc(scores);
    const double auc_mw = empirical_auc(scores);
    const double auc_trap = trapezoid_auc(roc);
    std::optional<RocCurve> exact;
    if (cfg.problem.dim() == 2) {
        const auto grid = default_h_grid(cfg.problem, cfg.grid_points);
        exact = analytic_roc(cfg.problem, grid, 1e-7, marginal_options(cfg));
    }
    if (cfg.emit_csv) {
        std::ostringstream r, a;
        write_roc_csv(r, roc);
        a << "estimator,auc\n";
        a << "mann_whitney," << format_real(auc_mw) << '\n';
        a << "trapezoid," << format_real(auc_trap) << '\n';
        if (exact) a << "analytic," << format_real(trapezoid_auc(*exact)) << '\n';
        out.files["roc.csv"] = r.str();
        out.files["roc_auc.csv"] = a.str();
    }
    if (cfg.emit_svg) {
        PlotSpec spec{PlotKind::roc, "ROC curve", "FPF", "TPF", {}};
        spec.series.push_back(roc_series("empirical", roc));
        if (exact) spec.series.push_back(roc_series("analytic", *exact));
        spec.series.push_back(Series{"chance", {0.0, 1.0}, {0.0, 1.0}});
        out.files["roc.svg"] = render_svg(spec);
    }
    out.summary.push_back("AUC (Mann-Whitney) = " + format_real(auc_mw));
    if (exact) out.summary.push_back("AUC (analytic) = " + format_real(trapezoid_auc(*exact)));
    return out;
}

struct DeviatePoints {
    std::vector<double> fpf, tpf, z_fpf, z_tpf;
};

DeviatePoints deviate_points(const RocCurve& roc) {
    DeviatePoints d;
    for (const auto& p : roc.points) {
        if (p.fpf <= 0.0 || p.fpf >= 1.0 || p.tpf <= 0.0 || p.tpf >= 1.0) continue;
        d.fpf.push_back(p.fpf);
        d.tpf.push_back(p.tpf);
        d.z_fpf.push_back(std_normal_quantile(p.fpf));
        d.z_tpf.push_back(std_normal_quantile(p.tpf));
    }
    return d;
}

Built build_normal_deviate(const RunConfig& cfg) {
    Built out;
    struct Source {
        std::string name;
        RocCurve roc;
    };
    std::vector<Source> sources;
    sources.push_back({"empirical", empirical_roc(simulate_both(cfg))});
    if (cfg.problem.dim() == 2) {
        const auto grid = default_h_grid(cfg.problem, cfg.grid_points);
        sources.push_back({"analytic", analytic_roc(cfg.problem, grid, 1e-7, marginal_options(cfg))});
    }
    std::ostringstream pts, fit;
    pts << "source,fpf,tpf,z_fpf,z_tpf\n";
    fit << "source,a,b,residual,n_points,binormal_auc\n";
    PlotSpec spec{PlotKind::deviate_line, "Normal-deviate ROC", "z(FPF)", "z(TPF)", {}};
    for (const auto& s : sources) {
        const DeviatePoints d = deviate_points(s.roc);
        const BinormalFit f = normal_deviate_fit(s.roc);
        for (std::size_t i = 0; i < d.fpf.size(); ++i)
            pts << s.name << ',' << format_real(d.fpf[i]) << ',' << format_real(d.tpf[i]) << ','
                << format_real(d.z_fpf[i]) << ',' << format_real(d.z_tpf[i]) << '\n';
        fit << s.name << ',' << format_real(f.a) << ',' << format_real(f.b) << ',' << format_real(f.residual) << ','
            << f.n_points << ',' << format_real(binormal_auc(f.a, f.b)) << '\n';
        spec.series.push_back(thin(s.name + " ROC", d.z_fpf, d.z_tpf));
        const double x0 = d.z_fpf.front(), x1 = d.z_fpf.back();
        spec.series.push_back(Series{s.name + " fit", {x0, x1}, {f.a + f.b * x0, f.a + f.b * x1}});
        out.summary.push_back(s.name + ": a = " + format_real(f.a) + ", b = " + format_real(f.b) +
                              ", residual = " + format_real(f.residual));
    }
    if (cfg.emit_csv) {
        out.files["normal_deviate_points.csv"] = pts.str();
        out.files["normal_deviate_fit.csv"] = fit.str();
    }
    if (cfg.emit_svg) out.files["normal_deviate.svg"] = render_svg(spec);
    return out;
}

Built build_curve(const RunConfig& cfg, bool variance) {
    Built out;
    std::vector<std::string> retries;
    ExperimentConfig ec = cfg.experiment;
    ec.log = [&](std::string_view line) { retries.emplace_back(line); };
    const CurveSummary summary = variance ? variance_study(ec) : learning_curve(ec);
    const std::string stem = variance ? "variance_study" : "learning_curve";
    if (cfg.emit_csv) {
        std::ostringstream c;
        write_curve_csv(c, summary);
        out.files[stem + ".csv"] = c.str();
    }
    if (cfg.emit_svg) {
        PlotSpec spec = variance
            ? PlotSpec{PlotKind::variance, "Variance of AUC over trials", "1/n", "variance", {}}
            : PlotSpec{PlotKind::learning_curve, "Learning curves", "1/n", "mean AUC", {}};
        std::map<std::size_t, std::pair<Series, Series>> by_p;
        for (const auto& row : summary.rows) {
            auto [it, fresh] = by_p.try_emplace(row.p);
            auto& [tr, ap] = it->second;
            if (fresh) {
                tr.name = "p=" + std::to_string(row.p) + " true";
                ap.name = "p=" + std::to_string(row.p) + " apparent";
            }
            const double x = 1.0 / static_cast<double>(row.n);
            if (variance) {
                if (!row.var_auc_true || !row.var_auc_apparent) continue;
                tr.xs.push_back(x);
                tr.ys.push_back(*row.var_auc_true);
                ap.xs.push_back(x);
                ap.ys.push_back(*row.var_auc_apparent);
            } else {
                tr.xs.push_back(x);
                tr.ys.push_back(row.mean_auc_true);
                ap.xs.push_back(x);
                ap.ys.push_back(row.mean_auc_apparent);
            }
        }
        for (auto& [p, pair] : by_p) {
            if (pair.first.xs.empty()) continue;
            spec.series.push_back(std::move(pair.first));
            spec.series.push_back(std::move(pair.second));
        }
        if (!variance) {
            const double a = asymptotic_auc(cfg.experiment.target_delta_sq);
            double xmax = 0.0;
            for (const auto& row : summary.rows) xmax = std::max(xmax, 1.0 / static_cast<double>(row.n));
            spec.series.push_back(Series{"asymptote", {0.0, xmax}, {a, a}});
        }
        if (spec.series.empty()) throw InsufficientDataError("variance plot needs at least two trials per cell");
        out.files[stem + ".svg"] = render_svg(spec);
    }
    for (const auto& row : summary.rows)
        out.summary.push_back("p=" + std::to_string(row.p) + " n=" + std::to_string(row.n) +
                              " true=" + format_real(row.mean_auc_true) +
                              " apparent=" + format_real(row.mean_auc_apparent));
    for (auto& r : retries) out.summary.push_back(std::move(r));
    return out;
}

Built build_simulate(const RunConfig& cfg) {
    Built out;
    const ScoreSet s = simulate_both(cfg);
    if (cfg.emit_csv) {
        std::ostringstream c;
        c << "class,score\n";
        for (double h : s.class1) c << "omega1," << format_real(h) << '\n';
        for (double h : s.class2) c << "omega2," << format_real(h) << '\n';
        out.files["scores.csv"] = c.str();
    }
    out.summary.push_back("simulated " + std::to_string(cfg.n_scores) + " scores per class");
    return out;
}

Built build(const RunConfig& cfg) {
    switch (cfg.command) {
        case Command::density: return build_density(cfg);
        case Command::roc: return build_roc(cfg);
        case Command::normal_deviate: return build_normal_deviate(cfg);
        case Command::learning_curve: return build_curve(cfg, false);
        case Command::variance_study: return build_curve(cfg, true);
        case Command::simulate: return build_simulate(cfg);
    }
    throw ContractError("unknown command");
}

}  // namespace

RunResult run_command(const RunConfig& config) {
    RunResult result;
    Built built;
    try {
        built = build(config);
    } catch (const std::exception& e) {
        result.status = kExitNumerical;
        result.diagnostic = std::string(to_string(config.command)) + ": " + e.what();
        return result;
    }

    namespace fs = std::filesystem;
    std::vector<fs::path> written;
    try {
        fs::create_directories(config.output_dir);
        for (const auto& [name, content] : built.files) {
            const fs::path path = config.output_dir / name;
            written.push_back(path);
            std::ofstream f(path, std::ios::binary | std::ios::trunc);
            if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
            f.write(content.data(), static_cast<std::streamsize>(content.size()));
            f.close();
            if (!f) throw std::runtime_error("failed writing " + path.string());
        }
    } catch (const std::exception& e) {
        std::error_code ec;
        for (const auto& p : written) fs::remove(p, ec);
        result.status = kExitIo;
        result.diagnostic = std::string(to_string(config.command)) + ": " + e.what();
        return result;
    }
    result.files = std::move(written);
    result.summary = std::move(built.summary);
    return result;
}

}  // namespace llrlab::cli
