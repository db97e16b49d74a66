// Acceptance suite: one PASS/FAIL line per criterion, detail lines indented beneath it.
// Exit status is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "llrlab/errors.hpp"
#include "llrlab/llrdist.hpp"
#include "llrlab/mcharness.hpp"
#include "llrlab/normal.hpp"
#include "llrlab/rocauc.hpp"
#include "oracles.hpp"

using namespace llrlab;

namespace {

constexpr std::uint64_t kDefaultAcceptanceSeed = 20190801;

struct Outcome {
    bool pass = true;
    std::vector<std::string> details;

    void check(bool ok, const std::string& what) {
        pass = pass && ok;
        details.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
    }
    void note(const std::string& what) { details.push_back("info " + what); }
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

int failures = 0;

void run(int id, const char* title, double budget_s, const std::function<void(Outcome&)>& body) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.check(false, std::string("unexpected exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.check(secs <= budget_s, "runtime " + fmt("%.2f", secs) + " s <= " + fmt("%.0f", budget_s) + " s");
    std::printf("%s criterion %d: %s\n", o.pass ? "PASS" : "FAIL", id, title);
    for (const auto& d : o.details) std::printf("    %s\n", d.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
}

std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = a + (b - a) * double(i) / double(n - 1);
    return v;
}

TwoClassProblem equal_covariance_problem() {
    TwoClassProblem p;
    p.class1 = {{1.0, 0.5}, {{1.0, 0.3}, {0.3, 1.0}}};
    p.class2 = {{0.0, 0.0}, {{1.0, 0.3}, {0.3, 1.0}}};
    return p;
}

ExperimentConfig learning_curve_config(unsigned threads) {
    ExperimentConfig c;
    c.dims = {3, 7, 11};
    c.train_sizes = {20, 50, 100, 500, 2000};
    c.n_trials = 100;
    c.test_size = 1000;
    c.target_delta_sq = 0.8;
    c.threads = threads;
    return c;
}

std::string curve_csv(const CurveSummary& s) {
    std::ostringstream out;
    write_curve_csv(out, s);
    return out.str();
}

}  // namespace

int main() {
    const TwoClassProblem ref = reference_problem();

    run(1, "counter-example: normalization, single tail, agreement with simulation", 30, [&](Outcome& o) {
        const auto grid = default_h_grid(ref, 2000);
        const ScoreRange support = score_support(ref);
        o.check(std::isfinite(support.lower) && std::isinf(support.upper),
                "support of h is [" + fmt("%.6f", support.lower) + ", inf): bounded on one side only");
        o.check(grid.front() == support.lower, "grid starts at the support edge");
        SeededRng rng(kDefaultAcceptanceSeed, 1);
        for (ClassLabel c : {ClassLabel::omega1, ClassLabel::omega2}) {
            const auto d = marginal_density(grid, c, ref);
            const double integral = grid_integral(d);
            o.check(std::fabs(integral - 1.0) <= 1e-3,
                    std::string("integral f(h|") + to_string(c) + ") = " + fmt("%.7f", integral) + " (1 +- 1e-3)");
            o.check(!d.any_flagged(), std::string("quadrature converged everywhere for ") + to_string(c));
            const auto scores = simulate_scores(ref, c, 10000, rng);
            const double below = *std::min_element(scores.begin(), scores.end());
            o.check(below >= support.lower, "no simulated score below the support edge (min " + fmt("%.5f", below) + ")");
            const auto cmp = histogram_vs_analytic(scores, d);
            o.check(cmp.ks_statistic < 0.02,
                    std::string("KS(") + to_string(c) + ", 1e4 scores) = " + fmt("%.5f", cmp.ks_statistic) + " < 0.02");
        }
    });

    run(2, "density-ratio law f(h|w1) = e^h f(h|w2)", 10, [&](Outcome& o) {
        const auto grid = default_h_grid(ref, 2000);
        const auto d1 = marginal_density(grid, ClassLabel::omega1, ref);
        const auto d2 = marginal_density(grid, ClassLabel::omega2, ref);
        double worst = 0.0;
        std::size_t n = 0;
        for (std::size_t k = 0; k < grid.size(); ++k) {
            if (!(d1.density[k] > 1e-8 && d2.density[k] > 1e-8)) continue;
            worst = std::max(worst, std::fabs(d1.density[k] / (std::exp(grid[k]) * d2.density[k]) - 1.0));
            ++n;
        }
        o.check(n >= 100, std::to_string(n) + " grid points where both densities exceed 1e-8");
        o.check(worst <= 1e-6, "worst relative deviation " + fmt("%.3e", worst) + " <= 1e-6");
    });

    run(3, "printed joint-density constants and support parabola", 5, [&](Outcome& o) {
        double worst = 0.0;
        int n = 0;
        for (double h : {-1.0, 0.0, 1.0, 2.0, 3.0}) {
            const double half = std::sqrt(1.0 + 4.0 * (1.91 + .866 * h)) / 2.0;
            for (double t : {0.15, 0.38, 0.62, 0.85}) {
                const double x1 = 0.5 - half + 2.0 * half * t;
                const double printed = oracle::printed_joint_density_w1(h, x1);
                worst = std::max(worst, std::fabs(joint_density(h, x1, ClassLabel::omega1, ref) / printed - 1.0));
                ++n;
            }
        }
        o.check(n == 20, std::to_string(n) + " interior (h, x1) points");
        o.check(worst <= 0.01, "worst relative deviation from printed density " + fmt("%.4f", worst) + " <= 0.01");
        const auto s = support_region(0.0, ref);
        const double lo = (1.0 - std::sqrt(1.0 + 4 * 1.91)) / 2, hi = (1.0 + std::sqrt(1.0 + 4 * 1.91)) / 2;
        const bool one = s.intervals.size() == 1;
        o.check(one, "support at h = 0 is a single interval");
        if (one) {
            o.check(std::fabs(s.intervals[0].lo - lo) <= 2e-2 && std::fabs(s.intervals[0].hi - hi) <= 2e-2,
                    "support at h = 0: [" + fmt("%.5f", s.intervals[0].lo) + ", " + fmt("%.5f", s.intervals[0].hi) +
                        "] vs printed roots [" + fmt("%.5f", lo) + ", " + fmt("%.5f", hi) + "] within 2e-2");
        }
    });

    run(4, "binormal exactness with equal covariances", 10, [&](Outcome& o) {
        const TwoClassProblem p = equal_covariance_problem();
        const double d2 = mahalanobis_sq(p.class1.mu, p.class2.mu, p.class1.sigma);
        o.note("Delta^2 = " + fmt("%.6f", d2));
        const auto grid = linspace(-6.0, 6.0, 601);
        double worst = 0.0;
        for (ClassLabel c : {ClassLabel::omega1, ClassLabel::omega2}) {
            const auto d = marginal_density(grid, c, p);
            const double mean = c == ClassLabel::omega1 ? d2 / 2 : -d2 / 2;
            for (std::size_t k = 0; k < grid.size(); ++k)
                worst = std::max(worst, std::fabs(d.density[k] - oracle::normal_pdf(grid[k], mean, d2)));
        }
        o.check(worst <= 1e-6, "max |f - N(+-D^2/2, D^2)| = " + fmt("%.3e", worst) + " <= 1e-6");
        const RocCurve roc = analytic_roc(p, linspace(-12.0, 12.0, 4001));
        const BinormalFit fit = normal_deviate_fit(roc);
        o.check(std::fabs(fit.b - 1.0) <= 1e-4, "normal-deviate slope b = " + fmt("%.7f", fit.b) + " (1 +- 1e-4)");
        const double target = oracle::normal_cdf(std::sqrt(d2) / std::sqrt(2.0));
        const double auc_fit = binormal_auc(fit.a, fit.b);
        const double auc_trap = trapezoid_auc(roc);
        o.check(std::fabs(auc_fit - target) <= 1e-5,
                "binormal AUC of the fit " + fmt("%.8f", auc_fit) + " vs Phi(D/sqrt2) = " + fmt("%.8f", target));
        o.check(std::fabs(auc_trap - target) <= 1e-5, "trapezoid AUC of the analytic ROC " + fmt("%.8f", auc_trap));
    });

    run(5, "estimator identities over 1000 randomized score sets with ties", 10, [&](Outcome& o) {
        SeededRng rng(kDefaultAcceptanceSeed, 5);
        int trap_mismatch = 0, prob_mismatch = 0, with_ties = 0;
        for (int rep = 0; rep < 1000; ++rep) {
            const std::size_t n1 = 1 + static_cast<std::size_t>(rng.uniform() * 80);
            const std::size_t n2 = 1 + static_cast<std::size_t>(rng.uniform() * 80);
            const double lattice = rep % 2 ? 0.25 : 1.0;
            ScoreSet s;
            for (std::size_t i = 0; i < n1; ++i) s.class1.push_back(std::round((rng.normal() + 0.5) / lattice) * lattice);
            for (std::size_t i = 0; i < n2; ++i) s.class2.push_back(std::round(rng.normal() / lattice) * lattice);
            std::vector<double> all = s.class1;
            all.insert(all.end(), s.class2.begin(), s.class2.end());
            std::sort(all.begin(), all.end());
            if (std::adjacent_find(all.begin(), all.end()) != all.end()) ++with_ties;
            const double mw = empirical_auc(s);
            if (trapezoid_auc(empirical_roc(s)) != mw) ++trap_mismatch;
            const auto id = auc_probability_identity_check(s);
            if (id.auc_mw != id.auc_prob || id.auc_mw != mw) ++prob_mismatch;
        }
        o.note(std::to_string(with_ties) + " of 1000 sets contain tied scores");
        o.check(trap_mismatch == 0, "trapezoid(empirical ROC) == Mann-Whitney exactly: " +
                                        std::to_string(trap_mismatch) + " mismatches");
        o.check(prob_mismatch == 0,
                "Mann-Whitney == pairwise probability count exactly: " + std::to_string(prob_mismatch) + " mismatches");
    });

    run(6, "binormal AUC form Phi(a/sqrt(1+b^2)) against numerical ROC area", 5, [&](Outcome& o) {
        double worst = 0.0;
        int printed_ok = 0, variant_ok = 0, cases = 0, variant_cases = 0;
        const int n = 100000;
        for (double a : {0.0, 0.5, 1.0, 2.0})
            for (double b : {0.5, 1.0, 2.0}) {
                // 1e5-point trapezoid over FPF in [0, 1].
                double area = 0.0, prev = 0.0;
                for (int i = 1; i <= n; ++i) {
                    const double x = double(i) / n;
                    const double y = binormal_tpf(a, b, x);
                    area += 0.5 * (y + prev) / n;
                    prev = y;
                }
                worst = std::max(worst, std::fabs(binormal_auc(a, b) - area));
                ++cases;
                if (std::fabs(oracle::normal_pdf(a / (1 + b * b)) - area) <= 1e-5) ++printed_ok;
                if (a != 0.0) {
                    ++variant_cases;
                    if (std::fabs(std_normal_cdf(a / (1 + b * b)) - area) <= 1e-5) ++variant_ok;
                }
            }
        o.check(worst <= 1e-5, "max |Phi(a/sqrt(1+b^2)) - area| over 12 (a, b) cases = " + fmt("%.3e", worst));
        o.check(printed_ok == 0, "printed phi(a/(1+b^2)) agrees in " + std::to_string(printed_ok) + " of " +
                                     std::to_string(cases) + " cases (expected none)");
        o.check(variant_ok == 0, "Phi(a/(1+b^2)) agrees in " + std::to_string(variant_ok) + " of " +
                                     std::to_string(variant_cases) + " cases where it differs (expected none)");
    });

    std::string first_csv;
    run(7, "learning curves at Delta^2 = 0.8, p in {3,7,11}, n in {20..2000}, 100 trials", 180, [&](Outcome& o) {
        const CurveSummary s = learning_curve(learning_curve_config(1));
        first_csv = curve_csv(s);
        const double asym = asymptotic_auc(0.8);
        bool a_ok = true;
        for (const auto& r : s.rows) {
            a_ok = a_ok && r.mean_auc_apparent >= r.mean_auc_true;
            o.note("p=" + std::to_string(r.p) + " n=" + std::to_string(r.n) + ": true " + fmt("%.5f", r.mean_auc_true) +
                   ", apparent " + fmt("%.5f", r.mean_auc_apparent) + ", var(true) " + fmt("%.4e", *r.var_auc_true));
        }
        o.check(s.rows.size() == 15, "15 (p, n) cells");
        o.check(a_ok, "(a) mean apparent AUC >= mean true AUC in every cell");
        for (std::size_t p : {3u, 7u, 11u}) {
            const CurveRow* r = s.find(p, 2000);
            o.check(r && std::fabs(r->mean_auc_true - 0.7366) <= 0.01,
                    "(b) p=" + std::to_string(p) + " n=2000 mean true AUC " + fmt("%.5f", r ? r->mean_auc_true : NAN) +
                        " within 0.01 of 0.7366");
        }
        o.note("Phi(sqrt(0.8/2)) = " + fmt("%.6f", asym));
        bool strictly = true;
        std::vector<double> v;
        for (std::size_t n : {20u, 50u, 100u, 500u, 2000u}) v.push_back(*s.find(11, n)->var_auc_true);
        for (std::size_t i = 1; i < v.size(); ++i) strictly = strictly && v[i] < v[i - 1];
        o.check(strictly, "(c) p=11 variance of true AUC strictly decreasing over n = 20, 50, 100, 500, 2000");
        o.note("p=11 variance n=20 vs n=2000: " + fmt("%.4e", v.front()) + " vs " + fmt("%.4e", v.back()));
    });

    run(8, "determinism of the learning-curve CSV, serial and parallel", 180, [&](Outcome& o) {
        const std::string again = curve_csv(learning_curve(learning_curve_config(1)));
        const std::string parallel = curve_csv(learning_curve(learning_curve_config(4)));
        o.check(!first_csv.empty() && again == first_csv, "repeat run byte-identical (" +
                                                              std::to_string(again.size()) + " bytes)");
        o.check(parallel == first_csv, "4-thread run byte-identical");
    });

    run(9, "invariance under simultaneous diagonalization", 20, [&](Outcome& o) {
        const DiagonalizedProblem d = transform_problem(ref);
        const Matrix wt = transpose(d.transform);
        SeededRng rng(kDefaultAcceptanceSeed, 9);
        TwoClassProblem skewed = ref, skewed_t = d.problem;
        skewed.prior1 = skewed_t.prior1 = 0.3;
        skewed.prior2 = skewed_t.prior2 = 0.7;
        int disagreements = 0;
        double worst_score = 0.0;
        for (int i = 0; i < 20000; ++i) {
            const ClassLabel c = i % 2 ? ClassLabel::omega1 : ClassLabel::omega2;
            const auto x = mvn_sample(ref.params(c), 1, rng).front();
            const Vector y = wt * x;
            const double h = llr_score(x, ref).value, ht = llr_score(y, d.problem).value;
            worst_score = std::max(worst_score, std::fabs(h - ht) / std::max(1.0, std::fabs(h)));
            if (classify(Score{h}, bayes_threshold(ref)) != classify(Score{ht}, bayes_threshold(d.problem)))
                ++disagreements;
            if (classify(Score{h}, bayes_threshold(skewed)) != classify(Score{ht}, bayes_threshold(skewed_t)))
                ++disagreements;
        }
        o.check(worst_score <= 1e-10, "max relative score change " + fmt("%.3e", worst_score) + " <= 1e-10");
        o.check(disagreements == 0, "decision disagreements over 20000 samples x 2 priors: " +
                                        std::to_string(disagreements));
        const auto grid = default_h_grid(ref, 1000);
        double worst = 0.0;
        for (ClassLabel c : {ClassLabel::omega1, ClassLabel::omega2}) {
            const auto a = marginal_density(grid, c, ref);
            const auto b = marginal_density(grid, c, d.problem);
            for (std::size_t k = 0; k < grid.size(); ++k)
                if (a.density[k] > 1e-8) worst = std::max(worst, std::fabs(b.density[k] / a.density[k] - 1.0));
        }
        o.check(worst <= 1e-6, "max relative change of f(h|w) where f > 1e-8: " + fmt("%.3e", worst) + " <= 1e-6");
    });

    std::printf("%d criterion(s) failed\n", failures);
    return failures;
}
