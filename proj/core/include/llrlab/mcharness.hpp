#pragma once
// Monte-Carlo learning curves for the plug-in Bayes (quadratic) classifier trained on finite
// samples from mu1 = 0, mu2 = c*1, S1 = S2 = I.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "llrlab/rng.hpp"

namespace llrlab {

struct ExperimentConfig {
    std::vector<std::size_t> dims{3, 7, 11};
    std::vector<std::size_t> train_sizes{20, 50, 100, 500, 2000};
    std::size_t n_trials = 100;
    std::size_t test_size = 1000;
    double target_delta_sq = 0.8;
    std::uint64_t base_seed = 20190801;
    // Worker threads for independent trials; 0 means hardware concurrency. Results do not
    // depend on this value.
    unsigned threads = 1;
    // Receives one line per degenerate-sample retry.
    std::function<void(std::string_view)> log;

    void validate() const;
};

struct TrialResult {
    double auc_true = 0.0;      // on test_size fresh vectors per class
    double auc_apparent = 0.0;  // on the training vectors themselves
    std::size_t n = 0;
    std::size_t p = 0;
    std::size_t trial_index = 0;
    unsigned retries = 0;
};

struct CurveRow {
    std::size_t p = 0;
    std::size_t n = 0;
    double mean_auc_true = 0.0;
    double mean_auc_apparent = 0.0;
    std::optional<double> var_auc_true;  // unbiased; empty when n_trials == 1
    std::optional<double> var_auc_apparent;
    std::size_t n_trials = 0;
    unsigned retries = 0;
};

struct CurveSummary {
    std::vector<CurveRow> rows;  // p ascending, then n ascending

    const CurveRow* find(std::size_t p, std::size_t n) const noexcept;
};

// c such that c^2 p = target_delta_sq.
double calibrate_c(std::size_t p, double target_delta_sq);

// Phi(sqrt(delta_sq / 2)): Bayes AUC for equal-covariance classes at squared separation delta_sq.
double asymptotic_auc(double target_delta_sq);

// One train/score/test realization. Deterministic in `rng` (seed and stream id). Rank-deficient
// training samples are redrawn from a derived sub-stream at most 3 times.
TrialResult run_trial(std::size_t p, std::size_t n, double c, std::size_t test_size, const SeededRng& rng,
                      const std::function<void(std::string_view)>& log = {});

// Stream of trial `trial` at (p, n) under base_seed; independent of execution order.
SeededRng trial_stream(std::uint64_t base_seed, std::size_t p, std::size_t n, std::size_t trial);

CurveSummary learning_curve(const ExperimentConfig& config);

// learning_curve restricted to a single dimensionality (ContractError otherwise).
CurveSummary variance_study(const ExperimentConfig& config);

// CSV: header `p,n,mean_auc_true,mean_auc_apparent,var_auc_true,var_auc_apparent,n_trials`;
// 17 significant digits; unavailable variances as NA.
void write_curve_csv(std::ostream& out, const CurveSummary& summary);

}  // namespace llrlab
