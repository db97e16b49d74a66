#include "llrlab/mcharness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <ostream>
#include <string>
#include <thread>

#include "llrlab/bayesllr.hpp"
#include "llrlab/errors.hpp"
#include "llrlab/format.hpp"
#include "llrlab/normal.hpp"
#include "llrlab/rocauc.hpp"

namespace llrlab {

namespace {

constexpr unsigned kMaxRetries = 3;

enum StreamTag : std::uint64_t {
    kTrainClass1 = 1,
    kTrainClass2 = 2,
    kTestClass1 = 3,
    kTestClass2 = 4,
};

std::string provenance(std::size_t p, std::size_t n, std::size_t trial) {
    return "(p=" + std::to_string(p) + ", n=" + std::to_string(n) + ", trial=" + std::to_string(trial) + ")";
}

// Draws n vectors of N(mean*1, I) directly; the covariance is the identity so no factor is needed.
std::vector<Vector> draw_isotropic(std::size_t p, double mean, std::size_t n, SeededRng rng) {
    std::vector<Vector> out;
    out.reserve(n);
    for (std::size_t s = 0; s < n; ++s) {
        Vector x(p);
        for (std::size_t i = 0; i < p; ++i) x[i] = mean + rng.normal();
        out.push_back(std::move(x));
    }
    return out;
}

}  // namespace

void ExperimentConfig::validate() const {
    if (dims.empty() || train_sizes.empty()) throw ContractError("ExperimentConfig: dims and train_sizes must be non-empty");
    if (n_trials < 1 || test_size < 1) throw ContractError("ExperimentConfig: counts must be >= 1");
    if (!(target_delta_sq > 0.0) || !std::isfinite(target_delta_sq))
        throw ContractError("ExperimentConfig: target_delta_sq must be positive");
    const std::size_t max_p = *std::max_element(dims.begin(), dims.end());
    for (std::size_t p : dims)
        if (p < 1) throw ContractError("ExperimentConfig: dimensionalities must be >= 1");
    for (std::size_t n : train_sizes)
        if (n <= max_p)
            throw ContractError("ExperimentConfig: every training size must exceed the largest dimensionality (" +
                                std::to_string(n) + " <= " + std::to_string(max_p) + ")");
}

const CurveRow* CurveSummary::find(std::size_t p, std::size_t n) const noexcept {
    for (const auto& r : rows)
        if (r.p == p && r.n == n) return &r;
    return nullptr;
}

double calibrate_c(std::size_t p, double target_delta_sq) {
    if (p < 1 || !(target_delta_sq > 0.0)) throw ContractError("calibrate_c: need p >= 1 and target_delta_sq > 0");
    return std::sqrt(target_delta_sq / static_cast<double>(p));
}

double asymptotic_auc(double target_delta_sq) {
    if (target_delta_sq < 0.0) throw ContractError("asymptotic_auc: target_delta_sq must be non-negative");
    return std_normal_cdf(std::sqrt(0.5 * target_delta_sq));
}

SeededRng trial_stream(std::uint64_t base_seed, std::size_t p, std::size_t n, std::size_t trial) {
    return SeededRng(base_seed, derive_stream_id({p, n, trial}));
}

TrialResult run_trial(std::size_t p, std::size_t n, double c, std::size_t test_size, const SeededRng& rng,
                      const std::function<void(std::string_view)>& log) {
    if (n <= p) throw ContractError("run_trial: training size must exceed the dimensionality");
    if (test_size < 1) throw ContractError("run_trial: test_size must be >= 1");

    TrialResult result;
    result.n = n;
    result.p = p;

    for (unsigned attempt = 0;; ++attempt) {
        const SeededRng base = attempt == 0 ? rng : rng.substream(0x7265747279ULL + attempt);
        const auto train1 = draw_isotropic(p, 0.0, n, base.substream(kTrainClass1));
        const auto train2 = draw_isotropic(p, c, n, base.substream(kTrainClass2));
        try {
            const GaussianParams fit1 = estimate_params(train1);
            const GaussianParams fit2 = estimate_params(train2);
            const LlrScorer scorer(fit1, fit2);

            ScoreSet apparent;
            apparent.class1.reserve(n);
            apparent.class2.reserve(n);
            for (const auto& x : train1) apparent.class1.push_back(scorer(x).value);
            for (const auto& x : train2) apparent.class2.push_back(scorer(x).value);

            ScoreSet tested;
            tested.class1.reserve(test_size);
            tested.class2.reserve(test_size);
            for (const auto& x : draw_isotropic(p, 0.0, test_size, base.substream(kTestClass1)))
                tested.class1.push_back(scorer(x).value);
            for (const auto& x : draw_isotropic(p, c, test_size, base.substream(kTestClass2)))
                tested.class2.push_back(scorer(x).value);

            result.auc_apparent = empirical_auc(apparent);
            result.auc_true = empirical_auc(tested);
            result.retries = attempt;
            return result;
        } catch (const ConditioningError& e) {
            if (attempt >= kMaxRetries) throw;
            if (log)
                log("run_trial: degenerate training sample (p=" + std::to_string(p) + ", n=" + std::to_string(n) +
                    ", attempt " + std::to_string(attempt) + "): " + e.what() + "; redrawing");
        }
    }
}

CurveSummary learning_curve(const ExperimentConfig& config) {
    config.validate();
    std::vector<std::size_t> dims = config.dims;
    std::vector<std::size_t> sizes = config.train_sizes;
    std::sort(dims.begin(), dims.end());
    dims.erase(std::unique(dims.begin(), dims.end()), dims.end());
    std::sort(sizes.begin(), sizes.end());
    sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());

    struct Task {
        std::size_t p, n, trial;
    };
    std::vector<Task> tasks;
    for (std::size_t p : dims)
        for (std::size_t n : sizes)
            for (std::size_t t = 0; t < config.n_trials; ++t) tasks.push_back({p, n, t});

    std::vector<TrialResult> results(tasks.size());
    auto body = [&](std::size_t i) {
        const Task& t = tasks[i];
        try {
            results[i] = run_trial(t.p, t.n, calibrate_c(t.p, config.target_delta_sq), config.test_size,
                                   trial_stream(config.base_seed, t.p, t.n, t.trial), config.log);
            results[i].trial_index = t.trial;
        } catch (const ConditioningError& e) {
            throw ConditioningError(std::string(e.what()) + " " + provenance(t.p, t.n, t.trial));
        } catch (const Error& e) {
            throw NumericalError(std::string(e.what()) + " " + provenance(t.p, t.n, t.trial));
        }
    };

    unsigned threads = config.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : config.threads;
    if (threads <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) body(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::atomic<bool> failed{false};
        std::exception_ptr failure;
        {
            std::vector<std::jthread> pool;
            for (unsigned w = 0; w < threads; ++w) {
                pool.emplace_back([&] {
                    for (std::size_t i = next++; i < tasks.size() && !failed; i = next++) {
                        try {
                            body(i);
                        } catch (...) {
                            if (!failed.exchange(true)) failure = std::current_exception();
                        }
                    }
                });
            }
        }
        if (failure) std::rethrow_exception(failure);
    }

    // Reduce in task order so the sums do not depend on the schedule.
    CurveSummary summary;
    std::size_t k = 0;
    for (std::size_t p : dims) {
        for (std::size_t n : sizes) {
            CurveRow row;
            row.p = p;
            row.n = n;
            row.n_trials = config.n_trials;
            const std::size_t begin = k;
            double sum_t = 0.0, sum_a = 0.0;
            for (std::size_t t = 0; t < config.n_trials; ++t, ++k) {
                sum_t += results[k].auc_true;
                sum_a += results[k].auc_apparent;
                row.retries += results[k].retries;
            }
            const double m = static_cast<double>(config.n_trials);
            row.mean_auc_true = sum_t / m;
            row.mean_auc_apparent = sum_a / m;
            if (config.n_trials > 1) {
                double ss_t = 0.0, ss_a = 0.0;
                for (std::size_t j = begin; j < k; ++j) {
                    ss_t += (results[j].auc_true - row.mean_auc_true) * (results[j].auc_true - row.mean_auc_true);
                    ss_a += (results[j].auc_apparent - row.mean_auc_apparent) *
                            (results[j].auc_apparent - row.mean_auc_apparent);
                }
                row.var_auc_true = ss_t / (m - 1.0);
                row.var_auc_apparent = ss_a / (m - 1.0);
            }
            summary.rows.push_back(row);
        }
    }
    return summary;
}

CurveSummary variance_study(const ExperimentConfig& config) {
    std::vector<std::size_t> dims = config.dims;
    std::sort(dims.begin(), dims.end());
    dims.erase(std::unique(dims.begin(), dims.end()), dims.end());
    if (dims.size() != 1) throw ContractError("variance_study: exactly one dimensionality is required");
    return learning_curve(config);
}

void write_curve_csv(std::ostream& out, const CurveSummary& summary) {
    out << "p,n,mean_auc_true,mean_auc_apparent,var_auc_true,var_auc_apparent,n_trials\n";
    auto opt = [](const std::optional<double>& v) { return v ? format_real(*v) : std::string("NA"); };
    for (const auto& r : summary.rows)
        out << r.p << ',' << r.n << ',' << format_real(r.mean_auc_true) << ',' << format_real(r.mean_auc_apparent)
            << ',' << opt(r.var_auc_true) << ',' << opt(r.var_auc_apparent) << ',' << r.n_trials << '\n';
}

}  // namespace llrlab
