#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "llrlab/errors.hpp"
#include "llrlab/mcharness.hpp"
#include "oracles.hpp"

using namespace llrlab;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig c;
    c.dims = {2, 3};
    c.train_sizes = {10, 40};
    c.n_trials = 6;
    c.test_size = 200;
    return c;
}

std::string csv(const CurveSummary& s) {
    std::ostringstream out;
    write_curve_csv(out, s);
    return out.str();
}

}  // namespace

TEST(Calibration, SeparationIsHeldFixed) {
    for (std::size_t p : {1u, 3u, 7u, 11u}) {
        const double c = calibrate_c(p, 0.8);
        EXPECT_NEAR(c * c * double(p), 0.8, 1e-15);
    }
    EXPECT_NEAR(calibrate_c(11, 0.8), 0.26968, 1e-5);
}

TEST(Calibration, AsymptoticAuc) {
    EXPECT_NEAR(asymptotic_auc(0.8), oracle::normal_cdf(std::sqrt(0.4)), 1e-13);
    EXPECT_NEAR(asymptotic_auc(0.8), 0.736455, 1e-6);
    EXPECT_DOUBLE_EQ(asymptotic_auc(0.0), 0.5);
}

TEST(RunTrial, DeterministicAndStreamSensitive) {
    const auto s = trial_stream(1, 3, 20, 0);
    const TrialResult a = run_trial(3, 20, calibrate_c(3, 0.8), 500, s);
    const TrialResult b = run_trial(3, 20, calibrate_c(3, 0.8), 500, s);
    EXPECT_EQ(a.auc_true, b.auc_true);
    EXPECT_EQ(a.auc_apparent, b.auc_apparent);
    const TrialResult c = run_trial(3, 20, calibrate_c(3, 0.8), 500, trial_stream(1, 3, 20, 1));
    EXPECT_NE(a.auc_true, c.auc_true);
    EXPECT_GE(a.auc_true, 0.0);
    EXPECT_LE(a.auc_apparent, 1.0);
}

TEST(RunTrial, TrainingSizeMustExceedDimension) {
    EXPECT_THROW((void)run_trial(5, 5, 0.4, 100, trial_stream(1, 5, 5, 0)), ContractError);
}

TEST(RunTrial, LargeTrainingSetApproachesBayesAuc) {
    double mean = 0.0;
    const int reps = 10;
    for (int t = 0; t < reps; ++t)
        mean += run_trial(3, 5000, calibrate_c(3, 0.8), 5000, trial_stream(3, 3, 5000, t)).auc_true;
    EXPECT_NEAR(mean / reps, asymptotic_auc(0.8), 0.01);
}

TEST(LearningCurve, RowOrderAndShape) {
    ExperimentConfig c = small_config();
    c.dims = {3, 2, 3};
    c.train_sizes = {40, 10};
    const auto s = learning_curve(c);
    ASSERT_EQ(s.rows.size(), 4u);
    EXPECT_EQ(s.rows[0].p, 2u);
    EXPECT_EQ(s.rows[0].n, 10u);
    EXPECT_EQ(s.rows[1].n, 40u);
    EXPECT_EQ(s.rows[3].p, 3u);
    ASSERT_NE(s.find(3, 40), nullptr);
    EXPECT_EQ(s.find(4, 40), nullptr);
    for (const auto& r : s.rows) {
        EXPECT_EQ(r.n_trials, 6u);
        EXPECT_TRUE(r.var_auc_true.has_value());
    }
}

TEST(LearningCurve, ThreadCountDoesNotChangeResults) {
    ExperimentConfig c = small_config();
    const std::string serial = csv(learning_curve(c));
    c.threads = 3;
    EXPECT_EQ(csv(learning_curve(c)), serial);
    c.threads = 0;
    EXPECT_EQ(csv(learning_curve(c)), serial);
}

TEST(LearningCurve, AggregatesMatchIndividualTrials) {
    ExperimentConfig c = small_config();
    c.dims = {2};
    c.train_sizes = {10};
    const auto s = learning_curve(c);
    std::vector<double> tr;
    for (std::size_t t = 0; t < c.n_trials; ++t)
        tr.push_back(run_trial(2, 10, calibrate_c(2, 0.8), 200, trial_stream(c.base_seed, 2, 10, t)).auc_true);
    double mean = 0.0;
    for (double v : tr) mean += v;
    mean /= double(tr.size());
    double var = 0.0;
    for (double v : tr) var += (v - mean) * (v - mean);
    var /= double(tr.size() - 1);
    EXPECT_NEAR(s.rows[0].mean_auc_true, mean, 1e-15);
    EXPECT_NEAR(*s.rows[0].var_auc_true, var, 1e-15);
}

TEST(LearningCurve, ValidatesConfig) {
    ExperimentConfig c = small_config();
    c.train_sizes = {3, 40};
    EXPECT_THROW((void)learning_curve(c), ContractError);
    c = small_config();
    c.dims.clear();
    EXPECT_THROW((void)learning_curve(c), ContractError);
    c = small_config();
    c.n_trials = 0;
    EXPECT_THROW((void)learning_curve(c), ContractError);
}

TEST(VarianceStudy, SingleDimensionOnly) {
    EXPECT_THROW((void)variance_study(small_config()), ContractError);
    ExperimentConfig c = small_config();
    c.dims = {3};
    EXPECT_EQ(variance_study(c).rows.size(), 2u);
}

TEST(CurveCsv, SchemaAndMissingVariance) {
    ExperimentConfig c = small_config();
    c.n_trials = 1;
    const auto rows = oracle::read_csv(csv(learning_curve(c)));
    ASSERT_EQ(rows.size(), 5u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"p", "n", "mean_auc_true", "mean_auc_apparent", "var_auc_true",
                                                 "var_auc_apparent", "n_trials"}));
    EXPECT_EQ(rows[1][4], "NA");
    EXPECT_EQ(rows[1][5], "NA");
    EXPECT_EQ(rows[1][6], "1");
}

TEST(CurveCsv, RoundTripsExactly) {
    const auto s = learning_curve(small_config());
    const auto rows = oracle::read_csv(csv(s));
    for (std::size_t i = 0; i < s.rows.size(); ++i) {
        EXPECT_EQ(std::strtod(rows[i + 1][2].c_str(), nullptr), s.rows[i].mean_auc_true);
        EXPECT_EQ(std::strtod(rows[i + 1][3].c_str(), nullptr), s.rows[i].mean_auc_apparent);
        EXPECT_EQ(std::strtod(rows[i + 1][4].c_str(), nullptr), *s.rows[i].var_auc_true);
    }
}
