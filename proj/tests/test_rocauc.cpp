#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "llrlab/errors.hpp"
#include "llrlab/normal.hpp"
#include "llrlab/rng.hpp"
#include "llrlab/rocauc.hpp"
#include "oracles.hpp"

using namespace llrlab;

namespace {

// Scores on a coarse lattice so that ties are frequent.
ScoreSet random_scores(SeededRng& rng, std::size_t n1, std::size_t n2, double lattice) {
    ScoreSet s;
    for (std::size_t i = 0; i < n1; ++i) s.class1.push_back(std::round((rng.normal() + 0.7) / lattice) * lattice);
    for (std::size_t i = 0; i < n2; ++i) s.class2.push_back(std::round(rng.normal() / lattice) * lattice);
    return s;
}

RocCurve binormal_curve(double a, double b, int n) {
    RocCurve c;
    c.points.push_back({0.0, 0.0, INFINITY});
    for (int i = 1; i < n; ++i) {
        const double fpf = double(i) / n;
        c.points.push_back({fpf, binormal_tpf(a, b, fpf), 0.0});
    }
    c.points.push_back({1.0, 1.0, -INFINITY});
    return c;
}

}  // namespace

TEST(EmpiricalAuc, HandCountedExample) {
    const ScoreSet s{{1, 2, 3}, {0, 1}};
    // 5 wins and one tie out of 6 pairs.
    EXPECT_DOUBLE_EQ(empirical_auc(s), 5.5 / 6.0);
}

TEST(EmpiricalAuc, EmptyClassThrows) {
    EXPECT_THROW((void)empirical_auc(ScoreSet{{}, {1.0}}), Error);
}

TEST(ErrorFractions, StrictInequalities) {
    const ScoreSet s{{0, 1, 2, 3}, {-1, 0, 1}};
    const auto e = empirical_error_fractions(s, Threshold{1.0});
    EXPECT_DOUBLE_EQ(e.fnf, 0.25);  // only 0 is strictly below 1
    EXPECT_DOUBLE_EQ(e.fpf, 0.0);   // nothing strictly above 1
}

TEST(EmpiricalRoc, AnchoredAndMonotone) {
    SeededRng rng(1, 1);
    const ScoreSet s = random_scores(rng, 40, 60, 0.5);
    const RocCurve c = empirical_roc(s);
    EXPECT_NO_THROW(c.validate());
    EXPECT_EQ(c.points.front().fpf, 0.0);
    EXPECT_EQ(c.points.front().tpf, 0.0);
    EXPECT_EQ(c.points.front().threshold, INFINITY);
    EXPECT_EQ(c.points.back().fpf, 1.0);
    EXPECT_EQ(c.points.back().tpf, 1.0);
    for (std::size_t i = 1; i < c.points.size(); ++i) {
        EXPECT_LE(c.points[i - 1].fpf, c.points[i].fpf);
        EXPECT_LE(c.points[i - 1].tpf, c.points[i].tpf);
        EXPECT_GE(c.points[i - 1].threshold, c.points[i].threshold);
    }
}

TEST(AucIdentities, RandomizedWithTies) {
    SeededRng rng(99, 5);
    for (int rep = 0; rep < 300; ++rep) {
        const std::size_t n1 = 1 + static_cast<std::size_t>(rng.uniform() * 60);
        const std::size_t n2 = 1 + static_cast<std::size_t>(rng.uniform() * 60);
        const ScoreSet s = random_scores(rng, n1, n2, rep % 3 == 0 ? 1.0 : 0.25);
        const double mw = empirical_auc(s);
        EXPECT_EQ(trapezoid_auc(empirical_roc(s)), mw);
        const auto id = auc_probability_identity_check(s);
        EXPECT_EQ(id.auc_mw, id.auc_prob);
        EXPECT_NEAR(mw, oracle::pairwise_auc(s.class1, s.class2), 1e-15);
    }
}

TEST(Binormal, AucMatchesNumericalArea) {
    for (double a : {0.0, 0.5, 1.0, 2.0})
        for (double b : {0.5, 1.0, 2.0}) {
            // Area under TPF(FPF) via the substitution FPF = Phi(z), which removes the endpoint kinks.
            const double area = oracle::simpson(
                [&](double z) { return std_normal_cdf(a + b * z) * oracle::normal_pdf(z); }, -12.0, 12.0, 20000);
            EXPECT_NEAR(binormal_auc(a, b), area, 1e-10) << a << ' ' << b;
        }
    EXPECT_THROW((void)binormal_auc(1.0, 0.0), DomainError);
    EXPECT_THROW((void)binormal_tpf(1.0, -1.0, 0.5), DomainError);
}

TEST(Binormal, TpfEndpoints) {
    EXPECT_EQ(binormal_tpf(1.0, 1.0, 0.0), 0.0);
    EXPECT_EQ(binormal_tpf(1.0, 1.0, 1.0), 1.0);
    EXPECT_NEAR(binormal_tpf(0.0, 1.0, 0.3), 0.3, 1e-15);
}

TEST(NormalDeviateFit, RecoversExactBinormalLine) {
    for (double a : {0.3, 1.5})
        for (double b : {0.6, 1.0, 1.8}) {
            const BinormalFit f = normal_deviate_fit(binormal_curve(a, b, 200));
            EXPECT_NEAR(f.a, a, 1e-9);
            EXPECT_NEAR(f.b, b, 1e-9);
            // TPF values just below 1 lose digits through the quantile; 1e-8 is the floor.
            EXPECT_LT(f.residual, 1e-8);
            EXPECT_EQ(f.n_points, 199u);
        }
}

TEST(NormalDeviateFit, TooFewPoints) {
    EXPECT_THROW((void)normal_deviate_fit(binormal_curve(1, 1, 2)), InsufficientDataError);
}

TEST(RocCsv, RoundTripsExactly) {
    SeededRng rng(4, 4);
    const RocCurve c = empirical_roc(random_scores(rng, 30, 30, 0.01));
    std::ostringstream out;
    write_roc_csv(out, c);
    const auto rows = oracle::read_csv(out.str());
    ASSERT_EQ(rows.size(), c.points.size() + 1);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"fpf", "tpf", "threshold"}));
    EXPECT_EQ(rows[1][2], "inf");
    EXPECT_EQ(rows.back()[2], "-inf");
    for (std::size_t i = 0; i < c.points.size(); ++i) {
        EXPECT_EQ(std::strtod(rows[i + 1][0].c_str(), nullptr), c.points[i].fpf);
        EXPECT_EQ(std::strtod(rows[i + 1][1].c_str(), nullptr), c.points[i].tpf);
        EXPECT_EQ(std::strtod(rows[i + 1][2].c_str(), nullptr), c.points[i].threshold);
    }
}
