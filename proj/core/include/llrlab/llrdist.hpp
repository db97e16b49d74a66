#pragma once
// Exact distribution of the two-feature log-likelihood-ratio score.
//
// Fixing x1 turns h(x1, x2) = h into a quadratic in x2, so each (h, x1) has zero, one or two
// pre-images. The joint density of (h, x1) is the sum over those branches of
// f(x1, x2) / |dh/dx2|, and the marginal f(h) is its integral over the feasible x1 interval(s).
// At the ends of a feasible interval the two branches merge and the integrand has an
// integrable 1/sqrt singularity, which is removed by a change of variables before quadrature.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "llrlab/bayesllr.hpp"
#include "llrlab/rocauc.hpp"
#include "llrlab/quadrature.hpp"
#include "llrlab/rng.hpp"

namespace llrlab {

struct Interval {
    double lo;
    double hi;
};

// Coefficients of h as a polynomial in (x1, x2):
//   h = a x2^2 + (b0 + b1 x1) x2 + (g2 x1^2 + g1 x1 + g0).
// For fixed (h, x1) the x2-discriminant is
//   disc = q2 x1^2 + q1 x1 + q0 + qh h.
struct ScoreGeometry {
    double a = 0.0;
    double b0 = 0.0, b1 = 0.0;
    double g2 = 0.0, g1 = 0.0, g0 = 0.0;
    double q2 = 0.0, q1 = 0.0, q0 = 0.0, qh = 0.0;
    bool linear_in_x2 = false;  // a vanishes: one pre-image per (h, x1)
    bool degenerate = false;    // h does not depend on x2 at all

    static ScoreGeometry from_problem(const TwoClassProblem& problem);

    double beta(double x1) const noexcept { return b0 + b1 * x1; }
    double gamma(double x1) const noexcept { return (g2 * x1 + g1) * x1 + g0; }
    double discriminant(double h, double x1) const noexcept {
        return (q2 * x1 + q1) * x1 + q0 + qh * h;
    }
    double score(double x1, double x2) const noexcept {
        return (a * x2 + beta(x1)) * x2 + gamma(x1);
    }
};

// The feasible x1 set at a fixed h: where the x2-discriminant is non-negative (quadratic case)
// or where dh/dx2 != 0 (linear case).
struct SupportRegion {
    double h = 0.0;
    // disc(x1) = c2 x1^2 + c1 x1 + c0 at this h.
    double c2 = 0.0, c1 = 0.0, c0 = 0.0;
    bool linear_in_x2 = false;
    std::vector<Interval> intervals;  // ascending, possibly unbounded (+-inf)

    bool empty() const noexcept { return intervals.empty(); }
    double discriminant(double x1) const noexcept { return (c2 * x1 + c1) * x1 + c0; }
};

// Range of h over which the support is non-empty.
struct ScoreRange {
    double lower;
    double upper;
};

struct DensityGrid {
    std::vector<double> h_values;
    std::vector<double> density;
    std::vector<double> est_error;
    std::vector<std::uint8_t> flagged;  // 1 where quadrature did not converge
    ClassLabel label = ClassLabel::omega1;

    std::size_t size() const noexcept { return h_values.size(); }
    bool any_flagged() const noexcept;
};

struct MarginalOptions {
    QuadratureOptions quadrature{1e-12, 1e-10, std::size_t{1} << 15, 32};
    // Half-width, in standard deviations of the integration variable, of the x1 window used
    // where the support is unbounded.
    double window_sigmas = 12.0;
    unsigned threads = 1;
};

// Two-feature problems only (ContractError otherwise).
std::vector<double> invert_llr(double h, double x1, const TwoClassProblem& problem);
double joint_density(double h, double x1, ClassLabel cls, const TwoClassProblem& problem);
SupportRegion support_region(double h, const TwoClassProblem& problem);
ScoreRange score_support(const TwoClassProblem& problem);

DensityGrid marginal_density(std::span<const double> h_values, ClassLabel cls,
                             const TwoClassProblem& problem, const MarginalOptions& options = {});

// Probability mass of each cell [edges[k], edges[k+1]] by 5-point Gauss-Legendre on the
// marginal density. Edges ascending.
std::vector<double> marginal_cell_masses(std::span<const double> edges, ClassLabel cls,
                                         const TwoClassProblem& problem,
                                         const MarginalOptions& options = {});

// ROC of the exact score distributions at the given ascending thresholds. Fractions are
// normalized by the mass captured between the first and last threshold; points whose
// fractions fall within `min_tail` of 0 or 1 are dropped (anchors are always present).
RocCurve analytic_roc(const TwoClassProblem& problem, std::span<const double> thresholds,
                      double min_tail = 1e-7, const MarginalOptions& options = {});

// Trapezoid integral of the density over the grid.
double grid_integral(const DensityGrid& grid);
// Cumulative trapezoid integral, one value per grid point (starts at 0).
std::vector<double> grid_cdf(const DensityGrid& grid);

// Evenly spaced h grid covering the bulk of both classes' score distributions, clipped to the
// support. Deterministic.
std::vector<double> default_h_grid(const TwoClassProblem& problem, std::size_t n_points);

// CSV: header `h,density,est_error,class`, 17 significant digits.
void write_density_csv(std::ostream& out, const DensityGrid& grid);

struct DiagonalizedProblem {
    Matrix transform;            // W with W' S1 W = I and W' S2 W = diag(lambda)
    TwoClassProblem problem;     // in coordinates x' = W' x
    std::vector<double> lambda;  // descending
};

struct SimultaneousDiagonalization {
    Matrix transform;
    std::vector<double> lambda;  // descending, positive
};

SimultaneousDiagonalization simdiag(const Matrix& sigma1, const Matrix& sigma2);

// Maps means by W' and covariances to I and diag(lambda). Scores are preserved exactly
// (the Jacobian of the map cancels in the ratio), so every decision is unchanged.
DiagonalizedProblem transform_problem(const TwoClassProblem& problem);

struct HistogramBin {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t count = 0;
    double empirical_density = 0.0;
    double analytic_density = 0.0;  // mean analytic density over the bin
};

struct HistogramComparison {
    double ks_statistic = 0.0;
    std::vector<HistogramBin> bins;
};

// Kolmogorov-Smirnov distance between the empirical CDF of `scores` and the grid's integrated
// CDF, plus a Freedman-Diaconis histogram (clamped to 20..200 bins).
// Throws CoverageError when the grid does not span the scores.
HistogramComparison histogram_vs_analytic(std::span<const double> scores, const DensityGrid& grid);

// Scores h(x) of n draws from the given class under the true parameters.
std::vector<double> simulate_scores(const TwoClassProblem& problem, ClassLabel cls, std::size_t n,
                                    SeededRng& rng);

}  // namespace llrlab
