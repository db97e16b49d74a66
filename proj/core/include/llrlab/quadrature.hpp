#pragma once
// Globally adaptive Gauss-Kronrod (7/15) quadrature on finite intervals.

#include <cstddef>
#include <functional>

namespace llrlab {

struct QuadratureOptions {
    double abs_tol = 1e-9;
    double rel_tol = 0.0;
    std::size_t max_evaluations = std::size_t{1} << 15;
    // The interval is first cut into this many equal panels. A single 15-point rule can step
    // straight over a peak much narrower than the interval and report a zero error estimate.
    std::size_t initial_panels = 1;
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;  // sum of |K15 - G7| over the final partition
    std::size_t evaluations = 0;
    bool converged = false;
};

// Repeatedly bisects the interval with the largest error estimate until the total error is
// below max(abs_tol, rel_tol * |value|) or the evaluation budget is spent. A spent budget is
// reported through `converged`, never hidden.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    const QuadratureOptions& options = {});

}  // namespace llrlab
