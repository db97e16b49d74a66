#include "llrlab/normal.hpp"

#include <cmath>
#include <string>

#include "llrlab/errors.hpp"

namespace llrlab {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;
constexpr double kSqrt2Pi = 2.50662827463100050242;

// Acklam's rational approximation to the lower-tail quantile (relative error ~1e-9),
// polished afterwards by a Halley step against the erfc-based CDF.
double quantile_seed(double p) {
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double std_normal_pdf(double z) { return kInvSqrt2Pi * std::exp(-0.5 * z * z); }

double std_normal_cdf(double z) { return 0.5 * std::erfc(-z * kInvSqrt2); }

double std_normal_sf(double z) { return 0.5 * std::erfc(z * kInvSqrt2); }

double std_normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw DomainError("std_normal_quantile: p must lie in (0,1), got " + std::to_string(p));
    if (p == 0.5) return 0.0;
    // Work in the lower tail; the upper tail follows by symmetry.
    const bool upper = p > 0.5;
    const double tail = upper ? 1.0 - p : p;
    double x = quantile_seed(tail);
    for (int it = 0; it < 2; ++it) {
        const double e = std_normal_cdf(x) - tail;
        const double u = e * kSqrt2Pi * std::exp(0.5 * x * x);
        x -= u / (1.0 + 0.5 * x * u);
    }
    return upper ? -x : x;
}

}  // namespace llrlab
