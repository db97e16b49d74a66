#pragma once
// Standard normal distribution: density, CDF and quantile.

namespace llrlab {

inline constexpr double kPi = 3.14159265358979323846;

double std_normal_pdf(double z);

// Phi(z), computed from the complementary error function. Accurate to ~1e-16 absolute.
double std_normal_cdf(double z);

// 1 - Phi(z) without cancellation in the upper tail.
double std_normal_sf(double z);

// Phi^{-1}(p) for 0 < p < 1; throws DomainError otherwise.
double std_normal_quantile(double p);

}  // namespace llrlab
