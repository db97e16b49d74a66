#pragma once
// Multinormal class models: density, sampling, plug-in estimation, Mahalanobis separation.

#include <cstddef>
#include <span>
#include <vector>

#include "llrlab/rng.hpp"
#include "llrlab/smallmat.hpp"

namespace llrlab {

enum class ClassLabel { omega1, omega2 };

const char* to_string(ClassLabel c) noexcept;

struct GaussianParams {
    Vector mu;
    Matrix sigma;

    std::size_t dim() const noexcept { return mu.size(); }
    // Throws ContractError / DecompositionError if sigma is not SPD or shapes disagree.
    void validate() const;
};

struct LabeledSample {
    Vector features;
    ClassLabel label;
};

// Evaluates a fixed multinormal density repeatedly without refactoring sigma.
class MvnDensity {
public:
    explicit MvnDensity(const GaussianParams& params);

    double pdf(const Vector& x) const;
    double log_pdf(const Vector& x) const;
    // (x - mu)^T sigma^{-1} (x - mu)
    double mahalanobis_sq(const Vector& x) const;

    const GaussianParams& params() const noexcept { return params_; }
    const SpdFactor& factor() const noexcept { return factor_; }

private:
    GaussianParams params_;
    SpdFactor factor_;
    double log_norm_;
};

double mvn_pdf(const Vector& x, const GaussianParams& params);
double mvn_log_pdf(const Vector& x, const GaussianParams& params);

// n draws mu + L z, z ~ N(0, I), L the Cholesky factor of sigma. Advances rng.
std::vector<Vector> mvn_sample(const GaussianParams& params, std::size_t n, SeededRng& rng);

// Sample mean and the 1/(n-1) sample covariance.
// Fewer than two samples: InsufficientDataError. Rank-deficient scatter (always the case when
// n <= dim): ConditioningError.
GaussianParams estimate_params(std::span<const Vector> samples);

double mahalanobis(const Vector& mu1, const Vector& mu2, const Matrix& sigma);
double mahalanobis_sq(const Vector& mu1, const Vector& mu2, const Matrix& sigma);

}  // namespace llrlab
