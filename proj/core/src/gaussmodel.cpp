#include "llrlab/gaussmodel.hpp"

#include <cmath>
#include <string>

#include "llrlab/errors.hpp"
#include "llrlab/normal.hpp"

namespace llrlab {

const char* to_string(ClassLabel c) noexcept {
    return c == ClassLabel::omega1 ? "omega1" : "omega2";
}

void GaussianParams::validate() const {
    if (mu.empty()) throw ContractError("GaussianParams: empty mean vector");
    if (sigma.rows() != mu.size() || sigma.cols() != mu.size())
        throw ContractError("GaussianParams: covariance shape does not match mean dimension");
    if (!all_finite(mu)) throw ContractError("GaussianParams: non-finite mean");
    (void)cholesky(sigma);
}

MvnDensity::MvnDensity(const GaussianParams& params)
    : params_(params), factor_((params.validate(), params.sigma)) {
    const double p = static_cast<double>(params_.dim());
    log_norm_ = -0.5 * p * std::log(2.0 * kPi) - 0.5 * factor_.log_det();
}

double MvnDensity::mahalanobis_sq(const Vector& x) const {
    if (x.size() != params_.dim()) throw ContractError("mvn density: dimension mismatch");
    return factor_.inverse_quadratic_form(x - params_.mu);
}

double MvnDensity::log_pdf(const Vector& x) const { return log_norm_ - 0.5 * mahalanobis_sq(x); }

double MvnDensity::pdf(const Vector& x) const { return std::exp(log_pdf(x)); }

double mvn_pdf(const Vector& x, const GaussianParams& params) { return MvnDensity(params).pdf(x); }

double mvn_log_pdf(const Vector& x, const GaussianParams& params) {
    return MvnDensity(params).log_pdf(x);
}

std::vector<Vector> mvn_sample(const GaussianParams& params, std::size_t n, SeededRng& rng) {
    params.validate();
    const Matrix l = cholesky(params.sigma);
    const std::size_t p = params.dim();
    std::vector<Vector> out;
    out.reserve(n);
    Vector z(p);
    for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t i = 0; i < p; ++i) z[i] = rng.normal();
        Vector x = params.mu;
        for (std::size_t i = 0; i < p; ++i)
            for (std::size_t k = 0; k <= i; ++k) x[i] += l(i, k) * z[k];
        out.push_back(std::move(x));
    }
    return out;
}

GaussianParams estimate_params(std::span<const Vector> samples) {
    const std::size_t n = samples.size();
    if (n < 2)
        throw InsufficientDataError("estimate_params: need at least 2 samples, got " +
                                    std::to_string(n));
    const std::size_t p = samples.front().size();
    if (p == 0) throw ContractError("estimate_params: zero-dimensional samples");

    Vector mean(p);
    for (const auto& x : samples) {
        if (x.size() != p) throw ContractError("estimate_params: inconsistent sample dimensions");
        for (std::size_t i = 0; i < p; ++i) mean[i] += x[i];
    }
    for (auto& m : mean) m /= static_cast<double>(n);

    Matrix scatter(p, p);
    for (const auto& x : samples) {
        for (std::size_t i = 0; i < p; ++i) {
            const double di = x[i] - mean[i];
            for (std::size_t j = 0; j <= i; ++j) scatter(i, j) += di * (x[j] - mean[j]);
        }
    }
    const double denom = static_cast<double>(n - 1);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            scatter(i, j) /= denom;
            scatter(j, i) = scatter(i, j);
        }

    if (n <= p) {
        throw ConditioningError("estimate_params: " + std::to_string(n) +
                                " samples cannot give a full-rank covariance in dimension " +
                                std::to_string(p));
    }
    const double cond = spd_condition_number(scatter);
    if (!(cond <= kConditionLimit))
        throw ConditioningError("estimate_params: sample covariance is rank-deficient");
    return GaussianParams{std::move(mean), std::move(scatter)};
}

double mahalanobis_sq(const Vector& mu1, const Vector& mu2, const Matrix& sigma) {
    if (mu1.size() != mu2.size() || sigma.rows() != mu1.size())
        throw ContractError("mahalanobis: dimension mismatch");
    const Vector d = mu1 - mu2;
    return SpdFactor(sigma).inverse_quadratic_form(d);
}

double mahalanobis(const Vector& mu1, const Vector& mu2, const Matrix& sigma) {
    return std::sqrt(mahalanobis_sq(mu1, mu2, sigma));
}

}  // namespace llrlab
