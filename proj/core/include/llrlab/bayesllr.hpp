#pragma once
// Bayes decision rule for two multinormal classes: log-likelihood-ratio score, the
// prior/cost threshold, and the final comparison.

#include <array>

#include "llrlab/gaussmodel.hpp"

namespace llrlab {

// costs[i][j]: cost of deciding class j+1 when the truth is class i+1.
using CostMatrix = std::array<std::array<double, 2>, 2>;

inline constexpr CostMatrix kZeroOneCosts{{{0.0, 1.0}, {1.0, 0.0}}};

struct TwoClassProblem {
    GaussianParams class1;
    GaussianParams class2;
    double prior1 = 0.5;
    double prior2 = 0.5;
    CostMatrix costs = kZeroOneCosts;

    std::size_t dim() const noexcept { return class1.dim(); }
    const GaussianParams& params(ClassLabel c) const noexcept {
        return c == ClassLabel::omega1 ? class1 : class2;
    }
    void validate() const;
};

struct Score {
    double value = 0.0;
};

struct Threshold {
    double value = 0.0;
};

// h(x) = -1/2 [(x-mu1)' S1^-1 (x-mu1) - (x-mu2)' S2^-1 (x-mu2)] - 1/2 ln(|S1|/|S2|),
// with both covariances factored once.
class LlrScorer {
public:
    explicit LlrScorer(const TwoClassProblem& problem);
    LlrScorer(const GaussianParams& class1, const GaussianParams& class2);

    Score operator()(const Vector& x) const;
    std::size_t dim() const noexcept { return dim_; }

private:
    std::size_t dim_;
    Vector mu1_, mu2_;
    SpdFactor f1_, f2_;
    double half_log_det_ratio_;
};

Score llr_score(const Vector& x, const TwoClassProblem& problem);

// th = ln[ P(w2)(c22 - c21) / (P(w1)(c11 - c12)) ].
// Throws DegenerateCostError when c11 == c12 or c21 == c22.
Threshold bayes_threshold(const TwoClassProblem& problem);

// omega1 when score > th, otherwise omega2 (ties go to omega2).
ClassLabel classify(Score score, Threshold th) noexcept;

// The canonical two-feature example used throughout: mu1 = (2,2), S1 = [[1,.2],[.2,1]],
// mu2 = (1,1), S2 = [[.3,.1],[.1,.3]], equal priors, 0-1 costs.
TwoClassProblem reference_problem();

}  // namespace llrlab
