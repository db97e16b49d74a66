#include "llrlab/bayesllr.hpp"

#include <cmath>

#include "llrlab/errors.hpp"

namespace llrlab {

void TwoClassProblem::validate() const {
    class1.validate();
    class2.validate();
    if (class1.dim() != class2.dim()) throw ContractError("TwoClassProblem: class dimensions differ");
    if (!(prior1 > 0.0 && prior1 < 1.0 && prior2 > 0.0 && prior2 < 1.0))
        throw ContractError("TwoClassProblem: priors must lie in (0,1)");
    if (std::abs(prior1 + prior2 - 1.0) > 1e-12)
        throw ContractError("TwoClassProblem: priors must sum to one");
    if (!(costs[0][1] > costs[0][0] && costs[1][0] > costs[1][1]))
        throw ContractError("TwoClassProblem: misclassification costs must exceed correct-decision costs");
}

LlrScorer::LlrScorer(const TwoClassProblem& problem) : LlrScorer(problem.class1, problem.class2) {}

LlrScorer::LlrScorer(const GaussianParams& class1, const GaussianParams& class2)
    : dim_(class1.dim()),
      mu1_(class1.mu),
      mu2_(class2.mu),
      f1_((class1.validate(), class1.sigma)),
      f2_((class2.validate(), class2.sigma)) {
    if (class1.dim() != class2.dim()) throw ContractError("LlrScorer: class dimensions differ");
    half_log_det_ratio_ = 0.5 * (f1_.log_det() - f2_.log_det());
}

Score LlrScorer::operator()(const Vector& x) const {
    if (x.size() != dim_) throw ContractError("llr_score: dimension mismatch");
    const double q1 = f1_.inverse_quadratic_form(x - mu1_);
    const double q2 = f2_.inverse_quadratic_form(x - mu2_);
    return Score{-0.5 * (q1 - q2) - half_log_det_ratio_};
}

Score llr_score(const Vector& x, const TwoClassProblem& problem) { return LlrScorer(problem)(x); }

Threshold bayes_threshold(const TwoClassProblem& problem) {
    const auto& c = problem.costs;
    const double num = c[1][1] - c[1][0];
    const double den = c[0][0] - c[0][1];
    if (num == 0.0 || den == 0.0)
        throw DegenerateCostError("bayes_threshold: zero cost difference");
    const double ratio = (problem.prior2 * num) / (problem.prior1 * den);
    if (!(ratio > 0.0))
        throw DegenerateCostError("bayes_threshold: prior/cost ratio is not positive");
    return Threshold{std::log(ratio)};
}

ClassLabel classify(Score score, Threshold th) noexcept {
    return score.value > th.value ? ClassLabel::omega1 : ClassLabel::omega2;
}

TwoClassProblem reference_problem() {
    TwoClassProblem p;
    p.class1 = GaussianParams{Vector{2.0, 2.0}, Matrix{{1.0, 0.2}, {0.2, 1.0}}};
    p.class2 = GaussianParams{Vector{1.0, 1.0}, Matrix{{0.3, 0.1}, {0.1, 0.3}}};
    return p;
}

}  // namespace llrlab
