#pragma once
// ROC analysis: error fractions, empirical ROC curves, Mann-Whitney and trapezoid AUC,
// and the binormal ROC model with its double-normal-deviate fit.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "llrlab/bayesllr.hpp"

namespace llrlab {

struct ScoreSet {
    std::vector<double> class1;  // h(x | omega1)
    std::vector<double> class2;  // h(x | omega2)
};

struct ErrorFractions {
    double fnf = 0.0;  // class-1 scores strictly below th, over n1
    double fpf = 0.0;  // class-2 scores strictly above th, over n2
};

struct RocPoint {
    double fpf = 0.0;
    double tpf = 0.0;
    double threshold = 0.0;  // +inf / -inf at the anchors
    // Exact counts behind fpf/tpf when the curve was built from scores (zero otherwise).
    std::uint64_t fp_count = 0;
    std::uint64_t tp_count = 0;
};

struct RocCurve {
    std::vector<RocPoint> points;
    // Class sizes when the points carry exact counts; zero for curves built from fractions.
    std::uint64_t n_class1 = 0;
    std::uint64_t n_class2 = 0;

    bool has_counts() const noexcept { return n_class1 > 0 && n_class2 > 0; }
    // Throws ContractError unless anchored at (0,0) and (1,1) and monotone.
    void validate() const;
};

struct BinormalFit {
    double a = 0.0;         // intercept in normal-deviate units
    double b = 0.0;         // slope
    double residual = 0.0;  // RMS deviation of the deviate points from the line
    std::size_t n_points = 0;
};

ErrorFractions empirical_error_fractions(const ScoreSet& scores, Threshold th);

// Mann-Whitney estimate with psi = 1, 1/2, 0 for >, =, <. O((n1 + n2) log(n1 + n2)).
double empirical_auc(const ScoreSet& scores);

// Threshold sweep over every distinct pooled score (descending); a point at threshold t
// counts scores >= t as positive. Anchored by (0,0) at +inf and (1,1) at -inf.
RocCurve empirical_roc(const ScoreSet& scores);

// Trapezoid area. Uses exact integer arithmetic when the curve carries counts, so that
// trapezoid_auc(empirical_roc(s)) == empirical_auc(s) bit-for-bit.
double trapezoid_auc(const RocCurve& curve);

// TPF = Phi(a + b Phi^{-1}(FPF)).
double binormal_tpf(double a, double b, double fpf);

// AUC of the binormal ROC: Phi(a / sqrt(1 + b^2)).
double binormal_auc(double a, double b);

// OLS line through (Phi^{-1}(FPF), Phi^{-1}(TPF)) over the interior points.
BinormalFit normal_deviate_fit(const RocCurve& curve);

struct AucIdentity {
    double auc_mw = 0.0;    // Mann-Whitney statistic
    double auc_prob = 0.0;  // pairwise P(h2 < h1) + P(h2 == h1) / 2 by full enumeration
};

AucIdentity auc_probability_identity_check(const ScoreSet& scores);

// CSV: header `fpf,tpf,threshold`, 17 significant digits, anchors as inf / -inf.
void write_roc_csv(std::ostream& out, const RocCurve& curve);

}  // namespace llrlab
