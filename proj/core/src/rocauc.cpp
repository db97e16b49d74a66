#include "llrlab/rocauc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "llrlab/errors.hpp"
#include "llrlab/format.hpp"
#include "llrlab/normal.hpp"

namespace llrlab {

namespace {

void require_nonempty(const ScoreSet& s, const char* who) {
    if (s.class1.empty() || s.class2.empty())
        throw ContractError(std::string(who) + ": both score lists must be non-empty");
}

// 2 * #{(i,j): h1_i > h2_j} + #{(i,j): h1_i == h2_j}
std::uint64_t doubled_win_count(const ScoreSet& s) {
    std::vector<double> neg = s.class2;
    std::sort(neg.begin(), neg.end());
    std::uint64_t total = 0;
    for (double h : s.class1) {
        const auto lo = std::lower_bound(neg.begin(), neg.end(), h);
        const auto hi = std::upper_bound(lo, neg.end(), h);
        total += 2 * static_cast<std::uint64_t>(lo - neg.begin()) +
                 static_cast<std::uint64_t>(hi - lo);
    }
    return total;
}

}  // namespace

void RocCurve::validate() const {
    if (points.size() < 2) throw ContractError("RocCurve: need at least two points");
    const auto& f = points.front();
    const auto& l = points.back();
    if (f.fpf != 0.0 || f.tpf != 0.0) throw ContractError("RocCurve: must start at (0,0)");
    if (l.fpf != 1.0 || l.tpf != 1.0) throw ContractError("RocCurve: must end at (1,1)");
    for (std::size_t k = 1; k < points.size(); ++k) {
        if (!(points[k].fpf >= points[k - 1].fpf) || !(points[k].tpf >= points[k - 1].tpf))
            throw ContractError("RocCurve: fpf and tpf must be non-decreasing");
    }
}

ErrorFractions empirical_error_fractions(const ScoreSet& scores, Threshold th) {
    require_nonempty(scores, "empirical_error_fractions");
    std::size_t fn = 0;
    std::size_t fp = 0;
    for (double h : scores.class1)
        if (h < th.value) ++fn;
    for (double h : scores.class2)
        if (h > th.value) ++fp;
    return ErrorFractions{static_cast<double>(fn) / static_cast<double>(scores.class1.size()),
                          static_cast<double>(fp) / static_cast<double>(scores.class2.size())};
}

double empirical_auc(const ScoreSet& scores) {
    require_nonempty(scores, "empirical_auc");
    const double pairs2 =
        2.0 * static_cast<double>(scores.class1.size()) * static_cast<double>(scores.class2.size());
    return static_cast<double>(doubled_win_count(scores)) / pairs2;
}

RocCurve empirical_roc(const ScoreSet& scores) {
    require_nonempty(scores, "empirical_roc");
    struct Tagged {
        double h;
        bool positive;
    };
    std::vector<Tagged> pooled;
    pooled.reserve(scores.class1.size() + scores.class2.size());
    for (double h : scores.class1) pooled.push_back({h, true});
    for (double h : scores.class2) pooled.push_back({h, false});
    std::sort(pooled.begin(), pooled.end(), [](const Tagged& a, const Tagged& b) { return a.h > b.h; });

    RocCurve curve;
    curve.n_class1 = scores.class1.size();
    curve.n_class2 = scores.class2.size();
    const double n1 = static_cast<double>(curve.n_class1);
    const double n2 = static_cast<double>(curve.n_class2);
    constexpr double inf = std::numeric_limits<double>::infinity();

    curve.points.push_back({0.0, 0.0, inf, 0, 0});
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::size_t k = 0;
    while (k < pooled.size()) {
        const double t = pooled[k].h;
        while (k < pooled.size() && pooled[k].h == t) {
            if (pooled[k].positive)
                ++tp;
            else
                ++fp;
            ++k;
        }
        curve.points.push_back({static_cast<double>(fp) / n2, static_cast<double>(tp) / n1, t, fp, tp});
    }
    curve.points.push_back({1.0, 1.0, -inf, curve.n_class2, curve.n_class1});
    return curve;
}

double trapezoid_auc(const RocCurve& curve) {
    curve.validate();
    if (curve.has_counts()) {
        std::uint64_t doubled = 0;
        for (std::size_t k = 1; k < curve.points.size(); ++k) {
            const auto& p = curve.points[k - 1];
            const auto& q = curve.points[k];
            doubled += (q.fp_count - p.fp_count) * (q.tp_count + p.tp_count);
        }
        // doubled counts 2*wins + ties, matching empirical_auc.
        return static_cast<double>(doubled) /
               (2.0 * static_cast<double>(curve.n_class1) * static_cast<double>(curve.n_class2));
    }
    double area = 0.0;
    for (std::size_t k = 1; k < curve.points.size(); ++k) {
        const auto& p = curve.points[k - 1];
        const auto& q = curve.points[k];
        area += (q.fpf - p.fpf) * (q.tpf + p.tpf) * 0.5;
    }
    return std::clamp(area, 0.0, 1.0);
}

double binormal_tpf(double a, double b, double fpf) {
    if (!(b > 0.0)) throw DomainError("binormal_tpf: slope b must be positive");
    if (!(fpf >= 0.0 && fpf <= 1.0)) throw DomainError("binormal_tpf: fpf must lie in [0,1]");
    if (fpf == 0.0 || fpf == 1.0) return fpf;
    return std_normal_cdf(a + b * std_normal_quantile(fpf));
}

double binormal_auc(double a, double b) {
    if (!(b > 0.0)) throw DomainError("binormal_auc: slope b must be positive");
    return std_normal_cdf(a / std::sqrt(1.0 + b * b));
}

BinormalFit normal_deviate_fit(const RocCurve& curve) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& pt : curve.points) {
        if (pt.fpf > 0.0 && pt.fpf < 1.0 && pt.tpf > 0.0 && pt.tpf < 1.0) {
            xs.push_back(std_normal_quantile(pt.fpf));
            ys.push_back(std_normal_quantile(pt.tpf));
        }
    }
    const std::size_t n = xs.size();
    if (n < 3)
        throw InsufficientDataError("normal_deviate_fit: need at least 3 interior ROC points, got " +
                                    std::to_string(n));
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (!(sxx > 0.0))
        throw InsufficientDataError("normal_deviate_fit: interior points share one FPF value");
    BinormalFit fit;
    fit.b = sxy / sxx;
    fit.a = my - fit.b * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ys[i] - (fit.a + fit.b * xs[i]);
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / static_cast<double>(n));
    fit.n_points = n;
    return fit;
}

AucIdentity auc_probability_identity_check(const ScoreSet& scores) {
    require_nonempty(scores, "auc_probability_identity_check");
    std::uint64_t below = 0;
    std::uint64_t tied = 0;
    for (double h1 : scores.class1)
        for (double h2 : scores.class2) {
            if (h2 < h1)
                ++below;
            else if (h2 == h1)
                ++tied;
        }
    const double pairs2 =
        2.0 * static_cast<double>(scores.class1.size()) * static_cast<double>(scores.class2.size());
    return AucIdentity{empirical_auc(scores), static_cast<double>(2 * below + tied) / pairs2};
}

void write_roc_csv(std::ostream& out, const RocCurve& curve) {
    out << "fpf,tpf,threshold\n";
    for (const auto& p : curve.points)
        out << format_real(p.fpf) << ',' << format_real(p.tpf) << ',' << format_real(p.threshold) << '\n';
}

}  // namespace llrlab
