#include "llrlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "llrlab/errors.hpp"

namespace llrlab {

namespace {

constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7).
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double sum = f(center - dx) + f(center + dx);
        kronrod += kWgk[j] * sum;
        if (j % 2 == 1) gauss += kWg[j / 2] * sum;
    }
    kronrod *= half;
    gauss *= half;
    return Panel{a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    const QuadratureOptions& options) {
    if (!(std::isfinite(a) && std::isfinite(b)))
        throw ContractError("integrate_adaptive: interval endpoints must be finite");
    QuadratureResult out;
    if (a == b) {
        out.converged = true;
        return out;
    }

    std::priority_queue<Panel> panels;
    const std::size_t n0 = std::max<std::size_t>(1, options.initial_panels);
    double value = 0.0;
    double error = 0.0;
    for (std::size_t k = 0; k < n0; ++k) {
        const double lo = k == 0 ? a : a + (b - a) * static_cast<double>(k) / static_cast<double>(n0);
        const double hi = k + 1 == n0 ? b : a + (b - a) * static_cast<double>(k + 1) / static_cast<double>(n0);
        const Panel p = gk15(f, lo, hi);
        value += p.value;
        error += p.error;
        panels.push(p);
    }
    out.evaluations = 15 * n0;

    auto tolerance = [&] { return std::max(options.abs_tol, options.rel_tol * std::abs(value)); };

    while (error > tolerance() && out.evaluations + 30 <= options.max_evaluations) {
        const Panel worst = panels.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > std::min(worst.a, worst.b) && mid < std::max(worst.a, worst.b))) break;
        panels.pop();
        const Panel left = gk15(f, worst.a, mid);
        const Panel right = gk15(f, mid, worst.b);
        out.evaluations += 30;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
    }

    // Re-sum from the partition to shed the drift of incremental updates.
    value = 0.0;
    error = 0.0;
    std::vector<Panel> final_panels;
    while (!panels.empty()) {
        final_panels.push_back(panels.top());
        panels.pop();
    }
    std::sort(final_panels.begin(), final_panels.end(),
              [](const Panel& x, const Panel& y) { return x.a < y.a; });
    for (const auto& p : final_panels) {
        value += p.value;
        error += p.error;
    }
    out.value = value;
    out.error = error;
    out.converged = error <= tolerance();
    return out;
}

}  // namespace llrlab
