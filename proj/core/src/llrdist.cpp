#include "llrlab/llrdist.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>
#include <thread>

#include "llrlab/errors.hpp"
#include "llrlab/format.hpp"
#include "llrlab/normal.hpp"

namespace llrlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kZeroRel = 1e-13;
constexpr double kJacobianFloor = 1e-12;

void require_2d(const TwoClassProblem& problem, const char* who) {
    if (problem.class1.dim() != 2 || problem.class2.dim() != 2)
        throw ContractError(std::string(who) + ": the analytic score distribution needs exactly two features");
}

double max_abs(const Matrix& m) {
    double s = 0.0;
    for (double x : m.values()) s = std::max(s, std::abs(x));
    return s;
}

// Bivariate normal density with the inverse covariance expanded once.
struct Gaussian2 {
    double m1, m2;
    double i11, i12, i22;
    double log_norm;

    explicit Gaussian2(const GaussianParams& g) {
        const Matrix inv = spd_inverse(g.sigma);
        m1 = g.mu[0];
        m2 = g.mu[1];
        i11 = inv(0, 0);
        i12 = inv(0, 1);
        i22 = inv(1, 1);
        log_norm = -std::log(2.0 * kPi) - 0.5 * log_det_spd(g.sigma);
    }

    double operator()(double x1, double x2) const noexcept {
        const double d1 = x1 - m1;
        const double d2 = x2 - m2;
        return std::exp(log_norm - 0.5 * (i11 * d1 * d1 + 2.0 * i12 * d1 * d2 + i22 * d2 * d2));
    }
};

TwoClassProblem swap_features(const TwoClassProblem& p) {
    auto swap_params = [](const GaussianParams& g) {
        return GaussianParams{Vector{g.mu[1], g.mu[0]},
                              Matrix{{g.sigma(1, 1), g.sigma(1, 0)}, {g.sigma(0, 1), g.sigma(0, 0)}}};
    };
    TwoClassProblem out = p;
    out.class1 = swap_params(p.class1);
    out.class2 = swap_params(p.class2);
    return out;
}

// Roots of c2 x^2 + c1 x + c0 = 0, ascending; `c2` assumed nonzero.
std::vector<double> quadratic_roots(double c2, double c1, double c0) {
    double d = c1 * c1 - 4.0 * c2 * c0;
    if (d < 0.0) {
        // Tangency up to rounding is kept as a double root.
        if (-d > 1e-12 * (c1 * c1 + std::abs(4.0 * c2 * c0))) return {};
        d = 0.0;
    }
    const double sd = std::sqrt(d);
    const double q = -0.5 * (c1 + (c1 >= 0.0 ? sd : -sd));
    double r1, r2;
    if (q == 0.0) {
        r1 = r2 = -c1 / (2.0 * c2);
    } else {
        r1 = q / c2;
        r2 = c0 / q;
    }
    if (r1 > r2) std::swap(r1, r2);
    return {r1, r2};
}

SupportRegion region_from_geometry(double h, const ScoreGeometry& g) {
    SupportRegion r;
    r.h = h;
    r.c2 = g.q2;
    r.c1 = g.q1;
    r.c0 = g.q0 + g.qh * h;
    r.linear_in_x2 = g.linear_in_x2;
    if (g.linear_in_x2) {
        if (g.b1 != 0.0) {
            const double zero = -g.b0 / g.b1;
            r.intervals = {{-kInf, zero}, {zero, kInf}};
        } else {
            r.intervals = {{-kInf, kInf}};
        }
        return r;
    }
    if (r.c2 < 0.0) {
        const auto roots = quadratic_roots(r.c2, r.c1, r.c0);
        if (!roots.empty()) r.intervals = {{roots[0], roots[1]}};
    } else if (r.c2 > 0.0) {
        const auto roots = quadratic_roots(r.c2, r.c1, r.c0);
        if (roots.empty() || roots[0] == roots[1])
            r.intervals = {{-kInf, kInf}};
        else
            r.intervals = {{-kInf, roots[0]}, {roots[1], kInf}};
    } else if (r.c1 > 0.0) {
        r.intervals = {{-r.c0 / r.c1, kInf}};
    } else if (r.c1 < 0.0) {
        r.intervals = {{-kInf, -r.c0 / r.c1}};
    } else if (r.c0 >= 0.0) {
        r.intervals = {{-kInf, kInf}};
    }
    return r;
}

// Sum of the class density over both x2 pre-images, given sqrt(disc) at (h, x1).
double branch_sum(const ScoreGeometry& g, const Gaussian2& pdf, double h, double x1, double sqrt_disc) {
    const double beta = g.beta(x1);
    const double c = g.gamma(x1) - h;
    const double q = -0.5 * (beta + (beta >= 0.0 ? sqrt_disc : -sqrt_disc));
    if (q == 0.0) {
        const double r = -beta / (2.0 * g.a);
        return 2.0 * pdf(x1, r);
    }
    return pdf(x1, q / g.a) + pdf(x1, c / q);
}

struct MarginalPoint {
    double value = 0.0;
    double error = 0.0;
    bool converged = true;
};

void accumulate(MarginalPoint& acc, const QuadratureResult& r) {
    acc.value += r.value;
    acc.error += r.error;
    acc.converged = acc.converged && r.converged;
}

MarginalPoint marginal_at(double h, const ScoreGeometry& g, const Gaussian2& pdf, Interval window,
                          const QuadratureOptions& qopt) {
    MarginalPoint acc;
    const SupportRegion region = region_from_geometry(h, g);

    if (g.linear_in_x2) {
        auto f = [&](double x1) {
            const double beta = g.beta(x1);
            if (beta == 0.0) return 0.0;
            const double x2 = (h - g.gamma(x1)) / beta;
            return pdf(x1, x2) / std::abs(beta);
        };
        for (const auto& iv : region.intervals) {
            const double lo = std::max(iv.lo, window.lo);
            const double hi = std::min(iv.hi, window.hi);
            if (lo < hi) accumulate(acc, integrate_adaptive(f, lo, hi, qopt));
        }
        return acc;
    }

    // The other discriminant root paired with a singular endpoint r, for disc = (x - r) * rest(x).
    const auto roots = region.c2 != 0.0 ? quadratic_roots(region.c2, region.c1, region.c0)
                                        : std::vector<double>{};
    auto rest = [&](double x, double r) {
        if (region.c2 == 0.0) return region.c1;
        const double other = (roots.size() == 2 && roots[0] == r) ? roots[1] : roots[0];
        return region.c2 * (x - other);
    };

    for (const auto& iv : region.intervals) {
        const double lo = std::max(iv.lo, window.lo);
        const double hi = std::min(iv.hi, window.hi);
        if (lo == hi && iv.lo == iv.hi) {
            // Support edge: the feasible interval has shrunk to a point. The substituted
            // integrand is constant there, so the marginal is its limit pi * S / sqrt(-c2).
            acc.value += kPi * branch_sum(g, pdf, h, lo, 0.0) / std::sqrt(-region.c2);
            continue;
        }
        if (!(lo < hi)) continue;
        const bool sing_lo = std::isfinite(iv.lo) && lo == iv.lo;
        const bool sing_hi = std::isfinite(iv.hi) && hi == iv.hi;

        if (sing_lo && sing_hi) {
            // x = c + w sin(t): sqrt(disc) = sqrt(-c2) w cos(t) cancels dx/dt.
            const double center = 0.5 * (lo + hi);
            const double half = 0.5 * (hi - lo);
            const double root_c2 = std::sqrt(-region.c2);
            auto f = [&](double t) {
                const double x1 = center + half * std::sin(t);
                const double sd = root_c2 * half * std::cos(t);
                return branch_sum(g, pdf, h, x1, sd) / root_c2;
            };
            accumulate(acc, integrate_adaptive(f, -0.5 * kPi, 0.5 * kPi, qopt));
        } else if (sing_lo || sing_hi) {
            // x = r + (e - r) s^2 with r the singular root and e the clipped end.
            const double r = sing_lo ? lo : hi;
            const double e = sing_lo ? hi : lo;
            const double len = std::abs(e - r);
            auto f = [&](double s) {
                const double x1 = r + (e - r) * s * s;
                const double rest_abs = std::abs(rest(x1, r));
                if (rest_abs == 0.0) return 0.0;
                const double sd = s * std::sqrt(len * rest_abs);
                return branch_sum(g, pdf, h, x1, sd) * 2.0 * std::sqrt(len) / std::sqrt(rest_abs);
            };
            accumulate(acc, integrate_adaptive(f, 0.0, 1.0, qopt));
        } else {
            auto f = [&](double x1) {
                const double disc = region.discriminant(x1);
                if (!(disc > 0.0)) return 0.0;
                const double sd = std::sqrt(disc);
                return branch_sum(g, pdf, h, x1, sd) / sd;
            };
            accumulate(acc, integrate_adaptive(f, lo, hi, qopt));
        }
    }
    return acc;
}

template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& body) {
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    {
        std::vector<std::jthread> pool;
        const unsigned count = std::min<std::size_t>(threads, n);
        for (unsigned t = 0; t < count; ++t) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n && !failed; i = next++) {
                    try {
                        body(i);
                    } catch (...) {
                        if (!failed.exchange(true)) failure = std::current_exception();
                    }
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
}

// Geometry with a non-degenerate x2 dependence, swapping the features if needed.
struct PreparedProblem {
    TwoClassProblem problem;
    ScoreGeometry geometry;
};

PreparedProblem prepare(const TwoClassProblem& problem) {
    problem.validate();
    require_2d(problem, "marginal_density");
    ScoreGeometry g = ScoreGeometry::from_problem(problem);
    if (!g.degenerate) return {problem, g};
    TwoClassProblem swapped = swap_features(problem);
    ScoreGeometry gs = ScoreGeometry::from_problem(swapped);
    if (gs.degenerate)
        throw DegenerateGeometryError("marginal_density: the score is constant (identical class models)");
    return {swapped, gs};
}

Interval x1_window(const TwoClassProblem& p, double sigmas) {
    const double lo = std::min(p.class1.mu[0] - sigmas * std::sqrt(p.class1.sigma(0, 0)),
                               p.class2.mu[0] - sigmas * std::sqrt(p.class2.sigma(0, 0)));
    const double hi = std::max(p.class1.mu[0] + sigmas * std::sqrt(p.class1.sigma(0, 0)),
                               p.class2.mu[0] + sigmas * std::sqrt(p.class2.sigma(0, 0)));
    return {lo, hi};
}

double interp_cdf(const DensityGrid& grid, const std::vector<double>& cdf, double h) {
    const auto& xs = grid.h_values;
    if (h <= xs.front()) return cdf.front();
    if (h >= xs.back()) return cdf.back();
    const auto it = std::upper_bound(xs.begin(), xs.end(), h);
    const std::size_t k = static_cast<std::size_t>(it - xs.begin());
    const double t = (h - xs[k - 1]) / (xs[k] - xs[k - 1]);
    return cdf[k - 1] + t * (cdf[k] - cdf[k - 1]);
}

double sorted_quantile(const std::vector<double>& sorted, double q) {
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const std::size_t k = static_cast<std::size_t>(pos);
    if (k + 1 >= sorted.size()) return sorted.back();
    return sorted[k] + (pos - static_cast<double>(k)) * (sorted[k + 1] - sorted[k]);
}

}  // namespace

ScoreGeometry ScoreGeometry::from_problem(const TwoClassProblem& problem) {
    require_2d(problem, "ScoreGeometry");
    const Matrix a1 = spd_inverse(problem.class1.sigma);
    const Matrix a2 = spd_inverse(problem.class2.sigma);
    const Matrix d = a1 - a2;
    const Vector t1 = a1 * problem.class1.mu;
    const Vector t2 = a2 * problem.class2.mu;
    const Vector b = t1 - t2;
    const double k = -0.5 * (dot(problem.class1.mu, t1) - dot(problem.class2.mu, t2)) -
                     0.5 * (log_det_spd(problem.class1.sigma) - log_det_spd(problem.class2.sigma));

    ScoreGeometry g;
    g.a = -0.5 * d(1, 1);
    g.b0 = b[1];
    g.b1 = -d(0, 1);
    g.g2 = -0.5 * d(0, 0);
    g.g1 = b[0];
    g.g0 = k;

    const double mscale = std::max(max_abs(a1), max_abs(a2));
    const double vscale = std::max({norm2(t1), norm2(t2), std::numeric_limits<double>::min()});
    if (std::abs(g.a) <= kZeroRel * mscale) g.a = 0.0;
    if (std::abs(g.b1) <= kZeroRel * mscale) g.b1 = 0.0;
    if (std::abs(g.g2) <= kZeroRel * mscale) g.g2 = 0.0;
    if (std::abs(g.b0) <= kZeroRel * vscale) g.b0 = 0.0;
    g.linear_in_x2 = g.a == 0.0;
    g.degenerate = g.linear_in_x2 && g.b0 == 0.0 && g.b1 == 0.0;

    g.q2 = g.b1 * g.b1 - 4.0 * g.a * g.g2;
    if (std::abs(g.q2) <= kZeroRel * (g.b1 * g.b1 + std::abs(4.0 * g.a * g.g2))) g.q2 = 0.0;
    g.q1 = 2.0 * g.b0 * g.b1 - 4.0 * g.a * g.g1;
    g.q0 = g.b0 * g.b0 - 4.0 * g.a * g.g0;
    g.qh = 4.0 * g.a;
    return g;
}

bool DensityGrid::any_flagged() const noexcept {
    return std::any_of(flagged.begin(), flagged.end(), [](std::uint8_t f) { return f != 0; });
}

std::vector<double> invert_llr(double h, double x1, const TwoClassProblem& problem) {
    const ScoreGeometry g = ScoreGeometry::from_problem(problem);
    const double beta = g.beta(x1);
    if (g.linear_in_x2) {
        if (beta == 0.0)
            throw DegenerateGeometryError("invert_llr: the score does not depend on x2 at this x1");
        return {(h - g.gamma(x1)) / beta};
    }
    const double c = g.gamma(x1) - h;
    const double disc = beta * beta - 4.0 * g.a * c;
    const double scale = beta * beta + std::abs(4.0 * g.a * c);
    if (disc < -1e-12 * scale) return {};
    if (disc <= 1e-12 * scale) return {-beta / (2.0 * g.a)};
    const double sd = std::sqrt(disc);
    const double q = -0.5 * (beta + (beta >= 0.0 ? sd : -sd));
    double r1 = q / g.a;
    double r2 = c / q;
    if (r1 > r2) std::swap(r1, r2);
    return {r1, r2};
}

double joint_density(double h, double x1, ClassLabel cls, const TwoClassProblem& problem) {
    const ScoreGeometry g = ScoreGeometry::from_problem(problem);
    if (g.degenerate) throw DegenerateGeometryError("joint_density: the score does not depend on x2");
    const Gaussian2 pdf(problem.params(cls));
    if (g.linear_in_x2) {
        const double beta = g.beta(x1);
        if (std::abs(beta) < kJacobianFloor)
            throw SingularityError("joint_density: vanishing Jacobian dh/dx2");
        return pdf(x1, (h - g.gamma(x1)) / beta) / std::abs(beta);
    }
    const auto roots = invert_llr(h, x1, problem);
    double total = 0.0;
    for (double x2 : roots) {
        const double jac = std::abs(2.0 * g.a * x2 + g.beta(x1));
        if (jac < kJacobianFloor)
            throw SingularityError("joint_density: (h, x1) lies on the fold of the transformation");
        total += pdf(x1, x2) / jac;
    }
    return total;
}

SupportRegion support_region(double h, const TwoClassProblem& problem) {
    const ScoreGeometry g = ScoreGeometry::from_problem(problem);
    if (g.degenerate) throw DegenerateGeometryError("support_region: the score does not depend on x2");
    return region_from_geometry(h, g);
}

ScoreRange score_support(const TwoClassProblem& problem) {
    const ScoreGeometry g = prepare(problem).geometry;
    if (g.linear_in_x2) return {-kInf, kInf};
    if (g.q2 < 0.0) {
        // Largest discriminant over x1 at h = 0; the support needs it + qh h >= 0.
        const double peak = g.q0 - g.q1 * g.q1 / (4.0 * g.q2);
        const double edge = -peak / g.qh;
        return g.qh > 0.0 ? ScoreRange{edge, kInf} : ScoreRange{-kInf, edge};
    }
    if (g.q2 == 0.0 && g.q1 == 0.0) {
        const double edge = -g.q0 / g.qh;
        return g.qh > 0.0 ? ScoreRange{edge, kInf} : ScoreRange{-kInf, edge};
    }
    return {-kInf, kInf};
}

DensityGrid marginal_density(std::span<const double> h_values, ClassLabel cls,
                             const TwoClassProblem& problem, const MarginalOptions& options) {
    const PreparedProblem prep = prepare(problem);
    const Gaussian2 pdf(prep.problem.params(cls));
    const Interval window = x1_window(prep.problem, options.window_sigmas);

    DensityGrid grid;
    grid.label = cls;
    grid.h_values.assign(h_values.begin(), h_values.end());
    grid.density.assign(h_values.size(), 0.0);
    grid.est_error.assign(h_values.size(), 0.0);
    grid.flagged.assign(h_values.size(), 0);

    parallel_for(h_values.size(), options.threads, [&](std::size_t i) {
        const MarginalPoint m = marginal_at(h_values[i], prep.geometry, pdf, window, options.quadrature);
        grid.density[i] = std::max(m.value, 0.0);
        grid.est_error[i] = m.error;
        grid.flagged[i] = m.converged ? 0 : 1;
    });
    return grid;
}

std::vector<double> marginal_cell_masses(std::span<const double> edges, ClassLabel cls,
                                         const TwoClassProblem& problem,
                                         const MarginalOptions& options) {
    static constexpr double node[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                       0.5384693101056831, 0.9061798459386640};
    static constexpr double weight[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                         0.4786286704993665, 0.2369268850561891};
    if (edges.size() < 2) return {};
    const std::size_t cells = edges.size() - 1;
    std::vector<double> hs;
    hs.reserve(cells * 5);
    for (std::size_t k = 0; k < cells; ++k) {
        if (!(edges[k + 1] > edges[k])) throw ContractError("marginal_cell_masses: edges must ascend");
        const double c = 0.5 * (edges[k] + edges[k + 1]);
        const double w = 0.5 * (edges[k + 1] - edges[k]);
        for (double t : node) hs.push_back(c + w * t);
    }
    const DensityGrid g = marginal_density(hs, cls, problem, options);
    std::vector<double> mass(cells, 0.0);
    for (std::size_t k = 0; k < cells; ++k) {
        const double w = 0.5 * (edges[k + 1] - edges[k]);
        double s = 0.0;
        for (int j = 0; j < 5; ++j) s += weight[j] * g.density[k * 5 + static_cast<std::size_t>(j)];
        mass[k] = w * s;
    }
    return mass;
}

RocCurve analytic_roc(const TwoClassProblem& problem, std::span<const double> thresholds,
                      double min_tail, const MarginalOptions& options) {
    if (thresholds.size() < 2) throw ContractError("analytic_roc: need at least two thresholds");
    const auto m1 = marginal_cell_masses(thresholds, ClassLabel::omega1, problem, options);
    const auto m2 = marginal_cell_masses(thresholds, ClassLabel::omega2, problem, options);
    double total1 = 0.0, total2 = 0.0;
    for (double m : m1) total1 += m;
    for (double m : m2) total2 += m;
    if (!(total1 > 0.0 && total2 > 0.0)) throw NumericalError("analytic_roc: no probability mass on the grid");

    RocCurve curve;
    curve.points.push_back({0.0, 0.0, kInf, 0, 0});
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t k = m1.size(); k-- > 0;) {
        s1 += m1[k];
        s2 += m2[k];
        const double tpf = s1 / total1;
        const double fpf = s2 / total2;
        if (tpf < min_tail || fpf < min_tail || tpf > 1.0 - min_tail || fpf > 1.0 - min_tail) continue;
        curve.points.push_back({fpf, tpf, thresholds[k], 0, 0});
    }
    curve.points.push_back({1.0, 1.0, -kInf, 0, 0});
    return curve;
}

double grid_integral(const DensityGrid& grid) {
    double s = 0.0;
    for (std::size_t k = 1; k < grid.size(); ++k)
        s += 0.5 * (grid.density[k] + grid.density[k - 1]) * (grid.h_values[k] - grid.h_values[k - 1]);
    return s;
}

std::vector<double> grid_cdf(const DensityGrid& grid) {
    std::vector<double> cdf(grid.size(), 0.0);
    for (std::size_t k = 1; k < grid.size(); ++k)
        cdf[k] = cdf[k - 1] +
                 0.5 * (grid.density[k] + grid.density[k - 1]) * (grid.h_values[k] - grid.h_values[k - 1]);
    return cdf;
}

std::vector<double> default_h_grid(const TwoClassProblem& problem, std::size_t n_points) {
    if (n_points < 2) throw ContractError("default_h_grid: need at least two points");
    SeededRng rng(0x11a7e5eedULL, derive_stream_id({0x67726964ULL}));
    double lo = kInf, hi = -kInf;
    for (ClassLabel c : {ClassLabel::omega1, ClassLabel::omega2}) {
        for (double h : simulate_scores(problem, c, 20000, rng)) {
            lo = std::min(lo, h);
            hi = std::max(hi, h);
        }
    }
    const double span = std::max(hi - lo, 1e-6);
    lo -= 0.1 * span;
    hi += 0.25 * span;
    const ScoreRange support = score_support(problem);
    lo = std::max(lo, support.lower);
    hi = std::min(hi, support.upper);
    std::vector<double> grid(n_points);
    for (std::size_t k = 0; k < n_points; ++k)
        grid[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n_points - 1);
    return grid;
}

void write_density_csv(std::ostream& out, const DensityGrid& grid) {
    out << "h,density,est_error,class\n";
    for (std::size_t k = 0; k < grid.size(); ++k)
        out << format_real(grid.h_values[k]) << ',' << format_real(grid.density[k]) << ','
            << format_real(grid.est_error[k]) << ',' << to_string(grid.label) << '\n';
}

SimultaneousDiagonalization simdiag(const Matrix& sigma1, const Matrix& sigma2) {
    if (!sigma1.square() || sigma1.rows() != sigma2.rows() || sigma1.cols() != sigma2.cols())
        throw ContractError("simdiag: matrices must be square and of equal size");
    const std::size_t n = sigma1.rows();
    const Matrix l = cholesky(sigma1);
    (void)cholesky(sigma2);

    // C = L^{-1} S2 L^{-T}
    Matrix m(n, n);  // L^{-1} S2
    for (std::size_t j = 0; j < n; ++j) {
        Vector col(n);
        for (std::size_t i = 0; i < n; ++i) col[i] = sigma2(i, j);
        const Vector y = solve_lower(l, col);
        for (std::size_t i = 0; i < n; ++i) m(i, j) = y[i];
    }
    Matrix c(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        Vector col(n);
        for (std::size_t i = 0; i < n; ++i) col[i] = m(j, i);
        const Vector y = solve_lower(l, col);
        for (std::size_t i = 0; i < n; ++i) c(i, j) = y[i];
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) c(i, j) = c(j, i) = 0.5 * (c(i, j) + c(j, i));

    const SymmetricEigen eig = symmetric_eigen(c);
    SimultaneousDiagonalization out{Matrix(n, n), std::vector<double>(n)};
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t src = n - 1 - k;
        out.lambda[k] = eig.values[src];
        Vector v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = eig.vectors(i, src);
        const Vector w = solve_lower_transposed(l, v);
        for (std::size_t i = 0; i < n; ++i) out.transform(i, k) = w[i];
    }
    return out;
}

DiagonalizedProblem transform_problem(const TwoClassProblem& problem) {
    problem.validate();
    const SimultaneousDiagonalization sd = simdiag(problem.class1.sigma, problem.class2.sigma);
    const Matrix wt = transpose(sd.transform);
    DiagonalizedProblem out;
    out.transform = sd.transform;
    out.lambda = sd.lambda;
    out.problem = problem;
    out.problem.class1 = GaussianParams{wt * problem.class1.mu, Matrix::identity(problem.dim())};
    out.problem.class2 = GaussianParams{wt * problem.class2.mu, Matrix::diagonal(sd.lambda)};
    return out;
}

HistogramComparison histogram_vs_analytic(std::span<const double> scores, const DensityGrid& grid) {
    if (scores.empty()) throw ContractError("histogram_vs_analytic: no scores");
    if (grid.size() < 2) throw ContractError("histogram_vs_analytic: grid needs at least two points");
    std::vector<double> sorted(scores.begin(), scores.end());
    std::sort(sorted.begin(), sorted.end());
    const double g_lo = grid.h_values.front();
    const double g_hi = grid.h_values.back();
    const double slack = 1e-9 * (1.0 + std::max(std::abs(g_lo), std::abs(g_hi)));
    if (sorted.front() < g_lo - slack || sorted.back() > g_hi + slack) {
        throw CoverageError("histogram_vs_analytic: grid [" + format_real(g_lo) + ", " + format_real(g_hi) +
                            "] does not span the scores [" + format_real(sorted.front()) + ", " +
                            format_real(sorted.back()) + "]");
    }

    const std::vector<double> cdf = grid_cdf(grid);
    const double n = static_cast<double>(sorted.size());
    HistogramComparison out;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = interp_cdf(grid, cdf, sorted[i]);
        out.ks_statistic = std::max({out.ks_statistic, static_cast<double>(i + 1) / n - f,
                                     f - static_cast<double>(i) / n});
    }

    const double lo = sorted.front();
    const double hi = sorted.back();
    const double iqr = sorted_quantile(sorted, 0.75) - sorted_quantile(sorted, 0.25);
    const double width = 2.0 * iqr * std::cbrt(1.0 / n);
    std::size_t nbins = 20;
    if (width > 0.0 && hi > lo) nbins = static_cast<std::size_t>(std::ceil((hi - lo) / width));
    nbins = std::clamp<std::size_t>(nbins, 20, 200);
    const double bw = hi > lo ? (hi - lo) / static_cast<double>(nbins) : 1.0;
    out.bins.resize(nbins);
    for (std::size_t b = 0; b < nbins; ++b) {
        out.bins[b].lo = lo + bw * static_cast<double>(b);
        out.bins[b].hi = b + 1 == nbins ? hi : lo + bw * static_cast<double>(b + 1);
    }
    for (double h : sorted) {
        std::size_t b = hi > lo ? static_cast<std::size_t>((h - lo) / bw) : 0;
        b = std::min(b, nbins - 1);
        ++out.bins[b].count;
    }
    for (auto& bin : out.bins) {
        const double w = bin.hi - bin.lo;
        if (w > 0.0) {
            bin.empirical_density = static_cast<double>(bin.count) / (n * w);
            bin.analytic_density = (interp_cdf(grid, cdf, bin.hi) - interp_cdf(grid, cdf, bin.lo)) / w;
        }
    }
    return out;
}

std::vector<double> simulate_scores(const TwoClassProblem& problem, ClassLabel cls, std::size_t n,
                                    SeededRng& rng) {
    const LlrScorer scorer(problem);
    const auto xs = mvn_sample(problem.params(cls), n, rng);
    std::vector<double> out;
    out.reserve(n);
    for (const auto& x : xs) out.push_back(scorer(x).value);
    return out;
}

}  // namespace llrlab
