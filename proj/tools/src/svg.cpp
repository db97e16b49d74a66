#include "llrlab/cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "llrlab/errors.hpp"

namespace llrlab::cli {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 170.0;  // room for the legend
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string fixed(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    if (std::fabs(v) < 1e-12) v = 0.0;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

double nice_step(double span) {
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double f = raw / mag;
    const double nice = f < 1.5 ? 1.0 : f < 3.0 ? 2.0 : f < 7.0 ? 5.0 : 10.0;
    return nice * mag;
}

struct Axis {
    double lo, hi, step;
};

Axis make_axis(double lo, double hi) {
    if (hi - lo < 1e-12 * std::max(1.0, std::fabs(hi))) {
        const double pad = std::max(0.5, 0.1 * std::fabs(hi));
        lo -= pad;
        hi += pad;
    }
    const double step = nice_step(hi - lo);
    return {std::floor(lo / step) * step, std::ceil(hi / step) * step, step};
}

}  // namespace

const char* to_string(PlotKind k) noexcept {
    switch (k) {
        case PlotKind::density_overlay: return "density-overlay";
        case PlotKind::roc: return "roc";
        case PlotKind::deviate_line: return "deviate-line";
        case PlotKind::learning_curve: return "learning-curve";
        case PlotKind::variance: return "variance";
    }
    return "?";
}

std::string render_svg(const PlotSpec& spec) {
    if (spec.series.empty()) throw ContractError("render_svg: no series");
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : spec.series) {
        if (s.xs.empty() || s.xs.size() != s.ys.size())
            throw ContractError("render_svg: series '" + s.name + "' is empty or has mismatched lengths");
        for (std::size_t i = 0; i < s.xs.size(); ++i) {
            if (!std::isfinite(s.xs[i]) || !std::isfinite(s.ys[i]))
                throw ContractError("render_svg: series '" + s.name + "' has non-finite values");
            xmin = std::min(xmin, s.xs[i]);
            xmax = std::max(xmax, s.xs[i]);
            ymin = std::min(ymin, s.ys[i]);
            ymax = std::max(ymax, s.ys[i]);
        }
    }
    const Axis ax = make_axis(xmin, xmax);
    const Axis ay = make_axis(ymin, ymax);
    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - ax.lo) / (ax.hi - ax.lo) * pw; };
    auto py = [&](double y) { return kTop + ph - (y - ay.lo) / (ay.hi - ay.lo) * ph; };

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"640\" height=\"480\" "
           "viewBox=\"0 0 640 480\" font-family=\"sans-serif\" font-size=\"11\">\n";
    out += "<title>" + escape(spec.title) + "</title>\n";
    out += "<desc>" + std::string(to_string(spec.kind)) + "</desc>\n";
    out += "<rect x=\"0\" y=\"0\" width=\"640\" height=\"480\" fill=\"white\"/>\n";
    out += "<text x=\"" + fixed(kLeft + pw / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" +
           escape(spec.title) + "</text>\n";

    out += "<g stroke=\"#cccccc\" stroke-width=\"0.5\">\n";
    const int nx = static_cast<int>(std::lround((ax.hi - ax.lo) / ax.step));
    const int ny = static_cast<int>(std::lround((ay.hi - ay.lo) / ay.step));
    for (int i = 0; i <= nx; ++i) {
        const double x = px(ax.lo + i * ax.step);
        out += "<line x1=\"" + fixed(x) + "\" y1=\"" + fixed(kTop) + "\" x2=\"" + fixed(x) + "\" y2=\"" +
               fixed(kTop + ph) + "\"/>\n";
    }
    for (int i = 0; i <= ny; ++i) {
        const double y = py(ay.lo + i * ay.step);
        out += "<line x1=\"" + fixed(kLeft) + "\" y1=\"" + fixed(y) + "\" x2=\"" + fixed(kLeft + pw) + "\" y2=\"" +
               fixed(y) + "\"/>\n";
    }
    out += "</g>\n";
    out += "<rect x=\"" + fixed(kLeft) + "\" y=\"" + fixed(kTop) + "\" width=\"" + fixed(pw) + "\" height=\"" +
           fixed(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";

    out += "<g text-anchor=\"middle\">\n";
    for (int i = 0; i <= nx; ++i) {
        const double v = ax.lo + i * ax.step;
        out += "<text x=\"" + fixed(px(v)) + "\" y=\"" + fixed(kTop + ph + 16) + "\">" + tick_label(v) + "</text>\n";
    }
    out += "</g>\n<g text-anchor=\"end\">\n";
    for (int i = 0; i <= ny; ++i) {
        const double v = ay.lo + i * ay.step;
        out += "<text x=\"" + fixed(kLeft - 6) + "\" y=\"" + fixed(py(v) + 4) + "\">" + tick_label(v) + "</text>\n";
    }
    out += "</g>\n";
    out += "<text x=\"" + fixed(kLeft + pw / 2) + "\" y=\"" + fixed(kHeight - 16) + "\" text-anchor=\"middle\">" +
           escape(spec.x_label) + "</text>\n";
    out += "<text x=\"18\" y=\"" + fixed(kTop + ph / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
           fixed(kTop + ph / 2) + ")\">" + escape(spec.y_label) + "</text>\n";

    for (std::size_t k = 0; k < spec.series.size(); ++k) {
        const auto& s = spec.series[k];
        const char* colour = kPalette[k % std::size(kPalette)];
        out += "<polyline fill=\"none\" stroke=\"" + std::string(colour) + "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.xs.size(); ++i) {
            if (i) out += ' ';
            out += fixed(px(s.xs[i])) + "," + fixed(py(s.ys[i]));
        }
        out += "\"/>\n";
    }

    out += "<g>\n";
    for (std::size_t k = 0; k < spec.series.size(); ++k) {
        const double y = kTop + 10 + 16.0 * static_cast<double>(k);
        const double x = kLeft + pw + 12;
        out += "<line x1=\"" + fixed(x) + "\" y1=\"" + fixed(y) + "\" x2=\"" + fixed(x + 18) + "\" y2=\"" + fixed(y) +
               "\" stroke=\"" + kPalette[k % std::size(kPalette)] + "\" stroke-width=\"2\"/>\n";
        out += "<text x=\"" + fixed(x + 24) + "\" y=\"" + fixed(y + 4) + "\">" + escape(spec.series[k].name) +
               "</text>\n";
    }
    out += "</g>\n</svg>\n";
    return out;
}

}  // namespace llrlab::cli
