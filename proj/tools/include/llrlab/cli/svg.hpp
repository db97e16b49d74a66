#pragma once
// Deterministic SVG 1.1 line charts.

#include <string>
#include <vector>

namespace llrlab::cli {

enum class PlotKind { density_overlay, roc, deviate_line, learning_curve, variance };

const char* to_string(PlotKind k) noexcept;

struct Series {
    std::string name;
    std::vector<double> xs;
    std::vector<double> ys;
};

struct PlotSpec {
    PlotKind kind = PlotKind::roc;
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;
};

// One polyline per series, linear axes with tick labels, legend listing every series name.
// Identical specs give byte-identical documents. Empty or non-finite series: ContractError.
std::string render_svg(const PlotSpec& spec);

}  // namespace llrlab::cli
