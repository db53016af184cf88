#pragma once

#include <string>
#include <vector>

namespace qir {

struct PlotSeries {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotOptions {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
};

/// Static SVG line plot: fixed canvas, one polyline per series, labeled axes.
/// Output bytes are a pure function of the inputs.
std::string render_line_plot(const std::vector<PlotSeries>& series, const PlotOptions& options);

} // namespace qir
