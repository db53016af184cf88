#include "qir/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qir/csv.hpp"

namespace qir {

namespace {

constexpr double k_width = 800.0;
constexpr double k_height = 500.0;
constexpr double k_margin_left = 70.0;
constexpr double k_margin_right = 160.0;
constexpr double k_margin_top = 40.0;
constexpr double k_margin_bottom = 55.0;

const char* k_palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string fmt_coord(double v) {
    // Fixed two-decimal pixel coordinates keep the file compact and stable.
    const double r = std::round(v * 100.0) / 100.0;
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(2);
    out << r;
    return out.str();
}

std::vector<double> nice_ticks(double lo, double hi, int target) {
    if (!(hi > lo)) return {lo};
    const double raw_step = (hi - lo) / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw_step)));
    double step = mag;
    for (const double m : {1.0, 2.0, 5.0, 10.0}) {
        if (mag * m >= raw_step) {
            step = mag * m;
            break;
        }
    }
    std::vector<double> ticks;
    const double start = std::ceil(lo / step) * step;
    for (double v = start; v <= hi + 0.5 * step; v += step) {
        ticks.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
    }
    return ticks;
}

std::vector<double> log_ticks(double lo, double hi) {
    std::vector<double> ticks;
    const int e0 = static_cast<int>(std::floor(std::log10(lo)));
    const int e1 = static_cast<int>(std::ceil(std::log10(hi)));
    for (int e = e0; e <= e1; ++e) {
        const double v = std::pow(10.0, e);
        if (v >= lo * (1.0 - 1e-12) && v <= hi * (1.0 + 1e-12)) ticks.push_back(v);
    }
    if (ticks.empty()) ticks = {lo, hi};
    return ticks;
}

std::string escape_xml(const std::string& s) {
    std::string out;
    for (const char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

} // namespace

std::string render_line_plot(const std::vector<PlotSeries>& series, const PlotOptions& options) {
    if (series.empty()) {
        throw std::invalid_argument("render_line_plot: no series");
    }
    double x_lo = 0.0, x_hi = 0.0, y_lo = 0.0, y_hi = 0.0;
    bool have = false;
    for (const PlotSeries& s : series) {
        if (s.x.size() != s.y.size()) {
            throw std::invalid_argument("render_line_plot: x/y length mismatch");
        }
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (options.log_x && !(s.x[i] > 0.0)) {
                throw std::invalid_argument("render_line_plot: log axis needs positive x");
            }
            if (!have) {
                x_lo = x_hi = s.x[i];
                y_lo = y_hi = s.y[i];
                have = true;
            } else {
                x_lo = std::min(x_lo, s.x[i]);
                x_hi = std::max(x_hi, s.x[i]);
                y_lo = std::min(y_lo, s.y[i]);
                y_hi = std::max(y_hi, s.y[i]);
            }
        }
    }
    if (!have) {
        throw std::invalid_argument("render_line_plot: series are empty");
    }
    if (x_hi == x_lo) x_hi = x_lo + 1.0;
    if (y_hi == y_lo) y_hi = y_lo + 1.0;
    const double y_pad = 0.05 * (y_hi - y_lo);
    y_lo -= y_pad;
    y_hi += y_pad;

    const double plot_w = k_width - k_margin_left - k_margin_right;
    const double plot_h = k_height - k_margin_top - k_margin_bottom;
    auto to_px_x = [&](double v) {
        const double t = options.log_x ? (std::log10(v) - std::log10(x_lo)) /
                                             (std::log10(x_hi) - std::log10(x_lo))
                                       : (v - x_lo) / (x_hi - x_lo);
        return k_margin_left + t * plot_w;
    };
    auto to_px_y = [&](double v) {
        return k_margin_top + (1.0 - (v - y_lo) / (y_hi - y_lo)) * plot_h;
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << k_width << "\" height=\""
        << k_height << "\" viewBox=\"0 0 " << k_width << " " << k_height << "\">\n";
    svg << "<rect width=\"" << k_width << "\" height=\"" << k_height << "\" fill=\"white\"/>\n";
    svg << "<text x=\"" << k_width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\" "
           "font-family=\"sans-serif\">"
        << escape_xml(options.title) << "</text>\n";

    // Frame
    svg << "<rect x=\"" << fmt_coord(k_margin_left) << "\" y=\"" << fmt_coord(k_margin_top)
        << "\" width=\"" << fmt_coord(plot_w) << "\" height=\"" << fmt_coord(plot_h)
        << "\" fill=\"none\" stroke=\"black\"/>\n";

    const std::vector<double> xticks =
        options.log_x ? log_ticks(x_lo, x_hi) : nice_ticks(x_lo, x_hi, 6);
    for (const double v : xticks) {
        const double px = to_px_x(v);
        svg << "<line x1=\"" << fmt_coord(px) << "\" y1=\"" << fmt_coord(k_margin_top + plot_h)
            << "\" x2=\"" << fmt_coord(px) << "\" y2=\"" << fmt_coord(k_margin_top + plot_h + 5)
            << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << fmt_coord(px) << "\" y=\"" << fmt_coord(k_margin_top + plot_h + 20)
            << "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">"
            << format_double(v) << "</text>\n";
    }
    for (const double v : nice_ticks(y_lo, y_hi, 5)) {
        const double py = to_px_y(v);
        svg << "<line x1=\"" << fmt_coord(k_margin_left - 5) << "\" y1=\"" << fmt_coord(py)
            << "\" x2=\"" << fmt_coord(k_margin_left) << "\" y2=\"" << fmt_coord(py)
            << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << fmt_coord(k_margin_left - 8) << "\" y=\"" << fmt_coord(py + 4)
            << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">"
            << format_double(v) << "</text>\n";
    }

    svg << "<text x=\"" << k_width / 2 << "\" y=\"" << k_height - 12
        << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\">"
        << escape_xml(options.x_label) << "</text>\n";
    svg << "<text x=\"18\" y=\"" << k_height / 2
        << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\" "
           "transform=\"rotate(-90 18 "
        << k_height / 2 << ")\">" << escape_xml(options.y_label) << "</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const PlotSeries& s = series[si];
        const char* color = k_palette[si % (sizeof(k_palette) / sizeof(k_palette[0]))];
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (i) svg << ' ';
            svg << fmt_coord(to_px_x(s.x[i])) << ',' << fmt_coord(to_px_y(s.y[i]));
        }
        svg << "\"/>\n";
        const double ly = k_margin_top + 16.0 + 18.0 * static_cast<double>(si);
        svg << "<line x1=\"" << fmt_coord(k_width - k_margin_right + 10) << "\" y1=\""
            << fmt_coord(ly - 4) << "\" x2=\"" << fmt_coord(k_width - k_margin_right + 34)
            << "\" y2=\"" << fmt_coord(ly - 4) << "\" stroke=\"" << color
            << "\" stroke-width=\"1.5\"/>\n";
        svg << "<text x=\"" << fmt_coord(k_width - k_margin_right + 40) << "\" y=\""
            << fmt_coord(ly) << "\" font-size=\"12\" font-family=\"sans-serif\">"
            << escape_xml(s.name) << "</text>\n";
    }

    svg << "</svg>\n";
    return svg.str();
}

} // namespace qir
