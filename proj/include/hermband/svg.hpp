#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "hermband/csvio.hpp"
#include "hermband/errors.hpp"

namespace hermband {

struct SvgSeries {
    std::string label;
    std::vector<double> xs;
    std::vector<double> ys;
};

struct SvgFigure {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<SvgSeries> series;
};

namespace detail {

inline constexpr double svg_width = 800.0, svg_height = 500.0;
inline constexpr double margin_left = 70.0, margin_right = 25.0;
inline constexpr double margin_top = 45.0, margin_bottom = 55.0;

inline const char* series_color(std::size_t i) {
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#8c564b", "#e377c2"};
    return palette[i % 6];
}

// Round to two decimals before formatting so coordinates stay short; the
// rounding is itself deterministic.
inline std::string svg_coord(double v) {
    return format_number(std::round(v * 100.0) / 100.0);
}

inline double nice_step(double range, int target_ticks) {
    double raw = range / static_cast<double>(target_ticks);
    double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double frac = raw / mag;
    double step = 10.0;
    if (frac <= 1.0) step = 1.0;
    else if (frac <= 2.0) step = 2.0;
    else if (frac <= 5.0) step = 5.0;
    return step * mag;
}

struct AxisRange {
    double lo = 0.0, hi = 1.0;
};

inline AxisRange padded_range(double lo, double hi) {
    if (!(hi > lo)) {
        double pad = std::max(0.5, std::abs(lo) * 0.1);
        return {lo - pad, hi + pad};
    }
    double pad = (hi - lo) * 0.05;
    return {lo - pad, hi + pad};
}

}  // namespace detail

inline std::string render_svg(const SvgFigure& fig) {
    if (fig.series.empty()) throw_domain("svg figure needs at least one series");
    double x_min = 0, x_max = 0, y_min = 0, y_max = 0;
    bool first = true;
    for (const auto& s : fig.series) {
        if (s.xs.empty() || s.xs.size() != s.ys.size())
            throw_domain("svg series '" + s.label + "' is empty or ragged");
        for (std::size_t i = 0; i < s.xs.size(); ++i) {
            if (first) {
                x_min = x_max = s.xs[i];
                y_min = y_max = s.ys[i];
                first = false;
            }
            x_min = std::min(x_min, s.xs[i]);
            x_max = std::max(x_max, s.xs[i]);
            y_min = std::min(y_min, s.ys[i]);
            y_max = std::max(y_max, s.ys[i]);
        }
    }
    auto xr = detail::padded_range(x_min, x_max);
    auto yr = detail::padded_range(y_min, y_max);
    const double plot_w = detail::svg_width - detail::margin_left - detail::margin_right;
    const double plot_h = detail::svg_height - detail::margin_top - detail::margin_bottom;
    auto px = [&](double x) {
        return detail::margin_left + (x - xr.lo) / (xr.hi - xr.lo) * plot_w;
    };
    auto py = [&](double y) {
        return detail::margin_top + (yr.hi - y) / (yr.hi - yr.lo) * plot_h;
    };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 500\" "
           "font-family=\"sans-serif\" font-size=\"13\">\n";
    out += "<rect width=\"800\" height=\"500\" fill=\"white\"/>\n";

    auto line = [&](double x1, double y1, double x2, double y2, const char* style) {
        out += "<line x1=\"" + detail::svg_coord(x1) + "\" y1=\"" + detail::svg_coord(y1) +
               "\" x2=\"" + detail::svg_coord(x2) + "\" y2=\"" + detail::svg_coord(y2) + "\" " +
               style + "/>\n";
    };
    auto text = [&](double x, double y, const std::string& s, const char* attrs) {
        out += "<text x=\"" + detail::svg_coord(x) + "\" y=\"" + detail::svg_coord(y) + "\" " +
               attrs + ">" + s + "</text>\n";
    };

    // ticks and grid
    const char* grid_style = "stroke=\"#dddddd\" stroke-width=\"1\"";
    const char* axis_style = "stroke=\"black\" stroke-width=\"1.5\"";
    double xs_step = detail::nice_step(xr.hi - xr.lo, 6);
    for (double t = std::ceil(xr.lo / xs_step) * xs_step; t <= xr.hi + 1e-12 * xs_step;
         t += xs_step) {
        double v = (std::abs(t) < 1e-12 * xs_step) ? 0.0 : t;
        line(px(v), detail::margin_top, px(v), detail::margin_top + plot_h, grid_style);
        text(px(v), detail::margin_top + plot_h + 18.0, format_number(v),
             "text-anchor=\"middle\"");
    }
    double ys_step = detail::nice_step(yr.hi - yr.lo, 6);
    for (double t = std::ceil(yr.lo / ys_step) * ys_step; t <= yr.hi + 1e-12 * ys_step;
         t += ys_step) {
        double v = (std::abs(t) < 1e-12 * ys_step) ? 0.0 : t;
        line(detail::margin_left, py(v), detail::margin_left + plot_w, py(v), grid_style);
        text(detail::margin_left - 8.0, py(v) + 4.0, format_number(v), "text-anchor=\"end\"");
    }
    line(detail::margin_left, detail::margin_top + plot_h, detail::margin_left + plot_w,
         detail::margin_top + plot_h, axis_style);
    line(detail::margin_left, detail::margin_top, detail::margin_left,
         detail::margin_top + plot_h, axis_style);

    text(detail::svg_width / 2.0, 22.0, fig.title,
         "text-anchor=\"middle\" font-size=\"16\" font-weight=\"bold\"");
    text(detail::margin_left + plot_w / 2.0, detail::svg_height - 12.0, fig.x_label,
         "text-anchor=\"middle\"");
    text(16.0, detail::margin_top + plot_h / 2.0, fig.y_label,
         ("text-anchor=\"middle\" transform=\"rotate(-90 16 " +
          detail::svg_coord(detail::margin_top + plot_h / 2.0) + ")\"")
             .c_str());

    for (std::size_t si = 0; si < fig.series.size(); ++si) {
        const auto& s = fig.series[si];
        out += "<polyline fill=\"none\" stroke=\"";
        out += detail::series_color(si);
        out += "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.xs.size(); ++i) {
            if (i) out += ' ';
            out += detail::svg_coord(px(s.xs[i]));
            out += ',';
            out += detail::svg_coord(py(s.ys[i]));
        }
        out += "\"/>\n";
    }

    // legend, top right inside the plot
    double lx = detail::margin_left + plot_w - 170.0;
    double ly = detail::margin_top + 14.0;
    for (std::size_t si = 0; si < fig.series.size(); ++si) {
        std::string style = "stroke=\"" + std::string(detail::series_color(si)) +
                            "\" stroke-width=\"2\"";
        line(lx, ly - 4.0, lx + 26.0, ly - 4.0, style.c_str());
        text(lx + 32.0, ly, fig.series[si].label, "");
        ly += 18.0;
    }

    out += "</svg>\n";
    return out;
}

inline void emit_svg(const SvgFigure& fig, const std::string& path) {
    write_text_file(path, render_svg(fig));
}

}  // namespace hermband
