#pragma once

#include <algorithm>
#include <array>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fraug/error.hpp"
#include "fraug/time_series.hpp"

namespace fraug::io {

struct PlotSeries {
    std::string label;
    TimeSeries series;
    /// Draw a circle at every point in addition to the line.
    bool markers = false;
};

namespace detail {

inline std::string fmt(double v, const char* pattern = "%.2f") {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, v);
    std::string out = buf;
    if (out == "-0.00") out = "0.00";
    return out;
}

inline std::string xml_escape(std::string_view s) {
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

}  // namespace detail

/**
 * @brief Self-contained 800x400 SVG line chart.
 *
 * One polyline per series in palette order, circles for series with
 * markers, four ticks per axis and a legend in the top-left corner.
 */
inline std::string render_svg(const std::vector<PlotSeries>& plots, std::string_view title = {}) {
    constexpr double kWidth = 800.0;
    constexpr double kHeight = 400.0;
    constexpr double kLeft = 60.0;
    constexpr double kRight = 20.0;
    constexpr double kTop = 30.0;
    constexpr double kBottom = 40.0;
    constexpr std::array<const char*, 8> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                     "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

    double x_min = std::numeric_limits<double>::infinity();
    double x_max = -x_min;
    double y_min = x_min;
    double y_max = -x_min;
    for (const auto& p : plots) {
        for (const auto& pt : p.series) {
            x_min = std::min(x_min, pt.x);
            x_max = std::max(x_max, pt.x);
            y_min = std::min(y_min, pt.y);
            y_max = std::max(y_max, pt.y);
        }
    }
    if (!(x_min <= x_max)) fail(ErrorCode::EmptyInput, "nothing to plot");
    if (x_max == x_min) {
        x_min -= 0.5;
        x_max += 0.5;
    }
    if (y_max == y_min) {
        y_min -= 0.5;
        y_max += 0.5;
    }
    const double pad = 0.05 * (y_max - y_min);
    y_min -= pad;
    y_max += pad;

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto sx = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * plot_w; };
    auto sy = [&](double y) { return kTop + (y_max - y) / (y_max - y_min) * plot_h; };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"400\" viewBox=\"0 0 800 400\">\n"
        << "<rect width=\"800\" height=\"400\" fill=\"white\"/>\n";
    if (!title.empty()) {
        svg << "<text x=\"400\" y=\"18\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
            << detail::xml_escape(title) << "</text>\n";
    }
    svg << "<g stroke=\"black\" stroke-width=\"1\">\n"
        << "<line x1=\"" << detail::fmt(kLeft) << "\" y1=\"" << detail::fmt(kTop + plot_h) << "\" x2=\""
        << detail::fmt(kLeft + plot_w) << "\" y2=\"" << detail::fmt(kTop + plot_h) << "\"/>\n"
        << "<line x1=\"" << detail::fmt(kLeft) << "\" y1=\"" << detail::fmt(kTop) << "\" x2=\""
        << detail::fmt(kLeft) << "\" y2=\"" << detail::fmt(kTop + plot_h) << "\"/>\n"
        << "</g>\n";

    svg << "<g font-family=\"sans-serif\" font-size=\"10\">\n";
    for (int k = 0; k <= 4; ++k) {
        const double fx = x_min + (x_max - x_min) * k / 4.0;
        const double fy = y_min + (y_max - y_min) * k / 4.0;
        svg << "<text x=\"" << detail::fmt(sx(fx)) << "\" y=\"" << detail::fmt(kTop + plot_h + 15)
            << "\" text-anchor=\"middle\">" << detail::fmt(fx, "%g") << "</text>\n"
            << "<text x=\"" << detail::fmt(kLeft - 5) << "\" y=\"" << detail::fmt(sy(fy) + 3)
            << "\" text-anchor=\"end\">" << detail::fmt(fy, "%.4g") << "</text>\n";
    }
    svg << "</g>\n";

    for (std::size_t i = 0; i < plots.size(); ++i) {
        const char* colour = kPalette[i % kPalette.size()];
        svg << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.2\" points=\"";
        for (std::size_t j = 0; j < plots[i].series.size(); ++j) {
            const auto& pt = plots[i].series[j];
            svg << (j == 0 ? "" : " ") << detail::fmt(sx(pt.x)) << ',' << detail::fmt(sy(pt.y));
        }
        svg << "\"/>\n";
        if (plots[i].markers) {
            svg << "<g fill=\"" << colour << "\">\n";
            for (const auto& pt : plots[i].series) {
                svg << "<circle cx=\"" << detail::fmt(sx(pt.x)) << "\" cy=\"" << detail::fmt(sy(pt.y))
                    << "\" r=\"3\"/>\n";
            }
            svg << "</g>\n";
        }
    }

    svg << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
    for (std::size_t i = 0; i < plots.size(); ++i) {
        const double y = kTop + 12.0 + 14.0 * static_cast<double>(i);
        svg << "<line x1=\"" << detail::fmt(kLeft + 10) << "\" y1=\"" << detail::fmt(y - 4) << "\" x2=\""
            << detail::fmt(kLeft + 30) << "\" y2=\"" << detail::fmt(y - 4) << "\" stroke=\""
            << kPalette[i % kPalette.size()] << "\" stroke-width=\"2\"/>\n"
            << "<text x=\"" << detail::fmt(kLeft + 35) << "\" y=\"" << detail::fmt(y) << "\">"
            << detail::xml_escape(plots[i].label) << "</text>\n";
    }
    svg << "</g>\n</svg>\n";
    return svg.str();
}

}  // namespace fraug::io
