#include "c2flow/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "c2flow/csvio.hpp"

namespace c2flow {

namespace {

constexpr double kWidth = 960, kHeight = 600;
constexpr double kLeft = 72, kRight = 180, kTop = 44, kBottom = 56;

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string fmt(double v, const char* spec = "%.6g") {
    char buf[40];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

struct Range {
    double lo = 0.0, hi = 1.0;
    void widen_if_degenerate() {
        if (!(hi > lo)) {
            const double pad = std::max(1.0, std::fabs(lo)) * 0.5;
            lo -= pad;
            hi += pad;
        }
    }
};

std::vector<double> nice_ticks(const Range& r, int target = 6) {
    const double span = r.hi - r.lo;
    const double raw = span / std::max(target - 1, 1);
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double norm = raw / mag;
    const double step = mag * (norm < 1.5 ? 1.0 : norm < 3.5 ? 2.0 : norm < 7.5 ? 5.0 : 10.0);
    const double first = std::ceil(r.lo / step) * step;
    std::vector<double> ticks;
    for (int i = 0;; ++i) {
        double t = first + i * step;
        if (t > r.hi + 1e-9 * span)
            break;
        if (std::fabs(t) < 1e-12 * span)
            t = 0.0;
        ticks.push_back(t);
    }
    return ticks;
}

} // namespace

std::string render_svg(std::span<const PlotSeries> series, const std::string& title,
                       const std::string& xlabel, const std::string& ylabel) {
    Range xr, yr;
    bool any = false;
    for (const auto& s : series) {
        for (const auto& [x, y] : s.points) {
            if (!any) {
                xr = {x, x};
                yr = {y, y};
                any = true;
            } else {
                xr.lo = std::min(xr.lo, x);
                xr.hi = std::max(xr.hi, x);
                yr.lo = std::min(yr.lo, y);
                yr.hi = std::max(yr.hi, y);
            }
        }
    }
    xr.widen_if_degenerate();
    yr.widen_if_degenerate();

    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
    auto py = [&](double y) { return kTop + (yr.hi - y) / (yr.hi - yr.lo) * ph; };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kWidth) +
           "\" height=\"" + fmt(kHeight) + "\" viewBox=\"0 0 " + fmt(kWidth) + " " +
           fmt(kHeight) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + fmt(kLeft + pw / 2) + "\" y=\"24\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"16\">" + escape_xml(title) + "</text>\n";

    for (double t : nice_ticks(xr)) {
        const double x = px(t);
        svg += "<line x1=\"" + fmt(x, "%.2f") + "\" y1=\"" + fmt(kTop) + "\" x2=\"" +
               fmt(x, "%.2f") + "\" y2=\"" + fmt(kTop + ph) +
               "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        svg += "<text x=\"" + fmt(x, "%.2f") + "\" y=\"" + fmt(kTop + ph + 18) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
               fmt(t) + "</text>\n";
    }
    for (double t : nice_ticks(yr)) {
        const double y = py(t);
        svg += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(y, "%.2f") + "\" x2=\"" +
               fmt(kLeft + pw) + "\" y2=\"" + fmt(y, "%.2f") +
               "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        svg += "<text x=\"" + fmt(kLeft - 6) + "\" y=\"" + fmt(y + 4, "%.2f") +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + fmt(t) +
               "</text>\n";
    }
    svg += "<rect x=\"" + fmt(kLeft) + "\" y=\"" + fmt(kTop) + "\" width=\"" + fmt(pw) +
           "\" height=\"" + fmt(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt(kLeft + pw / 2) + "\" y=\"" + fmt(kHeight - 14) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
           escape_xml(xlabel) + "</text>\n";
    svg += "<text x=\"18\" y=\"" + fmt(kTop + ph / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "transform=\"rotate(-90 18 " + fmt(kTop + ph / 2) + ")\">" + escape_xml(ylabel) +
           "</text>\n";

    size_t idx = 0;
    for (const auto& s : series) {
        const char* color = kPalette[idx % (sizeof kPalette / sizeof kPalette[0])];
        if (!s.points.empty()) {
            svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
                   "\" stroke-width=\"1.5\" points=\"";
            for (const auto& [x, y] : s.points)
                svg += fmt(px(x), "%.2f") + "," + fmt(py(y), "%.2f") + " ";
            svg += "\"/>\n";
        }
        const double ly = kTop + 14 + 18 * static_cast<double>(idx);
        svg += "<line x1=\"" + fmt(kLeft + pw + 12) + "\" y1=\"" + fmt(ly) + "\" x2=\"" +
               fmt(kLeft + pw + 34) + "\" y2=\"" + fmt(ly) + "\" stroke=\"" + color +
               "\" stroke-width=\"2\"/>\n";
        svg += "<text x=\"" + fmt(kLeft + pw + 40) + "\" y=\"" + fmt(ly + 4) +
               "\" font-family=\"sans-serif\" font-size=\"11\">" + escape_xml(s.name) +
               "</text>\n";
        ++idx;
    }
    svg += "</svg>\n";
    return svg;
}

void emit_plot(std::span<const PlotSeries> series, const std::string& title,
               const std::string& xlabel, const std::string& ylabel, const std::string& path) {
    write_text_file(path, render_svg(series, title, xlabel, ylabel));
}

} // namespace c2flow
