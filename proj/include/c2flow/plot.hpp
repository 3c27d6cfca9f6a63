#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace c2flow {

struct PlotSeries {
    std::string name;
    std::vector<std::pair<double, double>> points;
};

/// Standalone SVG: one polyline per series on shared linear axes, tick
/// labels and a legend. Byte output is deterministic for identical input.
std::string render_svg(std::span<const PlotSeries> series, const std::string& title,
                       const std::string& xlabel, const std::string& ylabel);

void emit_plot(std::span<const PlotSeries> series, const std::string& title,
               const std::string& xlabel, const std::string& ylabel, const std::string& path);

} // namespace c2flow
