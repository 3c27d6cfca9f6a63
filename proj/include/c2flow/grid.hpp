#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

namespace c2flow {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Periodic N x N grid on a square box. Node (ix, iy) sits at
/// (ix * spacing, iy * spacing); the flat index is iy * n + ix.
struct GridSpec {
    int n = 0;
    double box_length = kTwoPi;
    double spacing = 0.0;

    /// n must be >= 4 and even (centered stencils, symmetric probes).
    static GridSpec square(int n, double box_length = kTwoPi);

    int cells() const { return n * n; }
    int index(int ix, int iy) const { return iy * n + ix; }
    int wrap(int i) const {
        int m = i % n;
        return m < 0 ? m + n : m;
    }
    double x(int ix) const { return ix * spacing; }
    double y(int iy) const { return iy * spacing; }

    bool operator==(const GridSpec&) const = default;
};

/// One scalar field sampled on a periodic grid, stored flat (iy * n + ix).
class Field2D {
public:
    Field2D() = default;
    explicit Field2D(const GridSpec& grid, double fill = 0.0)
        : grid_(grid), values_(static_cast<size_t>(grid.cells()), fill) {}

    template <typename F>
    static Field2D sampled(const GridSpec& grid, F&& f) {
        Field2D out(grid);
        for (int iy = 0; iy < grid.n; ++iy)
            for (int ix = 0; ix < grid.n; ++ix)
                out.at(ix, iy) = f(grid.x(ix), grid.y(iy));
        return out;
    }

    const GridSpec& grid() const { return grid_; }
    int n() const { return grid_.n; }
    size_t size() const { return values_.size(); }

    double& at(int ix, int iy) { return values_[static_cast<size_t>(grid_.index(ix, iy))]; }
    double at(int ix, int iy) const { return values_[static_cast<size_t>(grid_.index(ix, iy))]; }
    double wrapped(int ix, int iy) const { return at(grid_.wrap(ix), grid_.wrap(iy)); }

    double& operator[](size_t i) { return values_[i]; }
    double operator[](size_t i) const { return values_[i]; }

    double* data() { return values_.data(); }
    const double* data() const { return values_.data(); }
    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }

    bool all_finite() const;
    double max_abs() const;

    bool operator==(const Field2D&) const = default;

private:
    GridSpec grid_;
    std::vector<double> values_;
};

/// Centered first derivative along x: (f(ix+1) - f(ix-1)) / (2h), periodic.
Field2D dx(const Field2D& f);
/// Centered first derivative along y.
Field2D dy(const Field2D& f);
/// dx(vx) + dy(vy); both fields must live on the same grid.
Field2D divergence(const Field2D& vx, const Field2D& vy);

/// Nearest grid node to a physical point; ties round half away from zero,
/// indices wrap periodically.
std::pair<int, int> nearest_node(std::pair<double, double> p, const GridSpec& grid);

} // namespace c2flow
