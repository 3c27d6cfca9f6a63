#include "c2flow/grid.hpp"

#include <cmath>
#include <stdexcept>

#include "c2flow/kernels.hpp"

namespace c2flow {

GridSpec GridSpec::square(int n, double box_length) {
    if (n < 4 || n % 2 != 0)
        throw std::invalid_argument("GridSpec: n must be even and >= 4");
    if (!(box_length > 0.0))
        throw std::invalid_argument("GridSpec: box_length must be positive");
    GridSpec g;
    g.n = n;
    g.box_length = box_length;
    g.spacing = box_length / n;
    return g;
}

bool Field2D::all_finite() const {
    return kernels::all_finite(data(), size());
}

double Field2D::max_abs() const {
    return kernels::max_abs(data(), size());
}

Field2D dx(const Field2D& f) {
    Field2D out(f.grid());
    kernels::dx(f.grid(), f.data(), out.data());
    return out;
}

Field2D dy(const Field2D& f) {
    Field2D out(f.grid());
    kernels::dy(f.grid(), f.data(), out.data());
    return out;
}

Field2D divergence(const Field2D& vx, const Field2D& vy) {
    if (vx.grid() != vy.grid())
        throw std::invalid_argument("divergence: fields live on different grids");
    Field2D ddx = dx(vx);
    Field2D ddy = dy(vy);
    Field2D out(vx.grid());
    kernels::add(ddx.data(), ddy.data(), out.data(), out.size());
    return out;
}

std::pair<int, int> nearest_node(std::pair<double, double> p, const GridSpec& grid) {
    // lround rounds halfway cases away from zero
    long ix = std::lround(p.first / grid.spacing);
    long iy = std::lround(p.second / grid.spacing);
    auto wrap = [&](long i) {
        long m = i % grid.n;
        return static_cast<int>(m < 0 ? m + grid.n : m);
    };
    return {wrap(ix), wrap(iy)};
}

} // namespace c2flow
