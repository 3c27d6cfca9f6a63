#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "c2flow/grid.hpp"
#include "test_helpers.hpp"

using namespace c2flow;
using c2flow::test::random_field;
using std::numbers::pi;

TEST_CASE("GridSpec: construction and invariants") {
    const GridSpec g = GridSpec::square(64);
    CHECK(g.spacing == doctest::Approx(kTwoPi / 64).epsilon(1e-15));
    CHECK(g.spacing * g.n == doctest::Approx(g.box_length).epsilon(1e-15));
    CHECK(g.cells() == 4096);
    CHECK(g.index(3, 2) == 2 * 64 + 3);

    CHECK_THROWS_AS(GridSpec::square(3), std::invalid_argument);
    CHECK_THROWS_AS(GridSpec::square(5), std::invalid_argument);
    CHECK_THROWS_AS(GridSpec::square(0), std::invalid_argument);
}

TEST_CASE("dx: constant field maps to zero exactly") {
    const GridSpec g = GridSpec::square(8);
    const Field2D out = dx(Field2D(g, 3.25));
    for (size_t i = 0; i < out.size(); ++i)
        CHECK(out[i] == 0.0);
}

TEST_CASE("dx: hand-evaluated 3-point stencil on N=4") {
    const GridSpec g = GridSpec::square(4);
    const Field2D f = Field2D::sampled(g, [](double x, double) { return std::sin(x); });
    // samples along x are {0, 1, 0, -1}; at ix=0: (1 - (-1)) / (2 * pi/2)
    const Field2D out = dx(f);
    CHECK(out.at(0, 0) == doctest::Approx(2.0 / pi).epsilon(1e-14));
    // brute-force oracle at every node
    for (int iy = 0; iy < 4; ++iy)
        for (int ix = 0; ix < 4; ++ix) {
            const double expect =
                (f.wrapped(ix + 1, iy) - f.wrapped(ix - 1, iy)) / (2.0 * g.spacing);
            CHECK(out.at(ix, iy) == doctest::Approx(expect).epsilon(1e-15));
        }
}

TEST_CASE("dx: discrete eigenfunction identity sin(kx) -> (sin kh / h) cos(kx)") {
    const GridSpec g = GridSpec::square(16);
    for (int k : {1, 2, 16 / 4}) {
        const Field2D f =
            Field2D::sampled(g, [&](double x, double) { return std::sin(k * x); });
        const Field2D out = dx(f);
        const double factor = std::sin(k * g.spacing) / g.spacing;
        for (int iy = 0; iy < g.n; ++iy)
            for (int ix = 0; ix < g.n; ++ix)
                CHECK(out.at(ix, iy) ==
                      doctest::Approx(factor * std::cos(k * g.x(ix))).epsilon(1e-13));
    }
}

TEST_CASE("dy: mirror of dx") {
    const GridSpec g = GridSpec::square(8);
    CHECK(dy(Field2D(g, -7.0)).max_abs() == 0.0);

    const Field2D f = Field2D::sampled(g, [](double, double y) { return std::cos(y); });
    const Field2D out = dy(f);
    const double factor = std::sin(g.spacing) / g.spacing;
    for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix)
            CHECK(out.at(ix, iy) ==
                  doctest::Approx(-factor * std::sin(g.y(iy))).epsilon(1e-13));
}

TEST_CASE("dx and dy commute on random fields") {
    const GridSpec g = GridSpec::square(12);
    std::mt19937 rng(42);
    const Field2D f = random_field(g, rng);
    const Field2D a = dy(dx(f));
    const Field2D b = dx(dy(f));
    for (size_t i = 0; i < a.size(); ++i)
        CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-13));
}

TEST_CASE("dx, dy are linear") {
    const GridSpec g = GridSpec::square(10);
    std::mt19937 rng(7);
    const Field2D f = random_field(g, rng);
    const Field2D gfield = random_field(g, rng);
    const double alpha = 1.7, beta = -0.3;
    Field2D combo(g);
    for (size_t i = 0; i < combo.size(); ++i)
        combo[i] = alpha * f[i] + beta * gfield[i];
    const Field2D lhs = dx(combo);
    const Field2D dxf = dx(f), dxg = dx(gfield);
    for (size_t i = 0; i < lhs.size(); ++i)
        CHECK(lhs[i] == doctest::Approx(alpha * dxf[i] + beta * dxg[i]).epsilon(1e-12));
}

TEST_CASE("summation by parts: node sum of dx(f) telescopes to zero") {
    const GridSpec g = GridSpec::square(16);
    std::mt19937 rng(3);
    const Field2D f = random_field(g, rng);
    const Field2D out = dx(f);
    double sum = 0.0;
    for (size_t i = 0; i < out.size(); ++i)
        sum += out[i];
    const double eps = std::numeric_limits<double>::epsilon();
    const double bound = g.cells() * eps * f.max_abs() / g.spacing;
    CHECK(std::fabs(sum) <= bound);
}

TEST_CASE("divergence") {
    const GridSpec g = GridSpec::square(8);
    SUBCASE("orthogonal-axis fields cancel exactly") {
        const Field2D vx = Field2D::sampled(g, [](double, double y) { return std::cos(y); });
        const Field2D vy = Field2D::sampled(g, [](double x, double) { return std::cos(x); });
        const Field2D d = divergence(vx, vy);
        for (size_t i = 0; i < d.size(); ++i)
            CHECK(d[i] == 0.0);
    }
    SUBCASE("(sin x, 0) gives the eigenfunction image") {
        const Field2D vx = Field2D::sampled(g, [](double x, double) { return std::sin(x); });
        const Field2D d = divergence(vx, Field2D(g));
        const double factor = std::sin(g.spacing) / g.spacing;
        for (int iy = 0; iy < g.n; ++iy)
            for (int ix = 0; ix < g.n; ++ix)
                CHECK(d.at(ix, iy) ==
                      doctest::Approx(factor * std::cos(g.x(ix))).epsilon(1e-13));
    }
    SUBCASE("zero fields stay zero") {
        CHECK(divergence(Field2D(g), Field2D(g)).max_abs() == 0.0);
    }
    SUBCASE("grid mismatch is a usage error") {
        CHECK_THROWS_AS(divergence(Field2D(g), Field2D(GridSpec::square(16))),
                        std::invalid_argument);
    }
}

TEST_CASE("nearest_node") {
    const GridSpec g64 = GridSpec::square(64);
    CHECK(nearest_node({0.0, 0.0}, g64) == std::pair{0, 0});
    CHECK(nearest_node({1.5, 1.5}, g64) == std::pair{15, 15});
    CHECK(nearest_node({0.7, 2.5}, g64) == std::pair{7, 25});

    SUBCASE("ties round half away from zero, wraps are periodic") {
        const GridSpec g = GridSpec::square(4); // h = pi/2
        CHECK(nearest_node({g.spacing / 2.0, 0.0}, g) == std::pair{1, 0});
        CHECK(nearest_node({-g.spacing / 2.0, 0.0}, g) == std::pair{3, 0});
        CHECK(nearest_node({g.box_length, g.box_length}, g) == std::pair{0, 0});
    }
}
