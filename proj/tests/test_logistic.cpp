#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "c2flow/errors.hpp"
#include "c2flow/logistic.hpp"
#include "test_helpers.hpp"

using namespace c2flow;
using c2flow::test::unforced_logistic_exact;

namespace {

LogisticParams params_for_g2(double g2, double b = 1.0, double f = 1.0) {
    return {std::sqrt(b * f / g2), b, f};
}

} // namespace

TEST_CASE("attractors: closed forms and regimes") {
    SUBCASE("g2 = 0.1 (b = f = 1)") {
        const Attractors fx = attractors(params_for_g2(0.1));
        CHECK(fx.stable == doctest::Approx(0.3563939586926006).epsilon(1e-12));
        CHECK(fx.unstable == doctest::Approx(2.805883701475779).epsilon(1e-12));
        CHECK(fx.stable <= fx.unstable);
    }
    SUBCASE("cross-check with long Euler integration") {
        const LogisticParams p = params_for_g2(0.1);
        const Attractors fx = attractors(p);
        const Trajectory t = euler_logistic(0.0, p, 1e-3, 20000);
        CHECK(t.final_value() == doctest::Approx(fx.stable).epsilon(1e-9));
    }
    SUBCASE("no forcing: 0 and the capacity") {
        const Attractors fx = attractors({2.0, 1.0, 0.0});
        CHECK(fx.stable == 0.0);
        CHECK(fx.unstable == 2.0);
    }
    SUBCASE("attractors merge at half capacity as g2 -> 1/4") {
        const LogisticParams p = params_for_g2(0.25 - 1e-12);
        const Attractors fx = attractors(p);
        const double half_capacity = p.a / (2.0 * p.b);
        CHECK(fx.stable == doctest::Approx(half_capacity).epsilon(1e-5));
        CHECK(fx.unstable == doctest::Approx(half_capacity).epsilon(1e-5));
    }
    SUBCASE("runaway regime rejected") {
        CHECK_THROWS_AS(attractors(params_for_g2(0.25)), std::domain_error);
        CHECK_THROWS_AS(attractors({1.0, 1.0, 1.0}), std::domain_error); // g2 = 1
    }
}

TEST_CASE("c2_fixed_point") {
    CHECK(c2_fixed_point(params_for_g2(0.1)) ==
          doctest::Approx(0.35136418446315326).epsilon(1e-12));
    CHECK(c2_fixed_point(params_for_g2(0.2)) ==
          doctest::Approx(0.5590169943749473).epsilon(1e-12));
    SUBCASE("g2 -> 0 limit is the linear steady state f/a") {
        const LogisticParams p{1.0, 1.0, 1e-12};
        CHECK(c2_fixed_point(p) == doctest::Approx(p.f / p.a).epsilon(1e-9));
    }
    SUBCASE("pole at g2 = 1") {
        CHECK_THROWS_AS(c2_fixed_point({1.0, 1.0, 1.0}), std::domain_error);
        CHECK_THROWS_AS(c2_fixed_point({1.0, 2.0, 1.0}), std::domain_error);
    }
}

TEST_CASE("euler_logistic") {
    const LogisticParams p = params_for_g2(0.1);
    const Attractors fx = attractors(p);

    SUBCASE("the stable attractor is a fixed point of the Euler map") {
        const double rhs = -p.a * fx.stable + p.b * fx.stable * fx.stable + p.f;
        CHECK(std::fabs(rhs) < 1e-12 * p.a);
        const Trajectory t = euler_logistic(fx.stable, p, 0.01, 700);
        for (size_t s = 0; s < t.steps(); ++s)
            CHECK(t.at(s) == doctest::Approx(fx.stable).epsilon(1e-10));
    }
    SUBCASE("700 steps at dt = 0.01 converge to the attractor") {
        const Trajectory t = euler_logistic(0.0, p, 0.01, 700);
        CHECK(t.steps() == 701);
        CHECK(std::fabs(t.final_value() - fx.stable) < 1e-6);
    }
    SUBCASE("beyond the repeller the solution blows up") {
        CHECK_THROWS_AS(euler_logistic(1.5, {1.0, 1.0, 0.0}, 0.05, 100000), DivergenceError);
    }
    SUBCASE("dt must be positive") {
        CHECK_THROWS_AS(euler_logistic(0.0, p, 0.0, 10), std::invalid_argument);
    }
}

TEST_CASE("c2_logistic") {
    SUBCASE("steady pair (x1, f x1 / a) is a fixed point") {
        const LogisticParams p = params_for_g2(0.1);
        const double x1 = c2_fixed_point(p);
        const Trajectory t = c2_logistic_from(x1, p.f * x1 / p.a, p, 0.01, 200);
        for (size_t s = 0; s < t.steps(); ++s) {
            CHECK(t.at(s, 0) == doctest::Approx(x1).epsilon(1e-12));
            CHECK(t.at(s, 1) == doctest::Approx(p.f * x1 / p.a).epsilon(1e-12));
        }
    }
    SUBCASE("700 steps at dt = 0.01 converge to the linear fixed point") {
        const LogisticParams p = params_for_g2(0.05);
        const Trajectory t = c2_logistic(0.0, p, 0.01, 700);
        CHECK(std::fabs(t.final_value(0) - c2_fixed_point(p)) < 1e-6);
    }
    SUBCASE("pure decay when f = 0") {
        const Trajectory t = c2_logistic(0.5, {1.0, 1.0, 0.0}, 0.01, 2000);
        CHECK(std::fabs(t.final_value(0)) < 1e-8);
        CHECK(std::fabs(t.final_value(1)) < 1e-8);
    }
    SUBCASE("x1 converges to the fixed point for in-basin starts") {
        const LogisticParams p = params_for_g2(0.15);
        for (double x0 : {-0.2, 0.0, 0.3, 0.6}) {
            const Trajectory t = c2_logistic(x0, p, 0.01, 4000);
            CHECK(t.final_value(0) == doctest::Approx(c2_fixed_point(p)).epsilon(1e-8));
        }
    }
}

TEST_CASE("carleman_k_logistic") {
    SUBCASE("K = 1 is plain exponential decay of the Euler map") {
        const double a = 0.8, dt = 0.02, x0 = 0.4;
        const Trajectory t = carleman_k_logistic(x0, a, 1.0, 1, dt, 50);
        for (size_t s = 0; s < t.steps(); ++s)
            CHECK(t.at(s) ==
                  doctest::Approx(x0 * std::pow(1.0 - a * dt, static_cast<double>(s)))
                      .epsilon(1e-13));
    }
    SUBCASE("b = 0 decouples the levels") {
        const double a = 0.5, dt = 0.01, x0 = 0.7;
        const Trajectory t = carleman_k_logistic(x0, a, 0.0, 4, dt, 40);
        for (size_t s = 0; s < t.steps(); ++s)
            for (int k = 1; k <= 4; ++k)
                CHECK(t.at(s, k - 1) ==
                      doctest::Approx(std::pow(x0, k) *
                                      std::pow(1.0 - k * a * dt, static_cast<double>(s)))
                          .epsilon(1e-12));
    }
    SUBCASE("truncation error decreases monotonically in K") {
        const double a = 1.0, b = 1.0, x0 = 0.3, dt = 5e-4;
        const int steps = 4000; // t in [0, 2]
        double err[5] = {};
        for (int K : {2, 3, 4}) {
            const Trajectory t = carleman_k_logistic(x0, a, b, K, dt, steps);
            double worst = 0.0;
            for (size_t s = 0; s < t.steps(); ++s)
                worst = std::max(worst, std::fabs(t.at(s, 0) - unforced_logistic_exact(
                                                                   x0, a, b, s * dt)));
            err[K] = worst;
        }
        CHECK(err[2] > err[3]);
        CHECK(err[3] > err[4]);
    }
    SUBCASE("K = 2 with f = 0 reproduces c2_logistic exactly") {
        const LogisticParams p{1.3, 0.7, 0.0};
        const Trajectory ck = carleman_k_logistic(0.4, p.a, p.b, 2, 0.01, 300);
        const Trajectory c2 = c2_logistic(0.4, p, 0.01, 300);
        REQUIRE(ck.steps() == c2.steps());
        for (size_t s = 0; s < ck.steps(); ++s) {
            CHECK(ck.at(s, 0) == c2.at(s, 0));
            CHECK(ck.at(s, 1) == c2.at(s, 1));
        }
    }
    SUBCASE("K must be at least 1") {
        CHECK_THROWS_AS(carleman_k_logistic(0.1, 1.0, 1.0, 0, 0.01, 10),
                        std::invalid_argument);
    }
}

TEST_CASE("time_average") {
    SUBCASE("tau = 0 is the identity") {
        const Trajectory t = euler_logistic(0.2, params_for_g2(0.1), 0.01, 50);
        const Trajectory avg = time_average(t, 0.0);
        CHECK(avg.data == t.data);
    }
    SUBCASE("constant trajectories are unchanged") {
        Trajectory t{0.1, 1, std::vector<double>(41, 2.5)};
        const Trajectory avg = time_average(t, 0.5);
        CHECK(avg.steps() == 41 - 10);
        for (size_t s = 0; s < avg.steps(); ++s)
            CHECK(avg.at(s) == doctest::Approx(2.5).epsilon(1e-15));
    }
    SUBCASE("full-period average of a sinusoid vanishes") {
        const double dt = kTwoPi / 1000.0;
        Trajectory t{dt, 1, {}};
        for (int s = 0; s <= 3000; ++s)
            t.data.push_back(std::sin(s * dt));
        const Trajectory avg = time_average(t, kTwoPi / 2.0); // half window = full period
        for (size_t s = 0; s < avg.steps(); ++s)
            CHECK(std::fabs(avg.at(s)) < 1e-12);
    }
    SUBCASE("window larger than the trajectory") {
        Trajectory t{0.1, 1, std::vector<double>(11, 1.0)};
        CHECK_THROWS_AS(time_average(t, 1.0), std::domain_error);
    }
}

TEST_CASE("filter_residual") {
    const double a = 1.0, b = 1.0, x0 = 0.3;
    auto exact_traj = [&](double dt, double tmax) {
        Trajectory t{dt, 1, {}};
        const int n = static_cast<int>(tmax / dt);
        for (int s = 0; s <= n; ++s)
            t.data.push_back(unforced_logistic_exact(x0, a, b, s * dt));
        return t;
    };
    SUBCASE("exact samples give pure discretization error, order ~ dt^2") {
        for (int k : {1, 2}) {
            const double r1 = filter_residual(exact_traj(0.02, 3.0), k, 0.2, a, b);
            const double r2 = filter_residual(exact_traj(0.01, 3.0), k, 0.2, a, b);
            CHECK(r1 < 1e-3);
            CHECK(r1 / r2 > 3.0); // second order would be 4.0
        }
    }
    SUBCASE("b = 0: pure exponentials, residual bounded by quadrature error") {
        const double dt = 0.01;
        Trajectory t{dt, 1, {}};
        for (int s = 0; s <= 300; ++s)
            t.data.push_back(0.7 * std::exp(-a * s * dt));
        CHECK(filter_residual(t, 1, 0.1, a, 0.0) < 1e-4);
    }
    SUBCASE("tau = 0, k = 1: the centered-difference defect of the raw samples") {
        const Trajectory t = exact_traj(0.01, 1.0);
        const double res = filter_residual(t, 1, 0.0, a, b);
        double expect = 0.0;
        for (size_t i = 1; i + 1 < t.steps(); ++i) {
            const double ddt = (t.at(i + 1) - t.at(i - 1)) / (2.0 * t.dt);
            const double rhs = -a * t.at(i) + b * t.at(i) * t.at(i);
            expect = std::max(expect, std::fabs(ddt - rhs));
        }
        CHECK(res == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("compare_expansions") {
    SUBCASE("g2 -> 0: both ratios approach 1") {
        const ExpansionRatios r = compare_expansions(1e-10);
        CHECK(r.exact_ratio == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(r.c2_ratio == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("g2 = 0.05") {
        const ExpansionRatios r = compare_expansions(0.05);
        CHECK(r.exact_ratio == doctest::Approx(1.0557280900008412).epsilon(1e-13));
        CHECK(r.c2_ratio == doctest::Approx(1.0526315789473684).epsilon(1e-13));
        // the gap is O(g^4) with an order-one coefficient
        const double coeff = (r.exact_ratio - r.c2_ratio) / (0.05 * 0.05);
        CHECK(coeff > 0.5);
        CHECK(coeff < 2.5);
    }
    SUBCASE("g2 = 0.2") {
        const ExpansionRatios r = compare_expansions(0.2);
        CHECK(r.exact_ratio == doctest::Approx(1.3819660112501053).epsilon(1e-13));
        CHECK(r.c2_ratio == doctest::Approx(1.25).epsilon(1e-13));
    }
    SUBCASE("agrees with the attractor route") {
        for (double g2 : {0.01, 0.1, 0.22}) {
            const LogisticParams p = params_for_g2(g2);
            const ExpansionRatios r = compare_expansions(g2);
            CHECK(attractors(p).stable / (p.f / p.a) ==
                  doctest::Approx(r.exact_ratio).epsilon(1e-12));
        }
    }
    SUBCASE("domain error at the attractor merge") {
        CHECK_THROWS_AS(compare_expansions(0.25), std::domain_error);
    }
}

TEST_CASE("ordering f/a <= c2 fixed point <= stable attractor") {
    for (double g2 = 0.01; g2 < 0.249; g2 += 0.02) {
        const LogisticParams p = params_for_g2(g2);
        const double linear = p.f / p.a;
        const double c2 = c2_fixed_point(p);
        const double exact = attractors(p).stable;
        CHECK(linear <= c2 + 1e-15);
        CHECK(c2 <= exact + 1e-15);
    }
}
