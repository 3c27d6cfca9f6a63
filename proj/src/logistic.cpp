#include "c2flow/logistic.hpp"

#include <cmath>
#include <stdexcept>

#include "c2flow/errors.hpp"

namespace c2flow {

namespace {

constexpr double kRunawayThreshold = 1e12;

double ipow(double x, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i)
        r *= x;
    return r;
}

void check_positive_dt(double dt) {
    if (!(dt > 0.0))
        throw std::invalid_argument("dt must be positive");
}

} // namespace

Attractors attractors(const LogisticParams& p) {
    const double g2 = p.g2();
    if (!(g2 < 0.25))
        throw std::domain_error("attractors: g^2 >= 1/4, solution runs away");
    const double root = std::sqrt(1.0 - 4.0 * g2);
    const double half_capacity = p.a / (2.0 * p.b);
    return {half_capacity * (1.0 - root), half_capacity * (1.0 + root)};
}

double c2_fixed_point(const LogisticParams& p) {
    const double g2 = p.g2();
    if (!(g2 < 1.0))
        throw std::domain_error("c2_fixed_point: pole at g^2 = 1");
    return (p.f / p.a) / (1.0 - g2);
}

Trajectory euler_logistic(double x0, const LogisticParams& p, double dt, int steps) {
    check_positive_dt(dt);
    Trajectory traj{dt, 1, {}};
    traj.data.reserve(static_cast<size_t>(steps) + 1);
    double x = x0;
    traj.data.push_back(x);
    for (int s = 0; s < steps; ++s) {
        x += dt * (-p.a * x + p.b * x * x + p.f);
        if (!std::isfinite(x) || std::fabs(x) > kRunawayThreshold)
            throw DivergenceError("logistic x", s + 1);
        traj.data.push_back(x);
    }
    return traj;
}

Trajectory c2_logistic(double x0, const LogisticParams& p, double dt, int steps) {
    return c2_logistic_from(x0, x0 * x0, p, dt, steps);
}

Trajectory c2_logistic_from(double x1_0, double x2_0, const LogisticParams& p, double dt,
                            int steps) {
    check_positive_dt(dt);
    Trajectory traj{dt, 2, {}};
    traj.data.reserve(2 * (static_cast<size_t>(steps) + 1));
    double x1 = x1_0;
    double x2 = x2_0;
    traj.data.push_back(x1);
    traj.data.push_back(x2);
    for (int s = 0; s < steps; ++s) {
        const double nx1 = x1 + dt * (-p.a * x1 + p.b * x2 + p.f);
        const double nx2 = x2 + dt * (-2.0 * p.a * x2 + 2.0 * p.f * x1);
        x1 = nx1;
        x2 = nx2;
        if (!std::isfinite(x1) || !std::isfinite(x2) ||
            std::fabs(x1) > kRunawayThreshold || std::fabs(x2) > kRunawayThreshold)
            throw DivergenceError("carleman x", s + 1);
        traj.data.push_back(x1);
        traj.data.push_back(x2);
    }
    return traj;
}

Trajectory carleman_k_logistic(double x0, double a, double b, int K, double dt, int steps) {
    check_positive_dt(dt);
    if (K < 1)
        throw std::invalid_argument("carleman_k_logistic: K must be >= 1");
    Trajectory traj{dt, K, {}};
    traj.data.reserve(static_cast<size_t>(K) * (static_cast<size_t>(steps) + 1));
    std::vector<double> x(static_cast<size_t>(K));
    for (int k = 0; k < K; ++k)
        x[k] = ipow(x0, k + 1);
    traj.data.insert(traj.data.end(), x.begin(), x.end());
    std::vector<double> next(x.size());
    for (int s = 0; s < steps; ++s) {
        for (int k = 0; k < K; ++k) {
            const double higher = k + 1 < K ? x[k + 1] : 0.0; // closure x_{K+1} = 0
            next[k] = x[k] + dt * (k + 1) * (-a * x[k] + b * higher);
        }
        x.swap(next);
        for (int k = 0; k < K; ++k)
            if (!std::isfinite(x[k]) || std::fabs(x[k]) > kRunawayThreshold)
                throw DivergenceError("carleman x" + std::to_string(k + 1), s + 1);
        traj.data.insert(traj.data.end(), x.begin(), x.end());
    }
    return traj;
}

Trajectory time_average(const Trajectory& traj, double tau) {
    if (tau < 0.0)
        throw std::domain_error("time_average: tau must be >= 0");
    if (!(traj.dt > 0.0))
        throw std::invalid_argument("time_average: trajectory has no time spacing");
    const long m = std::lround(tau / traj.dt);
    if (m == 0)
        return traj;
    const long len = static_cast<long>(traj.steps());
    if (2 * m + 1 > len)
        throw std::domain_error("time_average: window larger than trajectory");
    const int dim = traj.dim;
    Trajectory out{traj.dt, dim, {}};
    out.data.reserve(static_cast<size_t>(len - 2 * m) * dim);
    for (long i = m; i < len - m; ++i) {
        for (int c = 0; c < dim; ++c) {
            double acc = 0.5 * (traj.at(i - m, c) + traj.at(i + m, c));
            for (long j = i - m + 1; j < i + m; ++j)
                acc += traj.at(j, c);
            out.data.push_back(acc / (2.0 * m));
        }
    }
    return out;
}

double filter_residual(const Trajectory& x_traj, int k, double tau, double a, double b) {
    if (x_traj.dim != 1)
        throw std::invalid_argument("filter_residual: expects a scalar trajectory");
    if (k < 1)
        throw std::invalid_argument("filter_residual: k must be >= 1");
    const size_t len = x_traj.steps();
    Trajectory pk{x_traj.dt, 1, {}}, pk1{x_traj.dt, 1, {}};
    pk.data.reserve(len);
    pk1.data.reserve(len);
    for (size_t i = 0; i < len; ++i) {
        const double x = x_traj.at(i);
        pk.data.push_back(ipow(x, k));
        pk1.data.push_back(ipow(x, k + 1));
    }
    const Trajectory xk = time_average(pk, tau);
    const Trajectory xk1 = time_average(pk1, tau);
    const long n = static_cast<long>(xk.steps());
    if (n < 3)
        throw std::domain_error("filter_residual: too few samples after averaging");
    double worst = 0.0;
    for (long i = 1; i < n - 1; ++i) {
        const double ddt = (xk.at(i + 1) - xk.at(i - 1)) / (2.0 * xk.dt);
        const double rhs = k * (-a * xk.at(i) + b * xk1.at(i));
        worst = std::max(worst, std::fabs(ddt - rhs));
    }
    return worst;
}

ExpansionRatios compare_expansions(double g2) {
    if (!(g2 < 0.25))
        throw std::domain_error("compare_expansions: g^2 >= 1/4");
    // 2 / (1 + sqrt(1 - 4 g^2)) == (1 - sqrt(1 - 4 g^2)) / (2 g^2) without the
    // small-g^2 cancellation
    const double exact = 2.0 / (1.0 + std::sqrt(1.0 - 4.0 * g2));
    return {exact, 1.0 / (1.0 - g2)};
}

} // namespace c2flow
