#pragma once

#include <span>
#include <vector>

namespace c2flow {

/// Forced logistic decay  x' = -a x + b x^2 + f.
struct LogisticParams {
    double a = 1.0; // decay rate, > 0
    double b = 1.0; // nonlinearity, > 0
    double f = 0.0; // constant forcing, >= 0

    /// g^2 = b f / a^2: growth (nonlinearity + forcing) versus decay.
    double g2() const { return b * f / (a * a); }
    /// Capacity of the force-free growing logistic.
    double capacity() const { return a / b; }
};

/// Uniformly sampled solution values; dim components per step.
struct Trajectory {
    double dt = 0.0;
    int dim = 1;
    std::vector<double> data; // step-major, length = steps() * dim

    size_t steps() const { return dim > 0 ? data.size() / static_cast<size_t>(dim) : 0; }
    double at(size_t step, int comp = 0) const {
        return data[step * static_cast<size_t>(dim) + static_cast<size_t>(comp)];
    }
    std::span<const double> row(size_t step) const {
        return {data.data() + step * static_cast<size_t>(dim), static_cast<size_t>(dim)};
    }
    double final_value(int comp = 0) const { return at(steps() - 1, comp); }
};

struct Attractors {
    double stable;   // (a/2b)(1 - sqrt(1 - 4 g^2))
    double unstable; // (a/2b)(1 + sqrt(1 - 4 g^2))
};

/// Both fixed points of the forced logistic. Requires g^2 < 1/4; beyond that
/// the solution runs away and a domain_error is thrown.
Attractors attractors(const LogisticParams& p);

/// Steady state x1 of the K=2 Carleman system: (f/a) / (1 - g^2).
/// Requires g^2 < 1 (pole).
double c2_fixed_point(const LogisticParams& p);

/// Explicit Euler march of the forced logistic. The returned trajectory
/// includes the initial value, so it holds steps+1 entries.
Trajectory euler_logistic(double x0, const LogisticParams& p, double dt, int steps);

/// Explicit Euler march of the K=2 Carleman system
///   x1' = -a x1 + b x2 + f,   x2' = -2 a x2 + 2 f x1
/// from the lifted initial state (x0, x0^2).
Trajectory c2_logistic(double x0, const LogisticParams& p, double dt, int steps);
/// Same system from an arbitrary (x1, x2) start, e.g. the steady pair
/// (x1, f x1 / a).
Trajectory c2_logistic_from(double x1_0, double x2_0, const LogisticParams& p, double dt,
                            int steps);

/// Order-K Carleman truncation of the unforced logistic,
///   x_k' = k (-a x_k + b x_{k+1}),  x_{K+1} = 0,
/// from the initial state (x0, x0^2, ..., x0^K).
Trajectory carleman_k_logistic(double x0, double a, double b, int K, double dt, int steps);

/// Sliding-window mean over [t - tau, t + tau] by trapezoidal quadrature on
/// the stored samples. tau is taken to the nearest whole number of samples;
/// the output keeps only the instants where the full window fits (tau = 0
/// returns the input unchanged). Throws domain_error when the window exceeds
/// the trajectory.
Trajectory time_average(const Trajectory& traj, double tau);

/// Max over valid instants of |dX_k/dt - k(-a X_k + b X_{k+1})| where
/// X_k is the time average of the k-th power of a scalar trajectory and the
/// derivative is a centered difference. For samples of the unforced logistic
/// the identity holds in the continuum, so the residual is pure
/// discretization error.
double filter_residual(const Trajectory& x_traj, int k, double tau, double a, double b);

struct ExpansionRatios {
    double exact_ratio; // x_stable / (f/a) = (1 - sqrt(1 - 4 g^2)) / (2 g^2)
    double c2_ratio;    // 1 / (1 - g^2)
};

/// Closed-form steady-state ratios (no series truncation). Requires g^2 < 1/4.
ExpansionRatios compare_expansions(double g2);

} // namespace c2flow
