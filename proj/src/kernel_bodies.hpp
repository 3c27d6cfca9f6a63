// Shared per-row / per-node kernel bodies. Both backend translation units
// include this so the serial and OpenMP paths execute identical arithmetic.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "c2flow/grid.hpp"
#include "c2flow/linalg.hpp"

namespace c2flow::kernels::detail {

inline void dx_row(int n, double c, const double* row, double* o) {
    o[0] = (row[1] - row[n - 1]) * c;
    for (int ix = 1; ix < n - 1; ++ix)
        o[ix] = (row[ix + 1] - row[ix - 1]) * c;
    o[n - 1] = (row[0] - row[n - 2]) * c;
}

inline void dy_row(int n, double c, const double* north, const double* south, double* o) {
    for (int ix = 0; ix < n; ++ix)
        o[ix] = (north[ix] - south[ix]) * c;
}

inline void lap_wide_row(int n, double w, const double* row, const double* nn2,
                         const double* ss2, double* o) {
    for (int ix = 0; ix < n; ++ix) {
        const int e2 = ix + 2 < n ? ix + 2 : ix + 2 - n;
        const int w2 = ix - 2 >= 0 ? ix - 2 : ix - 2 + n;
        o[ix] = ((row[e2] - 2.0 * row[ix] + row[w2]) +
                 (nn2[ix] - 2.0 * row[ix] + ss2[ix])) * w;
    }
}

inline void nshj_node(size_t i, double dt, double nu, double cs2,
                      const double* rho, const double* chi, const double* ax, const double* ay,
                      const double* vx, const double* vy, const double* w, const double* divv,
                      const double* dxr, const double* dyr, const double* dxw, const double* dyw,
                      const double* fx, const double* fy,
                      double* rho_out, double* chi_out, double* ax_out, double* ay_out) {
    const double r = rho[i];
    const double u = vx[i], v = vy[i], om = w[i], dv = divv[i];
    const double rn = r - dt * (dxr[i] * u + dyr[i] * v + r * dv);
    const double cn = chi[i] + dt * (nu * dv - cs2 * (r - 1.0) - 0.5 * (u * u + v * v));
    const double axn = ax[i] + dt * (om * v - nu * dyw[i]) + dt * fx[i];
    const double ayn = ay[i] + dt * (nu * dxw[i] - om * u) + dt * fy[i];
    rho_out[i] = rn;
    chi_out[i] = cn;
    ax_out[i] = axn;
    ay_out[i] = ayn;
}

inline double ns_node(size_t i, double dt, double nu, const double* omega,
                      const double* vx, const double* vy,
                      const double* dxw, const double* dyw, const double* lapw,
                      const double* curlf) {
    return omega[i] + dt * (nu * lapw[i] - (vx[i] * dxw[i] + vy[i] * dyw[i]) + curlf[i]);
}

inline double spmv_row(const CsrMatrix& a, const double* x, int r) {
    double acc = 0.0;
    for (int e = a.row_ptr[r]; e < a.row_ptr[r + 1]; ++e)
        acc += a.val[e] * x[a.col[e]];
    return acc;
}

inline void a_times_m_row(const CsrMatrix& a, const double* m, double* srow, int r) {
    const size_t dim = static_cast<size_t>(a.dim);
    std::fill(srow, srow + dim, 0.0);
    for (int e = a.row_ptr[r]; e < a.row_ptr[r + 1]; ++e) {
        const double v = a.val[e];
        const double* mrow = m + static_cast<size_t>(a.col[e]) * dim;
        for (size_t j = 0; j < dim; ++j)
            srow[j] += v * mrow[j];
    }
}

inline void s_times_at_row(const CsrMatrix& a, const double* srow, double* trow) {
    const int dim = a.dim;
    for (int q = 0; q < dim; ++q) {
        double acc = 0.0;
        for (int e = a.row_ptr[q]; e < a.row_ptr[q + 1]; ++e)
            acc += a.val[e] * srow[a.col[e]];
        trow[q] = acc;
    }
}

inline double bilinear_row(const BilinearTensor& b, const double* m, int alpha) {
    const size_t dim = static_cast<size_t>(b.dim);
    double acc = 0.0;
    for (int e = b.row_ptr[alpha]; e < b.row_ptr[alpha + 1]; ++e)
        acc += b.coeff[e] * m[static_cast<size_t>(b.beta[e]) * dim + b.gamma[e]];
    return acc;
}

inline void rank_update_row(double* mrow, double cp, double fp,
                            const double* c, const double* f, int dim) {
    for (int q = 0; q < dim; ++q)
        mrow[q] += cp * f[q] + fp * c[q] + fp * f[q];
}

inline double row_max_abs(const double* v, size_t begin, size_t end) {
    double m = 0.0;
    for (size_t i = begin; i < end; ++i) {
        const double a = std::fabs(v[i]);
        if (a > m) m = a;
    }
    return m;
}

inline double row_asymmetry(const double* m, int dim, int p) {
    double worst = 0.0;
    for (int q = p + 1; q < dim; ++q) {
        const double d = std::fabs(m[static_cast<size_t>(p) * dim + q] -
                                   m[static_cast<size_t>(q) * dim + p]);
        if (d > worst) worst = d;
    }
    return worst;
}

inline double row_outer_residual_sumsq(const double* m, const double* u, int dim, int p) {
    const double up = u[p];
    const double* mrow = m + static_cast<size_t>(p) * dim;
    double acc = 0.0;
    for (int q = 0; q < dim; ++q) {
        const double d = mrow[q] - up * u[q];
        acc += d * d;
    }
    return acc;
}

} // namespace c2flow::kernels::detail
