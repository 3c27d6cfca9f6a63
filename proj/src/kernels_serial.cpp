// Serial reference backend: the same row bodies as the OpenMP kernels,
// driven by plain loops. Kept for testing and for the benchmark baseline.
#include "c2flow/kernels.hpp"

#include <cmath>
#include <vector>

#include "kernel_bodies.hpp"

namespace c2flow::kernels::serial {

namespace d = detail;

void dx(const GridSpec& g, const double* f, double* out) {
    const int n = g.n;
    const double c = 1.0 / (2.0 * g.spacing);
    for (int iy = 0; iy < n; ++iy)
        d::dx_row(n, c, f + static_cast<size_t>(iy) * n, out + static_cast<size_t>(iy) * n);
}

void dy(const GridSpec& g, const double* f, double* out) {
    const int n = g.n;
    const double c = 1.0 / (2.0 * g.spacing);
    for (int iy = 0; iy < n; ++iy) {
        const int yn = iy + 1 < n ? iy + 1 : 0;
        const int ys = iy - 1 >= 0 ? iy - 1 : n - 1;
        d::dy_row(n, c, f + static_cast<size_t>(yn) * n, f + static_cast<size_t>(ys) * n,
                  out + static_cast<size_t>(iy) * n);
    }
}

void laplace_wide(const GridSpec& g, const double* f, double* out) {
    const int n = g.n;
    const double w = 1.0 / (4.0 * g.spacing * g.spacing);
    for (int iy = 0; iy < n; ++iy) {
        const int y2n = g.wrap(iy + 2);
        const int y2s = g.wrap(iy - 2);
        d::lap_wide_row(n, w, f + static_cast<size_t>(iy) * n,
                        f + static_cast<size_t>(y2n) * n, f + static_cast<size_t>(y2s) * n,
                        out + static_cast<size_t>(iy) * n);
    }
}

void add(const double* a, const double* b, double* out, size_t len) {
    for (size_t i = 0; i < len; ++i)
        out[i] = a[i] + b[i];
}

void negate(const double* a, double* out, size_t len) {
    for (size_t i = 0; i < len; ++i)
        out[i] = -a[i];
}

void nshj_update(const GridSpec& g, double dt, double nu, double cs2,
                 const double* rho, const double* chi, const double* ax, const double* ay,
                 const double* vx, const double* vy, const double* w, const double* divv,
                 const double* dxr, const double* dyr, const double* dxw, const double* dyw,
                 const double* fx, const double* fy,
                 double* rho_out, double* chi_out, double* ax_out, double* ay_out) {
    const size_t cells = static_cast<size_t>(g.cells());
    for (size_t i = 0; i < cells; ++i)
        d::nshj_node(i, dt, nu, cs2, rho, chi, ax, ay, vx, vy, w, divv,
                     dxr, dyr, dxw, dyw, fx, fy, rho_out, chi_out, ax_out, ay_out);
}

void ns_update(double dt, double nu, const double* omega,
               const double* vx, const double* vy,
               const double* dxw, const double* dyw, const double* lapw,
               const double* curlf, double* out, size_t len) {
    for (size_t i = 0; i < len; ++i)
        out[i] = d::ns_node(i, dt, nu, omega, vx, vy, dxw, dyw, lapw, curlf);
}

void spmv(const CsrMatrix& a, const double* x, double* y) {
    for (int r = 0; r < a.dim; ++r)
        y[r] = d::spmv_row(a, x, r);
}

void sparse_dense(const CsrMatrix& a, const double* m, double* s) {
    const size_t dim = static_cast<size_t>(a.dim);
    for (int r = 0; r < a.dim; ++r)
        d::a_times_m_row(a, m, s + static_cast<size_t>(r) * dim, r);
}

void dense_sparse_t(const CsrMatrix& a, const double* s, double* t) {
    const size_t dim = static_cast<size_t>(a.dim);
    for (int p = 0; p < a.dim; ++p)
        d::s_times_at_row(a, s + static_cast<size_t>(p) * dim, t + static_cast<size_t>(p) * dim);
}

void bilinear_contract(const BilinearTensor& b, const double* m, double* w) {
    for (int alpha = 0; alpha < b.dim; ++alpha)
        w[alpha] = d::bilinear_row(b, m, alpha);
}

void symmetric_rank_update(double* m, const double* c, const double* f, int dim) {
    for (int p = 0; p < dim; ++p)
        d::rank_update_row(m + static_cast<size_t>(p) * dim, c[p], f[p], c, f, dim);
}

double max_abs(const double* v, size_t len) {
    return d::row_max_abs(v, 0, len);
}

bool all_finite(const double* v, size_t len) {
    for (size_t i = 0; i < len; ++i)
        if (!std::isfinite(v[i]))
            return false;
    return true;
}

double max_abs_asymmetry(const double* m, int dim) {
    double worst = 0.0;
    for (int p = 0; p < dim; ++p) {
        const double r = d::row_asymmetry(m, dim, p);
        if (r > worst) worst = r;
    }
    return worst;
}

double outer_residual_sumsq(const double* m, const double* u, int dim) {
    double acc = 0.0;
    for (int p = 0; p < dim; ++p)
        acc += d::row_outer_residual_sumsq(m, u, dim, p);
    return acc;
}

} // namespace c2flow::kernels::serial
