// OpenMP backend. Parallel loops only range over independent output rows or
// elements; reductions are either exact (max, &&) or summed in fixed row
// order, so results are bit-identical to the serial backend for any thread
// count.
#include "c2flow/kernels.hpp"

#include <cmath>
#include <vector>

#include "kernel_bodies.hpp"

namespace c2flow::kernels {

namespace d = detail;

void dx(const GridSpec& g, const double* f, double* out) {
    const int n = g.n;
    const double c = 1.0 / (2.0 * g.spacing);
#pragma omp parallel for schedule(static)
    for (int iy = 0; iy < n; ++iy)
        d::dx_row(n, c, f + static_cast<size_t>(iy) * n, out + static_cast<size_t>(iy) * n);
}

void dy(const GridSpec& g, const double* f, double* out) {
    const int n = g.n;
    const double c = 1.0 / (2.0 * g.spacing);
#pragma omp parallel for schedule(static)
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
#pragma omp parallel for schedule(static)
    for (int iy = 0; iy < n; ++iy) {
        const int y2n = g.wrap(iy + 2);
        const int y2s = g.wrap(iy - 2);
        d::lap_wide_row(n, w, f + static_cast<size_t>(iy) * n,
                        f + static_cast<size_t>(y2n) * n, f + static_cast<size_t>(y2s) * n,
                        out + static_cast<size_t>(iy) * n);
    }
}

void add(const double* a, const double* b, double* out, size_t len) {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < static_cast<long>(len); ++i)
        out[i] = a[i] + b[i];
}

void negate(const double* a, double* out, size_t len) {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < static_cast<long>(len); ++i)
        out[i] = -a[i];
}

void nshj_update(const GridSpec& g, double dt, double nu, double cs2,
                 const double* rho, const double* chi, const double* ax, const double* ay,
                 const double* vx, const double* vy, const double* w, const double* divv,
                 const double* dxr, const double* dyr, const double* dxw, const double* dyw,
                 const double* fx, const double* fy,
                 double* rho_out, double* chi_out, double* ax_out, double* ay_out) {
    const long cells = g.cells();
#pragma omp parallel for schedule(static)
    for (long i = 0; i < cells; ++i)
        d::nshj_node(static_cast<size_t>(i), dt, nu, cs2, rho, chi, ax, ay, vx, vy, w, divv,
                     dxr, dyr, dxw, dyw, fx, fy, rho_out, chi_out, ax_out, ay_out);
}

void ns_update(double dt, double nu, const double* omega,
               const double* vx, const double* vy,
               const double* dxw, const double* dyw, const double* lapw,
               const double* curlf, double* out, size_t len) {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < static_cast<long>(len); ++i)
        out[i] = d::ns_node(static_cast<size_t>(i), dt, nu, omega, vx, vy, dxw, dyw, lapw, curlf);
}

void spmv(const CsrMatrix& a, const double* x, double* y) {
#pragma omp parallel for schedule(static)
    for (int r = 0; r < a.dim; ++r)
        y[r] = d::spmv_row(a, x, r);
}

void sparse_dense(const CsrMatrix& a, const double* m, double* s) {
    const size_t dim = static_cast<size_t>(a.dim);
#pragma omp parallel for schedule(static)
    for (int r = 0; r < a.dim; ++r)
        d::a_times_m_row(a, m, s + static_cast<size_t>(r) * dim, r);
}

void dense_sparse_t(const CsrMatrix& a, const double* s, double* t) {
    const size_t dim = static_cast<size_t>(a.dim);
#pragma omp parallel for schedule(static)
    for (int p = 0; p < a.dim; ++p)
        d::s_times_at_row(a, s + static_cast<size_t>(p) * dim, t + static_cast<size_t>(p) * dim);
}

void bilinear_contract(const BilinearTensor& b, const double* m, double* w) {
#pragma omp parallel for schedule(static)
    for (int alpha = 0; alpha < b.dim; ++alpha)
        w[alpha] = d::bilinear_row(b, m, alpha);
}

void symmetric_rank_update(double* m, const double* c, const double* f, int dim) {
#pragma omp parallel for schedule(static)
    for (int p = 0; p < dim; ++p)
        d::rank_update_row(m + static_cast<size_t>(p) * dim, c[p], f[p], c, f, dim);
}

double max_abs(const double* v, size_t len) {
    double m = 0.0;
#pragma omp parallel for schedule(static) reduction(max : m)
    for (long i = 0; i < static_cast<long>(len); ++i) {
        const double a = std::fabs(v[i]);
        if (a > m) m = a;
    }
    return m;
}

bool all_finite(const double* v, size_t len) {
    bool ok = true;
#pragma omp parallel for schedule(static) reduction(&& : ok)
    for (long i = 0; i < static_cast<long>(len); ++i)
        ok = ok && std::isfinite(v[i]);
    return ok;
}

double max_abs_asymmetry(const double* m, int dim) {
    double worst = 0.0;
#pragma omp parallel for schedule(static) reduction(max : worst)
    for (int p = 0; p < dim; ++p) {
        const double r = d::row_asymmetry(m, dim, p);
        if (r > worst) worst = r;
    }
    return worst;
}

double outer_residual_sumsq(const double* m, const double* u, int dim) {
    std::vector<double> partial(static_cast<size_t>(dim));
#pragma omp parallel for schedule(static)
    for (int p = 0; p < dim; ++p)
        partial[p] = d::row_outer_residual_sumsq(m, u, dim, p);
    double acc = 0.0;
    for (int p = 0; p < dim; ++p)
        acc += partial[p];
    return acc;
}

} // namespace c2flow::kernels
