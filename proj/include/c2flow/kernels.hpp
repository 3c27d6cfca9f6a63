#pragma once

#include <cstddef>

#include "c2flow/grid.hpp"
#include "c2flow/linalg.hpp"

namespace c2flow {

/// Which kernel implementation a solver routes through. The OpenMP kernels
/// parallelize over independent output elements only, so both backends
/// produce bit-identical results; the serial ones are the reference the
/// tests and the benchmark compare against.
enum class Backend { parallel, serial };

namespace kernels {

// ---- stencil sweeps --------------------------------------------------------

void dx(const GridSpec& g, const double* f, double* out);
void dy(const GridSpec& g, const double* f, double* out);
/// Composition DxDx + DyDy (centered first derivative applied twice).
void laplace_wide(const GridSpec& g, const double* f, double* out);

// ---- elementwise helpers ---------------------------------------------------

void add(const double* a, const double* b, double* out, size_t len);
void negate(const double* a, double* out, size_t len);

/// One explicit Euler update of the four NSHJ fields. All cross-node
/// information comes in through the precomputed derivative planes, so the
/// update is pointwise and may run in place (outputs aliasing inputs).
void nshj_update(const GridSpec& g, double dt, double nu, double cs2,
                 const double* rho, const double* chi, const double* ax, const double* ay,
                 const double* vx, const double* vy, const double* w, const double* divv,
                 const double* dxr, const double* dyr, const double* dxw, const double* dyw,
                 const double* fx, const double* fy,
                 double* rho_out, double* chi_out, double* ax_out, double* ay_out);

/// Explicit Euler update of the vorticity transport equation.
void ns_update(double dt, double nu, const double* omega,
               const double* vx, const double* vy,
               const double* dxw, const double* dyw, const double* lapw,
               const double* curlf, double* out, size_t len);

// ---- lifted-state linear algebra -------------------------------------------

/// y = A x
void spmv(const CsrMatrix& a, const double* x, double* y);
/// S = A M (M, S dense dim x dim, row-major)
void sparse_dense(const CsrMatrix& a, const double* m, double* s);
/// T = S A^T; T must not alias S.
void dense_sparse_t(const CsrMatrix& a, const double* s, double* t);
/// w[alpha] = sum_entries coeff * m(beta, gamma)
void bilinear_contract(const BilinearTensor& b, const double* m, double* w);
/// M += c f^T + f c^T + f f^T
void symmetric_rank_update(double* m, const double* c, const double* f, int dim);

// ---- reductions (order-independent or fixed-order, hence deterministic) ----

double max_abs(const double* v, size_t len);
bool all_finite(const double* v, size_t len);
double max_abs_asymmetry(const double* m, int dim);
/// sum over all (p, q) of (m[p,q] - u[p] u[q])^2, row partials summed in order
double outer_residual_sumsq(const double* m, const double* u, int dim);

namespace serial {

void dx(const GridSpec& g, const double* f, double* out);
void dy(const GridSpec& g, const double* f, double* out);
void laplace_wide(const GridSpec& g, const double* f, double* out);
void add(const double* a, const double* b, double* out, size_t len);
void negate(const double* a, double* out, size_t len);
void nshj_update(const GridSpec& g, double dt, double nu, double cs2,
                 const double* rho, const double* chi, const double* ax, const double* ay,
                 const double* vx, const double* vy, const double* w, const double* divv,
                 const double* dxr, const double* dyr, const double* dxw, const double* dyw,
                 const double* fx, const double* fy,
                 double* rho_out, double* chi_out, double* ax_out, double* ay_out);
void ns_update(double dt, double nu, const double* omega,
               const double* vx, const double* vy,
               const double* dxw, const double* dyw, const double* lapw,
               const double* curlf, double* out, size_t len);
void spmv(const CsrMatrix& a, const double* x, double* y);
void sparse_dense(const CsrMatrix& a, const double* m, double* s);
void dense_sparse_t(const CsrMatrix& a, const double* s, double* t);
void bilinear_contract(const BilinearTensor& b, const double* m, double* w);
void symmetric_rank_update(double* m, const double* c, const double* f, int dim);
double max_abs(const double* v, size_t len);
bool all_finite(const double* v, size_t len);
double max_abs_asymmetry(const double* m, int dim);
double outer_residual_sumsq(const double* m, const double* u, int dim);

} // namespace serial
} // namespace kernels
} // namespace c2flow
