#pragma once

#include <span>
#include <vector>

#include "c2flow/kernels.hpp"
#include "c2flow/linalg.hpp"
#include "c2flow/nshj.hpp"

namespace c2flow {

/// Field block order inside the composite state vector.
enum FieldId { kRho = 0, kChi = 1, kAx = 2, kAy = 3 };
inline constexpr int kNumFields = 4;

/// Index into the composite vector: flat = field * G + node, G = n^2.
struct CompositeIndex {
    int field = 0; // in {0: rho, 1: chi, 2: ax, 3: ay}
    int node = 0;  // in [0, G)

    int flat(int cells) const { return field * cells + node; }
    static CompositeIndex from_flat(int flat, int cells) { return {flat / cells, flat % cells}; }
};

/// The tensors of the one-step affine map
///   J(t+dt) = A J + B : (J (x) J) + F
/// assembled so that applying them to a flattened FluidState reproduces
/// step_nshj exactly (to round-off). b_op is stored symmetrized.
struct CarlemanOperators {
    CsrMatrix a_op;
    BilinearTensor b_op;
    std::vector<double> f_vec;
    GridSpec grid;
    double nu = 0.0;
    double cs2 = 0.0;
    double dt = 0.0;

    int dim() const { return kNumFields * grid.cells(); }
};

CarlemanOperators assemble_operators(const GridSpec& grid, const PhysicsParams& physics);

/// Lifted second-order state: the composite vector and the dense matrix that
/// evolves in place of J (x) J once the closure is applied.
struct C2State {
    std::vector<double> j1; // length 4G
    DenseMatrix j2;         // 4G x 4G, symmetric

    int dim() const { return static_cast<int>(j1.size()); }
};

std::vector<double> flatten(const FluidState& s);
FluidState unflatten(std::span<const double> j, const GridSpec& grid);

/// j1 = flatten(s), j2 = j1 j1^T.
C2State lift(const FluidState& s);

/// First-order block of the lifted state as four fields.
FluidState readout(const C2State& state, const GridSpec& grid);

/// Scratch buffers reused across steps: one extra dense matrix plus three
/// composite vectors. Peak dense storage is therefore the state matrix plus
/// this scratch matrix; nothing of size (4G)^2 x (4G)^2 is ever formed.
struct C2Workspace {
    DenseMatrix scratch;
    std::vector<double> au, bm, c;
    explicit C2Workspace(int dim)
        : scratch(dim), au(static_cast<size_t>(dim)), bm(static_cast<size_t>(dim)),
          c(static_cast<size_t>(dim)) {}
};

/// One step of the lifted linear system:
///   j1' = A j1 + B : j2 + F
///   j2' = A j2 A^T + c F^T + F c^T + F F^T,  c = A j1 + B : j2
/// The j1 update contracts B against the evolved j2 (never against j1 (x) j1,
/// which would reintroduce the nonlinearity). A j2 A^T runs as two
/// sparse-times-dense products through the scratch matrix.
void step_c2_inplace(C2State& state, const CarlemanOperators& ops, C2Workspace& ws,
                     Backend backend = Backend::parallel, long step_index = -1);

C2State step_c2(const C2State& state, const CarlemanOperators& ops,
                Backend backend = Backend::parallel);

/// || j2 - j1 j1^T ||_F / max(|j1|^2, tiny): how far the evolved second-order
/// block has drifted from the rank-one lift.
double closure_defect(const C2State& state, Backend backend = Backend::parallel);

} // namespace c2flow
