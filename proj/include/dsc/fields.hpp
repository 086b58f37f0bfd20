#pragma once

#include "dsc/invariants.hpp"

namespace dsc {

/// Invariants evaluated over a grid, with the tensor fields also expressed in
/// the fixed coordinate basis so grid finite differences are frame-safe.
struct FieldBundle {
    ImmersionChart chart;
    Grid grid;
    int order = 4;
    std::vector<InvariantPoint> pts;
    std::vector<MatD> B_coord;
    std::vector<MatD> A_coord;
    std::vector<VecD> Phi_coord;

    MatD D_coord(std::size_t idx, double lambda) const {
        MatD d = A_coord[idx];
        for (std::size_t i = 0; i < d.a.size(); ++i) d.a[i] += lambda * B_coord[idx].a[i];
        return d;
    }
    MatD D_frame(std::size_t idx, double lambda) const { return pts[idx].para_blaschke(lambda); }
};

FieldBundle sweep_invariants(const ImmersionChart& chart, const Grid& grid, int order = 4);

enum class TensorField { B, A, D, Phi };

/// Covariant derivative of an invariant field w.r.t. the conformal metric,
/// by Richardson-extrapolated central differences of the coordinate
/// components (step = grid spacing) corrected with the Christoffel symbols
/// of g, then expressed in the frame {E_i}. comp holds m^3 values T_{ij,k}
/// per interior point (m^2 values Phi_{i,j} for Phi).
struct CovTensorField {
    int m = 0;
    bool is_one_form = false;
    std::vector<std::size_t> interior;  // flat grid indices
    std::vector<VecD> comp;
    double max_abs = 0.0;

    double at3(std::size_t pt, int i, int j, int k) const {
        return comp[pt][(static_cast<std::size_t>(i) * m + j) * m + k];
    }
    double at2(std::size_t pt, int i, int j) const {
        return comp[pt][static_cast<std::size_t>(i) * m + j];
    }
};

CovTensorField covariant_derivative(const FieldBundle& fb, TensorField which, double lambda = 0.0);

/// Named residuals of the integrability conditions; FD-based rows use the
/// interior points, the Gauss-equation row is pointwise everywhere.
ResidualReport integrability_residuals(const FieldBundle& fb, const std::vector<double>& lambdas);

/// Pointwise pipeline sanity rows over the whole grid: trace identities,
/// |B|^2, the two Blaschke routes, tr A vs kappa, and the first Bianchi
/// identity.
ResidualReport pointwise_identity_residuals(const FieldBundle& fb);

double phi_max(const FieldBundle& fb);

}  // namespace dsc
