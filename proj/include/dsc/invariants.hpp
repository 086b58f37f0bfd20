#pragma once

#include "dsc/firstorder.hpp"
#include "dsc/residual.hpp"

namespace dsc {

/// Rank-4 tensor in frame components, m^4 dense.
struct Tensor4 {
    int m = 0;
    VecD a;
    Tensor4() = default;
    explicit Tensor4(int m_) : m(m_), a(static_cast<std::size_t>(m_) * m_ * m_ * m_, 0.0) {}
    double& at(int i, int j, int k, int l) {
        return a[((static_cast<std::size_t>(i) * m + j) * m + k) * m + l];
    }
    double at(int i, int j, int k, int l) const {
        return a[((static_cast<std::size_t>(i) * m + j) * m + k) * m + l];
    }
};

/// Curvature data in an orthonormal frame; components follow the sign
/// convention in which a space of constant curvature c has
/// R_{ijkl} = c (delta_il delta_jk - delta_ik delta_jl) and
/// Ric_{jl} = -sum_i R_{ijil}, so kappa equals c there.
struct CurvatureFrame {
    Tensor4 R;
    MatD ricci;
    double kappa = 0.0;
};

/// Christoffel symbols of a jet-valued metric as jets one order down;
/// gamma[c](a,b) multiplies d_c in nabla_{d_a} d_b.
std::vector<Mat<Jet>> christoffel_jets(const Mat<Jet>& metric);
std::vector<MatD> christoffel_values(const Mat<Jet>& metric);

/// Curvature of a jet metric (order >= 2) in the orthonormal frame whose
/// i-th vector has coordinate components frame_cols(.,i).
CurvatureFrame curvature_in_frame(const Mat<Jet>& metric, const MatD& frame_cols);

/// Moving-frame data (Y, N, Y_i, xi) of the conformal position lift at a
/// point, plus the scalar identity residuals that only need one point.
struct MovingFramePoint {
    SignatureMetric amb;  // R^{m+3}_2
    VecD Y, N, xi;
    std::vector<VecD> Yi;
    double res_DeltaY_Y = 0.0, res_YY = 0.0, res_NN = 0.0, res_YN = 0.0, res_xixi = 0.0;
};

/// Everything pointwise: the conformal invariants in the g-orthonormal frame
/// {E_i = rho^-1 e_i}, the conformal metric with its curvature, and the
/// moving frame with the jet-exact second-derivative pairings.
struct InvariantPoint {
    int m = 0;
    VecD p;
    double rho = 0.0, H = 0.0;
    MatD B;            // conformal second fundamental form
    VecD Phi;          // conformal form
    bool has_A = false;
    MatD A_direct;     // Blaschke tensor, pointwise formula
    MatD A_ricci;      // Blaschke tensor, curvature route (m >= 3)
    MatD g_coord;      // conformal metric in chart coordinates
    MatD E;            // E(a,i): coordinate components of E_i
    MatD W;            // W(i,a): coframe omega^i components; W = E^{-1}
    std::vector<MatD> gamma_g;  // Christoffels of g at p
    CurvatureFrame curv;
    std::vector<MatD> omega_g;  // omega_g[j](i,k) = g(nabla_{E_j} E_i, E_k)
    MovingFramePoint mf;
    MatD A_from_Y;  // -<Y_ij, N>
    MatD B_from_Y;  // -<Y_ij, xi>

    MatD para_blaschke(double lambda) const;
};

/// B_ij = rho^-1 (h_ij - H delta_ij).
MatD conformal_B(const MatD& h_frame, double H, double rho);

/// Phi_i = -rho^-2 [ sum_j (h_ij - H delta_ij) e_j(log rho) + e_i(H) ].
VecD conformal_form_Phi(const MatD& h_frame, double H, double rho, const VecD& grad_logrho,
                        const VecD& grad_H);

/// Blaschke tensor from the pointwise formula (hessian route).
MatD blaschke_direct(const MatD& hess_logrho, const VecD& grad_logrho, const MatD& h_frame,
                     double H, double rho);

/// Blaschke tensor from the Ricci curvature of g (m >= 3).
MatD blaschke_from_ricci(const MatD& ricci, const MatD& B, double kappa);

InvariantPoint compute_invariants(const ImmersionChart& chart, const VecD& p, int order = 4);

/// Light-weight moving frame evaluation used by the finite-difference rows.
MovingFramePoint moving_frame_point(const ImmersionChart& chart, const VecD& p, int order = 4);

/// Scalar identities plus the four structure-equation rows, the latter
/// checked by Richardson finite differences of the frame fields with local
/// step `fd_step` along the frame directions.
ResidualReport moving_frame_check(const ImmersionChart& chart, const VecD& p, double fd_step = 1e-3,
                                  int order = 4);

}  // namespace dsc
