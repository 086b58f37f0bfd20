#pragma once

#include "dsc/chart.hpp"

namespace dsc {

/// Pointwise classical data of a space-like immersion: induced metric,
/// time-like unit normal, second fundamental form (h = <dn,dx> convention,
/// realized as h_ab = -<n, d2x/dua dub>), mean curvature, conformal factor,
/// orthonormal frame and Christoffel symbols. Jets are kept at the orders the
/// downstream invariants need.
struct PointFrame {
    int m = 0;
    VecD p;
    double umbilic_tol = 1e-9;

    std::vector<Jet> x;                // ambient components, chart order N
    std::vector<std::vector<Jet>> dx;  // dx[a] = d x / d u^a, order N-1
    Mat<Jet> gbar;                     // induced metric, order N-1
    std::vector<Jet> normal;           // unit time-like normal, order N-1
    Mat<Jet> h_coord;                  // order N-2
    Mat<Jet> S;                        // coord -> frame: e_i = sum_a S(a,i) d_a, order N-1
    Mat<Jet> h_frame;                  // order N-2
    Jet H;                             // order N-2
    Jet rho;                           // order N-2 (only if regular)
    Jet logrho;
    bool regular = false;

    MatD gbar0, gbar_inv0, S0, h_frame0;
    double H0 = 0.0, rho0 = 0.0;
    std::vector<MatD> gamma_bar;  // Christoffels of gbar at p: gamma_bar[c](a,b)
    VecD grad_logrho_frame;       // e_i(log rho)
    VecD grad_H_frame;            // e_i(H)
    MatD hess_logrho_frame;       // covariant Hessian of log rho in frame {e_i}
};

/// Compute the frame; `need_rho = false` skips the conformal factor so
/// umbilic configurations can still be probed for metric/normal data.
PointFrame compute_point_frame(const ImmersionChart& chart, const VecD& p, int order = 4,
                               bool need_rho = true);

MatD first_fundamental(const ImmersionChart& chart, const VecD& p);

struct SecondFundamental {
    MatD h_frame;
    double H;
};
SecondFundamental second_fundamental(const ImmersionChart& chart, const VecD& p);

double conformal_factor(const ImmersionChart& chart, const VecD& p);

std::vector<MatD> christoffels(const ImmersionChart& chart, const VecD& p);

MatD covariant_hessian_logrho(const ImmersionChart& chart, const VecD& p);

}  // namespace dsc
