#include "dsc/invariants.hpp"

#include <cmath>

namespace dsc {

namespace {

void require_unit_de_sitter(const ImmersionChart& chart) {
    require(chart.ambient.kind == AmbientKind::DeSitter && std::abs(chart.ambient.radius - 1.0) < 1e-14,
            "conformal invariants are computed for charts into the unit de Sitter space; "
            "lift other space forms first");
}

}  // namespace

std::vector<Mat<Jet>> christoffel_jets(const Mat<Jet>& metric) {
    const int m = metric.r;
    const int q = metric(0, 0).order();
    require(q >= 1, "christoffel_jets: metric jets need order >= 1");
    const Jet z = zero_like(metric(0, 0)).truncated(q - 1);
    // metric derivatives (order q-1)
    std::vector<Mat<Jet>> dg(m, Mat<Jet>(m, m, z));
    for (int c = 0; c < m; ++c)
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) dg[c](a, b) = metric(a, b).derivative(c);
    // inverse metric at order q-1
    Mat<Jet> gt(m, m, z);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) gt(a, b) = metric(a, b).truncated(q - 1);
    Mat<Jet> id(m, m, z);
    for (int a = 0; a < m; ++a) id(a, a) = one_like(z);
    Mat<Jet> ginv = solve_linear(gt, id);

    std::vector<Mat<Jet>> gamma(m, Mat<Jet>(m, m, z));
    for (int c = 0; c < m; ++c)
        for (int a = 0; a < m; ++a)
            for (int b = a; b < m; ++b) {
                Jet s = z;
                for (int d = 0; d < m; ++d)
                    s = s + ginv(c, d) * (dg[a](d, b) + dg[b](d, a) - dg[d](a, b));
                s = s * 0.5;
                gamma[c](a, b) = s;
                gamma[c](b, a) = s;
            }
    return gamma;
}

std::vector<MatD> christoffel_values(const Mat<Jet>& metric) {
    auto gj = christoffel_jets(metric);
    std::vector<MatD> out(gj.size(), MatD(metric.r, metric.r, 0.0));
    for (std::size_t c = 0; c < gj.size(); ++c)
        for (int a = 0; a < metric.r; ++a)
            for (int b = 0; b < metric.r; ++b) out[c](a, b) = gj[c](a, b).value();
    return out;
}

CurvatureFrame curvature_in_frame(const Mat<Jet>& metric, const MatD& frame_cols) {
    const int m = metric.r;
    require(metric(0, 0).order() >= 2, "curvature: metric jets need order >= 2");
    auto gamma = christoffel_jets(metric);  // order >= 1

    // R^d_{c a b} = d_a Gamma^d_{bc} - d_b Gamma^d_{ac} + Gamma^d_{ae}Gamma^e_{bc} - Gamma^d_{be}Gamma^e_{ac}
    Tensor4 r_up(m);
    for (int d = 0; d < m; ++d)
        for (int c = 0; c < m; ++c)
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b) {
                    double v = gamma[d](b, c).derivative(a).value() - gamma[d](a, c).derivative(b).value();
                    for (int e = 0; e < m; ++e)
                        v += gamma[d](a, e).value() * gamma[e](b, c).value() -
                             gamma[d](b, e).value() * gamma[e](a, c).value();
                    r_up.at(d, c, a, b) = v;
                }
    MatD g0(m, m, 0.0);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) g0(a, b) = metric(a, b).value();
    // lowered: R_low(d,c,a,b) = <R(d_a, d_b) d_c, d_d>
    Tensor4 r_low(m);
    for (int d = 0; d < m; ++d)
        for (int c = 0; c < m; ++c)
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b) {
                    double v = 0.0;
                    for (int e = 0; e < m; ++e) v += g0(d, e) * r_up.at(e, c, a, b);
                    r_low.at(d, c, a, b) = v;
                }

    CurvatureFrame out;
    out.R = Tensor4(m);
    // R_{ijkl} = - R_low(d,c,a,b) E_k^d E_l^c E_i^a E_j^b; a constant-curvature
    // space then reads c (delta_il delta_jk - delta_ik delta_jl)
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l) {
                    double v = 0.0;
                    for (int d = 0; d < m; ++d)
                        for (int c = 0; c < m; ++c)
                            for (int a = 0; a < m; ++a)
                                for (int b = 0; b < m; ++b)
                                    v += r_low.at(d, c, a, b) * frame_cols(d, k) * frame_cols(c, l) *
                                         frame_cols(a, i) * frame_cols(b, j);
                    out.R.at(i, j, k, l) = -v;
                }
    out.ricci = MatD(m, m, 0.0);
    for (int j = 0; j < m; ++j)
        for (int l = 0; l < m; ++l) {
            double v = 0.0;
            for (int i = 0; i < m; ++i) v -= out.R.at(i, j, i, l);
            out.ricci(j, l) = v;
        }
    double scalar = 0.0;
    for (int j = 0; j < m; ++j) scalar += out.ricci(j, j);
    out.kappa = scalar / (m * (m - 1.0));
    return out;
}

MatD conformal_B(const MatD& h_frame, double H, double rho) {
    const int m = h_frame.r;
    MatD b(m, m, 0.0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) b(i, j) = (h_frame(i, j) - (i == j ? H : 0.0)) / rho;
    return b;
}

VecD conformal_form_Phi(const MatD& h_frame, double H, double rho, const VecD& grad_logrho,
                        const VecD& grad_H) {
    const int m = h_frame.r;
    VecD phi(m, 0.0);
    const double ir2 = 1.0 / (rho * rho);
    for (int i = 0; i < m; ++i) {
        double s = grad_H[i];
        for (int j = 0; j < m; ++j) s += (h_frame(i, j) - (i == j ? H : 0.0)) * grad_logrho[j];
        phi[i] = -ir2 * s;
    }
    return phi;
}

MatD blaschke_direct(const MatD& hess_logrho, const VecD& grad_logrho, const MatD& h_frame,
                     double H, double rho) {
    const int m = h_frame.r;
    const double ir2 = 1.0 / (rho * rho);
    double grad2 = 0.0;
    for (double v : grad_logrho) grad2 += v * v;
    const double trace_term = 0.5 * ir2 * (grad2 - H * H - 1.0);
    MatD a(m, m, 0.0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            double v = -ir2 * (hess_logrho(i, j) - grad_logrho[i] * grad_logrho[j] + h_frame(i, j) * H);
            if (i == j) v -= trace_term;
            a(i, j) = v;
        }
    return a;
}

MatD blaschke_from_ricci(const MatD& ricci, const MatD& B, double kappa) {
    const int m = ricci.r;
    require(m >= 3, "Ricci route underdetermined: m = 2");
    const double trA = (m * m * kappa - 1.0) / (2.0 * m);
    MatD a(m, m, 0.0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            double bb = 0.0;
            for (int k = 0; k < m; ++k) bb += B(i, k) * B(k, j);
            a(i, j) = (ricci(i, j) - bb - (i == j ? trA : 0.0)) / (m - 2.0);
        }
    return a;
}

MatD InvariantPoint::para_blaschke(double lambda) const {
    require(has_A, "para-Blaschke tensor needs A (jet order 4)");
    MatD d(m, m, 0.0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) d(i, j) = A_direct(i, j) + lambda * B(i, j);
    return d;
}

namespace {

struct LiftData {
    SignatureMetric amb;
    std::vector<Jet> Y;  // order-2 jets of the conformal position
    PointFrame f;
    MatD g_coord;
    MatD g_inv;
    std::vector<MatD> gamma_g;
    Mat<Jet> g_jets;
    Mat<Jet> E_jets;  // E(a,i): coordinate components of E_i = rho^-1 e_i
};

LiftData build_lift(const ImmersionChart& chart, const VecD& p, int order) {
    LiftData L;
    L.f = compute_point_frame(chart, p, order, true);
    const int m = chart.m;
    const int adim = chart.ambient.metric.dim;
    L.amb = SignatureMetric(adim + 1, 2);

    L.Y.reserve(adim + 1);
    L.Y.push_back(L.f.rho);
    for (int j = 0; j < adim; ++j) L.Y.push_back(L.f.rho * L.f.x[j]);

    const Jet z = zero_like(L.f.rho);
    L.g_jets = Mat<Jet>(m, m, z);
    Jet rho2 = L.f.rho * L.f.rho;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) L.g_jets(a, b) = rho2 * L.f.gbar(a, b);
    L.g_coord = MatD(m, m, 0.0);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) L.g_coord(a, b) = L.g_jets(a, b).value();
    L.g_inv = inverse(L.g_coord);
    if (L.f.rho.order() >= 1) L.gamma_g = christoffel_values(L.g_jets);

    Jet irho = jet_inv(L.f.rho);
    L.E_jets = Mat<Jet>(m, m, z);
    for (int a = 0; a < m; ++a)
        for (int i = 0; i < m; ++i) L.E_jets(a, i) = irho * L.f.S(a, i);
    return L;
}

MovingFramePoint moving_frame_from_lift(const LiftData& L, const ImmersionChart& chart) {
    MovingFramePoint mf;
    mf.amb = L.amb;
    const int m = chart.m;
    const int dim = L.amb.dim;

    mf.Y.resize(dim);
    for (int j = 0; j < dim; ++j) mf.Y[j] = L.Y[j].value();

    VecD lap(dim, 0.0);
    for (int j = 0; j < dim; ++j) {
        double s = 0.0;
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) {
                double hess = L.Y[j].derivative(a).derivative(b).value();
                for (int c = 0; c < m; ++c)
                    hess -= L.gamma_g[c](a, b) * L.Y[j].derivative(c).value();
                s += L.g_inv(a, b) * hess;
            }
        lap[j] = s;
    }
    const double lap_lap = inner_generic(L.amb, lap, lap);
    const double lap_Y = inner_generic(L.amb, lap, mf.Y);
    mf.N.resize(dim);
    for (int j = 0; j < dim; ++j) mf.N[j] = -lap[j] / m - lap_lap / (2.0 * m * m) * mf.Y[j];

    mf.Yi.assign(m, VecD(dim, 0.0));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < dim; ++j) {
            double s = 0.0;
            for (int a = 0; a < m; ++a) s += L.E_jets(a, i).value() * L.Y[j].derivative(a).value();
            mf.Yi[i][j] = s;
        }

    mf.xi.resize(dim);
    mf.xi[0] = -L.f.H0;
    for (int j = 0; j + 1 < dim; ++j)
        mf.xi[j + 1] = -L.f.H0 * L.f.x[j].value() + L.f.normal[j].value();

    mf.res_DeltaY_Y = std::abs(lap_Y + m);
    mf.res_YY = std::abs(inner_generic(L.amb, mf.Y, mf.Y));
    mf.res_NN = std::abs(inner_generic(L.amb, mf.N, mf.N));
    mf.res_YN = std::abs(inner_generic(L.amb, mf.Y, mf.N) - 1.0);
    mf.res_xixi = std::abs(inner_generic(L.amb, mf.xi, mf.xi) + 1.0);
    return mf;
}

}  // namespace

InvariantPoint compute_invariants(const ImmersionChart& chart, const VecD& p, int order) {
    require_unit_de_sitter(chart);
    require(order >= 3, "invariants need jet order >= 3");
    InvariantPoint out;
    LiftData L = build_lift(chart, p, order);
    const PointFrame& f = L.f;
    const int m = chart.m;

    out.m = m;
    out.p = p;
    out.rho = f.rho0;
    out.H = f.H0;
    out.B = conformal_B(f.h_frame0, f.H0, f.rho0);
    out.Phi = conformal_form_Phi(f.h_frame0, f.H0, f.rho0, f.grad_logrho_frame, f.grad_H_frame);
    out.g_coord = L.g_coord;
    out.gamma_g = L.gamma_g;

    out.E = MatD(m, m, 0.0);
    for (int a = 0; a < m; ++a)
        for (int i = 0; i < m; ++i) out.E(a, i) = L.E_jets(a, i).value();
    out.W = inverse(out.E);

    if (order >= 4) {
        out.has_A = true;
        out.A_direct = blaschke_direct(f.hess_logrho_frame, f.grad_logrho_frame, f.h_frame0, f.H0, f.rho0);
        out.curv = curvature_in_frame(L.g_jets, out.E);
        if (m >= 3) out.A_ricci = blaschke_from_ricci(out.curv.ricci, out.B, out.curv.kappa);

        // omega_g[j](i,k) = g(nabla_{E_j} E_i, E_k)
        out.omega_g.assign(m, MatD(m, m, 0.0));
        for (int j = 0; j < m; ++j)
            for (int i = 0; i < m; ++i) {
                VecD cov(m, 0.0);
                for (int al = 0; al < m; ++al) {
                    double s = 0.0;
                    for (int b = 0; b < m; ++b) {
                        double term = L.E_jets(al, i).derivative(b).value();
                        for (int c = 0; c < m; ++c)
                            term += L.gamma_g[al](b, c) * L.E_jets(c, i).value();
                        s += out.E(b, j) * term;
                    }
                    cov[al] = s;
                }
                for (int k = 0; k < m; ++k) {
                    double s = 0.0;
                    for (int al = 0; al < m; ++al)
                        for (int de = 0; de < m; ++de) s += L.g_coord(al, de) * cov[al] * out.E(de, k);
                    out.omega_g[j](i, k) = s;
                }
            }

        out.mf = moving_frame_from_lift(L, chart);
        const int dim = L.amb.dim;
        out.A_from_Y = MatD(m, m, 0.0);
        out.B_from_Y = MatD(m, m, 0.0);
        std::vector<std::vector<Jet>> Yi_jets(m);
        for (int i = 0; i < m; ++i) {
            Yi_jets[i].reserve(dim);
            for (int jc = 0; jc < dim; ++jc) {
                Jet s = zero_like(L.Y[jc].derivative(0));
                for (int a = 0; a < m; ++a) s = s + L.E_jets(a, i) * L.Y[jc].derivative(a);
                Yi_jets[i].push_back(s);
            }
        }
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                VecD yij(dim, 0.0);
                for (int jc = 0; jc < dim; ++jc) {
                    double s = 0.0;
                    for (int b = 0; b < m; ++b)
                        s += out.E(b, j) * Yi_jets[i][jc].derivative(b).value();
                    yij[jc] = s;
                }
                out.A_from_Y(i, j) = -inner_generic(L.amb, yij, out.mf.N);
                out.B_from_Y(i, j) = -inner_generic(L.amb, yij, out.mf.xi);
            }
    }
    return out;
}

MovingFramePoint moving_frame_point(const ImmersionChart& chart, const VecD& p, int order) {
    require_unit_de_sitter(chart);
    LiftData L = build_lift(chart, p, order);
    return moving_frame_from_lift(L, chart);
}

ResidualReport moving_frame_check(const ImmersionChart& chart, const VecD& p, double fd_step,
                                  int order) {
    require_unit_de_sitter(chart);
    ResidualReport rep;
    InvariantPoint iv = compute_invariants(chart, p, order);
    require(iv.has_A, "moving_frame_check needs jet order 4");
    const int m = iv.m;
    const SignatureMetric amb = iv.mf.amb;
    const int dim = amb.dim;

    rep.add("mf_DeltaY_Y", iv.mf.res_DeltaY_Y, 1e-6);
    rep.add("mf_YY", iv.mf.res_YY, 1e-7);
    rep.add("mf_NN", iv.mf.res_NN, 1e-7);
    rep.add("mf_YN", iv.mf.res_YN, 1e-7);
    rep.add("mf_xixi", iv.mf.res_xixi, 1e-10);

    double dA = 0.0, dB = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            dA = std::max(dA, std::abs(iv.A_from_Y(i, j) - iv.A_direct(i, j)));
            dB = std::max(dB, std::abs(iv.B_from_Y(i, j) - iv.B(i, j)));
        }
    rep.add("mf_A_vs_YijN", dA, 1e-6);
    rep.add("mf_B_vs_Yijxi", dB, 1e-6);

    auto frame_at = [&](const VecD& q) { return moving_frame_point(chart, q, order); };
    auto directional = [&](int j, auto extract) {
        VecD dir(m, 0.0);
        for (int a = 0; a < m; ++a) dir[a] = iv.E(a, j);
        auto shifted = [&](double t) {
            VecD q = p;
            for (int a = 0; a < m; ++a) q[a] += t * dir[a];
            return extract(frame_at(q));
        };
        const double h = fd_step;
        VecD fp = shifted(h), fm = shifted(-h), fp2 = shifted(2 * h), fm2 = shifted(-2 * h);
        VecD d(dim, 0.0);
        for (int c = 0; c < dim; ++c)
            d[c] = (8.0 * (fp[c] - fm[c]) - (fp2[c] - fm2[c])) / (12.0 * h);
        return d;
    };

    double row_dY = 0.0, row_dN = 0.0, row_dYi = 0.0, row_dxi = 0.0;
    for (int j = 0; j < m; ++j) {
        VecD dY = directional(j, [](const MovingFramePoint& q) { return q.Y; });
        for (int c = 0; c < dim; ++c) row_dY = std::max(row_dY, std::abs(dY[c] - iv.mf.Yi[j][c]));

        VecD dN = directional(j, [](const MovingFramePoint& q) { return q.N; });
        for (int c = 0; c < dim; ++c) {
            double pred = iv.Phi[j] * iv.mf.xi[c];
            for (int i = 0; i < m; ++i) pred += iv.A_direct(i, j) * iv.mf.Yi[i][c];
            row_dN = std::max(row_dN, std::abs(dN[c] - pred));
        }

        VecD dxi = directional(j, [](const MovingFramePoint& q) { return q.xi; });
        for (int c = 0; c < dim; ++c) {
            double pred = iv.Phi[j] * iv.mf.Y[c];
            for (int i = 0; i < m; ++i) pred += iv.B(i, j) * iv.mf.Yi[i][c];
            row_dxi = std::max(row_dxi, std::abs(dxi[c] - pred));
        }

        for (int i = 0; i < m; ++i) {
            VecD dYi = directional(j, [i](const MovingFramePoint& q) { return q.Yi[i]; });
            for (int c = 0; c < dim; ++c) {
                double pred = -iv.A_direct(i, j) * iv.mf.Y[c] - (i == j ? 1.0 : 0.0) * iv.mf.N[c] +
                              iv.B(i, j) * iv.mf.xi[c];
                for (int k = 0; k < m; ++k) pred += iv.omega_g[j](i, k) * iv.mf.Yi[k][c];
                row_dYi = std::max(row_dYi, std::abs(dYi[c] - pred));
            }
        }
    }
    rep.add("mf_row_dY", row_dY, 1e-6);
    rep.add("mf_row_dN", row_dN, 1e-6);
    rep.add("mf_row_dYi", row_dYi, 1e-6);
    rep.add("mf_row_dxi", row_dxi, 1e-6);
    return rep;
}

}  // namespace dsc
