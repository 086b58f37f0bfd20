#include "dsc/fields.hpp"

#include <cmath>

namespace dsc {

namespace {

// central first-derivative stencils: order-4 (margin 2) and order-6 (margin 3)
struct Stencil {
    int margin;
    std::vector<std::pair<int, double>> taps;  // offset, weight (divide by h)
};

const Stencil kStencil4{2, {{-2, 1.0 / 12}, {-1, -8.0 / 12}, {1, 8.0 / 12}, {2, -1.0 / 12}}};
const Stencil kStencil6{3,
                        {{-3, -1.0 / 60},
                         {-2, 9.0 / 60},
                         {-1, -45.0 / 60},
                         {1, 45.0 / 60},
                         {2, -9.0 / 60},
                         {3, 1.0 / 60}}};

const Stencil& pick_stencil(const Grid& grid) {
    int min_pts = 1 << 30;
    for (const auto& ax : grid.axes) min_pts = std::min(min_pts, static_cast<int>(ax.size()));
    require(min_pts >= 5, "grid too coarse (< 5 points per axis) for covariant derivatives");
    return min_pts >= 7 ? kStencil6 : kStencil4;
}

std::vector<std::size_t> interior_points(const Grid& grid, int margin) {
    std::vector<std::size_t> out;
    const auto shape = grid.shape();
    for (std::size_t f = 0; f < grid.size(); ++f) {
        const auto idx = grid.unflatten(f);
        bool ok = true;
        for (int k = 0; k < grid.dim(); ++k)
            if (idx[k] < margin || idx[k] >= shape[k] - margin) { ok = false; break; }
        if (ok) out.push_back(f);
    }
    return out;
}

}  // namespace

FieldBundle sweep_invariants(const ImmersionChart& chart, const Grid& grid, int order) {
    FieldBundle fb;
    fb.chart = chart;
    prepare_chart(fb.chart);
    fb.grid = grid;
    fb.order = order;
    const std::size_t n = grid.size();
    fb.pts.resize(n);
    ImmersionChart local = fb.chart;
    parallel_for(n, [&](std::size_t i) { fb.pts[i] = compute_invariants(local, grid.point(i), order); });

    const int m = chart.m;
    fb.B_coord.assign(n, MatD(m, m, 0.0));
    fb.A_coord.assign(n, MatD(m, m, 0.0));
    fb.Phi_coord.assign(n, VecD(m, 0.0));
    for (std::size_t f = 0; f < n; ++f) {
        const InvariantPoint& iv = fb.pts[f];
        for (int al = 0; al < m; ++al)
            for (int be = 0; be < m; ++be) {
                double sb = 0.0, sa = 0.0;
                for (int i = 0; i < m; ++i)
                    for (int j = 0; j < m; ++j) {
                        const double w = iv.W(i, al) * iv.W(j, be);
                        sb += w * iv.B(i, j);
                        if (iv.has_A) sa += w * iv.A_direct(i, j);
                    }
                fb.B_coord[f](al, be) = sb;
                fb.A_coord[f](al, be) = sa;
            }
        for (int al = 0; al < m; ++al) {
            double s = 0.0;
            for (int i = 0; i < m; ++i) s += iv.Phi[i] * iv.W(i, al);
            fb.Phi_coord[f][al] = s;
        }
    }
    return fb;
}

CovTensorField covariant_derivative(const FieldBundle& fb, TensorField which, double lambda) {
    const int m = fb.chart.m;
    const Stencil& st = pick_stencil(fb.grid);
    CovTensorField out;
    out.m = m;
    out.is_one_form = which == TensorField::Phi;
    out.interior = interior_points(fb.grid, st.margin);
    out.comp.resize(out.interior.size());

    auto coord_tensor = [&](std::size_t f) -> MatD {
        switch (which) {
            case TensorField::B: return fb.B_coord[f];
            case TensorField::A: return fb.A_coord[f];
            case TensorField::D: return fb.D_coord(f, lambda);
            default: fail("coord_tensor: not a 2-tensor");
        }
    };

    const auto shape = fb.grid.shape();
    for (std::size_t pi = 0; pi < out.interior.size(); ++pi) {
        const std::size_t f = out.interior[pi];
        const auto idx = fb.grid.unflatten(f);
        const InvariantPoint& iv = fb.pts[f];

        if (!out.is_one_form) {
            // partial derivatives d_c T_ab by the grid stencil
            std::vector<MatD> dT(m, MatD(m, m, 0.0));
            for (int c = 0; c < m; ++c) {
                const double h = fb.grid.spacing(c);
                for (const auto& [off, wgt] : st.taps) {
                    auto nidx = idx;
                    nidx[c] += off;
                    const MatD t = coord_tensor(fb.grid.flatten(nidx));
                    for (int a = 0; a < m; ++a)
                        for (int b = 0; b < m; ++b) dT[c](a, b) += wgt / h * t(a, b);
                }
            }
            const MatD t0 = coord_tensor(f);
            // nabla_c T_ab = d_c T_ab - Gamma^d_ca T_db - Gamma^d_cb T_ad
            std::vector<MatD> nabla(m, MatD(m, m, 0.0));
            for (int c = 0; c < m; ++c)
                for (int a = 0; a < m; ++a)
                    for (int b = 0; b < m; ++b) {
                        double v = dT[c](a, b);
                        for (int d = 0; d < m; ++d)
                            v -= iv.gamma_g[d](c, a) * t0(d, b) + iv.gamma_g[d](c, b) * t0(a, d);
                        nabla[c](a, b) = v;
                    }
            VecD comp(static_cast<std::size_t>(m) * m * m, 0.0);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j)
                    for (int k = 0; k < m; ++k) {
                        double s = 0.0;
                        for (int c = 0; c < m; ++c)
                            for (int a = 0; a < m; ++a)
                                for (int b = 0; b < m; ++b)
                                    s += nabla[c](a, b) * iv.E(a, i) * iv.E(b, j) * iv.E(c, k);
                        comp[(static_cast<std::size_t>(i) * m + j) * m + k] = s;
                        out.max_abs = std::max(out.max_abs, std::abs(s));
                    }
            out.comp[pi] = std::move(comp);
        } else {
            std::vector<VecD> dP(m, VecD(m, 0.0));
            for (int c = 0; c < m; ++c) {
                const double h = fb.grid.spacing(c);
                for (const auto& [off, wgt] : st.taps) {
                    auto nidx = idx;
                    nidx[c] += off;
                    const VecD& t = fb.Phi_coord[fb.grid.flatten(nidx)];
                    for (int a = 0; a < m; ++a) dP[c][a] += wgt / h * t[a];
                }
            }
            const VecD& p0 = fb.Phi_coord[f];
            VecD comp(static_cast<std::size_t>(m) * m, 0.0);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) {
                    double s = 0.0;
                    for (int b = 0; b < m; ++b)
                        for (int a = 0; a < m; ++a) {
                            double nabla = dP[b][a];
                            for (int d = 0; d < m; ++d) nabla -= iv.gamma_g[d](b, a) * p0[d];
                            s += nabla * iv.E(a, i) * iv.E(b, j);
                        }
                    comp[static_cast<std::size_t>(i) * m + j] = s;
                    out.max_abs = std::max(out.max_abs, std::abs(s));
                }
            out.comp[pi] = std::move(comp);
        }
    }
    return out;
}

namespace {

double frame_delta(int i, int j) { return i == j ? 1.0 : 0.0; }

}  // namespace

ResidualReport integrability_residuals(const FieldBundle& fb, const std::vector<double>& lambdas) {
    const int m = fb.chart.m;
    ResidualReport rep;

    CovTensorField dB = covariant_derivative(fb, TensorField::B);
    CovTensorField dA = covariant_derivative(fb, TensorField::A);
    CovTensorField dPhi = covariant_derivative(fb, TensorField::Phi);

    double r10 = 0.0, r11 = 0.0, r12 = 0.0;
    for (std::size_t pi = 0; pi < dB.interior.size(); ++pi) {
        const std::size_t f = dB.interior[pi];
        const InvariantPoint& iv = fb.pts[f];
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                // Phi_ij - Phi_ji = sum_k (B_ik A_kj - B_kj A_ki) = [B,A]_ij
                double comm = 0.0;
                for (int k = 0; k < m; ++k)
                    comm += iv.B(i, k) * iv.A_direct(k, j) - iv.B(k, j) * iv.A_direct(i, k);
                r10 = std::max(r10, std::abs(dPhi.at2(pi, i, j) - dPhi.at2(pi, j, i) - comm));
                for (int k = 0; k < m; ++k) {
                    const double rhs_a = iv.B(i, j) * iv.Phi[k] - iv.B(i, k) * iv.Phi[j];
                    r11 = std::max(r11, std::abs(dA.at3(pi, i, j, k) - dA.at3(pi, i, k, j) - rhs_a));
                    const double rhs_b = frame_delta(i, j) * iv.Phi[k] - frame_delta(i, k) * iv.Phi[j];
                    r12 = std::max(r12, std::abs(dB.at3(pi, i, j, k) - dB.at3(pi, i, k, j) - rhs_b));
                }
            }
    }
    rep.add("phi_curl_commutator", r10, 1e-5);
    rep.add("codazzi_A", r11, 1e-5);
    rep.add("codazzi_B", r12, 1e-5);

    double r23 = 0.0;
    for (double lam : lambdas) {
        for (std::size_t pi = 0; pi < dB.interior.size(); ++pi) {
            const std::size_t f = dB.interior[pi];
            const InvariantPoint& iv = fb.pts[f];
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j)
                    for (int k = 0; k < m; ++k) {
                        const double dijk = dA.at3(pi, i, j, k) + lam * dB.at3(pi, i, j, k);
                        const double dikj = dA.at3(pi, i, k, j) + lam * dB.at3(pi, i, k, j);
                        const double rhs =
                            (iv.B(i, j) + lam * frame_delta(i, j)) * iv.Phi[k] -
                            (iv.B(i, k) + lam * frame_delta(i, k)) * iv.Phi[j];
                        r23 = std::max(r23, std::abs(dijk - dikj - rhs));
                    }
        }
    }
    rep.add("codazzi_D", r23, 1e-5);

    // Gauss equation of the conformal metric: pointwise, jet-exact
    double r13 = 0.0;
    for (const auto& iv : fb.pts) {
        if (!iv.has_A) continue;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                for (int k = 0; k < m; ++k)
                    for (int l = 0; l < m; ++l) {
                        const double rhs = iv.B(i, k) * iv.B(j, l) - iv.B(i, l) * iv.B(j, k) +
                                           iv.A_direct(i, l) * frame_delta(j, k) -
                                           iv.A_direct(i, k) * frame_delta(j, l) +
                                           iv.A_direct(j, k) * frame_delta(i, l) -
                                           iv.A_direct(j, l) * frame_delta(i, k);
                        r13 = std::max(r13, std::abs(iv.curv.R.at(i, j, k, l) - rhs));
                    }
    }
    rep.add("gauss_conformal", r13, 1e-5);
    return rep;
}

ResidualReport pointwise_identity_residuals(const FieldBundle& fb) {
    const int m = fb.chart.m;
    ResidualReport rep;
    double tr_b = 0.0, norm_b2 = 0.0, route = 0.0, tr_a = 0.0, bianchi = 0.0;
    for (const auto& iv : fb.pts) {
        double tb = 0.0, b2 = 0.0;
        for (int i = 0; i < m; ++i) {
            tb += iv.B(i, i);
            for (int j = 0; j < m; ++j) b2 += iv.B(i, j) * iv.B(i, j);
        }
        tr_b = std::max(tr_b, std::abs(tb));
        norm_b2 = std::max(norm_b2, std::abs(b2 - (m - 1.0) / m));
        if (iv.has_A) {
            double ta = 0.0;
            for (int i = 0; i < m; ++i) ta += iv.A_direct(i, i);
            tr_a = std::max(tr_a,
                            std::abs(ta - (m * m * iv.curv.kappa - 1.0) / (2.0 * m)));
            if (m >= 3)
                for (int i = 0; i < m; ++i)
                    for (int j = 0; j < m; ++j)
                        route = std::max(route, std::abs(iv.A_direct(i, j) - iv.A_ricci(i, j)));
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j)
                    for (int k = 0; k < m; ++k)
                        for (int l = 0; l < m; ++l)
                            bianchi = std::max(
                                bianchi, std::abs(iv.curv.R.at(i, j, k, l) + iv.curv.R.at(i, k, l, j) +
                                                  iv.curv.R.at(i, l, j, k)));
        }
    }
    rep.add("trB", tr_b, 1e-9);
    rep.add("normB2", norm_b2, 1e-7);
    rep.add("trA_vs_kappa", tr_a, 1e-7);
    if (m >= 3) rep.add("blaschke_route_diff", route, 1e-6);
    rep.add("bianchi_1", bianchi, 1e-8);
    return rep;
}

double phi_max(const FieldBundle& fb) {
    double r = 0.0;
    for (const auto& iv : fb.pts)
        for (double v : iv.Phi) r = std::max(r, std::abs(v));
    return r;
}

}  // namespace dsc
