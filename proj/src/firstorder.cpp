#include "dsc/firstorder.hpp"

#include <cmath>

namespace dsc {

namespace {

// Cholesky-based positive-definiteness probe.
bool positive_definite(const MatD& g) {
    const int n = g.r;
    MatD L(n, n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = g(i, j);
            for (int k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
            if (i == j) {
                if (s <= 0.0) return false;
                L(i, i) = std::sqrt(s);
            } else {
                L(i, j) = s / L(j, j);
            }
        }
    }
    return true;
}

MatD values_of(const Mat<Jet>& m) {
    MatD out(m.r, m.c, 0.0);
    for (int i = 0; i < m.r; ++i)
        for (int j = 0; j < m.c; ++j) out(i, j) = m(i, j).value();
    return out;
}

std::vector<Jet> unit_timelike_normal_jets(const Ambient& amb, const std::vector<Jet>& x,
                                           const std::vector<std::vector<Jet>>& dx,
                                           const VecD& anchor) {
    const SignatureMetric& G = amb.metric;
    const int dim = G.dim;
    const int m = static_cast<int>(dx.size());
    const int nrows = m + (amb.has_quadric ? 1 : 0);
    require(nrows == dim - 1, "normal: constraint count mismatch");
    Mat<Jet> rows(nrows, dim, zero_like(dx[0][0]));
    for (int a = 0; a < m; ++a)
        for (int j = 0; j < dim; ++j) rows(a, j) = dx[a][j];
    if (amb.has_quadric)
        for (int j = 0; j < dim; ++j) rows(m, j) = x[j].truncated(dx[0][0].order());
    std::vector<Jet> n = metric_null_vector(G, rows);
    Jet n2 = inner_generic(G, n, n);
    require(n2.value() < -1e-14, "no time-like normal: surface not space-like here");
    Jet inv = jet_inv(jet_sqrt(zero_like(n2) - n2));
    for (auto& c : n) c = c * inv;
    double dot = 0.0;
    for (int j = 0; j < dim; ++j) dot += n[j].value() * anchor[j];
    require(std::abs(dot) > 1e-10, "normal sign anchor degenerate on this chart");
    if (dot < 0.0)
        for (auto& c : n) c = -c;
    return n;
}

VecD basepoint_normal_value(const ImmersionChart& chart) {
    const VecD p0 = chart.basepoint();
    const JetTable* tab = JetTable::get(chart.m, 1);
    std::vector<Jet> x = chart.map(seed_point(tab, p0));
    const int dim = chart.ambient.metric.dim;
    std::vector<std::vector<Jet>> dx(chart.m);
    const JetTable* t0 = JetTable::get(chart.m, 0);
    for (int a = 0; a < chart.m; ++a) {
        dx[a].reserve(dim);
        for (int j = 0; j < dim; ++j) dx[a].push_back(x[j].derivative(a));
    }
    std::vector<Jet> x0;
    x0.reserve(dim);
    for (int j = 0; j < dim; ++j) x0.push_back(x[j].truncated(0));
    (void)t0;
    // try coordinate axes as throwaway anchors until one is not orthogonal
    for (int axis = 0; axis < dim; ++axis) {
        VecD cand(dim, 0.0);
        cand[axis] = 1.0;
        try {
            std::vector<Jet> n = unit_timelike_normal_jets(chart.ambient, x0, dx, cand);
            VecD nv(dim);
            for (int j = 0; j < dim; ++j) nv[j] = n[j].value();
            int imax = 0;
            for (int j = 1; j < dim; ++j)
                if (std::abs(nv[j]) > std::abs(nv[imax])) imax = j;
            if (nv[imax] < 0.0)
                for (auto& c : nv) c = -c;
            return nv;
        } catch (const Error&) {
            continue;
        }
    }
    fail("normal anchor: could not fix a sign at the chart basepoint");
}

}  // namespace

void prepare_chart(ImmersionChart& chart) {
    if (!chart.normal_anchor.has_value()) chart.normal_anchor = basepoint_normal_value(chart);
}

PointFrame compute_point_frame(const ImmersionChart& chart, const VecD& p, int order, bool need_rho) {
    require(order >= 2, "point frame: chart order must be >= 2");
    require(chart.normal_anchor.has_value(),
            "point frame: chart has no normal anchor (call prepare_chart)");
    PointFrame f;
    f.m = chart.m;
    f.p = p;
    const int m = chart.m;
    const int dim = chart.ambient.metric.dim;
    const SignatureMetric& G = chart.ambient.metric;

    f.x = evaluate_immersion(chart, p, order);
    f.dx.resize(m);
    for (int a = 0; a < m; ++a) {
        f.dx[a].reserve(dim);
        for (int j = 0; j < dim; ++j) f.dx[a].push_back(f.x[j].derivative(a));
    }

    const Jet z = zero_like(f.dx[0][0]);
    f.gbar = Mat<Jet>(m, m, z);
    for (int a = 0; a < m; ++a)
        for (int b = a; b < m; ++b) {
            Jet v = inner_generic(G, f.dx[a], f.dx[b]);
            f.gbar(a, b) = v;
            f.gbar(b, a) = v;
        }
    f.gbar0 = values_of(f.gbar);
    require(positive_definite(f.gbar0), "not space-like at p: induced metric not positive definite");
    f.gbar_inv0 = inverse(f.gbar0);

    f.normal = unit_timelike_normal_jets(chart.ambient, f.x, f.dx, *chart.normal_anchor);

    // h_ab = -<n, d_a d_b x>
    f.h_coord = Mat<Jet>(m, m, z.truncated(std::max(0, order - 2)));
    for (int a = 0; a < m; ++a)
        for (int b = a; b < m; ++b) {
            std::vector<Jet> ddx;
            ddx.reserve(dim);
            for (int j = 0; j < dim; ++j) ddx.push_back(f.dx[a][j].derivative(b));
            Jet v = zero_like(ddx[0]) - inner_generic(G, f.normal, ddx);
            f.h_coord(a, b) = v;
            f.h_coord(b, a) = v;
        }

    // Gram-Schmidt of the coordinate basis against gbar (jet-valued)
    f.S = Mat<Jet>(m, m, z);
    for (int i = 0; i < m; ++i) {
        std::vector<Jet> v(m, z);
        v[i] = one_like(z);
        for (int j = 0; j < i; ++j) {
            Jet proj = z;
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b) proj = proj + v[a] * f.gbar(a, b) * f.S(b, j);
            for (int a = 0; a < m; ++a) v[a] = v[a] - proj * f.S(a, j);
        }
        Jet n2 = z;
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) n2 = n2 + v[a] * f.gbar(a, b) * v[b];
        require(n2.value() > 1e-12, "frame degeneracy: Gram-Schmidt collapsed");
        Jet inv = jet_inv(jet_sqrt(n2));
        for (int a = 0; a < m; ++a) f.S(a, i) = v[a] * inv;
    }
    f.S0 = values_of(f.S);

    f.h_frame = Mat<Jet>(m, m, f.h_coord(0, 0) * 0.0);
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            Jet v = f.h_frame(0, 0) * 0.0;
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b) v = v + f.S(a, i) * f.h_coord(a, b) * f.S(b, j);
            f.h_frame(i, j) = v;
            f.h_frame(j, i) = v;
        }
    f.h_frame0 = values_of(f.h_frame);

    f.H = f.h_frame(0, 0) * 0.0;
    for (int i = 0; i < m; ++i) f.H = f.H + f.h_frame(i, i);
    f.H = f.H / static_cast<double>(m);
    f.H0 = f.H.value();

    // Christoffels of gbar at p (values only)
    f.gamma_bar.assign(m, MatD(m, m, 0.0));
    {
        // dgbar[c](a,b) = d_c gbar_ab
        std::vector<MatD> dg(m, MatD(m, m, 0.0));
        for (int c = 0; c < m; ++c)
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b) dg[c](a, b) = f.gbar(a, b).derivative(c).value();
        for (int c = 0; c < m; ++c)
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b) {
                    double s = 0.0;
                    for (int d = 0; d < m; ++d)
                        s += f.gbar_inv0(c, d) * (dg[a](d, b) + dg[b](d, a) - dg[d](a, b));
                    f.gamma_bar[c](a, b) = 0.5 * s;
                }
    }

    if (!need_rho) return f;

    Jet h2 = f.h_frame(0, 0) * 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) h2 = h2 + f.h_frame(i, j) * f.h_frame(i, j);
    Jet rho2 = (static_cast<double>(m) / (m - 1.0)) * (h2 - static_cast<double>(m) * f.H * f.H);
    if (rho2.value() <= f.umbilic_tol * std::max(h2.value(), 1e-300))
        fail("not regular (umbilic) at p: |h|^2 - m H^2 vanishes");
    f.rho = jet_sqrt(rho2);
    f.logrho = jet_log(f.rho);
    f.rho0 = f.rho.value();
    f.regular = true;

    if (f.logrho.order() >= 1) {
        f.grad_logrho_frame.assign(m, 0.0);
        f.grad_H_frame.assign(m, 0.0);
        VecD dlog(m, 0.0);
        for (int a = 0; a < m; ++a) dlog[a] = f.logrho.derivative(a).value();
        for (int i = 0; i < m; ++i)
            for (int a = 0; a < m; ++a) {
                f.grad_logrho_frame[i] += f.S0(a, i) * dlog[a];
                f.grad_H_frame[i] += f.S0(a, i) * f.H.derivative(a).value();
            }
        if (f.logrho.order() >= 2) {
            MatD hess_coord(m, m, 0.0);
            for (int a = 0; a < m; ++a)
                for (int b = a; b < m; ++b) {
                    double v = f.logrho.derivative(a).derivative(b).value();
                    for (int c = 0; c < m; ++c) v -= f.gamma_bar[c](a, b) * dlog[c];
                    hess_coord(a, b) = v;
                    hess_coord(b, a) = v;
                }
            f.hess_logrho_frame = MatD(m, m, 0.0);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) {
                    double v = 0.0;
                    for (int a = 0; a < m; ++a)
                        for (int b = 0; b < m; ++b) v += f.S0(a, i) * hess_coord(a, b) * f.S0(b, j);
                    f.hess_logrho_frame(i, j) = v;
                }
        }
    }
    return f;
}

MatD first_fundamental(const ImmersionChart& chart, const VecD& p) {
    ImmersionChart c = chart;
    prepare_chart(c);
    return compute_point_frame(c, p, 2, false).gbar0;
}

SecondFundamental second_fundamental(const ImmersionChart& chart, const VecD& p) {
    ImmersionChart c = chart;
    prepare_chart(c);
    PointFrame f = compute_point_frame(c, p, 2, false);
    return {f.h_frame0, f.H0};
}

double conformal_factor(const ImmersionChart& chart, const VecD& p) {
    ImmersionChart c = chart;
    prepare_chart(c);
    return compute_point_frame(c, p, 2, true).rho0;
}

std::vector<MatD> christoffels(const ImmersionChart& chart, const VecD& p) {
    ImmersionChart c = chart;
    prepare_chart(c);
    return compute_point_frame(c, p, 3, false).gamma_bar;
}

MatD covariant_hessian_logrho(const ImmersionChart& chart, const VecD& p) {
    ImmersionChart c = chart;
    prepare_chart(c);
    return compute_point_frame(c, p, 4, true).hess_logrho_frame;
}

}  // namespace dsc
