#include "dsc/spaceforms.hpp"

#include <cmath>

namespace dsc {

namespace {

double vec_norm(const VecD& v) {
    double s = 0.0;
    for (double c : v) s += c * c;
    return std::sqrt(s);
}

void check_membership(SigmaKind kind, const LorentzVector& u) {
    switch (kind) {
        case SigmaKind::Sigma0:
            require(u.metric.s == 1, "sigma0 expects a point of R^{m+1}_1");
            break;
        case SigmaKind::SigmaPlus: {
            require(u.metric.s == 1, "sigma1 expects a point of S^{m+1}_1");
            const double q = inner_generic(u.metric, u.x, u.x);
            require(std::abs(q - 1.0) <= 1e-10, "sigma1: point not on the unit de Sitter quadric");
            break;
        }
        case SigmaKind::SigmaMinus: {
            require(u.metric.s == 2, "sigma-1 expects a point of H^{m+1}_1");
            const double q = inner_generic(u.metric, u.x, u.x);
            require(std::abs(q + 1.0) <= 1e-10, "sigma-1: point not on the anti-de Sitter quadric");
            break;
        }
    }
}

}  // namespace

ProjectiveLightPoint make_light_point(const SignatureMetric& g, VecD rep) {
    require(static_cast<int>(rep.size()) == g.dim, "light point: dimension mismatch");
    const double scale = vec_norm(rep);
    require(scale > 1e-13, "light point: zero representative");
    require(std::abs(inner_generic(g, rep, rep)) <= 1e-10 * std::max(1.0, scale * scale),
            "light point: representative not null");
    for (double c : rep) {
        if (std::abs(c) > 1e-13 * scale) {
            if (c < 0.0)
                for (auto& v : rep) v = -v;
            break;
        }
    }
    return {g, std::move(rep)};
}

ProjectiveLightPoint embed_sigma(SigmaKind kind, const LorentzVector& u) {
    check_membership(kind, u);
    const int n = u.metric.dim;
    SignatureMetric g(kind == SigmaKind::Sigma0 ? n + 2 : n + 1, 2);
    VecD rep(g.dim, 0.0);
    switch (kind) {
        case SigmaKind::Sigma0: {
            const double q = inner_generic(u.metric, u.x, u.x);
            rep[0] = 2.0 * u.x[0];
            rep[1] = q + 1.0;
            rep[2] = q - 1.0;
            for (int j = 1; j < n; ++j) rep[2 + j] = 2.0 * u.x[j];
            break;
        }
        case SigmaKind::SigmaPlus: {
            rep[0] = u.x[0];
            rep[1] = 1.0;
            for (int j = 1; j < n; ++j) rep[1 + j] = u.x[j];
            break;
        }
        case SigmaKind::SigmaMinus: {
            rep[0] = u.x[0];
            rep[1] = u.x[1];
            rep[2] = 1.0;
            for (int j = 2; j < n; ++j) rep[1 + j] = u.x[j];
            break;
        }
    }
    return make_light_point(g, std::move(rep));
}

LorentzVector project_psi(PsiChannel which, const ProjectiveLightPoint& P) {
    require(which != PsiChannel::Auto, "project_psi: channel must be U1 or U2");
    const int dim = P.metric.dim;
    const double scale = vec_norm(P.rep);
    const int slot = which == PsiChannel::U1 ? 0 : 1;
    require(std::abs(P.rep[slot]) > 1e-12 * scale,
            which == PsiChannel::U1 ? "outside chart U1: first coordinate vanishes"
                                    : "outside chart U2: second coordinate vanishes");
    SignatureMetric out_metric(dim - 1, 1);
    VecD out(dim - 1, 0.0);
    const double inv = 1.0 / P.rep[slot];
    if (which == PsiChannel::U1) {
        for (int j = 1; j < dim; ++j) out[j - 1] = P.rep[j] * inv;
    } else {
        out[0] = P.rep[0] * inv;
        for (int j = 2; j < dim; ++j) out[j - 1] = P.rep[j] * inv;
    }
    LorentzVector res(out_metric, std::move(out));
    require(std::abs(inner_generic(out_metric, res.x, res.x) - 1.0) <= 1e-10,
            "psi projection left the de Sitter quadric");
    return res;
}

std::vector<Jet> sigma_jets(SigmaKind kind, const std::vector<Jet>& u) {
    const int n = static_cast<int>(u.size());
    std::vector<Jet> rep;
    switch (kind) {
        case SigmaKind::Sigma0: {
            SignatureMetric gm(n, 1);
            Jet q = inner_generic(gm, u, u);
            rep.reserve(n + 2);
            rep.push_back(2.0 * u[0]);
            rep.push_back(q + 1.0);
            rep.push_back(q - 1.0);
            for (int j = 1; j < n; ++j) rep.push_back(2.0 * u[j]);
            break;
        }
        case SigmaKind::SigmaPlus: {
            rep.reserve(n + 1);
            rep.push_back(u[0]);
            rep.push_back(one_like(u[0]));
            for (int j = 1; j < n; ++j) rep.push_back(u[j]);
            break;
        }
        case SigmaKind::SigmaMinus: {
            rep.reserve(n + 1);
            rep.push_back(u[0]);
            rep.push_back(u[1]);
            rep.push_back(one_like(u[0]));
            for (int j = 2; j < n; ++j) rep.push_back(u[j]);
            break;
        }
    }
    return rep;
}

std::vector<Jet> psi_jets(PsiChannel which, const std::vector<Jet>& y) {
    require(which != PsiChannel::Auto, "psi_jets: channel must be U1 or U2");
    const int dim = static_cast<int>(y.size());
    const int slot = which == PsiChannel::U1 ? 0 : 1;
    require(std::abs(y[slot].value()) > 1e-12,
            which == PsiChannel::U1 ? "outside chart U1: first coordinate vanishes"
                                    : "outside chart U2: second coordinate vanishes");
    Jet inv = jet_inv(y[slot]);
    std::vector<Jet> out;
    out.reserve(dim - 1);
    if (which == PsiChannel::U1) {
        for (int j = 1; j < dim; ++j) out.push_back(y[j] * inv);
    } else {
        out.push_back(y[0] * inv);
        for (int j = 2; j < dim; ++j) out.push_back(y[j] * inv);
    }
    return out;
}

namespace {

// Scan the grid for the minimum |denominator| of each channel; returns the
// channel choice or fails naming the worst corner.
PsiChannel pick_channel(const std::function<VecD(const VecD&)>& denoms, const Domain& dom,
                        PsiChannel requested, std::string* offending) {
    Grid scan = make_grid(dom, 5);
    double min_u1 = 1e300, min_u2 = 1e300;
    VecD argmin_u1, argmin_u2;
    for (std::size_t i = 0; i < scan.size(); ++i) {
        const VecD p = scan.point(i);
        const VecD d = denoms(p);
        if (std::abs(d[0]) < min_u1) { min_u1 = std::abs(d[0]); argmin_u1 = p; }
        if (std::abs(d[1]) < min_u2) { min_u2 = std::abs(d[1]); argmin_u2 = p; }
    }
    const double tol = 1e-6;
    auto describe = [](const VecD& p) {
        std::string s = "(";
        for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ", " : "") + std::to_string(p[i]);
        return s + ")";
    };
    if (requested == PsiChannel::U1) {
        if (min_u1 > tol) return PsiChannel::U1;
        *offending = "chart U1 denominator vanishes near " + describe(argmin_u1);
        return PsiChannel::Auto;
    }
    if (requested == PsiChannel::U2) {
        if (min_u2 > tol) return PsiChannel::U2;
        *offending = "chart U2 denominator vanishes near " + describe(argmin_u2);
        return PsiChannel::Auto;
    }
    if (min_u1 >= min_u2 && min_u1 > tol) return PsiChannel::U1;
    if (min_u2 > tol) return PsiChannel::U2;
    *offending = "both channels vanish somewhere; worst corners U1 " + describe(argmin_u1) +
                 ", U2 " + describe(argmin_u2);
    return PsiChannel::Auto;
}

}  // namespace

ImmersionChart lift_composed_chart(const ImmersionChart& inner, SigmaKind route, PsiChannel channel) {
    require(route != SigmaKind::SigmaPlus || inner.ambient.kind == AmbientKind::DeSitter,
            "route/ambient mismatch");
    if (route == SigmaKind::Sigma0)
        require(inner.ambient.kind == AmbientKind::Minkowski, "sigma0 route expects a Minkowski chart");
    if (route == SigmaKind::SigmaMinus)
        require(inner.ambient.kind == AmbientKind::AntiDeSitter &&
                    std::abs(inner.ambient.radius - 1.0) < 1e-12,
                "sigma-1 route expects a chart into the unit anti-de Sitter space");

    ImmersionChart inner_copy = inner;
    auto denoms = [inner_copy, route](const VecD& p) {
        std::vector<Jet> u = evaluate_immersion(inner_copy, p, 0);
        std::vector<Jet> y = sigma_jets(route, u);
        return VecD{y[0].value(), y[1].value()};
    };
    std::string offending;
    PsiChannel chosen = pick_channel(denoms, inner.domain, channel, &offending);
    require(chosen != PsiChannel::Auto, "lift excluded-set violation: " + offending);

    ImmersionChart out;
    out.m = inner.m;
    out.ambient = Ambient::de_sitter(inner.m, 1.0);
    out.domain = inner.domain;
    out.label = inner.label + (route == SigmaKind::Sigma0 ? " via sigma0" : " via sigma-1") +
                (chosen == PsiChannel::U1 ? "/U1" : "/U2");
    out.map = [inner_copy, route, chosen](const std::vector<Jet>& uv) {
        std::vector<Jet> u = inner_copy.map(uv);
        return psi_jets(chosen, sigma_jets(route, u));
    };
    prepare_chart(out);
    return out;
}

ImmersionChart act_and_reproject(const PseudoOrthogonalMap& T, const ImmersionChart& chart,
                                 PsiChannel channel) {
    require(chart.ambient.kind == AmbientKind::DeSitter && std::abs(chart.ambient.radius - 1.0) < 1e-14,
            "act_and_reproject expects a chart into the unit de Sitter space");
    const int adim = chart.ambient.metric.dim;  // m + 2
    require(T.metric.dim == adim + 1 && T.metric.s == 2, "act_and_reproject: T must lie in O(m+3,2)");

    ImmersionChart base = chart;
    prepare_chart(base);
    const MatD M = T.matrix;
    auto apply_M = [M, adim](const std::vector<Jet>& x) {
        std::vector<Jet> lift;
        lift.reserve(adim + 1);
        lift.push_back(one_like(x[0]));
        for (int j = 0; j < adim; ++j) lift.push_back(x[j]);
        std::vector<Jet> y;
        y.reserve(adim + 1);
        for (int i = 0; i <= adim; ++i) {
            Jet s = zero_like(x[0]);
            for (int j = 0; j <= adim; ++j) s = s + M(i, j) * lift[j];
            y.push_back(s);
        }
        return y;
    };

    ImmersionChart probe = base;
    auto denoms = [probe, apply_M](const VecD& p) {
        std::vector<Jet> x = evaluate_immersion(probe, p, 0);
        std::vector<Jet> y = apply_M(x);
        return VecD{y[0].value(), y[1].value()};
    };

    Domain dom = base.domain;
    PsiChannel chosen = PsiChannel::Auto;
    std::string offending;
    for (int attempt = 0; attempt < 4; ++attempt) {
        chosen = pick_channel(denoms, dom, channel, &offending);
        if (chosen != PsiChannel::Auto) break;
        dom = dom.shrunk(0.5);
    }
    require(chosen != PsiChannel::Auto, "no admissible chart: " + offending);

    ImmersionChart out;
    out.m = base.m;
    out.ambient = Ambient::de_sitter(base.m, 1.0);
    out.domain = dom;
    out.label = base.label + " (transformed)";
    out.map = [probe, apply_M, chosen](const std::vector<Jet>& uv) {
        std::vector<Jet> x = probe.map(uv);
        return psi_jets(chosen, apply_M(x));
    };

    // transport the normal orientation through T so B keeps its sign
    const VecD p0 = dom.center();
    MovingFramePoint mf = moving_frame_point(base, p0);
    const SignatureMetric big(adim + 1, 2);
    VecD y0(adim + 1, 0.0), xi_t(adim + 1, 0.0);
    {
        std::vector<Jet> x = evaluate_immersion(base, p0, 0);
        VecD lift(adim + 1, 0.0);
        lift[0] = 1.0;
        for (int j = 0; j < adim; ++j) lift[1 + j] = x[j].value();
        for (int i = 0; i <= adim; ++i)
            for (int j = 0; j <= adim; ++j) y0[i] += M(i, j) * lift[j];
        for (int i = 0; i <= adim; ++i)
            for (int j = 0; j <= adim; ++j) xi_t[i] += M(i, j) * mf.xi[j];
    }
    if (chosen == PsiChannel::U2) {
        std::swap(y0[0], y0[1]);
        std::swap(xi_t[0], xi_t[1]);
    }
    const double eps = y0[0] >= 0.0 ? 1.0 : -1.0;
    for (auto& c : xi_t) c *= eps;
    // xi' = (-H', -H' x' + n')  =>  n' = xi'_rest - xi'_0 x'(p0)
    std::vector<Jet> xprime = out.map(seed_point(JetTable::get(out.m, 0), p0));
    VecD anchor(adim, 0.0);
    for (int j = 0; j < adim; ++j) anchor[j] = xi_t[1 + j] - xi_t[0] * xprime[j].value();
    out.normal_anchor = anchor;
    return out;
}

VecD invert_sigma_route(SigmaKind route, PsiChannel channel, const VecD& image) {
    require(channel == PsiChannel::U1 || channel == PsiChannel::U2, "invert: channel must be fixed");
    const int dim = static_cast<int>(image.size()) + 1;  // light-cone dimension
    VecD y(dim, 0.0);
    if (channel == PsiChannel::U1) {
        y[0] = 1.0;
        for (int j = 1; j < dim; ++j) y[j] = image[j - 1];
    } else {
        y[1] = 1.0;
        y[0] = image[0];
        for (int j = 2; j < dim; ++j) y[j] = image[j - 1];
    }
    switch (route) {
        case SigmaKind::Sigma0: {
            const double lam = 0.5 * (y[1] - y[2]);
            require(std::abs(lam) > 1e-12, "invert sigma0: image at infinity of this chart");
            VecD u(dim - 3 + 1, 0.0);
            u[0] = y[0] / (2.0 * lam);
            for (int j = 3; j < dim; ++j) u[j - 2] = y[j] / (2.0 * lam);
            return u;
        }
        case SigmaKind::SigmaPlus: {
            const double lam = y[1];
            require(std::abs(lam) > 1e-12, "invert sigma1: image at infinity of this chart");
            VecD u(dim - 1, 0.0);
            u[0] = y[0] / lam;
            for (int j = 2; j < dim; ++j) u[j - 1] = y[j] / lam;
            return u;
        }
        case SigmaKind::SigmaMinus: {
            const double lam = y[2];
            require(std::abs(lam) > 1e-12, "invert sigma-1: image at infinity of this chart");
            VecD u(dim - 1, 0.0);
            u[0] = y[0] / lam;
            u[1] = y[1] / lam;
            for (int j = 3; j < dim; ++j) u[j - 1] = y[j] / lam;
            return u;
        }
    }
    fail("invert: unknown route");
}

}  // namespace dsc
