#include "dsc/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dsc {

namespace {

std::vector<Jet> sphere_graph(const std::vector<Jet>& v, double radius) {
    Jet s2 = zero_like(v[0]);
    for (const auto& c : v) s2 = s2 + c * c;
    std::vector<Jet> out;
    out.reserve(v.size() + 1);
    out.push_back(radius * jet_sqrt(1.0 - s2));
    for (const auto& c : v) out.push_back(radius * c);
    return out;
}

std::vector<Jet> hyper_graph(const std::vector<Jet>& v, double radius, double sheet = 1.0) {
    Jet s2 = zero_like(v[0]);
    for (const auto& c : v) s2 = s2 + c * c;
    std::vector<Jet> out;
    out.reserve(v.size() + 1);
    out.push_back((radius * sheet) * jet_sqrt(1.0 + s2));
    for (const auto& c : v) out.push_back(radius * c);
    return out;
}

VecD values_of(const std::vector<Jet>& v) {
    VecD out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].value();
    return out;
}

std::string format_id(const std::string& fam, const std::map<std::string, double>& params) {
    std::ostringstream os;
    os << fam << "[";
    bool first = true;
    for (const auto& [k, v] : params) {
        os << (first ? "" : ",") << k << "=" << v;
        first = false;
    }
    os << "]";
    return os.str();
}

// higher-dimensional entries keep the finite-difference budget by probing a
// smaller box with a denser grid
void shrink_for_dimension(Domain& d, int m) {
    if (m <= 3) return;
    const double f = 3.0 / m;
    d = d.shrunk(f);
}

int default_grid_for(int m) { return m >= 5 ? 7 : (m == 4 ? 9 : 9); }

std::vector<std::pair<double, int>> sorted_eigs(std::vector<std::pair<double, int>> e) {
    std::sort(e.begin(), e.end(), [](auto& a, auto& b) { return a.first > b.first; });
    return e;
}

// axis boxes used by the graph charts; slightly asymmetric so grid points are
// generic
void hyperbolic_axes(Domain& d, int count, double lo = -0.25, double hi = 0.5) {
    for (int i = 0; i < count; ++i) {
        d.lo.push_back(lo);
        d.hi.push_back(hi);
    }
}

void sphere_axes(Domain& d, int count) {
    const double s = 0.6 / std::sqrt(static_cast<double>(count));
    for (int i = 0; i < count; ++i) {
        d.lo.push_back(-0.2 * s);
        d.hi.push_back(0.8 * s);
    }
}

}  // namespace

CatalogEntry make_product_in_desitter(int m, int k, double a) {
    require(m >= 2, "product-ds: m >= 2 required");
    require(k >= 1 && k <= m - 1, "product-ds guard: 1 <= k <= m-1");
    require(a > 1.0, "product-ds guard: a > 1 (hyperbolic radius -1/(a^2-1) must exist)");
    const double bh = std::sqrt(a * a - 1.0);

    CatalogEntry e;
    e.family = Family::ProductDS;
    e.branch = "item4";
    e.route = "direct";
    e.m = m;
    e.params = {{"m", double(m)}, {"k", double(k)}, {"a", a}};
    e.id = format_id("product-ds", e.params);
    e.lambdas = {0.0, 0.5, 1.0};

    Domain dom;
    hyperbolic_axes(dom, k);
    sphere_axes(dom, m - k);
    shrink_for_dimension(dom, m);
    ImmersionChart c;
    c.m = m;
    c.ambient = Ambient::de_sitter(m, 1.0);
    c.domain = dom;
    c.label = e.id;
    c.map = [m, k, bh, a](const std::vector<Jet>& uv) {
        std::vector<Jet> w(uv.begin(), uv.begin() + k);
        std::vector<Jet> v(uv.begin() + k, uv.end());
        std::vector<Jet> out = hyper_graph(w, bh);
        std::vector<Jet> sp = sphere_graph(v, a);
        out.insert(out.end(), sp.begin(), sp.end());
        return out;
    };
    // normal (a xi, bh eta): positive principal curvatures
    {
        const JetTable* t0 = JetTable::get(m, 0);
        std::vector<Jet> uv = seed_point(t0, c.domain.center());
        std::vector<Jet> w(uv.begin(), uv.begin() + k);
        std::vector<Jet> v(uv.begin() + k, uv.end());
        VecD anchor = values_of(hyper_graph(w, a));
        VecD sp = values_of(sphere_graph(v, bh));
        anchor.insert(anchor.end(), sp.begin(), sp.end());
        c.normal_anchor = anchor;
    }
    e.chart = c;

    const double alpha = bh / a;       // sphere directions, multiplicity m-k
    const double beta = a / bh;        // hyperbolic directions, multiplicity k
    const double H = ((m - k) * alpha + k * beta) / m;
    const double rho = std::sqrt(k * (m - k) / (m - 1.0)) * (beta - alpha);
    auto a_of = [&](double h) { return (0.5 * (H * H + 1.0) - h * H) / (rho * rho); };
    e.expected.B_eigs = sorted_eigs({{(beta - H) / rho, k}, {(alpha - H) / rho, m - k}});
    e.expected.D_eigs = sorted_eigs({{a_of(beta), k}, {a_of(alpha), m - k}});
    e.expected.rho_const = rho;
    e.expected.phi_zero = true;
    e.expected.B_parallel = true;
    e.expected.A_parallel = true;
    e.expected.D_parallel_all_lambda = true;
    e.expected.D_parallel_structural = true;
    e.expected.t = 2;
    e.expected.t_B = 2;
    e.lambda_structural = 0.0;
    e.default_grid = default_grid_for(m);
    return e;
}

CatalogEntry make_lifted_product(LiftedKind kind, int m, int k, double a, PsiChannel channel) {
    require(m >= 2, "lifted product: m >= 2 required");
    require(k >= 1 && k <= m - 1, "lifted product guard: 1 <= k <= m-1");

    CatalogEntry e;
    e.m = m;
    e.lambdas = {0.0, 0.5, 1.0};
    e.lambda_structural = 0.0;

    ImmersionChart inner;
    inner.m = m;
    Domain dom;

    if (kind == LiftedKind::Item5) {
        require(a > 0.0, "item5 guard: a > 0");
        e.family = Family::Item5;
        e.branch = "item5";
        e.route = "sigma0";
        e.params = {{"m", double(m)}, {"k", double(k)}, {"a", a}};
        e.id = format_id("item5", e.params);
        hyperbolic_axes(dom, k);
        for (int i = 0; i < m - k; ++i) {
            dom.lo.push_back(0.45);
            dom.hi.push_back(1.05);
        }
        shrink_for_dimension(dom, m);
        inner.ambient = Ambient::minkowski(m);
        inner.domain = dom;
        inner.label = e.id + " inner";
        inner.map = [k, a](const std::vector<Jet>& uv) {
            std::vector<Jet> w(uv.begin(), uv.begin() + k);
            std::vector<Jet> out = hyper_graph(w, a);
            for (std::size_t i = k; i < uv.size(); ++i) out.push_back(uv[i]);
            return out;
        };
        prepare_chart(inner);
        e.chart = lift_composed_chart(inner, SigmaKind::Sigma0, channel);

        const double kappa_h = 1.0 / a;
        const double H = k / (m * a);
        const double rho = std::sqrt(k * (m - k) / (m - 1.0)) / a;
        e.expected.B_eigs = sorted_eigs({{(kappa_h - H) / rho, k}, {-H / rho, m - k}});
        e.expected.b_up_to_sign = true;
        e.expected.t_B = 2;
    } else {
        require(a > 0.0 && a < 1.0, "item6 guard: 0 < a < 1");
        e.family = Family::Item6;
        e.branch = "item6";
        e.route = "sigma-1";
        e.params = {{"m", double(m)}, {"k", double(k)}, {"a", a}};
        e.id = format_id("item6", e.params);
        const double b1 = a, b2 = std::sqrt(1.0 - a * a);
        hyperbolic_axes(dom, k);
        hyperbolic_axes(dom, m - k, -0.2, 0.45);
        shrink_for_dimension(dom, m);
        inner.ambient = Ambient::anti_de_sitter(m, 1.0);
        inner.domain = dom;
        inner.label = e.id + " inner";
        inner.map = [k, b1, b2](const std::vector<Jet>& uv) {
            std::vector<Jet> w(uv.begin(), uv.begin() + k);
            std::vector<Jet> z(uv.begin() + k, uv.end());
            std::vector<Jet> xi = hyper_graph(w, b1);
            std::vector<Jet> ze = hyper_graph(z, b2);
            std::vector<Jet> out;
            out.reserve(xi.size() + ze.size());
            out.push_back(xi[0]);
            out.push_back(ze[0]);
            for (std::size_t i = 1; i < xi.size(); ++i) out.push_back(xi[i]);
            for (std::size_t i = 1; i < ze.size(); ++i) out.push_back(ze[i]);
            return out;
        };
        prepare_chart(inner);
        e.chart = lift_composed_chart(inner, SigmaKind::SigmaMinus, channel);

        const double k1 = -b2 / b1;  // hyperbolic-k directions
        const double k2 = b1 / b2;   // hyperbolic-(m-k) directions
        const double H = (k * k1 + (m - k) * k2) / m;
        double h2 = k * k1 * k1 + (m - k) * k2 * k2;
        const double rho = std::sqrt(m / (m - 1.0) * (h2 - m * H * H));
        e.expected.B_eigs = sorted_eigs({{(k1 - H) / rho, k}, {(k2 - H) / rho, m - k}});
        e.expected.b_up_to_sign = true;
        e.expected.t_B = 2;
    }
    e.expected.phi_zero = true;
    e.expected.B_parallel = true;
    e.expected.A_parallel = true;
    e.expected.D_parallel_all_lambda = true;
    e.expected.D_parallel_structural = true;
    e.expected.t = 2;
    e.default_grid = default_grid_for(m);
    return e;
}

CatalogEntry make_wp(int m, int p, int q, double a, PsiChannel channel) {
    require(p >= 1 && q >= 1, "wp guard: p, q >= 1");
    require(p + q < m, "wp guard: p + q < m");
    require(a > 1.0, "wp guard: a > 1");

    CatalogEntry e;
    e.family = Family::WP;
    e.branch = "item7-wp";
    e.route = "sigma0";
    e.m = m;
    e.params = {{"m", double(m)}, {"p", double(p)}, {"q", double(q)}, {"a", a}};
    e.id = format_id("wp", e.params);
    e.lambdas = {0.0, 0.5, 1.0};
    e.lambda_structural = 0.0;

    const int flat = m - p - q - 1;
    const double bh = std::sqrt(a * a - 1.0);
    Domain dom;
    hyperbolic_axes(dom, q);
    sphere_axes(dom, p);
    dom.lo.push_back(0.8);   // t in R^+, margin keeps it well away from 0
    dom.hi.push_back(1.4);
    for (int i = 0; i < flat; ++i) {
        dom.lo.push_back(-0.25);
        dom.hi.push_back(0.4);
    }

    shrink_for_dimension(dom, m);
    ImmersionChart inner;
    inner.m = m;
    inner.ambient = Ambient::minkowski(m);
    inner.domain = dom;
    inner.label = e.id + " inner";
    inner.map = [p, q, a, bh, flat](const std::vector<Jet>& uv) {
        std::vector<Jet> w(uv.begin(), uv.begin() + q);
        std::vector<Jet> v(uv.begin() + q, uv.begin() + q + p);
        Jet t = uv[q + p];
        std::vector<Jet> up = hyper_graph(w, bh);   // H^q(-1/(a^2-1))
        std::vector<Jet> us = sphere_graph(v, a);   // S^p(a)
        std::vector<Jet> out;
        out.reserve(up.size() + us.size() + flat);
        for (auto& c : up) out.push_back(t * c);
        for (auto& c : us) out.push_back(t * c);
        for (int i = 0; i < flat; ++i) out.push_back(uv[q + p + 1 + i]);
        return out;
    };
    prepare_chart(inner);
    e.chart = lift_composed_chart(inner, SigmaKind::Sigma0, channel);

    const double c1 = a / bh;   // H^q directions
    const double c2 = bh / a;   // S^p directions
    const double cbar = (q * c1 + p * c2) / m;
    const double h2 = q * c1 * c1 + p * c2 * c2;
    const double rho_hat = std::sqrt(m / (m - 1.0) * (h2 - m * cbar * cbar));
    e.expected.B_eigs = sorted_eigs(
        {{(c1 - cbar) / rho_hat, q}, {(c2 - cbar) / rho_hat, p}, {-cbar / rho_hat, m - p - q}});
    e.expected.b_up_to_sign = true;
    e.expected.phi_zero = true;
    e.expected.B_parallel = true;
    e.expected.A_parallel = true;
    e.expected.D_parallel_all_lambda = true;
    e.expected.D_parallel_structural = true;
    e.expected.t_B = 3;
    // the projected warped-product fields vary faster than the plain
    // products; a denser default grid keeps the FD budget
    e.default_grid = m == 3 ? 11 : default_grid_for(m);
    return e;
}

namespace {

struct Ex32Solution {
    double W = 0.0, bh = 0.0, bs = 0.0, kappa_h = 0.0, kappa_s = 0.0, lambda = 0.0;
};

// Solve the Example 3.2 inner-product constraints: the scalar- and
// mean-curvature constants force q(m-q) W^2 - [(m-1)r^2 + 2pq] W + p(m-p) = 0
// with W = (b_s/b_h)^2, and only roots W > 1 are geometric (b_s^2-b_h^2=r^2).
Ex32Solution solve_example_32(int m, int K, double r, int p, int q) {
    const double A = q * double(m - q);
    const double B = (m - 1.0) * r * r + 2.0 * p * q;
    const double C = p * double(m - p);
    double disc = B * B - 4.0 * A * C;
    if (disc < 0.0 && disc >= -1e-12 * std::max(1.0, B * B)) disc = 0.0;  // boundary double root
    std::ostringstream diag;
    diag << "example 3.2: no admissible (b, lambda) for m=" << m << " K=" << K << " r=" << r
         << " (p=" << p << ", q=" << q << "); ";
    if (disc < 0.0) {
        diag << "discriminant " << disc << " < 0";
        fail(diag.str());
    }
    const double W = (B + std::sqrt(disc)) / (2.0 * A);  // larger root
    if (!(W > 1.0 + 1e-10)) {
        diag << "largest root W = " << W << " <= 1, but b_s^2 - b_h^2 = r^2 needs W > 1"
             << "; boundary Q(1) = " << (K * double(m - K) - (m - 1.0) * r * r)
             << " (admissible only when r^2 > K(m-K)/(m-1))";
        fail(diag.str());
    }
    Ex32Solution s;
    s.W = W;
    const double w = std::sqrt(W);
    s.bh = r / std::sqrt(W - 1.0);
    s.bs = w * s.bh;
    s.kappa_h = w / r;
    s.kappa_s = 1.0 / (w * r);
    s.lambda = (q * s.kappa_h + p * s.kappa_s) / m;

    // plug back into the constant-curvature constraints
    const double trh = q * s.kappa_h + p * s.kappa_s;
    const double h2 = q * s.kappa_h * s.kappa_h + p * s.kappa_s * s.kappa_s;
    const double S_actual = K * (K - 1.0) / (r * r) + h2 - trh * trh;
    const double S_target =
        (m * K * (K - 1.0) + (m - 1.0) * r * r) / (m * r * r) - m * (m - 1.0) * s.lambda * s.lambda;
    const double H_res = std::abs(trh / K - m * s.lambda / K);
    require(std::abs(S_actual - S_target) <= 1e-10 && H_res <= 1e-10,
            "example 3.2: constraint plug-back failed");
    return s;
}

struct Ex33Solution {
    double V = 0.0, b1 = 0.0, b2 = 0.0, kappa_xi = 0.0, kappa_ze = 0.0, lambda = 0.0;
};

Ex33Solution solve_example_33(int m, int K, double r, int p, int q) {
    const double A = p * double(m - p);
    const double B = (m - 1.0) * r * r - 2.0 * p * q;
    const double C = q * double(m - q);
    std::ostringstream diag;
    diag << "example 3.3: no admissible (b, lambda) for m=" << m << " K=" << K << " r=" << r
         << " (p=" << p << ", q=" << q << "); ";
    double disc = B * B - 4.0 * A * C;
    if (disc < 0.0 && disc >= -1e-12 * std::max(1.0, B * B)) disc = 0.0;  // boundary double root
    if (B <= 0.0 || disc < 0.0) {
        diag << "quadratic " << A << " V^2 - " << B << " V + " << C << " has no positive root"
             << " (discriminant " << disc << "); admissible only when (m-1) r^2 >= 2 sqrt(pq(m-p)(m-q)) + 2pq";
        fail(diag.str());
    }
    Ex33Solution s;
    s.V = (B + std::sqrt(disc)) / (2.0 * A);
    const double v = std::sqrt(s.V);
    s.b2 = r / std::sqrt(1.0 + s.V);
    s.b1 = v * s.b2;
    s.kappa_xi = -1.0 / (r * v);
    s.kappa_ze = v / r;
    s.lambda = (q * s.kappa_xi + p * s.kappa_ze) / m;

    const double trh = q * s.kappa_xi + p * s.kappa_ze;
    const double h2 = q * s.kappa_xi * s.kappa_xi + p * s.kappa_ze * s.kappa_ze;
    const double S_actual = -K * (K - 1.0) / (r * r) + h2 - trh * trh;
    const double S_target =
        (-m * K * (K - 1.0) + (m - 1.0) * r * r) / (m * r * r) - m * (m - 1.0) * s.lambda * s.lambda;
    require(std::abs(S_actual - S_target) <= 1e-10 && std::abs(trh - m * s.lambda) <= 1e-10,
            "example 3.3: constraint plug-back failed");
    return s;
}

InnerSpec resolve_inner(int K, InnerSpec inner) {
    if (inner.p == 0 && inner.q == 0) {
        inner.q = 1;
        inner.p = K - 1;
    }
    require(inner.p >= 1 && inner.q >= 1 && inner.p + inner.q == K,
            "inner split guard: p, q >= 1 and p + q = K");
    return inner;
}

}  // namespace

CatalogEntry make_example_32(int m, int K, double r, InnerSpec inner) {
    require(m >= 3, "example 3.2 guard: m >= 3");
    require(K >= 2 && K <= m - 1, "example 3.2 guard: 2 <= K <= m-1");
    require(r > 0.0, "example 3.2 guard: r > 0");
    inner = resolve_inner(K, inner);
    const int p = inner.p, q = inner.q;
    Ex32Solution sol = solve_example_32(m, K, r, p, q);

    CatalogEntry e;
    e.family = Family::Example32;
    e.branch = "example3.2";
    e.route = "lightcone";
    e.m = m;
    e.params = {{"m", double(m)}, {"K", double(K)}, {"r", r}, {"p", double(p)}, {"q", double(q)}};
    e.id = format_id("example32", e.params);
    e.lambda_structural = sol.lambda;
    e.lambdas = {0.0, sol.lambda};

    const int mk = m - K;
    Domain dom;
    hyperbolic_axes(dom, q);          // H^q factor of the inner hypersurface
    sphere_axes(dom, p);              // S^p factor
    hyperbolic_axes(dom, mk, -0.3, 0.45);  // outer H^{m-K}(-1/r^2)

    shrink_for_dimension(dom, m);
    const double bh = sol.bh, bs = sol.bs;
    ImmersionChart c;
    c.m = m;
    c.ambient = Ambient::de_sitter(m, 1.0);
    c.domain = dom;
    c.label = e.id;
    c.map = [p, q, mk, bh, bs, r](const std::vector<Jet>& uv) {
        std::vector<Jet> w(uv.begin(), uv.begin() + q);
        std::vector<Jet> v(uv.begin() + q, uv.begin() + q + p);
        std::vector<Jet> z(uv.begin() + q + p, uv.end());
        std::vector<Jet> xi = hyper_graph(w, bh);     // inner H^q block
        std::vector<Jet> eta = sphere_graph(v, bs);   // inner S^p block
        std::vector<Jet> outer = hyper_graph(z, r);   // (y0, y2)
        Jet inv_y0 = jet_inv(outer[0]);
        std::vector<Jet> out;
        out.reserve(q + p + mk + 2);
        for (auto& cpt : xi) out.push_back(cpt * inv_y0);
        for (auto& cpt : eta) out.push_back(cpt * inv_y0);
        for (std::size_t i = 1; i < outer.size(); ++i) out.push_back(outer[i] * inv_y0);
        return out;
    };
    // adapted normal (n_1, 0) with n_1 = ((b_s/r) xi, (b_h/r) eta)
    {
        const JetTable* t0 = JetTable::get(m, 0);
        std::vector<Jet> uv = seed_point(t0, dom.center());
        std::vector<Jet> w(uv.begin(), uv.begin() + q);
        std::vector<Jet> v(uv.begin() + q, uv.begin() + q + p);
        VecD anchor = values_of(hyper_graph(w, bs / r));
        VecD eta = values_of(sphere_graph(v, bh / r));
        anchor.insert(anchor.end(), eta.begin(), eta.end());
        anchor.resize(m + 2, 0.0);
        c.normal_anchor = anchor;
    }
    e.chart = c;
    e.y0_of = [q, p, r, m](const VecD& pvec) {
        double s2 = 0.0;
        for (std::size_t i = q + p; i < pvec.size(); ++i) s2 += pvec[i] * pvec[i];
        return r * std::sqrt(1.0 + s2);
    };

    const double lam = sol.lambda;
    e.expected.D_eigs = sorted_eigs({{1.0 / (2.0 * r * r) - 0.5 * lam * lam, K},
                                     {-(1.0 / (2.0 * r * r) + 0.5 * lam * lam), mk}});
    e.expected.B_eigs = sorted_eigs(
        {{sol.kappa_h - lam, q}, {sol.kappa_s - lam, p}, {-lam, mk}});
    e.expected.phi_zero = true;
    // isoparametric product inners make the conformal metric a Riemannian
    // product: B and A are parallel too (degenerate members of the
    // parallel-B class), on top of the parallel para-Blaschke structure
    e.expected.B_parallel = true;
    e.expected.A_parallel = true;
    e.expected.D_parallel_all_lambda = true;
    e.expected.D_parallel_structural = true;
    e.expected.t = 2;
    e.expected.t_B = 3;
    e.default_grid = default_grid_for(m);
    return e;
}

CatalogEntry make_example_33(int m, int K, double r, int epsilon, InnerSpec inner) {
    require(m >= 3, "example 3.3 guard: m >= 3");
    require(K >= 2 && K <= m - 1, "example 3.3 guard: 2 <= K <= m-1");
    require(r > 0.0, "example 3.3 guard: r > 0");
    require(epsilon == 1 || epsilon == -1, "example 3.3 guard: epsilon must be +1 or -1");
    inner = resolve_inner(K, inner);
    const int p = inner.p, q = inner.q;
    Ex33Solution sol = solve_example_33(m, K, r, p, q);

    CatalogEntry e;
    e.family = Family::Example33;
    e.branch = "example3.3";
    e.route = "lightcone";
    e.m = m;
    e.params = {{"m", double(m)}, {"K", double(K)}, {"r", r},
                {"p", double(p)}, {"q", double(q)}, {"eps", double(epsilon)}};
    e.id = format_id("example33", e.params);
    e.lambda_structural = sol.lambda;
    e.lambdas = {0.0, sol.lambda};

    const int mk = m - K;
    Domain dom;
    hyperbolic_axes(dom, q);              // inner H^q (carries y0)
    hyperbolic_axes(dom, p, -0.2, 0.45);  // inner H^p
    sphere_axes(dom, mk);                 // outer S^{m-K}(r)

    shrink_for_dimension(dom, m);
    const double b1 = sol.b1, b2 = sol.b2;
    const double sheet = epsilon;  // epsilon = sign(y0): flip the H^q sheet
    ImmersionChart c;
    c.m = m;
    c.ambient = Ambient::de_sitter(m, 1.0);
    c.domain = dom;
    c.label = e.id;
    c.map = [p, q, mk, b1, b2, r, sheet](const std::vector<Jet>& uv) {
        std::vector<Jet> w(uv.begin(), uv.begin() + q);
        std::vector<Jet> zz(uv.begin() + q, uv.begin() + q + p);
        std::vector<Jet> s(uv.begin() + q + p, uv.end());
        std::vector<Jet> xi = hyper_graph(w, b1, sheet);  // y0 = b1 * sheet * sqrt(1+|w|^2)
        std::vector<Jet> ze = hyper_graph(zz, b2);
        std::vector<Jet> outer = sphere_graph(s, r);
        // ytilde = (y0, y1', y1'', y2) with y0 = xi[0], y1' = ze[0]
        Jet y0 = xi[0];
        Jet eps_over_y0 = sheet * jet_inv(y0);  // epsilon / y0 = 1/|y0|
        std::vector<Jet> out;
        out.reserve(q + p + mk + 2);
        out.push_back(ze[0] * eps_over_y0);
        for (std::size_t i = 1; i < xi.size(); ++i) out.push_back(xi[i] * eps_over_y0);
        for (std::size_t i = 1; i < ze.size(); ++i) out.push_back(ze[i] * eps_over_y0);
        for (auto& cpt : outer) out.push_back(cpt * eps_over_y0);
        return out;
    };
    // adapted normal n = (n_1, 0) - eps * n_0 * x with (n_0, n_1) the inner
    // normal (-(b2/r) xi, (b1/r) ze) in the rearranged coordinates
    {
        const JetTable* t0 = JetTable::get(m, 0);
        std::vector<Jet> uv = seed_point(t0, dom.center());
        std::vector<Jet> w(uv.begin(), uv.begin() + q);
        std::vector<Jet> zz(uv.begin() + q, uv.begin() + q + p);
        VecD xi = values_of(hyper_graph(w, b1, sheet));
        VecD ze = values_of(hyper_graph(zz, b2));
        VecD x = values_of(c.map(uv));
        const double n0 = -(b2 / r) * xi[0];
        VecD n1;
        n1.push_back((b1 / r) * ze[0]);
        for (std::size_t i = 1; i < xi.size(); ++i) n1.push_back(-(b2 / r) * xi[i]);
        for (std::size_t i = 1; i < ze.size(); ++i) n1.push_back((b1 / r) * ze[i]);
        VecD anchor(m + 2, 0.0);
        for (std::size_t i = 0; i < n1.size(); ++i) anchor[i] = n1[i];
        for (int i = 0; i < m + 2; ++i) anchor[i] -= epsilon * n0 * x[i];
        c.normal_anchor = anchor;
    }
    e.chart = c;
    e.y0_of = [q, b1, sheet](const VecD& pvec) {
        double s2 = 0.0;
        for (int i = 0; i < q; ++i) s2 += pvec[i] * pvec[i];
        return b1 * sheet * std::sqrt(1.0 + s2);
    };

    const double lam = sol.lambda;
    e.expected.D_eigs = sorted_eigs({{-(1.0 / (2.0 * r * r) + 0.5 * lam * lam), K},
                                     {1.0 / (2.0 * r * r) - 0.5 * lam * lam, mk}});
    e.expected.B_eigs = sorted_eigs(
        {{sol.kappa_xi - lam, q}, {sol.kappa_ze - lam, p}, {-lam, mk}});
    e.expected.phi_zero = true;
    e.expected.B_parallel = true;   // product inner: see the 3.2 note
    e.expected.A_parallel = true;
    e.expected.D_parallel_all_lambda = true;
    e.expected.D_parallel_structural = true;
    e.expected.t = 2;
    e.expected.t_B = 3;
    e.default_grid = default_grid_for(m);
    return e;
}

std::vector<CatalogEntry> labeled_catalog() {
    std::vector<CatalogEntry> out;
    out.push_back(make_product_in_desitter(3, 1, std::sqrt(2.0)));
    out.push_back(make_product_in_desitter(4, 2, std::sqrt(2.0)));
    out.push_back(make_product_in_desitter(5, 2, 1.5));
    out.push_back(make_lifted_product(LiftedKind::Item5, 3, 1, 1.0));
    out.push_back(make_lifted_product(LiftedKind::Item6, 3, 1, 0.6));
    out.push_back(make_wp(3, 1, 1, std::sqrt(2.0)));
    out.push_back(make_example_32(3, 2, 2.0));
    out.push_back(make_example_33(3, 2, std::sqrt(3.0), +1));
    out.push_back(make_example_33(3, 2, std::sqrt(3.0), -1));
    return out;
}

std::vector<std::string> catalog_family_ids() {
    return {"product-ds", "item5", "item6", "wp", "example32", "example33"};
}

CatalogEntry make_entry(const std::string& family_id, const std::map<std::string, double>& params) {
    auto get = [&](const std::string& key, double fallback, bool required = false) {
        auto it = params.find(key);
        if (it != params.end()) return it->second;
        require(!required, "missing required parameter --" + key + " for entry " + family_id);
        return fallback;
    };
    const int m = static_cast<int>(get("m", 3));
    if (family_id == "product-ds")
        return make_product_in_desitter(m, static_cast<int>(get("k", 1)), get("a", std::sqrt(2.0)));
    if (family_id == "item5")
        return make_lifted_product(LiftedKind::Item5, m, static_cast<int>(get("k", 1)), get("a", 1.0));
    if (family_id == "item6")
        return make_lifted_product(LiftedKind::Item6, m, static_cast<int>(get("k", 1)), get("a", 0.6));
    if (family_id == "wp")
        return make_wp(m, static_cast<int>(get("p", 1)), static_cast<int>(get("q", 1)),
                       get("a", std::sqrt(2.0)));
    if (family_id == "example32") {
        InnerSpec spec{static_cast<int>(get("p", 0)), static_cast<int>(get("q", 0))};
        return make_example_32(m, static_cast<int>(get("K", 2)), get("r", 2.0), spec);
    }
    if (family_id == "example33") {
        InnerSpec spec{static_cast<int>(get("p", 0)), static_cast<int>(get("q", 0))};
        return make_example_33(m, static_cast<int>(get("K", 2)), get("r", std::sqrt(3.0)),
                               static_cast<int>(get("eps", 1)), spec);
    }
    fail("unknown entry id: " + family_id);
}

}  // namespace dsc
