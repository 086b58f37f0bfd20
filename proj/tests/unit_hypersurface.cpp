#include "doctest.h"

#include <cmath>

#include "dsc/catalog.hpp"
#include "dsc/firstorder.hpp"
#include "test_helpers.hpp"

using namespace dsc;

namespace {

// totally geodesic equatorial S^m inside the unit de Sitter space, in polar
// coordinates (theta, phi) for m = 2
ImmersionChart equatorial_sphere_chart() {
    ImmersionChart c;
    c.m = 2;
    c.ambient = Ambient::de_sitter(2, 1.0);
    c.domain = {{0.6, 0.4}, {1.4, 1.2}, 0.1};
    c.label = "equatorial S^2";
    c.map = [](const std::vector<Jet>& uv) {
        const Jet& th = uv[0];
        const Jet& ph = uv[1];
        std::vector<Jet> x;
        x.push_back(zero_like(th));
        x.push_back(jet_sin(th) * jet_cos(ph));
        x.push_back(jet_sin(th) * jet_sin(ph));
        x.push_back(jet_cos(th));
        return x;
    };
    return c;
}

// flat isometric graph u -> (0, u) into R^3_1
ImmersionChart flat_graph_chart() {
    ImmersionChart c;
    c.m = 2;
    c.ambient = Ambient::minkowski(2);
    c.domain = {{-1.0, -1.0}, {1.0, 1.0}, 0.1};
    c.label = "flat graph";
    c.map = [](const std::vector<Jet>& uv) {
        std::vector<Jet> x;
        x.push_back(zero_like(uv[0]));
        x.push_back(uv[0]);
        x.push_back(uv[1]);
        return x;
    };
    return c;
}

}  // namespace

TEST_CASE("first_fundamental: product chart is block diagonal, flat graph is identity") {
    CatalogEntry e = make_product_in_desitter(3, 1, std::sqrt(2.0));
    const VecD p = {0.21, 0.13, -0.07};
    MatD g = first_fundamental(e.chart, p);
    // coordinates (w | v1, v2): hyperbolic/sphere cross terms vanish
    CHECK(std::abs(g(0, 1)) < 1e-12);
    CHECK(std::abs(g(0, 2)) < 1e-12);
    CHECK(g(0, 0) > 0.0);

    MatD gf = first_fundamental(flat_graph_chart(), {0.2, -0.4});
    CHECK(gf(0, 0) == doctest::Approx(1.0));
    CHECK(gf(1, 1) == doctest::Approx(1.0));
    CHECK(std::abs(gf(0, 1)) < 1e-14);
}

TEST_CASE("first_fundamental matches a finite-difference oracle of the chart map") {
    CatalogEntry e = make_product_in_desitter(3, 1, 1.4);
    ImmersionChart chart = e.chart;
    const VecD p = {0.31, 0.09, 0.17};
    MatD g = first_fundamental(chart, p);
    const SignatureMetric amb = chart.ambient.metric;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            VecD da(amb.dim, 0.0), db(amb.dim, 0.0);
            for (int j = 0; j < amb.dim; ++j) {
                testutil::RealFn fj = [&, j](const std::vector<double>& q) {
                    return evaluate_immersion(chart, q, 0)[j].value();
                };
                da[j] = testutil::fd_first(fj, p, a, 1e-3);
                db[j] = testutil::fd_first(fj, p, b, 1e-3);
            }
            CHECK(std::abs(inner_generic(amb, da, db) - g(a, b)) <= 1e-7);
        }
}

TEST_CASE("second_fundamental: closed-form product principal curvatures and H") {
    CatalogEntry e = make_product_in_desitter(3, 1, std::sqrt(2.0));
    const VecD p = {0.15, 0.21, 0.05};
    auto [h, H] = second_fundamental(e.chart, p);
    SymEigen eig = sym_eigen(h);
    CHECK(eig.values[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
    CHECK(eig.values[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-10));
    CHECK(eig.values[2] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-10));
    CHECK(H == doctest::Approx((2.0 / std::sqrt(2.0) + std::sqrt(2.0)) / 3.0).epsilon(1e-12));
    CHECK(H == doctest::Approx(0.9428090415820634).epsilon(1e-12));
}

TEST_CASE("second_fundamental: totally geodesic equator has h = 0, flipping the anchor flips h") {
    ImmersionChart c = equatorial_sphere_chart();
    auto [h, H] = second_fundamental(c, {1.0, 0.8});
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(std::abs(h(i, j)) < 1e-10);
    CHECK(std::abs(H) < 1e-10);

    CatalogEntry e = make_product_in_desitter(3, 1, std::sqrt(2.0));
    ImmersionChart flipped = e.chart;
    for (auto& v : *flipped.normal_anchor) v = -v;
    auto [h1, H1] = second_fundamental(e.chart, {0.1, 0.2, 0.1});
    auto [h2, H2] = second_fundamental(flipped, {0.1, 0.2, 0.1});
    CHECK(H1 == doctest::Approx(-H2).epsilon(1e-12));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(h1(i, j) == doctest::Approx(-h2(i, j)).epsilon(1e-10));
}

TEST_CASE("conformal_factor: product value 1/sqrt(2); umbilic points are rejected") {
    CatalogEntry e = make_product_in_desitter(3, 1, std::sqrt(2.0));
    CHECK(conformal_factor(e.chart, {0.3, 0.1, 0.2}) ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK_THROWS_WITH_AS(conformal_factor(equatorial_sphere_chart(), {1.0, 0.8}),
                         doctest::Contains("umbilic"), dsc::Error);
}

TEST_CASE("christoffels: flat chart vanishes; polar sphere gives -sin cos; symmetry") {
    auto flat = christoffels(flat_graph_chart(), {0.1, 0.3});
    for (const auto& g : flat)
        for (double v : g.a) CHECK(std::abs(v) < 1e-13);

    ImmersionChart c = equatorial_sphere_chart();
    const double th = 0.9, ph = 0.7;
    auto gam = christoffels(c, {th, ph});
    CHECK(gam[0](1, 1) == doctest::Approx(-std::sin(th) * std::cos(th)).epsilon(1e-10));
    CHECK(gam[1](0, 1) == doctest::Approx(std::cos(th) / std::sin(th)).epsilon(1e-10));
    for (int cdx = 0; cdx < 2; ++cdx)
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) CHECK(gam[cdx](a, b) == gam[cdx](b, a));
}

TEST_CASE("covariant_hessian_logrho: vanishes for constant rho; symmetric; FD oracle on WP") {
    CatalogEntry e = make_product_in_desitter(3, 1, 1.3);
    MatD hess = covariant_hessian_logrho(e.chart, {0.2, 0.15, 0.1});
    for (double v : hess.a) CHECK(std::abs(v) < 1e-11);

    CatalogEntry wp = make_wp(3, 1, 1, std::sqrt(2.0));
    const VecD p = {0.25, 0.2, 1.1};
    MatD hw = covariant_hessian_logrho(wp.chart, p);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(std::abs(hw(i, j) - hw(j, i)) <= 1e-10);

    // finite differences of the e_i(log rho) gradient field plus the
    // Christoffel correction, all in chart coordinates
    ImmersionChart chart = wp.chart;
    testutil::RealFn logrho = [&](const std::vector<double>& q) {
        return std::log(conformal_factor(chart, q));
    };
    PointFrame f = compute_point_frame(chart, p, 4, true);
    MatD hess_coord(3, 3, 0.0);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            testutil::RealFn da = [&, a](const std::vector<double>& q) {
                return testutil::fd_first(logrho, q, a, 2e-3);
            };
            double v = testutil::fd_first(da, p, b, 2e-3);
            for (int c = 0; c < 3; ++c)
                v -= f.gamma_bar[c](a, b) * testutil::fd_first(logrho, p, c, 2e-3);
            hess_coord(a, b) = v;
        }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double v = 0.0;
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) v += f.S0(a, i) * hess_coord(a, b) * f.S0(b, j);
            CHECK(std::abs(v - hw(i, j)) <= 1e-6);
        }
}

TEST_CASE("quadric residual holds at every evaluated point; violation is caught") {
    CatalogEntry e = make_product_in_desitter(4, 2, 1.7);
    Grid grid = make_grid(e.chart.domain, 3);
    const SignatureMetric amb = e.chart.ambient.metric;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        auto x = evaluate_immersion(e.chart, grid.point(i), 2);
        VecD xv(amb.dim);
        for (int j = 0; j < amb.dim; ++j) xv[j] = x[j].value();
        CHECK(std::abs(inner_generic(amb, xv, xv) - 1.0) <= 1e-10);
    }

    ImmersionChart bad = e.chart;
    bad.map = [inner = e.chart.map](const std::vector<Jet>& uv) {
        auto x = inner(uv);
        x[0] = x[0] + 1e-6;
        return x;
    };
    CHECK_THROWS_WITH_AS(evaluate_immersion(bad, grid.point(0), 2), doctest::Contains("quadric"),
                         dsc::Error);
}

TEST_CASE("ambient Gauss sanity: intrinsic sectional curvatures of the product") {
    // S^{m-k}(a) x H^k(-1/(a^2-1)): sphere-sphere 1/a^2, mixed 0, hyp-hyp -1/(a^2-1),
    // matching 1 - h_i h_j for h in the <dn,dx> sign convention
    const double a = 1.7;
    CatalogEntry e = make_product_in_desitter(4, 2, a);
    const VecD p = {0.22, 0.05, 0.12, 0.03};
    PointFrame f = compute_point_frame(e.chart, p, 4, true);
    CurvatureFrame cf = curvature_in_frame(f.gbar, f.S0);
    // identify directions by h eigenvalues: beta (hyp) vs alpha (sphere)
    const double alpha = std::sqrt(a * a - 1.0) / a;
    SymEigen eig = sym_eigen(f.h_frame0);
    // frame {e_i} already diagonalizes h for this chart (orthogonal factors)
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (i == j) continue;
            const double hi = f.h_frame0(i, i), hj = f.h_frame0(j, j);
            const double sec = -cf.R.at(i, j, i, j);  // sectional curvature
            CHECK(std::abs(sec - (1.0 - hi * hj)) <= 1e-6);
        }
    (void)alpha;
    (void)eig;
}

TEST_CASE("rho is chart invariant across overlapping parametrizations") {
    // same surface S^2(sqrt2) x H^1 with the hyperbolic factor in graph vs
    // rapidity coordinates
    const double aa = std::sqrt(2.0);
    CatalogEntry e = make_product_in_desitter(3, 1, aa);
    ImmersionChart rapidity = e.chart;
    rapidity.map = [aa](const std::vector<Jet>& uv) {
        const double bh = std::sqrt(aa * aa - 1.0);
        std::vector<Jet> out;
        out.push_back(bh * jet_cosh(uv[0]));
        out.push_back(bh * jet_sinh(uv[0]));
        std::vector<Jet> v(uv.begin() + 1, uv.end());
        Jet s2 = v[0] * v[0] + v[1] * v[1];
        out.push_back(aa * jet_sqrt(1.0 - s2));
        out.push_back(aa * v[0]);
        out.push_back(aa * v[1]);
        return out;
    };
    rapidity.normal_anchor.reset();
    prepare_chart(rapidity);
    for (double w : {0.1, 0.25, 0.4}) {
        const VecD p_graph = {w, 0.15, 0.2};
        const VecD p_rap = {std::asinh(w), 0.15, 0.2};
        CHECK(std::abs(conformal_factor(e.chart, p_graph) - conformal_factor(rapidity, p_rap)) <=
              1e-8);
    }
}
