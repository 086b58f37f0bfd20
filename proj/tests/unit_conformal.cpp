#include "doctest.h"

#include <cmath>
#include <random>

#include "dsc/catalog.hpp"
#include "dsc/checker.hpp"
#include "dsc/fields.hpp"

using namespace dsc;

namespace {

VecD sorted_eig_values(const MatD& m) {
    return sym_eigen(m).values;
}

VecD expected_flat(const std::vector<std::pair<double, int>>& e) {
    VecD out;
    for (const auto& [v, mult] : e)
        for (int i = 0; i < mult; ++i) out.push_back(v);
    return out;
}

double eig_dev(const MatD& mat, const std::vector<std::pair<double, int>>& expected) {
    VecD got = sorted_eig_values(mat);
    VecD want = expected_flat(expected);
    REQUIRE(got.size() == want.size());
    double d = 0.0;
    for (std::size_t i = 0; i < got.size(); ++i) d = std::max(d, std::abs(got[i] - want[i]));
    return d;
}

}  // namespace

TEST_CASE("conformal_B: product eigenvalues, trace and norm identities") {
    CatalogEntry e = make_product_in_desitter(3, 1, std::sqrt(2.0));
    InvariantPoint iv = compute_invariants(e.chart, {0.25, 0.12, 0.18});
    CHECK(eig_dev(iv.B, {{2.0 / 3.0, 1}, {-1.0 / 3.0, 2}}) <= 1e-10);
    double tr = 0.0, n2 = 0.0;
    for (int i = 0; i < 3; ++i) {
        tr += iv.B(i, i);
        for (int j = 0; j < 3; ++j) n2 += iv.B(i, j) * iv.B(i, j);
    }
    CHECK(std::abs(tr) <= 1e-9);
    CHECK(std::abs(n2 - 2.0 / 3.0) <= 1e-7);
    CHECK(iv.rho == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("blaschke routes agree and match the product closed form") {
    CatalogEntry e = make_product_in_desitter(3, 1, std::sqrt(2.0));
    InvariantPoint iv = compute_invariants(e.chart, {0.32, 0.2, -0.05});
    // closed form: A = -2 H h + (H^2+1) I with rho^2 = 1/2
    CHECK(eig_dev(iv.A_direct, {{5.0 / 9.0, 2}, {-7.0 / 9.0, 1}}) <= 1e-9);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(std::abs(iv.A_direct(i, j) - iv.A_ricci(i, j)) <= 1e-8);
    CHECK(iv.curv.kappa == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
    // tr A = (m^2 kappa - 1) / (2m) = 1/3
    double tr = 0.0;
    for (int i = 0; i < 3; ++i) tr += iv.A_direct(i, i);
    CHECK(tr == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("blaschke symmetry and m = 2 Ricci-route error") {
    CatalogEntry e = make_product_in_desitter(3, 2, 1.6);
    InvariantPoint iv = compute_invariants(e.chart, {0.1, 0.4, 0.3});
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(std::abs(iv.A_direct(i, j) - iv.A_direct(j, i)) <= 1e-10);

    CatalogEntry e2 = make_product_in_desitter(2, 1, 1.5);
    InvariantPoint iv2 = compute_invariants(e2.chart, {0.2, 0.1});
    CHECK(iv2.has_A);
    MatD ric = iv2.curv.ricci;
    CHECK_THROWS_WITH_AS(blaschke_from_ricci(ric, iv2.B, iv2.curv.kappa),
                         doctest::Contains("Ricci route"), dsc::Error);
}

TEST_CASE("para_blaschke: lambda 0 returns A; product D eigenvalues shift linearly") {
    CatalogEntry e = make_product_in_desitter(3, 1, std::sqrt(2.0));
    InvariantPoint iv = compute_invariants(e.chart, {0.2, 0.2, 0.1});
    MatD d0 = iv.para_blaschke(0.0);
    for (std::size_t i = 0; i < d0.a.size(); ++i) CHECK(d0.a[i] == iv.A_direct.a[i]);
    MatD dl = iv.para_blaschke(0.5);
    CHECK(eig_dev(dl, {{5.0 / 9.0 - 0.5 / 3.0, 2}, {-7.0 / 9.0 + 1.0 / 3.0, 1}}) <= 1e-9);
}

TEST_CASE("conformal curvature: example families and first Bianchi") {
    // example 3.2 feasible instance (m=3, K=2, r=2): lambda = sqrt(7)/6 and the
    // outer hyperbolic block has sectional curvature -(lambda^2 + 2 d) = -1/4
    CatalogEntry e32 = make_example_32(3, 2, 2.0);
    CHECK(e32.lambda_structural == doctest::Approx(std::sqrt(7.0) / 6.0).epsilon(1e-12));
    InvariantPoint iv = compute_invariants(e32.chart, {0.2, 0.12, 0.1});
    // identify the outer block direction: B eigenvalue -lambda
    SymEigen be = sym_eigen(iv.B);
    int outer = 2;  // descending order: -lambda is the smallest for 3.2
    MatD v = be.vectors;
    // sectional curvature along (outer, outer) pair needs another direction;
    // for m = 3 the outer block is 1-dimensional, so check the D-eigenvalue
    // route instead: 2*d_inner + lambda^2 = 1/r^2
    MatD dmat = iv.para_blaschke(e32.lambda_structural);
    SymEigen de = sym_eigen(dmat);
    const double lam = e32.lambda_structural;
    CHECK(de.values[0] == doctest::Approx(1.0 / 36.0).epsilon(1e-8));
    CHECK(de.values[2] == doctest::Approx(-2.0 / 9.0).epsilon(1e-8));
    CHECK(2.0 * de.values[0] + lam * lam == doctest::Approx(0.25).epsilon(1e-8));
    (void)outer;
    (void)v;

    // example 3.3 at r = sqrt(3): lambda = 0, outer sphere block curvature
    // -(2d) = +1/3 where d = -1/6
    CatalogEntry e33 = make_example_33(3, 2, std::sqrt(3.0));
    CHECK(std::abs(e33.lambda_structural) <= 1e-12);
    InvariantPoint iv33 = compute_invariants(e33.chart, {0.25, 0.2, 0.14});
    SymEigen de33 = sym_eigen(iv33.A_direct);
    CHECK(de33.values[0] == doctest::Approx(1.0 / 6.0).epsilon(1e-8));
    CHECK(de33.values[1] == doctest::Approx(-1.0 / 6.0).epsilon(1e-8));
    CHECK(de33.values[2] == doctest::Approx(-1.0 / 6.0).epsilon(1e-8));

    // first Bianchi identity on a generic entry
    const int m = 3;
    double worst = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l)
                    worst = std::max(worst,
                                     std::abs(iv.curv.R.at(i, j, k, l) + iv.curv.R.at(i, k, l, j) +
                                              iv.curv.R.at(i, l, j, k)));
    CHECK(worst <= 1e-8);
}

TEST_CASE("mixed curvature components vanish across product blocks (item5 flat factor)") {
    CatalogEntry e5 = make_lifted_product(LiftedKind::Item5, 3, 1, 1.0);
    InvariantPoint iv = compute_invariants(e5.chart, {0.2, 0.7, 0.6});
    // conformal metric of H^1 x R^2 is a product: curvature has no mixed terms
    // in the adapted frame; check via the Gauss identity instead of frames:
    // R_{ijkl} is reproduced by B and A exactly
    const int m = 3;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l) {
                    const double rhs = iv.B(i, k) * iv.B(j, l) - iv.B(i, l) * iv.B(j, k) +
                                       iv.A_direct(i, l) * (j == k ? 1 : 0) -
                                       iv.A_direct(i, k) * (j == l ? 1 : 0) +
                                       iv.A_direct(j, k) * (i == l ? 1 : 0) -
                                       iv.A_direct(j, l) * (i == k ? 1 : 0);
                    CHECK(std::abs(iv.curv.R.at(i, j, k, l) - rhs) <= 1e-6);
                }
}

TEST_CASE("conformal form Phi vanishes on catalog entries") {
    for (const char* which : {"e32", "e33", "product"}) {
        CatalogEntry e = which == std::string("e32")   ? make_example_32(3, 2, 2.0)
                         : which == std::string("e33") ? make_example_33(3, 2, std::sqrt(3.0))
                                                       : make_product_in_desitter(3, 1, std::sqrt(2.0));
        Grid grid = make_grid(e.chart.domain, 3);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            InvariantPoint iv = compute_invariants(e.chart, grid.point(i));
            for (double v : iv.Phi) CHECK(std::abs(v) <= 1e-7);
        }
    }
}

TEST_CASE("frame covariance: rotating the frame leaves eigenvalues unchanged") {
    CatalogEntry e = make_example_32(3, 2, 2.0);
    InvariantPoint iv = compute_invariants(e.chart, {0.3, 0.1, 0.2});
    std::mt19937_64 rng(31);
    // random rotation via exp of antisymmetric
    MatD w(3, 3, 0.0);
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            double v = uniform_pm1(rng);
            w(i, j) = v;
            w(j, i) = -v;
        }
    MatD q = mat_exp(w);
    auto rotate = [&](const MatD& mat) {
        MatD r(3, 3, 0.0);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double s = 0.0;
                for (int a = 0; a < 3; ++a)
                    for (int b = 0; b < 3; ++b) s += q(a, i) * mat(a, b) * q(b, j);
                r(i, j) = s;
            }
        return r;
    };
    for (const MatD* mat : {&iv.B, &iv.A_direct}) {
        VecD before = sorted_eig_values(*mat);
        VecD after = sorted_eig_values(rotate(*mat));
        for (int i = 0; i < 3; ++i) CHECK(std::abs(before[i] - after[i]) <= 1e-9);
    }
}

TEST_CASE("moving frame identities and structure equations on catalog samples") {
    for (int which = 0; which < 3; ++which) {
        CatalogEntry e = which == 0   ? make_product_in_desitter(3, 1, std::sqrt(2.0))
                         : which == 1 ? make_example_32(3, 2, 2.0)
                                      : make_example_33(3, 2, std::sqrt(3.0));
        ResidualReport rep = moving_frame_check(e.chart, e.chart.basepoint());
        for (const auto& row : rep.rows) {
            INFO(e.id << " " << row.name << " = " << row.value);
            CHECK(row.pass);
        }
    }
}

TEST_CASE("xi normalization holds pointwise") {
    CatalogEntry e = make_wp(3, 1, 1, std::sqrt(2.0));
    Grid grid = make_grid(e.chart.domain, 3);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        MovingFramePoint mf = moving_frame_point(e.chart, grid.point(i));
        CHECK(mf.res_xixi <= 1e-10);
    }
}
