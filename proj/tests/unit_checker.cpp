#include "doctest.h"

#include <cmath>
#include <random>

#include "dsc/catalog.hpp"
#include "dsc/checker.hpp"

using namespace dsc;

namespace {

std::vector<MatD> frame_field(const FieldBundle& fb, bool use_B, double lambda = 0.0) {
    std::vector<MatD> out;
    out.reserve(fb.pts.size());
    for (std::size_t i = 0; i < fb.pts.size(); ++i)
        out.push_back(use_B ? fb.pts[i].B : fb.D_frame(i, lambda));
    return out;
}

}  // namespace

TEST_CASE("eigen_structure: example 3.2 D field has t = 2 with the expected block pattern") {
    CatalogEntry e = make_example_32(3, 2, 2.0);
    FieldBundle fb = sweep_invariants(e.chart, make_grid(e.chart.domain, 5));
    EigenStructure es = eigen_structure(frame_field(fb, false, e.lambda_structural));
    CHECK(es.t == 2);
    CHECK(es.mult[0] == 2);
    CHECK(es.mult[1] == 1);
    CHECK(es.values[0] == doctest::Approx(1.0 / 36.0).epsilon(1e-7));
    CHECK(es.values[1] == doctest::Approx(-2.0 / 9.0).epsilon(1e-7));
    CHECK(es.cluster_spread <= 1e-6);

    EigenStructure bs = eigen_structure(frame_field(fb, true));
    CHECK(bs.t == 3);
}

TEST_CASE("eigen_structure: WP B field has exactly three distinct constant values") {
    CatalogEntry e = make_wp(3, 1, 1, std::sqrt(2.0));
    FieldBundle fb = sweep_invariants(e.chart, make_grid(e.chart.domain, 5));
    EigenStructure bs = eigen_structure(frame_field(fb, true));
    CHECK(bs.t == 3);
    CHECK(bs.cluster_spread <= 1e-6);
}

TEST_CASE("eigen_structure: identity field, perturbation stability, multiplicity errors") {
    MatD id(4, 4, 0.0);
    for (int i = 0; i < 4; ++i) id(i, i) = 1.0;
    std::vector<MatD> field(10, id);
    EigenStructure es = eigen_structure(field);
    CHECK(es.t == 1);
    CHECK(es.mult[0] == 4);

    // stable under 1e-9 symmetric perturbations
    std::mt19937_64 rng(3);
    std::vector<MatD> pert = field;
    for (auto& mtx : pert)
        for (int i = 0; i < 4; ++i)
            for (int j = i; j < 4; ++j) {
                const double v = 1e-9 * uniform_pm1(rng);
                mtx(i, j) += v;
                mtx(j, i) = mtx(i, j);
            }
    EigenStructure es2 = eigen_structure(pert);
    CHECK(es2.t == 1);

    // cluster pattern changing across the grid is an error
    std::vector<MatD> bad = field;
    bad[5](0, 0) = 2.0;
    CHECK_THROWS_WITH_AS(eigen_structure(bad), doctest::Contains("non-constant multiplicity"),
                         dsc::Error);

    // permutation invariance of the input frame
    MatD diag(3, 3, 0.0);
    diag(0, 0) = 0.3; diag(1, 1) = -0.1; diag(2, 2) = 0.9;
    MatD perm(3, 3, 0.0);
    perm(0, 2) = perm(1, 0) = perm(2, 1) = 1.0;
    MatD conj(3, 3, 0.0);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) s += perm(a, i) * diag(a, b) * perm(b, j);
            conj(i, j) = s;
        }
    EigenStructure ea = eigen_structure({diag});
    EigenStructure eb = eigen_structure({conj});
    for (int i = 0; i < 3; ++i) CHECK(ea.values[i] == doctest::Approx(eb.values[i]).epsilon(1e-12));
}

TEST_CASE("simultaneous diagonalization: catalog entries pass, injected noise is seen, t=1 vacuous") {
    CatalogEntry e = make_example_33(3, 2, std::sqrt(3.0));
    FieldBundle fb = sweep_invariants(e.chart, make_grid(e.chart.domain, 5));
    auto dfield = frame_field(fb, false, e.lambda_structural);
    auto bfield = frame_field(fb, true);
    CHECK(simultaneous_diag_check(dfield, bfield) <= 1e-6);

    auto noisy = bfield;
    for (auto& mtx : noisy) {
        mtx(0, 2) += 1e-3;
        mtx(2, 0) += 1e-3;
    }
    const double r = simultaneous_diag_check(dfield, noisy);
    CHECK(r >= 2e-4);
    CHECK(r <= 5e-3);

    std::vector<MatD> dconst(dfield.size(), MatD(3, 3, 0.0));
    for (auto& mtx : dconst)
        for (int i = 0; i < 3; ++i) mtx(i, i) = 0.7;
    CHECK(simultaneous_diag_check(dconst, bfield) == 0.0);
}

TEST_CASE("dichotomy: 3.2 and 3.3 satisfy d1+d2 = -lambda^2 with one block at -lambda") {
    CatalogEntry e32 = make_example_32(3, 2, 2.0);
    FieldBundle f32 = sweep_invariants(e32.chart, make_grid(e32.chart.domain, 5));
    auto d32 = frame_field(f32, false, e32.lambda_structural);
    auto b32 = frame_field(f32, true);
    EigenStructure es32 = eigen_structure(d32);
    DichotomyReport rep = dichotomy_check(es32, d32, b32, e32.lambda_structural);
    CHECK(rep.applicable);
    CHECK(rep.sum_residual <= 1e-6);
    CHECK(rep.block_residual <= 1e-6);
    CHECK(2.0 * rep.d_inner + e32.lambda_structural * e32.lambda_structural ==
          doctest::Approx(0.25).epsilon(1e-6));

    // lambda = 0 at the symmetric 3.3 instance: d1 = -d2
    CatalogEntry e33 = make_example_33(3, 2, std::sqrt(3.0));
    FieldBundle f33 = sweep_invariants(e33.chart, make_grid(e33.chart.domain, 5));
    auto d33 = frame_field(f33, false, 0.0);
    EigenStructure es33 = eigen_structure(d33);
    DichotomyReport rep33 = dichotomy_check(es33, d33, frame_field(f33, true), 0.0);
    CHECK(rep33.applicable);
    CHECK(std::abs(es33.values[0] + es33.values[1]) <= 1e-6);
    CHECK(rep33.block_residual <= 1e-6);

    // not applicable at t = 3
    EigenStructure bs = eigen_structure(frame_field(f32, true));
    DichotomyReport skip = dichotomy_check(bs, b32, b32, 0.0);
    CHECK_FALSE(skip.applicable);
    CHECK(!skip.skip_reason.empty());
}

TEST_CASE("classify: t = 1 synthetic field lands in the constant-curvature bucket") {
    ClassificationInputs in;
    in.m = 3;
    in.route = "direct";
    in.lambda = 0.2;
    in.phi_max = 1e-9;
    in.grad_B = 1e-2;  // B not parallel
    in.grad_D = 1e-7;
    in.D_structure.t = 1;
    in.D_structure.values = {0.4};
    in.D_structure.mult = {3};
    in.B_structure.t = 3;
    ClassificationVerdict v = classify(in);
    CHECK(v.branch == "item1-3-cmc-csc");
}

TEST_CASE("classify is total and deterministic on malformed inputs") {
    ClassificationInputs in;
    in.m = 3;
    in.route = "unknown";
    in.phi_max = 1.0;
    in.grad_D = 0.0;
    ClassificationVerdict v = classify(in);
    CHECK(v.branch == "inconsistent");
    CHECK(v.detail.find("phi_max") != std::string::npos);

    in.phi_max = 0.0;
    in.grad_D = 1.0;
    v = classify(in);
    CHECK(v.branch == "inconsistent");
    CHECK(v.detail.find("not parallel") != std::string::npos);
}
