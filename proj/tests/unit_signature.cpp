#include "doctest.h"

#include <cmath>
#include <random>

#include "dsc/signature.hpp"

using namespace dsc;

TEST_CASE("inner product examples") {
    SignatureMetric g2(5, 2);
    LorentzVector v(g2, {1, 0, 0, 0, 0});
    CHECK(inner(g2, v, v) == doctest::Approx(-1.0));

    SignatureMetric g1(3, 1);
    CHECK(inner(g1, LorentzVector(g1, {0, 1, 0}), LorentzVector(g1, {0, 0, 1})) == doctest::Approx(0.0));
    LorentzVector w(g1, {3, 4, 0});
    CHECK(inner(g1, w, w) == doctest::Approx(7.0));
}

TEST_CASE("inner is symmetric and bilinear on random triples") {
    std::mt19937_64 rng(3);
    SignatureMetric g(6, 2);
    for (int trial = 0; trial < 50; ++trial) {
        VecD a(6), b(6), c(6);
        for (int i = 0; i < 6; ++i) { a[i] = uniform_pm1(rng); b[i] = uniform_pm1(rng); c[i] = uniform_pm1(rng); }
        const double s = uniform_pm1(rng), t = uniform_pm1(rng);
        LorentzVector va(g, a), vb(g, b);
        CHECK(inner(g, va, vb) == doctest::Approx(inner(g, vb, va)).epsilon(1e-14));
        VecD comb(6);
        for (int i = 0; i < 6; ++i) comb[i] = s * a[i] + t * b[i];
        CHECK(inner(g, LorentzVector(g, comb), LorentzVector(g, c)) ==
              doctest::Approx(s * inner(g, va, LorentzVector(g, c)) + t * inner(g, vb, LorentzVector(g, c)))
                  .epsilon(1e-12));
    }
}

TEST_CASE("orthonormalize_spacelike examples and Gram property") {
    SignatureMetric g(3, 1);
    auto out = orthonormalize_spacelike(g, {LorentzVector(g, {0, 2, 0}), LorentzVector(g, {0, 1, 1})});
    CHECK(out[0].x[1] == doctest::Approx(1.0));
    CHECK(out[1].x[2] == doctest::Approx(1.0));

    SignatureMetric e(4, 0);
    std::vector<LorentzVector> basis;
    for (int i = 0; i < 4; ++i) {
        VecD v(4, 0.0);
        v[i] = 1.0;
        basis.emplace_back(e, v);
    }
    auto id = orthonormalize_spacelike(e, basis);
    for (int i = 0; i < 4; ++i) CHECK(id[i].x[i] == doctest::Approx(1.0));

    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        VecD a = {0.0, 0.0, 0.0}, b = {0.0, 0.0, 0.0};
        a[0] = 0.2 * uniform_pm1(rng); a[1] = 1.0 + 0.3 * uniform_pm1(rng); a[2] = 0.3 * uniform_pm1(rng);
        b[0] = 0.2 * uniform_pm1(rng); b[1] = 0.3 * uniform_pm1(rng); b[2] = 1.0 + 0.3 * uniform_pm1(rng);
        auto on = orthonormalize_spacelike(g, {LorentzVector(g, a), LorentzVector(g, b)});
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                CHECK(std::abs(inner(g, on[i], on[j]) - (i == j ? 1.0 : 0.0)) <= 1e-12);
    }
}

TEST_CASE("orthonormalize rejects degenerate spans") {
    SignatureMetric g(3, 1);
    CHECK_THROWS_WITH_AS(orthonormalize_spacelike(g, {LorentzVector(g, {0, 1, 0}), LorentzVector(g, {0, 2, 0})}),
                         doctest::Contains("frame degeneracy"), dsc::Error);
    // time-like input is rejected too
    CHECK_THROWS_WITH_AS(orthonormalize_spacelike(g, {LorentzVector(g, {1, 0.1, 0})}),
                         doctest::Contains("frame degeneracy"), dsc::Error);
}

TEST_CASE("timelike_normal: axis complement and normalization contract") {
    SignatureMetric g(3, 1);
    auto n = timelike_normal(g, {LorentzVector(g, {0, 1, 0}), LorentzVector(g, {0, 0, 1})});
    CHECK(n.x[0] == doctest::Approx(1.0));
    CHECK(std::abs(inner(g, n, n) + 1.0) <= 1e-10);

    // product S^2(sqrt2) x H^1(-1) in S^4_1 (ambient R^5_1): at the basepoint
    // xi = (1,0), eta = (1,0,0) the normal solves <n,x> = 0, <n,n> = -1 with
    // n = (alpha*xi, beta*eta), giving alpha = a/sqrt(a^2-1) = sqrt2 on the
    // hyperbolic block and beta = sqrt(a^2-1)/a * a = 1 on the sphere block.
    SignatureMetric amb(5, 1);
    const double a = std::sqrt(2.0);
    const double bh = std::sqrt(a * a - 1.0);
    VecD x = {bh * 1.0, bh * 0.0, a * 1.0, 0.0, 0.0};
    std::vector<LorentzVector> constraints = {
        LorentzVector(amb, {0.0, bh, 0, 0, 0}),    // hyperbolic tangent
        LorentzVector(amb, {0, 0, 0, a, 0}),       // sphere tangent 1
        LorentzVector(amb, {0, 0, 0, 0, a}),       // sphere tangent 2
        LorentzVector(amb, x),                     // quadric constraint
    };
    auto nn = timelike_normal(amb, constraints);
    CHECK(std::abs(inner(amb, nn, nn) + 1.0) <= 1e-10);
    CHECK(std::abs(nn.x[0]) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
    CHECK(std::abs(nn.x[2]) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(nn.x[1]) <= 1e-12);
}

TEST_CASE("random_pseudo_orthogonal: identity, invariant, determinism, inner preservation") {
    SignatureMetric g(6, 2);
    MatD id(6, 6, 0.0);
    for (int i = 0; i < 6; ++i) id(i, i) = 1.0;
    PseudoOrthogonalMap t0(g, id);  // exp(0) = I passes the invariant
    CHECK(t0.matrix(0, 0) == 1.0);

    auto t1 = random_pseudo_orthogonal(g, 42);
    auto t2 = random_pseudo_orthogonal(g, 42);
    for (std::size_t i = 0; i < t1.matrix.a.size(); ++i) CHECK(t1.matrix.a[i] == t2.matrix.a[i]);

    double worst = 0.0;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            double acc = 0.0;
            for (int k = 0; k < 6; ++k) acc += t1.matrix(k, i) * g.sign(k) * t1.matrix(k, j);
            worst = std::max(worst, std::abs(acc - (i == j ? g.sign(i) : 0.0)));
        }
    CHECK(worst <= 1e-10);

    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        auto tr = random_pseudo_orthogonal(g, 100 + trial);
        VecD v(6), w(6);
        for (int i = 0; i < 6; ++i) { v[i] = uniform_pm1(rng); w[i] = uniform_pm1(rng); }
        LorentzVector lv(g, v), lw(g, w);
        CHECK(std::abs(inner(g, tr.apply(lv), tr.apply(lw)) - inner(g, lv, lw)) <= 1e-9);
    }
}

TEST_CASE("block swap exchanges the two leading slots") {
    SignatureMetric g(5, 2);
    auto t = block_swap(g);
    LorentzVector v(g, {1, 2, 3, 4, 5});
    auto w = t.apply(v);
    CHECK(w.x[0] == 2.0);
    CHECK(w.x[1] == 1.0);
    CHECK(w.x[2] == 3.0);
}
