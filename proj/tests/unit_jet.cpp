#include "doctest.h"

#include <cmath>
#include <random>

#include "dsc/jet.hpp"
#include "test_helpers.hpp"

using namespace dsc;

TEST_CASE("jet square at basepoint 2 expands (x0+d)^2") {
    const JetTable* t = JetTable::get(1, 2);
    Jet x = Jet::variable(t, 0, 2.0);
    Jet y = x * x;
    CHECK(y.coeff_at({0}) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(y.coeff_at({1}) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(y.coeff_at({2}) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("exp of the zero jet is the constant 1") {
    const JetTable* t = JetTable::get(2, 3);
    Jet z(t, 0.0);
    Jet e = jet_exp(z);
    CHECK(e.value() == doctest::Approx(1.0));
    for (int i = 1; i < t->size(); ++i) CHECK(e.coeff(i) == doctest::Approx(0.0));
}

TEST_CASE("log(1+u) reproduces the Mercator series") {
    const JetTable* t = JetTable::get(1, 3);
    Jet u = Jet::variable(t, 0, 0.0);
    Jet l = jet_log(1.0 + u);
    CHECK(l.coeff_at({0}) == doctest::Approx(0.0));
    CHECK(l.coeff_at({1}) == doctest::Approx(1.0));
    CHECK(l.coeff_at({2}) == doctest::Approx(-0.5));
    CHECK(l.coeff_at({3}) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("product rule holds exactly coefficientwise") {
    std::mt19937_64 rng(7);
    const JetTable* t = JetTable::get(3, 4);
    for (int trial = 0; trial < 10; ++trial) {
        Jet f(t, 0.0), g(t, 0.0);
        for (int i = 0; i < t->size(); ++i) {
            f.coeff(i) = uniform_pm1(rng);
            g.coeff(i) = uniform_pm1(rng);
        }
        Jet fg = f * g;
        for (int k = 0; k < 3; ++k) {
            Jet lhs = fg.derivative(k);
            Jet rhs = f.derivative(k) * g.truncated(3) + f.truncated(3) * g.derivative(k);
            for (int i = 0; i < lhs.table()->size(); ++i)
                CHECK(lhs.coeff(i) == doctest::Approx(rhs.coeff(i)).epsilon(1e-13));
        }
    }
}

TEST_CASE("truncation coherence: compute high then drop equals compute low") {
    const JetTable* t4 = JetTable::get(2, 4);
    const JetTable* t3 = JetTable::get(2, 3);
    Jet x4 = Jet::variable(t4, 0, 0.7), y4 = Jet::variable(t4, 1, -0.2);
    Jet x3 = Jet::variable(t3, 0, 0.7), y3 = Jet::variable(t3, 1, -0.2);
    Jet f4 = jet_exp(jet_sin(x4) * y4 + jet_sqrt(2.0 + x4));
    Jet f3 = jet_exp(jet_sin(x3) * y3 + jet_sqrt(2.0 + x3));
    Jet dropped = f4.truncated(3);
    for (int i = 0; i < t3->size(); ++i)
        CHECK(dropped.coeff(i) == doctest::Approx(f3.coeff(i)).epsilon(1e-14));
}

TEST_CASE("division by a jet with zero constant term raises jet singularity") {
    const JetTable* t = JetTable::get(1, 2);
    Jet x = Jet::variable(t, 0, 0.0);
    Jet num(t, 1.0);
    CHECK_THROWS_WITH_AS(num / x, doctest::Contains("jet singularity"), dsc::Error);
}

namespace {

// Random compositions of the supported primitives, guarded so every
// intermediate stays in-domain and O(1).
struct RandomExpr {
    std::vector<int> ops;      // opcode per node
    std::vector<double> cs;    // constants
    int nvars;

    template <class T>
    T eval(const std::vector<T>& x) const {
        T acc = x[0];
        std::size_t ci = 0;
        for (std::size_t k = 0; k < ops.size(); ++k) {
            const int op = ops[k];
            const T arg = x[(k + 1) % nvars];
            switch (op) {
                case 0: acc = acc + arg * cs[ci++]; break;
                case 1: acc = acc * (arg * 0.5 + cs[ci++]); break;
                case 2: acc = sin_of(acc * 0.7) + arg * cs[ci++]; break;
                case 3: acc = cos_of(acc * 0.6) * cs[ci++] + arg * 0.3; break;
                case 4: acc = exp_of(acc * 0.4) * 0.5 + arg * cs[ci++]; break;
                case 5: acc = log_of(square(acc) * 0.5 + 1.5) + arg * cs[ci++]; break;
                case 6: acc = sqrt_of(square(acc) + 1.2) + arg * cs[ci++]; break;
                case 7: acc = sinh_of(acc * 0.3) + cosh_of(arg * 0.4) * cs[ci++]; break;
                case 8: acc = (acc * 0.5 + cs[ci++]) / (square(arg) * 0.3 + 1.4); break;
                default: acc = pow_of(square(acc) + 1.1, 0.7) + arg * cs[ci++]; break;
            }
        }
        return acc;
    }

    static double sin_of(double v) { return std::sin(v); }
    static double cos_of(double v) { return std::cos(v); }
    static double exp_of(double v) { return std::exp(v); }
    static double log_of(double v) { return std::log(v); }
    static double sqrt_of(double v) { return std::sqrt(v); }
    static double sinh_of(double v) { return std::sinh(v); }
    static double cosh_of(double v) { return std::cosh(v); }
    static double square(double v) { return v * v; }
    static double pow_of(double v, double p) { return std::pow(v, p); }
    static Jet sin_of(const Jet& v) { return jet_sin(v); }
    static Jet cos_of(const Jet& v) { return jet_cos(v); }
    static Jet exp_of(const Jet& v) { return jet_exp(v); }
    static Jet log_of(const Jet& v) { return jet_log(v); }
    static Jet sqrt_of(const Jet& v) { return jet_sqrt(v); }
    static Jet sinh_of(const Jet& v) { return jet_sinh(v); }
    static Jet cosh_of(const Jet& v) { return jet_cosh(v); }
    static Jet square(const Jet& v) { return v * v; }
    static Jet pow_of(const Jet& v, double p) { return jet_pow(v, p); }
};

RandomExpr random_expr(std::mt19937_64& rng, int nvars, int depth) {
    RandomExpr e;
    e.nvars = nvars;
    for (int k = 0; k < depth; ++k) {
        e.ops.push_back(static_cast<int>(rng() % 10));
        e.cs.push_back(0.3 * dsc::uniform_pm1(rng));
    }
    e.cs.push_back(0.0);  // slack
    return e;
}

}  // namespace

TEST_CASE("order-4 jet coefficients match Richardson finite differences on 50 random compositions") {
    std::mt19937_64 rng(2024);
    const int nvars = 3;
    const JetTable* t = JetTable::get(nvars, 4);
    int checked = 0;
    for (int trial = 0; trial < 50; ++trial) {
        RandomExpr ex = random_expr(rng, nvars, 3 + static_cast<int>(rng() % 3));
        std::vector<double> p = {0.3 * uniform_pm1(rng), 0.3 * uniform_pm1(rng), 0.3 * uniform_pm1(rng)};
        std::vector<Jet> xs = seed_point(t, p);
        Jet jf = ex.eval(xs);
        testutil::RealFn f = [&](const std::vector<double>& y) { return ex.eval(y); };
        for (int id = 0; id < t->size(); ++id) {
            std::vector<int> alpha(nvars);
            for (int k = 0; k < nvars; ++k) alpha[k] = t->exponents[id][k];
            const double fd = testutil::fd_partial(f, p, alpha, 0.01);
            const double jet_deriv = jf.coeff(id) * testutil::factorial_of_multi(alpha);
            const double scale = std::max(1.0, std::abs(jet_deriv));
            CHECK(std::abs(jet_deriv - fd) <= 1e-6 * scale);
            ++checked;
        }
    }
    CHECK(checked == 50 * t->size());
}

TEST_CASE("seed_point and derivative extraction") {
    const JetTable* t = JetTable::get(2, 3);
    auto xs = seed_point(t, {1.5, -0.5});
    CHECK(xs[0].value() == 1.5);
    CHECK(xs[1].value() == -0.5);
    Jet f = xs[0] * xs[1] + jet_pow(xs[0], 2);
    // df/dx0 = x1 + 2 x0 = -0.5 + 3 = 2.5
    CHECK(f.derivative(0).value() == doctest::Approx(2.5));
    CHECK(f.derivative(1).value() == doctest::Approx(1.5));
}
