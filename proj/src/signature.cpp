#include "dsc/signature.hpp"

#include <cmath>

namespace dsc {

double inner(const SignatureMetric& g, const LorentzVector& v, const LorentzVector& w) {
    require(v.metric == g && w.metric == g, "inner: metric mismatch");
    return inner_generic(g, v.x, w.x);
}

std::vector<LorentzVector> orthonormalize_spacelike(const SignatureMetric& g,
                                                    const std::vector<LorentzVector>& basis) {
    std::vector<LorentzVector> out;
    out.reserve(basis.size());
    for (const auto& b : basis) {
        VecD v = b.x;
        for (const auto& e : out) {
            const double proj = inner_generic(g, v, e.x);
            for (int i = 0; i < g.dim; ++i) v[i] -= proj * e.x[i];
        }
        const double n2 = inner_generic(g, v, v);
        require(n2 > 1e-12, "frame degeneracy: non-space-like or dependent direction");
        const double inv = 1.0 / std::sqrt(n2);
        for (auto& c : v) c *= inv;
        out.emplace_back(g, std::move(v));
    }
    return out;
}

LorentzVector timelike_normal(const SignatureMetric& g, const std::vector<LorentzVector>& constraints) {
    require(static_cast<int>(constraints.size()) == g.dim - 1,
            "timelike_normal: need dim-1 constraints");
    Mat<double> rows(g.dim - 1, g.dim, 0.0);
    for (int i = 0; i < rows.r; ++i) {
        require(constraints[i].metric == g, "timelike_normal: metric mismatch");
        for (int j = 0; j < g.dim; ++j) rows(i, j) = constraints[i].x[j];
    }
    VecD n = metric_null_vector(g, rows);
    const double n2 = inner_generic(g, n, n);
    require(n2 < -1e-14, "no time-like normal: orthogonal complement is not time-like");
    const double inv = 1.0 / std::sqrt(-n2);
    for (auto& c : n) c *= inv;
    int imax = 0;
    for (int i = 1; i < g.dim; ++i)
        if (std::abs(n[i]) > std::abs(n[imax])) imax = i;
    if (n[imax] < 0.0)
        for (auto& c : n) c = -c;
    return LorentzVector(g, std::move(n));
}

PseudoOrthogonalMap::PseudoOrthogonalMap(SignatureMetric g, MatD m) : metric(g), matrix(std::move(m)) {
    require(matrix.r == g.dim && matrix.c == g.dim, "PseudoOrthogonalMap: dimension mismatch");
    double worst = 0.0;
    for (int i = 0; i < g.dim; ++i) {
        for (int j = 0; j < g.dim; ++j) {
            double acc = 0.0;
            for (int k = 0; k < g.dim; ++k) acc += matrix(k, i) * g.sign(k) * matrix(k, j);
            const double target = (i == j) ? g.sign(i) : 0.0;
            worst = std::max(worst, std::abs(acc - target));
        }
    }
    require(worst <= 1e-12, "PseudoOrthogonalMap: M^T G M != G");
}

LorentzVector PseudoOrthogonalMap::apply(const LorentzVector& v) const {
    require(v.metric == metric, "PseudoOrthogonalMap: metric mismatch");
    return LorentzVector(metric, apply(v.x));
}

VecD PseudoOrthogonalMap::apply(const VecD& v) const {
    VecD out(metric.dim, 0.0);
    for (int i = 0; i < metric.dim; ++i)
        for (int j = 0; j < metric.dim; ++j) out[i] += matrix(i, j) * v[j];
    return out;
}

PseudoOrthogonalMap block_swap(const SignatureMetric& g) {
    require(g.s >= 2, "block_swap: needs two leading time-like slots");
    MatD t(g.dim, g.dim, 0.0);
    t(0, 1) = t(1, 0) = 1.0;
    for (int i = 2; i < g.dim; ++i) t(i, i) = 1.0;
    return PseudoOrthogonalMap(g, std::move(t));
}

PseudoOrthogonalMap random_pseudo_orthogonal(const SignatureMetric& g, uint64_t seed) {
    std::mt19937_64 rng(seed);
    MatD omega(g.dim, g.dim, 0.0);
    // entries bounded by 1; the 1/dim factor keeps exp(M) well inside the
    // 1e-12 orthogonality budget and the boosts moderate
    for (int i = 0; i < g.dim; ++i)
        for (int j = i + 1; j < g.dim; ++j) {
            const double v = uniform_pm1(rng) / g.dim;
            omega(i, j) = v;
            omega(j, i) = -v;
        }
    MatD m(g.dim, g.dim, 0.0);
    for (int i = 0; i < g.dim; ++i)
        for (int j = 0; j < g.dim; ++j) m(i, j) = g.sign(i) * omega(i, j);
    return PseudoOrthogonalMap(g, mat_exp(m));
}

}  // namespace dsc
