#pragma once

#include <vector>

#include "dsc/common.hpp"
#include "dsc/linalg.hpp"

namespace dsc {

/// Inner product of R^{p+q} with `s` leading time-like coordinates:
/// <v,w> = -sum_{i<s} v_i w_i + sum_{i>=s} v_i w_i.
struct SignatureMetric {
    int dim = 0;
    int s = 0;  // number of leading time-like slots

    SignatureMetric() = default;
    SignatureMetric(int dim_, int s_) : dim(dim_), s(s_) {
        require(dim >= 1 && s >= 0 && s <= dim, "SignatureMetric: invalid signature");
    }
    double sign(int i) const { return i < s ? -1.0 : 1.0; }
    bool operator==(const SignatureMetric& o) const { return dim == o.dim && s == o.s; }
};

struct LorentzVector {
    SignatureMetric metric;
    VecD x;

    LorentzVector() = default;
    LorentzVector(SignatureMetric m, VecD coords) : metric(m), x(std::move(coords)) {
        require(static_cast<int>(x.size()) == metric.dim, "LorentzVector: length mismatch");
    }
};

template <class T>
T inner_generic(const SignatureMetric& g, const std::vector<T>& v, const std::vector<T>& w) {
    require(static_cast<int>(v.size()) == g.dim && static_cast<int>(w.size()) == g.dim,
            "inner: dimension mismatch");
    T acc = zero_like(v[0]);
    for (int i = 0; i < g.dim; ++i) {
        if (i < g.s)
            acc = acc - v[i] * w[i];
        else
            acc = acc + v[i] * w[i];
    }
    return acc;
}

double inner(const SignatureMetric& g, const LorentzVector& v, const LorentzVector& w);

/// Gram-Schmidt against <.,.>_s; every output vector must be space-like.
std::vector<LorentzVector> orthonormalize_spacelike(const SignatureMetric& g,
                                                    const std::vector<LorentzVector>& basis);

/// Unit time-like vector orthogonal to all constraints. The sign is the
/// caller's business (see normal anchoring in the hypersurface pipeline);
/// this returns the representative whose largest-magnitude component is
/// positive.
LorentzVector timelike_normal(const SignatureMetric& g, const std::vector<LorentzVector>& constraints);

/// Generic core for the same computation with rows of tangent/constraint
/// coordinates; returns the unnormalized null vector of <b_k, .> = 0.
template <class T>
std::vector<T> metric_null_vector(const SignatureMetric& g, const Mat<T>& constraint_rows) {
    require(constraint_rows.c == g.dim && constraint_rows.r == g.dim - 1,
            "metric_null_vector: need dim-1 constraints");
    Mat<T> rows = constraint_rows;
    for (int i = 0; i < rows.r; ++i)
        for (int j = 0; j < g.s; ++j) rows(i, j) = zero_like(rows(i, j)) - rows(i, j);
    return null_space_1d(rows);
}

/// Element of O(dim - s, s) acting on R^dim with the leading-time-like
/// convention; M^T G M = G is verified to 1e-12 at construction.
struct PseudoOrthogonalMap {
    SignatureMetric metric;
    MatD matrix;

    PseudoOrthogonalMap(SignatureMetric g, MatD m);
    LorentzVector apply(const LorentzVector& v) const;
    VecD apply(const VecD& v) const;
};

/// Swap of the two leading (time-like) coordinates; maps U1-charts to
/// U2-charts of the projectivized light cone.
PseudoOrthogonalMap block_swap(const SignatureMetric& g);

/// exp(M) with M = G*Omega, Omega antisymmetric with entries in [-1,1] drawn
/// from a seeded mt19937_64; deterministic across platforms.
PseudoOrthogonalMap random_pseudo_orthogonal(const SignatureMetric& g, uint64_t seed);

}  // namespace dsc
