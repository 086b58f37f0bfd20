#include "dsc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dsc {

namespace {

double hypot2(double a, double b) { return std::sqrt(a * a + b * b); }

// Householder reduction to tridiagonal form (tred2, with eigenvector
// accumulation). d: diagonal, e: subdiagonal.
void tred2(MatD& z, VecD& d, VecD& e) {
    const int n = z.r;
    for (int i = n - 1; i > 0; --i) {
        int l = i - 1;
        double h = 0.0, scale = 0.0;
        if (l > 0) {
            for (int k = 0; k <= l; ++k) scale += std::abs(z(i, k));
            if (scale == 0.0) {
                e[i] = z(i, l);
            } else {
                for (int k = 0; k <= l; ++k) {
                    z(i, k) /= scale;
                    h += z(i, k) * z(i, k);
                }
                double f = z(i, l);
                double g = (f >= 0.0 ? -std::sqrt(h) : std::sqrt(h));
                e[i] = scale * g;
                h -= f * g;
                z(i, l) = f - g;
                f = 0.0;
                for (int j = 0; j <= l; ++j) {
                    z(j, i) = z(i, j) / h;
                    g = 0.0;
                    for (int k = 0; k <= j; ++k) g += z(j, k) * z(i, k);
                    for (int k = j + 1; k <= l; ++k) g += z(k, j) * z(i, k);
                    e[j] = g / h;
                    f += e[j] * z(i, j);
                }
                double hh = f / (h + h);
                for (int j = 0; j <= l; ++j) {
                    f = z(i, j);
                    e[j] = g = e[j] - hh * f;
                    for (int k = 0; k <= j; ++k) z(j, k) -= (f * e[k] + g * z(i, k));
                }
            }
        } else {
            e[i] = z(i, l);
        }
        d[i] = h;
    }
    d[0] = 0.0;
    e[0] = 0.0;
    for (int i = 0; i < n; ++i) {
        int l = i - 1;
        if (d[i] != 0.0) {
            for (int j = 0; j <= l; ++j) {
                double g = 0.0;
                for (int k = 0; k <= l; ++k) g += z(i, k) * z(k, j);
                for (int k = 0; k <= l; ++k) z(k, j) -= g * z(k, i);
            }
        }
        d[i] = z(i, i);
        z(i, i) = 1.0;
        for (int j = 0; j <= l; ++j) z(j, i) = z(i, j) = 0.0;
    }
}

// QL with implicit shifts on a tridiagonal matrix (tqli).
void tqli(VecD& d, VecD& e, MatD& z) {
    const int n = static_cast<int>(d.size());
    for (int i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= 1e-300 + 2.3e-16 * dd) break;
            }
            if (m != l) {
                require(iter++ < 50, "sym_eigen: QL iteration failed to converge");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = hypot2(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + (g >= 0.0 ? std::abs(r) : -std::abs(r)));
                double s = 1.0, c = 1.0, p = 0.0;
                bool underflow = false;
                for (int i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    double b = c * e[i];
                    r = hypot2(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    for (int k = 0; k < n; ++k) {
                        f = z(k, i + 1);
                        z(k, i + 1) = s * z(k, i) + c * f;
                        z(k, i) = c * z(k, i) - s * f;
                    }
                }
                if (underflow) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

}  // namespace

SymEigen sym_eigen(const MatD& A) {
    require(A.r == A.c, "sym_eigen: square matrix required");
    const int n = A.r;
    SymEigen out;
    out.vectors = A;
    // symmetrize to guard against rounding asymmetry
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) {
            double v = 0.5 * (out.vectors(i, j) + out.vectors(j, i));
            out.vectors(i, j) = out.vectors(j, i) = v;
        }
    out.values.assign(n, 0.0);
    VecD e(n, 0.0);
    tred2(out.vectors, out.values, e);
    tqli(out.values, e, out.vectors);
    // sort descending, deterministic tie-break by original index
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int a, int b) { return out.values[a] > out.values[b]; });
    VecD dv(n);
    MatD vv(n, n, 0.0);
    for (int j = 0; j < n; ++j) {
        dv[j] = out.values[idx[j]];
        for (int i = 0; i < n; ++i) vv(i, j) = out.vectors(i, idx[j]);
    }
    out.values = dv;
    out.vectors = vv;
    return out;
}

MatD mat_exp(const MatD& M) {
    require(M.r == M.c, "mat_exp: square matrix required");
    const int n = M.r;
    double norm = 0.0;
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j) row += std::abs(M(i, j));
        norm = std::max(norm, row);
    }
    int s = 0;
    while (norm > 0.5) { norm *= 0.5; ++s; }
    MatD A = M;
    const double scale = std::ldexp(1.0, -s);
    for (auto& v : A.a) v *= scale;

    MatD X(n, n, 0.0), term(n, n, 0.0);
    for (int i = 0; i < n; ++i) X(i, i) = term(i, i) = 1.0;
    for (int k = 1; k <= 40; ++k) {
        term = matmul(term, A);
        for (auto& v : term.a) v /= k;
        double tmax = max_abs(term);
        for (std::size_t i = 0; i < X.a.size(); ++i) X.a[i] += term.a[i];
        if (tmax < 1e-18) break;
    }
    for (int k = 0; k < s; ++k) X = matmul(X, X);
    return X;
}

double frobenius(const MatD& A) {
    double s = 0.0;
    for (double v : A.a) s += v * v;
    return std::sqrt(s);
}

double max_abs(const MatD& A) {
    double s = 0.0;
    for (double v : A.a) s = std::max(s, std::abs(v));
    return s;
}

}  // namespace dsc
