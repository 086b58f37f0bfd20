#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "dsc/common.hpp"

namespace dsc {

// Pivot magnitude and zero/one prototypes; overloaded for Jet in jet.hpp so
// the same elimination code runs on doubles and on truncated Taylor series.
inline double mag_of(double x) { return std::abs(x); }
inline double zero_like(double) { return 0.0; }
inline double one_like(double) { return 1.0; }

template <class T>
struct Mat {
    int r = 0, c = 0;
    std::vector<T> a;

    Mat() = default;
    Mat(int rows, int cols, const T& fill) : r(rows), c(cols), a(static_cast<std::size_t>(rows) * cols, fill) {}

    T& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * c + j]; }
    const T& operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * c + j]; }
};

using MatD = Mat<double>;
using VecD = std::vector<double>;

template <class T>
Mat<T> matmul(const Mat<T>& A, const Mat<T>& B) {
    require(A.c == B.r, "matmul: dimension mismatch");
    Mat<T> C(A.r, B.c, zero_like(A.a[0]));
    for (int i = 0; i < A.r; ++i)
        for (int k = 0; k < A.c; ++k)
            for (int j = 0; j < B.c; ++j) C(i, j) = C(i, j) + A(i, k) * B(k, j);
    return C;
}

template <class T>
Mat<T> transpose(const Mat<T>& A) {
    Mat<T> B(A.c, A.r, zero_like(A.a[0]));
    for (int i = 0; i < A.r; ++i)
        for (int j = 0; j < A.c; ++j) B(j, i) = A(i, j);
    return B;
}

/// Solve A X = B by Gaussian elimination with partial pivoting on the scalar
/// magnitude (constant term for jets). A must be square and invertible.
template <class T>
Mat<T> solve_linear(Mat<T> A, Mat<T> B) {
    require(A.r == A.c && A.r == B.r, "solve_linear: dimension mismatch");
    const int n = A.r;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        double best = mag_of(A(col, col));
        for (int i = col + 1; i < n; ++i) {
            const double m = mag_of(A(i, col));
            if (m > best) { best = m; piv = i; }
        }
        require(best > 0.0, "solve_linear: singular matrix");
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(A(col, j), A(piv, j));
            for (int j = 0; j < B.c; ++j) std::swap(B(col, j), B(piv, j));
        }
        for (int i = col + 1; i < n; ++i) {
            T f = A(i, col) / A(col, col);
            for (int j = col; j < n; ++j) A(i, j) = A(i, j) - f * A(col, j);
            for (int j = 0; j < B.c; ++j) B(i, j) = B(i, j) - f * B(col, j);
        }
    }
    Mat<T> X(n, B.c, zero_like(A.a[0]));
    for (int i = n - 1; i >= 0; --i) {
        for (int j = 0; j < B.c; ++j) {
            T s = B(i, j);
            for (int k = i + 1; k < n; ++k) s = s - A(i, k) * X(k, j);
            X(i, j) = s / A(i, i);
        }
    }
    return X;
}

template <class T>
Mat<T> inverse(const Mat<T>& A) {
    Mat<T> I(A.r, A.r, zero_like(A.a[0]));
    for (int i = 0; i < A.r; ++i) I(i, i) = one_like(A.a[0]);
    return solve_linear(A, I);
}

/// One-dimensional null space of a full-rank (n-1) x n system.
template <class T>
std::vector<T> null_space_1d(Mat<T> A) {
    require(A.r + 1 == A.c, "null_space_1d: need (n-1) x n system");
    const int rows = A.r, cols = A.c;
    std::vector<int> pivot_col(rows, -1);
    std::vector<bool> used(cols, false);
    int row = 0;
    for (int col = 0; col < cols && row < rows; ++col) {
        int piv = -1;
        double best = 0.0;
        for (int i = row; i < rows; ++i) {
            const double m = mag_of(A(i, col));
            if (m > best) { best = m; piv = i; }
        }
        if (piv < 0 || best < 1e-13) continue;
        if (piv != row)
            for (int j = 0; j < cols; ++j) std::swap(A(row, j), A(piv, j));
        for (int i = row + 1; i < rows; ++i) {
            T f = A(i, col) / A(row, col);
            for (int j = col; j < cols; ++j) A(i, j) = A(i, j) - f * A(row, j);
        }
        pivot_col[row] = col;
        used[col] = true;
        ++row;
    }
    require(row == rows, "null_space_1d: rank deficient constraints");
    int free_col = -1;
    for (int j = 0; j < cols; ++j)
        if (!used[j]) { free_col = j; break; }
    std::vector<T> x(cols, zero_like(A.a[0]));
    x[free_col] = one_like(A.a[0]);
    for (int i = rows - 1; i >= 0; --i) {
        const int pc = pivot_col[i];
        T s = zero_like(A.a[0]) - A(i, free_col);
        for (int j = pc + 1; j < cols; ++j) {
            if (j == free_col) continue;
            s = s - A(i, j) * x[j];
        }
        x[pc] = s / A(i, pc);
    }
    return x;
}

/// Eigenvalues and eigenvectors of a symmetric matrix via Householder
/// tridiagonalization followed by QL iteration with implicit shifts.
/// Eigenvalues are returned sorted descending; eigenvectors are the matching
/// columns of `vectors`.
struct SymEigen {
    VecD values;
    MatD vectors;
};

SymEigen sym_eigen(const MatD& A);

/// exp(M) by scaling and squaring with a truncated Taylor series (terms are
/// added until they fall below 1e-13 relative).
MatD mat_exp(const MatD& M);

double frobenius(const MatD& A);
double max_abs(const MatD& A);

}  // namespace dsc
