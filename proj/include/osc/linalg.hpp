// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "osc/errors.hpp"

namespace osc {

/// Dense row-major matrix, sized for the tiny systems this library solves
/// (N <= 25).
struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}

    double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
};

/// Determinant by LU with partial pivoting.
inline double determinant(Mat m) {
    if (m.rows != m.cols) throw std::logic_error("determinant requires a square matrix");
    const int n = m.rows;
    double det = 1.0;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(m(i, k)) > std::abs(m(piv, k))) piv = i;
        if (m(piv, k) == 0.0) return 0.0;
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
            det = -det;
        }
        det *= m(k, k);
        for (int i = k + 1; i < n; ++i) {
            const double f = m(i, k) / m(k, k);
            for (int j = k; j < n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return det;
}

/// Gaussian elimination with partial pivoting.  Throws SingularSystem when
/// the pivot magnitude drops below pivot_tol times the matrix scale.
inline std::vector<double> solve(Mat m, std::vector<double> rhs, double pivot_tol = 1e-12) {
    if (m.rows != m.cols || static_cast<int>(rhs.size()) != m.rows)
        throw std::logic_error("solve requires a square system");
    const int n = m.rows;
    double scale = 0.0;
    for (double v : m.a) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) scale = 1.0;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(m(i, k)) > std::abs(m(piv, k))) piv = i;
        if (std::abs(m(piv, k)) < pivot_tol * scale)
            throw SingularSystem("pivot below tolerance in linear solve");
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
            std::swap(rhs[static_cast<std::size_t>(k)], rhs[static_cast<std::size_t>(piv)]);
        }
        for (int i = k + 1; i < n; ++i) {
            const double f = m(i, k) / m(k, k);
            for (int j = k; j < n; ++j) m(i, j) -= f * m(k, j);
            rhs[static_cast<std::size_t>(i)] -= f * rhs[static_cast<std::size_t>(k)];
        }
    }
    std::vector<double> x(static_cast<std::size_t>(n));
    for (int i = n - 1; i >= 0; --i) {
        double acc = rhs[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < n; ++j) acc -= m(i, j) * x[static_cast<std::size_t>(j)];
        x[static_cast<std::size_t>(i)] = acc / m(i, i);
    }
    return x;
}

/// Singular values (descending) and right singular vectors of a matrix,
/// computed by one-sided Jacobi rotations on the columns.  Works for any
/// rows/cols ratio; columns driven to zero expose the null space, whose
/// directions land in V with singular value ~0.  One-sided Jacobi keeps
/// high relative accuracy on the small singular values, which the rank
/// tests here depend on.
struct Svd {
    std::vector<double> sigma;  // length cols, descending
    Mat v;                      // cols x cols; column k pairs with sigma[k]
};

inline Svd svd_jacobi(const Mat& input, int max_sweeps = 60) {
    const int m = input.rows, n = input.cols;
    Mat w = input;
    Mat v(n, n);
    for (int i = 0; i < n; ++i) v(i, i) = 1.0;

    const double tol = 1e-15;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double alpha = 0.0, beta = 0.0, gamma = 0.0;
                for (int i = 0; i < m; ++i) {
                    alpha += w(i, p) * w(i, p);
                    beta += w(i, q) * w(i, q);
                    gamma += w(i, p) * w(i, q);
                }
                if (std::abs(gamma) <= tol * std::sqrt(alpha * beta) || gamma == 0.0) continue;
                rotated = true;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (int i = 0; i < m; ++i) {
                    const double wp = w(i, p), wq = w(i, q);
                    w(i, p) = c * wp - s * wq;
                    w(i, q) = s * wp + c * wq;
                }
                for (int i = 0; i < n; ++i) {
                    const double vp = v(i, p), vq = v(i, q);
                    v(i, p) = c * vp - s * vq;
                    v(i, q) = s * vp + c * vq;
                }
            }
        }
        if (!rotated) break;
    }

    std::vector<double> sigma(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        double norm2 = 0.0;
        for (int i = 0; i < m; ++i) norm2 += w(i, j) * w(i, j);
        sigma[static_cast<std::size_t>(j)] = std::sqrt(norm2);
    }

    std::vector<int> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        return sigma[static_cast<std::size_t>(a)] > sigma[static_cast<std::size_t>(b)];
    });

    Svd out;
    out.sigma.resize(static_cast<std::size_t>(n));
    out.v = Mat(n, n);
    for (int j = 0; j < n; ++j) {
        out.sigma[static_cast<std::size_t>(j)] = sigma[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])];
        for (int i = 0; i < n; ++i) out.v(i, j) = v(i, idx[static_cast<std::size_t>(j)]);
    }
    return out;
}

}  // namespace osc
