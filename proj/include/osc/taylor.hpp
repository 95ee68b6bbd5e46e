// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "osc/expr.hpp"
#include "osc/report.hpp"
#include "osc/roots.hpp"

namespace osc {

/// Degree-n polynomial agreeing with a source function to order n at x = t,
/// stored in shifted form g(x) = sum_i c_i (x - t)^i.
struct TaylorOsculant {
    double t = 0.0;
    int n = 0;
    std::vector<double> local_coeffs;  // c_0..c_n

    double operator()(double x) const;

    /// j-th derivative of g at x.
    double derivative(double x, int j) const;

    /// Coefficients a_0..a_n with g(x) = sum_i a_i x^i.
    std::vector<double> monomial_coeffs() const;
};

/// Best degree-n polynomial approximation at t: matches the value and first
/// n derivatives of f there.
TaylorOsculant osculating_polynomial(const Expr& f, double t, int n);

/// Rate of change of the family t -> g_t at a fixed x:
/// f^(n+1)(t) * (x - t)^n / n!.
double family_derivative(const Expr& f, double t, int n, double x);

/// Zeros of f^(n+1) on [lo, hi]: parameters where the degree-n osculant
/// matches to an extra order.  Plateau-flagged entries come from even-order
/// zeros without a sign change.
RootScan find_polynomial_vertices(const Expr& f, double lo, double hi, int n);

struct DisjointGraphOptions {
    int t_samples = 64;
    int x_samples = 256;
    /// Even n: the x-window checked for every pair.  Defaults to the
    /// t-interval widened by 2*length + 1 on each side.
    std::optional<std::pair<double, double>> window;
    /// Odd n: right end of each pair's window [t_b, x_max].  Defaults to
    /// hi + 2*(hi - lo) + 1.
    std::optional<double> x_max;
};

/// Certify that the graphs of the degree-n osculating polynomials taken at
/// parameters across [lo, hi] are pairwise disjoint: even n over the whole
/// window, odd n to the right of the larger parameter.  Requires f^(n+1)
/// to be zero-free on the interval with margin 1e-8.
VerificationReport verify_disjoint_graphs(const Expr& f, double lo, double hi, int n,
                                          const DisjointGraphOptions& opts = {});

}  // namespace osc
