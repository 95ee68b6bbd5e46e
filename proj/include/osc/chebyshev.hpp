// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "osc/expr.hpp"
#include "osc/report.hpp"
#include "osc/roots.hpp"

namespace osc {

/// A system of N smooth functions whose Wronskian never vanishes on the
/// domain, so that value-and-derivative interpolation at a point is uniquely
/// solvable.  Checked on a 256-point grid at construction.
class ChebSystem {
public:
    ChebSystem(std::vector<Expr> basis, double lo, double hi);

    int N() const { return static_cast<int>(basis_.size()); }
    const std::vector<Expr>& basis() const { return basis_; }
    double lo() const { return lo_; }
    double hi() const { return hi_; }

    /// Set for systems built by trig_basis; enables the annihilator-based
    /// hyper-osculation test.
    bool is_trig() const { return trig_n_ > 0; }
    int trig_n() const { return trig_n_; }

private:
    friend ChebSystem trig_basis(int n);
    std::vector<Expr> basis_;
    double lo_ = 0.0, hi_ = 0.0;
    int trig_n_ = 0;
};

/// [1, cos t, sin t, cos 2t, sin 2t, ..., cos nt, sin nt] on [0, 2*pi];
/// N = 2n+1.
ChebSystem trig_basis(int n);

/// det of the N x N matrix whose (j, i) entry is the j-th derivative of
/// basis element i at t.
double wronskian(const ChebSystem& sys, double t);

/// Element g = sum c_i f_i of the system matching the value and first N-1
/// derivatives of a source function at t.
struct ChebOsculant {
    double t = 0.0;
    std::vector<Expr> basis;
    std::vector<double> coeffs;

    double operator()(double x) const;
    double derivative(double x, int j) const;
};

ChebOsculant osculating_element(const ChebSystem& sys, const Expr& f, double t);

/// Coefficients a_k (exact integers) of the odd-derivative expansion of the
/// operator D = d (d^2+1)(d^2+4)...(d^2+n^2): D = sum_k a_k d^(2k+1).
std::vector<long long> annihilator_coeffs(int n);

/// (D f)(t) for the degree-n trigonometric annihilator D.  Zero exactly when
/// the osculating trigonometric polynomial of degree n hyper-osculates at t.
double apply_D(const Expr& f, int n, double t);

/// Roots of t -> (D f)(t) on [lo, hi].  identically_zero is set when f is
/// itself a trigonometric polynomial of degree <= n (D annihilates it).
RootScan find_flexes(const Expr& f, int n, double lo, double hi);

struct ChebVerifyOptions {
    int t_samples = 64;
    int x_samples = 256;
};

/// Certify that the graphs of the osculating elements taken across [lo, hi]
/// are pairwise disjoint over the window [wlo, whi], and that the family
/// moves one-sidedly: the t-velocity of the family has a zero of order
/// exactly N-1 at the tangency and constant sign elsewhere in the window.
VerificationReport verify_disjoint_cheb(const ChebSystem& sys, const Expr& f, double lo, double hi,
                                        double wlo, double whi, const ChebVerifyOptions& opts = {});

}  // namespace osc
