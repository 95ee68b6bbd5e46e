// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "osc/curve.hpp"
#include "osc/expr.hpp"
#include "osc/linalg.hpp"
#include "osc/roots.hpp"

namespace osc {

/// Monomial layout shared by everything that speaks coefficient vectors:
/// graded order, degree ascending, x-exponent descending inside a degree:
/// 1; x, y; x^2, xy, y^2; x^3, x^2 y, x y^2, y^3; ...
int mono_index(int a, int b);
std::vector<std::pair<int, int>> monomials_up_to(int d);

/// Plane algebraic curve f(x, y) = 0 of degree 1..4, coefficients in the
/// shared monomial layout, normalized to unit Euclidean norm with the first
/// nonzero coefficient positive.
struct AlgebraicCurve {
    int degree = 1;
    std::vector<double> coeffs;  // length (d+1)(d+2)/2

    static int condition_count(int d) { return d * (d + 3) / 2; }  // one less than coeff count
    static int coeff_count(int d) { return (d + 1) * (d + 2) / 2; }

    double eval(double x, double y) const;
    std::pair<double, double> gradient(double x, double y) const;
    Jet eval_jet(const Jet& x, const Jet& y) const;

    /// Scale so the coefficient vector has unit norm and the first nonzero
    /// entry (in layout order) is positive.
    void normalize();

    std::string to_csv() const;  // degree, then coefficients, one row
    nlohmann::json to_json() const;
};

/// Affine map (x, y) -> (a11 x + a12 y + b1, a21 x + a22 y + b2).
struct Affine2 {
    double a11 = 1.0, a12 = 0.0, a21 = 0.0, a22 = 1.0;
    double b1 = 0.0, b2 = 0.0;

    Point operator()(Point p) const;
    Affine2 inverse() const;
};

/// Coefficients of c composed with m (substituting the map into the
/// polynomial), same degree, normalized.
AlgebraicCurve pullback(const AlgebraicCurve& c, const Affine2& m);

/// rows x coeff_count(d) matrix: row j holds the j-th Taylor coefficients in
/// (s' - s) of every monomial evaluated along the curve, in coordinates
/// centered at the point gamma(s) and scaled by the reciprocal of the speed
/// there.  Row j spanning the condition d^j/ds'^j [f(gamma(s'))] = 0.
Mat condition_matrix(const PlaneCurve& curve, double s, int d, int rows);

/// The degree-d curve meeting gamma with contact order d(d+3)/2 at s:
/// normalized null vector of the condition matrix, mapped back to ambient
/// coordinates.
AlgebraicCurve osculating_algebraic_curve(const PlaneCurve& curve, double s, int d);

/// First Taylor coefficient of f_s(gamma(s')) beyond the matched orders, for
/// the normalized osculant in scaled coordinates.  Zero exactly where the
/// osculant gains an extra contact order; sign changes bracket those points.
double extactic_indicator(const PlaneCurve& curve, double s, int d);

/// Parameters in [lo, hi] where the degree-d osculant hyper-osculates.
RootScan find_extactic_points(const PlaneCurve& curve, double lo, double hi, int d);

enum class ConicClass { Ellipse, Parabola, Hyperbola, Degenerate };
std::string to_string(ConicClass c);
ConicClass classify_conic(const AlgebraicCurve& c);

struct OsculatingCircle {
    Point center;
    double radius = 0.0;
    double curvature = 0.0;  // signed
    Point tangency;
};

OsculatingCircle osculating_circle(const PlaneCurve& curve, double s);

/// Critical points of the signed curvature on [lo, hi].  identically_zero is
/// set when the curvature is constant (circles and lines).
RootScan find_vertices(const PlaneCurve& curve, double lo, double hi);

/// f'''/f' - (3/2)(f''/f')^2 at t.
double schwarzian(const Expr& f, double t);

/// Zeros of the Schwarzian on [lo, hi].
RootScan find_schwarzian_zeros(const Expr& f, double lo, double hi);

/// Fractional-linear graph y = q + c/(x - p) matching f, f', f'' at t, or
/// the tangent line when f''(t) is (numerically) zero.
struct MobiusOsculant {
    bool line = false;
    double p = 0.0, q = 0.0, c = 0.0;  // (x - p)(y - q) = c
    double slope = 0.0, intercept = 0.0;

    double eval(double x) const;
};

MobiusOsculant osculating_mobius(const Expr& f, double t);

struct OvalTrace {
    std::vector<Point> points;  // closed: last connects back to first
    AlgebraicCurve source;      // the curve the component was traced on
};

/// Closed component of c = 0 through the seed, traced by marching squares on
/// an auto-fitted grid (default 512 cells per side) with one Newton
/// correction per vertex.
OvalTrace trace_oval(const AlgebraicCurve& c, Point seed, int grid_n = 512);

/// Damped Newton projection of p onto c = 0: steps clamped to max_step with
/// residual backtracking, so near-singular pinches cannot cause overshoot.
/// Returns whether |c| <= tol was reached.
bool refine_onto(const AlgebraicCurve& c, Point& p, double tol, double max_step);

/// Every component of c = 0 crossing the box [xlo, xhi] x [ylo, yhi], as
/// marching-squares polylines with Newton-corrected vertices.  Closed
/// components repeat their first point at the end; an empty list means the
/// box misses the real locus.  Output order is sorted by bounding box for
/// deterministic downstream rendering.
std::vector<std::vector<Point>> plot_implicit(const AlgebraicCurve& c, double xlo, double xhi,
                                              double ylo, double yhi, int resolution);

}  // namespace osc
