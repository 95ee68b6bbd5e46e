// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <optional>
#include <utility>

#include "osc/algebraic.hpp"
#include "osc/curve.hpp"
#include "osc/expr.hpp"
#include "osc/report.hpp"

namespace osc {

enum class FamilyKind { Circle, Graph, Conic, Mobius };

/// A one-parameter family of parameterized plane curves
/// s -> (t -> F(s, t)), jet-evaluable in t at fixed s.  The s-derivative is
/// taken by central differences, so the generator must be defined on an open
/// s-interval around the points of interest.
class FamilyMap {
public:
    static FamilyMap circle_family(const PlaneCurve& curve);
    /// Graphs of the degree-n osculating polynomials: F(s, t) = (t, g_s(t)).
    static FamilyMap graph_family(const Expr& f, int n, double wlo, double whi);
    /// Osculating-conic family: affine images of the unit circle for
    /// elliptic members, of a standard hyperbola branch for hyperbolic ones.
    static FamilyMap conic_family(const PlaneCurve& curve);
    /// Osculating fractional-linear graphs: F(s, t) = (t, q + c/(t - p)).
    static FamilyMap mobius_family(const Expr& f, double wlo, double whi);
    /// Tangent lines gamma(s) + t * unit_tangent(s): the degree-1 family.
    static FamilyMap line_family(const PlaneCurve& curve, double t_half = 1.0);

    FamilyKind kind() const { return kind_; }
    /// Algebraic degree of the members (for the d^2 intersection bound).
    int degree() const { return degree_; }
    /// The t-range of the member at s (the member type, and with it the
    /// natural window, can change along s for conic families).
    std::pair<double, double> t_domain(double s) const;
    /// Whether the member at s closes up over its t-domain.
    bool periodic(double s) const;

    /// Component jets of t -> F(s, t) at fixed s.
    std::pair<Jet, Jet> eval_t_jets(double s, double t, int order) const;
    Point eval(double s, double t) const;

    /// t value to exclude from scans (hyperbola pole), if any.
    std::optional<double> excluded_t(double s) const;

    /// Parameter of the tangency with the source curve at s, where the
    /// member touches the generating curve.
    double tangency_t(double s) const;

private:
    FamilyMap() = default;
    FamilyKind kind_ = FamilyKind::Circle;
    int degree_ = 2;
    std::pair<double, double> t_domain_{0.0, 0.0};
    bool periodic_ = false;
    std::function<std::pair<Jet, Jet>(double, double, int)> gen_;
    std::function<double(double)> tangency_;
    std::function<std::optional<double>(double)> excluded_;
    /// Overrides t_domain_/periodic_ where the member type depends on s.
    std::function<std::pair<std::pair<double, double>, bool>(double)> domain_;
};

/// Order of vanishing in t of the Jacobian determinant of (s, t) -> F(s, t)
/// at (s, t): 0 means the family sweeps transversally, n(d)-1 is the contact
/// order of an osculating family at its tangency.
struct Multiplicity {
    int order = 0;
    bool saturated = false;  // reached max_order; the true order may exceed it
};
Multiplicity infinitesimal_multiplicity(const FamilyMap& fam, double s, double t, int max_order);

/// Sum of the vanishing orders over every detected dip of |Jacobian| along
/// the member at s, checked against the d^2 intersection bound.
struct IndexResult {
    int index = 0;
    int bound = 0;
    std::vector<MultiplicityResult> dips;
};
IndexResult infinitesimal_index(const FamilyMap& fam, double s, int t_samples);

enum class CirclePair { Nested, DisjointOutside, Intersecting, Equal };
std::string to_string(CirclePair c);

/// Exact geometric classification of two circles with tolerance 1e-12 on
/// the tangency boundaries.
CirclePair circles_nested(const OsculatingCircle& c1, const OsculatingCircle& c2);

/// Sample osculating circles over [lo, hi] (which must be free of vertices)
/// and classify every pair; disjoint verdict iff each pair is nested or
/// lies mutually outside.
VerificationReport verify_circle_family(const PlaneCurve& curve, double lo, double hi, int samples);

/// Side test of a closed polyline against an algebraic curve by sign
/// sampling of the defining polynomial, with bisection-refined witness on a
/// crossing.  Values inside the tolerance band without a sign change raise
/// InconclusiveError.
struct OvalCheck {
    Verdict verdict = Verdict::Disjoint;
    std::optional<Point> witness;
};
OvalCheck oval_vs_curve(const OvalTrace& polyline, const AlgebraicCurve& other);

/// Pairwise vertical-gap verification of the osculating fractional-linear
/// family over the window, excluding half-width-1e-3 zones around poles.
VerificationReport verify_mobius_family(const Expr& f, double lo, double hi, double wlo, double whi,
                                        int samples);

/// Pairwise sign-sampling verification of the osculating conics over
/// [lo, hi], which must be free of degree-2 extactic points: each member's
/// arc (the full ellipse, or the branch window of a hyperbola) is sampled
/// and the other member's polynomial sign-tested along it, both ways.
VerificationReport verify_conic_family(const PlaneCurve& curve, double lo, double hi, int samples);

/// Pairwise verification of the ovals of the osculating cubics over
/// [lo, hi], which must be free of degree-3 extactic points: each oval is
/// traced from the tangency seed and sign-tested against the other cubic's
/// polynomial.  A tangency on an unbounded component is flagged, not
/// assumed away.
VerificationReport verify_cubic_ovals(const PlaneCurve& curve, double lo, double hi, int samples,
                                      int grid_n = 512);

/// Check that the osculating family of degree d in {1, 2} meets its member
/// at the generating point with multiplicity d(d+3)/2 - 1.
VerificationReport envelope_multiplicity_check(const PlaneCurve& curve, double s, int d);

}  // namespace osc
