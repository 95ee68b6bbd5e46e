// SPDX-License-Identifier: Apache-2.0
#include "osc/taitkneser.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "osc/parallel.hpp"
#include "osc/roots.hpp"
#include "osc/taylor.hpp"

namespace osc {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kFdStep = 1e-4;          // s-derivative central-difference step
constexpr double kJetRelTol = 1e-6;       // relative threshold for jet coefficients
constexpr double kDipRelTol = 1e-6;       // relative threshold for Jacobian dips
constexpr double kPoleHalfWidth = 1e-3;   // excluded zone around hyperbola poles
constexpr double kCircleTol = 1e-12;      // tangency tolerance for circle pairs
constexpr double kPoleMergeTol = 1e-9;    // coinciding-pole degeneracy

std::string format(const char* fmt, double v) {
    char buf[128];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

double wrap_angle(double t) {
    double r = std::fmod(t, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    return r;
}

/// Closed-form affine frame of a central conic: the zero set is c + M u(t)
/// with u the unit circle (cos t, sin t) for an ellipse and a standard
/// hyperbola branch for a hyperbola.  M is the inverse transpose of a
/// triangular factor of the scaled quadratic part, upper triangular with
/// positive diagonal, hence unique and smooth along a smooth conic path;
/// no eigendecomposition, so no axis-ordering or angle-branch jumps that
/// would corrupt finite differences in s.
struct ConicFrame {
    double cx = 0.0, cy = 0.0;
    double m11 = 1.0, m12 = 0.0, m22 = 1.0;
    bool hyperbola = false;
    bool swapped = false;  // hyperbola whose bounded frame coordinate is the first
};

ConicFrame conic_frame(const AlgebraicCurve& conic) {
    if (conic.degree != 2) throw NotAnEllipse("conic frame needs a degree-2 curve");
    const ConicClass cls = classify_conic(conic);
    if (cls != ConicClass::Ellipse && cls != ConicClass::Hyperbola)
        throw NotAnEllipse("osculating conic is not an ellipse or hyperbola (" + to_string(cls) + ")");
    const double D = conic.coeffs[1], E = conic.coeffs[2];
    const double A = conic.coeffs[3], B = conic.coeffs[4], C = conic.coeffs[5];
    const double det = 4.0 * A * C - B * B;  // nonzero for a central conic
    ConicFrame fr;
    fr.hyperbola = cls == ConicClass::Hyperbola;
    fr.cx = (-2.0 * C * D + B * E) / det;
    fr.cy = (B * D - 2.0 * A * E) / det;
    const double k = conic.eval(fr.cx, fr.cy);
    // (X - c)^T Q (X - c) = -k with Q = [[A, B/2], [B/2, C]].  Scale to
    // S = Q / (-k): an ellipse is real iff S is positive definite and then
    // S = L L^T; a hyperbola has indefinite S and S = L diag(1,-1) L^T, with
    // -S factored instead when the first diagonal entry is negative (then
    // the branch runs along the second frame coordinate).
    double s11 = A / -k, s12 = 0.5 * B / -k, s22 = C / -k;
    if (!fr.hyperbola && !(s11 > 0.0 && s11 * s22 - s12 * s12 > 0.0))
        throw NotAnEllipse("osculating conic has no real points");
    if (fr.hyperbola && s11 < 0.0) {
        fr.swapped = true;
        s11 = -s11;
        s12 = -s12;
        s22 = -s22;
    }
    if (!(s11 > 0.0))
        throw InconclusiveError("conic frame pivot vanishes (asymptote parallel to the y-axis)");
    const double l11 = std::sqrt(s11);
    const double l21 = s12 / l11;
    const double l22 = std::sqrt(fr.hyperbola ? l21 * l21 - s22 : s22 - l21 * l21);
    fr.m11 = 1.0 / l11;
    fr.m12 = -l21 / (l11 * l22);
    fr.m22 = 1.0 / l22;
    return fr;
}

/// Coordinates of p in the frame: the solution u of p = c + M u.
std::pair<double, double> frame_coords(const ConicFrame& fr, Point p) {
    const double u2 = (p.y - fr.cy) / fr.m22;
    const double u1 = (p.x - fr.cx - fr.m12 * u2) / fr.m11;
    return {u1, u2};
}

/// Member parameter of a point on the conic: angle for an ellipse, the
/// hyperbolic parameter of its branch for a hyperbola.
double frame_parameter(const ConicFrame& fr, Point p) {
    const auto [u1, u2] = frame_coords(fr, p);
    if (!fr.hyperbola) return wrap_angle(std::atan2(u2, u1));
    return std::asinh(fr.swapped ? u1 : u2);
}

/// Which of the two hyperbola branches passes through p; the branch
/// coordinate satisfies |u| = cosh(t) >= 1, so the sign is stable.
double branch_sign(const ConicFrame& fr, Point p) {
    const auto [u1, u2] = frame_coords(fr, p);
    return (fr.swapped ? u2 : u1) < 0.0 ? -1.0 : 1.0;
}

constexpr double kHyperbolaHalfSpan = 3.0;  // t-window of a branch cut

/// d/ds of the component t-jets by central differences with one Richardson
/// extrapolation: (4 D(h/2) - D(h)) / 3.
std::pair<Jet, Jet> s_derivative_jets(const FamilyMap& fam, double s, double t, int order) {
    auto diff = [&](double h) {
        auto [xp, yp] = fam.eval_t_jets(s + h, t, order);
        auto [xm, ym] = fam.eval_t_jets(s - h, t, order);
        const double inv = 0.5 / h;
        return std::pair<Jet, Jet>{(xp - xm) * inv, (yp - ym) * inv};
    };
    auto [dx1, dy1] = diff(kFdStep);
    auto [dx2, dy2] = diff(0.5 * kFdStep);
    const double third = 1.0 / 3.0;
    return {(dx2 * 4.0 - dx1) * third, (dy2 * 4.0 - dy1) * third};
}

/// t-jet of det [dF/ds, dF/dt] at (s, t), order `order`.
Jet jacobian_jet(const FamilyMap& fam, double s, double t, int order) {
    auto [x, y] = fam.eval_t_jets(s, t, order + 1);
    const Jet xt = x.derivative_jet();
    const Jet yt = y.derivative_jet();
    auto [xs, ys] = s_derivative_jets(fam, s, t, order);
    return xs * yt - ys * xt;
}

double jacobian_value(const FamilyMap& fam, double s, double t) {
    return jacobian_jet(fam, s, t, 0).value();
}

/// Intersection point of two overlapping circles (the one on the positive
/// side of the center line); both circle equations vanish there exactly.
Point circle_crossing(const OsculatingCircle& c1, const OsculatingCircle& c2) {
    const double dx = c2.center.x - c1.center.x, dy = c2.center.y - c1.center.y;
    const double d = std::hypot(dx, dy);
    const double a = (d * d + c1.radius * c1.radius - c2.radius * c2.radius) / (2.0 * d);
    const double h2 = c1.radius * c1.radius - a * a;
    const double h = h2 > 0.0 ? std::sqrt(h2) : 0.0;
    return {c1.center.x + (a * dx - h * dy) / d, c1.center.y + (a * dy + h * dx) / d};
}

/// Largest magnitude the polynomial's terms reach at (x, y): the scale
/// against which a small value means cancellation rather than smallness.
double term_scale(const AlgebraicCurve& f, double x, double y) {
    const auto monos = monomials_up_to(f.degree);
    double total = 0.0;
    for (std::size_t m = 0; m < monos.size(); ++m) {
        const auto [a, b] = monos[m];
        total += std::abs(f.coeffs[m]) * std::pow(std::abs(x), a) * std::pow(std::abs(y), b);
    }
    return total;
}

}  // namespace

std::pair<Jet, Jet> FamilyMap::eval_t_jets(double s, double t, int order) const {
    if (order < 0 || order > Jet::kMaxOrder)
        throw OrderExceeded("family jet order out of range");
    return gen_(s, t, order);
}

Point FamilyMap::eval(double s, double t) const {
    auto [x, y] = gen_(s, t, 0);
    return {x.value(), y.value()};
}

std::optional<double> FamilyMap::excluded_t(double s) const {
    return excluded_ ? excluded_(s) : std::nullopt;
}

double FamilyMap::tangency_t(double s) const { return tangency_(s); }

std::pair<double, double> FamilyMap::t_domain(double s) const {
    return domain_ ? domain_(s).first : t_domain_;
}

bool FamilyMap::periodic(double s) const { return domain_ ? domain_(s).second : periodic_; }

FamilyMap FamilyMap::circle_family(const PlaneCurve& curve) {
    FamilyMap fm;
    fm.kind_ = FamilyKind::Circle;
    fm.degree_ = 2;
    fm.t_domain_ = {0.0, kTwoPi};
    fm.periodic_ = true;
    fm.gen_ = [curve](double s, double t, int order) {
        const OsculatingCircle c = osculating_circle(curve, s);
        const Jet jt = Jet::variable(t, order);
        return std::pair<Jet, Jet>{cos(jt) * c.radius + c.center.x, sin(jt) * c.radius + c.center.y};
    };
    fm.tangency_ = [curve](double s) {
        const OsculatingCircle c = osculating_circle(curve, s);
        return wrap_angle(std::atan2(c.tangency.y - c.center.y, c.tangency.x - c.center.x));
    };
    return fm;
}

FamilyMap FamilyMap::graph_family(const Expr& f, int n, double wlo, double whi) {
    if (!(wlo < whi)) throw PreconditionError("graph family window must satisfy wlo < whi");
    if (n < 1) throw PreconditionError("graph family needs degree n >= 1");
    FamilyMap fm;
    fm.kind_ = FamilyKind::Graph;
    fm.degree_ = n;
    fm.t_domain_ = {wlo, whi};
    fm.gen_ = [f, n](double s, double t, int order) {
        const TaylorOsculant g = osculating_polynomial(f, s, n);
        const Jet x = Jet::variable(t, order);
        const Jet dx = x - g.t;
        Jet y = Jet::constant(0.0, t, order);
        for (int i = n; i >= 0; --i) y = y * dx + g.local_coeffs[static_cast<std::size_t>(i)];
        return std::pair<Jet, Jet>{x, y};
    };
    fm.tangency_ = [](double s) { return s; };
    return fm;
}

FamilyMap FamilyMap::conic_family(const PlaneCurve& curve) {
    FamilyMap fm;
    fm.kind_ = FamilyKind::Conic;
    fm.degree_ = 2;
    fm.gen_ = [curve](double s, double t, int order) {
        const ConicFrame fr = conic_frame(osculating_algebraic_curve(curve, s, 2));
        const Jet jt = Jet::variable(t, order);
        if (!fr.hyperbola) {
            const Jet cu = cos(jt), su = sin(jt);
            return std::pair<Jet, Jet>{cu * fr.m11 + su * fr.m12 + fr.cx, su * fr.m22 + fr.cy};
        }
        const double sg = branch_sign(fr, curve.at(s));
        const Jet ch = cosh(jt), sh = sinh(jt);
        if (!fr.swapped)
            return std::pair<Jet, Jet>{ch * (sg * fr.m11) + sh * fr.m12 + fr.cx, sh * fr.m22 + fr.cy};
        return std::pair<Jet, Jet>{sh * fr.m11 + ch * (sg * fr.m12) + fr.cx, ch * (sg * fr.m22) + fr.cy};
    };
    fm.tangency_ = [curve](double s) {
        const ConicFrame fr = conic_frame(osculating_algebraic_curve(curve, s, 2));
        return frame_parameter(fr, curve.at(s));
    };
    fm.domain_ = [curve](double s) -> std::pair<std::pair<double, double>, bool> {
        const ConicFrame fr = conic_frame(osculating_algebraic_curve(curve, s, 2));
        if (fr.hyperbola) return {{-kHyperbolaHalfSpan, kHyperbolaHalfSpan}, false};
        return {{0.0, kTwoPi}, true};
    };
    return fm;
}

FamilyMap FamilyMap::line_family(const PlaneCurve& curve, double t_half) {
    if (!(t_half > 0.0)) throw PreconditionError("line family needs a positive half-length");
    FamilyMap fm;
    fm.kind_ = FamilyKind::Graph;
    fm.degree_ = 1;
    fm.t_domain_ = {-t_half, t_half};
    fm.gen_ = [curve](double s, double t, int order) {
        auto [jx, jy] = curve.jets(s, 1);
        const double tx = jx.coeff(1), ty = jy.coeff(1);
        const double speed = std::hypot(tx, ty);
        const Jet jt = Jet::variable(t, order);
        return std::pair<Jet, Jet>{jt * (tx / speed) + jx.value(), jt * (ty / speed) + jy.value()};
    };
    fm.tangency_ = [](double) { return 0.0; };
    return fm;
}

FamilyMap FamilyMap::mobius_family(const Expr& f, double wlo, double whi) {
    if (!(wlo < whi)) throw PreconditionError("fractional-linear family window must satisfy wlo < whi");
    FamilyMap fm;
    fm.kind_ = FamilyKind::Mobius;
    fm.degree_ = 2;
    fm.t_domain_ = {wlo, whi};
    fm.gen_ = [f](double s, double t, int order) {
        const MobiusOsculant m = osculating_mobius(f, s);
        const Jet x = Jet::variable(t, order);
        Jet y = m.line ? x * m.slope + m.intercept
                       : Jet::constant(m.c, t, order) / (x - m.p) + m.q;
        return std::pair<Jet, Jet>{x, y};
    };
    fm.tangency_ = [](double s) { return s; };
    fm.excluded_ = [f](double s) -> std::optional<double> {
        const MobiusOsculant m = osculating_mobius(f, s);
        if (m.line) return std::nullopt;
        return m.p;
    };
    return fm;
}

Multiplicity infinitesimal_multiplicity(const FamilyMap& fam, double s, double t, int max_order) {
    if (max_order < 0 || max_order + 1 > Jet::kMaxOrder)
        throw OrderExceeded("multiplicity jet order out of range");
    const Jet J = jacobian_jet(fam, s, t, max_order);
    double scale = 0.0;
    for (int i = 0; i <= max_order; ++i) scale = std::max(scale, std::abs(J.coeff(i)));
    if (scale == 0.0) return {max_order, true};
    const double thresh = kJetRelTol * scale;
    int k = max_order;
    for (int i = 0; i <= max_order; ++i) {
        if (std::abs(J.coeff(i)) > thresh) {
            k = i;
            break;
        }
    }
    for (int i = 0; i < k; ++i) {
        const double a = std::abs(J.coeff(i));
        if (a > 0.1 * thresh)
            throw NoisyJet("Jacobian jet coefficient at order " + std::to_string(i) +
                           " sits in the ambiguity band below the threshold; vanishing order unresolved");
    }
    return {k, false};
}

IndexResult infinitesimal_index(const FamilyMap& fam, double s, int t_samples) {
    if (t_samples < 16) throw PreconditionError("index scan needs at least 16 t samples");
    const auto [tlo, thi] = fam.t_domain(s);
    const double span = thi - tlo;
    const std::optional<double> pole = fam.excluded_t(s);

    // Valid scan subintervals: the t-domain minus the excluded pole zone.
    std::vector<std::pair<double, double>> parts;
    if (pole && *pole - kPoleHalfWidth > tlo && *pole + kPoleHalfWidth < thi) {
        parts.push_back({tlo, *pole - kPoleHalfWidth});
        parts.push_back({*pole + kPoleHalfWidth, thi});
    } else {
        parts.push_back({tlo, thi});
    }

    auto J = [&](double t) { return jacobian_value(fam, s, t); };

    double scale = 0.0;
    for (const auto& [a, b] : parts) {
        const int n = std::max(16, static_cast<int>(std::lround(t_samples * (b - a) / span)));
        for (int i = 0; i <= n; ++i) scale = std::max(scale, std::abs(J(a + (b - a) * i / n)));
    }
    if (scale == 0.0)
        throw InconclusiveError("Jacobian vanishes identically along the member; family degenerate");

    std::vector<Root> dips;
    for (const auto& [a, b] : parts) {
        const int n = std::max(16, static_cast<int>(std::lround(t_samples * (b - a) / span)));
        RootScan scan = scan_roots(J, a, b, n, 1e-10, kDipRelTol * scale);
        if (scan.identically_zero)
            throw InconclusiveError("Jacobian magnitude below threshold over the whole member");
        for (const Root& r : scan.roots) dips.push_back(r);
    }

    // Periodic parameterizations sample t = 0 and t = 2*pi twice.
    if (fam.periodic(s) && dips.size() >= 2) {
        std::sort(dips.begin(), dips.end(), [](const Root& a, const Root& b) { return a.t < b.t; });
        if ((dips.front().t - tlo) + (thi - dips.back().t) <= 1e-6 * span) dips.pop_back();
    }

    IndexResult out;
    out.bound = fam.degree() * fam.degree();
    const int jet_order = out.bound + 2;
    // Scan centers are only a few parts in 1e6 accurate (and around a
    // high-even-order zero, noise-induced sign flips spawn bracketed roots
    // up to noise^(1/order) away from the true center), which the order-k
    // coefficient test would misread.  Polish each center with Newton on the
    // dominant jet term -- near a zero of order k at offset eps,
    // coeff(k-1)/coeff(k) = k * eps -- then merge centers that collapse
    // together: they are the same contact seen through noise.
    const double merge_tol = 0.25 * span / t_samples;
    std::vector<double> centers;
    for (const Root& r : dips) {
        double td = r.t;
        for (int it = 0; it < 12; ++it) {
            const Jet Jc = jacobian_jet(fam, s, td, jet_order);
            double sc = 0.0;
            for (int i = 0; i <= jet_order; ++i) sc = std::max(sc, std::abs(Jc.coeff(i)));
            if (sc == 0.0) break;
            int k = -1;
            for (int i = 0; i <= jet_order; ++i)
                if (std::abs(Jc.coeff(i)) > 1e-4 * sc) {
                    k = i;
                    break;
                }
            if (k <= 0) break;
            const double delta = -Jc.coeff(k - 1) / (k * Jc.coeff(k));
            if (!(std::abs(delta) < 1e-2)) break;  // not in a dominant-term regime
            td += delta;
            if (std::abs(delta) < 1e-13) break;
        }
        bool duplicate = false;
        for (double c : centers) duplicate = duplicate || std::abs(td - c) < merge_tol;
        if (duplicate) continue;
        centers.push_back(td);
        const Multiplicity m = infinitesimal_multiplicity(fam, s, td, jet_order);
        if (m.saturated)
            throw InconclusiveError(format("vanishing order at t=%g", td) +
                                    " not resolved within jet order " + std::to_string(jet_order));
        if (m.order == 0) continue;  // grazing dip, no actual contact
        MultiplicityResult mr;
        mr.s = s;
        mr.t = td;
        mr.order = m.order;
        mr.saturated = false;
        out.dips.push_back(mr);
        out.index += m.order;
    }
    if (out.index > out.bound)
        throw InconclusiveError("computed index " + std::to_string(out.index) +
                                " exceeds the degree bound " + std::to_string(out.bound) +
                                "; contact orders unreliable at this resolution");
    return out;
}

std::string to_string(CirclePair c) {
    switch (c) {
        case CirclePair::Nested: return "nested";
        case CirclePair::DisjointOutside: return "disjoint_outside";
        case CirclePair::Intersecting: return "intersecting";
        case CirclePair::Equal: return "equal";
    }
    return "?";
}

CirclePair circles_nested(const OsculatingCircle& c1, const OsculatingCircle& c2) {
    if (!(c1.radius > 0.0) || !(c2.radius > 0.0))
        throw NonpositiveRadius("circle comparison needs positive radii");
    const double dist = std::hypot(c2.center.x - c1.center.x, c2.center.y - c1.center.y);
    const double dr = std::abs(c1.radius - c2.radius);
    if (dist <= kCircleTol && dr <= kCircleTol) return CirclePair::Equal;
    if (dist < dr - kCircleTol) return CirclePair::Nested;
    if (dist > c1.radius + c2.radius + kCircleTol) return CirclePair::DisjointOutside;
    return CirclePair::Intersecting;
}

VerificationReport verify_circle_family(const PlaneCurve& curve, double lo, double hi, int samples) {
    if (!(lo < hi)) throw PreconditionError("interval must satisfy lo < hi");
    if (samples < 2) throw PreconditionError("need at least 2 samples");

    // Curvature must not vanish: scan the (speed-scaled) numerator
    // x' y'' - y' x'' for sign changes.
    auto kappa_num = [&](double s) {
        auto [jx, jy] = curve.jets(s, 2);
        return jx.coeff(1) * 2.0 * jy.coeff(2) - jy.coeff(1) * 2.0 * jx.coeff(2);
    };
    RootScan kz = scan_roots(kappa_num, lo, hi);
    if (kz.identically_zero)
        throw ZeroCurvature("curvature vanishes identically on the interval; no osculating circles");
    if (!kz.roots.empty())
        throw PreconditionError(format("curvature vanishes at s=%g inside interval", kz.roots.front().t));

    RootScan verts = find_vertices(curve, lo, hi);
    if (!verts.roots.empty())
        throw PreconditionError(format("vertex at s=%g inside interval", verts.roots.front().t));

    VerificationReport rep;
    rep.family = "circle";
    rep.theorem = "circle-nesting";
    rep.params = {{"interval", {lo, hi}}};
    rep.grid = {{"s_samples", samples}};

    std::vector<double> ss(static_cast<std::size_t>(samples));
    std::vector<OsculatingCircle> circles(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) ss[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (samples - 1);
    parallel_for(samples, [&](int i) {
        circles[static_cast<std::size_t>(i)] = osculating_circle(curve, ss[static_cast<std::size_t>(i)]);
    });

    const int npairs = samples * (samples - 1) / 2;
    rep.pairs.resize(static_cast<std::size_t>(npairs));
    std::vector<CirclePair> classes(static_cast<std::size_t>(npairs));
    parallel_for(npairs, [&](int p) {
        // p -> (i, j), i < j, ordered by (i, j).
        int i = 0, rem = p;
        while (rem >= samples - 1 - i) {
            rem -= samples - 1 - i;
            ++i;
        }
        const int j = i + 1 + rem;
        const OsculatingCircle &a = circles[static_cast<std::size_t>(i)], &b = circles[static_cast<std::size_t>(j)];
        const CirclePair cls = circles_nested(a, b);
        PairResult pr;
        pr.a = ss[static_cast<std::size_t>(i)];
        pr.b = ss[static_cast<std::size_t>(j)];
        const double dist = std::hypot(b.center.x - a.center.x, b.center.y - a.center.y);
        const double dr = std::abs(a.radius - b.radius);
        switch (cls) {
            case CirclePair::Nested:
                pr.verdict = Verdict::Nested;
                pr.min_gap = dr - dist;
                break;
            case CirclePair::DisjointOutside:
                pr.verdict = Verdict::Disjoint;
                pr.min_gap = dist - (a.radius + b.radius);
                break;
            case CirclePair::Equal:
                pr.verdict = Verdict::EqualFamily;
                pr.min_gap = 0.0;
                break;
            case CirclePair::Intersecting: {
                pr.verdict = Verdict::Intersecting;
                pr.min_gap = -std::min(dist - dr, a.radius + b.radius - dist);
                const Point w = circle_crossing(a, b);
                pr.witness = {{w.x, w.y}};
                break;
            }
        }
        classes[static_cast<std::size_t>(p)] = cls;
        rep.pairs[static_cast<std::size_t>(p)] = pr;
    });

    int intersecting = 0, equal = 0;
    for (const CirclePair c : classes) {
        intersecting += c == CirclePair::Intersecting;
        equal += c == CirclePair::Equal;
    }

    // Transitivity of strict containment across every sampled triple.
    auto contains = [&](int i, int j) {
        const OsculatingCircle &a = circles[static_cast<std::size_t>(i)], &b = circles[static_cast<std::size_t>(j)];
        const double dist = std::hypot(b.center.x - a.center.x, b.center.y - a.center.y);
        return dist < a.radius - b.radius - kCircleTol;
    };
    bool transitive = true;
    for (int i = 0; i < samples && transitive; ++i)
        for (int j = i + 1; j < samples && transitive; ++j)
            for (int k = j + 1; k < samples && transitive; ++k) {
                if (contains(i, j) && contains(j, k) && !contains(i, k)) transitive = false;
                if (contains(j, i) && contains(k, j) && !contains(k, i)) transitive = false;
            }

    if (equal == npairs && npairs > 0) {
        rep.verdict = Verdict::EqualFamily;
        rep.notes.push_back("all sampled circles coincide; the family is constant");
    } else if (intersecting > 0) {
        rep.verdict = Verdict::Intersecting;
        rep.notes.push_back(std::to_string(intersecting) + " of " + std::to_string(npairs) +
                            " pairs intersect");
    } else if (equal > 0) {
        rep.verdict = Verdict::Inconclusive;
        rep.notes.push_back("some sampled circles coincide without the whole family being constant");
    } else if (!transitive) {
        rep.verdict = Verdict::Inconclusive;
        rep.notes.push_back("containment failed the transitivity spot-check");
    } else {
        bool all_nested = true;
        for (const CirclePair c : classes) all_nested = all_nested && c == CirclePair::Nested;
        rep.verdict = Verdict::Disjoint;
        rep.notes.push_back(all_nested ? "all sampled pairs strictly nested"
                                       : "all sampled pairs nested or mutually outside");
    }
    return rep;
}

namespace {

/// Newton on the joint system {source = 0, other = 0} so a crossing witness
/// lies on both curves.
Point polish_joint(const AlgebraicCurve& src, const AlgebraicCurve& other, Point w, double scale) {
    for (int it = 0; it < 25 && !src.coeffs.empty(); ++it) {
        const double va = src.eval(w.x, w.y), vb = other.eval(w.x, w.y);
        if (std::abs(va) <= 1e-9 * scale && std::abs(vb) <= 1e-9 * scale) break;
        auto [ax, ay] = src.gradient(w.x, w.y);
        auto [bx, by] = other.gradient(w.x, w.y);
        const double det = ax * by - ay * bx;
        if (std::abs(det) <= 1e-14) break;  // near-tangential: keep the estimate
        w.x -= (va * by - vb * ay) / det;
        w.y -= (ax * vb - bx * va) / det;
    }
    return w;
}

struct SideScan {
    bool crossed = false;            // validated sign flip found
    bool all_zero = false;           // polynomial vanished at every vertex
    bool in_band = false;            // some |value| below band without a sign flip
    double min_abs = 0.0;            // smallest |value| along the vertices
    double band = 0.0;               // tolerance band used
    std::optional<Point> witness;    // polished crossing point
    std::vector<std::size_t> band_idx;  // vertices whose |value| fell below band
};

/// Sign scan of `other`'s polynomial along a vertex chain of `source`'s zero
/// set.  A crossing is a sign flip between consecutive nonzero values; exact
/// zeros between same-sign neighbors are touches and fall through to the
/// tolerance-band check.
SideScan side_scan(const std::vector<Point>& pts, bool closed, const AlgebraicCurve& source,
                   const AlgebraicCurve& other) {
    const std::size_t n = pts.size();
    std::vector<double> vals(n);
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        vals[i] = other.eval(pts[i].x, pts[i].y);
        scale = std::max(scale, term_scale(other, pts[i].x, pts[i].y));
    }
    SideScan out;
    out.band = 1e-7 * scale;

    std::size_t first_nz = n;
    for (std::size_t i = 0; i < n; ++i)
        if (vals[i] != 0.0) {
            first_nz = i;
            break;
        }
    if (first_nz == n) {
        out.all_zero = true;
        return out;
    }

    const std::size_t steps = closed ? n : n - 1 - first_nz;
    std::size_t prev = first_nz;
    for (std::size_t step = 1; step <= steps && !out.crossed; ++step) {
        const std::size_t idx = closed ? (first_nz + step) % n : first_nz + step;
        if (vals[idx] == 0.0) continue;
        if ((vals[prev] > 0.0) != (vals[idx] > 0.0)) {
            // Flips entirely inside the band are evaluation noise, not
            // evidence: a transversal crossing has flanking values far above
            // it.  Record the ambiguity and keep scanning.
            if (std::max(std::abs(vals[prev]), std::abs(vals[idx])) < out.band) {
                out.in_band = true;
                prev = idx;
                continue;
            }
            out.crossed = true;
            if ((prev + 1) % n == idx) {
                // Bisect along the chord, whose endpoints sit on the source.
                const Point p0 = pts[prev], p1 = pts[idx];
                auto at = [&](double u) {
                    return Point{p0.x + u * (p1.x - p0.x), p0.y + u * (p1.y - p0.y)};
                };
                double ua = 0.0, ub = 1.0, fa = vals[prev];
                while (ub - ua > 1e-12) {
                    const double um = 0.5 * (ua + ub);
                    const Point q = at(um);
                    const double fm = other.eval(q.x, q.y);
                    if (fm == 0.0) { ua = ub = um; break; }
                    if ((fa > 0.0) != (fm > 0.0)) {
                        ub = um;
                    } else {
                        ua = um;
                        fa = fm;
                    }
                }
                out.witness = polish_joint(source, other, at(0.5 * (ua + ub)), scale);
            } else {
                // Sign flips across a run of exact zeros: any zero vertex in
                // between is already a crossing point.
                out.witness = polish_joint(source, other, pts[(prev + 1) % n], scale);
            }
        }
        prev = idx;
    }
    if (out.crossed) return out;

    out.min_abs = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        out.min_abs = std::min(out.min_abs, std::abs(vals[i]));
        if (std::abs(vals[i]) < out.band) out.band_idx.push_back(i);
    }
    out.in_band = !out.band_idx.empty();
    return out;
}

/// Result of scanning one family member's polynomial along the base arc.
struct ArcContact {
    bool ok = true;
    std::string why;
};

/// Checks that the zero set of `A` meets the base arc only at the member's own
/// tangency, crossing it there once (an odd-order contact): sampled values
/// must dip inside the tolerance band in a single contiguous run surrounding
/// the tangency parameter and keep a single sign on each side, with opposite
/// signs across the run.  Any second approach or flip means another component
/// of the zero set cuts through the arc.
ArcContact member_arc_contact(const PlaneCurve& curve, const AlgebraicCurve& A, double lo, double hi,
                              double s0, int n = 1024) {
    std::vector<double> ts(static_cast<std::size_t>(n)), vals(static_cast<std::size_t>(n));
    double scale = 0.0;
    for (int k = 0; k < n; ++k) {
        const double t = lo + (hi - lo) * k / (n - 1);
        const Point p = curve.at(t);
        ts[static_cast<std::size_t>(k)] = t;
        vals[static_cast<std::size_t>(k)] = A.eval(p.x, p.y);
        scale = std::max(scale, term_scale(A, p.x, p.y));
    }
    const double band = 1e-7 * scale;

    ArcContact out;
    int run_lo = -1, run_hi = -1;
    for (int k = 0; k < n; ++k) {
        if (std::abs(vals[static_cast<std::size_t>(k)]) >= band) continue;
        if (run_lo < 0) {
            run_lo = run_hi = k;
        } else if (k == run_hi + 1) {
            run_hi = k;
        } else {
            out.ok = false;
            out.why = format("member at s=%g re-enters the tolerance band of the base arc", s0) +
                      format(" near t=%g", ts[static_cast<std::size_t>(k)]);
            return out;
        }
    }
    const int idx0 = static_cast<int>(std::lround((s0 - lo) / (hi - lo) * (n - 1)));
    if (run_lo < 0 || idx0 < run_lo - 1 || idx0 > run_hi + 1) {
        out.ok = false;
        out.why = format("member at s=%g does not touch the base arc at its tangency", s0);
        return out;
    }
    int sign_before = 0, sign_after = 0;
    for (int k = 0; k < run_lo; ++k) {
        const int s = vals[static_cast<std::size_t>(k)] > 0.0 ? 1 : -1;
        if (sign_before == 0) {
            sign_before = s;
        } else if (s != sign_before) {
            out.ok = false;
            out.why = format("member at s=%g crosses the base arc away from its tangency", s0);
            return out;
        }
    }
    for (int k = run_hi + 1; k < n; ++k) {
        const int s = vals[static_cast<std::size_t>(k)] > 0.0 ? 1 : -1;
        if (sign_after == 0) {
            sign_after = s;
        } else if (s != sign_after) {
            out.ok = false;
            out.why = format("member at s=%g crosses the base arc away from its tangency", s0);
            return out;
        }
    }
    if (sign_before != 0 && sign_after != 0 && sign_before == sign_after) {
        out.ok = false;
        out.why = format("base arc stays on one side of the member at s=%g: contact is not odd", s0);
    }
    return out;
}

/// Distance from a point to a polyline (minimum over its segments).
double dist_to_polyline(const Point& p, const std::vector<Point>& chain) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
        const double ax = chain[k].x, ay = chain[k].y;
        const double bx = chain[k + 1].x - ax, by = chain[k + 1].y - ay;
        const double len2 = bx * bx + by * by;
        double u = len2 > 0.0 ? ((p.x - ax) * bx + (p.y - ay) * by) / len2 : 0.0;
        u = std::clamp(u, 0.0, 1.0);
        best = std::min(best, std::hypot(p.x - ax - u * bx, p.y - ay - u * by));
    }
    return best;
}

/// Diagonal of the axis-aligned bounding box of a vertex chain.
double bbox_diag(const std::vector<Point>& pts) {
    double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo;
    double ylo = xlo, yhi = -xlo;
    for (const Point& p : pts) {
        xlo = std::min(xlo, p.x);
        xhi = std::max(xhi, p.x);
        ylo = std::min(ylo, p.y);
        yhi = std::max(yhi, p.y);
    }
    return std::hypot(xhi - xlo, yhi - ylo);
}

}  // namespace

OvalCheck oval_vs_curve(const OvalTrace& polyline, const AlgebraicCurve& other) {
    if (polyline.points.size() < 3) throw PreconditionError("polyline needs at least 3 vertices");
    const SideScan scan = side_scan(polyline.points, true, polyline.source, other);
    if (scan.all_zero)
        throw InconclusiveError("defining polynomial vanishes at every polyline vertex");
    OvalCheck out;
    if (scan.crossed) {
        out.verdict = Verdict::Intersecting;
        out.witness = scan.witness;
        return out;
    }
    if (scan.in_band)
        throw InconclusiveError(
            format("polynomial value %.3g on the polyline", scan.min_abs) +
            format(" falls inside the tolerance band %.3g without a sign change", scan.band));
    out.verdict = Verdict::Disjoint;
    return out;
}

VerificationReport verify_mobius_family(const Expr& f, double lo, double hi, double wlo, double whi,
                                        int samples) {
    if (!(lo < hi)) throw PreconditionError("interval must satisfy lo < hi");
    if (!(wlo < whi)) throw PreconditionError("window must satisfy wlo < whi");
    if (samples < 2) throw PreconditionError("need at least 2 samples");

    VerificationReport rep;
    rep.family = "mobius";
    rep.theorem = "hyperbola-nesting";
    rep.params = {{"interval", {lo, hi}}, {"window", {wlo, whi}}};
    const int x_samples = 256;
    rep.grid = {{"s_samples", samples}, {"x_samples", x_samples}};

    RootScan sz = find_schwarzian_zeros(f, lo, hi);
    if (sz.identically_zero) {
        rep.verdict = Verdict::EqualFamily;
        rep.notes.push_back(
            "Schwarzian derivative vanishes identically: every osculant equals the source function");
        for (int i = 0; i < samples; ++i)
            for (int j = i + 1; j < samples; ++j) {
                PairResult pr;
                pr.a = lo + (hi - lo) * i / (samples - 1);
                pr.b = lo + (hi - lo) * j / (samples - 1);
                pr.min_gap = 0.0;
                pr.verdict = Verdict::EqualFamily;
                rep.pairs.push_back(pr);
            }
        return rep;
    }
    if (!sz.roots.empty())
        throw PreconditionError(format("Schwarzian zero at t=%g inside interval", sz.roots.front().t));

    std::vector<double> ss(static_cast<std::size_t>(samples));
    std::vector<MobiusOsculant> osc(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) ss[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (samples - 1);
    for (int i = 0; i < samples; ++i) osc[static_cast<std::size_t>(i)] = osculating_mobius(f, ss[static_cast<std::size_t>(i)]);

    for (int i = 0; i < samples; ++i)
        for (int j = i + 1; j < samples; ++j)
            if (!osc[static_cast<std::size_t>(i)].line && !osc[static_cast<std::size_t>(j)].line &&
                std::abs(osc[static_cast<std::size_t>(i)].p - osc[static_cast<std::size_t>(j)].p) <= kPoleMergeTol)
                throw PoleOverlap(format("poles of the osculants at s=%g", ss[static_cast<std::size_t>(i)]) +
                                  format(" and s=%g coincide within 1e-9", ss[static_cast<std::size_t>(j)]));

    const int npairs = samples * (samples - 1) / 2;
    rep.pairs.resize(static_cast<std::size_t>(npairs));
    parallel_for(npairs, [&](int p) {
        int i = 0, rem = p;
        while (rem >= samples - 1 - i) {
            rem -= samples - 1 - i;
            ++i;
        }
        const int j = i + 1 + rem;
        const MobiusOsculant &a = osc[static_cast<std::size_t>(i)], &b = osc[static_cast<std::size_t>(j)];

        auto near_pole = [&](double x) {
            return (!a.line && std::abs(x - a.p) < kPoleHalfWidth) ||
                   (!b.line && std::abs(x - b.p) < kPoleHalfWidth);
        };
        auto pole_between = [&](double x0, double x1) {
            return (!a.line && a.p > x0 && a.p < x1) || (!b.line && b.p > x0 && b.p < x1);
        };

        PairResult pr;
        pr.a = ss[static_cast<std::size_t>(i)];
        pr.b = ss[static_cast<std::size_t>(j)];
        pr.min_gap = std::numeric_limits<double>::infinity();
        pr.verdict = Verdict::Disjoint;

        bool have_prev = false;
        double prev_x = 0.0, prev_g = 0.0;
        for (int k = 0; k <= x_samples; ++k) {
            const double x = wlo + (whi - wlo) * k / x_samples;
            if (near_pole(x)) {
                have_prev = false;
                continue;
            }
            const double g = a.eval(x) - b.eval(x);
            pr.min_gap = std::min(pr.min_gap, std::abs(g));
            if (have_prev && !pole_between(prev_x, x) && (prev_g > 0.0) != (g > 0.0)) {
                // Crossing: bisect the vertical gap on this pole-free span.
                double xa = prev_x, xb = x, ga = prev_g;
                while (xb - xa > 1e-12) {
                    const double xm = 0.5 * (xa + xb);
                    const double gm = a.eval(xm) - b.eval(xm);
                    if (gm == 0.0) { xa = xb = xm; break; }
                    if ((ga > 0.0) != (gm > 0.0)) {
                        xb = xm;
                    } else {
                        xa = xm;
                        ga = gm;
                    }
                }
                const double xw = 0.5 * (xa + xb);
                pr.verdict = Verdict::Intersecting;
                pr.witness = {{xw, 0.5 * (a.eval(xw) + b.eval(xw))}};
                pr.min_gap = 0.0;
            }
            have_prev = true;
            prev_x = x;
            prev_g = g;
        }
        if (!std::isfinite(pr.min_gap)) pr.min_gap = 0.0;
        rep.pairs[static_cast<std::size_t>(p)] = pr;
    });

    int crossings = 0;
    double worst_gap = std::numeric_limits<double>::infinity();
    for (const PairResult& pr : rep.pairs) {
        crossings += pr.verdict == Verdict::Intersecting;
        worst_gap = std::min(worst_gap, pr.min_gap);
    }
    if (crossings > 0) {
        rep.verdict = Verdict::Intersecting;
        rep.notes.push_back(std::to_string(crossings) + " of " + std::to_string(npairs) +
                            " pairs cross inside the window");
    } else if (!(worst_gap > 0.0)) {
        rep.verdict = Verdict::Inconclusive;
        rep.notes.push_back("zero vertical gap sampled without a sign change");
    } else {
        rep.verdict = Verdict::Disjoint;
        rep.notes.push_back("branches compared as graphs over the window minus pole zones of half-width 1e-3");
    }
    return rep;
}

namespace {

/// Smallest |polynomial value| along a scanned side, relative to the local
/// term scale (the band is 1e-7 of that scale).
double relative_margin(const SideScan& s) {
    return s.band > 0.0 ? s.min_abs / (s.band * 1e7) : 0.0;
}

/// Fill a report with an all-equal pair grid (constant families).
void fill_equal_pairs(VerificationReport& rep, double lo, double hi, int samples) {
    for (int i = 0; i < samples; ++i)
        for (int j = i + 1; j < samples; ++j) {
            PairResult pr;
            pr.a = lo + (hi - lo) * i / (samples - 1);
            pr.b = lo + (hi - lo) * j / (samples - 1);
            pr.min_gap = 0.0;
            pr.verdict = Verdict::EqualFamily;
            rep.pairs.push_back(pr);
        }
}

}  // namespace

VerificationReport verify_conic_family(const PlaneCurve& curve, double lo, double hi, int samples) {
    if (!(lo < hi)) throw PreconditionError("interval must satisfy lo < hi");
    if (samples < 2) throw PreconditionError("need at least 2 samples");

    VerificationReport rep;
    rep.family = "conic";
    rep.theorem = "conic-nesting";
    const int t_samples = 256;
    rep.params = {{"interval", {lo, hi}}, {"band_rel", 1e-7}};
    rep.grid = {{"s_samples", samples}, {"t_samples", t_samples}};

    RootScan ex = find_extactic_points(curve, lo, hi, 2);
    if (ex.identically_zero) {
        rep.verdict = Verdict::EqualFamily;
        rep.notes.push_back("curve is itself a conic: every osculating conic equals it");
        fill_equal_pairs(rep, lo, hi, samples);
        return rep;
    }
    if (!ex.roots.empty())
        throw PreconditionError(format("extactic point at s=%g inside interval", ex.roots.front().t));

    const FamilyMap fam = FamilyMap::conic_family(curve);
    std::vector<double> ss(static_cast<std::size_t>(samples));
    std::vector<AlgebraicCurve> conics(static_cast<std::size_t>(samples));
    std::vector<std::vector<Point>> arcs(static_cast<std::size_t>(samples));
    std::vector<char> closed(static_cast<std::size_t>(samples), 0);
    std::vector<std::string> sweep_fail(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) ss[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (samples - 1);
    parallel_for(samples, [&](int i) {
        const std::size_t u = static_cast<std::size_t>(i);
        conics[u] = osculating_algebraic_curve(curve, ss[u], 2);
        const auto [tlo, thi] = fam.t_domain(ss[u]);
        const bool per = fam.periodic(ss[u]);
        closed[u] = per ? 1 : 0;
        const int last = per ? t_samples - 1 : t_samples;  // periodic arcs skip the duplicate endpoint
        arcs[u].reserve(static_cast<std::size_t>(last + 1));
        for (int k = 0; k <= last; ++k)
            arcs[u].push_back(fam.eval(ss[u], tlo + (thi - tlo) * k / t_samples));
        // One-sided sweep certificate: the Jacobian of the family map must
        // vanish only at the tangency and to even order 4 = d^2, so
        // infinitesimally close members pass on one side of each other.
        // This, not the sign margin, is what certifies the exponentially
        // close nested approach of nearby members around their tangencies.
        try {
            const IndexResult ir = infinitesimal_index(fam, ss[u], 512);
            if (ir.dips.size() != 1 || ir.dips[0].order != 4 ||
                std::abs(ir.dips[0].t - fam.tangency_t(ss[u])) > 1e-3)
                sweep_fail[u] =
                    format("family sweep at s=%g is not a single order-4 contact at the tangency", ss[u]);
        } catch (const Error& e) {
            sweep_fail[u] = format("family sweep not certifiable at s=%g: ", ss[u]) + e.what();
        }
    });
    bool sweep_ok = true;
    for (const std::string& msg : sweep_fail)
        if (!msg.empty()) {
            sweep_ok = false;
            rep.notes.push_back(msg);
        }

    const int npairs = samples * (samples - 1) / 2;
    rep.pairs.resize(static_cast<std::size_t>(npairs));
    parallel_for(npairs, [&](int p) {
        int i = 0, rem = p;
        while (rem >= samples - 1 - i) {
            rem -= samples - 1 - i;
            ++i;
        }
        const int j = i + 1 + rem;
        const std::size_t ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
        const SideScan ab = side_scan(arcs[ui], closed[ui], conics[ui], conics[uj]);
        const SideScan ba = side_scan(arcs[uj], closed[uj], conics[uj], conics[ui]);
        PairResult pr;
        pr.a = ss[ui];
        pr.b = ss[uj];
        if (ab.all_zero || ba.all_zero) {
            pr.verdict = Verdict::EqualFamily;
            pr.min_gap = 0.0;
        } else if (ab.crossed || ba.crossed) {
            pr.verdict = Verdict::Intersecting;
            pr.min_gap = 0.0;
            const Point w = ab.crossed ? *ab.witness : *ba.witness;
            pr.witness = {{w.x, w.y}};
        } else if ((ab.in_band || ba.in_band) && !sweep_ok) {
            pr.verdict = Verdict::Inconclusive;
            pr.min_gap = std::min(relative_margin(ab), relative_margin(ba));
        } else {
            // Sign constant both ways; values inside the band can only be the
            // nested near-tangency approach once the sweep is certified.
            pr.verdict = Verdict::Disjoint;
            pr.min_gap = std::min(relative_margin(ab), relative_margin(ba));
        }
        rep.pairs[static_cast<std::size_t>(p)] = pr;
    });

    int crossings = 0, marginal = 0, equal = 0, near = 0;
    for (const PairResult& pr : rep.pairs) {
        crossings += pr.verdict == Verdict::Intersecting;
        marginal += pr.verdict == Verdict::Inconclusive;
        equal += pr.verdict == Verdict::EqualFamily;
        near += pr.verdict == Verdict::Disjoint && pr.min_gap < 1e-7;
    }
    rep.notes.push_back("min_gap is the smallest |polynomial value| along the paired arc, "
                        "relative to the local term scale");
    if (crossings > 0) {
        rep.verdict = Verdict::Intersecting;
        rep.notes.push_back(std::to_string(crossings) + " of " + std::to_string(npairs) +
                            " pairs cross");
    } else if (marginal > 0 || equal > 0 || !sweep_ok) {
        rep.verdict = Verdict::Inconclusive;
        rep.notes.push_back("sign sampling could not separate all pairs and the sweep "
                            "certificate does not cover them");
    } else {
        rep.verdict = Verdict::Disjoint;
        rep.notes.push_back("one-sided sweep certified at all " + std::to_string(samples) +
                            " samples: a single order-4 contact at each tangency");
        if (near > 0)
            rep.notes.push_back(std::to_string(near) +
                                " pairs approach inside the tolerance band near their "
                                "tangencies; nesting there rests on the sweep certificate");
        rep.notes.push_back("each member's polynomial keeps one sign along the other's sampled arc");
    }
    return rep;
}

VerificationReport verify_cubic_ovals(const PlaneCurve& curve, double lo, double hi, int samples,
                                      int grid_n) {
    if (!(lo < hi)) throw PreconditionError("interval must satisfy lo < hi");
    if (samples < 2) throw PreconditionError("need at least 2 samples");

    VerificationReport rep;
    rep.family = "cubic";
    rep.theorem = "cubic-oval-nesting";
    rep.params = {{"interval", {lo, hi}}, {"band_rel", 1e-7}, {"tube_rel", 0.02}};
    rep.grid = {{"s_samples", samples}, {"trace_grid", grid_n}, {"arc_samples", 1024}};

    RootScan ex = find_extactic_points(curve, lo, hi, 3);
    if (ex.identically_zero) {
        rep.verdict = Verdict::EqualFamily;
        rep.notes.push_back("curve is itself a cubic: every osculating cubic equals it");
        fill_equal_pairs(rep, lo, hi, samples);
        return rep;
    }
    if (!ex.roots.empty())
        throw PreconditionError(format("extactic point at s=%g inside interval", ex.roots.front().t));

    std::vector<double> ss(static_cast<std::size_t>(samples));
    std::vector<AlgebraicCurve> cubics(static_cast<std::size_t>(samples));
    std::vector<OvalTrace> ovals(static_cast<std::size_t>(samples));
    std::vector<char> open(static_cast<std::size_t>(samples), 0);
    for (int i = 0; i < samples; ++i) ss[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (samples - 1);
    parallel_for(samples, [&](int i) {
        const std::size_t u = static_cast<std::size_t>(i);
        cubics[u] = osculating_algebraic_curve(curve, ss[u], 3);
        try {
            ovals[u] = trace_oval(cubics[u], curve.at(ss[u]), grid_n);
        } catch (const OpenComponent&) {
            open[u] = 1;  // flagged below; the theorem only covers the ovals
            return;
        }
        // Traced vertices are only ~1e-6 accurate, which would swamp the
        // other cubic's tiny values near shared tangencies and flip signs at
        // random; tighten them before sign-testing.
        double cs = 0.0;
        for (double v : cubics[u].coeffs) cs = std::max(cs, std::abs(v));
        for (Point& q : ovals[u].points) refine_onto(cubics[u], q, 1e-12 * cs, 0.05);
    });
    for (int i = 0; i < samples; ++i)
        if (open[static_cast<std::size_t>(i)])
            rep.notes.push_back(format("tangency at s=%g lies on an unbounded component",
                                       ss[static_cast<std::size_t>(i)]));

    // Arc-contact certificate: each cubic must cross the base arc exactly
    // once, at its own tangency.  Together with the precondition scan this
    // pins the configuration the nesting argument needs, and it is what rules
    // out another branch of the cubic wandering through the sampled region.
    std::vector<std::string> contact_fail(static_cast<std::size_t>(samples));
    parallel_for(samples, [&](int i) {
        const std::size_t u = static_cast<std::size_t>(i);
        if (open[u]) return;
        const ArcContact ac = member_arc_contact(curve, cubics[u], lo, hi, ss[u]);
        if (!ac.ok) contact_fail[u] = ac.why;
    });
    bool contact_ok = true;
    for (const std::string& msg : contact_fail)
        if (!msg.empty()) {
            contact_ok = false;
            rep.notes.push_back(msg);
        }

    // Dense polyline of the base arc, used to confine band-level ambiguity to
    // a thin tube around it.  The ovals keep hugging the curve a little past
    // the sampled window, so the chain extends beyond it (inside the curve's
    // domain) by a fraction of the window length.
    const double ext = 0.35 * (hi - lo);
    const double clo = std::max(curve.lo(), lo - ext);
    const double chi = std::min(curve.hi(), hi + ext);
    std::vector<Point> base_chain(1025);
    for (int k = 0; k <= 1024; ++k) base_chain[static_cast<std::size_t>(k)] = curve.at(clo + (chi - clo) * k / 1024);

    const int npairs = samples * (samples - 1) / 2;
    rep.pairs.resize(static_cast<std::size_t>(npairs));
    std::vector<char> stray(static_cast<std::size_t>(npairs), 0);
    parallel_for(npairs, [&](int p) {
        int i = 0, rem = p;
        while (rem >= samples - 1 - i) {
            rem -= samples - 1 - i;
            ++i;
        }
        const int j = i + 1 + rem;
        const std::size_t ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
        PairResult pr;
        pr.a = ss[ui];
        pr.b = ss[uj];
        if (open[ui] || open[uj]) {
            pr.verdict = Verdict::Inconclusive;
            pr.min_gap = 0.0;
            rep.pairs[static_cast<std::size_t>(p)] = pr;
            return;
        }
        const SideScan ab = side_scan(ovals[ui].points, true, cubics[ui], cubics[uj]);
        const SideScan ba = side_scan(ovals[uj].points, true, cubics[uj], cubics[ui]);
        if (ab.all_zero || ba.all_zero) {
            pr.verdict = Verdict::EqualFamily;
            pr.min_gap = 0.0;
        } else if (ab.crossed || ba.crossed) {
            pr.verdict = Verdict::Intersecting;
            pr.min_gap = 0.0;
            const Point w = ab.crossed ? *ab.witness : *ba.witness;
            pr.witness = {{w.x, w.y}};
        } else if (ab.in_band || ba.in_band) {
            // Values below the band are certifiable only where both ovals hug
            // the base arc: there the arc-contact certificate accounts for the
            // approach.  A dip away from that tube stays unresolved.
            const double tube =
                0.02 * std::min(bbox_diag(ovals[ui].points), bbox_diag(ovals[uj].points));
            bool in_tube = true;
            for (std::size_t k : ab.band_idx)
                if (dist_to_polyline(ovals[ui].points[k], base_chain) > tube) {
                    in_tube = false;
                    break;
                }
            if (in_tube)
                for (std::size_t k : ba.band_idx)
                    if (dist_to_polyline(ovals[uj].points[k], base_chain) > tube) {
                        in_tube = false;
                        break;
                    }
            if (!in_tube) stray[static_cast<std::size_t>(p)] = 1;
            const bool certified =
                in_tube && contact_fail[ui].empty() && contact_fail[uj].empty();
            pr.verdict = certified ? Verdict::Disjoint : Verdict::Inconclusive;
            pr.min_gap = std::min(relative_margin(ab), relative_margin(ba));
        } else {
            pr.verdict = Verdict::Disjoint;
            pr.min_gap = std::min(relative_margin(ab), relative_margin(ba));
        }
        rep.pairs[static_cast<std::size_t>(p)] = pr;
    });

    int crossings = 0, marginal = 0, equal = 0, near = 0, strays = 0;
    for (int p = 0; p < npairs; ++p) {
        const PairResult& pr = rep.pairs[static_cast<std::size_t>(p)];
        crossings += pr.verdict == Verdict::Intersecting;
        marginal += pr.verdict == Verdict::Inconclusive;
        equal += pr.verdict == Verdict::EqualFamily;
        near += pr.verdict == Verdict::Disjoint && pr.min_gap < 1e-7;
        strays += stray[static_cast<std::size_t>(p)] != 0;
    }
    rep.notes.push_back("min_gap is the smallest |polynomial value| along the paired oval, "
                        "relative to the local term scale");
    if (strays > 0)
        rep.notes.push_back(std::to_string(strays) +
                            " pairs dip inside the tolerance band away from the base arc");
    if (crossings > 0) {
        rep.verdict = Verdict::Intersecting;
        rep.notes.push_back(std::to_string(crossings) + " of " + std::to_string(npairs) +
                            " pairs cross");
    } else if (marginal > 0 || equal > 0 || !contact_ok) {
        rep.verdict = Verdict::Inconclusive;
        rep.notes.push_back("sign sampling could not separate all pairs and the arc-contact "
                            "certificate does not cover them");
    } else {
        rep.verdict = Verdict::Disjoint;
        rep.notes.push_back("arc-contact certified at all " + std::to_string(samples) +
                            " samples: each cubic crosses the base arc exactly once, at its own "
                            "tangency");
        if (near > 0)
            rep.notes.push_back(std::to_string(near) +
                                " pairs approach inside the tolerance band only within a thin "
                                "tube around the base arc; nesting there rests on the "
                                "arc-contact certificate");
        rep.notes.push_back("each cubic's polynomial keeps one sign along the other's traced oval");
    }
    return rep;
}

VerificationReport envelope_multiplicity_check(const PlaneCurve& curve, double s, int d) {
    if (d != 1 && d != 2) throw PreconditionError("envelope check supports d = 1 or 2 only");
    const int expected = d * (d + 3) / 2 - 1;

    // A curve that is itself algebraic of degree <= d has a constant
    // osculating family; the envelope statement is empty there.
    {
        const double delta = 1e-3;
        AlgebraicCurve here = osculating_algebraic_curve(curve, s, d);
        AlgebraicCurve there = osculating_algebraic_curve(curve, s + delta, d);
        double dot = 0.0;
        for (std::size_t i = 0; i < here.coeffs.size(); ++i) dot += here.coeffs[i] * there.coeffs[i];
        double dist2 = 0.0;
        const double sign = dot < 0.0 ? -1.0 : 1.0;
        for (std::size_t i = 0; i < here.coeffs.size(); ++i) {
            const double diff = here.coeffs[i] - sign * there.coeffs[i];
            dist2 += diff * diff;
        }
        if (std::sqrt(dist2) <= 1e-8)
            throw PreconditionError("curve is algebraic of degree <= " + std::to_string(d) +
                                    ": the osculating family is constant");
    }

    const FamilyMap fam =
        d == 2 ? FamilyMap::conic_family(curve) : FamilyMap::line_family(curve);

    const double t0 = fam.tangency_t(s);
    const Multiplicity m = infinitesimal_multiplicity(fam, s, t0, expected + 2);

    VerificationReport rep;
    rep.family = d == 2 ? "conic" : "line";
    rep.theorem = "envelope-multiplicity";
    rep.params = {{"d", d}, {"expected_order", expected}};
    MultiplicityResult mr;
    mr.s = s;
    mr.t = t0;
    mr.order = m.order;
    mr.saturated = m.saturated;
    rep.multiplicities.push_back(mr);
    rep.bound = d * d;
    if (!m.saturated && m.order == expected) {
        rep.verdict = Verdict::Disjoint;
        rep.notes.push_back("tangency order " + std::to_string(m.order) +
                            " equals d(d+3)/2 - 1 and exhausts the d^2 intersection budget");
    } else {
        rep.verdict = Verdict::Inconclusive;
        rep.notes.push_back("tangency order " + std::to_string(m.order) + (m.saturated ? "+ (saturated)" : "") +
                            " differs from the expected " + std::to_string(expected));
    }
    return rep;
}

}  // namespace osc
