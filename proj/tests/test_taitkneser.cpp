// SPDX-License-Identifier: Apache-2.0
//
// Family verification: circle/conic/graph/hyperbola families, pairwise
// nesting verdicts, and infinitesimal contact multiplicities and indices.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>

#include "osc/algebraic.hpp"
#include "osc/curve.hpp"
#include "osc/taitkneser.hpp"

using namespace osc;

namespace {

constexpr double kPi = 3.14159265358979323846;

OsculatingCircle make_circle(double cx, double cy, double r) {
    OsculatingCircle c;
    c.center = {cx, cy};
    c.radius = r;
    c.curvature = 1.0 / r;
    return c;
}

AlgebraicCurve make_conic(double f0, double d1, double e1, double a2, double b2, double c2) {
    AlgebraicCurve c;
    c.degree = 2;
    c.coeffs = {f0, d1, e1, a2, b2, c2};
    c.normalize();
    return c;
}

PlaneCurve log_spiral() {
    return PlaneCurve::parametric("exp(0.2*s)*cos(s)", "exp(0.2*s)*sin(s)", 0.0, 3.0 * kPi);
}

PlaneCurve ellipse_curve() { return PlaneCurve::parametric("2*cos(s)", "sin(s)", 0.0, 2.0 * kPi); }

bool message_contains(const Error& e, const std::string& needle) {
    return std::string(e.what()).find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("circle pair classification matches the exact geometry") {
    CHECK(circles_nested(make_circle(0, 0, 1), make_circle(0.2, 0, 1.5)) == CirclePair::Nested);
    CHECK(circles_nested(make_circle(0, 0, 1), make_circle(3, 0, 1)) == CirclePair::DisjointOutside);
    CHECK(circles_nested(make_circle(0, 0, 1), make_circle(1, 0, 1)) == CirclePair::Intersecting);
    CHECK(circles_nested(make_circle(0.5, -0.25, 2), make_circle(0.5, -0.25, 2)) == CirclePair::Equal);

    // Internal tangency sits on the nested/intersecting boundary: beyond the
    // 1e-12 tolerance it counts as intersecting, not nested.
    CHECK(circles_nested(make_circle(0, 0, 2), make_circle(1, 0, 1)) == CirclePair::Intersecting);
    CHECK(circles_nested(make_circle(0, 0, 2), make_circle(1.0 - 1e-9, 0, 1)) == CirclePair::Nested);

    CHECK_THROWS_AS((void)circles_nested(make_circle(0, 0, -1), make_circle(0, 0, 1)),
                    NonpositiveRadius);
}

TEST_CASE("osculating circles of the logarithmic spiral are pairwise nested") {
    VerificationReport rep = verify_circle_family(log_spiral(), 0.0, 3.0 * kPi, 48);
    CHECK(rep.verdict == Verdict::Disjoint);
    CHECK(rep.family == "circle");
    CHECK(rep.pairs.size() == 48u * 47u / 2u);
    for (const PairResult& pr : rep.pairs) {
        CHECK(pr.verdict == Verdict::Nested);
        CHECK(pr.min_gap > 0.0);
    }
    // pairs come out sorted by (a, b)
    for (std::size_t i = 1; i < rep.pairs.size(); ++i) {
        const PairResult &p = rep.pairs[i - 1], &q = rep.pairs[i];
        CHECK((p.a < q.a || (p.a == q.a && p.b < q.b)));
    }
}

TEST_CASE("osculating circles on a vertex-free ellipse arc are nested") {
    VerificationReport rep = verify_circle_family(ellipse_curve(), 0.1, 1.4, 24);
    CHECK(rep.verdict == Verdict::Disjoint);
    for (const PairResult& pr : rep.pairs) CHECK(pr.verdict == Verdict::Nested);
}

TEST_CASE("a vertex inside the interval is a precondition failure") {
    try {
        (void)verify_circle_family(ellipse_curve(), -0.5, 0.5, 8);
        FAIL("expected PreconditionError");
    } catch (const PreconditionError& e) {
        CHECK(message_contains(e, "vertex at s="));
    }
}

TEST_CASE("a circle input makes the family constant") {
    PlaneCurve circ = PlaneCurve::parametric("cos(s)", "sin(s)", 0.0, 2.0 * kPi);
    VerificationReport rep = verify_circle_family(circ, 0.2, 2.0, 8);
    CHECK(rep.verdict == Verdict::EqualFamily);
}

TEST_CASE("curvature zero inside the interval is rejected") {
    // y = x^3 has an inflection at x = 0.
    PlaneCurve cubic = PlaneCurve::graph("x^3", -1.0, 1.0);
    try {
        (void)verify_circle_family(cubic, -0.5, 0.5, 8);
        FAIL("expected PreconditionError");
    } catch (const PreconditionError& e) {
        CHECK(message_contains(e, "curvature vanishes at s="));
    }
}

TEST_CASE("family maps pass through their tangency point") {
    const double s = 0.7;

    FamilyMap circ = FamilyMap::circle_family(log_spiral());
    Point p = circ.eval(s, circ.tangency_t(s));
    Point g = log_spiral().at(s);
    CHECK(std::hypot(p.x - g.x, p.y - g.y) < 1e-9);

    PlaneCurve expg = PlaneCurve::graph("exp(x)", -1.0, 1.0);
    FamilyMap con = FamilyMap::conic_family(expg);
    p = con.eval(s, con.tangency_t(s));
    g = expg.at(s);
    CHECK(std::hypot(p.x - g.x, p.y - g.y) < 1e-6);

    Expr f = parse("x^3");
    FamilyMap gra = FamilyMap::graph_family(f, 2, -2.0, 2.0);
    p = gra.eval(s, gra.tangency_t(s));
    CHECK(p.x == doctest::Approx(s).epsilon(1e-12));
    CHECK(p.y == doctest::Approx(s * s * s).epsilon(1e-12));

    Expr e = parse("exp(x)");
    FamilyMap mob = FamilyMap::mobius_family(e, -4.0, 4.0);
    p = mob.eval(s, mob.tangency_t(s));
    CHECK(p.x == doctest::Approx(s).epsilon(1e-12));
    CHECK(p.y == doctest::Approx(std::exp(s)).epsilon(1e-9));
}

TEST_CASE("graph-family contact order at and off the tangency") {
    Expr f = parse("x^3");
    FamilyMap fam = FamilyMap::graph_family(f, 2, -2.0, 2.0);
    const double s = 0.5;

    Multiplicity at = infinitesimal_multiplicity(fam, s, s, 6);
    CHECK(at.order == 2);
    CHECK_FALSE(at.saturated);

    Multiplicity off = infinitesimal_multiplicity(fam, s, s + 0.7, 6);
    CHECK(off.order == 0);
}

TEST_CASE("circle-family contact order at the spiral tangency is 2") {
    FamilyMap fam = FamilyMap::circle_family(log_spiral());
    const double s = 2.0;
    const double t0 = fam.tangency_t(s);
    Multiplicity m = infinitesimal_multiplicity(fam, s, t0, 6);
    CHECK(m.order == 2);
    CHECK(infinitesimal_multiplicity(fam, s, t0 + 1.5, 6).order == 0);
}

TEST_CASE("conic-family contact order on the exponential graph is 4") {
    PlaneCurve expg = PlaneCurve::graph("exp(x)", -1.0, 1.0);
    FamilyMap fam = FamilyMap::conic_family(expg);
    const double s = 0.3;
    const double t0 = fam.tangency_t(s);
    Multiplicity m = infinitesimal_multiplicity(fam, s, t0, 6);
    CHECK(m.order == 4);
    CHECK_FALSE(m.saturated);
}

TEST_CASE("contact index of the conic family equals the degree bound") {
    PlaneCurve expg = PlaneCurve::graph("exp(x)", -1.0, 1.0);
    FamilyMap fam = FamilyMap::conic_family(expg);
    IndexResult r = infinitesimal_index(fam, 0.3, 512);
    CHECK(r.index == 4);
    CHECK(r.bound == 4);
    REQUIRE(r.dips.size() == 1);
    CHECK(r.dips[0].order == 4);
    CHECK(std::abs(r.dips[0].t - fam.tangency_t(0.3)) < 1e-6);
}

TEST_CASE("contact index of the graph family counts only the tangency") {
    Expr f = parse("x^3");
    FamilyMap fam = FamilyMap::graph_family(f, 2, -2.0, 2.0);
    IndexResult r = infinitesimal_index(fam, 0.5, 512);
    CHECK(r.index == 2);
    CHECK(r.bound == 4);
    REQUIRE(r.dips.size() == 1);
    CHECK(r.dips[0].order == 2);
    CHECK(std::abs(r.dips[0].t - 0.5) < 1e-6);
}

TEST_CASE("contact index of the circle family stays under the bound") {
    FamilyMap fam = FamilyMap::circle_family(log_spiral());
    IndexResult r = infinitesimal_index(fam, 2.0, 512);
    CHECK(r.index == 2);
    CHECK(r.bound == 4);
    REQUIRE(r.dips.size() == 1);
    CHECK(std::abs(r.dips[0].t - fam.tangency_t(2.0)) < 1e-4);
}

TEST_CASE("Jacobian vanishing order matches the coefficient-path derivative") {
    // The Jacobian of the sweep equals (d f_s / ds)(Gamma_s(t)) times a
    // nowhere-vanishing factor, so both sides must vanish to the same order
    // in t at the tangency.
    PlaneCurve expg = PlaneCurve::graph("exp(x)", -1.0, 1.0);
    FamilyMap fam = FamilyMap::conic_family(expg);
    const double s = 0.3, h = 1e-4;
    const double t0 = fam.tangency_t(s);

    AlgebraicCurve mid = osculating_algebraic_curve(expg, s, 2);
    AlgebraicCurve up = osculating_algebraic_curve(expg, s + h, 2);
    AlgebraicCurve dn = osculating_algebraic_curve(expg, s - h, 2);
    auto align = [&](AlgebraicCurve& c) {
        double dot = 0.0;
        for (std::size_t i = 0; i < c.coeffs.size(); ++i) dot += c.coeffs[i] * mid.coeffs[i];
        if (dot < 0.0)
            for (double& v : c.coeffs) v = -v;
    };
    align(up);
    align(dn);
    AlgebraicCurve dpath;
    dpath.degree = 2;
    dpath.coeffs.resize(6);
    for (std::size_t i = 0; i < 6; ++i) dpath.coeffs[i] = (up.coeffs[i] - dn.coeffs[i]) / (2.0 * h);

    const int K = 6;
    auto [jx, jy] = fam.eval_t_jets(s, t0, K);
    Jet along = dpath.eval_jet(jx, jy);
    double scale = 0.0;
    for (int i = 0; i <= K; ++i) scale = std::max(scale, std::abs(along.coeff(i)));
    int first = K;
    for (int i = 0; i <= K; ++i)
        if (std::abs(along.coeff(i)) > 1e-6 * scale) {
            first = i;
            break;
        }
    CHECK(first == 4);
    CHECK(infinitesimal_multiplicity(fam, s, t0, K).order == first);
}

TEST_CASE("concentric circle polylines are disjoint") {
    AlgebraicCurve unit = make_conic(-1, 0, 0, 1, 0, 1);
    OvalTrace tr = trace_oval(unit, {1.0, 0.0});
    AlgebraicCurve big = make_conic(-4, 0, 0, 1, 0, 1);
    OvalCheck chk = oval_vs_curve(tr, big);
    CHECK(chk.verdict == Verdict::Disjoint);
    CHECK_FALSE(chk.witness.has_value());
}

TEST_CASE("overlapping circles intersect with a located witness") {
    AlgebraicCurve unit = make_conic(-1, 0, 0, 1, 0, 1);
    OvalTrace tr = trace_oval(unit, {1.0, 0.0});
    AlgebraicCurve shifted = make_conic(0, -2, 0, 1, 0, 1);  // x^2 + y^2 - 2x
    OvalCheck chk = oval_vs_curve(tr, shifted);
    CHECK(chk.verdict == Verdict::Intersecting);
    REQUIRE(chk.witness.has_value());
    CHECK(chk.witness->x == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(std::abs(chk.witness->y) == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-6));
    // the witness lies on both circles
    CHECK(std::abs(unit.eval(chk.witness->x, chk.witness->y)) < 1e-8);
    CHECK(std::abs(shifted.eval(chk.witness->x, chk.witness->y)) < 1e-8);
}

TEST_CASE("values inside the tolerance band are inconclusive") {
    AlgebraicCurve unit = make_conic(-1, 0, 0, 1, 0, 1);
    OvalTrace tr = trace_oval(unit, {1.0, 0.0});
    AlgebraicCurve nudged = make_conic(-(1.0 + 1e-7), 0, 0, 1, 0, 1);
    CHECK_THROWS_AS((void)oval_vs_curve(tr, nudged), InconclusiveError);
}

TEST_CASE("nearby lower ovals of the astroid quartics intersect") {
    PlaneCurve astroid = PlaneCurve::parametric("cos(s)^3", "sin(s)^3", 0.15, 1.42);
    AlgebraicCurve qa = osculating_algebraic_curve(astroid, 0.6, 4);
    AlgebraicCurve qb = osculating_algebraic_curve(astroid, 0.7, 4);

    // seed on the lower oval: the quartic osculates the astroid at s, so the
    // tangency point itself seeds its oval.
    OvalTrace ta = trace_oval(qa, astroid.at(0.6));
    OvalCheck chk = oval_vs_curve(ta, qb);
    CHECK(chk.verdict == Verdict::Intersecting);
    REQUIRE(chk.witness.has_value());
    CHECK(std::abs(qa.eval(chk.witness->x, chk.witness->y)) < 1e-6);
    CHECK(std::abs(qb.eval(chk.witness->x, chk.witness->y)) < 1e-6);
}

TEST_CASE("hyperbola family of the exponential is disjoint over the window") {
    Expr f = parse("exp(x)");
    VerificationReport rep = verify_mobius_family(f, 0.0, 1.0, -4.0, 4.0, 16);
    CHECK(rep.verdict == Verdict::Disjoint);
    CHECK(rep.family == "mobius");
    CHECK(rep.pairs.size() == 16u * 15u / 2u);
    for (const PairResult& pr : rep.pairs) {
        CHECK(pr.verdict == Verdict::Disjoint);
        CHECK(pr.min_gap > 0.0);
    }
}

TEST_CASE("hyperbola family of the tangent function is disjoint") {
    Expr f = parse("tan(x)");
    VerificationReport rep = verify_mobius_family(f, 0.1, 0.6, -1.0, 1.0, 12);
    CHECK(rep.verdict == Verdict::Disjoint);
}

TEST_CASE("a fractional-linear source collapses the family") {
    Expr f = parse("(2*x+1)/(x+3)");
    VerificationReport rep = verify_mobius_family(f, -1.0, 1.0, -2.0, 2.0, 6);
    CHECK(rep.verdict == Verdict::EqualFamily);
    CHECK(rep.pairs.size() == 6u * 5u / 2u);
    for (const PairResult& pr : rep.pairs) {
        CHECK(pr.verdict == Verdict::EqualFamily);
        CHECK(pr.min_gap == 0.0);
    }
}

TEST_CASE("a Schwarzian zero in the interval is a precondition failure") {
    // S(x) = (6 - 36 x^2) / (3 x^2 + 1)^2 vanishes at x = 1/sqrt(6) ~ 0.408.
    Expr f = parse("x^3+x");
    try {
        (void)verify_mobius_family(f, 0.3, 0.5, -2.0, 2.0, 8);
        FAIL("expected PreconditionError");
    } catch (const PreconditionError& e) {
        CHECK(message_contains(e, "Schwarzian zero at t="));
    }
}

TEST_CASE("envelope contact order for conics is 4") {
    PlaneCurve expg = PlaneCurve::graph("exp(x)", -1.0, 1.0);
    VerificationReport rep = envelope_multiplicity_check(expg, 0.0, 2);
    CHECK(rep.verdict == Verdict::Disjoint);
    REQUIRE(rep.multiplicities.size() == 1);
    CHECK(rep.multiplicities[0].order == 4);
    CHECK(rep.bound == 4);
}

TEST_CASE("envelope contact order for tangent lines is 1") {
    PlaneCurve sing = PlaneCurve::graph("sin(x)", 0.0, 1.0);
    VerificationReport rep = envelope_multiplicity_check(sing, 0.4, 1);
    CHECK(rep.verdict == Verdict::Disjoint);
    REQUIRE(rep.multiplicities.size() == 1);
    CHECK(rep.multiplicities[0].order == 1);
    CHECK(rep.bound == 1);
}

TEST_CASE("an algebraic input of matching degree has a constant family") {
    PlaneCurve circ = PlaneCurve::parametric("cos(s)", "sin(s)", 0.0, 2.0 * kPi);
    try {
        (void)envelope_multiplicity_check(circ, 1.0, 2);
        FAIL("expected PreconditionError");
    } catch (const PreconditionError& e) {
        CHECK(message_contains(e, "family is constant"));
    }
}

TEST_CASE("verification reports serialize with the fixed key set") {
    VerificationReport rep = verify_circle_family(ellipse_curve(), 0.1, 1.4, 6);
    nlohmann::json j = rep.to_json();
    for (const char* key : {"family", "theorem", "params", "pairs", "multiplicities", "index",
                            "bound", "verdict", "grid", "notes"})
        CHECK(j.contains(key));
    CHECK(j["verdict"] == "disjoint");
    CHECK(j["family"] == "circle");
}

TEST_CASE("osculating conics of an exponential graph nest") {
    PlaneCurve expg = PlaneCurve::graph("exp(x)", -1.0, 2.0);
    VerificationReport rep = verify_conic_family(expg, 0.0, 1.0, 16);
    CHECK(rep.verdict == Verdict::Disjoint);
    REQUIRE(rep.pairs.size() == 16u * 15u / 2u);
    for (const PairResult& pr : rep.pairs) CHECK(pr.verdict == Verdict::Disjoint);
    bool swept = false;
    for (const std::string& n : rep.notes) swept |= n.find("one-sided sweep certified") != std::string::npos;
    CHECK(swept);
}

TEST_CASE("a conic input collapses the conic family") {
    PlaneCurve ell = PlaneCurve::parametric("2*cos(s)", "sin(s)", -0.5, 6.3);
    VerificationReport rep = verify_conic_family(ell, 0.0, 1.0, 6);
    CHECK(rep.verdict == Verdict::EqualFamily);
    CHECK(rep.pairs.size() == 15u);
    for (const PairResult& pr : rep.pairs) CHECK(pr.verdict == Verdict::EqualFamily);

    PlaneCurve par = PlaneCurve::graph("x^2", -1.0, 1.0);
    CHECK(verify_conic_family(par, -0.5, 0.5, 6).verdict == Verdict::EqualFamily);
}

TEST_CASE("a sextactic point in the interval is a precondition failure") {
    // sin is odd about x = pi, so the conic contact order jumps there.
    PlaneCurve sing = PlaneCurve::graph("sin(x)", 0.5, 6.0);
    try {
        (void)verify_conic_family(sing, 2.9, 3.3, 8);
        FAIL("expected PreconditionError");
    } catch (const PreconditionError& e) {
        CHECK(message_contains(e, "extactic point at s="));
    }
}

TEST_CASE("osculating cubic ovals of a spiral arc nest") {
    PlaneCurve spiral =
        PlaneCurve::parametric("exp(0.2*s)*cos(s)", "exp(0.2*s)*sin(s)", -1.0, 11.0);
    VerificationReport rep = verify_cubic_ovals(spiral, 1.0, 4.0, 8);
    CHECK(rep.verdict == Verdict::Disjoint);
    REQUIRE(rep.pairs.size() == 28u);
    for (const PairResult& pr : rep.pairs) CHECK(pr.verdict == Verdict::Disjoint);
    bool certified = false;
    for (const std::string& n : rep.notes) certified |= n.find("arc-contact certified") != std::string::npos;
    CHECK(certified);
}

TEST_CASE("a wide cubic arc detects the extra branch crossing") {
    // Far-apart members' unbounded branches cut through nearby ovals; the
    // verifier must report the crossings rather than certify.
    PlaneCurve spiral =
        PlaneCurve::parametric("exp(0.2*s)*cos(s)", "exp(0.2*s)*sin(s)", -1.0, 11.0);
    VerificationReport rep = verify_cubic_ovals(spiral, 1.0, 9.0, 8);
    CHECK(rep.verdict == Verdict::Intersecting);
    int crossings = 0;
    for (const PairResult& pr : rep.pairs) crossings += pr.verdict == Verdict::Intersecting;
    CHECK(crossings > 0);
}

TEST_CASE("a cubic input collapses the cubic family") {
    PlaneCurve cub = PlaneCurve::graph("x^3", -1.0, 1.0);
    VerificationReport rep = verify_cubic_ovals(cub, 0.2, 0.8, 4);
    CHECK(rep.verdict == Verdict::EqualFamily);
    for (const PairResult& pr : rep.pairs) CHECK(pr.verdict == Verdict::EqualFamily);
    // at x = 0 the scaled jet maps y and x^3 to the same column: the
    // condition system degenerates and the verifier must refuse
    CHECK_THROWS_AS((void)verify_cubic_ovals(cub, -0.5, 0.5, 4), osc::RankDeficient);
}

TEST_CASE("a degenerate cubic window refuses to certify") {
    // Around the symmetry point of sin the cubic conditions lose rank; the
    // verifier must throw rather than certify.
    PlaneCurve sing = PlaneCurve::graph("sin(x)", 0.5, 6.0);
    CHECK_THROWS_AS((void)verify_cubic_ovals(sing, 2.9, 3.3, 8), osc::Error);
}
