// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "osc/algebraic.hpp"

using osc::AlgebraicCurve;
using osc::PlaneCurve;
using osc::Point;

namespace {

// |cos| of the angle between coefficient vectors; 1 means same curve
double vec_alignment(const std::vector<double>& a, const std::vector<double>& b) {
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    return std::abs(dot) / std::sqrt(na * nb);
}

AlgebraicCurve make_curve(int degree, std::vector<double> coeffs) {
    AlgebraicCurve c;
    c.degree = degree;
    c.coeffs = std::move(coeffs);
    return c;
}

}  // namespace

TEST_CASE("monomial layout") {
    CHECK(osc::mono_index(0, 0) == 0);
    CHECK(osc::mono_index(1, 0) == 1);
    CHECK(osc::mono_index(0, 1) == 2);
    CHECK(osc::mono_index(2, 0) == 3);
    CHECK(osc::mono_index(1, 1) == 4);
    CHECK(osc::mono_index(0, 2) == 5);
    CHECK(osc::mono_index(4, 0) == 10);
    CHECK(osc::mono_index(0, 4) == 14);
    auto ms = osc::monomials_up_to(2);
    REQUIRE(ms.size() == 6);
    CHECK(ms[3] == std::pair<int, int>{2, 0});
    CHECK(ms[4] == std::pair<int, int>{1, 1});
    CHECK(AlgebraicCurve::condition_count(2) == 5);
    CHECK(AlgebraicCurve::condition_count(3) == 9);
    CHECK(AlgebraicCurve::condition_count(4) == 14);
    CHECK(AlgebraicCurve::coeff_count(4) == 15);
}

TEST_CASE("polynomial evaluation and gradient") {
    // x^2/4 + y^2 - 1
    AlgebraicCurve e = make_curve(2, {-1.0, 0.0, 0.0, 0.25, 0.0, 1.0});
    CHECK(e.eval(2.0, 0.0) == doctest::Approx(0.0));
    CHECK(e.eval(0.0, 1.0) == doctest::Approx(0.0));
    CHECK(e.eval(0.0, 0.0) == doctest::Approx(-1.0));
    auto [gx, gy] = e.gradient(2.0, 0.0);
    CHECK(gx == doctest::Approx(1.0));
    CHECK(gy == doctest::Approx(0.0));

    AlgebraicCurve n = e;
    n.normalize();
    double norm = 0.0;
    for (double c : n.coeffs) norm += c * c;
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(n.coeffs[0] > 0.0);  // first nonzero positive flips the sign
}

TEST_CASE("conic self-osculation") {
    PlaneCurve circle = PlaneCurve::parametric("cos(s)", "sin(s)", 0.0, 6.3);
    AlgebraicCurve c = osc::osculating_algebraic_curve(circle, 0.0, 2);
    // 1 - x^2 - y^2 normalized
    std::vector<double> want = {1.0, 0.0, 0.0, -1.0, 0.0, -1.0};
    CHECK(vec_alignment(c.coeffs, want) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(c.coeffs[0] > 0.0);

    PlaneCurve ellipse = PlaneCurve::parametric("2*cos(s)", "sin(s)", 0.0, 6.3);
    AlgebraicCurve ce = osc::osculating_algebraic_curve(ellipse, 0.3, 2);
    std::vector<double> wante = {-1.0, 0.0, 0.0, 0.25, 0.0, 1.0};
    CHECK(vec_alignment(ce.coeffs, wante) == doctest::Approx(1.0).epsilon(1e-8));

    // self-osculation holds at every parameter
    for (double s : {0.9, 2.0, 4.4}) {
        AlgebraicCurve cs = osc::osculating_algebraic_curve(ellipse, s, 2);
        CHECK(vec_alignment(cs.coeffs, wante) == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("graph parabola and cubic self-osculation") {
    PlaneCurve par = PlaneCurve::parametric("s", "s^2", -2.0, 2.0);
    AlgebraicCurve c = osc::osculating_algebraic_curve(par, 0.0, 2);
    std::vector<double> want = {0.0, 0.0, 1.0, -1.0, 0.0, 0.0};  // y - x^2
    CHECK(vec_alignment(c.coeffs, want) == doctest::Approx(1.0).epsilon(1e-8));

    PlaneCurve cub = PlaneCurve::parametric("s", "s^3", 0.5, 1.5);
    AlgebraicCurve c3 = osc::osculating_algebraic_curve(cub, 1.0, 3);
    std::vector<double> want3(10, 0.0);
    want3[osc::mono_index(0, 1)] = 1.0;   // y
    want3[osc::mono_index(3, 0)] = -1.0;  // -x^3
    CHECK(vec_alignment(c3.coeffs, want3) == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("rank deficiency when the true degree is lower") {
    // a circle admits no unique degree-3 osculant: the cubic conditions are
    // rank-deficient (circle * any line through enough contact)
    PlaneCurve circle = PlaneCurve::parametric("cos(s)", "sin(s)", 0.0, 6.3);
    CHECK_THROWS_AS(osc::osculating_algebraic_curve(circle, 0.4, 3), osc::RankDeficient);
}

TEST_CASE("astroid quartic osculant vanishes to full order") {
    PlaneCurve ast = PlaneCurve::parametric("cos(s)^3", "sin(s)^3", 0.15, 1.42);
    const double s = 0.7;
    AlgebraicCurve q = osc::osculating_algebraic_curve(ast, s, 4);
    CHECK(q.degree == 4);
    // compose the quartic with the curve and inspect the jet at s
    auto [jx, jy] = ast.jets(s, 13);
    osc::Jet composed = q.eval_jet(jx, jy);
    for (int j = 0; j <= 13; ++j) CHECK(std::abs(composed.coeff(j)) <= 1e-6);
    // the astroid itself is the quartic-like sextic, not degree 4, so the
    // osculant is a genuine approximation: the next order does not vanish
    auto [jx2, jy2] = ast.jets(s, 14);
    osc::Jet composed2 = q.eval_jet(jx2, jy2);
    CHECK(std::abs(composed2.coeff(14)) > 1e-6);
}

TEST_CASE("condition matrix shapes and trivial cases") {
    PlaneCurve circle = PlaneCurve::parametric("cos(s)", "sin(s)", 0.0, 6.3);
    osc::Mat empty = osc::condition_matrix(circle, 0.0, 2, 0);
    CHECK(empty.rows == 0);
    CHECK(empty.cols == 6);

    osc::Mat m = osc::condition_matrix(circle, 0.0, 2, 5);
    CHECK(m.rows == 5);
    CHECK(m.cols == 6);
    // the shifted circle (X+1)^2 + Y^2 - 1 = X^2 + Y^2 + 2X lies in the kernel
    std::vector<double> v = {0.0, 2.0, 0.0, 1.0, 0.0, 1.0};
    for (int r = 0; r < 5; ++r) {
        double acc = 0.0;
        for (int c = 0; c < 6; ++c) acc += m(r, c) * v[static_cast<std::size_t>(c)];
        CHECK(std::abs(acc) <= 1e-10);
    }
}

TEST_CASE("extactic indicator") {
    PlaneCurve ellipse = PlaneCurve::parametric("2*cos(s)", "sin(s)", 0.0, 6.3);
    for (double s : {0.3, 1.1, 2.9}) CHECK(std::abs(osc::extactic_indicator(ellipse, s, 2)) <= 1e-9);

    PlaneCurve expg = PlaneCurve::graph("exp(x)", -1.0, 1.0);
    CHECK(std::abs(osc::extactic_indicator(expg, 0.0, 1)) > 1e-4);

    PlaneCurve sing = PlaneCurve::graph("sin(x)", 0.5, 6.0);
    auto pts = osc::find_extactic_points(sing, 2.9, 3.3, 1);
    REQUIRE(pts.roots.size() == 1);
    CHECK(pts.roots[0].t == doctest::Approx(M_PI).epsilon(1e-8));
}

TEST_CASE("conic classification") {
    CHECK(osc::classify_conic(make_curve(2, {-1, 0, 0, 0.25, 0, 1})) == osc::ConicClass::Ellipse);
    CHECK(osc::classify_conic(make_curve(2, {-1, 0, 0, 0, 1, 0})) == osc::ConicClass::Hyperbola);
    CHECK(osc::classify_conic(make_curve(2, {0, 0, -1, 1, 0, 0})) == osc::ConicClass::Parabola);
    // product of two lines x*y = 0 with no constant: degenerate
    CHECK(osc::classify_conic(make_curve(2, {0, 0, 0, 0, 1, 0})) == osc::ConicClass::Degenerate);
}

TEST_CASE("osculating circle closed forms") {
    PlaneCurve ellipse = PlaneCurve::parametric("2*cos(s)", "sin(s)", -0.5, 6.3);
    auto c = osc::osculating_circle(ellipse, 0.0);
    CHECK(c.center.x == doctest::Approx(1.5).epsilon(1e-10));
    CHECK(c.center.y == doctest::Approx(0.0));
    CHECK(c.radius == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(c.curvature == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(c.radius * std::abs(c.curvature) == doctest::Approx(1.0).epsilon(1e-10));

    PlaneCurve circle = PlaneCurve::parametric("cos(s)", "sin(s)", 0.0, 6.3);
    auto cc = osc::osculating_circle(circle, 1.234);
    CHECK(cc.center.x == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(cc.center.y == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(cc.radius == doctest::Approx(1.0));

    PlaneCurve parab = PlaneCurve::graph("x^2", -1.0, 1.0);
    auto cp = osc::osculating_circle(parab, 0.0);
    CHECK(cp.curvature == doctest::Approx(2.0));
    CHECK(cp.center.x == doctest::Approx(0.0));
    CHECK(cp.center.y == doctest::Approx(0.5));

    PlaneCurve line = PlaneCurve::graph("2*x+1", -1.0, 1.0);
    CHECK_THROWS_AS(osc::osculating_circle(line, 0.0), osc::ZeroCurvature);
}

TEST_CASE("circle agrees with the constrained algebraic subfamily") {
    // solve the 3-condition system over the basis {x^2 + y^2, x, y, 1}
    PlaneCurve ellipse = PlaneCurve::parametric("2*cos(s)", "sin(s)", 0.0, 6.3);
    const double s = 0.3;
    osc::Mat full = osc::condition_matrix(ellipse, s, 2, 3);
    osc::Mat m(3, 4);
    for (int r = 0; r < 3; ++r) {
        m(r, 0) = full(r, 3) + full(r, 5);  // x^2 + y^2
        m(r, 1) = full(r, 1);               // x
        m(r, 2) = full(r, 2);               // y
        m(r, 3) = full(r, 0);               // 1
    }
    auto svd = osc::svd_jacobi(m);
    const int last = 3;
    const double A = svd.v(0, last), D = svd.v(1, last), E = svd.v(2, last), F = svd.v(3, last);
    REQUIRE(std::abs(A) > 1e-12);
    // A(X^2+Y^2) + DX + EY + F in scaled coordinates X=(x-cx)/sp, Y=(y-cy)/sp
    const auto [jx, jy] = ellipse.jets(s, 1);
    const double sp = std::hypot(jx.derivative(1), jy.derivative(1));
    const double ccx = -D / (2.0 * A) * sp + jx.value();
    const double ccy = -E / (2.0 * A) * sp + jy.value();
    const double r2 = (D * D + E * E) / (4.0 * A * A) - F / A;
    REQUIRE(r2 > 0.0);
    const double rr = std::sqrt(r2) * sp;

    auto oc = osc::osculating_circle(ellipse, s);
    CHECK(std::hypot(oc.center.x - ccx, oc.center.y - ccy) <= 1e-8);
    CHECK(std::abs(oc.radius - rr) <= 1e-8);
}

TEST_CASE("vertex detection") {
    PlaneCurve ellipse = PlaneCurve::parametric("2*cos(s)", "sin(s)", -1.0, 7.0);
    auto v = osc::find_vertices(ellipse, -0.1, 6.2);
    REQUIRE(v.roots.size() == 4);
    CHECK(v.roots[0].t == doctest::Approx(0.0).epsilon(1e-8));
    CHECK(v.roots[1].t == doctest::Approx(M_PI / 2).epsilon(1e-8));
    CHECK(v.roots[2].t == doctest::Approx(M_PI).epsilon(1e-8));
    CHECK(v.roots[3].t == doctest::Approx(3 * M_PI / 2).epsilon(1e-8));

    PlaneCurve circle = PlaneCurve::parametric("cos(s)", "sin(s)", 0.0, 6.3);
    auto vc = osc::find_vertices(circle, 0.0, 6.2);
    CHECK(vc.roots.empty());
    CHECK(vc.identically_zero);

    PlaneCurve spiral =
        PlaneCurve::parametric("exp(0.2*s)*cos(s)", "exp(0.2*s)*sin(s)", 0.0, 4.0 * M_PI);
    auto vs = osc::find_vertices(spiral, 0.0, 4.0 * M_PI);
    CHECK(vs.roots.empty());
    CHECK_FALSE(vs.identically_zero);
}

TEST_CASE("schwarzian derivative") {
    for (double t : {-1.0, 0.0, 2.0})
        CHECK(osc::schwarzian(osc::parse("exp(x)"), t) == doctest::Approx(-0.5).epsilon(1e-12));
    for (double t : {0.0, 1.0, 5.0})
        CHECK(std::abs(osc::schwarzian(osc::parse("(2*x+1)/(x+3)"), t)) <= 1e-12);
    CHECK(osc::schwarzian(osc::parse("tan(x)"), 0.5) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS(osc::schwarzian(osc::parse("x^2"), 0.0), osc::CriticalPoint);
}

TEST_CASE("mobius osculant closed form") {
    auto g = osc::osculating_mobius(osc::parse("exp(x)"), 0.0);
    CHECK_FALSE(g.line);
    CHECK(g.p == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(g.q == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK(g.c == doctest::Approx(-4.0).epsilon(1e-10));
    // matching conditions at t=0
    CHECK(g.eval(0.0) == doctest::Approx(1.0).epsilon(1e-10));
    const double h = 1e-5;
    CHECK((g.eval(h) - g.eval(-h)) / (2 * h) == doctest::Approx(1.0).epsilon(1e-7));
    CHECK((g.eval(h) - 2 * g.eval(0.0) + g.eval(-h)) / (h * h) == doctest::Approx(1.0).epsilon(1e-4));

    auto self = osc::osculating_mobius(osc::parse("1/x"), 2.0);
    CHECK(self.p == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(self.q == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(self.c == doctest::Approx(1.0).epsilon(1e-10));

    auto ln = osc::osculating_mobius(osc::parse("x"), 3.7);
    CHECK(ln.line);
    CHECK(ln.slope == doctest::Approx(1.0));
    CHECK(ln.intercept == doctest::Approx(0.0));
}

TEST_CASE("self-osculating fractional-linear map") {
    // f = (2x+1)/(x+3) = 2 - 5/(x+3): p=-3, q=2, c=-5
    auto g = osc::osculating_mobius(osc::parse("(2*x+1)/(x+3)"), 1.0);
    CHECK_FALSE(g.line);
    CHECK(g.p == doctest::Approx(-3.0).epsilon(1e-9));
    CHECK(g.q == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(g.c == doctest::Approx(-5.0).epsilon(1e-9));
}

TEST_CASE("schwarzian zero iff mobius matches the third derivative") {
    // nonzero case: exp
    {
        osc::Expr f = osc::parse("exp(x)");
        auto g = osc::osculating_mobius(f, 0.0);
        // third derivative of q + c/(x-p) is -6c/(x-p)^4
        const double third = -6.0 * g.c / std::pow(0.0 - g.p, 4);
        const double f3 = osc::derivative1(f, 0.0, 3);
        CHECK(std::abs(third - f3) > 1e-8);  // mismatch, schwarzian != 0
    }
    {
        osc::Expr f = osc::parse("(2*x+1)/(x+3)");
        auto g = osc::osculating_mobius(f, 1.0);
        const double third = -6.0 * g.c / std::pow(1.0 - g.p, 4);
        const double f3 = osc::derivative1(f, 1.0, 3);
        CHECK(std::abs(third - f3) <= 1e-8);  // schwarzian == 0
    }
}

TEST_CASE("affine pullback sanity for osculating conics") {
    // phi(x, y) = (1.2 x + 0.3 y + 0.5, -0.1 x + 0.8 y - 0.2)
    osc::Affine2 phi;
    phi.a11 = 1.2; phi.a12 = 0.3; phi.b1 = 0.5;
    phi.a21 = -0.1; phi.a22 = 0.8; phi.b2 = -0.2;

    PlaneCurve base = PlaneCurve::graph("exp(x)", -1.0, 1.0);
    // image curve as parametric expressions
    PlaneCurve image = PlaneCurve::parametric("1.2*s + 0.3*exp(s) + 0.5",
                                              "-0.1*s + 0.8*exp(s) - 0.2", -1.0, 1.0);
    const double s = 0.2;
    AlgebraicCurve c_base = osc::osculating_algebraic_curve(base, s, 2);
    AlgebraicCurve c_image = osc::osculating_algebraic_curve(image, s, 2);
    // pulling the image conic back through phi must reproduce the base conic
    AlgebraicCurve pulled = osc::pullback(c_image, phi);
    CHECK(vec_alignment(pulled.coeffs, c_base.coeffs) == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("oval tracing") {
    AlgebraicCurve circle = make_curve(2, {-1, 0, 0, 1, 0, 1});
    circle.normalize();
    auto trace = osc::trace_oval(circle, {1.0, 0.0});
    CHECK(trace.points.size() > 100);
    for (const Point& p : trace.points)
        CHECK(std::abs(std::hypot(p.x, p.y) - 1.0) <= 2e-3);

    // cubic with an oval: y^2 - x^3 + 3x - 0.5
    AlgebraicCurve cub = make_curve(3, {-0.5, 3, 0, 0, 0, 0, -1, 0, 0, 0});
    cub.coeffs[osc::mono_index(0, 2)] = 1.0;  // y^2
    cub.normalize();
    auto oval = osc::trace_oval(cub, {0.0, std::sqrt(0.5)});
    CHECK(oval.points.size() > 50);
    // all points on the oval have x in the left component's range
    for (const Point& p : oval.points) {
        CHECK(p.x >= -1.82);
        CHECK(p.x <= 0.17);
    }

    AlgebraicCurve par = make_curve(2, {0, 0, -1, 1, 0, 0});  // y = x^2
    par.normalize();
    CHECK_THROWS_AS(osc::trace_oval(par, {0.0, 0.0}), osc::OpenComponent);

    AlgebraicCurve empty = make_curve(2, {1, 0, 0, 1, 0, 1});  // x^2+y^2+1
    empty.normalize();
    CHECK_THROWS_AS(osc::trace_oval(empty, {1.0, 1.0}), osc::SeedOffCurve);
}

TEST_CASE("csv and json serialization") {
    AlgebraicCurve c = make_curve(2, {-1, 0, 0, 0.25, 0, 1});
    auto csv = c.to_csv();
    CHECK(csv.substr(0, 2) == "2,");
    CHECK(csv.find("0.25") != std::string::npos);
    auto j = c.to_json();
    CHECK(j["degree"] == 2);
    CHECK(j["coeffs"].size() == 6);
    CHECK(j["monomials"][3] == "xx");
    CHECK(j["monomials"][4] == "xy");
}
