// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "osc/taylor.hpp"

using osc::Expr;
using osc::TaylorOsculant;

TEST_CASE("quadratic osculant of a cubic") {
    Expr f = osc::parse("x^3");
    TaylorOsculant g = osc::osculating_polynomial(f, 1.0, 2);
    REQUIRE(g.local_coeffs.size() == 3);
    CHECK(g.local_coeffs[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(g.local_coeffs[1] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(g.local_coeffs[2] == doctest::Approx(3.0).epsilon(1e-12));
    // expanded form 3x^2 - 3x + 1
    auto mono = g.monomial_coeffs();
    CHECK(mono[0] == doctest::Approx(1.0));
    CHECK(mono[1] == doctest::Approx(-3.0));
    CHECK(mono[2] == doctest::Approx(3.0));

    TaylorOsculant g0 = osc::osculating_polynomial(f, 0.0, 2);
    for (double c : g0.local_coeffs) CHECK(c == doctest::Approx(0.0));

    TaylorOsculant e = osc::osculating_polynomial(osc::parse("exp(x)"), 0.0, 3);
    CHECK(e.local_coeffs[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(e.local_coeffs[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(e.local_coeffs[2] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(e.local_coeffs[3] == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("osculant matches source derivatives at the contact point") {
    Expr f = osc::parse("exp(0.2*x)*cos(x)");
    const double t = 0.7;
    const int n = 4;
    TaylorOsculant g = osc::osculating_polynomial(f, t, n);
    for (int j = 0; j <= n; ++j) {
        const double want = osc::derivative1(f, t, j);
        const double got = g.derivative(t, j);
        CHECK(got == doctest::Approx(want).epsilon(1e-11));
    }
}

TEST_CASE("tangency order: scaled residual stays bounded near contact") {
    Expr f = osc::parse("sin(x)");
    const double t = 0.5;
    const int n = 3;
    TaylorOsculant g = osc::osculating_polynomial(f, t, n);
    const double limit = std::abs(osc::derivative1(f, t, n + 1)) / 24.0;  // |f''''(t)|/(n+1)!
    for (int k = 3; k <= 12; ++k) {
        const double h = std::ldexp(1.0, -k);
        const double x = t + h;
        const double resid = (g(x) - osc::eval_real1(f, x)) / std::pow(h, n + 1);
        CHECK(std::abs(resid) <= 2.0 * limit + 1e-6);
    }
}

TEST_CASE("family derivative closed form") {
    Expr f3 = osc::parse("x^3");
    CHECK(osc::family_derivative(f3, 1.0, 2, 2.0) == doctest::Approx(3.0));
    CHECK(osc::family_derivative(f3, 1.0, 2, 1.0) == doctest::Approx(0.0));
    Expr f4 = osc::parse("x^4");
    CHECK(osc::family_derivative(f4, 1.0, 3, 0.0) == doctest::Approx(-4.0));
}

TEST_CASE("family derivative matches finite differences in t") {
    Expr f = osc::parse("exp(x)");
    const int n = 2;
    for (double t : {0.2, 0.9}) {
        for (double x : {1.7, -0.8}) {
            const double h = 1e-4;
            auto g_at = [&](double tt) { return osc::osculating_polynomial(f, tt, n)(x); };
            const double fd = (g_at(t + h) - g_at(t - h)) / (2 * h);
            const double closed = osc::family_derivative(f, t, n, x);
            CHECK(fd == doctest::Approx(closed).epsilon(1e-5));
        }
    }
}

TEST_CASE("vertex location for polynomial families") {
    auto v1 = osc::find_polynomial_vertices(osc::parse("x^4"), -1.0, 1.0, 2);
    REQUIRE(v1.roots.size() == 1);
    CHECK(v1.roots[0].t == doctest::Approx(0.0).epsilon(1e-9));

    auto v2 = osc::find_polynomial_vertices(osc::parse("x^3"), 0.1, 2.0, 2);
    CHECK(v2.roots.empty());
    CHECK_FALSE(v2.identically_zero);

    auto v3 = osc::find_polynomial_vertices(osc::parse("sin(x)"), 0.1, 6.2, 2);
    REQUIRE(v3.roots.size() == 2);
    CHECK(v3.roots[0].t == doctest::Approx(M_PI / 2).epsilon(1e-9));
    CHECK(v3.roots[1].t == doctest::Approx(3 * M_PI / 2).epsilon(1e-9));
}

TEST_CASE("even-degree family: graphs pairwise disjoint") {
    osc::DisjointGraphOptions opt;
    opt.window = {{-3.0, 3.0}};
    auto rep = osc::verify_disjoint_graphs(osc::parse("x^3"), 0.5, 1.5, 2, opt);
    CHECK(rep.verdict == osc::Verdict::Disjoint);
    CHECK(rep.family == "taylor");
    CHECK(rep.pairs.size() == 64 * 63 / 2);
    for (const auto& p : rep.pairs) {
        CHECK(p.verdict == osc::Verdict::Disjoint);
        CHECK(p.min_gap > 0.0);
    }
    // json shape
    auto j = rep.to_json();
    CHECK(j["verdict"] == "disjoint");
    CHECK(j["grid"]["t_samples"] == 64);
    CHECK(j["pairs"].is_array());
}

TEST_CASE("odd-degree family: disjoint right of the larger parameter") {
    osc::DisjointGraphOptions opt;
    opt.x_max = 3.0;
    auto rep = osc::verify_disjoint_graphs(osc::parse("x^4"), 0.25, 1.0, 3, opt);
    CHECK(rep.verdict == osc::Verdict::Disjoint);
    for (const auto& p : rep.pairs) CHECK(p.min_gap > 0.0);
}

TEST_CASE("vertex inside the interval is a precondition failure") {
    try {
        osc::verify_disjoint_graphs(osc::parse("x^4"), -1.0, 1.0, 2, {});
        FAIL("expected PreconditionError");
    } catch (const osc::PreconditionError& e) {
        CHECK(std::string(e.what()).find("vertex at t=") != std::string::npos);
        CHECK(e.exit_code() == 2);
    }
}

TEST_CASE("even-degree soundness: positive drive means increasing family") {
    // f''' = 6 > 0 for f = x^3, so g_a(x) < g_b(x) for a < b at every x
    Expr f = osc::parse("x^3");
    auto ga = osc::osculating_polynomial(f, 0.6, 2);
    auto gb = osc::osculating_polynomial(f, 1.2, 2);
    for (int i = 0; i <= 100; ++i) {
        const double x = -5.0 + 10.0 * i / 100.0;
        CHECK(ga(x) < gb(x));
    }
}
