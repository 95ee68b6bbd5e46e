// SPDX-License-Identifier: Apache-2.0
//
// Scene serialization, graph and implicit-contour plotting, and the six
// built-in figures: determinism, style, and agreement with the family
// verdicts of the objects they draw.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "osc/chebyshev.hpp"
#include "osc/render.hpp"
#include "osc/taitkneser.hpp"
#include "osc/taylor.hpp"

using namespace osc;

namespace {

constexpr double kPi = 3.14159265358979323846;

int count_occurrences(const std::string& hay, const std::string& needle) {
    int n = 0;
    for (std::size_t pos = hay.find(needle); pos != std::string::npos;
         pos = hay.find(needle, pos + needle.size()))
        ++n;
    return n;
}

std::string slurp(const std::string& path) {
    std::ifstream ifs(path, std::ios::binary);
    std::ostringstream ss;
    ss << ifs.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("graph sampling is exact at the sample points") {
    const Expr f = parse("x^3");
    auto paths = plot_graph(f, -2.0, 2.0, 5);
    REQUIRE(paths.size() == 1);
    REQUIRE(paths[0].size() == 5);
    const double xs[5] = {-2.0, -1.0, 0.0, 1.0, 2.0};
    const double ys[5] = {-8.0, -1.0, 0.0, 1.0, 8.0};
    for (int i = 0; i < 5; ++i) {
        CHECK(paths[0][static_cast<std::size_t>(i)].x == doctest::Approx(xs[i]).epsilon(1e-15));
        CHECK(paths[0][static_cast<std::size_t>(i)].y == doctest::Approx(ys[i]).epsilon(1e-15));
    }
}

TEST_CASE("a pole splits the graph into two subpaths") {
    const Expr f = parse("1/(x-2)");
    auto paths = plot_graph(f, 0.0, 4.0);
    REQUIRE(paths.size() == 2);
    // left branch ends before the pole, right branch starts after it
    CHECK(paths[0].back().x < 2.0);
    CHECK(paths[1].front().x > 2.0);
    for (const auto& path : paths)
        for (const Point& p : path) CHECK(std::abs(p.y) <= 20.0);
}

TEST_CASE("coarse sine sampling hits the zeros") {
    const Expr f = parse("sin(x)");
    auto paths = plot_graph(f, 0.0, 2.0 * kPi, 3);
    REQUIRE(paths.size() == 1);
    REQUIRE(paths[0].size() == 3);
    CHECK(paths[0][0].x == doctest::Approx(0.0));
    CHECK(paths[0][1].x == doctest::Approx(kPi).epsilon(1e-15));
    CHECK(paths[0][2].x == doctest::Approx(2.0 * kPi).epsilon(1e-15));
    for (const Point& p : paths[0]) CHECK(std::abs(p.y) <= 1e-12);
}

TEST_CASE("implicit contour of the unit circle is one accurate loop") {
    AlgebraicCurve c;
    c.degree = 2;
    c.coeffs = {-1.0, 0.0, 0.0, 1.0, 0.0, 1.0};  // x^2 + y^2 - 1
    auto chains = plot_implicit(c, -2.0, 2.0, -2.0, 2.0, 256);
    REQUIRE(chains.size() == 1);
    REQUIRE(chains[0].size() > 100);
    CHECK(chains[0].front().x == chains[0].back().x);
    CHECK(chains[0].front().y == chains[0].back().y);
    for (const Point& p : chains[0]) CHECK(std::abs(std::hypot(p.x, p.y) - 1.0) <= 4e-3);
}

TEST_CASE("implicit contour of a hyperbola gives two open branches") {
    AlgebraicCurve c;
    c.degree = 2;
    c.coeffs = {-1.0, 0.0, 0.0, 0.0, 1.0, 0.0};  // x y - 1
    auto chains = plot_implicit(c, -3.0, 3.0, -3.0, 3.0, 256);
    REQUIRE(chains.size() == 2);
    for (const auto& chain : chains) {
        const bool closed =
            chain.front().x == chain.back().x && chain.front().y == chain.back().y;
        CHECK(!closed);
        for (const Point& p : chain) CHECK(std::abs(p.x * p.y - 1.0) <= 1e-3);
    }
}

TEST_CASE("an empty real locus yields no contours") {
    AlgebraicCurve c;
    c.degree = 2;
    c.coeffs = {1.0, 0.0, 0.0, 1.0, 0.0, 1.0};  // x^2 + y^2 + 1
    CHECK(plot_implicit(c, -5.0, 5.0, -5.0, 5.0, 128).empty());
}

TEST_CASE("scene serialization is deterministic and styled") {
    const Scene a = build_figure(1);
    const Scene b = build_figure(1);
    const std::string sa = a.to_svg(), sb = b.to_svg();
    CHECK(sa == sb);
    CHECK(sa.rfind("<?xml", 0) == 0);
    CHECK(sa.find("</svg>") != std::string::npos);
    CHECK(count_occurrences(sa, "<path ") == 17);
    CHECK(count_occurrences(sa, "stroke-width=\"2\"") == 1);    // base curve
    CHECK(count_occurrences(sa, "stroke-width=\"0.6\"") == 16);  // family
}

TEST_CASE("markers render as dots and CSV separates subpaths") {
    Scene sc;
    sc.viewbox = {0.0, 1.0, 0.0, 1.0};
    sc.add_path({{0.0, 0.0}, {1.0, 1.0}}, 1.0, 0);
    sc.add_path({{0.25, 0.5}, {0.75, 0.5}}, 1.0, 1);
    sc.add_markers({{0.5, 0.5}}, 2);
    const std::string svg = sc.to_svg();
    CHECK(count_occurrences(svg, "<circle ") == 1);
    const std::string csv = sc.to_csv();
    CHECK(csv == "0,0\n1,1\n\n0.25,0.5\n0.75,0.5\n\n0.5,0.5\n");
}

TEST_CASE("every figure stays inside its viewbox contract") {
    for (int id = 1; id <= 6; ++id) {
        CAPTURE(id);
        const Scene sc = build_figure(id);
        CHECK(sc.viewbox.width() > 0.0);
        CHECK(sc.viewbox.height() > 0.0);
        const int family = static_cast<int>(sc.elements.size()) - 1;
        CHECK(family >= 12);
        CHECK(family <= 40);
        for (const SceneElement& el : sc.elements) {
            double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
            for (const auto& path : el.paths)
                for (const Point& p : path) {
                    xlo = std::min(xlo, p.x);
                    xhi = std::max(xhi, p.x);
                    ylo = std::min(ylo, p.y);
                    yhi = std::max(yhi, p.y);
                }
            // bounding box must intersect the viewbox
            CHECK(xlo <= sc.viewbox.xhi);
            CHECK(xhi >= sc.viewbox.xlo);
            CHECK(ylo <= sc.viewbox.yhi);
            CHECK(yhi >= sc.viewbox.ylo);
        }
    }
}

TEST_CASE("figure ids outside 1..6 are rejected") {
    CHECK_THROWS_AS((void)build_figure(0), osc::PreconditionError);
    CHECK_THROWS_AS((void)build_figure(7), osc::PreconditionError);
    CHECK_THROWS_AS((void)render_figure(7, "/tmp/never.svg"), osc::PreconditionError);
}

TEST_CASE("figure files round-trip byte-identically") {
    const std::string svg1 = "/tmp/osc_fig1_a.svg", svg2 = "/tmp/osc_fig1_b.svg";
    const std::string csv = "/tmp/osc_fig1.csv";
    render_figure(1, svg1, csv);
    render_figure(1, svg2);
    const std::string a = slurp(svg1), b = slurp(svg2);
    CHECK(!a.empty());
    CHECK(a == b);
    CHECK(a.rfind("<?xml", 0) == 0);
    const std::string c = slurp(csv);
    CHECK(c.find(',') != std::string::npos);
    CHECK(c.find("\n\n") != std::string::npos);
    std::remove(svg1.c_str());
    std::remove(svg2.c_str());
    std::remove(csv.c_str());
    CHECK_THROWS_AS((void)render_figure(1, "/nonexistent-dir/fig.svg"), osc::IOError);
}

TEST_CASE("the manifest is valid JSON describing all six figures") {
    const std::string text = figure_manifest();
    const nlohmann::json m = nlohmann::json::parse(text);
    CHECK(m.at("version").get<int>() == 1);
    REQUIRE(m.at("figures").size() == 6);
    for (int i = 0; i < 6; ++i) CHECK(m["figures"][static_cast<std::size_t>(i)].at("id") == i + 1);
    CHECK(figure_manifest() == text);
}

// The objects drawn in figures 1-5 must pass their family's disjointness
// verdict, and figure 6's must fail it: rendering and verification share one
// construction path, so these run the corresponding verifier with the
// manifest parameters.

TEST_CASE("figure 1 circles verify as nested") {
    PlaneCurve spiral =
        PlaneCurve::parametric("exp(0.2*s)*cos(s)", "exp(0.2*s)*sin(s)", 0.0, 3.0 * kPi);
    VerificationReport rep = verify_circle_family(spiral, 0.6, 3.0 * kPi - 0.6, 16);
    CHECK(rep.verdict == Verdict::Disjoint);
}

TEST_CASE("figure 2 parabolas verify as disjoint") {
    DisjointGraphOptions opts;
    opts.t_samples = 16;
    opts.window = {{-3.0, 3.0}};
    VerificationReport rep = verify_disjoint_graphs(parse("x^3"), 0.5, 1.5, 2, opts);
    CHECK(rep.verdict == Verdict::Disjoint);
}

TEST_CASE("figure 3 cubic graphs verify as disjoint") {
    DisjointGraphOptions opts;
    opts.t_samples = 16;
    opts.x_max = 3.0;
    VerificationReport rep = verify_disjoint_graphs(parse("x^4"), 0.25, 1.0, 3, opts);
    CHECK(rep.verdict == Verdict::Disjoint);
}

TEST_CASE("figure 4 trig osculants verify as disjoint") {
    ChebVerifyOptions opts;
    opts.t_samples = 16;
    VerificationReport rep =
        verify_disjoint_cheb(trig_basis(1), parse("x^3"), 0.5, 1.5, -kPi, kPi, opts);
    CHECK(rep.verdict == Verdict::Disjoint);
}

TEST_CASE("figure 5 cubic ovals verify as disjoint") {
    PlaneCurve spiral =
        PlaneCurve::parametric("exp(0.2*s)*cos(s)", "exp(0.2*s)*sin(s)", -1.0, 11.0);
    VerificationReport rep = verify_cubic_ovals(spiral, 1.0, 4.0, 12);
    CHECK(rep.verdict == Verdict::Disjoint);
}

TEST_CASE("figure 6 quartics verify as intersecting") {
    PlaneCurve astroid = PlaneCurve::parametric("cos(s)^3", "sin(s)^3", 0.15, 1.42);
    AlgebraicCurve qa = osculating_algebraic_curve(astroid, 0.6, 4);
    AlgebraicCurve qb = osculating_algebraic_curve(astroid, 0.7, 4);
    OvalTrace ta = trace_oval(qa, astroid.at(0.6));
    CHECK(oval_vs_curve(ta, qb).verdict == Verdict::Intersecting);
}
