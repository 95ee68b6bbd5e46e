// SPDX-License-Identifier: Apache-2.0
#include "osc/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "osc/chebyshev.hpp"
#include "osc/errors.hpp"
#include "osc/taylor.hpp"

namespace osc {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string num(double v, const char* fmt = "%.3f") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

struct Bbox {
    double xlo = std::numeric_limits<double>::infinity();
    double xhi = -std::numeric_limits<double>::infinity();
    double ylo = std::numeric_limits<double>::infinity();
    double yhi = -std::numeric_limits<double>::infinity();

    void add(const Point& p) {
        xlo = std::min(xlo, p.x);
        xhi = std::max(xhi, p.x);
        ylo = std::min(ylo, p.y);
        yhi = std::max(yhi, p.y);
    }
    bool empty() const { return !(xlo <= xhi); }
};

}  // namespace

const std::vector<std::string>& render_palette() {
    static const std::vector<std::string> palette = {
        "#1f3b73", "#c0392b", "#2e7d52", "#8e5ba6",
        "#d08a2e", "#357a9e", "#a64d4d", "#6b6b6b",
    };
    return palette;
}

void Scene::add_path(std::vector<Point> pts, double stroke, int color) {
    SceneElement el;
    el.paths.push_back(std::move(pts));
    el.stroke = stroke;
    el.color = color;
    elements.push_back(std::move(el));
}

void Scene::add_paths(std::vector<std::vector<Point>> pts, double stroke, int color) {
    SceneElement el;
    el.paths = std::move(pts);
    el.stroke = stroke;
    el.color = color;
    elements.push_back(std::move(el));
}

void Scene::add_markers(std::vector<Point> pts, int color) {
    SceneElement el;
    el.paths.push_back(std::move(pts));
    el.stroke = 0.0;
    el.color = color;
    el.marker = true;
    elements.push_back(std::move(el));
}

void Scene::fit_viewbox(double pad) {
    Bbox box;
    for (const SceneElement& el : elements)
        for (const std::vector<Point>& path : el.paths)
            for (const Point& p : path) box.add(p);
    if (box.empty()) return;
    double px = pad * (box.xhi - box.xlo), py = pad * (box.yhi - box.ylo);
    if (px == 0.0) px = 1.0;
    if (py == 0.0) py = 1.0;
    viewbox = {box.xlo - px, box.xhi + px, box.ylo - py, box.yhi + py};
}

std::string Scene::to_svg(int width_px) const {
    if (!(viewbox.width() > 0.0) || !(viewbox.height() > 0.0))
        throw PreconditionError("viewbox must have positive width and height");
    const double scale = width_px / viewbox.width();
    const int height_px = std::max(1, static_cast<int>(std::lround(viewbox.height() * scale)));
    const auto& palette = render_palette();

    auto X = [&](double x) { return (x - viewbox.xlo) * scale; };
    auto Y = [&](double y) { return (viewbox.yhi - y) * scale; };

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
           std::to_string(width_px) + "\" height=\"" + std::to_string(height_px) +
           "\" viewBox=\"0 0 " + std::to_string(width_px) + " " + std::to_string(height_px) +
           "\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(width_px) + "\" height=\"" +
           std::to_string(height_px) + "\" fill=\"#ffffff\"/>\n";
    for (const SceneElement& el : elements) {
        const std::string& color = palette[static_cast<std::size_t>(
            ((el.color % static_cast<int>(palette.size())) + static_cast<int>(palette.size())) %
            static_cast<int>(palette.size()))];
        if (el.marker) {
            for (const std::vector<Point>& path : el.paths)
                for (const Point& p : path)
                    svg += "<circle cx=\"" + num(X(p.x)) + "\" cy=\"" + num(Y(p.y)) +
                           "\" r=\"3\" fill=\"" + color + "\"/>\n";
            continue;
        }
        for (const std::vector<Point>& path : el.paths) {
            if (path.size() < 2) continue;
            std::string d = "M" + num(X(path[0].x)) + " " + num(Y(path[0].y));
            for (std::size_t i = 1; i < path.size(); ++i)
                d += " L" + num(X(path[i].x)) + " " + num(Y(path[i].y));
            svg += "<path d=\"" + d + "\" fill=\"none\" stroke=\"" + color +
                   "\" stroke-width=\"" + num(el.stroke, "%.6g") +
                   "\" stroke-linejoin=\"round\" stroke-linecap=\"round\"/>\n";
        }
    }
    svg += "</svg>\n";
    return svg;
}

std::string Scene::to_csv() const {
    std::string csv;
    bool first = true;
    for (const SceneElement& el : elements)
        for (const std::vector<Point>& path : el.paths) {
            if (!first) csv += "\n";
            first = false;
            for (const Point& p : path)
                csv += num(p.x, "%.9g") + "," + num(p.y, "%.9g") + "\n";
        }
    return csv;
}

std::vector<std::vector<Point>> plot_graph(const Expr& e, double lo, double hi, int samples,
                                           double ycut) {
    if (!(lo < hi)) throw PreconditionError("graph window requires lo < hi");
    if (samples < 2) throw PreconditionError("graph needs at least 2 samples");
    if (ycut <= 0.0) ycut = 10.0 * 0.5 * (hi - lo);

    std::vector<std::vector<Point>> paths;
    std::vector<Point> current;
    for (int i = 0; i < samples; ++i) {
        const double x = lo + (hi - lo) * i / (samples - 1);
        const double y = eval_real1(e, x);
        if (!std::isfinite(y) || std::abs(y) > ycut) {
            if (current.size() >= 2) paths.push_back(std::move(current));
            current.clear();
            continue;
        }
        current.push_back({x, y});
    }
    if (current.size() >= 2) paths.push_back(std::move(current));
    return paths;
}

namespace {

// ---------------------------------------------------------------------------
// Built-in figures.  All parameters live here and in figure_manifest(), which
// mirrors this table; bump kManifestVersion when changing any of them.
// ---------------------------------------------------------------------------

constexpr int kManifestVersion = 1;
constexpr int kFamilySamples = 16;    // figures 1-4
constexpr int kOvalSamples = 12;      // figures 5-6
constexpr int kGraphSamples = 600;
constexpr int kCirclePolygon = 256;
constexpr int kTraceGrid = 512;       // figure 5 oval tracing
constexpr int kImplicitGrid = 384;    // figure 6 contour resolution
constexpr double kBaseStroke = 2.0;
constexpr double kFamilyStroke = 0.6;

const char* kSpiralX = "exp(0.2*s)*cos(s)";
const char* kSpiralY = "exp(0.2*s)*sin(s)";
const char* kAstroidX = "cos(s)^3";
const char* kAstroidY = "sin(s)^3";

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    return out;
}

std::vector<Point> sample_curve(const PlaneCurve& curve, double lo, double hi, int n) {
    std::vector<Point> pts(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pts[static_cast<std::size_t>(i)] = curve.at(lo + (hi - lo) * i / (n - 1));
    return pts;
}

std::vector<Point> circle_polygon(const OsculatingCircle& c, int segments) {
    std::vector<Point> pts(static_cast<std::size_t>(segments) + 1);
    for (int k = 0; k <= segments; ++k) {
        const double th = 2.0 * kPi * k / segments;
        pts[static_cast<std::size_t>(k)] = {c.center.x + c.radius * std::cos(th),
                                            c.center.y + c.radius * std::sin(th)};
    }
    return pts;
}

/// Figure 1: a vertex-free spiral with a nested family of osculating circles.
Scene figure_spiral_circles() {
    Scene sc;
    PlaneCurve spiral = PlaneCurve::parametric(kSpiralX, kSpiralY, 0.0, 3.0 * kPi);
    sc.add_path(sample_curve(spiral, 0.0, 3.0 * kPi, kGraphSamples), kBaseStroke, 0);
    const std::vector<double> ts = linspace(0.6, 3.0 * kPi - 0.6, kFamilySamples);
    for (int i = 0; i < kFamilySamples; ++i) {
        const OsculatingCircle c = osculating_circle(spiral, ts[static_cast<std::size_t>(i)]);
        sc.add_path(circle_polygon(c, kCirclePolygon), kFamilyStroke, 1 + i);
    }
    sc.fit_viewbox();
    return sc;
}

/// Figures 2 and 3: a power graph with its degree-n polynomial osculants.
Scene figure_taylor(const char* fsrc, int n, double ilo, double ihi, double wlo, double whi) {
    Scene sc;
    const Expr f = parse(fsrc);
    sc.add_paths(plot_graph(f, wlo, whi, kGraphSamples, 1e18), kBaseStroke, 0);
    const std::vector<double> ts = linspace(ilo, ihi, kFamilySamples);
    for (int i = 0; i < kFamilySamples; ++i) {
        const TaylorOsculant g = osculating_polynomial(f, ts[static_cast<std::size_t>(i)], n);
        std::vector<Point> pts(static_cast<std::size_t>(kGraphSamples));
        for (int k = 0; k < kGraphSamples; ++k) {
            const double x = wlo + (whi - wlo) * k / (kGraphSamples - 1);
            pts[static_cast<std::size_t>(k)] = {x, g(x)};
        }
        sc.add_path(std::move(pts), kFamilyStroke, 1 + i);
    }
    sc.fit_viewbox();
    return sc;
}

/// Figure 4: a power graph with its first-order trigonometric osculants.
Scene figure_trig() {
    Scene sc;
    const Expr f = parse("x^3");
    const ChebSystem sys = trig_basis(1);
    sc.add_paths(plot_graph(f, -kPi, kPi, kGraphSamples, 1e18), kBaseStroke, 0);
    const std::vector<double> ts = linspace(0.5, 1.5, kFamilySamples);
    for (int i = 0; i < kFamilySamples; ++i) {
        const ChebOsculant g = osculating_element(sys, f, ts[static_cast<std::size_t>(i)]);
        std::vector<Point> pts(static_cast<std::size_t>(kGraphSamples));
        for (int k = 0; k < kGraphSamples; ++k) {
            const double x = -kPi + 2.0 * kPi * k / (kGraphSamples - 1);
            pts[static_cast<std::size_t>(k)] = {x, g(x)};
        }
        sc.add_path(std::move(pts), kFamilyStroke, 1 + i);
    }
    sc.fit_viewbox();
    return sc;
}

/// Figure 5: a spiral arc with the traced ovals of its osculating cubics.
Scene figure_spiral_cubics() {
    Scene sc;
    PlaneCurve spiral = PlaneCurve::parametric(kSpiralX, kSpiralY, -1.0, 11.0);
    sc.add_path(sample_curve(spiral, 0.2, 4.8, kGraphSamples), kBaseStroke, 0);
    const std::vector<double> ts = linspace(1.0, 4.0, kOvalSamples);
    for (int i = 0; i < kOvalSamples; ++i) {
        const double s = ts[static_cast<std::size_t>(i)];
        const AlgebraicCurve cubic = osculating_algebraic_curve(spiral, s, 3);
        OvalTrace oval = trace_oval(cubic, spiral.at(s), kTraceGrid);
        oval.points.push_back(oval.points.front());
        sc.add_path(std::move(oval.points), kFamilyStroke, 1 + i);
    }
    sc.fit_viewbox();
    return sc;
}

/// The four-cusped curve traced by (cos^3 s, sin^3 s) as a sextic polynomial:
/// (1 - x^2 - y^2)^3 - 27 x^2 y^2.
AlgebraicCurve astroid_sextic() {
    AlgebraicCurve c;
    c.degree = 6;
    c.coeffs.assign(monomials_up_to(6).size(), 0.0);
    const auto monos = monomials_up_to(6);
    auto set = [&](int a, int b, double v) {
        for (std::size_t m = 0; m < monos.size(); ++m)
            if (monos[m].first == a && monos[m].second == b) c.coeffs[m] = v;
    };
    set(0, 0, 1.0);
    set(2, 0, -3.0);
    set(0, 2, -3.0);
    set(4, 0, 3.0);
    set(2, 2, -21.0);  // 6 from the cube minus the 27 cross term
    set(0, 4, 3.0);
    set(6, 0, -1.0);
    set(4, 2, -3.0);
    set(2, 4, -3.0);
    set(0, 6, -1.0);
    return c;
}

/// Figure 6: the four-cusped curve with osculating quartics whose lower
/// ovals cross.  The family is built on a cusp-free parametric arc; the full
/// base curve is drawn from its implicit sextic form since the
/// parameterization is singular at the cusps.
Scene figure_astroid_quartics() {
    Scene sc;
    sc.viewbox = {-1.6, 1.6, -1.6, 1.6};
    sc.add_paths(plot_implicit(astroid_sextic(), sc.viewbox.xlo, sc.viewbox.xhi, sc.viewbox.ylo,
                               sc.viewbox.yhi, kImplicitGrid),
                 kBaseStroke, 0);
    PlaneCurve astroid = PlaneCurve::parametric(kAstroidX, kAstroidY, 0.15, 1.42);
    const std::vector<double> ts = linspace(0.45, 1.0, kOvalSamples);
    for (int i = 0; i < kOvalSamples; ++i) {
        const double s = ts[static_cast<std::size_t>(i)];
        const AlgebraicCurve quartic = osculating_algebraic_curve(astroid, s, 4);
        sc.add_paths(plot_implicit(quartic, sc.viewbox.xlo, sc.viewbox.xhi, sc.viewbox.ylo,
                                   sc.viewbox.yhi, kImplicitGrid),
                     kFamilyStroke, 1 + i);
    }
    return sc;
}

}  // namespace

Scene build_figure(int id) {
    switch (id) {
        case 1: return figure_spiral_circles();
        case 2: return figure_taylor("x^3", 2, 0.5, 1.5, -3.0, 3.0);
        case 3: return figure_taylor("x^4", 3, 0.25, 1.0, -2.0, 3.0);
        case 4: return figure_trig();
        case 5: return figure_spiral_cubics();
        case 6: return figure_astroid_quartics();
        default: throw PreconditionError("figure id must be between 1 and 6");
    }
}

std::string render_figure(int id, const std::string& out_path, const std::string& csv_path) {
    const Scene sc = build_figure(id);
    {
        std::ofstream ofs(out_path, std::ios::binary);
        if (!ofs) throw IOError("cannot open output file: " + out_path);
        ofs << sc.to_svg();
        if (!ofs) throw IOError("failed to write output file: " + out_path);
    }
    if (!csv_path.empty()) {
        std::ofstream ofs(csv_path, std::ios::binary);
        if (!ofs) throw IOError("cannot open output file: " + csv_path);
        ofs << sc.to_csv();
        if (!ofs) throw IOError("failed to write output file: " + csv_path);
    }
    return out_path;
}

std::string figure_manifest() {
    using nlohmann::json;
    json m;
    m["version"] = kManifestVersion;
    m["style"] = {{"base_stroke", kBaseStroke},
                  {"family_stroke", kFamilyStroke},
                  {"palette", render_palette()}};
    json figs = json::array();
    figs.push_back({{"id", 1},
                    {"name", "spiral-circles"},
                    {"curve", {{"kind", "parametric"}, {"x", kSpiralX}, {"y", kSpiralY},
                               {"domain", {0.0, 3.0 * kPi}}}},
                    {"family", {{"kind", "circle"}, {"interval", {0.6, 3.0 * kPi - 0.6}},
                                {"samples", kFamilySamples}, {"polygon", kCirclePolygon}}}});
    figs.push_back({{"id", 2},
                    {"name", "x3-taylor2"},
                    {"curve", {{"kind", "graph"}, {"f", "x^3"}, {"window", {-3.0, 3.0}}}},
                    {"family", {{"kind", "taylor"}, {"n", 2}, {"interval", {0.5, 1.5}},
                                {"samples", kFamilySamples}}}});
    figs.push_back({{"id", 3},
                    {"name", "x4-taylor3"},
                    {"curve", {{"kind", "graph"}, {"f", "x^4"}, {"window", {-2.0, 3.0}}}},
                    {"family", {{"kind", "taylor"}, {"n", 3}, {"interval", {0.25, 1.0}},
                                {"samples", kFamilySamples}}}});
    figs.push_back({{"id", 4},
                    {"name", "x3-trig1"},
                    {"curve", {{"kind", "graph"}, {"f", "x^3"}, {"window", {-kPi, kPi}}}},
                    {"family", {{"kind", "trig"}, {"n", 1}, {"interval", {0.5, 1.5}},
                                {"samples", kFamilySamples}}}});
    figs.push_back({{"id", 5},
                    {"name", "spiral-cubics"},
                    {"curve", {{"kind", "parametric"}, {"x", kSpiralX}, {"y", kSpiralY},
                               {"drawn", {0.2, 4.8}}}},
                    {"family", {{"kind", "cubic"}, {"interval", {1.0, 4.0}},
                                {"samples", kOvalSamples}, {"trace_grid", kTraceGrid}}}});
    figs.push_back({{"id", 6},
                    {"name", "astroid-quartics"},
                    {"curve", {{"kind", "parametric"}, {"x", kAstroidX}, {"y", kAstroidY},
                               {"domain", {0.15, 1.42}},
                               {"base_drawn", "implicit sextic (1-x^2-y^2)^3 - 27 x^2 y^2"}}},
                    {"family", {{"kind", "quartic"}, {"interval", {0.45, 1.0}},
                                {"samples", kOvalSamples}, {"resolution", kImplicitGrid},
                                {"viewbox", {-1.6, 1.6, -1.6, 1.6}}}}});
    m["figures"] = figs;
    return m.dump(2) + "\n";
}

}  // namespace osc
