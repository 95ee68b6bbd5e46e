// SPDX-License-Identifier: Apache-2.0
//
// osculant — construct osculating objects along smooth plane curves, locate
// the parameters where they hyper-osculate, certify that one-parameter
// families are pairwise disjoint or nested, measure contact multiplicities
// against the degree bound, and render the built-in gallery figures.
//
// Exit codes:
//   0  verification positive (disjoint / nested / family collapses to one member)
//   1  verification negative (an intersection or a bound violation was found)
//   2  bad input: usage, parse, or precondition failure
//   3  inconclusive: degenerate or marginal configuration, refused rather than guessed

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "osc/algebraic.hpp"
#include "osc/chebyshev.hpp"
#include "osc/curve.hpp"
#include "osc/errors.hpp"
#include "osc/expr.hpp"
#include "osc/render.hpp"
#include "osc/report.hpp"
#include "osc/roots.hpp"
#include "osc/taitkneser.hpp"
#include "osc/taylor.hpp"

namespace {

using nlohmann::json;

std::pair<double, double> parse_range(const std::string& text, const std::string& flag) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw osc::PreconditionError(flag + " expects two comma-separated numbers, e.g. 0.5,1.5");
    const std::string a = text.substr(0, comma);
    const std::string b = text.substr(comma + 1);
    try {
        std::size_t pa = 0, pb = 0;
        const double lo = std::stod(a, &pa);
        const double hi = std::stod(b, &pb);
        if (pa != a.size() || pb != b.size() || !std::isfinite(lo) || !std::isfinite(hi))
            throw std::invalid_argument("trailing characters");
        return {lo, hi};
    } catch (const std::exception&) {
        throw osc::PreconditionError(flag + " expects two comma-separated numbers, got '" + text +
                                     "'");
    }
}

/// Shared --f / --x,--y / --curve / --domain flags.  Exactly one source
/// must be given; --domain customizes (or, for parametric input, supplies)
/// the parameter range.
struct CurveFlags {
    std::string f, x, y, file, domain;

    void add_to(CLI::App* cmd, bool graph_only = false) {
        auto* fo = cmd->add_option("--f", f, graph_only ? "function f for the graph y = f(x)"
                                                        : "graph curve y = f(x)");
        if (graph_only) {
            fo->required();
            return;
        }
        auto* xo = cmd->add_option("--x", x, "parametric x(s) (with --y)");
        auto* yo = cmd->add_option("--y", y, "parametric y(s) (with --x)");
        auto* co = cmd->add_option("--curve", file, "curve spec file (key=value lines)");
        cmd->add_option("--domain", domain, "parameter domain lo,hi for --f/--x/--y input");
        xo->needs(yo);
        yo->needs(xo);
        fo->excludes(xo)->excludes(co);
        xo->excludes(co);
    }

    bool given() const { return !f.empty() || !x.empty() || !file.empty(); }

    /// Build the curve.  fallback is used as the domain for graph input when
    /// --domain is absent; parametric input always requires --domain.
    osc::PlaneCurve resolve(std::optional<std::pair<double, double>> fallback) const {
        if (!file.empty()) {
            if (!domain.empty())
                throw osc::PreconditionError("--domain conflicts with --curve; set the domain in "
                                             "the spec file");
            return osc::PlaneCurve::from_spec_file(file);
        }
        if (!x.empty()) {
            if (domain.empty())
                throw osc::PreconditionError("parametric input needs --domain lo,hi");
            const auto [lo, hi] = parse_range(domain, "--domain");
            return osc::PlaneCurve::parametric(x, y, lo, hi);
        }
        if (!f.empty()) {
            std::pair<double, double> dom;
            if (!domain.empty())
                dom = parse_range(domain, "--domain");
            else if (fallback)
                dom = *fallback;
            else
                throw osc::PreconditionError("graph input needs --domain lo,hi");
            return osc::PlaneCurve::graph(f, dom.first, dom.second);
        }
        throw osc::PreconditionError("no curve given: use --f, --x/--y, or --curve");
    }
};

json curve_to_json(const osc::PlaneCurve& c) {
    json j;
    j["domain"] = {c.lo(), c.hi()};
    if (c.kind() == osc::PlaneCurve::Kind::Graph) {
        j["kind"] = "graph";
        j["f"] = c.graph_f().print();
    } else {
        j["kind"] = "parametric";
        j["x"] = c.param_x().print();
        j["y"] = c.param_y().print();
    }
    return j;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream os(out_path, std::ios::binary);
    if (!os) throw osc::IOError("cannot open output file: " + out_path);
    os << text;
    if (!os) throw osc::IOError("write failed: " + out_path);
}

void emit_json(const json& j, const std::string& format, const std::string& out_path,
               const std::string& text_form) {
    emit(format == "text" ? text_form : j.dump(2) + "\n", out_path);
}

int verdict_exit(osc::Verdict v) {
    switch (v) {
        case osc::Verdict::Disjoint:
        case osc::Verdict::Nested:
        case osc::Verdict::EqualFamily: return 0;
        case osc::Verdict::Intersecting: return 1;
        case osc::Verdict::Inconclusive: return 3;
    }
    return 3;
}

json roots_to_json(const osc::RootScan& scan) {
    json roots = json::array();
    for (const auto& r : scan.roots) roots.push_back({{"t", r.t}, {"plateau", r.plateau}});
    return json{{"count", scan.roots.size()},
                {"identically_zero", scan.identically_zero},
                {"roots", roots}};
}

std::string roots_to_text(const std::string& what, const osc::RootScan& scan) {
    std::ostringstream os;
    if (scan.identically_zero) {
        os << what << ": the defining function vanishes identically on the interval\n";
        return os.str();
    }
    os << what << ": " << scan.roots.size() << "\n";
    char buf[64];
    for (const auto& r : scan.roots) {
        std::snprintf(buf, sizeof(buf), "t = %.12g%s\n", r.t, r.plateau ? "  (even-order)" : "");
        os << buf;
    }
    return os.str();
}

std::string format_report(const osc::VerificationReport& rep, const std::string& format) {
    return format == "text" ? rep.to_text() : rep.to_json().dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// osculate: one osculating object, printed as JSON or key: value text.

struct OsculateArgs {
    CurveFlags curve;
    std::string kind, format = "json", out;
    double at = 0.0;
    int n = -1;  // polynomial / trigonometric degree; resolved per kind
};

int run_osculate(const OsculateArgs& a) {
    json out{{"command", "osculate"}, {"kind", a.kind}, {"at", a.at}};
    std::ostringstream text;
    text.precision(12);
    text << "kind: " << a.kind << "\nat: " << a.at << "\n";

    const bool needs_expr = a.kind == "taylor" || a.kind == "trig" || a.kind == "mobius";
    if (needs_expr) {
        if (a.curve.f.empty())
            throw osc::PreconditionError("--kind " + a.kind + " takes a function via --f");
        const osc::Expr f = osc::parse(a.curve.f);
        out["f"] = f.print();
        text << "f: " << f.print() << "\n";
        if (a.kind == "taylor") {
            const int n = a.n < 0 ? 2 : a.n;
            const osc::TaylorOsculant t = osc::osculating_polynomial(f, a.at, n);
            out["n"] = n;
            out["osculant"] = {{"local_coeffs", t.local_coeffs},
                               {"monomial_coeffs", t.monomial_coeffs()}};
            text << "n: " << n << "\nmonomial coefficients (constant first):";
            for (double c : t.monomial_coeffs()) text << " " << c;
            text << "\n";
        } else if (a.kind == "trig") {
            const int n = a.n < 0 ? 1 : a.n;
            const osc::ChebSystem sys = osc::trig_basis(n);
            const osc::ChebOsculant e = osc::osculating_element(sys, f, a.at);
            json basis = json::array();
            for (const auto& b : e.basis) basis.push_back(b.print());
            out["n"] = n;
            out["osculant"] = {{"basis", basis}, {"coeffs", e.coeffs}};
            text << "n: " << n << "\ncoefficients on [1";
            for (int k = 1; k <= n; ++k) text << ", cos(" << k << "x), sin(" << k << "x)";
            text << "]:";
            for (double c : e.coeffs) text << " " << c;
            text << "\n";
        } else {
            const osc::MobiusOsculant m = osc::osculating_mobius(f, a.at);
            out["osculant"] = {{"line", m.line},     {"p", m.p},
                               {"q", m.q},           {"c", m.c},
                               {"slope", m.slope},   {"intercept", m.intercept}};
            auto shifted = [](double v) {
                std::ostringstream os;
                os.precision(12);
                if (v >= 0)
                    os << " - " << v;
                else
                    os << " + " << -v;
                return os.str();
            };
            if (m.line)
                text << "tangent line: y = " << m.slope << " x + " << m.intercept << "\n";
            else
                text << "hyperbola: (x" << shifted(m.p) << ")(y" << shifted(m.q)
                     << ") = " << m.c << "\n";
        }
        emit_json(out, a.format, a.out, text.str());
        return 0;
    }

    const osc::PlaneCurve curve =
        a.curve.resolve(std::pair<double, double>{a.at - 1.0, a.at + 1.0});
    out["curve"] = curve_to_json(curve);
    if (a.kind == "circle") {
        const osc::OsculatingCircle c = osc::osculating_circle(curve, a.at);
        out["osculant"] = {{"center", {c.center.x, c.center.y}},
                           {"radius", c.radius},
                           {"curvature", c.curvature},
                           {"tangency", {c.tangency.x, c.tangency.y}}};
        text << "center: (" << c.center.x << ", " << c.center.y << ")\nradius: " << c.radius
             << "\ncurvature: " << c.curvature << "\n";
    } else {
        int d = 0;
        if (a.kind == "conic")
            d = 2;
        else if (a.kind == "cubic")
            d = 3;
        else if (a.kind == "quartic")
            d = 4;
        else
            throw osc::PreconditionError("unknown osculant kind: " + a.kind);
        const osc::AlgebraicCurve c = osc::osculating_algebraic_curve(curve, a.at, d);
        out["osculant"] = c.to_json();
        text << "degree: " << d << "\ncoefficients (1, x, y, x^2, xy, y^2, ...):";
        for (double v : c.coeffs) text << " " << v;
        text << "\n";
        if (d == 2) {
            std::string cls;
            switch (osc::classify_conic(c)) {
                case osc::ConicClass::Ellipse: cls = "ellipse"; break;
                case osc::ConicClass::Parabola: cls = "parabola"; break;
                case osc::ConicClass::Hyperbola: cls = "hyperbola"; break;
                case osc::ConicClass::Degenerate: cls = "degenerate"; break;
            }
            out["osculant"]["class"] = cls;
            text << "class: " << cls << "\n";
        }
    }
    emit_json(out, a.format, a.out, text.str());
    return 0;
}

// ---------------------------------------------------------------------------
// Point locators: vertices, flexes, extactic, schwarzian.

struct LocateArgs {
    CurveFlags curve;
    std::string interval, format = "json", out;
    int n = 1;  // flexes: trigonometric degree
    int d = 2;  // extactic: algebraic degree
    double at = 0.0;
    bool at_given = false;
};

std::optional<std::pair<double, double>> opt_range(const std::string& text,
                                                   const std::string& flag) {
    if (text.empty()) return std::nullopt;
    return parse_range(text, flag);
}

int run_vertices(const LocateArgs& a) {
    const auto iv = opt_range(a.interval, "--interval");
    if (!iv && !a.curve.f.empty() && a.curve.domain.empty())
        throw osc::PreconditionError("graph input needs --interval or --domain");
    const osc::PlaneCurve curve = a.curve.resolve(iv);
    const double lo = iv ? iv->first : curve.lo();
    const double hi = iv ? iv->second : curve.hi();
    const osc::RootScan scan = osc::find_vertices(curve, lo, hi);
    json out{{"command", "vertices"},
             {"curve", curve_to_json(curve)},
             {"interval", {lo, hi}}};
    out.update(roots_to_json(scan));
    emit_json(out, a.format, a.out, roots_to_text("curvature-critical points", scan));
    return 0;
}

int run_flexes(const LocateArgs& a) {
    const auto iv = parse_range(a.interval, "--interval");
    const osc::Expr f = osc::parse(a.curve.f);
    const osc::RootScan scan = osc::find_flexes(f, a.n, iv.first, iv.second);
    json out{{"command", "flexes"},
             {"f", f.print()},
             {"n", a.n},
             {"interval", {iv.first, iv.second}}};
    out.update(roots_to_json(scan));
    emit_json(out, a.format, a.out,
              roots_to_text("trigonometric hyper-osculation points", scan));
    return 0;
}

int run_extactic(const LocateArgs& a) {
    const auto iv = opt_range(a.interval, "--interval");
    if (!iv && !a.curve.f.empty() && a.curve.domain.empty())
        throw osc::PreconditionError("graph input needs --interval or --domain");
    const osc::PlaneCurve curve = a.curve.resolve(iv);
    const double lo = iv ? iv->first : curve.lo();
    const double hi = iv ? iv->second : curve.hi();
    const osc::RootScan scan = osc::find_extactic_points(curve, lo, hi, a.d);
    json out{{"command", "extactic"},
             {"curve", curve_to_json(curve)},
             {"d", a.d},
             {"interval", {lo, hi}}};
    out.update(roots_to_json(scan));
    std::ostringstream what;
    what << "degree-" << a.d << " hyper-osculation points";
    emit_json(out, a.format, a.out, roots_to_text(what.str(), scan));
    return 0;
}

int run_schwarzian(const LocateArgs& a) {
    const osc::Expr f = osc::parse(a.curve.f);
    json out{{"command", "schwarzian"}, {"f", f.print()}};
    std::ostringstream text;
    text.precision(12);
    if (!a.at_given && a.interval.empty())
        throw osc::PreconditionError("schwarzian needs --at t, --interval lo,hi, or both");
    if (a.at_given) {
        const double v = osc::schwarzian(f, a.at);
        out["at"] = a.at;
        out["value"] = v;
        text << "S(f)(" << a.at << ") = " << v << "\n";
    }
    if (!a.interval.empty()) {
        const auto iv = parse_range(a.interval, "--interval");
        const osc::RootScan scan = osc::find_schwarzian_zeros(f, iv.first, iv.second);
        out["interval"] = {iv.first, iv.second};
        out.update(roots_to_json(scan));
        text << roots_to_text("schwarzian zeros", scan);
    }
    emit_json(out, a.format, a.out, text.str());
    return 0;
}

// ---------------------------------------------------------------------------
// verify: family disjointness certificates.

struct VerifyArgs {
    CurveFlags curve;
    std::string kind, interval, window, format = "json", out;
    int n = -1;
    int samples = -1;
    int x_samples = 256;
    int grid = 512;
    double x_max = 0.0;
    bool x_max_given = false;
};

int run_verify(const VerifyArgs& a) {
    const auto iv = parse_range(a.interval, "--interval");
    const auto win = opt_range(a.window, "--window");
    osc::VerificationReport rep;

    if (a.kind == "taylor") {
        if (a.curve.f.empty()) throw osc::PreconditionError("--kind taylor takes --f");
        const int n = a.n < 0 ? 2 : a.n;
        osc::DisjointGraphOptions opts;
        opts.t_samples = a.samples < 0 ? 64 : a.samples;
        opts.x_samples = a.x_samples;
        if (win) opts.window = win;
        if (a.x_max_given) opts.x_max = a.x_max;
        rep = osc::verify_disjoint_graphs(osc::parse(a.curve.f), iv.first, iv.second, n, opts);
        rep.params["f"] = osc::parse(a.curve.f).print();
    } else if (a.kind == "trig") {
        if (a.curve.f.empty()) throw osc::PreconditionError("--kind trig takes --f");
        if (!win) throw osc::PreconditionError("--kind trig needs --window lo,hi");
        const int n = a.n < 0 ? 1 : a.n;
        osc::ChebVerifyOptions opts;
        opts.t_samples = a.samples < 0 ? 64 : a.samples;
        opts.x_samples = a.x_samples;
        rep = osc::verify_disjoint_cheb(osc::trig_basis(n), osc::parse(a.curve.f), iv.first,
                                        iv.second, win->first, win->second, opts);
        rep.params["f"] = osc::parse(a.curve.f).print();
    } else if (a.kind == "mobius") {
        if (a.curve.f.empty()) throw osc::PreconditionError("--kind mobius takes --f");
        if (!win) throw osc::PreconditionError("--kind mobius needs --window lo,hi");
        rep = osc::verify_mobius_family(osc::parse(a.curve.f), iv.first, iv.second, win->first,
                                        win->second, a.samples < 0 ? 16 : a.samples);
        rep.params["f"] = osc::parse(a.curve.f).print();
    } else if (a.kind == "circle" || a.kind == "conic" || a.kind == "cubic") {
        const double w = 0.5 * (iv.second - iv.first);
        const osc::PlaneCurve curve =
            a.curve.resolve(std::pair<double, double>{iv.first - w, iv.second + w});
        if (a.kind == "circle")
            rep = osc::verify_circle_family(curve, iv.first, iv.second,
                                            a.samples < 0 ? 48 : a.samples);
        else if (a.kind == "conic")
            rep = osc::verify_conic_family(curve, iv.first, iv.second,
                                           a.samples < 0 ? 16 : a.samples);
        else
            rep = osc::verify_cubic_ovals(curve, iv.first, iv.second,
                                          a.samples < 0 ? 8 : a.samples, a.grid);
        rep.params["curve"] = curve_to_json(curve);
    } else {
        throw osc::PreconditionError(
            "unknown family kind: " + a.kind +
            " (expected taylor, trig, circle, conic, cubic, or mobius)");
    }

    emit(format_report(rep, a.format), a.out);
    return verdict_exit(rep.verdict);
}

// ---------------------------------------------------------------------------
// multiplicity: contact orders and the degree-squared intersection budget.

struct MultiplicityArgs {
    CurveFlags curve;
    std::string kind, window, format = "json", out;
    double s = 0.0, t = 0.0;
    bool t_given = false;
    int n = 2;
    int max_order = 12;
    int samples = 512;
    bool index = false;
    bool envelope = false;
};

int run_multiplicity(const MultiplicityArgs& a) {
    const auto win = opt_range(a.window, "--window");
    const std::pair<double, double> def_win{a.s - 2.0, a.s + 2.0};
    json out{{"command", "multiplicity"}, {"family", a.kind}, {"s", a.s}};
    std::ostringstream text;
    text.precision(12);

    if (a.envelope) {
        int d = 0;
        if (a.kind == "line")
            d = 1;
        else if (a.kind == "conic")
            d = 2;
        else
            throw osc::PreconditionError(
                "--envelope checks contact with the base curve and takes --kind line or conic");
        const osc::PlaneCurve curve = a.curve.resolve(def_win);
        osc::VerificationReport rep = osc::envelope_multiplicity_check(curve, a.s, d);
        rep.params["curve"] = curve_to_json(curve);
        emit(format_report(rep, a.format), a.out);
        return verdict_exit(rep.verdict);
    }

    osc::FamilyMap fam = [&]() -> osc::FamilyMap {
        if (a.kind == "taylor") {
            if (a.curve.f.empty()) throw osc::PreconditionError("--kind taylor takes --f");
            const auto w = win ? *win : def_win;
            out["window"] = {w.first, w.second};
            out["n"] = a.n;
            return osc::FamilyMap::graph_family(osc::parse(a.curve.f), a.n, w.first, w.second);
        }
        if (a.kind == "mobius") {
            if (a.curve.f.empty()) throw osc::PreconditionError("--kind mobius takes --f");
            if (!win)
                throw osc::PreconditionError(
                    "--kind mobius needs --window lo,hi clear of the member's pole");
            out["window"] = {win->first, win->second};
            return osc::FamilyMap::mobius_family(osc::parse(a.curve.f), win->first, win->second);
        }
        const osc::PlaneCurve curve = a.curve.resolve(def_win);
        out["curve"] = curve_to_json(curve);
        if (a.kind == "circle") return osc::FamilyMap::circle_family(curve);
        if (a.kind == "conic") return osc::FamilyMap::conic_family(curve);
        if (a.kind == "line") return osc::FamilyMap::line_family(curve);
        throw osc::PreconditionError(
            "unknown family kind: " + a.kind +
            " (expected taylor, circle, conic, mobius, or line)");
    }();

    const int bound = fam.degree() * fam.degree();
    out["bound"] = bound;

    if (a.index) {
        const osc::IndexResult r = osc::infinitesimal_index(fam, a.s, a.samples);
        json dips = json::array();
        for (const auto& m : r.dips)
            dips.push_back(
                {{"s", m.s}, {"t", m.t}, {"order", m.order}, {"saturated", m.saturated}});
        out["index"] = r.index;
        out["dips"] = dips;
        out["t_samples"] = a.samples;
        text << "index along the member at s = " << a.s << ": " << r.index << " (bound " << bound
             << ")\n";
        for (const auto& m : r.dips)
            text << "  contact of order " << m.order << " at t = " << m.t
                 << (m.saturated ? " (saturated)" : "") << "\n";
        if (r.index > r.bound) text << "BOUND VIOLATION\n";
        emit_json(out, a.format, a.out, text.str());
        return r.index > r.bound ? 1 : 0;
    }

    const double t = a.t_given ? a.t : fam.tangency_t(a.s);
    const osc::Multiplicity m = osc::infinitesimal_multiplicity(fam, a.s, t, a.max_order);
    out["t"] = t;
    out["max_order"] = a.max_order;
    out["order"] = m.order;
    out["saturated"] = m.saturated;
    text << "contact order of the member at s = " << a.s << " with the base point at t = " << t
         << ": " << m.order << (m.saturated ? "+ (saturated at max order)" : "") << " (bound "
         << bound << ")\n";
    emit_json(out, a.format, a.out, text.str());
    if (m.saturated) {
        std::cerr << "inconclusive: contact order reached the cap " << a.max_order
                  << "; raise --max-order\n";
        return 3;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// figure: built-in gallery renderer.

struct FigureArgs {
    int id = 0;
    std::string out, csv;
    bool manifest = false;
};

int run_figure(const FigureArgs& a) {
    if (a.manifest) {
        std::cout << osc::figure_manifest();
        return 0;
    }
    if (a.out.empty()) throw osc::PreconditionError("figure needs --out FILE.svg");
    osc::render_figure(a.id, a.out, a.csv);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "osculating families along smooth plane curves: construction, hyper-osculation "
        "points, disjointness certificates, contact multiplicities, and figures"};
    app.require_subcommand(1);
    app.get_formatter()->column_width(26);

    OsculateArgs osc_a;
    auto* osculate = app.add_subcommand(
        "osculate", "construct one osculating object at a given parameter");
    osc_a.curve.add_to(osculate);
    osculate->add_option("--kind", osc_a.kind, "taylor, trig, circle, conic, cubic, quartic, mobius")
        ->required()
        ->check(CLI::IsMember({"taylor", "trig", "circle", "conic", "cubic", "quartic", "mobius"}));
    osculate->add_option("--at", osc_a.at, "parameter of the contact point")->required();
    osculate->add_option("--n", osc_a.n, "degree for taylor (default 2) / trig (default 1)");
    osculate->add_option("--format", osc_a.format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
    osculate->add_option("--out", osc_a.out, "write output to a file instead of stdout");

    LocateArgs vert_a;
    auto* vertices = app.add_subcommand(
        "vertices", "parameters where the curvature is critical (osculating circle stalls)");
    vert_a.curve.add_to(vertices);
    vertices->add_option("--interval", vert_a.interval, "scan interval lo,hi (default: curve domain)");
    vertices->add_option("--format", vert_a.format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
    vertices->add_option("--out", vert_a.out, "write output to a file instead of stdout");

    LocateArgs flex_a;
    auto* flexes = app.add_subcommand(
        "flexes", "parameters where the osculating trigonometric polynomial hyper-osculates");
    flex_a.curve.add_to(flexes, /*graph_only=*/true);
    flexes->add_option("--n", flex_a.n, "trigonometric degree (default 1)");
    flexes->add_option("--interval", flex_a.interval, "scan interval lo,hi")->required();
    flexes->add_option("--format", flex_a.format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
    flexes->add_option("--out", flex_a.out, "write output to a file instead of stdout");

    LocateArgs ext_a;
    auto* extactic = app.add_subcommand(
        "extactic", "parameters where the degree-d osculating curve gains extra contact");
    ext_a.curve.add_to(extactic);
    extactic->add_option("--d", ext_a.d, "algebraic degree 1..4 (default 2)");
    extactic->add_option("--interval", ext_a.interval, "scan interval lo,hi (default: curve domain)");
    extactic->add_option("--format", ext_a.format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
    extactic->add_option("--out", ext_a.out, "write output to a file instead of stdout");

    LocateArgs sch_a;
    auto* schwarzian = app.add_subcommand(
        "schwarzian", "evaluate the schwarzian derivative of f and locate its zeros");
    sch_a.curve.add_to(schwarzian, /*graph_only=*/true);
    schwarzian->add_option("--at", sch_a.at, "evaluate S(f) at this point")
        ->each([&](const std::string&) { sch_a.at_given = true; });
    schwarzian->add_option("--interval", sch_a.interval, "scan interval lo,hi for zeros");
    schwarzian->add_option("--format", sch_a.format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
    schwarzian->add_option("--out", sch_a.out, "write output to a file instead of stdout");

    VerifyArgs ver_a;
    auto* verify = app.add_subcommand(
        "verify", "certify that the members of an osculating family are pairwise disjoint");
    ver_a.curve.add_to(verify);
    verify->add_option("--kind", ver_a.kind, "taylor, trig, circle, conic, cubic, mobius")
        ->required()
        ->check(CLI::IsMember({"taylor", "trig", "circle", "conic", "cubic", "mobius"}));
    verify->add_option("--interval", ver_a.interval, "parameter interval lo,hi for the family")
        ->required();
    verify->add_option("--n", ver_a.n, "degree for taylor (default 2) / trig (default 1)");
    verify->add_option("--samples", ver_a.samples,
                       "family members compared (default: taylor/trig 64, circle 48, conic 16, "
                       "cubic 8, mobius 16)");
    verify->add_option("--x-samples", ver_a.x_samples,
                       "graph comparison grid per pair (taylor/trig, default 256)");
    verify->add_option("--window", ver_a.window,
                       "x-window lo,hi (taylor even degree; required for trig and mobius)");
    verify->add_option("--x-max", ver_a.x_max, "right end of the half-line window (taylor odd degree)")
        ->each([&](const std::string&) { ver_a.x_max_given = true; });
    verify->add_option("--grid", ver_a.grid, "oval tracing grid (cubic, default 512)");
    verify->add_option("--format", ver_a.format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
    verify->add_option("--out", ver_a.out, "write the report to a file instead of stdout");

    MultiplicityArgs mul_a;
    auto* multiplicity = app.add_subcommand(
        "multiplicity",
        "contact order between a family member and the base point, or the full intersection "
        "index along the member against the degree-squared bound");
    mul_a.curve.add_to(multiplicity);
    multiplicity->add_option("--kind", mul_a.kind, "taylor, circle, conic, mobius, line")
        ->required()
        ->check(CLI::IsMember({"taylor", "circle", "conic", "mobius", "line"}));
    multiplicity->add_option("--s", mul_a.s, "family parameter")->required();
    multiplicity->add_option("--t", mul_a.t, "base-curve parameter (default: the tangency of s)")
        ->each([&](const std::string&) { mul_a.t_given = true; });
    multiplicity->add_option("--n", mul_a.n, "taylor degree (default 2)");
    multiplicity->add_option("--window", mul_a.window, "x-window lo,hi for taylor/mobius families");
    multiplicity->add_option("--max-order", mul_a.max_order,
                             "cap on the detected contact order (default 12)");
    multiplicity->add_flag("--index", mul_a.index,
                           "sum the contact orders over the whole member");
    multiplicity->add_option("--samples", mul_a.samples,
                             "scan resolution along the member for --index (default 512)");
    multiplicity->add_flag("--envelope", mul_a.envelope,
                           "check the member's contact order against the expected envelope value "
                           "(--kind line or conic)");
    multiplicity->add_option("--format", mul_a.format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
    multiplicity->add_option("--out", mul_a.out, "write output to a file instead of stdout");

    FigureArgs fig_a;
    auto* figure = app.add_subcommand("figure", "render a built-in figure to SVG");
    auto* fig_id = figure->add_option("--id", fig_a.id, "figure number 1..6");
    figure->add_option("--out", fig_a.out, "output SVG path");
    figure->add_option("--csv", fig_a.csv, "also dump the plotted coordinates as CSV");
    figure->add_flag("--manifest", fig_a.manifest, "print the figure manifest as JSON")
        ->excludes(fig_id);

    int rc = 0;
    osculate->callback([&] { rc = run_osculate(osc_a); });
    vertices->callback([&] { rc = run_vertices(vert_a); });
    flexes->callback([&] { rc = run_flexes(flex_a); });
    extactic->callback([&] { rc = run_extactic(ext_a); });
    schwarzian->callback([&] { rc = run_schwarzian(sch_a); });
    verify->callback([&] { rc = run_verify(ver_a); });
    multiplicity->callback([&] { rc = run_multiplicity(mul_a); });
    figure->callback([&] {
        if (!fig_a.manifest && fig_id->count() == 0)
            throw osc::PreconditionError("figure needs --id N (or --manifest)");
        rc = run_figure(fig_a);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const osc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
