// SPDX-License-Identifier: Apache-2.0
#include "osc/curve.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <tuple>

namespace osc {

namespace {

void check_vars(const Expr& e, const std::string& allowed, const char* what) {
    for (const std::string& v : e.variables())
        if (v != allowed)
            throw CurveSpecError(std::string(what) + " may only use variable '" + allowed +
                                 "', found '" + v + "'");
}

void check_domain(double lo, double hi) {
    if (!(lo < hi)) throw CurveSpecError("curve domain requires lo < hi");
    if (!std::isfinite(lo) || !std::isfinite(hi)) throw CurveSpecError("curve domain must be finite");
}

}  // namespace

PlaneCurve PlaneCurve::graph(Expr f, double lo, double hi) {
    check_domain(lo, hi);
    check_vars(f, "x", "graph expression");
    PlaneCurve c;
    c.kind_ = Kind::Graph;
    c.f_ = std::move(f);
    c.lo_ = lo;
    c.hi_ = hi;
    // Evaluability probe over the sample grid surfaces domain errors early.
    for (int i = 0; i <= 256; ++i) {
        const double s = lo + (hi - lo) * i / 256.0;
        (void)eval_real1(c.f_, s);
    }
    return c;
}

PlaneCurve PlaneCurve::parametric(Expr x, Expr y, double lo, double hi) {
    check_domain(lo, hi);
    check_vars(x, "s", "parametric x component");
    check_vars(y, "s", "parametric y component");
    PlaneCurve c;
    c.kind_ = Kind::Parametric;
    c.x_ = std::move(x);
    c.y_ = std::move(y);
    c.lo_ = lo;
    c.hi_ = hi;
    for (int i = 0; i <= 256; ++i) {
        const double s = lo + (hi - lo) * i / 256.0;
        const Jet js = Jet::variable(s, 1);
        const Jet jx = eval_jet1(c.x_, js);
        const Jet jy = eval_jet1(c.y_, js);
        const double speed2 = jx.coeff(1) * jx.coeff(1) + jy.coeff(1) * jy.coeff(1);
        if (speed2 < 1e-24)
            throw CurveSpecError("parameterization is singular near s = " + std::to_string(s));
    }
    return c;
}

PlaneCurve PlaneCurve::graph(const std::string& f, double lo, double hi) {
    return graph(parse(f), lo, hi);
}

PlaneCurve PlaneCurve::parametric(const std::string& x, const std::string& y, double lo, double hi) {
    return parametric(parse(x), parse(y), lo, hi);
}

std::pair<Jet, Jet> PlaneCurve::jets(double s, int order) const {
    const Jet js = Jet::variable(s, order);
    if (kind_ == Kind::Graph) return {js, eval_jet1(f_, js)};
    return {eval_jet1(x_, js), eval_jet1(y_, js)};
}

Point PlaneCurve::at(double s) const {
    if (kind_ == Kind::Graph) return {s, eval_real1(f_, s)};
    return {eval_real1(x_, s), eval_real1(y_, s)};
}

namespace {

std::pair<double, double> parse_domain(const std::string& value) {
    // expected form: [lo,hi]
    std::string v = value;
    if (v.size() < 5 || v.front() != '[' || v.back() != ']')
        throw CurveSpecError("domain must look like [lo,hi], got '" + value + "'");
    v = v.substr(1, v.size() - 2);
    const std::size_t comma = v.find(',');
    if (comma == std::string::npos) throw CurveSpecError("domain must look like [lo,hi]");
    char* end = nullptr;
    const std::string lo_s = v.substr(0, comma), hi_s = v.substr(comma + 1);
    const double lo = std::strtod(lo_s.c_str(), &end);
    if (end == lo_s.c_str() || *end != '\0') throw CurveSpecError("bad domain bound '" + lo_s + "'");
    const double hi = std::strtod(hi_s.c_str(), &end);
    if (end == hi_s.c_str() || *end != '\0') throw CurveSpecError("bad domain bound '" + hi_s + "'");
    return {lo, hi};
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    std::size_t b = s.find_last_not_of(" \t\r");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}

}  // namespace

PlaneCurve PlaneCurve::from_spec_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::string kind, f, x, y;
    bool have_domain = false;
    double lo = 0.0, hi = 0.0;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw CurveSpecError("line " + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key == "kind") {
            kind = value;
        } else if (key == "f") {
            f = value;
        } else if (key == "x") {
            x = value;
        } else if (key == "y") {
            y = value;
        } else if (key == "domain") {
            std::tie(lo, hi) = parse_domain(value);
            have_domain = true;
        } else {
            throw CurveSpecError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
    }
    if (!have_domain) throw CurveSpecError("curve spec is missing domain=[lo,hi]");
    if (kind == "graph") {
        if (f.empty()) throw CurveSpecError("graph curve spec needs f=<expr>");
        if (!x.empty() || !y.empty()) throw CurveSpecError("graph curve spec cannot carry x=/y=");
        return graph(parse(f), lo, hi);
    }
    if (kind == "parametric") {
        if (x.empty() || y.empty()) throw CurveSpecError("parametric curve spec needs x=<expr> and y=<expr>");
        if (!f.empty()) throw CurveSpecError("parametric curve spec cannot carry f=");
        return parametric(parse(x), parse(y), lo, hi);
    }
    throw CurveSpecError("kind must be graph or parametric, got '" + kind + "'");
}

PlaneCurve PlaneCurve::from_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IOError("cannot open curve spec file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_spec_text(buf.str());
}

std::string PlaneCurve::to_spec_text() const {
    std::ostringstream os;
    char dom[80];
    std::snprintf(dom, sizeof(dom), "domain=[%.17g,%.17g]\n", lo_, hi_);
    if (kind_ == Kind::Graph) {
        os << "kind=graph\n"
           << "f=" << f_.print() << "\n"
           << dom;
    } else {
        os << "kind=parametric\n"
           << "x=" << x_.print() << "\n"
           << "y=" << y_.print() << "\n"
           << dom;
    }
    return os.str();
}

}  // namespace osc
