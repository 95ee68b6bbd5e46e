// SPDX-License-Identifier: Apache-2.0
#include "osc/algebraic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace osc {

int mono_index(int a, int b) {
    const int k = a + b;
    return k * (k + 1) / 2 + (k - a);
}

std::vector<std::pair<int, int>> monomials_up_to(int d) {
    std::vector<std::pair<int, int>> out;
    out.reserve(static_cast<std::size_t>(AlgebraicCurve::coeff_count(d)));
    for (int k = 0; k <= d; ++k)
        for (int a = k; a >= 0; --a) out.emplace_back(a, k - a);
    return out;
}

double AlgebraicCurve::eval(double x, double y) const {
    double acc = 0.0;
    const auto ms = monomials_up_to(degree);
    for (std::size_t m = 0; m < ms.size(); ++m) {
        double term = coeffs[m];
        for (int i = 0; i < ms[m].first; ++i) term *= x;
        for (int i = 0; i < ms[m].second; ++i) term *= y;
        acc += term;
    }
    return acc;
}

std::pair<double, double> AlgebraicCurve::gradient(double x, double y) const {
    double gx = 0.0, gy = 0.0;
    const auto ms = monomials_up_to(degree);
    for (std::size_t m = 0; m < ms.size(); ++m) {
        const int a = ms[m].first, b = ms[m].second;
        if (a > 0) {
            double term = coeffs[m] * a;
            for (int i = 0; i < a - 1; ++i) term *= x;
            for (int i = 0; i < b; ++i) term *= y;
            gx += term;
        }
        if (b > 0) {
            double term = coeffs[m] * b;
            for (int i = 0; i < a; ++i) term *= x;
            for (int i = 0; i < b - 1; ++i) term *= y;
            gy += term;
        }
    }
    return {gx, gy};
}

Jet AlgebraicCurve::eval_jet(const Jet& x, const Jet& y) const {
    Jet acc = Jet::constant(0.0, x.base(), x.order());
    const auto ms = monomials_up_to(degree);
    for (std::size_t m = 0; m < ms.size(); ++m) {
        if (coeffs[m] == 0.0) continue;
        acc = acc + pow_int(x, ms[m].first) * pow_int(y, ms[m].second) * coeffs[m];
    }
    return acc;
}

void AlgebraicCurve::normalize() {
    double norm = 0.0;
    for (double c : coeffs) norm += c * c;
    norm = std::sqrt(norm);
    if (norm == 0.0) throw RankDeficient("cannot normalize the zero polynomial");
    double sign = 1.0;
    for (double c : coeffs) {
        if (std::abs(c) > 1e-14 * norm) {
            sign = (c > 0.0) ? 1.0 : -1.0;
            break;
        }
    }
    const double scale = sign / norm;
    for (double& c : coeffs) c *= scale;
}

std::string AlgebraicCurve::to_csv() const {
    std::ostringstream os;
    os << degree;
    char buf[40];
    for (double c : coeffs) {
        std::snprintf(buf, sizeof(buf), ",%.17g", c);
        os << buf;
    }
    return os.str();
}

nlohmann::json AlgebraicCurve::to_json() const {
    nlohmann::json j;
    j["degree"] = degree;
    j["coeffs"] = coeffs;
    nlohmann::json names = nlohmann::json::array();
    for (const auto& [a, b] : monomials_up_to(degree)) {
        std::string n;
        for (int i = 0; i < a; ++i) n += "x";
        for (int i = 0; i < b; ++i) n += "y";
        names.push_back(n.empty() ? "1" : n);
    }
    j["monomials"] = names;
    return j;
}

Point Affine2::operator()(Point p) const {
    return {a11 * p.x + a12 * p.y + b1, a21 * p.x + a22 * p.y + b2};
}

Affine2 Affine2::inverse() const {
    const double det = a11 * a22 - a12 * a21;
    if (std::abs(det) < 1e-14) throw SingularSystem("affine map is not invertible");
    Affine2 inv;
    inv.a11 = a22 / det;
    inv.a12 = -a12 / det;
    inv.a21 = -a21 / det;
    inv.a22 = a11 / det;
    inv.b1 = -(inv.a11 * b1 + inv.a12 * b2);
    inv.b2 = -(inv.a21 * b1 + inv.a22 * b2);
    return inv;
}

namespace {

// dense graded-layout polynomial product
std::vector<double> poly_mul(const std::vector<double>& p, int dp, const std::vector<double>& q,
                             int dq) {
    const auto mp = monomials_up_to(dp);
    const auto mq = monomials_up_to(dq);
    std::vector<double> out(static_cast<std::size_t>(AlgebraicCurve::coeff_count(dp + dq)), 0.0);
    for (std::size_t i = 0; i < mp.size(); ++i) {
        if (p[i] == 0.0) continue;
        for (std::size_t j = 0; j < mq.size(); ++j) {
            if (q[j] == 0.0) continue;
            out[static_cast<std::size_t>(
                mono_index(mp[i].first + mq[j].first, mp[i].second + mq[j].second))] += p[i] * q[j];
        }
    }
    return out;
}

}  // namespace

AlgebraicCurve pullback(const AlgebraicCurve& c, const Affine2& m) {
    const int d = c.degree;
    // powers of the two linear substitution polynomials
    std::vector<std::vector<double>> p1(static_cast<std::size_t>(d) + 1), p2(static_cast<std::size_t>(d) + 1);
    p1[0] = {1.0};
    p2[0] = {1.0};
    const std::vector<double> l1 = {m.b1, m.a11, m.a12};
    const std::vector<double> l2 = {m.b2, m.a21, m.a22};
    for (int k = 1; k <= d; ++k) {
        p1[static_cast<std::size_t>(k)] = poly_mul(p1[static_cast<std::size_t>(k - 1)], k - 1, l1, 1);
        p2[static_cast<std::size_t>(k)] = poly_mul(p2[static_cast<std::size_t>(k - 1)], k - 1, l2, 1);
    }
    std::vector<double> out(static_cast<std::size_t>(AlgebraicCurve::coeff_count(d)), 0.0);
    const auto ms = monomials_up_to(d);
    for (std::size_t i = 0; i < ms.size(); ++i) {
        if (c.coeffs[i] == 0.0) continue;
        const int a = ms[i].first, b = ms[i].second;
        const auto term = poly_mul(p1[static_cast<std::size_t>(a)], a, p2[static_cast<std::size_t>(b)], b);
        for (std::size_t k = 0; k < term.size(); ++k) out[k] += c.coeffs[i] * term[k];
    }
    AlgebraicCurve result;
    result.degree = d;
    result.coeffs = std::move(out);
    result.normalize();
    return result;
}

Mat condition_matrix(const PlaneCurve& curve, double s, int d, int rows) {
    if (d < 1 || d > 4) throw PreconditionError("degree must be between 1 and 4");
    const int ncols = AlgebraicCurve::coeff_count(d);
    if (rows > AlgebraicCurve::condition_count(d) + 1)
        throw PreconditionError("too many condition rows for this degree");
    Mat m(rows, ncols);
    if (rows == 0) return m;
    const auto [jx, jy] = curve.jets(s, rows - 1);
    const double sx = jx.derivative(1), sy = jy.derivative(1);
    const double speed = std::hypot(sx, sy);
    if (speed < 1e-10) throw PreconditionError("parameterization is singular at the contact point");
    const double lam = 1.0 / speed;
    const Jet X = (jx - jx.value()) * lam;
    const Jet Y = (jy - jy.value()) * lam;
    const auto ms = monomials_up_to(d);
    for (std::size_t col = 0; col < ms.size(); ++col) {
        const Jet term = pow_int(X, ms[col].first) * pow_int(Y, ms[col].second);
        for (int r = 0; r < rows; ++r) m(r, static_cast<int>(col)) = term.coeff(r);
    }
    return m;
}

namespace {

/// Null vector of the condition system in scaled coordinates, sign-aligned so
/// the osculant's gradient at the origin points along the curve's left
/// normal.  That orientation is smooth in s wherever the gradient is nonzero,
/// which keeps s -> coefficients continuous for finite differencing.
std::vector<double> scaled_null_vector(const PlaneCurve& curve, double s, int d, const Mat& m,
                                       double* sigma_ratio = nullptr) {
    const int n = AlgebraicCurve::condition_count(d);
    const Svd svd = svd_jacobi(m);
    const double smax = svd.sigma[0];
    const double second = svd.sigma[static_cast<std::size_t>(n - 1)];
    if (sigma_ratio) *sigma_ratio = (smax == 0.0) ? 0.0 : second / smax;
    if (second < 1e-8 * smax)
        throw RankDeficient("condition matrix is rank-deficient: curve is locally algebraic of lower degree or data degenerate");
    std::vector<double> v(static_cast<std::size_t>(n + 1));
    for (int i = 0; i <= n; ++i) v[static_cast<std::size_t>(i)] = svd.v(i, n);

    // orientation: gradient at the (scaled) origin dotted with the left normal
    const auto [jx, jy] = curve.jets(s, 1);
    const double sx = jx.derivative(1), sy = jy.derivative(1);
    const double speed = std::hypot(sx, sy);
    const double nx = -sy / speed, ny = sx / speed;
    // gradient of sum v_m X^a Y^b at X=Y=0 is (v[x-index], v[y-index])
    const double gx = v[static_cast<std::size_t>(mono_index(1, 0))];
    const double gy = v[static_cast<std::size_t>(mono_index(0, 1))];
    double orient = gx * nx + gy * ny;
    if (std::abs(orient) < 1e-12) {
        // fall back: first significant coefficient positive
        orient = 0.0;
        for (double c : v)
            if (std::abs(c) > 1e-12) {
                orient = c;
                break;
            }
    }
    if (orient < 0.0)
        for (double& c : v) c = -c;
    return v;
}

}  // namespace

AlgebraicCurve osculating_algebraic_curve(const PlaneCurve& curve, double s, int d) {
    const int n = AlgebraicCurve::condition_count(d);
    const Mat m = condition_matrix(curve, s, d, n);
    const std::vector<double> v = scaled_null_vector(curve, s, d, m);

    // defensive: the kernel vector must actually solve the conditions
    double resid = 0.0;
    for (int r = 0; r < n; ++r) {
        double acc = 0.0;
        for (int cidx = 0; cidx <= n; ++cidx) acc += m(r, cidx) * v[static_cast<std::size_t>(cidx)];
        resid = std::max(resid, std::abs(acc));
    }
    if (resid > 1e-6) throw RankDeficient("condition system left an unexpectedly large residual");

    // back to ambient coordinates: the scaled polynomial was in
    // X = (x - cx)/speed, Y = (y - cy)/speed.
    const auto [jx, jy] = curve.jets(s, 1);
    const double speed = std::hypot(jx.derivative(1), jy.derivative(1));
    const double lam = 1.0 / speed;
    Affine2 shift;
    shift.a11 = lam;
    shift.a22 = lam;
    shift.b1 = -lam * jx.value();
    shift.b2 = -lam * jy.value();

    AlgebraicCurve scaled;
    scaled.degree = d;
    scaled.coeffs = v;
    AlgebraicCurve ambient = pullback(scaled, shift);

    const auto [gx, gy] = ambient.gradient(jx.value(), jy.value());
    if (std::hypot(gx, gy) < 1e-8)
        throw RankDeficient("osculant is degenerate at the tangency: vanishing gradient");
    return ambient;
}

double extactic_indicator(const PlaneCurve& curve, double s, int d) {
    const int n = AlgebraicCurve::condition_count(d);
    const Mat full = condition_matrix(curve, s, d, n + 1);
    Mat m(n, full.cols);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < full.cols; ++c) m(r, c) = full(r, c);
    const std::vector<double> v = scaled_null_vector(curve, s, d, m);
    double acc = 0.0;
    for (int c = 0; c <= n; ++c) acc += full(n, c) * v[static_cast<std::size_t>(c)];
    return acc;
}

RootScan find_extactic_points(const PlaneCurve& curve, double lo, double hi, int d) {
    if (!(lo < hi)) throw PreconditionError("interval requires lo < hi");
    return scan_roots([&](double s) { return extactic_indicator(curve, s, d); }, lo, hi);
}

std::string to_string(ConicClass c) {
    switch (c) {
        case ConicClass::Ellipse: return "ellipse";
        case ConicClass::Parabola: return "parabola";
        case ConicClass::Hyperbola: return "hyperbola";
        case ConicClass::Degenerate: return "degenerate";
    }
    return "degenerate";
}

ConicClass classify_conic(const AlgebraicCurve& c) {
    if (c.degree != 2) throw PreconditionError("classification requires degree 2");
    double norm = 0.0;
    for (double v : c.coeffs) norm = std::max(norm, std::abs(v));
    if (norm == 0.0) return ConicClass::Degenerate;
    const double F = c.coeffs[0], D = c.coeffs[1], E = c.coeffs[2];
    const double A = c.coeffs[3], B = c.coeffs[4], C = c.coeffs[5];
    Mat q(3, 3);
    q(0, 0) = A;       q(0, 1) = B / 2.0; q(0, 2) = D / 2.0;
    q(1, 0) = B / 2.0; q(1, 1) = C;       q(1, 2) = E / 2.0;
    q(2, 0) = D / 2.0; q(2, 1) = E / 2.0; q(2, 2) = F;
    const double detq = determinant(q);
    if (std::abs(detq) <= 1e-10 * norm * norm * norm) return ConicClass::Degenerate;
    const double disc = B * B - 4.0 * A * C;
    if (std::abs(disc) <= 1e-10 * norm * norm) return ConicClass::Parabola;
    return disc < 0.0 ? ConicClass::Ellipse : ConicClass::Hyperbola;
}

OsculatingCircle osculating_circle(const PlaneCurve& curve, double s) {
    const auto [jx, jy] = curve.jets(s, 2);
    const double x1 = jx.derivative(1), y1 = jy.derivative(1);
    const double x2 = jx.derivative(2), y2 = jy.derivative(2);
    const double speed = std::hypot(x1, y1);
    if (speed < 1e-10) throw PreconditionError("parameterization is singular at the contact point");
    const double kappa = (x1 * y2 - y1 * x2) / (speed * speed * speed);
    if (std::abs(kappa) < 1e-10) throw ZeroCurvature("curvature vanishes: the osculating circle is a line");
    OsculatingCircle c;
    c.curvature = kappa;
    c.radius = 1.0 / std::abs(kappa);
    c.tangency = {jx.value(), jy.value()};
    const double nx = -y1 / speed, ny = x1 / speed;
    c.center = {c.tangency.x + nx / kappa, c.tangency.y + ny / kappa};
    return c;
}

namespace {

// curvature and its derivative from order-3 jets
std::pair<double, double> curvature_pair(const PlaneCurve& curve, double s) {
    const auto [jx, jy] = curve.jets(s, 3);
    const Jet x1 = jx.derivative_jet();   // order 2
    const Jet y1 = jy.derivative_jet();
    const Jet x2 = x1.derivative_jet();   // order 1
    const Jet y2 = y1.derivative_jet();
    const Jet num = x1.truncated(1) * y2 - y1.truncated(1) * x2;
    const Jet speed2 = x1.truncated(1) * x1.truncated(1) + y1.truncated(1) * y1.truncated(1);
    const Jet kappa = num / pow(speed2, 1.5);
    return {kappa.value(), kappa.derivative(1)};
}

}  // namespace

RootScan find_vertices(const PlaneCurve& curve, double lo, double hi) {
    if (!(lo < hi)) throw PreconditionError("interval requires lo < hi");
    for (int i = 0; i <= 512; ++i) {
        const double s = lo + (hi - lo) * i / 512.0;
        if (std::abs(curvature_pair(curve, s).first) < 1e-10)
            throw ZeroCurvature("curvature vanishes inside the interval");
    }
    return scan_roots([&](double s) { return curvature_pair(curve, s).second; }, lo, hi);
}

double schwarzian(const Expr& f, double t) {
    const Jet j = eval_jet1(f, Jet::variable(t, 3));
    const double f1 = j.derivative(1), f2 = j.derivative(2), f3 = j.derivative(3);
    if (std::abs(f1) < 1e-12)
        throw CriticalPoint("derivative vanishes: fractional-linear osculant undefined");
    const double r = f2 / f1;
    return f3 / f1 - 1.5 * r * r;
}

RootScan find_schwarzian_zeros(const Expr& f, double lo, double hi) {
    if (!(lo < hi)) throw PreconditionError("interval requires lo < hi");
    return scan_roots([&](double t) { return schwarzian(f, t); }, lo, hi);
}

double MobiusOsculant::eval(double x) const {
    if (line) return slope * x + intercept;
    return q + c / (x - p);
}

MobiusOsculant osculating_mobius(const Expr& f, double t) {
    const Jet j = eval_jet1(f, Jet::variable(t, 2));
    const double f0 = j.value(), f1 = j.derivative(1), f2 = j.derivative(2);
    if (std::abs(f1) < 1e-12)
        throw CriticalPoint("derivative vanishes: fractional-linear osculant undefined");
    MobiusOsculant g;
    if (std::abs(f2) <= 1e-10) {
        g.line = true;
        g.slope = f1;
        g.intercept = f0 - f1 * t;
        return g;
    }
    g.p = t + 2.0 * f1 / f2;
    g.c = -4.0 * f1 * f1 * f1 / (f2 * f2);
    g.q = f0 - g.c / (t - g.p);
    return g;
}

}  // namespace osc
