// SPDX-License-Identifier: Apache-2.0
#include "osc/chebyshev.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "osc/linalg.hpp"
#include "osc/parallel.hpp"

namespace osc {

namespace {

/// N x N matrix M(j, i) = (d/dx)^j f_i at t, plus the source derivative
/// column when f is provided.
Mat derivative_matrix(const std::vector<Expr>& basis, double t) {
    const int N = static_cast<int>(basis.size());
    Mat m(N, N);
    for (int i = 0; i < N; ++i) {
        const Jet j = eval_jet1(basis[static_cast<std::size_t>(i)], Jet::variable(t, N - 1));
        for (int r = 0; r < N; ++r) m(r, i) = j.derivative(r);
    }
    return m;
}

}  // namespace

ChebSystem::ChebSystem(std::vector<Expr> basis, double lo, double hi)
    : basis_(std::move(basis)), lo_(lo), hi_(hi) {
    if (basis_.empty()) throw PreconditionError("system needs at least one basis function");
    if (!(lo_ < hi_)) throw PreconditionError("system domain requires lo < hi");
    for (int i = 0; i <= 256; ++i) {
        const double t = lo_ + (hi_ - lo_) * i / 256.0;
        const double w = determinant(derivative_matrix(basis_, t));
        if (std::abs(w) < 1e-10) {
            char buf[96];
            std::snprintf(buf, sizeof(buf), "basis Wronskian %.3g vanishes near t=%g", w, t);
            throw PreconditionError(buf);
        }
    }
}

ChebSystem trig_basis(int n) {
    if (n < 1) throw PreconditionError("trigonometric degree must be >= 1");
    std::vector<Expr> basis;
    basis.push_back(Expr::constant(1.0));
    const Expr t = Expr::variable("t");
    for (int k = 1; k <= n; ++k) {
        const Expr kt = (k == 1) ? t : Expr::binary(BinaryOp::Mul, Expr::constant(k), t);
        basis.push_back(Expr::unary(UnaryFn::Cos, kt));
        basis.push_back(Expr::unary(UnaryFn::Sin, kt));
    }
    ChebSystem sys(std::move(basis), 0.0, 2.0 * M_PI);
    sys.trig_n_ = n;
    return sys;
}

double wronskian(const ChebSystem& sys, double t) {
    return determinant(derivative_matrix(sys.basis(), t));
}

double ChebOsculant::operator()(double x) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i) acc += coeffs[i] * eval_real1(basis[i], x);
    return acc;
}

double ChebOsculant::derivative(double x, int j) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i)
        acc += coeffs[i] * eval_jet1(basis[i], Jet::variable(x, j)).derivative(j);
    return acc;
}

ChebOsculant osculating_element(const ChebSystem& sys, const Expr& f, double t) {
    const int N = sys.N();
    const Mat m = derivative_matrix(sys.basis(), t);
    if (std::abs(determinant(m)) < 1e-10) throw SingularSystem("basis Wronskian vanishes at the contact point");
    const Jet jf = eval_jet1(f, Jet::variable(t, N - 1));
    std::vector<double> rhs(static_cast<std::size_t>(N));
    for (int r = 0; r < N; ++r) rhs[static_cast<std::size_t>(r)] = jf.derivative(r);
    std::vector<double> c = solve(m, rhs);

    // residual check against the right-hand side scale
    double rhs_norm = 0.0, res_norm = 0.0;
    for (int r = 0; r < N; ++r) {
        double acc = -rhs[static_cast<std::size_t>(r)];
        for (int i = 0; i < N; ++i) acc += m(r, i) * c[static_cast<std::size_t>(i)];
        res_norm += acc * acc;
        rhs_norm += rhs[static_cast<std::size_t>(r)] * rhs[static_cast<std::size_t>(r)];
    }
    if (std::sqrt(res_norm) > 1e-9 * std::max(1.0, std::sqrt(rhs_norm)))
        throw SingularSystem("interpolation residual too large; system is ill-conditioned here");

    ChebOsculant g;
    g.t = t;
    g.basis = sys.basis();
    g.coeffs = std::move(c);
    return g;
}

std::vector<long long> annihilator_coeffs(int n) {
    if (n < 1) throw PreconditionError("annihilator degree must be >= 1");
    if (n > 12) throw PreconditionError("annihilator degree capped at 12 (integer overflow)");
    // polynomial in d, starting from the single factor d
    std::vector<long long> poly{0, 1};
    for (int i = 1; i <= n; ++i) {
        // multiply by (d^2 + i^2)
        std::vector<long long> next(poly.size() + 2, 0);
        const long long ii = static_cast<long long>(i) * i;
        for (std::size_t k = 0; k < poly.size(); ++k) {
            next[k] += poly[k] * ii;
            next[k + 2] += poly[k];
        }
        poly = std::move(next);
    }
    // only odd powers are populated: poly[2k+1] multiplies d^(2k+1)
    std::vector<long long> odd(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) odd[static_cast<std::size_t>(k)] = poly[static_cast<std::size_t>(2 * k + 1)];
    return odd;
}

double apply_D(const Expr& f, int n, double t) {
    const auto alpha = annihilator_coeffs(n);
    const Jet j = eval_jet1(f, Jet::variable(t, 2 * n + 1));
    double acc = 0.0;
    for (int k = 0; k <= n; ++k)
        acc += static_cast<double>(alpha[static_cast<std::size_t>(k)]) * j.derivative(2 * k + 1);
    return acc;
}

RootScan find_flexes(const Expr& f, int n, double lo, double hi) {
    if (!(lo < hi)) throw PreconditionError("interval requires lo < hi");
    return scan_roots([&](double t) { return apply_D(f, n, t); }, lo, hi);
}

VerificationReport verify_disjoint_cheb(const ChebSystem& sys, const Expr& f, double lo, double hi,
                                        double wlo, double whi, const ChebVerifyOptions& opts) {
    if (!(lo < hi) || !(wlo < whi)) throw PreconditionError("intervals require lo < hi");
    if (opts.t_samples < 2 || opts.x_samples < 2)
        throw PreconditionError("need at least 2 samples in each direction");
    const int N = sys.N();

    VerificationReport rep;
    rep.family = "cheb";
    rep.theorem = "trig";
    rep.grid = {{"t_samples", opts.t_samples}, {"x_samples", opts.x_samples}, {"window", {wlo, whi}}};
    nlohmann::json basis_names = nlohmann::json::array();
    for (const Expr& b : sys.basis()) basis_names.push_back(b.print());
    rep.params = {{"interval", {lo, hi}}, {"N", N}, {"basis", basis_names}};

    // Hyper-osculation precondition.
    if (sys.is_trig()) {
        const RootScan flexes = find_flexes(f, sys.trig_n(), lo, hi);
        if (flexes.identically_zero)
            throw PreconditionError(
                "source is itself an element of the system; the family is constant");
        if (!flexes.roots.empty()) {
            char buf[96];
            std::snprintf(buf, sizeof(buf), "flex at t=%g inside interval", flexes.roots[0].t);
            throw PreconditionError(buf);
        }
        // Non-periodic sources are analysed on the interval, not the circle.
        bool periodic = true;
        for (int i = 0; i <= 8; ++i) {
            const double x = lo + (hi - lo) * i / 8.0;
            const double a = eval_real1(f, x), b = eval_real1(f, x + 2.0 * M_PI);
            if (std::abs(a - b) > 1e-9 * std::max({1.0, std::abs(a), std::abs(b)})) {
                periodic = false;
                break;
            }
        }
        if (!periodic)
            rep.notes.push_back(
                "source is not 2*pi-periodic; verified on the stated interval only");
    } else {
        // General system: the N-th-derivative mismatch at the contact point
        // must stay away from zero.
        double margin = std::numeric_limits<double>::infinity();
        for (int i = 0; i < opts.t_samples; ++i) {
            const double t = lo + (hi - lo) * i / (opts.t_samples - 1);
            const ChebOsculant g = osculating_element(sys, f, t);
            const double mism = eval_jet1(f, Jet::variable(t, N)).derivative(N) - g.derivative(t, N);
            margin = std::min(margin, std::abs(mism));
        }
        if (margin < 1e-8) {
            char buf[128];
            std::snprintf(buf, sizeof(buf),
                          "hyper-osculation margin %.3g below 1e-8 on the interval", margin);
            throw PreconditionError(buf);
        }
        rep.params["hyper_margin"] = margin;
    }

    const int T = opts.t_samples, X = opts.x_samples;
    std::vector<double> ts(static_cast<std::size_t>(T));
    std::vector<ChebOsculant> gs(static_cast<std::size_t>(T));
    for (int i = 0; i < T; ++i) ts[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (T - 1);
    parallel_for(static_cast<std::size_t>(T), [&](std::size_t i) {
        gs[i] = osculating_element(sys, f, ts[i]);
    });

    // Pre-tabulate basis values over the x grid; members are then dot products.
    std::vector<double> xs(static_cast<std::size_t>(X));
    for (int j = 0; j < X; ++j) xs[static_cast<std::size_t>(j)] = wlo + (whi - wlo) * j / (X - 1);
    std::vector<std::vector<double>> bx(static_cast<std::size_t>(N),
                                        std::vector<double>(static_cast<std::size_t>(X)));
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < X; ++j)
            bx[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                eval_real1(sys.basis()[static_cast<std::size_t>(i)], xs[static_cast<std::size_t>(j)]);
    auto member_at = [&](const ChebOsculant& g, int j) {
        double acc = 0.0;
        for (int i = 0; i < N; ++i)
            acc += g.coeffs[static_cast<std::size_t>(i)] *
                   bx[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        return acc;
    };

    const std::size_t npairs = static_cast<std::size_t>(T) * (T - 1) / 2;
    std::vector<std::pair<int, int>> idx;
    idx.reserve(npairs);
    for (int a = 0; a < T; ++a)
        for (int b = a + 1; b < T; ++b) idx.emplace_back(a, b);
    rep.pairs.assign(npairs, PairResult{});

    parallel_for(npairs, [&](std::size_t k) {
        const auto [ia, ib] = idx[k];
        PairResult pr;
        pr.a = ts[static_cast<std::size_t>(ia)];
        pr.b = ts[static_cast<std::size_t>(ib)];
        pr.min_gap = std::numeric_limits<double>::infinity();
        double worst_x = wlo;
        bool crossed = false;
        double prev = 0.0;
        for (int j = 0; j < X; ++j) {
            const double diff = member_at(gs[static_cast<std::size_t>(ib)], j) -
                                member_at(gs[static_cast<std::size_t>(ia)], j);
            if (j > 0 && (diff > 0.0) != (prev > 0.0)) crossed = true;
            prev = diff;
            const double gap = std::abs(diff);
            if (gap < pr.min_gap) {
                pr.min_gap = gap;
                worst_x = xs[static_cast<std::size_t>(j)];
            }
        }
        if (crossed || pr.min_gap == 0.0) {
            pr.verdict = Verdict::Intersecting;
            pr.witness = {{worst_x, 0.5 * (gs[static_cast<std::size_t>(ia)](worst_x) +
                                           gs[static_cast<std::size_t>(ib)](worst_x))}};
        } else {
            pr.verdict = Verdict::Disjoint;
        }
        rep.pairs[k] = pr;
    });

    bool all_disjoint = true;
    for (const auto& p : rep.pairs) all_disjoint = all_disjoint && (p.verdict == Verdict::Disjoint);

    // Mechanism check: the t-velocity u(x) = sum_i c_i'(t) f_i(x) of the
    // family must vanish to order N-1 at the tangency and keep one sign
    // across the window (its zero there has even order, so no crossing).
    bool mechanism_ok = true;
    const double hstep = 1e-5;
    for (int i = 0; i < T && mechanism_ok; i += std::max(1, T / 8)) {
        const double t = ts[static_cast<std::size_t>(i)];
        if (t - hstep < lo || t + hstep > hi) continue;
        const ChebOsculant gp = osculating_element(sys, f, t + hstep);
        const ChebOsculant gm = osculating_element(sys, f, t - hstep);
        std::vector<double> dc(static_cast<std::size_t>(N));
        double dc_norm = 0.0;
        for (int q = 0; q < N; ++q) {
            dc[static_cast<std::size_t>(q)] =
                (gp.coeffs[static_cast<std::size_t>(q)] - gm.coeffs[static_cast<std::size_t>(q)]) /
                (2.0 * hstep);
            dc_norm = std::max(dc_norm, std::abs(dc[static_cast<std::size_t>(q)]));
        }
        const Mat m = derivative_matrix(sys.basis(), t);
        std::vector<double> v(static_cast<std::size_t>(N), 0.0);
        for (int r = 0; r < N; ++r)
            for (int q = 0; q < N; ++q)
                v[static_cast<std::size_t>(r)] += m(r, q) * dc[static_cast<std::size_t>(q)];
        const double scale = std::max(1e-30, std::abs(v[static_cast<std::size_t>(N - 1)]));
        for (int r = 0; r + 1 < N; ++r)
            if (std::abs(v[static_cast<std::size_t>(r)]) > 1e-4 * std::max(scale, dc_norm))
                mechanism_ok = false;
        // one sign across the window away from the tangency
        int sign = 0;
        for (int j = 0; j < X; ++j) {
            const double x = xs[static_cast<std::size_t>(j)];
            if (std::abs(x - t) < 0.25) continue;
            double u = 0.0;
            for (int q = 0; q < N; ++q)
                u += dc[static_cast<std::size_t>(q)] *
                     bx[static_cast<std::size_t>(q)][static_cast<std::size_t>(j)];
            if (std::abs(u) <= 1e-9 * std::max(1.0, dc_norm)) continue;
            const int s = u > 0.0 ? 1 : -1;
            if (sign == 0) sign = s;
            if (s != sign) mechanism_ok = false;
        }
    }
    if (!mechanism_ok) {
        rep.notes.push_back("family-velocity mechanism check failed");
        all_disjoint = false;
    }

    rep.verdict = all_disjoint ? Verdict::Disjoint : Verdict::Intersecting;
    return rep;
}

}  // namespace osc
