// SPDX-License-Identifier: Apache-2.0
#include "osc/taylor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "osc/parallel.hpp"

namespace osc {

double TaylorOsculant::operator()(double x) const {
    const double h = x - t;
    double acc = 0.0;
    for (std::size_t i = local_coeffs.size(); i-- > 0;) acc = acc * h + local_coeffs[i];
    return acc;
}

double TaylorOsculant::derivative(double x, int j) const {
    if (j < 0) throw PreconditionError("derivative order must be >= 0");
    const double h = x - t;
    double acc = 0.0;
    for (int i = n; i >= j; --i) {
        double fall = 1.0;  // i (i-1) ... (i-j+1)
        for (int k = 0; k < j; ++k) fall *= static_cast<double>(i - k);
        acc = acc * h + fall * local_coeffs[static_cast<std::size_t>(i)];
    }
    return acc;
}

std::vector<double> TaylorOsculant::monomial_coeffs() const {
    // expand sum c_i (x - t)^i by repeated multiplication
    std::vector<double> out(static_cast<std::size_t>(n) + 1, 0.0);
    for (int i = n; i >= 0; --i) {
        // out = out * (x - t) + c_i
        for (std::size_t k = out.size(); k-- > 1;) out[k] = out[k - 1] - t * out[k];
        out[0] = -t * out[0] + local_coeffs[static_cast<std::size_t>(i)];
    }
    return out;
}

TaylorOsculant osculating_polynomial(const Expr& f, double t, int n) {
    if (n < 1) throw PreconditionError("osculant degree must be >= 1");
    const Jet j = eval_jet1(f, Jet::variable(t, n));
    TaylorOsculant g;
    g.t = t;
    g.n = n;
    g.local_coeffs.assign(j.coeffs().begin(), j.coeffs().begin() + n + 1);
    return g;
}

double family_derivative(const Expr& f, double t, int n, double x) {
    const Jet j = eval_jet1(f, Jet::variable(t, n + 1));
    double pw = 1.0;
    for (int k = 0; k < n; ++k) pw *= (x - t);
    return j.derivative(n + 1) * pw / static_cast<double>(Jet::factorial(n));
}

RootScan find_polynomial_vertices(const Expr& f, double lo, double hi, int n) {
    if (!(lo < hi)) throw PreconditionError("interval requires lo < hi");
    return scan_roots(
        [&](double t) { return eval_jet1(f, Jet::variable(t, n + 1)).derivative(n + 1); }, lo, hi);
}

VerificationReport verify_disjoint_graphs(const Expr& f, double lo, double hi, int n,
                                          const DisjointGraphOptions& opts) {
    if (!(lo < hi)) throw PreconditionError("interval requires lo < hi");
    if (n < 1) throw PreconditionError("osculant degree must be >= 1");
    if (opts.t_samples < 2 || opts.x_samples < 2)
        throw PreconditionError("need at least 2 samples in each direction");

    // Precondition: the (n+1)-st derivative may not vanish on the interval.
    const RootScan vertices = find_polynomial_vertices(f, lo, hi, n);
    if (!vertices.roots.empty()) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "vertex at t=%g inside interval", vertices.roots[0].t);
        throw PreconditionError(buf);
    }
    double margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 512; ++i) {
        const double t = lo + (hi - lo) * i / 512.0;
        margin = std::min(margin, std::abs(eval_jet1(f, Jet::variable(t, n + 1)).derivative(n + 1)));
    }
    if (margin < 1e-8) {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "derivative margin %.3g below 1e-8 on the interval", margin);
        throw PreconditionError(buf);
    }

    const bool even = (n % 2 == 0);
    const double len = hi - lo;
    const double wlo = even ? (opts.window ? opts.window->first : lo - 2.0 * len - 1.0) : hi;
    const double whi = even ? (opts.window ? opts.window->second : hi + 2.0 * len + 1.0)
                            : (opts.x_max ? *opts.x_max : hi + 2.0 * len + 1.0);
    if (!(wlo < whi)) throw PreconditionError("x-window requires lo < hi");

    const int T = opts.t_samples, X = opts.x_samples;
    std::vector<double> ts(static_cast<std::size_t>(T));
    std::vector<TaylorOsculant> gs;
    gs.reserve(static_cast<std::size_t>(T));
    for (int i = 0; i < T; ++i) {
        ts[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (T - 1);
        gs.push_back(osculating_polynomial(f, ts[static_cast<std::size_t>(i)], n));
    }

    VerificationReport rep;
    rep.family = "taylor";
    rep.theorem = even ? "taylor-even" : "taylor-odd";
    rep.params = {{"n", n},
                  {"interval", {lo, hi}},
                  {"derivative_margin", margin},
                  {"margin_floor", 1e-8}};
    rep.grid = {{"t_samples", T}, {"x_samples", X}, {"window", {wlo, whi}}};

    const std::size_t npairs = static_cast<std::size_t>(T) * (T - 1) / 2;
    rep.pairs.assign(npairs, PairResult{});
    std::vector<std::pair<int, int>> idx;
    idx.reserve(npairs);
    for (int a = 0; a < T; ++a)
        for (int b = a + 1; b < T; ++b) idx.emplace_back(a, b);

    parallel_for(npairs, [&](std::size_t k) {
        const auto [ia, ib] = idx[k];
        const TaylorOsculant& ga = gs[static_cast<std::size_t>(ia)];
        const TaylorOsculant& gb = gs[static_cast<std::size_t>(ib)];
        // Odd degree: the guarantee starts at the larger parameter.
        const double plo = even ? wlo : ts[static_cast<std::size_t>(ib)];
        const double phi = whi;
        PairResult pr;
        pr.a = ts[static_cast<std::size_t>(ia)];
        pr.b = ts[static_cast<std::size_t>(ib)];
        pr.min_gap = std::numeric_limits<double>::infinity();
        double worst_x = plo;
        bool crossed = false;
        double prev = 0.0;
        for (int j = 0; j < X; ++j) {
            const double x = plo + (phi - plo) * j / (X - 1);
            const double diff = gb(x) - ga(x);
            if (j > 0 && (diff > 0.0) != (prev > 0.0)) crossed = true;
            prev = diff;
            const double gap = std::abs(diff);
            if (gap < pr.min_gap) {
                pr.min_gap = gap;
                worst_x = x;
            }
        }
        if (crossed || pr.min_gap == 0.0) {
            pr.verdict = Verdict::Intersecting;
            pr.witness = {{worst_x, 0.5 * (ga(worst_x) + gb(worst_x))}};
        } else {
            pr.verdict = Verdict::Disjoint;
        }
        rep.pairs[k] = pr;
    });

    bool all_disjoint = true;
    for (const auto& p : rep.pairs) all_disjoint = all_disjoint && (p.verdict == Verdict::Disjoint);

    // Monotonicity cross-check: for fixed x outside the parameter interval,
    // t -> g_t(x) moves strictly in the direction dictated by the signs of
    // f^(n+1) and (x - t)^n.
    const double sign_fn1 =
        (eval_jet1(f, Jet::variable(0.5 * (lo + hi), n + 1)).derivative(n + 1) > 0.0) ? 1.0 : -1.0;
    bool monotone_ok = true;
    for (int j = 0; j < X && monotone_ok; ++j) {
        const double x = wlo + (whi - wlo) * j / (X - 1);
        if (x >= lo - 1e-12 && x <= hi + 1e-12) continue;
        const double dir = sign_fn1 * ((even || x > hi) ? 1.0 : -1.0);
        for (int i = 0; i + 1 < T; ++i) {
            const double d = gs[static_cast<std::size_t>(i + 1)](x) - gs[static_cast<std::size_t>(i)](x);
            if (d * dir <= 0.0) {
                monotone_ok = false;
                break;
            }
        }
    }
    if (!monotone_ok) {
        rep.notes.push_back("monotonicity cross-check failed outside the parameter interval");
        all_disjoint = false;
    }

    rep.verdict = all_disjoint ? Verdict::Disjoint : Verdict::Intersecting;
    return rep;
}

}  // namespace osc
