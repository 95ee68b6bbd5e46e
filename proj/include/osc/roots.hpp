// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "osc/errors.hpp"

namespace osc {

/// One located zero of a scalar function.  plateau marks roots recovered
/// from a near-zero dip without a sign change (even-order zeros); those
/// locations are minima-refined rather than bracketed.
struct Root {
    double t = 0.0;
    bool plateau = false;
};

struct RootScan {
    std::vector<Root> roots;
    bool identically_zero = false;  // |f| below plateau_tol over the whole grid
};

/// Sign-change scan on a uniform grid with bisection refinement.
/// grid intervals: grid_n (so grid_n + 1 samples including endpoints).
inline RootScan scan_roots(const std::function<double(double)>& f, double lo, double hi,
                           int grid_n = 512, double refine_tol = 1e-10, double plateau_tol = 1e-9) {
    if (!(lo < hi)) throw std::invalid_argument("scan_roots requires lo < hi");
    RootScan out;
    const double h = (hi - lo) / grid_n;
    std::vector<double> xs(static_cast<std::size_t>(grid_n + 1));
    std::vector<double> fs(static_cast<std::size_t>(grid_n + 1));
    double max_abs = 0.0;
    for (int i = 0; i <= grid_n; ++i) {
        xs[static_cast<std::size_t>(i)] = (i == grid_n) ? hi : lo + i * h;
        fs[static_cast<std::size_t>(i)] = f(xs[static_cast<std::size_t>(i)]);
        max_abs = std::max(max_abs, std::abs(fs[static_cast<std::size_t>(i)]));
    }
    if (max_abs <= plateau_tol) {
        out.identically_zero = true;
        return out;
    }

    auto push_unique = [&](double t, bool plateau) {
        for (const Root& r : out.roots)
            if (std::abs(r.t - t) <= 16.0 * refine_tol) return;
        out.roots.push_back({t, plateau});
    };

    // Exact hits and bracketed sign changes.  An exact hit whose nonzero
    // neighbors agree in sign is a touch without crossing, i.e. a plateau.
    for (int i = 0; i <= grid_n; ++i) {
        if (fs[static_cast<std::size_t>(i)] != 0.0) continue;
        int l = i - 1, r = i + 1;
        while (l >= 0 && fs[static_cast<std::size_t>(l)] == 0.0) --l;
        while (r <= grid_n && fs[static_cast<std::size_t>(r)] == 0.0) ++r;
        bool plateau = false;
        if (l >= 0 && r <= grid_n)
            plateau = (fs[static_cast<std::size_t>(l)] > 0.0) == (fs[static_cast<std::size_t>(r)] > 0.0);
        push_unique(xs[static_cast<std::size_t>(i)], plateau);
    }
    for (int i = 0; i < grid_n; ++i) {
        const double fa = fs[static_cast<std::size_t>(i)], fb = fs[static_cast<std::size_t>(i + 1)];
        if (fa == 0.0 || fb == 0.0) continue;
        if ((fa > 0.0) == (fb > 0.0)) continue;
        double a = xs[static_cast<std::size_t>(i)], b = xs[static_cast<std::size_t>(i + 1)];
        double va = fa;
        while (b - a > refine_tol) {
            const double m = 0.5 * (a + b);
            const double vm = f(m);
            if (vm == 0.0) { a = b = m; break; }
            if ((va > 0.0) != (vm > 0.0)) {
                b = m;
            } else {
                a = m;
                va = vm;
            }
        }
        push_unique(0.5 * (a + b), false);
    }

    // Near-zero dips without a sign change: refine the local |f| minimum by
    // golden-section and accept it when it sinks below plateau_tol.
    const double inv_phi = 0.6180339887498949;
    for (int i = 1; i < grid_n; ++i) {
        const double am = std::abs(fs[static_cast<std::size_t>(i - 1)]);
        const double ac = std::abs(fs[static_cast<std::size_t>(i)]);
        const double ap = std::abs(fs[static_cast<std::size_t>(i + 1)]);
        if (!(ac <= am && ac <= ap)) continue;
        const double sl = fs[static_cast<std::size_t>(i - 1)], sc = fs[static_cast<std::size_t>(i)],
                     sr = fs[static_cast<std::size_t>(i + 1)];
        if ((sl > 0.0) != (sc > 0.0) || (sc > 0.0) != (sr > 0.0)) continue;  // handled as sign change
        double a = xs[static_cast<std::size_t>(i - 1)], b = xs[static_cast<std::size_t>(i + 1)];
        double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
        double f1 = std::abs(f(x1)), f2 = std::abs(f(x2));
        while (b - a > refine_tol) {
            if (f1 < f2) {
                b = x2; x2 = x1; f2 = f1;
                x1 = b - inv_phi * (b - a);
                f1 = std::abs(f(x1));
            } else {
                a = x1; x1 = x2; f1 = f2;
                x2 = a + inv_phi * (b - a);
                f2 = std::abs(f(x2));
            }
        }
        const double xm = 0.5 * (a + b);
        if (std::abs(f(xm)) <= plateau_tol) push_unique(xm, true);
    }

    std::sort(out.roots.begin(), out.roots.end(), [](const Root& a, const Root& b) { return a.t < b.t; });
    return out;
}

}  // namespace osc
