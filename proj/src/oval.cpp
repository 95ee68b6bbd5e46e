// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <set>
#include <unordered_map>
#include <vector>

#include "osc/algebraic.hpp"

namespace osc {

namespace {

struct MarchResult {
    std::vector<std::vector<Point>> chains;
    std::vector<bool> closed;
};

// Contour f = 0 on [x0, x0 + n dx] x [y0, y0 + n dy] by marching squares.
// Segments are stitched into chains via shared grid edges; saddle cells are
// disambiguated by the cell-center sign.
MarchResult march(const AlgebraicCurve& c, double x0, double y0, double dx, double dy, int n) {
    const int nn = n + 1;
    std::vector<double> f(static_cast<std::size_t>(nn) * nn);
    for (int j = 0; j < nn; ++j)
        for (int i = 0; i < nn; ++i)
            f[static_cast<std::size_t>(j) * nn + i] = c.eval(x0 + i * dx, y0 + j * dy);

    auto fv = [&](int i, int j) { return f[static_cast<std::size_t>(j) * nn + i]; };
    auto neg = [&](int i, int j) { return fv(i, j) < 0.0; };

    // edge keys: horizontal (i,j)-(i+1,j) -> 2*(j*nn+i), vertical (i,j)-(i,j+1) -> +1
    auto hkey = [&](int i, int j) { return (static_cast<std::int64_t>(j) * nn + i) * 2; };
    auto vkey = [&](int i, int j) { return (static_cast<std::int64_t>(j) * nn + i) * 2 + 1; };

    auto edge_point = [&](std::int64_t key) -> Point {
        const bool vertical = key & 1;
        const std::int64_t cell = key >> 1;
        const int i = static_cast<int>(cell % nn), j = static_cast<int>(cell / nn);
        if (!vertical) {
            const double fa = fv(i, j), fb = fv(i + 1, j);
            const double t = fa / (fa - fb);
            return {x0 + (i + t) * dx, y0 + j * dy};
        }
        const double fa = fv(i, j), fb = fv(i, j + 1);
        const double t = fa / (fa - fb);
        return {x0 + i * dx, y0 + (j + t) * dy};
    };

    std::unordered_map<std::int64_t, std::vector<std::int64_t>> adj;
    auto link = [&](std::int64_t a, std::int64_t b) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    };

    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const int code = (neg(i, j) ? 1 : 0) | (neg(i + 1, j) ? 2 : 0) | (neg(i + 1, j + 1) ? 4 : 0) |
                             (neg(i, j + 1) ? 8 : 0);
            if (code == 0 || code == 15) continue;
            const std::int64_t bottom = hkey(i, j), top = hkey(i, j + 1);
            const std::int64_t left = vkey(i, j), right = vkey(i + 1, j);
            switch (code) {
                case 1: case 14: link(left, bottom); break;
                case 2: case 13: link(bottom, right); break;
                case 4: case 11: link(right, top); break;
                case 8: case 7: link(top, left); break;
                case 3: case 12: link(left, right); break;
                case 6: case 9: link(bottom, top); break;
                case 5: case 10: {
                    const double fc = c.eval(x0 + (i + 0.5) * dx, y0 + (j + 0.5) * dy);
                    const bool center_neg = fc < 0.0;
                    const bool diag_bl = (code == 5);  // negative corners on the BL-TR diagonal
                    if (diag_bl == center_neg) {
                        link(left, top);
                        link(bottom, right);
                    } else {
                        link(left, bottom);
                        link(right, top);
                    }
                    break;
                }
                default: break;
            }
        }
    }

    MarchResult out;
    std::set<std::pair<std::int64_t, std::int64_t>> used;
    auto seg_key = [](std::int64_t a, std::int64_t b) {
        return std::make_pair(std::min(a, b), std::max(a, b));
    };

    // every vertex of the stitch graph has degree <= 2, so components are
    // simple paths or cycles; trace paths from their endpoints first
    auto walk = [&](std::int64_t head) {
        std::vector<std::int64_t> path{head};
        std::int64_t cur = head, from = -1;
        bool closed = false;
        while (true) {
            std::int64_t next = -1;
            for (std::int64_t cand : adj[cur])
                if (cand != from && !used.count(seg_key(cur, cand))) {
                    next = cand;
                    break;
                }
            if (next == -1) break;
            used.insert(seg_key(cur, next));
            path.push_back(next);
            from = cur;
            cur = next;
            if (cur == head) {
                closed = true;
                path.pop_back();
                break;
            }
        }
        if (path.size() < 3) return;
        std::vector<Point> pts;
        pts.reserve(path.size());
        for (std::int64_t k : path) pts.push_back(edge_point(k));
        out.chains.push_back(std::move(pts));
        out.closed.push_back(closed);
    };

    for (const auto& [edge, nbrs] : adj)
        if (nbrs.size() == 1 && !used.count(seg_key(edge, nbrs[0]))) walk(edge);
    for (const auto& [edge, nbrs] : adj)
        for (std::int64_t nb : nbrs)
            if (!used.count(seg_key(edge, nb))) walk(edge);
    return out;
}

double newton_step(const AlgebraicCurve& c, Point& p) {
    const double val = c.eval(p.x, p.y);
    const auto [gx, gy] = c.gradient(p.x, p.y);
    const double g2 = gx * gx + gy * gy;
    if (g2 < 1e-28) return std::abs(val);
    p.x -= val * gx / g2;
    p.y -= val * gy / g2;
    return std::abs(c.eval(p.x, p.y));
}

// Damped Newton projection of q onto the curve.  Near a pinch of the curve the
// gradient can be orders of magnitude smaller than the residual warrants, so a
// raw Newton step overshoots by many grid cells; clamping the step to max_step
// and backtracking on the residual keeps the iteration inside the cell that
// produced the vertex.
bool project_to_curve(const AlgebraicCurve& c, Point& q, double tol, double max_step) {
    double val = c.eval(q.x, q.y);
    for (int it = 0; it < 16; ++it) {
        if (std::abs(val) <= tol) return true;
        const auto [gx, gy] = c.gradient(q.x, q.y);
        const double g2 = gx * gx + gy * gy;
        if (g2 < 1e-28) return false;
        double sx = val * gx / g2, sy = val * gy / g2;
        const double len = std::hypot(sx, sy);
        if (len > max_step) {
            sx *= max_step / len;
            sy *= max_step / len;
        }
        for (int halvings = 0;; ++halvings) {
            const double nv = c.eval(q.x - sx, q.y - sy);
            if (std::abs(nv) < std::abs(val) || halvings == 6) {
                q.x -= sx;
                q.y -= sy;
                val = nv;
                break;
            }
            sx *= 0.5;
            sy *= 0.5;
        }
    }
    return std::abs(val) <= tol;
}

}  // namespace

bool refine_onto(const AlgebraicCurve& c, Point& p, double tol, double max_step) {
    return project_to_curve(c, p, tol, max_step);
}

OvalTrace trace_oval(const AlgebraicCurve& c, Point seed, int grid_n) {
    if (grid_n < 16) throw PreconditionError("contour grid must have at least 16 cells per side");
    double coeff_scale = 0.0;
    for (double v : c.coeffs) coeff_scale = std::max(coeff_scale, std::abs(v));

    // project the seed onto the curve
    Point p = seed;
    double resid = std::abs(c.eval(p.x, p.y));
    for (int it = 0; it < 50 && resid > 1e-10 * coeff_scale; ++it) resid = newton_step(c, p);
    if (resid > 1e-8 * coeff_scale) throw SeedOffCurve("seed does not project onto the curve");

    double half = 1.5 * (1.0 + std::hypot(p.x, p.y));
    for (int attempt = 0; attempt < 7; ++attempt, half *= 2.0) {
        const double x0 = p.x - half, y0 = p.y - half;
        const double dx = 2.0 * half / grid_n, dy = dx;
        MarchResult mres = march(c, x0, y0, dx, dy, grid_n);
        if (mres.chains.empty()) continue;

        // nearest chain to the seed
        std::size_t best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < mres.chains.size(); ++k) {
            for (const Point& q : mres.chains[k]) {
                const double d = std::hypot(q.x - p.x, q.y - p.y);
                if (d < best_d) {
                    best_d = d;
                    best = k;
                }
            }
        }
        const double cell_diag = std::hypot(dx, dy);
        if (best_d > 2.0 * cell_diag) continue;  // grid too coarse here; enlarge and retry

        if (!mres.closed[best]) continue;  // may be clipped by the box; enlarge

        OvalTrace trace;
        trace.points = std::move(mres.chains[best]);
        trace.source = c;
        for (Point& q : trace.points)
            if (!project_to_curve(c, q, 1e-6 * coeff_scale, cell_diag))
                throw InconclusiveError("contour vertex failed to converge onto the curve");
        return trace;
    }

    // if every attempt saw the component leave the box, it is unbounded
    throw OpenComponent("component through the seed is not closed within the search box");
}

std::vector<std::vector<Point>> plot_implicit(const AlgebraicCurve& c, double xlo, double xhi,
                                              double ylo, double yhi, int resolution) {
    if (!(xlo < xhi) || !(ylo < yhi)) throw PreconditionError("viewbox must have positive extent");
    if (resolution < 8) throw PreconditionError("contour resolution must be at least 8");
    double coeff_scale = 0.0;
    for (double v : c.coeffs) coeff_scale = std::max(coeff_scale, std::abs(v));
    if (coeff_scale == 0.0) throw PreconditionError("zero polynomial has no contour");

    const double dx = (xhi - xlo) / resolution, dy = (yhi - ylo) / resolution;
    MarchResult mres = march(c, xlo, ylo, dx, dy, resolution);
    const double cell_diag = std::hypot(dx, dy);
    for (std::size_t k = 0; k < mres.chains.size(); ++k) {
        // best-effort correction: a vertex that fails to converge stays at
        // its interpolated position, which is already sub-cell accurate
        for (Point& q : mres.chains[k]) project_to_curve(c, q, 1e-6 * coeff_scale, cell_diag);
        if (mres.closed[k]) mres.chains[k].push_back(mres.chains[k].front());
    }
    std::sort(mres.chains.begin(), mres.chains.end(),
              [](const std::vector<Point>& a, const std::vector<Point>& b) {
                  double ax = std::numeric_limits<double>::infinity(), ay = ax;
                  double bx = ax, by = ax;
                  for (const Point& p : a) {
                      ax = std::min(ax, p.x);
                      ay = std::min(ay, p.y);
                  }
                  for (const Point& p : b) {
                      bx = std::min(bx, p.x);
                      by = std::min(by, p.y);
                  }
                  if (ax != bx) return ax < bx;
                  if (ay != by) return ay < by;
                  return a.size() < b.size();
              });
    return mres.chains;
}

}  // namespace osc
