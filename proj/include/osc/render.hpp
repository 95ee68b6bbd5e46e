// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "osc/algebraic.hpp"
#include "osc/curve.hpp"
#include "osc/expr.hpp"

namespace osc {

/// Axis-aligned rectangle in model coordinates.
struct Rect {
    double xlo = -1.0, xhi = 1.0;
    double ylo = -1.0, yhi = 1.0;

    double width() const { return xhi - xlo; }
    double height() const { return yhi - ylo; }
};

/// One drawable element: a group of subpaths sharing stroke width and a
/// palette color.  Marker elements render each point as a small dot instead
/// of a connected path.
struct SceneElement {
    std::vector<std::vector<Point>> paths;
    double stroke = 1.0;
    int color = 0;  // palette index, cycled modulo the palette size
    bool marker = false;
};

/// Cycling 8-color palette shared by all scenes ("#rrggbb" strings).
const std::vector<std::string>& render_palette();

/// An ordered list of elements inside a model-coordinate viewbox.  Rendering
/// is pure: the same scene always serializes to the same bytes.
struct Scene {
    Rect viewbox;
    std::vector<SceneElement> elements;

    void add_path(std::vector<Point> pts, double stroke, int color);
    void add_paths(std::vector<std::vector<Point>> pts, double stroke, int color);
    void add_markers(std::vector<Point> pts, int color);

    /// Grow the viewbox to cover every element, with a relative margin.
    void fit_viewbox(double pad = 0.05);

    /// Standalone SVG 1.1 document, width_px pixels wide with height chosen
    /// by the viewbox aspect ratio.  Content outside the viewbox is clipped.
    std::string to_svg(int width_px = 720) const;

    /// Every subpath as "x,y" rows with a blank line between subpaths.
    std::string to_csv() const;
};

/// Uniformly sampled graph of a single-variable expression over [lo, hi],
/// split into subpaths wherever |value| exceeds ycut (poles).  When ycut is
/// zero a default of 10x the window half-width is used.
std::vector<std::vector<Point>> plot_graph(const Expr& e, double lo, double hi, int samples = 600,
                                           double ycut = 0.0);

/// Builds one of the six built-in figures.  Figures are fixed by the
/// versioned manifest (figure_manifest) so their output is a regression
/// artifact: the base curve is drawn with a heavy stroke and the osculating
/// family with light strokes.
Scene build_figure(int id);

/// Renders a built-in figure to a standalone SVG file and returns the path.
/// Optionally writes the same geometry as CSV next to it when csv_path is
/// nonempty.
std::string render_figure(int id, const std::string& out_path, const std::string& csv_path = "");

/// JSON text describing every built-in figure's fixed parameters, including
/// the manifest version; key-sorted and byte-deterministic.
std::string figure_manifest();

}  // namespace osc
