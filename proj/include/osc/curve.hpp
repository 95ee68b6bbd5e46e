// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <utility>

#include "osc/expr.hpp"
#include "osc/jet.hpp"

namespace osc {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// A user-supplied smooth plane curve: either the graph y = f(x) or a
/// parametric pair (x(s), y(s)) over a closed parameter interval.
/// Parametric curves must be regular; this is checked on a 256-point grid
/// at construction.
class PlaneCurve {
public:
    enum class Kind { Graph, Parametric };

    static PlaneCurve graph(Expr f, double lo, double hi);
    static PlaneCurve parametric(Expr x, Expr y, double lo, double hi);
    static PlaneCurve graph(const std::string& f, double lo, double hi);
    static PlaneCurve parametric(const std::string& x, const std::string& y, double lo, double hi);

    /// Parse the line-oriented key=value curve spec format:
    ///   kind=graph|parametric, f=<expr> or x=<expr>,y=<expr>, domain=[lo,hi].
    /// Unknown keys are an error.
    static PlaneCurve from_spec_text(const std::string& text);
    static PlaneCurve from_spec_file(const std::string& path);

    Kind kind() const { return kind_; }
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    const Expr& graph_f() const { return f_; }
    const Expr& param_x() const { return x_; }
    const Expr& param_y() const { return y_; }

    /// Component jets of the parameterization at parameter s.  Graphs are
    /// treated as the parameterization s -> (s, f(s)).
    std::pair<Jet, Jet> jets(double s, int order) const;

    Point at(double s) const;

    /// Round-trippable spec text.
    std::string to_spec_text() const;

private:
    PlaneCurve() = default;

    Kind kind_ = Kind::Graph;
    Expr f_, x_, y_;
    double lo_ = 0.0, hi_ = 1.0;
};

}  // namespace osc
