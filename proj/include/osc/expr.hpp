// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>

#include "osc/errors.hpp"
#include "osc/jet.hpp"

namespace osc {

enum class UnaryFn { Neg, Sin, Cos, Tan, Exp, Log, Sqrt };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };

/// Immutable expression tree.  Nodes are shared const; copies of Expr are
/// cheap handle copies, safe to share across threads.
struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    enum class Kind { Constant, Variable, Unary, Binary } kind;
    double constant = 0.0;
    std::string name;  // variable name
    UnaryFn fn = UnaryFn::Neg;
    BinaryOp op = BinaryOp::Add;
    ExprPtr left, right;  // Unary uses left only
};

class Expr {
public:
    Expr() = default;
    explicit Expr(ExprPtr node) : node_(std::move(node)) {}

    static Expr constant(double v);
    static Expr variable(const std::string& name);
    static Expr unary(UnaryFn fn, Expr child);
    static Expr binary(BinaryOp op, Expr left, Expr right);

    const ExprNode& node() const { return *node_; }
    bool empty() const { return node_ == nullptr; }

    /// Names of all variables appearing in the tree.
    std::set<std::string> variables() const;

    bool structurally_equal(const Expr& other) const;

    /// Canonical fully parenthesized text; parse(print(e)) rebuilds e.
    std::string print() const;

private:
    ExprPtr node_;
};

/// Parse an expression under the grammar: binary + - * / ^ with standard
/// precedence, ^ right-associative and binding tighter than unary minus,
/// unary minus only at expression or parenthesis start, functions
/// sin cos tan exp log sqrt applied with parentheses, decimal literals,
/// identifiers as variables.  No implicit multiplication.
Expr parse(const std::string& text);

double eval_real(const Expr& e, const std::map<std::string, double>& env);
Jet eval_jet(const Expr& e, const std::map<std::string, Jet>& env);

/// Single-variable convenience: binds every variable of e to the same value.
double eval_real1(const Expr& e, double x);
Jet eval_jet1(const Expr& e, const Jet& x);

/// Value of the i-th derivative of the univariate function e at t.
double derivative1(const Expr& e, double t, int i);

}  // namespace osc
