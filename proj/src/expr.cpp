// SPDX-License-Identifier: Apache-2.0
#include "osc/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <vector>

namespace osc {

Expr Expr::constant(double v) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::Constant;
    n->constant = v;
    return Expr(std::move(n));
}

Expr Expr::variable(const std::string& name) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::Variable;
    n->name = name;
    return Expr(std::move(n));
}

Expr Expr::unary(UnaryFn fn, Expr child) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::Unary;
    n->fn = fn;
    n->left = std::make_shared<ExprNode>(child.node());
    return Expr(std::move(n));
}

Expr Expr::binary(BinaryOp op, Expr left, Expr right) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::Binary;
    n->op = op;
    n->left = std::make_shared<ExprNode>(left.node());
    n->right = std::make_shared<ExprNode>(right.node());
    return Expr(std::move(n));
}

namespace {

void collect_vars(const ExprNode& n, std::set<std::string>& out) {
    switch (n.kind) {
        case ExprNode::Kind::Constant: break;
        case ExprNode::Kind::Variable: out.insert(n.name); break;
        case ExprNode::Kind::Unary: collect_vars(*n.left, out); break;
        case ExprNode::Kind::Binary:
            collect_vars(*n.left, out);
            collect_vars(*n.right, out);
            break;
    }
}

bool nodes_equal(const ExprNode& a, const ExprNode& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case ExprNode::Kind::Constant: return a.constant == b.constant;
        case ExprNode::Kind::Variable: return a.name == b.name;
        case ExprNode::Kind::Unary: return a.fn == b.fn && nodes_equal(*a.left, *b.left);
        case ExprNode::Kind::Binary:
            return a.op == b.op && nodes_equal(*a.left, *b.left) && nodes_equal(*a.right, *b.right);
    }
    return false;
}

const char* fn_name(UnaryFn fn) {
    switch (fn) {
        case UnaryFn::Neg: return "-";
        case UnaryFn::Sin: return "sin";
        case UnaryFn::Cos: return "cos";
        case UnaryFn::Tan: return "tan";
        case UnaryFn::Exp: return "exp";
        case UnaryFn::Log: return "log";
        case UnaryFn::Sqrt: return "sqrt";
    }
    return "?";
}

char op_char(BinaryOp op) {
    switch (op) {
        case BinaryOp::Add: return '+';
        case BinaryOp::Sub: return '-';
        case BinaryOp::Mul: return '*';
        case BinaryOp::Div: return '/';
        case BinaryOp::Pow: return '^';
    }
    return '?';
}

void print_node(const ExprNode& n, std::ostream& os) {
    switch (n.kind) {
        case ExprNode::Kind::Constant: {
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.17g", n.constant);
            os << buf;
            break;
        }
        case ExprNode::Kind::Variable:
            os << n.name;
            break;
        case ExprNode::Kind::Unary:
            if (n.fn == UnaryFn::Neg) {
                os << "(-";
                print_node(*n.left, os);
                os << ')';
            } else {
                os << fn_name(n.fn) << '(';
                print_node(*n.left, os);
                os << ')';
            }
            break;
        case ExprNode::Kind::Binary:
            os << '(';
            print_node(*n.left, os);
            os << op_char(n.op);
            print_node(*n.right, os);
            os << ')';
            break;
    }
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

struct Token {
    enum class Type { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End } type;
    std::size_t offset;
    double number = 0.0;
    std::string text;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) {}

    Token next() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        const std::size_t start = pos_;
        if (pos_ >= text_.size()) return {Token::Type::End, start};
        const char c = text_[pos_];
        switch (c) {
            case '+': ++pos_; return {Token::Type::Plus, start};
            case '-': ++pos_; return {Token::Type::Minus, start};
            case '*': ++pos_; return {Token::Type::Star, start};
            case '/': ++pos_; return {Token::Type::Slash, start};
            case '^': ++pos_; return {Token::Type::Caret, start};
            case '(': ++pos_; return {Token::Type::LParen, start};
            case ')': ++pos_; return {Token::Type::RParen, start};
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t end = pos_;
            bool seen_dot = false;
            while (end < text_.size() &&
                   (std::isdigit(static_cast<unsigned char>(text_[end])) || (text_[end] == '.' && !seen_dot))) {
                if (text_[end] == '.') seen_dot = true;
                ++end;
            }
            if (end == pos_ + 1 && c == '.')
                throw ParseError(start, {"number"}, err_text(start, "malformed number"));
            // optional exponent
            if (end < text_.size() && (text_[end] == 'e' || text_[end] == 'E')) {
                std::size_t e = end + 1;
                if (e < text_.size() && (text_[e] == '+' || text_[e] == '-')) ++e;
                std::size_t digits = e;
                while (digits < text_.size() && std::isdigit(static_cast<unsigned char>(text_[digits]))) ++digits;
                if (digits > e) end = digits;
            }
            Token t{Token::Type::Number, start};
            t.text = text_.substr(pos_, end - pos_);
            t.number = std::strtod(t.text.c_str(), nullptr);
            pos_ = end;
            return t;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t end = pos_;
            while (end < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
                ++end;
            Token t{Token::Type::Ident, start};
            t.text = text_.substr(pos_, end - pos_);
            pos_ = end;
            return t;
        }
        throw ParseError(start, {"token"}, err_text(start, std::string("unexpected character '") + c + "'"));
    }

    static std::string err_text(std::size_t offset, const std::string& what) {
        std::ostringstream os;
        os << "parse error at offset " << offset << ": " << what;
        return os.str();
    }

private:
    const std::string& text_;
    std::size_t pos_ = 0;
};

class Parser {
public:
    explicit Parser(const std::string& text) : lex_(text) { advance(); }

    Expr parse_full() {
        Expr e = parse_expr(/*at_group_start=*/true);
        if (cur_.type != Token::Type::End)
            throw ParseError(cur_.offset, {"operator", "end of input"},
                             Lexer::err_text(cur_.offset, "trailing input"));
        return e;
    }

private:
    void advance() { cur_ = lex_.next(); }

    [[noreturn]] void fail_expect_operand() {
        throw ParseError(cur_.offset, {"number", "identifier", "function", "'('"},
                         Lexer::err_text(cur_.offset, "expected an operand"));
    }

    // expr := ['-'] term (('+'|'-') term)*   leading '-' only at group start
    Expr parse_expr(bool at_group_start) {
        Expr lhs = parse_term(at_group_start);
        for (;;) {
            if (cur_.type == Token::Type::Plus) {
                advance();
                lhs = Expr::binary(BinaryOp::Add, lhs, parse_term(false));
            } else if (cur_.type == Token::Type::Minus) {
                advance();
                lhs = Expr::binary(BinaryOp::Sub, lhs, parse_term(false));
            } else {
                return lhs;
            }
        }
    }

    // term := unary (('*'|'/') power)*
    Expr parse_term(bool at_group_start) {
        Expr lhs = parse_unary(at_group_start);
        for (;;) {
            if (cur_.type == Token::Type::Star) {
                advance();
                lhs = Expr::binary(BinaryOp::Mul, lhs, parse_power());
            } else if (cur_.type == Token::Type::Slash) {
                advance();
                lhs = Expr::binary(BinaryOp::Div, lhs, parse_power());
            } else {
                return lhs;
            }
        }
    }

    // unary := '-' power | power    '-' legal only at group start
    Expr parse_unary(bool at_group_start) {
        if (cur_.type == Token::Type::Minus) {
            if (!at_group_start) fail_expect_operand();
            advance();
            return Expr::unary(UnaryFn::Neg, parse_power());
        }
        return parse_power();
    }

    // power := atom ('^' power)?    right-associative
    Expr parse_power() {
        Expr base = parse_atom();
        if (cur_.type == Token::Type::Caret) {
            advance();
            return Expr::binary(BinaryOp::Pow, base, parse_power());
        }
        return base;
    }

    Expr parse_atom() {
        switch (cur_.type) {
            case Token::Type::Number: {
                const double v = cur_.number;
                advance();
                return Expr::constant(v);
            }
            case Token::Type::Ident: {
                const std::string name = cur_.text;
                const std::size_t off = cur_.offset;
                advance();
                if (is_function(name)) {
                    if (cur_.type != Token::Type::LParen)
                        throw ParseError(cur_.offset, {"'('"},
                                         Lexer::err_text(cur_.offset, "function '" + name + "' needs parentheses"));
                    advance();
                    Expr arg = parse_expr(true);
                    expect_rparen();
                    return Expr::unary(function_of(name), arg);
                }
                (void)off;
                return Expr::variable(name);
            }
            case Token::Type::LParen: {
                advance();
                Expr e = parse_expr(true);
                expect_rparen();
                return e;
            }
            default:
                fail_expect_operand();
        }
    }

    void expect_rparen() {
        if (cur_.type != Token::Type::RParen)
            throw ParseError(cur_.offset, {"')'"}, Lexer::err_text(cur_.offset, "expected ')'"));
        advance();
    }

    static bool is_function(const std::string& s) {
        return s == "sin" || s == "cos" || s == "tan" || s == "exp" || s == "log" || s == "sqrt";
    }
    static UnaryFn function_of(const std::string& s) {
        if (s == "sin") return UnaryFn::Sin;
        if (s == "cos") return UnaryFn::Cos;
        if (s == "tan") return UnaryFn::Tan;
        if (s == "exp") return UnaryFn::Exp;
        if (s == "log") return UnaryFn::Log;
        return UnaryFn::Sqrt;
    }

    Lexer lex_;
    Token cur_;
};

// ---------------------------------------------------------------------------
// Evaluation, generic over the scalar type so the real and jet paths share
// one code shape (and therefore agree exactly at order zero).
// ---------------------------------------------------------------------------

inline double one_like(const double&) { return 1.0; }
inline Jet one_like(const Jet& j) { return Jet::constant(1.0, j.base(), j.order()); }

template <class T>
T pow_by_squaring(T base, long long k) {
    T result = one_like(base);
    T square = base;
    while (k > 0) {
        if (k & 1) result = result * square;
        k >>= 1;
        if (k > 0) square = square * square;
    }
    return result;
}

inline double check_div(double num, double den) {
    if (den == 0.0) throw DomainError("division by zero");
    return num / den;
}
inline Jet check_div(const Jet& num, const Jet& den) { return num / den; }

inline double apply_sin(double x) { return std::sin(x); }
inline double apply_cos(double x) { return std::cos(x); }
inline double apply_tan(double x) {
    const double c = std::cos(x);
    if (c == 0.0) throw DomainError("tan evaluated at a pole");
    return std::sin(x) / c;
}
inline double apply_exp(double x) {
    const double v = std::exp(x);
    if (!std::isfinite(v)) throw DomainError("exp overflow");
    return v;
}
inline double apply_log(double x) {
    if (!(x > 0.0)) throw DomainError("log requires a positive argument");
    return std::log(x);
}
inline double apply_sqrt(double x) {
    if (!(x > 0.0)) throw DomainError("sqrt requires a positive argument");
    return std::sqrt(x);
}
inline Jet apply_sin(const Jet& x) { return sin(x); }
inline Jet apply_cos(const Jet& x) { return cos(x); }
inline Jet apply_tan(const Jet& x) { return tan(x); }
inline Jet apply_exp(const Jet& x) { return exp(x); }
inline Jet apply_log(const Jet& x) { return log(x); }
inline Jet apply_sqrt(const Jet& x) { return sqrt(x); }

inline double value_of(double x) { return x; }
inline double value_of(const Jet& x) { return x.value(); }

inline double apply_explog_pow(double b, double e) { return apply_exp(e * apply_log(b)); }
inline Jet apply_explog_pow(const Jet& b, const Jet& e) { return exp(e * log(b)); }

template <class T>
T eval_node(const ExprNode& n, const std::map<std::string, T>& env) {
    switch (n.kind) {
        case ExprNode::Kind::Constant: {
            // The environment supplies base/order context for jets; constants
            // inherit it from an arbitrary binding.
            if constexpr (std::is_same_v<T, double>) {
                return n.constant;
            } else {
                if (env.empty()) throw DomainError("jet evaluation needs at least one variable binding");
                const Jet& ref = env.begin()->second;
                return Jet::constant(n.constant, ref.base(), ref.order());
            }
        }
        case ExprNode::Kind::Variable: {
            auto it = env.find(n.name);
            if (it == env.end()) throw DomainError("unbound variable '" + n.name + "'");
            return it->second;
        }
        case ExprNode::Kind::Unary: {
            T child = eval_node(*n.left, env);
            switch (n.fn) {
                case UnaryFn::Neg: return -child;
                case UnaryFn::Sin: return apply_sin(child);
                case UnaryFn::Cos: return apply_cos(child);
                case UnaryFn::Tan: return apply_tan(child);
                case UnaryFn::Exp: return apply_exp(child);
                case UnaryFn::Log: return apply_log(child);
                case UnaryFn::Sqrt: return apply_sqrt(child);
            }
            throw std::logic_error("unknown unary function");
        }
        case ExprNode::Kind::Binary: {
            T lhs = eval_node(*n.left, env);
            switch (n.op) {
                case BinaryOp::Add: return lhs + eval_node(*n.right, env);
                case BinaryOp::Sub: return lhs - eval_node(*n.right, env);
                case BinaryOp::Mul: return lhs * eval_node(*n.right, env);
                case BinaryOp::Div: return check_div(lhs, eval_node(*n.right, env));
                case BinaryOp::Pow: {
                    // Constant integral exponent: repeated multiplication,
                    // valid for any base.  Anything else goes through
                    // exp(e*log b) and needs a positive base.
                    if (n.right->kind == ExprNode::Kind::Constant) {
                        const double p = n.right->constant;
                        if (std::nearbyint(p) == p && std::abs(p) < 1e15) {
                            const long long k = static_cast<long long>(p);
                            if (k >= 0) return pow_by_squaring(lhs, k);
                            return check_div(one_like(lhs), pow_by_squaring(lhs, -k));
                        }
                        if (!(value_of(lhs) > 0.0))
                            throw DomainError("fractional power requires a positive base");
                        T e = eval_node(*n.right, env);
                        return apply_explog_pow(lhs, e);
                    }
                    T e = eval_node(*n.right, env);
                    if (!(value_of(lhs) > 0.0))
                        throw DomainError("general power requires a positive base");
                    return apply_explog_pow(lhs, e);
                }
            }
            throw std::logic_error("unknown binary operator");
        }
    }
    throw std::logic_error("unknown node kind");
}

template <class T>
std::map<std::string, T> bind_all(const Expr& e, const T& v) {
    std::map<std::string, T> env;
    for (const std::string& name : e.variables()) env.emplace(name, v);
    return env;
}

}  // namespace

std::set<std::string> Expr::variables() const {
    std::set<std::string> out;
    if (node_) collect_vars(*node_, out);
    return out;
}

bool Expr::structurally_equal(const Expr& other) const {
    if (!node_ || !other.node_) return node_ == other.node_;
    return nodes_equal(*node_, *other.node_);
}

std::string Expr::print() const {
    if (!node_) return "";
    std::ostringstream os;
    print_node(*node_, os);
    return os.str();
}

Expr parse(const std::string& text) {
    if (text.empty()) throw ParseError(0, {"expression"}, "parse error at offset 0: empty input");
    Parser p(text);
    return p.parse_full();
}

double eval_real(const Expr& e, const std::map<std::string, double>& env) {
    if (e.empty()) throw std::logic_error("evaluating an empty expression");
    return eval_node(e.node(), env);
}

Jet eval_jet(const Expr& e, const std::map<std::string, Jet>& env) {
    if (e.empty()) throw std::logic_error("evaluating an empty expression");
    if (env.empty()) throw DomainError("jet evaluation needs at least one variable binding");
    const Jet& first = env.begin()->second;
    for (const auto& [name, jet] : env)
        if (jet.base() != first.base() || jet.order() != first.order())
            throw std::logic_error("all variable jets must share base and order");
    return eval_node(e.node(), env);
}

double eval_real1(const Expr& e, double x) {
    auto env = bind_all(e, x);
    if (env.empty()) return eval_node(e.node(), env);  // constant expression
    return eval_node(e.node(), env);
}

Jet eval_jet1(const Expr& e, const Jet& x) {
    auto env = bind_all(e, x);
    if (env.empty()) env.emplace("_", x);  // context for constants
    return eval_node(e.node(), env);
}

double derivative1(const Expr& e, double t, int i) {
    return eval_jet1(e, Jet::variable(t, i)).derivative(i);
}

}  // namespace osc
