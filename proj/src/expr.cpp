#include "phasequant/expr.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <vector>

namespace phasequant {

namespace {

enum class Func { exp, log, sqrt, abs, sin, cos };

constexpr std::array<const char*, 6> kFuncNames = {"exp", "log", "sqrt",
                                                   "abs", "sin", "cos"};

} // namespace

struct ExprNode {
    enum class Kind { constant, variable, negate, add, sub, mul, div, pow, call };
    Kind kind;
    double value = 0.0; // constant
    Func func = Func::exp;
    std::unique_ptr<ExprNode> lhs;
    std::unique_ptr<ExprNode> rhs;
};

const char* eval_error_name(EvalError e) {
    switch (e) {
        case EvalError::none: return "none";
        case EvalError::div_by_zero: return "division by zero";
        case EvalError::log_domain: return "log of a non-positive value";
        case EvalError::sqrt_domain: return "sqrt of a negative value";
        case EvalError::pow_domain: return "pow outside its real domain";
        case EvalError::overflow: return "overflow";
    }
    return "unknown";
}

namespace {

using NodePtr = std::unique_ptr<ExprNode>;

NodePtr make_binary(ExprNode::Kind kind, NodePtr lhs, NodePtr rhs) {
    auto node = std::make_unique<ExprNode>();
    node->kind = kind;
    node->lhs = std::move(lhs);
    node->rhs = std::move(rhs);
    return node;
}

class Parser {
public:
    Parser(const std::string& src) : src_(src) {}

    NodePtr run(std::string& variable) {
        skip_ws();
        if (pos_ >= src_.size()) throw ParseError("empty expression", 0);
        NodePtr root = parse_expr();
        skip_ws();
        if (pos_ < src_.size())
            throw ParseError(std::string("unexpected character '") + src_[pos_] + "'", pos_);
        if (variable_.empty())
            throw ParseError("expression has no free variable", 0);
        variable = variable_;
        return root;
    }

private:
    const std::string& src_;
    std::size_t pos_ = 0;
    std::string variable_;

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    NodePtr parse_expr() {
        NodePtr node = parse_term();
        for (;;) {
            if (eat('+')) node = make_binary(ExprNode::Kind::add, std::move(node), parse_term());
            else if (eat('-')) node = make_binary(ExprNode::Kind::sub, std::move(node), parse_term());
            else return node;
        }
    }

    NodePtr parse_term() {
        NodePtr node = parse_unary();
        for (;;) {
            if (eat('*')) node = make_binary(ExprNode::Kind::mul, std::move(node), parse_unary());
            else if (eat('/')) node = make_binary(ExprNode::Kind::div, std::move(node), parse_unary());
            else return node;
        }
    }

    NodePtr parse_unary() {
        if (eat('-')) {
            auto node = std::make_unique<ExprNode>();
            node->kind = ExprNode::Kind::negate;
            node->lhs = parse_unary();
            return node;
        }
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_primary();
        if (eat('^')) {
            // Right-associative; the exponent may carry a unary minus.
            return make_binary(ExprNode::Kind::pow, std::move(base), parse_unary());
        }
        return base;
    }

    NodePtr parse_primary() {
        skip_ws();
        if (pos_ >= src_.size()) throw ParseError("unexpected end of expression", pos_);
        const char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr inner = parse_expr();
            if (!eat(')')) throw ParseError("missing ')'", pos_);
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    NodePtr parse_number() {
        const char* begin = src_.c_str() + pos_;
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin) throw ParseError("malformed number", pos_);
        pos_ += static_cast<std::size_t>(end - begin);
        auto node = std::make_unique<ExprNode>();
        node->kind = ExprNode::Kind::constant;
        node->value = v;
        return node;
    }

    NodePtr parse_identifier() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
            ++pos_;
        const std::string name = src_.substr(start, pos_ - start);

        for (std::size_t i = 0; i < kFuncNames.size(); ++i) {
            if (name == kFuncNames[i]) {
                if (!eat('(')) throw ParseError("function '" + name + "' needs '('", pos_);
                NodePtr arg = parse_expr();
                if (!eat(')')) throw ParseError("missing ')'", pos_);
                auto node = std::make_unique<ExprNode>();
                node->kind = ExprNode::Kind::call;
                node->func = static_cast<Func>(i);
                node->lhs = std::move(arg);
                return node;
            }
        }
        if (name != "x" && name != "r")
            throw ParseError("unknown identifier '" + name + "'", start);
        if (!variable_.empty() && variable_ != name)
            throw ParseError("more than one free variable ('" + variable_ + "' and '" + name + "')",
                             start);
        variable_ = name;
        auto node = std::make_unique<ExprNode>();
        node->kind = ExprNode::Kind::variable;
        return node;
    }
};

EvalResult eval_node(const ExprNode& node, double point) {
    using K = ExprNode::Kind;
    switch (node.kind) {
        case K::constant: return {node.value, EvalError::none};
        case K::variable: return {point, EvalError::none};
        case K::negate: {
            EvalResult a = eval_node(*node.lhs, point);
            if (!a.ok()) return a;
            return {-a.value, EvalError::none};
        }
        case K::call: {
            EvalResult a = eval_node(*node.lhs, point);
            if (!a.ok()) return a;
            double v = 0.0;
            switch (node.func) {
                case Func::exp: v = std::exp(a.value); break;
                case Func::log:
                    if (a.value <= 0.0) return {0.0, EvalError::log_domain};
                    v = std::log(a.value);
                    break;
                case Func::sqrt:
                    if (a.value < 0.0) return {0.0, EvalError::sqrt_domain};
                    v = std::sqrt(a.value);
                    break;
                case Func::abs: v = std::abs(a.value); break;
                case Func::sin: v = std::sin(a.value); break;
                case Func::cos: v = std::cos(a.value); break;
            }
            if (!std::isfinite(v)) return {0.0, EvalError::overflow};
            return {v, EvalError::none};
        }
        default: break;
    }
    EvalResult a = eval_node(*node.lhs, point);
    if (!a.ok()) return a;
    EvalResult b = eval_node(*node.rhs, point);
    if (!b.ok()) return b;
    double v = 0.0;
    switch (node.kind) {
        case K::add: v = a.value + b.value; break;
        case K::sub: v = a.value - b.value; break;
        case K::mul: v = a.value * b.value; break;
        case K::div:
            if (b.value == 0.0) return {0.0, EvalError::div_by_zero};
            v = a.value / b.value;
            break;
        case K::pow:
            v = std::pow(a.value, b.value);
            if (std::isnan(v)) return {0.0, EvalError::pow_domain};
            break;
        default: break;
    }
    if (!std::isfinite(v)) return {0.0, EvalError::overflow};
    return {v, EvalError::none};
}

void print_node(const ExprNode& node, std::ostream& os, const std::string& var) {
    using K = ExprNode::Kind;
    switch (node.kind) {
        case K::constant: {
            std::ostringstream tmp;
            tmp.precision(17);
            tmp << node.value;
            os << tmp.str();
            return;
        }
        case K::variable: os << var; return;
        case K::negate:
            os << "(-";
            print_node(*node.lhs, os, var);
            os << ')';
            return;
        case K::call:
            os << kFuncNames[static_cast<std::size_t>(node.func)] << '(';
            print_node(*node.lhs, os, var);
            os << ')';
            return;
        default: break;
    }
    const char op = node.kind == K::add   ? '+'
                    : node.kind == K::sub ? '-'
                    : node.kind == K::mul ? '*'
                    : node.kind == K::div ? '/'
                                          : '^';
    os << '(';
    print_node(*node.lhs, os, var);
    os << op;
    print_node(*node.rhs, os, var);
    os << ')';
}

bool node_equal(const ExprNode& a, const ExprNode& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case ExprNode::Kind::constant:
            // bit-level comparison keeps -0 and 0 distinct on purpose
            return a.value == b.value && std::signbit(a.value) == std::signbit(b.value);
        case ExprNode::Kind::variable: return true;
        case ExprNode::Kind::negate: return node_equal(*a.lhs, *b.lhs);
        case ExprNode::Kind::call:
            return a.func == b.func && node_equal(*a.lhs, *b.lhs);
        default:
            return node_equal(*a.lhs, *b.lhs) && node_equal(*a.rhs, *b.rhs);
    }
}

} // namespace

Expr Expr::parse(const std::string& source) {
    if (source.empty()) throw ParseError("empty expression", 0);
    Parser parser(source);
    std::string variable;
    NodePtr root = parser.run(variable);
    return Expr(std::shared_ptr<const ExprNode>(root.release()), variable);
}

EvalResult Expr::eval(double point) const { return eval_node(*root_, point); }

std::string Expr::print() const {
    std::ostringstream os;
    print_node(*root_, os, variable_);
    return os.str();
}

bool Expr::operator==(const Expr& other) const {
    return variable_ == other.variable_ && node_equal(*root_, *other.root_);
}

} // namespace phasequant
