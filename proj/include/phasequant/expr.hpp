#ifndef PHASEQUANT_EXPR_HPP
#define PHASEQUANT_EXPR_HPP

#include "phasequant/errors.hpp"

#include <memory>
#include <string>

namespace phasequant {

// Why evaluation failed at a point. Quadrature and scanning code relies on
// getting a tagged status back instead of a bare NaN.
enum class EvalError {
    none,
    div_by_zero,
    log_domain,
    sqrt_domain,
    pow_domain,
    overflow,
};

struct EvalResult {
    double value = 0.0;
    EvalError error = EvalError::none;
    bool ok() const { return error == EvalError::none; }
};

const char* eval_error_name(EvalError e);

// Parse failure with the byte offset of the offending token.
class ParseError : public UsageError {
public:
    ParseError(const std::string& msg, std::size_t offset)
        : UsageError(msg + " (byte " + std::to_string(offset) + ")"), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

struct ExprNode;

// An immutable arithmetic expression in one free variable ("x" or "r").
// Supports + - * / ^ (right-associative), unary minus, and the functions
// exp, log, sqrt, abs, sin, cos. Copies share the parsed tree.
class Expr {
public:
    static Expr parse(const std::string& source);

    // Never throws: domain violations come back as tagged errors.
    EvalResult eval(double point) const;

    // Canonical fully-parenthesized form; parsing it yields an equal tree.
    std::string print() const;

    const std::string& variable() const { return variable_; }

    bool operator==(const Expr& other) const;

private:
    Expr(std::shared_ptr<const ExprNode> root, std::string variable)
        : root_(std::move(root)), variable_(std::move(variable)) {}

    std::shared_ptr<const ExprNode> root_;
    std::string variable_;
};

} // namespace phasequant

#endif
