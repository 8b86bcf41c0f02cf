#include "phasequant/expr.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

using namespace phasequant;

TEST_CASE("parses powers and variables") {
    Expr e = Expr::parse("x^2");
    CHECK(e.variable() == "x");
    CHECK(e.print() == "(x^2)");
    CHECK(e.eval(2.0).value == 4.0);
    CHECK(e.eval(-3.0).value == 9.0);
}

TEST_CASE("funnel-style expression in r") {
    Expr e = Expr::parse("-0.5/r + 0.2*r");
    CHECK(e.variable() == "r");
    const EvalResult at1 = e.eval(1.0);
    REQUIRE(at1.ok());
    CHECK(at1.value == doctest::Approx(-0.3).epsilon(1e-15));
}

TEST_CASE("two free variables are rejected") {
    CHECK_THROWS_AS(Expr::parse("x + y"), ParseError);
    try {
        Expr::parse("x + y");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("free variable") != std::string::npos);
        CHECK(e.offset() == 4);
    }
}

TEST_CASE("syntax errors carry a byte offset") {
    CHECK_THROWS_AS(Expr::parse(""), ParseError);
    CHECK_THROWS_AS(Expr::parse("2*"), ParseError);
    CHECK_THROWS_AS(Expr::parse("(x"), ParseError);
    CHECK_THROWS_AS(Expr::parse("x + foo(x)"), ParseError);
    try {
        Expr::parse("x + foo(x)");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("unknown identifier") != std::string::npos);
        CHECK(e.offset() == 4);
    }
    // constants alone have no free variable
    CHECK_THROWS_AS(Expr::parse("1.5 + 2"), ParseError);
}

TEST_CASE("precedence and associativity") {
    CHECK(Expr::parse("2+3*x").eval(4.0).value == 14.0);
    CHECK(Expr::parse("2*x^2").eval(3.0).value == 18.0);
    CHECK(Expr::parse("-x^2").eval(3.0).value == -9.0);   // minus binds below ^
    CHECK(Expr::parse("2^x^2").eval(3.0).value == 512.0); // right-associative
    CHECK(Expr::parse("x^-1").eval(4.0).value == 0.25);
    CHECK(Expr::parse("  x  +  1 ").eval(1.0).value == 2.0);
    CHECK(Expr::parse("(x+1)*(x-1)").eval(3.0).value == 8.0);
}

TEST_CASE("domain violations come back tagged, not as NaN") {
    const EvalResult div = Expr::parse("1/r").eval(0.0);
    CHECK_FALSE(div.ok());
    CHECK(div.error == EvalError::div_by_zero);

    const EvalResult lg = Expr::parse("log(x)").eval(-1.0);
    CHECK(lg.error == EvalError::log_domain);
    CHECK(Expr::parse("log(x)").eval(0.0).error == EvalError::log_domain);

    const EvalResult sq = Expr::parse("sqrt(x)").eval(-4.0);
    CHECK(sq.error == EvalError::sqrt_domain);

    const EvalResult pw = Expr::parse("x^0.5").eval(-1.0);
    CHECK(pw.error == EvalError::pow_domain);

    const EvalResult ov = Expr::parse("exp(x)").eval(1e9);
    CHECK(ov.error == EvalError::overflow);

    // no throw anywhere above
    CHECK(Expr::parse("1/r").eval(2.0).value == 0.5);
}

TEST_CASE("functions evaluate") {
    CHECK(Expr::parse("sin(x)").eval(0.0).value == 0.0);
    CHECK(Expr::parse("cos(x)").eval(0.0).value == 1.0);
    CHECK(Expr::parse("abs(x)").eval(-2.5).value == 2.5);
    CHECK(Expr::parse("exp(x)").eval(1.0).value == doctest::Approx(std::exp(1.0)));
    CHECK(Expr::parse("log(exp(x))").eval(2.0).value == doctest::Approx(2.0));
}

namespace {

// random expression source strings over the grammar
std::string random_expr(std::mt19937& gen, int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 7);
    std::uniform_real_distribution<double> num(0.1, 9.9);
    switch (pick(gen)) {
        case 0: return "x";
        case 1: {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.3f", num(gen));
            return buf;
        }
        case 2: return "(" + random_expr(gen, depth - 1) + "+" + random_expr(gen, depth - 1) + ")";
        case 3: return "(" + random_expr(gen, depth - 1) + "-" + random_expr(gen, depth - 1) + ")";
        case 4: return "(" + random_expr(gen, depth - 1) + "*" + random_expr(gen, depth - 1) + ")";
        case 5: return "(" + random_expr(gen, depth - 1) + "/" + random_expr(gen, depth - 1) + ")";
        case 6: return "-" + random_expr(gen, depth - 1);
        default: {
            const char* fns[] = {"exp", "sqrt", "abs", "sin", "cos"};
            std::uniform_int_distribution<int> f(0, 4);
            return std::string(fns[f(gen)]) + "(" + random_expr(gen, depth - 1) + ")";
        }
    }
}

} // namespace

TEST_CASE("parse-print-parse is idempotent on 1000 randomized expressions") {
    std::mt19937 gen(20240817);
    int checked = 0;
    while (checked < 1000) {
        const std::string src = random_expr(gen, 4);
        if (src.find('x') == std::string::npos) continue; // needs a free variable
        const Expr first = Expr::parse(src);
        const std::string printed = first.print();
        const Expr second = Expr::parse(printed);
        CHECK(first == second);
        CHECK(second.print() == printed);
        ++checked;
    }
}

TEST_CASE("plus-minus-times agree with direct arithmetic to 0 ulp") {
    struct Row {
        const char* src;
        double (*direct)(double);
    };
    const std::vector<Row> corpus = {
        {"x*x + 2*x - 5", [](double x) { return x * x + 2 * x - 5; }},
        {"3*x - x*x*x", [](double x) { return 3 * x - x * x * x; }},
        {"(x - 1.5)*(x + 2.25)", [](double x) { return (x - 1.5) * (x + 2.25); }},
        {"x - 0.1*x*x", [](double x) { return x - 0.1 * x * x; }},
        {"2.5*x*x - 0.5*x + 7", [](double x) { return 2.5 * x * x - 0.5 * x + 7; }},
    };
    std::mt19937 gen(7);
    std::uniform_real_distribution<double> pts(-20.0, 20.0);
    for (const Row& row : corpus) {
        const Expr e = Expr::parse(row.src);
        for (int i = 0; i < 200; ++i) {
            const double x = pts(gen);
            const EvalResult r = e.eval(x);
            REQUIRE(r.ok());
            CHECK(r.value == row.direct(x)); // bitwise equal
        }
    }
}

TEST_CASE("evaluation is deterministic") {
    const Expr e = Expr::parse("sin(x)*exp(-x*x/10) + x^3");
    const double a = e.eval(1.234567).value;
    const double b = Expr::parse("sin(x)*exp(-x*x/10) + x^3").eval(1.234567).value;
    CHECK(a == b);
}
