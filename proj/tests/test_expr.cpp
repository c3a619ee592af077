#include <catch_amalgamated.hpp>

#include <bpscal/expr.hpp>
#include <bpscal/rng.hpp>

using namespace bpscal;
using namespace bpscal::expr;

namespace {

double ev(const std::string& s, Point x) { return eval(parse(s, x.size()), x); }

template <class F>
void expect_error(F&& f, ErrorKind kind, std::size_t offset) {
    try {
        f();
        FAIL("no error raised");
    } catch (const ExprError& e) {
        CHECK(e.kind() == kind);
        CHECK(e.offset() == offset);
    }
}

// Random expression text with redundant spacing and parentheses.
std::string random_text(Rng& rng, std::size_t n, int depth) {
    if (depth == 0 || rng.uniform() < 0.25) {
        if (rng.uniform() < 0.5) return "x" + std::to_string(rng.integer(1, static_cast<int>(n)));
        return std::to_string(rng.integer(0, 9)) + (rng.uniform() < 0.3 ? ".25" : "");
    }
    static const char* ops[] = {" + ", "-", " * ", "/", "^"};
    const int pick = rng.integer(0, 8);
    if (pick < 5) return random_text(rng, n, depth - 1) + ops[pick] + random_text(rng, n, depth - 1);
    if (pick == 5) return "-" + random_text(rng, n, depth - 1);
    if (pick == 6) return "(" + random_text(rng, n, depth - 1) + ")";
    if (pick == 7) return "sin( " + random_text(rng, n, depth - 1) + ")";
    return "max(" + random_text(rng, n, depth - 1) + "," + random_text(rng, n, depth - 1) + ", x1)";
}

} // namespace

TEST_CASE("parse and evaluate examples") {
    CHECK(ev("x1 + 2*x2", Point{1, 3}) == 7.0);
    CHECK(ev("max(x1, x2)^2", Point{2, -1}) == 4.0);
    CHECK(ev("(x1-1)^2 + (x2-2)^2", Point{1, 2}) == 0.0);
    CHECK(ev("abs(x1) - x2", Point{-3, 1}) == 2.0);
    expect_error([] { parse("x3", 2); }, ErrorKind::UnknownIdentifier, 0);
    expect_error([] { ev("1/x1", Point{0, 1}); }, ErrorKind::EvalError, 1);
}

TEST_CASE("precedence regression suite") {
    const Point x{2, 3};
    struct Case {
        const char* src;
        double value;
    };
    // Values computed by hand with x1 = 2, x2 = 3.
    const Case cases[] = {
        {"1 + 2 * 3", 7},
        {"(1 + 2) * 3", 9},
        {"2 ^ 3 ^ 2", 512},
        {"(2 ^ 3) ^ 2", 64},
        {"-2 ^ 2", -4},
        {"(-2) ^ 2", 4},
        {"2 ^ -1", 0.5},
        {"8 / 4 / 2", 1},
        {"8 - 4 - 2", 2},
        {"8 / 4 * 2", 4},
        {"-x1 * x2", -6},
        {"- -x1", 2},
        {"x1 - -x2", 5},
        {"x1 * x2 ^ 2", 18},
        {"x2 ^ x1 * 2", 18},
        {"min(x1, x2, 1) + max(x1, -x2)", 3},
        {"abs(1 - x2 * x1)", 5},
        {"x1 + x2 * 2 - 6 / x2", 6},
        {"2 * (x1 + 1) ^ 2 / 3", 6},
        {"1e1 + .5 + 2.5E-1", 10.75},
    };
    for (const Case& c : cases) {
        INFO(c.src);
        CHECK(ev(c.src, x) == c.value);
    }
    CHECK(ev("sin(0) + cos(0) + exp(0)", x) == 2.0);
}

TEST_CASE("syntax errors carry byte offsets") {
    expect_error([] { parse("2x1", 1); }, ErrorKind::SyntaxError, 1);
    expect_error([] { parse("x1 +", 1); }, ErrorKind::SyntaxError, 4);
    expect_error([] { parse("(x1", 1); }, ErrorKind::SyntaxError, 3);
    expect_error([] { parse("x1 $ 2", 1); }, ErrorKind::SyntaxError, 3);
    expect_error([] { parse("   ", 1); }, ErrorKind::SyntaxError, 3);
    expect_error([] { parse("1e+", 1); }, ErrorKind::SyntaxError, 1);
    expect_error([] { parse("x1 * foo(2)", 1); }, ErrorKind::UnknownIdentifier, 5);
    expect_error([] { parse("y + 1", 1); }, ErrorKind::UnknownIdentifier, 0);
    expect_error([] { parse("x0", 1); }, ErrorKind::UnknownIdentifier, 0);
    expect_error([] { parse("1 + sin(x1, x1)", 1); }, ErrorKind::ArityError, 4);
    expect_error([] { parse("min(x1)", 1); }, ErrorKind::ArityError, 0);
    CHECK_THROWS_AS(parse("", 1), ExprError);
}

TEST_CASE("evaluation errors") {
    expect_error([] { ev("(-8) ^ 0.5", Point{1}); }, ErrorKind::EvalError, 5);
    expect_error([] { ev("0 ^ -1", Point{1}); }, ErrorKind::EvalError, 2);
    expect_error([] { ev("exp(x1)", Point{1000}); }, ErrorKind::EvalError, 0);
    expect_error([] { ev("1e308 * 10", Point{1}); }, ErrorKind::EvalError, 6);
    CHECK(ev("(-8) ^ 3", Point{1}) == -512.0);
    CHECK_THROWS_AS(eval(parse("x1", 1), Point{1, 2}), Error);
}

TEST_CASE("print then parse reproduces the tree") {
    Rng rng(3);
    for (int i = 0; i < 3000; ++i) {
        const std::size_t n = 1 + static_cast<std::size_t>(i % 4);
        const std::string src = random_text(rng, n, 5);
        INFO(src);
        Expr e = parse(src, n);
        const std::string printed = print(e);
        Expr back = parse(printed, n);
        CHECK(same_structure(e, back));
        CHECK(print(back) == printed);
    }
    CHECK_FALSE(same_structure(parse("x1 - x2 - 1", 2), parse("x1 - (x2 - 1)", 2)));
    CHECK(print(parse("-x1^2", 1)) == "(-(x1 ^ 2))");
    CHECK(print(parse("0.1", 1)) == "0.10000000000000001");
}
