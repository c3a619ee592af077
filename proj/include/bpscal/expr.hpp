#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "point.hpp"

namespace bpscal::expr {

enum class NodeKind { Constant, Variable, Negate, Binary, Call };
enum class BinOp { Add, Sub, Mul, Div, Pow };
enum class Func { Sin, Cos, Exp, Abs, Min, Max };

struct Node {
    NodeKind kind = NodeKind::Constant;
    double value = 0.0;    // Constant
    std::size_t index = 0; // Variable, zero-based
    BinOp op = BinOp::Add; // Binary
    Func func = Func::Sin; // Call
    std::vector<std::shared_ptr<const Node>> args;
    std::size_t offset = 0; // byte offset of the node's operator or first character
};

using NodePtr = std::shared_ptr<const Node>;

inline const char* to_string(BinOp op) {
    switch (op) {
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mul: return "*";
    case BinOp::Div: return "/";
    case BinOp::Pow: return "^";
    }
    return "?";
}

inline const char* to_string(Func f) {
    switch (f) {
    case Func::Sin: return "sin";
    case Func::Cos: return "cos";
    case Func::Exp: return "exp";
    case Func::Abs: return "abs";
    case Func::Min: return "min";
    case Func::Max: return "max";
    }
    return "?";
}

/// A parsed objective expression over x1..xn. Immutable and cheap to copy.
class Expr {
public:
    Expr(NodePtr root, std::size_t n_vars) : root_(std::move(root)), n_(n_vars) {}

    const Node& root() const noexcept { return *root_; }
    std::size_t n_vars() const noexcept { return n_; }

private:
    NodePtr root_;
    std::size_t n_;
};

namespace detail {

class Parser {
public:
    Parser(std::string_view src, std::size_t n) : s_(src), n_(n) {}

    NodePtr parse() {
        skip();
        if (pos_ >= s_.size()) throw ExprError(ErrorKind::SyntaxError, pos_, "empty expression");
        NodePtr e = expr();
        skip();
        if (pos_ < s_.size()) throw ExprError(ErrorKind::SyntaxError, pos_, "unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    std::string_view s_;
    std::size_t n_;
    std::size_t pos_ = 0;

    void skip() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n' || s_[pos_] == '\r'))
            ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        skip();
        if (!accept(c)) {
            std::string got = pos_ < s_.size() ? "'" + std::string(1, s_[pos_]) + "'" : "end of input";
            throw ExprError(ErrorKind::SyntaxError, pos_, std::string("expected '") + c + "', got " + got);
        }
    }

    static NodePtr binary(BinOp op, NodePtr l, NodePtr r, std::size_t at) {
        auto n = std::make_shared<Node>();
        n->kind = NodeKind::Binary;
        n->op = op;
        n->args = {std::move(l), std::move(r)};
        n->offset = at;
        return n;
    }

    NodePtr expr() {
        NodePtr l = term();
        for (;;) {
            skip();
            const std::size_t at = pos_;
            if (accept('+'))
                l = binary(BinOp::Add, l, term(), at);
            else if (accept('-'))
                l = binary(BinOp::Sub, l, term(), at);
            else
                return l;
        }
    }

    NodePtr term() {
        NodePtr l = unary();
        for (;;) {
            skip();
            const std::size_t at = pos_;
            if (accept('*'))
                l = binary(BinOp::Mul, l, unary(), at);
            else if (accept('/'))
                l = binary(BinOp::Div, l, unary(), at);
            else
                return l;
        }
    }

    NodePtr unary() {
        skip();
        const std::size_t at = pos_;
        if (accept('-')) {
            auto n = std::make_shared<Node>();
            n->kind = NodeKind::Negate;
            n->args = {unary()};
            n->offset = at;
            return n;
        }
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        skip();
        const std::size_t at = pos_;
        if (accept('^')) return binary(BinOp::Pow, base, unary(), at);
        return base;
    }

    NodePtr primary() {
        skip();
        const std::size_t at = pos_;
        if (pos_ >= s_.size()) throw ExprError(ErrorKind::SyntaxError, pos_, "unexpected end of input");
        const char c = s_[pos_];
        if (accept('(')) {
            NodePtr e = expr();
            expect(')');
            return e;
        }
        if ((c >= '0' && c <= '9') || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        throw ExprError(ErrorKind::SyntaxError, at, "unexpected '" + std::string(1, c) + "'");
    }

    NodePtr number() {
        const std::size_t at = pos_;
        std::size_t end = pos_;
        auto digits = [&] {
            std::size_t k = 0;
            while (end < s_.size() && s_[end] >= '0' && s_[end] <= '9') ++end, ++k;
            return k;
        };
        std::size_t d = digits();
        if (end < s_.size() && s_[end] == '.') {
            ++end;
            d += digits();
        }
        if (d == 0) throw ExprError(ErrorKind::SyntaxError, at, "malformed number");
        if (end < s_.size() && (s_[end] == 'e' || s_[end] == 'E')) {
            std::size_t save = end++;
            if (end < s_.size() && (s_[end] == '+' || s_[end] == '-')) ++end;
            if (digits() == 0) {
                end = save;
                throw ExprError(ErrorKind::SyntaxError, save, "malformed exponent");
            }
        }
        double v = 0.0;
        auto res = std::from_chars(s_.data() + at, s_.data() + end, v);
        if (res.ec != std::errc() || res.ptr != s_.data() + end || !std::isfinite(v))
            throw ExprError(ErrorKind::SyntaxError, at, "number out of range");
        pos_ = end;
        auto n = std::make_shared<Node>();
        n->kind = NodeKind::Constant;
        n->value = v;
        n->offset = at;
        return n;
    }

    NodePtr identifier() {
        const std::size_t at = pos_;
        std::size_t end = pos_;
        while (end < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_')) ++end;
        const std::string name(s_.substr(at, end - at));
        pos_ = end;
        skip();
        if (pos_ < s_.size() && s_[pos_] == '(') return call(name, at);
        if (name.size() > 1 && name[0] == 'x' && name.find_first_not_of("0123456789", 1) == std::string::npos &&
            name[1] != '0') {
            std::size_t i = 0;
            auto r = std::from_chars(name.data() + 1, name.data() + name.size(), i);
            if (r.ec == std::errc() && i >= 1 && i <= n_) {
                auto n = std::make_shared<Node>();
                n->kind = NodeKind::Variable;
                n->index = i - 1;
                n->offset = at;
                return n;
            }
        }
        throw ExprError(ErrorKind::UnknownIdentifier, at,
                        "unknown identifier '" + name + "' (variables are x1..x" + std::to_string(n_) + ")");
    }

    NodePtr call(const std::string& name, std::size_t at) {
        static const std::pair<const char*, Func> table[] = {{"sin", Func::Sin}, {"cos", Func::Cos},
                                                             {"exp", Func::Exp}, {"abs", Func::Abs},
                                                             {"min", Func::Min}, {"max", Func::Max}};
        const Func* f = nullptr;
        for (const auto& [nm, fn] : table)
            if (name == nm) f = &fn;
        if (!f) throw ExprError(ErrorKind::UnknownIdentifier, at, "unknown function '" + name + "'");
        expect('(');
        auto n = std::make_shared<Node>();
        n->kind = NodeKind::Call;
        n->func = *f;
        n->offset = at;
        n->args.push_back(expr());
        while (accept(',')) n->args.push_back(expr());
        expect(')');
        const bool variadic = *f == Func::Min || *f == Func::Max;
        if (variadic ? n->args.size() < 2 : n->args.size() != 1)
            throw ExprError(ErrorKind::ArityError, at,
                            name + (variadic ? " needs at least 2 arguments" : " takes exactly 1 argument") + ", got " +
                                std::to_string(n->args.size()));
        return n;
    }
};

inline double checked(double v, const Node& n, const char* what) {
    if (!std::isfinite(v)) throw ExprError(ErrorKind::EvalError, n.offset, std::string(what) + " is not finite");
    return v;
}

inline double eval_node(const Node& n, const Point& x) {
    switch (n.kind) {
    case NodeKind::Constant: return n.value;
    case NodeKind::Variable: return x[n.index];
    case NodeKind::Negate: return -eval_node(*n.args[0], x);
    case NodeKind::Binary: {
        const double l = eval_node(*n.args[0], x), r = eval_node(*n.args[1], x);
        switch (n.op) {
        case BinOp::Add: return checked(l + r, n, "sum");
        case BinOp::Sub: return checked(l - r, n, "difference");
        case BinOp::Mul: return checked(l * r, n, "product");
        case BinOp::Div:
            if (r == 0.0) throw ExprError(ErrorKind::EvalError, n.offset, "division by zero");
            return checked(l / r, n, "quotient");
        case BinOp::Pow:
            if (l == 0.0 && r < 0.0) throw ExprError(ErrorKind::EvalError, n.offset, "zero to a negative power");
            if (l < 0.0 && r != std::trunc(r))
                throw ExprError(ErrorKind::EvalError, n.offset, "negative base with a non-integer exponent");
            return checked(std::pow(l, r), n, "power");
        }
        break;
    }
    case NodeKind::Call: {
        const double a = eval_node(*n.args[0], x);
        switch (n.func) {
        case Func::Sin: return std::sin(a);
        case Func::Cos: return std::cos(a);
        case Func::Exp: return checked(std::exp(a), n, "exp");
        case Func::Abs: return std::abs(a);
        case Func::Min:
        case Func::Max: {
            double v = a;
            for (std::size_t i = 1; i < n.args.size(); ++i) {
                const double b = eval_node(*n.args[i], x);
                v = n.func == Func::Min ? std::min(v, b) : std::max(v, b);
            }
            return v;
        }
        }
        break;
    }
    }
    return 0.0;
}

inline void print_node(const Node& n, std::string& out) {
    switch (n.kind) {
    case NodeKind::Constant: {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", n.value);
        out += buf;
        return;
    }
    case NodeKind::Variable: out += "x" + std::to_string(n.index + 1); return;
    case NodeKind::Negate:
        out += "(-";
        print_node(*n.args[0], out);
        out += ")";
        return;
    case NodeKind::Binary:
        out += "(";
        print_node(*n.args[0], out);
        out += std::string(" ") + to_string(n.op) + " ";
        print_node(*n.args[1], out);
        out += ")";
        return;
    case NodeKind::Call:
        out += to_string(n.func);
        out += "(";
        for (std::size_t i = 0; i < n.args.size(); ++i) {
            if (i) out += ", ";
            print_node(*n.args[i], out);
        }
        out += ")";
        return;
    }
}

inline bool same_node(const Node& a, const Node& b) {
    if (a.kind != b.kind || a.args.size() != b.args.size()) return false;
    switch (a.kind) {
    case NodeKind::Constant:
        if (a.value != b.value) return false;
        break;
    case NodeKind::Variable:
        if (a.index != b.index) return false;
        break;
    case NodeKind::Binary:
        if (a.op != b.op) return false;
        break;
    case NodeKind::Call:
        if (a.func != b.func) return false;
        break;
    case NodeKind::Negate: break;
    }
    for (std::size_t i = 0; i < a.args.size(); ++i)
        if (!same_node(*a.args[i], *b.args[i])) return false;
    return true;
}

} // namespace detail

/// Parses `src` over variables x1..x{n_vars}. Grammar in docs/expr_grammar.md.
inline Expr parse(std::string_view src, std::size_t n_vars) {
    return Expr(detail::Parser(src, n_vars).parse(), n_vars);
}

/// Evaluates at x. Division by zero, pow domain errors and overflow raise EvalError.
inline double eval(const Expr& e, const Point& x) {
    require_dim(x, e.n_vars(), "expression argument");
    return detail::eval_node(e.root(), x);
}

/// Fully parenthesized text that parses back to the same tree.
inline std::string print(const Expr& e) {
    std::string out;
    detail::print_node(e.root(), out);
    return out;
}

/// Same tree shape, operators, functions, variables and constants (offsets ignored).
inline bool same_structure(const Expr& a, const Expr& b) { return detail::same_node(a.root(), b.root()); }

} // namespace bpscal::expr
