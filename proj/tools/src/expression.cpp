#include "semiplanar_cli/expression.hpp"

#include <semiplanar/error.hpp>

#include <charconv>
#include <cctype>
#include <cmath>
#include <numbers>
#include <vector>

namespace semiplanar::cli {

struct Expression::Node {
    enum class Op { Number, X, Y, R, D, Neg, Add, Sub, Mul, Div, Pow, Call };
    Op op = Op::Number;
    double number = 0.0;
    std::string function;
    std::vector<std::shared_ptr<const Node>> args;

    double eval(const Variables& v) const {
        switch (op) {
        case Op::Number: return number;
        case Op::X: return v.x;
        case Op::Y: return v.y;
        case Op::R: return std::hypot(v.x, v.y);
        case Op::D: return v.d;
        case Op::Neg: return -args[0]->eval(v);
        case Op::Add: return args[0]->eval(v) + args[1]->eval(v);
        case Op::Sub: return args[0]->eval(v) - args[1]->eval(v);
        case Op::Mul: return args[0]->eval(v) * args[1]->eval(v);
        case Op::Div: return args[0]->eval(v) / args[1]->eval(v);
        case Op::Pow: return std::pow(args[0]->eval(v), args[1]->eval(v));
        case Op::Call: break;
        }
        const double a = args[0]->eval(v);
        if (function == "abs") return std::abs(a);
        if (function == "sqrt") return std::sqrt(a);
        if (function == "exp") return std::exp(a);
        if (function == "log") return std::log(a);
        if (function == "sin") return std::sin(a);
        if (function == "cos") return std::cos(a);
        if (function == "tan") return std::tan(a);
        return std::atan2(a, args[1]->eval(v));
    }
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Op = Expression::Node::Op;

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    NodePtr parse_all() {
        NodePtr root = sum();
        skip();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return root;
    }

    bool uses_coordinates = false;

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw Error(ErrorKind::Parse, "expression column " + std::to_string(pos_ + 1) + ": " + what);
    }

    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    static NodePtr make(Op op, std::vector<NodePtr> args = {}, double number = 0.0) {
        auto n = std::make_shared<Expression::Node>();
        n->op = op;
        n->args = std::move(args);
        n->number = number;
        return n;
    }

    NodePtr sum() {
        NodePtr left = product();
        for (;;) {
            if (accept('+')) {
                left = make(Op::Add, {left, product()});
            } else if (accept('-')) {
                left = make(Op::Sub, {left, product()});
            } else {
                return left;
            }
        }
    }

    NodePtr product() {
        NodePtr left = unary();
        for (;;) {
            if (accept('*')) {
                left = make(Op::Mul, {left, unary()});
            } else if (accept('/')) {
                left = make(Op::Div, {left, unary()});
            } else {
                return left;
            }
        }
    }

    NodePtr unary() {
        if (accept('-')) return make(Op::Neg, {unary()});
        if (accept('+')) return unary();
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        if (accept('^')) return make(Op::Pow, {base, unary()});
        return base;
    }

    NodePtr primary() {
        skip();
        if (pos_ >= text_.size()) fail("unexpected end of expression");
        const char c = text_[pos_];
        if (accept('(')) {
            NodePtr inner = sum();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            double value = 0.0;
            const auto [end, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
            if (ec != std::errc()) fail("bad number");
            pos_ = static_cast<std::size_t>(end - text_.data());
            return make(Op::Number, {}, value);
        }
        if (!std::isalpha(static_cast<unsigned char>(c))) fail("unexpected '" + std::string(1, c) + "'");
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        const std::string name(text_.substr(start, pos_ - start));

        if (name == "x" || name == "y" || name == "r") {
            uses_coordinates = true;
            return make(name == "x" ? Op::X : name == "y" ? Op::Y : Op::R);
        }
        if (name == "d") return make(Op::D);
        if (name == "pi") return make(Op::Number, {}, std::numbers::pi);
        if (name == "e") return make(Op::Number, {}, std::numbers::e);

        const int arity = name == "atan2" ? 2
                          : (name == "abs" || name == "sqrt" || name == "exp" || name == "log" || name == "sin" ||
                             name == "cos" || name == "tan")
                              ? 1
                              : 0;
        if (arity == 0) {
            pos_ = start;
            fail("unknown name '" + name + "'");
        }
        if (!accept('(')) fail("expected '(' after " + name);
        auto call = std::make_shared<Expression::Node>();
        call->op = Op::Call;
        call->function = name;
        call->args.push_back(sum());
        for (int k = 1; k < arity; ++k) {
            if (!accept(',')) fail(name + " takes " + std::to_string(arity) + " arguments");
            call->args.push_back(sum());
        }
        if (!accept(')')) fail("expected ')'");
        return call;
    }
};

} // namespace

Expression Expression::parse(std::string_view text) {
    Parser parser(text);
    Expression e;
    e.root_ = parser.parse_all();
    e.uses_coordinates_ = parser.uses_coordinates;
    return e;
}

double Expression::operator()(const Variables& v) const { return root_->eval(v); }

} // namespace semiplanar::cli
