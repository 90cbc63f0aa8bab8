#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace semiplanar::cli {

/// Values an expression may refer to.
struct Variables {
    double x = 0.0;
    double y = 0.0;
    double d = 0.0; // hop distance from the ball center
};

/// Arithmetic over x, y, r (= sqrt(x^2 + y^2)), d, pi and e, with + - * / ^,
/// parentheses and the functions abs, sqrt, exp, log, sin, cos, tan, atan2.
/// `^` is right associative and binds tighter than unary minus.
class Expression {
public:
    /// Throws Error(ErrorKind::Parse) with the offending column.
    static Expression parse(std::string_view text);

    double operator()(const Variables& v) const;

    /// True when the expression mentions x, y or r.
    bool uses_coordinates() const { return uses_coordinates_; }

    struct Node;

private:
    std::shared_ptr<const Node> root_;
    bool uses_coordinates_ = false;
};

} // namespace semiplanar::cli
