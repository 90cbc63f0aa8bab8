#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace semiplanar {

struct GaussRule {
    std::vector<double> nodes;   // on [-1, 1]
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule (Newton iteration on P_n).
inline GaussRule gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

/// Barycentric point with weight relative to the triangle area.
struct TrianglePoint {
    std::array<double, 3> bary;
    double weight;
};

/// Symmetric rules on a triangle: order 1 (centroid), 2 (three interior
/// points) and 3 (Strang-Fix six points, exact for cubics).
inline std::span<const TrianglePoint> triangle_rule(int order) {
    static const TrianglePoint centroid[] = {{{1.0 / 3, 1.0 / 3, 1.0 / 3}, 1.0}};
    static const TrianglePoint three[] = {
        {{2.0 / 3, 1.0 / 6, 1.0 / 6}, 1.0 / 3},
        {{1.0 / 6, 2.0 / 3, 1.0 / 6}, 1.0 / 3},
        {{1.0 / 6, 1.0 / 6, 2.0 / 3}, 1.0 / 3},
    };
    constexpr double a = 0.659027622374092;
    constexpr double b = 0.231933368553031;
    constexpr double c = 0.109039009072877;
    static const TrianglePoint six[] = {
        {{a, b, c}, 1.0 / 6}, {{a, c, b}, 1.0 / 6}, {{b, a, c}, 1.0 / 6},
        {{b, c, a}, 1.0 / 6}, {{c, a, b}, 1.0 / 6}, {{c, b, a}, 1.0 / 6},
    };
    switch (order) {
    case 1: return centroid;
    case 2: return three;
    case 3: return six;
    default: throw std::invalid_argument("triangle_rule: order must be 1, 2 or 3");
    }
}

} // namespace semiplanar
