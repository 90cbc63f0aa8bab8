#include "semiplanar/analysis.hpp"

#include "semiplanar/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace semiplanar {

GrowthFit fit_growth(const SemiplanarGraph& g, const std::vector<double>& values, VertexId p,
                     const std::vector<int>& radii, double d, int sign) {
    if (radii.empty()) throw Error(ErrorKind::InvalidArgument, "fit_growth: empty schedule");
    const int largest = *std::max_element(radii.begin(), radii.end());
    const auto dist = bfs_distances(g, p, largest);
    GrowthFit fit;
    for (int R : radii) {
        double c = 0.0;
        for (std::size_t v = 0; v < dist.size(); ++v) {
            if (dist[v] == kUnreached || dist[v] > R) continue;
            const double u = values[v];
            if (std::isnan(u)) {
                throw Error(ErrorKind::InvalidArgument,
                            "fit_growth: value missing at vertex " + std::to_string(v) + " of B_" + std::to_string(R));
            }
            const double part = sign > 0 ? std::max(u, 0.0) : sign < 0 ? std::max(-u, 0.0) : std::abs(u);
            c = std::max(c, part / std::pow(dist[v] + 1.0, d));
        }
        fit.constants.push_back(c);
    }
    std::vector<int> order(radii.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return radii[a] < radii[b]; });
    double lo = 0.0, hi = 0.0;
    const std::size_t start = order.size() > 3 ? order.size() - 3 : 0;
    for (std::size_t i = start; i < order.size(); ++i) {
        const double c = fit.constants[order[i]];
        lo = (i == start) ? c : std::min(lo, c);
        hi = (i == start) ? c : std::max(hi, c);
    }
    fit.variation = hi > 0.0 ? (hi - lo) / hi : 0.0;
    fit.stable = fit.variation < kGrowthStability;
    return fit;
}

DimensionEstimate estimate_dimension(const SemiplanarGraph& g, const std::vector<NamedField>& candidates, double d,
                                     VertexId p, std::vector<int> radii, double tau) {
    std::sort(radii.begin(), radii.end());
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
    if (radii.size() < 3) {
        throw Error(ErrorKind::InvalidArgument, "estimate_dimension: need at least 3 radii to certify growth");
    }
    if (!(tau > 0.0 && tau < 1.0)) throw Error(ErrorKind::InvalidArgument, "estimate_dimension: tau must lie in (0, 1)");

    DimensionEstimate est;
    est.d = d;
    est.center = p;
    est.radii = radii;
    est.tau = tau;
    for (const auto& c : candidates) est.candidates.push_back(c.name);
    if (candidates.empty()) return est;

    const int largest = radii.back();
    const GraphBall ball = graph_ball(g, p, largest);
    const auto m = static_cast<Eigen::Index>(candidates.size());
    const auto nb = static_cast<Eigen::Index>(ball.members.size());
    const auto dist = bfs_distances(g, p, largest);

    // Candidate values on the largest ball, one column each.
    Eigen::MatrixXd values(nb, m);
    Eigen::VectorXd weight(nb);
    for (Eigen::Index r = 0; r < nb; ++r) {
        const VertexId v = ball.members[r];
        weight[r] = g.degree(v);
        for (Eigen::Index c = 0; c < m; ++c) {
            const auto& f = candidates[c].field;
            if (static_cast<std::size_t>(v) >= f.size() || !f.defined(v)) {
                throw Error(ErrorKind::InvalidArgument, "estimate_dimension: candidate " + candidates[c].name +
                                                            " is undefined on B_" + std::to_string(largest));
            }
            values(r, c) = f[v];
        }
    }

    // Numerically independent part of the span at the largest radius, made
    // orthonormal for A_Rmax. Columns are scaled first so tau is relative to
    // comparable magnitudes.
    Eigen::MatrixXd gram = values.transpose() * weight.asDiagonal() * values;
    Eigen::VectorXd scale(m);
    for (Eigen::Index c = 0; c < m; ++c) scale[c] = gram(c, c) > 0.0 ? 1.0 / std::sqrt(gram(c, c)) : 0.0;
    const Eigen::MatrixXd normalized = scale.asDiagonal() * gram * scale.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> full(normalized);
    const Eigen::VectorXd lambda = full.eigenvalues();
    const double top = lambda.size() ? lambda.maxCoeff() : 0.0;
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
        if (top > 0.0 && lambda[i] > tau * top) keep.push_back(i);
    }
    est.independent = static_cast<int>(keep.size());
    if (keep.empty()) return est;
    Eigen::MatrixXd coeff(m, static_cast<Eigen::Index>(keep.size()));
    for (std::size_t j = 0; j < keep.size(); ++j) {
        coeff.col(static_cast<Eigen::Index>(j)) =
            scale.asDiagonal() * full.eigenvectors().col(keep[j]) / std::sqrt(lambda[keep[j]]);
    }
    const Eigen::MatrixXd basis = values * coeff; // A_Rmax-orthonormal

    // Reference radius: smallest one on which the reduced Gram is still
    // positive definite. Directions of slow growth keep a large share of
    // their A_Rmax mass there.
    Eigen::MatrixXd small = Eigen::MatrixXd::Identity(basis.cols(), basis.cols());
    est.reference_radius = largest;
    for (int R : radii) {
        Eigen::VectorXd w = weight;
        for (Eigen::Index r = 0; r < nb; ++r) {
            if (dist[ball.members[r]] > R) w[r] = 0.0;
        }
        const Eigen::MatrixXd candidate = basis.transpose() * w.asDiagonal() * basis;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> check(candidate, Eigen::EigenvaluesOnly);
        const double hi = check.eigenvalues().maxCoeff();
        if (hi > 0.0 && check.eigenvalues().minCoeff() > tau * hi) {
            small = candidate;
            est.reference_radius = R;
            break;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> split(small);
    const Eigen::VectorXd mu = split.eigenvalues(); // A_r0 share of each direction

    std::vector<double> field(g.vertex_count(), kUndefined);
    Eigen::MatrixXd passing(nb, 0);
    for (Eigen::Index j = mu.size() - 1; j >= 0; --j) {
        const Eigen::VectorXd w = basis * split.eigenvectors().col(j);
        std::fill(field.begin(), field.end(), kUndefined);
        for (Eigen::Index r = 0; r < nb; ++r) field[ball.members[r]] = w[r];
        GrowthDirection dir;
        dir.growth_ratio = mu[j] > 0.0 ? 1.0 / mu[j] : std::numeric_limits<double>::infinity();
        dir.fit = fit_growth(g, field, p, radii, d);
        dir.passes = dir.fit.stable;
        if (dir.passes) {
            passing.conservativeResize(nb, passing.cols() + 1);
            passing.col(passing.cols() - 1) = w;
        }
        est.directions.push_back(std::move(dir));
    }
    if (passing.cols() > 0) {
        const Eigen::MatrixXd pg = passing.transpose() * weight.asDiagonal() * passing;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> final_rank(pg, Eigen::EigenvaluesOnly);
        est.k = numerical_rank(final_rank.eigenvalues(), tau);
    }
    return est;
}

std::vector<NamedField> monomial_candidates(const SemiplanarGraph& g, const PlanarLayout& layout, double d, VertexId p,
                                            int radius) {
    if (!(d >= 0.0)) throw Error(ErrorKind::InvalidArgument, "monomial_candidates: d must be nonnegative");
    const int degree = static_cast<int>(std::ceil(d - 1e-12));
    const Point2 origin = layout.position[p];
    std::vector<NamedField> out;
    for (int total = 0; total <= degree; ++total) {
        for (int b = 0; b <= total; ++b) {
            const int a = total - b;
            auto monomial = [&, a, b](VertexId v) {
                const Point2 z = layout.position[v] - origin;
                return std::pow(z.real(), a) * std::pow(z.imag(), b);
            };
            std::ostringstream name;
            if (a == 0 && b == 0) name << "1";
            if (a > 0) name << "x" << (a > 1 ? "^" + std::to_string(a) : "");
            if (b > 0) name << (a > 0 ? " " : "") << "y" << (b > 1 ? "^" + std::to_string(b) : "");
            DirichletSolution sol = solve_dirichlet(ball_problem(g, p, radius, monomial));
            out.push_back({name.str(), std::move(sol.field)});
        }
    }
    return out;
}

DimensionEstimate estimate_dimension(const SemiplanarGraph& g, const PlanarLayout& layout, double d, VertexId p,
                                     std::vector<int> radii, double tau) {
    if (radii.empty()) throw Error(ErrorKind::InvalidArgument, "estimate_dimension: empty schedule");
    const int largest = *std::max_element(radii.begin(), radii.end());
    return estimate_dimension(g, monomial_candidates(g, layout, d, p, largest), d, p, std::move(radii), tau);
}

Corollary44Report corollary44_check(const SemiplanarGraph& g, const ScalarField& f, double d, VertexId p,
                                    const std::vector<int>& radii) {
    if (radii.size() < 3) throw Error(ErrorKind::InvalidArgument, "corollary44_check: need at least 3 radii");
    Corollary44Report out;
    out.lower = fit_growth(g, f.values, p, radii, d, -1);
    if (!out.lower.stable) {
        std::ostringstream os;
        os << "corollary44_check: lower growth certificate fails (variation " << out.lower.variation << ")";
        throw Error(ErrorKind::InvalidArgument, os.str());
    }
    out.upper = fit_growth(g, f.values, p, radii, d, +1);
    out.stable = out.upper.stable;
    return out;
}

} // namespace semiplanar
