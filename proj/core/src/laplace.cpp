#include "semiplanar/laplace.hpp"

#include "semiplanar/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace semiplanar {

ScalarField make_field(const SemiplanarGraph& g, const std::function<double(VertexId)>& value) {
    ScalarField f;
    f.values.resize(g.vertex_count());
    for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v) f.values[v] = value(v);
    return f;
}

double laplacian(const SemiplanarGraph& g, const ScalarField& f, VertexId v) {
    if (g.is_boundary(v)) {
        throw Error(ErrorKind::InvalidArgument,
                    "laplacian: vertex " + std::to_string(v) + " has an incomplete neighbourhood");
    }
    if (!f.defined(v)) {
        throw Error(ErrorKind::InvalidArgument, "laplacian: no value at vertex " + std::to_string(v));
    }
    double sum = 0.0;
    for (VertexId u : g.neighbors(v)) {
        if (!f.defined(u)) {
            throw Error(ErrorKind::InvalidArgument, "laplacian: missing value at neighbour " +
                                                        std::to_string(u) + " of " + std::to_string(v));
        }
        sum += f[u] - f[v];
    }
    return sum / g.degree(v);
}

double max_laplacian(const SemiplanarGraph& g, const ScalarField& f, const std::vector<VertexId>& vertices) {
    double worst = 0.0;
    for (VertexId v : vertices) worst = std::max(worst, std::abs(laplacian(g, f, v)));
    return worst;
}

double ball_average(const SemiplanarGraph& g, const ScalarField& f, const GraphBall& ball) {
    double num = 0.0;
    for (VertexId v : ball.members) num += f[v] * g.degree(v);
    return num / static_cast<double>(ball.volume);
}

std::vector<VertexId> outer_boundary(const SemiplanarGraph& g, const std::vector<VertexId>& interior) {
    std::vector<char> in(g.vertex_count(), 0);
    for (VertexId v : interior) in[v] = 1;
    std::vector<char> mark(g.vertex_count(), 0);
    for (VertexId v : interior) {
        for (VertexId u : g.neighbors(v)) {
            if (!in[u]) mark[u] = 1;
        }
    }
    std::vector<VertexId> out;
    for (std::size_t v = 0; v < mark.size(); ++v) {
        if (mark[v]) out.push_back(static_cast<VertexId>(v));
    }
    return out;
}

DirichletProblem ball_problem(const SemiplanarGraph& g, VertexId p, int radius,
                              const std::function<double(VertexId)>& boundary) {
    DirichletProblem problem;
    problem.graph = &g;
    problem.interior = graph_ball(g, p, radius).members;
    std::sort(problem.interior.begin(), problem.interior.end());
    problem.boundary_values.assign(g.vertex_count(), kUndefined);
    for (VertexId v : outer_boundary(g, problem.interior)) problem.boundary_values[v] = boundary(v);
    problem.domain = {FieldDomain::Kind::Ball, p, radius};
    return problem;
}

namespace {

/// The operator D - A restricted to the interior, in compressed rows.
struct InteriorOperator {
    std::vector<std::size_t> row_start;
    std::vector<std::size_t> col;
    std::vector<double> diag;

    void apply(const std::vector<double>& x, std::vector<double>& y) const {
        const std::size_t n = diag.size();
        for (std::size_t i = 0; i < n; ++i) {
            double s = diag[i] * x[i];
            for (std::size_t k = row_start[i]; k < row_start[i + 1]; ++k) s -= x[col[k]];
            y[i] = s;
        }
    }
};

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

} // namespace

DirichletSolution solve_dirichlet(const DirichletProblem& problem) {
    if (problem.graph == nullptr) throw Error(ErrorKind::InvalidArgument, "solve_dirichlet: no graph");
    const SemiplanarGraph& g = *problem.graph;
    if (problem.interior.empty()) throw Error(ErrorKind::InvalidArgument, "solve_dirichlet: empty interior");
    if (problem.boundary_values.size() != g.vertex_count()) {
        throw Error(ErrorKind::InvalidArgument, "solve_dirichlet: boundary values must be indexed by vertex");
    }

    const auto boundary = outer_boundary(g, problem.interior);
    if (boundary.empty()) throw Error(ErrorKind::InvalidArgument, "solve_dirichlet: empty boundary");

    std::unordered_map<VertexId, std::size_t> local;
    for (std::size_t i = 0; i < problem.interior.size(); ++i) {
        const VertexId v = problem.interior[i];
        if (g.is_boundary(v)) {
            throw Error(ErrorKind::InsufficientTruncation,
                        "solve_dirichlet: interior vertex " + std::to_string(v) + " is a truncation boundary vertex");
        }
        local.emplace(v, i);
    }

    double scale = 1.0;
    for (VertexId b : boundary) {
        const double value = problem.boundary_values[b];
        if (!std::isfinite(value)) {
            throw Error(ErrorKind::InvalidArgument,
                        "solve_dirichlet: boundary value at vertex " + std::to_string(b) + " is not finite");
        }
        scale = std::max(scale, std::abs(value));
    }

    const std::size_t n = problem.interior.size();
    InteriorOperator op;
    op.row_start.assign(n + 1, 0);
    op.diag.resize(n);
    std::vector<double> rhs(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const VertexId v = problem.interior[i];
        op.diag[i] = g.degree(v);
        for (VertexId u : g.neighbors(v)) {
            const auto it = local.find(u);
            if (it != local.end()) {
                op.col.push_back(it->second);
            } else {
                rhs[i] += problem.boundary_values[u];
            }
        }
        op.row_start[i + 1] = op.col.size();
    }

    // |Lf(x)| = |r_x| / d_x for the residual r = b - (D - A) f.
    const double target = problem.tolerance * scale;
    std::vector<double> x(n, 0.0);
    std::vector<double> r(n);
    std::vector<double> ax(n);
    auto true_residual = [&]() {
        op.apply(x, ax);
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            r[i] = rhs[i] - ax[i];
            worst = std::max(worst, std::abs(r[i]) / op.diag[i]);
        }
        return worst;
    };

    SolveReport report;
    report.method = "pcg";
    report.target = target;
    double residual = true_residual();
    long iter = 0;

    // Restarted PCG: each restart recomputes the true residual, so rounding
    // drift in the recursive residual cannot fake convergence.
    const long restart = std::max<long>(50, static_cast<long>(n));
    double best = residual;
    long since_improvement = 0;
    std::vector<double> z(n), p(n), ap(n);
    while (residual > target && iter < problem.max_iterations) {
        for (std::size_t i = 0; i < n; ++i) z[i] = r[i] / op.diag[i];
        p = z;
        double rz = dot(r, z);
        for (long k = 0; k < restart && iter < problem.max_iterations; ++k, ++iter) {
            op.apply(p, ap);
            const double pap = dot(p, ap);
            if (pap <= 0.0) break;
            const double alpha = rz / pap;
            double worst = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                x[i] += alpha * p[i];
                r[i] -= alpha * ap[i];
                worst = std::max(worst, std::abs(r[i]) / op.diag[i]);
            }
            if (worst <= 0.1 * target) {
                ++iter;
                break;
            }
            for (std::size_t i = 0; i < n; ++i) z[i] = r[i] / op.diag[i];
            const double rz_new = dot(r, z);
            const double beta = rz_new / rz;
            rz = rz_new;
            for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
        }
        residual = true_residual();
        if (residual < 0.5 * best) {
            best = residual;
            since_improvement = 0;
        } else if (++since_improvement >= 3) {
            break;
        }
    }

    if (residual > target) {
        // Jacobi sweeps contract the error for this diagonally dominant operator.
        report.method = "pcg+jacobi";
        std::vector<double> next(n);
        while (residual > target && iter < problem.max_iterations) {
            for (std::size_t i = 0; i < n; ++i) {
                double s = rhs[i];
                for (std::size_t k = op.row_start[i]; k < op.row_start[i + 1]; ++k) s += x[op.col[k]];
                next[i] = s / op.diag[i];
            }
            x.swap(next);
            ++iter;
            if (iter % 64 == 0) residual = true_residual();
        }
        residual = true_residual();
    }

    report.iterations = iter;
    report.max_residual = residual;
    if (residual > target) {
        std::ostringstream os;
        os << "solve_dirichlet: residual " << residual << " above target " << target << " after "
           << iter << " iterations";
        throw Error(ErrorKind::NonConvergence, os.str());
    }

    DirichletSolution out;
    out.field.values.assign(g.vertex_count(), kUndefined);
    out.field.domain = problem.domain;
    for (std::size_t i = 0; i < n; ++i) out.field.values[problem.interior[i]] = x[i];
    for (VertexId b : boundary) out.field.values[b] = problem.boundary_values[b];
    out.report = report;
    return out;
}

namespace {

void require_harmonic(const SemiplanarGraph& g, const GraphBall& ball, const ScalarField& f,
                      double tolerance, const char* what) {
    const double residual = max_laplacian(g, f, ball.members);
    if (residual > tolerance) {
        std::ostringstream os;
        os << what << ": field is not harmonic on the ball (max |Lf| = " << residual << ")";
        throw Error(ErrorKind::InvalidArgument, os.str());
    }
}

} // namespace

double harnack_ratio(const SemiplanarGraph& g, VertexId p, int radius, const ScalarField& f, double tolerance) {
    const GraphBall ball = graph_ball(g, p, radius);
    require_harmonic(g, ball, f, tolerance, "harnack_ratio");
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (VertexId v : ball.members) {
        if (!(f[v] > 0.0)) {
            throw Error(ErrorKind::InvalidArgument,
                        "harnack_ratio: field is not strictly positive at vertex " + std::to_string(v));
        }
        lo = std::min(lo, f[v]);
        hi = std::max(hi, f[v]);
    }
    return hi / lo;
}

double graph_mvi_ratio(const SemiplanarGraph& g, VertexId p, int radius, const ScalarField& f, double tolerance) {
    const GraphBall ball = graph_ball(g, p, radius);
    require_harmonic(g, ball, f, tolerance, "graph_mvi_ratio");
    double mass = 0.0;
    for (VertexId v : ball.members) mass += f[v] * f[v] * g.degree(v);
    if (mass == 0.0) return 0.0;
    return f[p] * f[p] * static_cast<double>(ball.volume) / mass;
}

} // namespace semiplanar
