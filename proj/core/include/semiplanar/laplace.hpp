#pragma once

#include "semiplanar/graph.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace semiplanar {

/// Where a field is meaningful. A ball domain B_R(p) means the field carries
/// values on the closure B_R(p) together with its outer boundary sphere.
struct FieldDomain {
    enum class Kind { Full, Ball };
    Kind kind = Kind::Full;
    VertexId center = 0;
    int radius = 0;
};

/// One real value per vertex; NaN marks a vertex outside the field's support.
struct ScalarField {
    std::vector<double> values;
    FieldDomain domain;

    bool defined(VertexId v) const { return !std::isnan(values[v]); }
    double operator[](VertexId v) const { return values[v]; }
    std::size_t size() const { return values.size(); }
};

inline constexpr double kUndefined = std::numeric_limits<double>::quiet_NaN();

ScalarField make_field(const SemiplanarGraph& g, const std::function<double(VertexId)>& value);

/// Lf(v) = (1/d_v) * sum over neighbours y of (f(y) - f(v)).
/// Throws when v is a boundary vertex or a neighbour value is missing.
double laplacian(const SemiplanarGraph& g, const ScalarField& f, VertexId v);

/// Largest |Lf| over `vertices`.
double max_laplacian(const SemiplanarGraph& g, const ScalarField& f, const std::vector<VertexId>& vertices);

/// f_B = sum f d_x / sum d_x over the ball.
double ball_average(const SemiplanarGraph& g, const ScalarField& f, const GraphBall& ball);

/// Dirichlet data: solve Lf = 0 on `interior`, f = boundary_values on the
/// outer vertex boundary { x : d(x, interior) = 1 }.
struct DirichletProblem {
    const SemiplanarGraph* graph = nullptr;
    std::vector<VertexId> interior;
    std::vector<double> boundary_values; // indexed by vertex; read on the outer boundary only
    FieldDomain domain;
    /// Target for max |Lf| on the interior, relative to max(1, max |boundary value|).
    double tolerance = 1e-12;
    long max_iterations = 1'000'000;
};

/// Interior B_R(p); boundary data from `boundary` evaluated on the sphere at
/// distance R+1. Throws ErrorKind::InsufficientTruncation if B_R(p) touches
/// the truncation boundary.
DirichletProblem ball_problem(const SemiplanarGraph& g, VertexId p, int radius,
                              const std::function<double(VertexId)>& boundary);

/// Outer boundary of the interior set, in increasing vertex order.
std::vector<VertexId> outer_boundary(const SemiplanarGraph& g, const std::vector<VertexId>& interior);

struct SolveReport {
    std::string method;
    long iterations = 0;
    double max_residual = 0.0;
    double target = 0.0;
};

struct DirichletSolution {
    ScalarField field; // defined on interior and its outer boundary
    SolveReport report;
};

/// Preconditioned conjugate gradients on the symmetric form sum d_x f g,
/// with Jacobi sweeps as fallback if CG stagnates. Deterministic for a
/// fixed problem. Throws ErrorKind::NonConvergence (with the residual) or
/// ErrorKind::InvalidArgument for an empty boundary.
DirichletSolution solve_dirichlet(const DirichletProblem& problem);

/// Tolerance for "is harmonic" predicates.
inline constexpr double kHarmonicTolerance = 1e-9;

/// max over B_R(p) of f divided by min over B_R(p) of f. Requires f > 0 on
/// the ball and |Lf| <= tolerance there.
double harnack_ratio(const SemiplanarGraph& g, VertexId p, int radius, const ScalarField& f,
                     double tolerance = kHarmonicTolerance);

/// f(p)^2 |B_R(p)| / sum over B_R(p) of f^2 d_x; zero for the zero field.
double graph_mvi_ratio(const SemiplanarGraph& g, VertexId p, int radius, const ScalarField& f,
                       double tolerance = kHarmonicTolerance);

} // namespace semiplanar
