#pragma once

#include "semiplanar/extension.hpp"
#include "semiplanar/graph.hpp"
#include "semiplanar/laplace.hpp"
#include "semiplanar/surface.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace semiplanar {

// ------------------------------------------------------------------ reports

enum class InequalityId { RVC1, VD1, RVCG1, VDG1, PIG1, MVI_G, MVI_X, HARNACK, LEM33, LEM35, LEM36, LEM42, LEM43, LIP_EQ };

/// "RVC1", "MVI-G", "LIP-EQ", ...
const char* to_string(InequalityId id) noexcept;

struct Measurement {
    std::string params; // "key=value;key=value"
    double value = 0.0;
    std::optional<double> bound;
    std::optional<bool> pass;
};

/// One inequality measured over a sample. Rows carry a bound and a pass flag
/// only where the bound is numeric; elsewhere the summary is a measured sup
/// against an unspecified constant.
struct InequalityReport {
    InequalityId id = InequalityId::RVC1;
    std::string graph;
    std::string sample;
    std::vector<Measurement> rows;
    double measured = 0.0;
    std::optional<double> bound;
    std::optional<bool> pass;
    std::string note;

    /// Appends a row; with a bound, pass is value <= bound.
    void add(std::string params, double value, std::optional<double> bound = std::nullopt);
    /// measured = largest row value; pass = every bounded row passes.
    void finish();
};

struct NamedField {
    std::string name;
    ScalarField field;
};

void write_csv(std::ostream& out, const std::vector<InequalityReport>& reports, const std::string& config_json);
void write_json(std::ostream& out, const std::vector<InequalityReport>& reports, const std::string& config_json);

/// Shortest round-trip decimal form, so reports are byte-stable.
std::string format_number(double value);

// -------------------------------------------------------------- graph side

struct VolumePair {
    InequalityReport comparison; // RVCG1 or RVC1
    InequalityReport doubling;   // VDG1 or VD1
};

/// Factors (|B_R| / |B_r|) (r/R)^2 over all pairs r < R of `radii`, and
/// |B_2R| / |B_R| for each R. |B| is the degree sum. Throws
/// ErrorKind::InsufficientTruncation when a ball (including B_2R) reaches the
/// truncation boundary.
VolumePair verify_graph_volume(const SemiplanarGraph& g, VertexId p, const std::vector<int>& radii,
                               const std::string& graph_name = {});

/// Poincare ratio per field: sum over B_R of (f - f_B)^2 d_x divided by
/// R^2 times the sum over edges inside B_{CR} of (f(x) - f(y))^2. A field
/// constant on B_{CR} up to 1e-12 relative gives 0 / 0; its ratio is reported
/// as 1 and flagged in the note.
InequalityReport verify_poincare_graph(const SemiplanarGraph& g, VertexId p, int radius, int expansion,
                                       const std::vector<NamedField>& fields, const std::string& graph_name = {});

/// harnack_ratio per (field, radius).
InequalityReport verify_harnack(const SemiplanarGraph& g, VertexId p, const std::vector<int>& radii,
                                const std::vector<NamedField>& fields, const std::string& graph_name = {});

/// graph_mvi_ratio per (field, radius).
InequalityReport verify_mvi_graph(const SemiplanarGraph& g, VertexId p, const std::vector<int>& radii,
                                  const std::vector<NamedField>& fields, const std::string& graph_name = {});

// ------------------------------------------------------------ surface side

/// |B_R| / |B_r| against (R/r)^2 (1 + tolerance) for all pairs r < R of
/// `radii`, and |B_2R| against 4 |B_R| (1 + tolerance). The quadrature band
/// of each ball is recorded in the row parameters.
VolumePair verify_surface_volume(const MetricMesh& mesh, const SurfacePoint& p, const std::vector<double>& radii,
                                 double tolerance = 0.05, const std::string& graph_name = {});

/// d(x, y) / d^G(x, y) over vertex pairs; rows "max" (bound 1 + mesh error)
/// and "min".
InequalityReport verify_bilipschitz(const MetricMesh& mesh, const std::vector<std::pair<VertexId, VertexId>>& pairs,
                                    const std::string& graph_name = {});

/// Values of an extension at every node of a sampler.
std::vector<double> sample_extension(const SurfaceBallSampler& sampler, const ExtendedField& field);

/// Faces whose quadrature nodes appear in the sampler.
std::vector<FaceId> sampler_faces(const SurfaceBallSampler& sampler);

/// f-bar(p)^2 |B_R(p)| / integral over B_R(p) of f-bar^2 per (field, radius).
/// Every field must be harmonic (|Lf| <= harmonic_tolerance) at each vertex
/// of the faces the largest ball reaches. Throws ErrorKind::InvalidArgument
/// when a ball's volume does not exceed its quadrature band.
InequalityReport verify_mvi_surface(const MetricMesh& mesh, const SurfacePoint& p, const std::vector<double>& radii,
                                    const std::vector<NamedField>& fields, int order = kDefaultOrder,
                                    int samples = kDefaultSamples, double harmonic_tolerance = kHarmonicTolerance,
                                    const std::string& graph_name = {});

/// LEM33 (sum k (a^2+b^2) <= sum k^2 (a^2+b^2) on every face) and LEM35 (vertex
/// sum <= 6 * boundary integral on every face; boundary integral / face mass
/// measured) for the extension of each field.
struct ExtensionLemmaReports {
    InequalityReport lem33;
    InequalityReport lem35;
};

ExtensionLemmaReports verify_extension_lemmas(const std::vector<std::pair<std::string, ExtendedField>>& fields,
                                   const std::string& graph_name = {});

/// |B_{r'}(p)| / |B^G_r(q)| with r' = C r - 2 C3(D), C the measured
/// bi-Lipschitz constant. Throws ErrorKind::InvalidArgument unless r' > 0 and
/// q is a vertex of p's face.
InequalityReport lemma36_check(const MetricMesh& mesh, const SurfacePoint& p, VertexId q, int r, double lipschitz,
                               const std::string& graph_name = {});

// -------------------------------------------------------------------- Gram

enum class GramMode { Graph, Surface };

struct GramMatrix {
    std::vector<std::string> basis;
    double radius = 0.0;
    GramMode mode = GramMode::Graph;
    Eigen::MatrixXd entries;
    Eigen::VectorXd eigenvalues; // ascending

    int rank(double tau) const;
};

/// Count of eigenvalues above tau times the largest (0 for an empty or zero matrix).
int numerical_rank(const Eigen::VectorXd& eigenvalues, double tau);

/// A_R(u_i, u_j) = sum over B^G_R(p) of u_i u_j d_x. Throws when a field is
/// undefined on the ball.
GramMatrix gram_graph(const SemiplanarGraph& g, const std::vector<NamedField>& fields, VertexId p, int radius);

/// A_R(u_i, u_j) = integral over B_R of the extensions, from their values at the sampler nodes.
GramMatrix gram_surface(const SurfaceBallSampler& sampler, const std::vector<std::vector<double>>& node_values,
                        const std::vector<std::string>& names, double radius);

/// For each R: trace of A_R in a basis orthonormal for A_{R'}, R' = floor(beta R),
/// i.e. tr(A_R A_{R'}^{-1}), against k beta'^{-(2d+2+delta)} with beta' = R'/R.
/// Passes when some R of the schedule meets the bound. Throws
/// ErrorKind::InvalidArgument when A_{R'} is not positive definite.
InequalityReport lemma42_check(const SemiplanarGraph& g, const std::vector<NamedField>& fields, VertexId p, double d,
                               double beta, double delta, const std::vector<int>& schedule,
                               const std::string& graph_name = {});

/// For each R: trace of A_R divided by the largest eigenvalue of A_{(1+eps)R},
/// both in the supplied basis, surface mode. The sampler must reach (1+eps)
/// times the largest R. Throws ErrorKind::InvalidArgument unless 0 < eps < 1/2.
InequalityReport lemma43_check(const SurfaceBallSampler& sampler, const std::vector<std::vector<double>>& node_values,
                               const std::vector<double>& schedule, double eps, const std::string& graph_name = {});

// --------------------------------------------------------------- dimension

/// Least C with |u(x)| <= C (d^G(p, x) + 1)^d on each ball of the schedule.
struct GrowthFit {
    std::vector<double> constants; // one per radius
    double variation = 0.0;        // (max - min) / max over the three largest radii
    bool stable = true;            // variation < 20 %
};

/// `values` must be defined on B_R for every R of the schedule. With
/// `sign` = +1 (resp. -1) only the positive (negative) part of u counts;
/// 0 uses |u|.
GrowthFit fit_growth(const SemiplanarGraph& g, const std::vector<double>& values, VertexId p,
                     const std::vector<int>& radii, double d, int sign = 0);

inline constexpr double kGrowthStability = 0.2;

struct GrowthDirection {
    double growth_ratio = 0.0; // A_{Rmax}(w, w) / A_{r0}(w, w)
    GrowthFit fit;
    bool passes = false;
};

struct DimensionEstimate {
    double d = 0.0;
    VertexId center = 0;
    std::vector<int> radii;
    double tau = 1e-8;
    std::vector<std::string> candidates;
    int independent = 0;   // numerical rank of the candidate Gram at the largest radius
    int reference_radius = 0; // r0 of the growth ratios
    std::vector<GrowthDirection> directions;
    int k = 0;
};

/// Dimension of the span of `candidates` that passes the growth certificate.
/// The span is reduced to its numerically independent part at the largest
/// radius (relative cutoff tau), split into directions of increasing growth
/// by the generalized eigenproblem between the Gram matrices at the largest
/// and at the smallest positive-definite radius, and each direction is
/// certified with fit_growth. Throws ErrorKind::InvalidArgument for fewer
/// than three radii.
DimensionEstimate estimate_dimension(const SemiplanarGraph& g, const std::vector<NamedField>& candidates, double d,
                                     VertexId p, std::vector<int> radii, double tau = 1e-8);

/// Candidates from Dirichlet solves on the largest ball with boundary traces
/// of the monomials x^a y^b, a + b <= ceil(d), in layout coordinates centred at p.
std::vector<NamedField> monomial_candidates(const SemiplanarGraph& g, const PlanarLayout& layout, double d, VertexId p,
                                            int radius);

DimensionEstimate estimate_dimension(const SemiplanarGraph& g, const PlanarLayout& layout, double d, VertexId p,
                                     std::vector<int> radii, double tau = 1e-8);

struct Corollary44Report {
    GrowthFit lower;
    GrowthFit upper;
    bool stable = false; // the upper constant stabilizes
};

/// Certifies f >= -C (d^G + 1)^d (throws ErrorKind::InvalidArgument when that
/// lower certificate is unstable) and fits the upper constant.
Corollary44Report corollary44_check(const SemiplanarGraph& g, const ScalarField& f, double d, VertexId p,
                                    const std::vector<int>& radii);

} // namespace semiplanar
