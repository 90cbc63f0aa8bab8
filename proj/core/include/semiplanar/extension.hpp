#pragma once

#include "semiplanar/graph.hpp"
#include "semiplanar/laplace.hpp"
#include "semiplanar/surface.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace semiplanar {

// ------------------------------------------------------------ edge formulas

/// (1 - t) fu + t fv.
double interpolate_edge(double fu, double fv, double t);
/// Integral over a unit edge of the linear interpolant squared: (fu^2 + fu fv + fv^2) / 3.
double edge_integral_sq(double fu, double fv);
/// Integral over a unit edge of the squared tangential derivative: (fu - fv)^2.
double edge_tangent_energy(double fu, double fv);

// ------------------------------------------------------------------ L_n map

/// Polar point (radius, angle).
struct Polar {
    double radius = 0.0;
    double angle = 0.0;
};

/// Sector j = floor(theta / alpha_n) of an angle normalized to [0, 2 pi).
int sector_index(int n, double theta);

/// Radial map of the regular n-gon onto its circumscribed disk: on sector j,
/// rho = r cos(theta - (2j+1) alpha/2) / cos(alpha/2), eta = theta. Throws
/// ErrorKind::InvalidArgument for a point outside the closed polygon.
Polar ln_map(int n, Polar polygon_point);
/// Inverse of ln_map. Throws for a point outside the closed disk of radius r_n.
Polar ln_inverse(int n, Polar disk_point);

/// Extreme values of |L x - L y| / |x - y| over random pairs in the n-gon.
struct Distortion {
    double min_ratio = 0.0;
    double max_ratio = 0.0;
};
Distortion ln_distortion(int n, int pairs, std::uint64_t seed);

// ---------------------------------------------------------- disk harmonics

/// Harmonic function on the disk of radius r given by its boundary Fourier
/// coefficients in the arclength-orthonormal basis 1/sqrt(2 pi r),
/// cos(k eta)/sqrt(pi r), sin(k eta)/sqrt(pi r).
struct DiskSeries {
    double radius = 1.0;
    double a0 = 0.0;
    std::vector<double> a; // a[k-1] for k = 1..K
    std::vector<double> b;

    int order() const { return static_cast<int>(a.size()); }

    /// Trapezoid-rule coefficients from M samples at eta_m = 2 pi m / M.
    static DiskSeries from_samples(double radius, std::span<const double> samples, int order);

    double evaluate(double rho, double eta) const;

    double boundary_mass() const;     // integral of h^2 over the circle (arclength)
    double boundary_tangent() const;  // integral of h_T^2, T the unit tangent
    double dirichlet_energy() const;  // integral of |grad g|^2 over the disk
    double mass() const;              // integral of g^2 over the disk
    double first_moment_sum() const;  // sum k (a_k^2 + b_k^2)
    double second_moment_sum() const; // sum k^2 (a_k^2 + b_k^2)
};

// --------------------------------------------------------------- extension

/// Harmonic extension data of one closed face.
struct FaceFourier {
    FaceId face = 0;
    int n = 0;
    std::vector<double> vertex_values; // in face order, vertex k at angle k alpha_n
    DiskSeries series;
};

/// Boundary trace h(eta) = f1(L_n^{-1}(r_n, eta)) of the linear edge interpolant.
double boundary_trace(int n, std::span<const double> vertex_values, double eta);

FaceFourier extend_face(FaceId face, int n, std::span<const double> vertex_values, int order, int samples);

inline constexpr int kDefaultOrder = 64;
inline constexpr int kDefaultSamples = 4096;
inline constexpr double kTraceTolerance = 1e-6;

/// f-bar: per-face harmonic extensions of a vertex function.
struct ExtendedField {
    int order = kDefaultOrder;
    int samples = kDefaultSamples;
    std::vector<std::optional<FaceFourier>> faces; // indexed by face id

    const FaceFourier& face(FaceId f) const;
    bool has_face(FaceId f) const {
        return f >= 0 && f < static_cast<FaceId>(faces.size()) && faces[f].has_value();
    }

    /// g(L_n(p)); points on the face boundary return the trace exactly.
    double evaluate(const SurfacePoint& p) const;
};

/// Extends f over every closed face whose vertices all carry values. Throws
/// ErrorKind::InvalidArgument when order < 1 or samples < 8 * order.
ExtendedField extend(const SemiplanarGraph& g, const ScalarField& f, int order = kDefaultOrder,
                     int samples = kDefaultSamples);

/// Same, restricted to the listed faces; each must be closed with all
/// vertex values defined.
ExtendedField extend(const SemiplanarGraph& g, const ScalarField& f, const std::vector<FaceId>& faces,
                     int order = kDefaultOrder, int samples = kDefaultSamples);

/// Integral of g^2 over the face itself (not the disk): disk quadrature
/// weighted by the Jacobian of L_n^{-1}.
double polygon_mass(const FaceFourier& face);

struct FaceEnergy {
    double dirichlet_energy = 0.0;
    double mass = 0.0;
    double boundary_mass = 0.0;
    double boundary_tangent = 0.0;
    double first_moment_sum = 0.0;
    double second_moment_sum = 0.0;
    bool coefficient_inequality = true; // first_moment_sum <= second_moment_sum
};

FaceEnergy face_energy(const FaceFourier& face);

struct Lemma35Report {
    double vertex_sum = 0.0;        // sum of f^2 over the face's vertices
    double boundary_integral = 0.0; // integral of f1^2 over the face boundary
    double face_mass = 0.0;         // integral of f-bar^2 over the face
    double vertex_ratio = 0.0;      // vertex_sum / boundary_integral
    double mass_ratio = 0.0;        // boundary_integral / face_mass
    bool vertex_bound = true;       // vertex_ratio <= 6
};

/// Throws ErrorKind::NonConvergence when the face mass vanishes while the
/// vertex values do not.
Lemma35Report lemma35_check(const FaceFourier& face);

/// sup over vertex functions of boundary_integral / face_mass on the n-gon:
/// the largest generalized eigenvalue of the two quadratic forms.
double lemma35_sharp_constant(int n, int order = kDefaultOrder, int samples = kDefaultSamples);

// ---------------------------------------------------------------------- I/O

///     { "K": order, "M": samples,
///       "faces": [{ "id", "n", "values": [...], "a0", "a": [...], "b": [...] }],
///       "config": {...} }
ExtendedField parse_extended(std::string_view text);
ExtendedField load_extended(const std::filesystem::path& path);
std::string serialize_extended(const ExtendedField& field, std::string_view config_json = {});
void save_extended(const std::filesystem::path& path, const ExtendedField& field, std::string_view config_json = {});

} // namespace semiplanar
