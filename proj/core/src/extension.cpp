#include "semiplanar/extension.hpp"

#include "semiplanar/error.hpp"
#include "semiplanar/quadrature.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>

namespace semiplanar {

namespace {
constexpr double kPi = std::numbers::pi;

double normalize_angle(double theta) {
    double t = std::fmod(theta, 2.0 * kPi);
    if (t < 0.0) t += 2.0 * kPi;
    if (t >= 2.0 * kPi) t = 0.0;
    return t;
}
} // namespace

double interpolate_edge(double fu, double fv, double t) { return (1.0 - t) * fu + t * fv; }

double edge_integral_sq(double fu, double fv) { return (fu * fu + fu * fv + fv * fv) / 3.0; }

double edge_tangent_energy(double fu, double fv) { return (fu - fv) * (fu - fv); }

int sector_index(int n, double theta) {
    const double alpha = 2.0 * kPi / n;
    const int j = static_cast<int>(std::floor(normalize_angle(theta) / alpha));
    return std::clamp(j, 0, n - 1);
}

Polar ln_map(int n, Polar p) {
    const FaceGeometry fg = face_geometry(n);
    const double theta = normalize_angle(p.angle);
    const int j = sector_index(n, theta);
    const double c = std::cos(theta - (2 * j + 1) * fg.sector_angle / 2.0);
    if (p.radius < 0.0 || p.radius * c > fg.apothem * (1.0 + 1e-12) + 1e-12) {
        throw Error(ErrorKind::InvalidArgument, "ln_map: point outside the polygon");
    }
    return {p.radius * c / std::cos(fg.sector_angle / 2.0), theta};
}

Polar ln_inverse(int n, Polar q) {
    const FaceGeometry fg = face_geometry(n);
    if (q.radius < 0.0 || q.radius > fg.circumradius * (1.0 + 1e-12) + 1e-12) {
        throw Error(ErrorKind::InvalidArgument, "ln_inverse: point outside the disk");
    }
    const double eta = normalize_angle(q.angle);
    const int j = sector_index(n, eta);
    const double c = std::cos(eta - (2 * j + 1) * fg.sector_angle / 2.0);
    return {q.radius * std::cos(fg.sector_angle / 2.0) / c, eta};
}

Distortion ln_distortion(int n, int pairs, std::uint64_t seed) {
    const FaceGeometry fg = face_geometry(n);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    auto sample = [&]() {
        while (true) {
            const Point2 z(unit(rng) * fg.circumradius, unit(rng) * fg.circumradius);
            double theta = std::arg(z);
            if (inside_polygon(n, std::abs(z), theta, 0.0)) return z;
        }
    };
    auto image = [&](Point2 z) {
        const Polar q = ln_map(n, {std::abs(z), std::arg(z)});
        return std::polar(q.radius, q.angle);
    };
    Distortion out{std::numeric_limits<double>::infinity(), 0.0};
    for (int i = 0; i < pairs; ++i) {
        const Point2 x = sample();
        const Point2 y = sample();
        const double d = std::abs(x - y);
        if (d < 1e-9) continue;
        const double ratio = std::abs(image(x) - image(y)) / d;
        out.min_ratio = std::min(out.min_ratio, ratio);
        out.max_ratio = std::max(out.max_ratio, ratio);
    }
    return out;
}

// ---------------------------------------------------------------- DiskSeries

DiskSeries DiskSeries::from_samples(double radius, std::span<const double> samples, int order) {
    const std::size_t m = samples.size();
    if (order < 1 || m < 8 * static_cast<std::size_t>(order)) {
        throw Error(ErrorKind::InvalidArgument, "DiskSeries: need order >= 1 and at least 8 samples per harmonic");
    }
    std::vector<double> cos_table(m), sin_table(m);
    for (std::size_t q = 0; q < m; ++q) {
        cos_table[q] = std::cos(2.0 * kPi * q / m);
        sin_table[q] = std::sin(2.0 * kPi * q / m);
    }
    const double step = 2.0 * kPi * radius / m; // arclength per sample
    DiskSeries s;
    s.radius = radius;
    double sum = 0.0;
    for (double v : samples) sum += v;
    s.a0 = step * sum / std::sqrt(2.0 * kPi * radius);
    s.a.assign(order, 0.0);
    s.b.assign(order, 0.0);
    const double norm = step / std::sqrt(kPi * radius);
    for (int k = 1; k <= order; ++k) {
        double ca = 0.0;
        double cb = 0.0;
        std::size_t q = 0;
        for (std::size_t i = 0; i < m; ++i) {
            ca += samples[i] * cos_table[q];
            cb += samples[i] * sin_table[q];
            q += k;
            if (q >= m) q -= m;
        }
        s.a[k - 1] = norm * ca;
        s.b[k - 1] = norm * cb;
    }
    return s;
}

double DiskSeries::evaluate(double rho, double eta) const {
    double value = a0 / std::sqrt(2.0 * kPi * radius);
    const std::complex<double> step = std::polar(rho / radius, eta);
    std::complex<double> z = step;
    double sum = 0.0;
    for (int k = 0; k < order(); ++k) {
        sum += a[k] * z.real() + b[k] * z.imag();
        z *= step;
    }
    return value + sum / std::sqrt(kPi * radius);
}

double DiskSeries::boundary_mass() const {
    double s = a0 * a0;
    for (int k = 0; k < order(); ++k) s += a[k] * a[k] + b[k] * b[k];
    return s;
}

double DiskSeries::first_moment_sum() const {
    double s = 0.0;
    for (int k = 0; k < order(); ++k) s += (k + 1) * (a[k] * a[k] + b[k] * b[k]);
    return s;
}

double DiskSeries::second_moment_sum() const {
    double s = 0.0;
    for (int k = 0; k < order(); ++k) s += double(k + 1) * (k + 1) * (a[k] * a[k] + b[k] * b[k]);
    return s;
}

double DiskSeries::boundary_tangent() const { return second_moment_sum() / (radius * radius); }

double DiskSeries::dirichlet_energy() const { return first_moment_sum() / radius; }

double DiskSeries::mass() const {
    double s = a0 * a0 / 2.0;
    for (int k = 0; k < order(); ++k) s += (a[k] * a[k] + b[k] * b[k]) / (2.0 * (k + 1) + 2.0);
    return radius * s;
}

// ----------------------------------------------------------------- extension

double boundary_trace(int n, std::span<const double> vertex_values, double eta) {
    if (static_cast<int>(vertex_values.size()) != n) {
        throw Error(ErrorKind::InvalidArgument, "boundary_trace: one value per polygon vertex expected");
    }
    const FaceGeometry fg = face_geometry(n);
    const double theta = normalize_angle(eta);
    const int j = sector_index(n, theta);
    // Signed offset from the edge midpoint along the unit edge.
    const double t = std::clamp(0.5 + fg.apothem * std::tan(theta - (2 * j + 1) * fg.sector_angle / 2.0), 0.0, 1.0);
    return interpolate_edge(vertex_values[j], vertex_values[(j + 1) % n], t);
}

FaceFourier extend_face(FaceId face, int n, std::span<const double> vertex_values, int order, int samples) {
    if (order < 1) throw Error(ErrorKind::InvalidArgument, "extend: K must be at least 1");
    if (samples < 8 * order) {
        throw Error(ErrorKind::InvalidArgument, "extend: insufficient sampling, need M >= 8K (M = " +
                                                    std::to_string(samples) + ", K = " + std::to_string(order) + ")");
    }
    FaceFourier out;
    out.face = face;
    out.n = n;
    out.vertex_values.assign(vertex_values.begin(), vertex_values.end());
    std::vector<double> h(samples);
    for (int m = 0; m < samples; ++m) h[m] = boundary_trace(n, vertex_values, 2.0 * kPi * m / samples);
    out.series = DiskSeries::from_samples(face_geometry(n).circumradius, h, order);
    return out;
}

const FaceFourier& ExtendedField::face(FaceId f) const {
    if (!has_face(f)) throw Error(ErrorKind::InvalidArgument, "extended field has no data for face " + std::to_string(f));
    return *faces[f];
}

double ExtendedField::evaluate(const SurfacePoint& p) const {
    const FaceFourier& ff = face(p.face);
    const Polar q = ln_map(ff.n, {p.r, p.theta});
    const double rn = ff.series.radius;
    if (q.radius >= rn * (1.0 - 1e-12)) return boundary_trace(ff.n, ff.vertex_values, q.angle);
    return ff.series.evaluate(q.radius, q.angle);
}

ExtendedField extend(const SemiplanarGraph& g, const ScalarField& f, int order, int samples) {
    if (f.size() != g.vertex_count()) throw Error(ErrorKind::InvalidArgument, "extend: field size does not match graph");
    if (order < 1) throw Error(ErrorKind::InvalidArgument, "extend: K must be at least 1");
    if (samples < 8 * order) {
        throw Error(ErrorKind::InvalidArgument, "extend: insufficient sampling, need M >= 8K (M = " +
                                                    std::to_string(samples) + ", K = " + std::to_string(order) + ")");
    }
    ExtendedField out;
    out.order = order;
    out.samples = samples;
    out.faces.resize(g.faces().size());
    std::vector<double> values;
    for (FaceId id = 0; id < static_cast<FaceId>(g.faces().size()); ++id) {
        const Face& face = g.face(id);
        if (!face.closed) continue;
        values.clear();
        bool complete = true;
        for (VertexId v : face.vertices) {
            complete = complete && f.defined(v);
            values.push_back(f[v]);
        }
        if (complete) out.faces[id] = extend_face(id, face.degree(), values, order, samples);
    }
    return out;
}

ExtendedField extend(const SemiplanarGraph& g, const ScalarField& f, const std::vector<FaceId>& faces, int order,
                     int samples) {
    if (f.size() != g.vertex_count()) throw Error(ErrorKind::InvalidArgument, "extend: field size does not match graph");
    ExtendedField out;
    out.order = order;
    out.samples = samples;
    out.faces.resize(g.faces().size());
    std::vector<double> values;
    for (FaceId id : faces) {
        const Face& face = g.face(id);
        if (!face.closed) throw Error(ErrorKind::InvalidArgument, "extend: face " + std::to_string(id) + " is not closed");
        values.clear();
        for (VertexId v : face.vertices) {
            if (!f.defined(v)) {
                throw Error(ErrorKind::InvalidArgument,
                            "extend: no value at vertex " + std::to_string(v) + " of face " + std::to_string(id));
            }
            values.push_back(f[v]);
        }
        out.faces[id] = extend_face(id, face.degree(), values, order, samples);
    }
    return out;
}

namespace {

/// Quadrature of the face in disk coordinates: nodes (rho, eta) with
/// weights that already include the Jacobian c(eta)^2 rho of L_n^{-1}.
struct FaceQuadrature {
    std::vector<double> rho, eta, weight;
};

FaceQuadrature face_quadrature(int n, int order) {
    const FaceGeometry fg = face_geometry(n);
    const GaussRule radial = gauss_legendre(order + 1);
    const GaussRule angular = gauss_legendre((2 * order + n - 1) / n + 8);
    const double half = fg.sector_angle / 2.0;
    FaceQuadrature q;
    for (int j = 0; j < n; ++j) {
        const double mid = (2 * j + 1) * half;
        for (std::size_t ia = 0; ia < angular.nodes.size(); ++ia) {
            const double eta = mid + half * angular.nodes[ia];
            const double c = std::cos(half) / std::cos(eta - mid);
            for (std::size_t ir = 0; ir < radial.nodes.size(); ++ir) {
                const double rho = 0.5 * fg.circumradius * (radial.nodes[ir] + 1.0);
                q.rho.push_back(rho);
                q.eta.push_back(eta);
                q.weight.push_back(half * angular.weights[ia] * 0.5 * fg.circumradius * radial.weights[ir] * c * c * rho);
            }
        }
    }
    return q;
}

} // namespace

double polygon_mass(const FaceFourier& face) {
    const FaceQuadrature q = face_quadrature(face.n, face.series.order());
    double sum = 0.0;
    for (std::size_t i = 0; i < q.rho.size(); ++i) {
        const double g = face.series.evaluate(q.rho[i], q.eta[i]);
        sum += q.weight[i] * g * g;
    }
    return sum;
}

FaceEnergy face_energy(const FaceFourier& face) {
    const DiskSeries& s = face.series;
    FaceEnergy e;
    e.dirichlet_energy = s.dirichlet_energy();
    e.mass = s.mass();
    e.boundary_mass = s.boundary_mass();
    e.boundary_tangent = s.boundary_tangent();
    e.first_moment_sum = s.first_moment_sum();
    e.second_moment_sum = s.second_moment_sum();
    e.coefficient_inequality = e.first_moment_sum <= e.second_moment_sum;
    return e;
}

Lemma35Report lemma35_check(const FaceFourier& face) {
    Lemma35Report r;
    const int n = face.n;
    for (int k = 0; k < n; ++k) {
        const double fu = face.vertex_values[k];
        const double fv = face.vertex_values[(k + 1) % n];
        r.vertex_sum += fu * fu;
        r.boundary_integral += edge_integral_sq(fu, fv);
    }
    r.face_mass = polygon_mass(face);
    if (r.vertex_sum == 0.0) {
        r.vertex_ratio = 0.0;
        r.mass_ratio = 0.0;
        return r;
    }
    if (!(r.face_mass > 0.0)) {
        throw Error(ErrorKind::NonConvergence, "lemma35_check: face " + std::to_string(face.face) +
                                                   " has zero extension mass but nonzero vertex values");
    }
    r.vertex_ratio = r.vertex_sum / r.boundary_integral;
    r.mass_ratio = r.boundary_integral / r.face_mass;
    r.vertex_bound = r.vertex_ratio <= 6.0;
    return r;
}

double lemma35_sharp_constant(int n, int order, int samples) {
    const FaceQuadrature q = face_quadrature(n, order);
    Eigen::MatrixXd values(static_cast<Eigen::Index>(q.rho.size()), n);
    std::vector<double> unit(n, 0.0);
    for (int i = 0; i < n; ++i) {
        std::fill(unit.begin(), unit.end(), 0.0);
        unit[i] = 1.0;
        const FaceFourier ff = extend_face(0, n, unit, order, samples);
        for (std::size_t k = 0; k < q.rho.size(); ++k) values(static_cast<Eigen::Index>(k), i) = ff.series.evaluate(q.rho[k], q.eta[k]);
    }
    const Eigen::Map<const Eigen::VectorXd> w(q.weight.data(), static_cast<Eigen::Index>(q.weight.size()));
    const Eigen::MatrixXd mass = values.transpose() * w.asDiagonal() * values;
    Eigen::MatrixXd boundary = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        const int l = (k + 1) % n;
        boundary(k, k) += 1.0 / 3.0;
        boundary(l, l) += 1.0 / 3.0;
        boundary(k, l) += 1.0 / 6.0;
        boundary(l, k) += 1.0 / 6.0;
    }
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(boundary, mass);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::NonConvergence, "lemma35_sharp_constant: eigen solver failed");
    }
    return solver.eigenvalues().maxCoeff();
}

} // namespace semiplanar
