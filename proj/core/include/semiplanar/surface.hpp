#pragma once

#include "semiplanar/graph.hpp"

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace semiplanar {

using Point2 = std::complex<double>;

// ------------------------------------------------------------ face geometry

/// Regular n-gon with unit sides, centred at the origin with vertex 0 on the
/// positive x-axis.
struct FaceGeometry {
    int n = 0;
    double circumradius = 0.0; // 1 / (2 sin(pi/n))
    double apothem = 0.0;      // circumradius * cos(pi/n)
    double area = 0.0;         // n / (4 tan(pi/n))
    double sector_angle = 0.0; // 2 pi / n
    double diameter = 0.0;     // longest chord
};

/// Throws ErrorKind::InvalidArgument for n < 3.
FaceGeometry face_geometry(int n);

/// Upper bound 2 r_D on the diameter of any face of degree at most D.
double face_diameter_bound(int max_face_degree);

/// Position of vertex k of the regular n-gon in its local frame.
Point2 polygon_vertex(int n, int k);

// ----------------------------------------------------------- surface points

/// A point of the polygonal surface: a closed face and polar coordinates
/// about its barycenter, with vertex 0 of the face at angle 0.
struct SurfacePoint {
    FaceId face = 0;
    double r = 0.0;
    double theta = 0.0;

    Point2 local() const { return std::polar(r, theta); }
};

SurfacePoint surface_point(FaceId face, Point2 local);
SurfacePoint face_barycenter(FaceId face);

/// The vertex v seen from its first closed corner face.
SurfacePoint vertex_point(const SemiplanarGraph& g, VertexId v);

/// True when the polar point (r, theta) lies in the closed regular n-gon.
bool inside_polygon(int n, double r, double theta, double slack = 1e-12);

// ------------------------------------------------------------ planar layout

/// Vertex coordinates of a flat truncation developed into the plane.
struct PlanarLayout {
    std::vector<Point2> position;

    /// Planar image of a surface point.
    Point2 to_plane(const SemiplanarGraph& g, const SurfacePoint& p) const;
    /// Inverse of to_plane restricted to one face.
    SurfacePoint from_plane(const SemiplanarGraph& g, FaceId face, Point2 z) const;
};

/// Develops every closed face as a unit regular polygon, starting with `root`
/// at the origin and its first neighbour at (1, 0). Throws
/// ErrorKind::NotDevelopable if an interior vertex has nonzero curvature or
/// the development does not close up.
PlanarLayout planar_layout(const SemiplanarGraph& g, VertexId root = 0);

// --------------------------------------------------------------- metric mesh

/// Shortest paths on the polygonal surface, approximated through nodes placed
/// every <= h along each edge. Within a closed face every pair of its boundary
/// nodes is joined by the straight chord, so each mesh path is a genuine
/// surface path and mesh distances never undershoot the intrinsic distance.
class MetricMesh {
public:
    MetricMesh(const SemiplanarGraph& g, double h);

    const SemiplanarGraph& graph() const { return *graph_; }
    double h() const { return h_; }
    std::size_t node_count() const { return node_count_; }

    /// Boundary nodes of a closed face in counter-clockwise order, and their
    /// positions in the face's local frame.
    std::span<const int> face_nodes(FaceId f) const { return face_nodes_[f]; }
    std::span<const Point2> face_node_positions(FaceId f) const { return face_positions_[f]; }

    /// Safe faces: every vertex at hop distance >= 2 from the truncation boundary.
    bool safe(FaceId f) const { return safe_[f] != 0; }

    /// Node distances from `source`, exact Dijkstra on the mesh. Nodes farther
    /// than `cutoff` (if finite) may be left at +infinity. `hops`, when given,
    /// receives the number of chords on each shortest path.
    std::vector<double> distances_from(const SurfacePoint& source, double cutoff = -1.0,
                                       std::vector<int>* hops = nullptr) const;

    /// Distance from the source of `field` to an arbitrary point, using the
    /// boundary nodes of the point's face (or the straight chord when the
    /// point shares the source's face).
    double distance_to(const std::vector<double>& field, const SurfacePoint& source,
                       const SurfacePoint& target) const;

private:
    const SemiplanarGraph* graph_;
    double h_;
    std::size_t node_count_ = 0;
    std::vector<std::vector<int>> face_nodes_;
    std::vector<std::vector<Point2>> face_positions_;
    std::vector<std::vector<std::pair<FaceId, int>>> node_slots_; // (face, slot) per node
    std::vector<char> safe_;
};

struct SurfaceDistance {
    double value = 0.0;
    double error_bound = 0.0; // mesh value exceeds the intrinsic distance by at most this
};

/// Intrinsic distance between two safe surface points. Throws
/// ErrorKind::InsufficientTruncation when either point lies outside the safe region.
SurfaceDistance surface_distance(const MetricMesh& mesh, const SurfacePoint& p, const SurfacePoint& q);

/// Mesh distance from `source` to the nearest node of a closed face outside
/// the safe region (+infinity if there is none). A SurfaceBallSampler about
/// `source` accepts any max_radius below this value minus h.
double safe_reach(const MetricMesh& mesh, const SurfacePoint& source);

// ---------------------------------------------------------------- quadrature

/// Weighted sample of the surface around a center, with the mesh distance of
/// every node. Each closed face within reach is fan-triangulated about its
/// barycenter, each fan triangle split into sub-triangles of size <= h, and a
/// fixed barycentric rule applied on each sub-triangle.
struct QuadratureNode {
    FaceId face;
    Point2 local;
    double weight;
    double distance;
};

class SurfaceBallSampler {
public:
    /// `order` selects the barycentric rule: 1 (centroid), 2 (3 points) or 3
    /// (6 points, exact for cubics). Throws ErrorKind::InsufficientTruncation
    /// when B_{max_radius}(center) reaches a face outside the safe region.
    SurfaceBallSampler(const MetricMesh& mesh, const SurfacePoint& center, double max_radius, int order = 3);

    const std::vector<QuadratureNode>& nodes() const { return nodes_; }
    const SurfacePoint& center() const { return center_; }
    double max_radius() const { return max_radius_; }
    double h() const { return h_; }

    /// Smoothed indicator of B_R: 1 inside, 0 outside, linear across a band of width h.
    double indicator(double distance, double radius) const;

    /// H^2(B_R(center)).
    double volume(double radius) const;
    /// Area of the smoothing band |d - R| < h/2: the quadrature uncertainty.
    double band(double radius) const;

    /// Integral over B_R of a function given by its value at each node.
    double integrate(double radius, std::span<const double> values) const;

private:
    const MetricMesh* mesh_;
    SurfacePoint center_;
    double max_radius_;
    double h_;
    std::vector<QuadratureNode> nodes_;
};

struct BallVolume {
    double value = 0.0;
    double quadrature_error = 0.0; // band area
};

BallVolume surface_ball_volume(const MetricMesh& mesh, const SurfacePoint& p, double radius, int order = 3);

// ------------------------------------------------------------ bi-Lipschitz

struct LipschitzMeasure {
    double min_ratio = 0.0;
    double max_ratio = 0.0;
    std::size_t samples = 0;
    double max_mesh_error = 0.0; // largest error bound seen over the samples
};

/// Ratios d(x, y) / d^G(x, y) over vertex pairs (distinct vertices).
LipschitzMeasure bilipschitz_measure(const MetricMesh& mesh,
                                     std::span<const std::pair<VertexId, VertexId>> pairs);

} // namespace semiplanar
