#pragma once

#include "semiplanar/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace semiplanar {

using VertexId = std::int32_t;
using FaceId = std::int32_t;

/// Rotation-list entry marking an open sector at a truncation boundary vertex.
inline constexpr VertexId kGap = -1;

/// Unvalidated rotation-system input.
///
/// `rotation[v]` lists the neighbours of `v` in counter-clockwise order. A
/// vertex of a finite truncation whose face fan is incomplete carries one or
/// more `kGap` entries: the sector between the neighbours on either side of a
/// gap is not part of the truncated surface.
struct RawGraph {
    std::size_t vertex_count = 0;
    std::vector<std::vector<VertexId>> rotation;
    std::vector<VertexId> boundary;
};

enum class ViolationKind {
    RotationSizeMismatch,
    NeighborOutOfRange,
    SelfLoop,
    MultiEdge,
    DanglingHalfEdge,
    GapOnInteriorVertex,
    LowDegree,
    UnclosedFace,
    DegenerateFace,
};

const char* to_string(ViolationKind kind) noexcept;

struct Violation {
    ViolationKind kind;
    VertexId vertex = -1;
    std::string message;
};

/// A face traced from the rotation system. `vertices` is in counter-clockwise
/// order (the face lies to the left of each directed side). Faces that pass
/// through an open sector belong to the truncation exterior and are not faces
/// of the underlying graph.
struct Face {
    std::vector<VertexId> vertices;
    bool closed = true;

    int degree() const { return static_cast<int>(vertices.size()); }
};

struct ValidationResult;

/// Immutable semiplanar graph: simple, embedded via a rotation system, with
/// faces derived by tracing. Safe for concurrent readers.
class SemiplanarGraph {
public:
    std::size_t vertex_count() const { return offsets_.size() - 1; }
    std::size_t edge_count() const { return neighbors_.size() / 2; }
    std::size_t halfedge_count() const { return neighbors_.size(); }

    /// Neighbours in counter-clockwise order, gaps removed.
    std::span<const VertexId> neighbors(VertexId v) const {
        return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
    }
    /// Rotation exactly as supplied, including gap markers.
    const std::vector<VertexId>& rotation(VertexId v) const { return rotation_[v]; }

    int degree(VertexId v) const { return static_cast<int>(offsets_[v + 1] - offsets_[v]); }
    bool is_boundary(VertexId v) const { return boundary_[v] != 0; }
    std::vector<VertexId> boundary_vertices() const;

    const std::vector<Face>& faces() const { return faces_; }
    const Face& face(FaceId f) const { return faces_[f]; }
    std::size_t closed_face_count() const;

    /// Face to the left of the directed edge u -> v.
    FaceId face_left_of(VertexId u, VertexId v) const;
    /// Faces meeting v, one per corner, in counter-clockwise order. Corners in
    /// an open sector report the exterior face.
    std::vector<FaceId> corner_faces(VertexId v) const;

    /// D: the largest degree over closed faces.
    int max_face_degree() const { return max_face_degree_; }

    /// V - E + F counting every traced face (closed and exterior).
    long euler_characteristic() const;

    std::vector<std::pair<VertexId, VertexId>> edges() const;
    bool adjacent(VertexId u, VertexId v) const;

    RawGraph to_raw() const;

private:
    friend ValidationResult validate(const RawGraph& raw);

    std::size_t halfedge(VertexId from, VertexId to) const; // throws if absent

    std::vector<std::vector<VertexId>> rotation_;
    std::vector<std::size_t> offsets_;
    std::vector<VertexId> neighbors_;
    std::vector<FaceId> halfedge_face_;
    std::vector<char> boundary_;
    std::vector<Face> faces_;
    int max_face_degree_ = 0;
};

struct ValidationResult {
    std::optional<SemiplanarGraph> graph;
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    std::string summary() const;
};

/// Checks every structural invariant and, on success, derives the faces.
ValidationResult validate(const RawGraph& raw);

/// Same as validate() but throws Error(ErrorKind::Validation) on failure.
SemiplanarGraph build_graph(const RawGraph& raw);

// ---------------------------------------------------------------- curvature

/// Combinatorial curvature 1 - d_v/2 + sum over corners of 1/deg(face), exact.
/// Throws for vertices whose face fan is incomplete.
Rational vertex_curvature(const SemiplanarGraph& g, VertexId v);

/// Sum of the interior angles (n-2)pi/n of the regular polygons meeting v.
double total_angle(const SemiplanarGraph& g, VertexId v);

struct CurvatureCheck {
    bool nonnegative = true;
    std::vector<VertexId> offending;        // interior vertices with negative curvature
    std::vector<VertexId> skipped_boundary; // curvature undefined there
};

CurvatureCheck is_nonneg_curvature(const SemiplanarGraph& g);

/// Cyclic sequence of face degrees around v, starting at the corner after
/// the first listed neighbour.
std::vector<int> vertex_pattern(const SemiplanarGraph& g, VertexId v);

// ------------------------------------------------------------------- metric

inline constexpr int kUnreached = -1;

/// Hop distances from `source`; vertices farther than `max_radius` (when
/// non-negative) or in another component are kUnreached.
std::vector<int> bfs_distances(const SemiplanarGraph& g, VertexId source, int max_radius = -1);

/// d^G(u, v). Throws for a disconnected pair.
int graph_distance(const SemiplanarGraph& g, VertexId u, VertexId v);

struct GraphBall {
    VertexId center = 0;
    int radius = 0;
    std::vector<VertexId> members; // BFS order
    std::size_t count = 0;
    long volume = 0; // sum of d_x over members
};

/// Closed hop ball. Throws ErrorKind::InsufficientTruncation when a member is a
/// truncation boundary vertex, since its degree and neighbourhood are unknown.
GraphBall graph_ball(const SemiplanarGraph& g, VertexId p, int radius);

/// Largest R such that B_R(p) contains no boundary vertex (capped at
/// `cap`; a graph without boundary returns its eccentricity at p).
int interior_radius(const SemiplanarGraph& g, VertexId p, int cap = 1 << 20);

} // namespace semiplanar
