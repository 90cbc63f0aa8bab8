#include "semiplanar/graph.hpp"

#include "semiplanar/error.hpp"

#include <algorithm>
#include <numbers>
#include <queue>
#include <sstream>

namespace semiplanar {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Validation: return "validation failure";
    case ErrorKind::InsufficientTruncation: return "insufficient truncation";
    case ErrorKind::NotDevelopable: return "not developable";
    case ErrorKind::NonConvergence: return "non-convergence";
    }
    return "unknown";
}

const char* to_string(ViolationKind kind) noexcept {
    switch (kind) {
    case ViolationKind::RotationSizeMismatch: return "rotation-size-mismatch";
    case ViolationKind::NeighborOutOfRange: return "neighbor-out-of-range";
    case ViolationKind::SelfLoop: return "self-loop";
    case ViolationKind::MultiEdge: return "multi-edge";
    case ViolationKind::DanglingHalfEdge: return "dangling-half-edge";
    case ViolationKind::GapOnInteriorVertex: return "gap-on-interior-vertex";
    case ViolationKind::LowDegree: return "low-degree";
    case ViolationKind::UnclosedFace: return "unclosed-face";
    case ViolationKind::DegenerateFace: return "degenerate-face";
    }
    return "unknown";
}

std::string ValidationResult::summary() const {
    if (ok()) return "ok";
    std::ostringstream os;
    for (std::size_t i = 0; i < violations.size(); ++i) {
        if (i) os << "; ";
        os << to_string(violations[i].kind);
        if (violations[i].vertex >= 0) os << " at vertex " << violations[i].vertex;
        if (!violations[i].message.empty()) os << " (" << violations[i].message << ")";
    }
    return os.str();
}

namespace {

void report(std::vector<Violation>& out, ViolationKind kind, VertexId v, std::string msg = {}) {
    out.push_back({kind, v, std::move(msg)});
}

} // namespace

ValidationResult validate(const RawGraph& raw) {
    ValidationResult result;
    auto& bad = result.violations;
    const auto n = static_cast<VertexId>(raw.vertex_count);

    if (raw.rotation.size() != raw.vertex_count) {
        report(bad, ViolationKind::RotationSizeMismatch, -1,
               "expected " + std::to_string(raw.vertex_count) + " rotation lists, got " +
                   std::to_string(raw.rotation.size()));
        return result;
    }

    std::vector<char> boundary(raw.vertex_count, 0);
    for (VertexId b : raw.boundary) {
        if (b < 0 || b >= n) {
            report(bad, ViolationKind::NeighborOutOfRange, b, "boundary id out of range");
            continue;
        }
        boundary[b] = 1;
    }

    // Local checks on each rotation list.
    for (VertexId v = 0; v < n; ++v) {
        const auto& rot = raw.rotation[v];
        std::vector<VertexId> seen;
        int degree = 0;
        for (VertexId u : rot) {
            if (u == kGap) {
                if (!boundary[v]) report(bad, ViolationKind::GapOnInteriorVertex, v);
                continue;
            }
            if (u < 0 || u >= n) {
                report(bad, ViolationKind::NeighborOutOfRange, v, "neighbor " + std::to_string(u));
                continue;
            }
            if (u == v) {
                report(bad, ViolationKind::SelfLoop, v);
                continue;
            }
            if (std::find(seen.begin(), seen.end(), u) != seen.end()) {
                report(bad, ViolationKind::MultiEdge, v,
                       "edge (" + std::to_string(v) + "," + std::to_string(u) + ") repeated");
                continue;
            }
            seen.push_back(u);
            ++degree;
        }
        if (!boundary[v] && degree < 3) {
            report(bad, ViolationKind::LowDegree, v, "degree " + std::to_string(degree));
        }
    }
    if (!bad.empty()) return result;

    for (VertexId v = 0; v < n; ++v) {
        for (VertexId u : raw.rotation[v]) {
            if (u == kGap) continue;
            const auto& back = raw.rotation[u];
            if (std::find(back.begin(), back.end(), v) == back.end()) {
                report(bad, ViolationKind::DanglingHalfEdge, v,
                       "half-edge " + std::to_string(v) + "->" + std::to_string(u) + " has no twin");
            }
        }
    }
    if (!bad.empty()) return result;

    SemiplanarGraph g;
    g.rotation_ = raw.rotation;
    g.boundary_ = boundary;
    g.offsets_.assign(raw.vertex_count + 1, 0);
    for (VertexId v = 0; v < n; ++v) {
        for (VertexId u : raw.rotation[v]) {
            if (u != kGap) g.neighbors_.push_back(u);
        }
        g.offsets_[v + 1] = g.neighbors_.size();
    }

    // For the half-edge u->v, the next side of the face on its left leaves v
    // towards the clockwise neighbour of u. A gap crossed on the way marks the
    // corner at v as open.
    const std::size_t nh = g.neighbors_.size();
    std::vector<std::size_t> next(nh);
    std::vector<char> open_corner(nh, 0);
    for (VertexId v = 0; v < n; ++v) {
        const auto& rot = raw.rotation[v];
        const auto len = static_cast<long>(rot.size());
        for (long i = 0; i < len; ++i) {
            const VertexId u = rot[i];
            if (u == kGap) continue;
            long j = i;
            bool crossed_gap = false;
            do {
                j = (j - 1 + len) % len;
                if (rot[j] == kGap) crossed_gap = true;
            } while (rot[j] == kGap);
            const std::size_t in = g.halfedge(u, v);
            next[in] = g.halfedge(v, rot[j]);
            open_corner[in] = crossed_gap ? 1 : 0;
        }
    }

    g.halfedge_face_.assign(nh, -1);
    for (std::size_t start = 0; start < nh; ++start) {
        if (g.halfedge_face_[start] != -1) continue;
        Face face;
        const auto id = static_cast<FaceId>(g.faces_.size());
        std::size_t h = start;
        do {
            g.halfedge_face_[h] = id;
            // Tail vertex of h.
            const auto tail = static_cast<VertexId>(
                std::upper_bound(g.offsets_.begin(), g.offsets_.end(), h) - g.offsets_.begin() - 1);
            face.vertices.push_back(tail);
            if (open_corner[h]) face.closed = false;
            h = next[h];
        } while (h != start);
        g.faces_.push_back(std::move(face));
    }

    for (std::size_t f = 0; f < g.faces_.size(); ++f) {
        const Face& face = g.faces_[f];
        if (!face.closed) continue;
        auto sorted = face.vertices;
        std::sort(sorted.begin(), sorted.end());
        const bool repeats = std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
        if (face.degree() < 3 || repeats) {
            report(bad, ViolationKind::DegenerateFace, face.vertices.front(),
                   "face " + std::to_string(f) + " of length " + std::to_string(face.degree()));
        }
        g.max_face_degree_ = std::max(g.max_face_degree_, face.degree());
    }

    for (VertexId v = 0; v < n; ++v) {
        if (g.is_boundary(v)) continue;
        for (FaceId f : g.corner_faces(v)) {
            if (!g.faces_[f].closed) {
                report(bad, ViolationKind::UnclosedFace, v,
                       "face " + std::to_string(f) + " passes through an open sector");
                break;
            }
        }
    }
    if (!bad.empty()) return result;

    result.graph = std::move(g);
    return result;
}

SemiplanarGraph build_graph(const RawGraph& raw) {
    auto result = validate(raw);
    if (!result.ok()) throw Error(ErrorKind::Validation, result.summary());
    return std::move(*result.graph);
}

std::size_t SemiplanarGraph::halfedge(VertexId from, VertexId to) const {
    const auto nb = neighbors(from);
    const auto it = std::find(nb.begin(), nb.end(), to);
    if (it == nb.end()) {
        throw Error(ErrorKind::InvalidArgument,
                    "no edge " + std::to_string(from) + "->" + std::to_string(to));
    }
    return offsets_[from] + static_cast<std::size_t>(it - nb.begin());
}

std::vector<VertexId> SemiplanarGraph::boundary_vertices() const {
    std::vector<VertexId> out;
    for (std::size_t v = 0; v < boundary_.size(); ++v) {
        if (boundary_[v]) out.push_back(static_cast<VertexId>(v));
    }
    return out;
}

std::size_t SemiplanarGraph::closed_face_count() const {
    return static_cast<std::size_t>(
        std::count_if(faces_.begin(), faces_.end(), [](const Face& f) { return f.closed; }));
}

FaceId SemiplanarGraph::face_left_of(VertexId u, VertexId v) const {
    return halfedge_face_[halfedge(u, v)];
}

std::vector<FaceId> SemiplanarGraph::corner_faces(VertexId v) const {
    std::vector<FaceId> out;
    out.reserve(static_cast<std::size_t>(degree(v)));
    for (VertexId u : neighbors(v)) out.push_back(face_left_of(u, v));
    return out;
}

long SemiplanarGraph::euler_characteristic() const {
    return static_cast<long>(vertex_count()) - static_cast<long>(edge_count()) +
           static_cast<long>(faces_.size());
}

std::vector<std::pair<VertexId, VertexId>> SemiplanarGraph::edges() const {
    std::vector<std::pair<VertexId, VertexId>> out;
    out.reserve(edge_count());
    for (VertexId v = 0; v < static_cast<VertexId>(vertex_count()); ++v) {
        for (VertexId u : neighbors(v)) {
            if (v < u) out.emplace_back(v, u);
        }
    }
    return out;
}

bool SemiplanarGraph::adjacent(VertexId u, VertexId v) const {
    const auto nb = neighbors(u);
    return std::find(nb.begin(), nb.end(), v) != nb.end();
}

RawGraph SemiplanarGraph::to_raw() const {
    return RawGraph{vertex_count(), rotation_, boundary_vertices()};
}

// ---------------------------------------------------------------- curvature

namespace {

void require_interior(const SemiplanarGraph& g, VertexId v, const char* what) {
    if (v < 0 || v >= static_cast<VertexId>(g.vertex_count())) {
        throw Error(ErrorKind::InvalidArgument, std::string(what) + ": vertex out of range");
    }
    if (g.is_boundary(v)) {
        throw Error(ErrorKind::InvalidArgument,
                    std::string(what) + ": vertex " + std::to_string(v) +
                        " is on the truncation boundary");
    }
}

} // namespace

Rational vertex_curvature(const SemiplanarGraph& g, VertexId v) {
    require_interior(g, v, "vertex_curvature");
    Rational phi = Rational(1) - Rational(g.degree(v), 2);
    for (FaceId f : g.corner_faces(v)) phi += Rational(1, g.face(f).degree());
    return phi;
}

double total_angle(const SemiplanarGraph& g, VertexId v) {
    require_interior(g, v, "total_angle");
    double sum = 0.0;
    for (FaceId f : g.corner_faces(v)) {
        const double n = g.face(f).degree();
        sum += (n - 2.0) * std::numbers::pi / n;
    }
    return sum;
}

CurvatureCheck is_nonneg_curvature(const SemiplanarGraph& g) {
    CurvatureCheck out;
    for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v) {
        if (g.is_boundary(v)) {
            out.skipped_boundary.push_back(v);
            continue;
        }
        if (vertex_curvature(g, v) < Rational(0)) out.offending.push_back(v);
    }
    out.nonnegative = out.offending.empty();
    return out;
}

std::vector<int> vertex_pattern(const SemiplanarGraph& g, VertexId v) {
    std::vector<int> out;
    for (FaceId f : g.corner_faces(v)) out.push_back(g.face(f).degree());
    return out;
}

// ------------------------------------------------------------------- metric

std::vector<int> bfs_distances(const SemiplanarGraph& g, VertexId source, int max_radius) {
    std::vector<int> dist(g.vertex_count(), kUnreached);
    std::queue<VertexId> q;
    dist[source] = 0;
    q.push(source);
    while (!q.empty()) {
        const VertexId v = q.front();
        q.pop();
        if (max_radius >= 0 && dist[v] >= max_radius) continue;
        for (VertexId u : g.neighbors(v)) {
            if (dist[u] == kUnreached) {
                dist[u] = dist[v] + 1;
                q.push(u);
            }
        }
    }
    return dist;
}

int graph_distance(const SemiplanarGraph& g, VertexId u, VertexId v) {
    const auto n = static_cast<VertexId>(g.vertex_count());
    if (u < 0 || u >= n || v < 0 || v >= n) {
        throw Error(ErrorKind::InvalidArgument, "graph_distance: vertex out of range");
    }
    const int d = bfs_distances(g, u)[v];
    if (d == kUnreached) {
        throw Error(ErrorKind::InvalidArgument, "graph_distance: vertices " + std::to_string(u) +
                                                    " and " + std::to_string(v) +
                                                    " are in different components");
    }
    return d;
}

GraphBall graph_ball(const SemiplanarGraph& g, VertexId p, int radius) {
    if (radius < 0) throw Error(ErrorKind::InvalidArgument, "graph_ball: negative radius");
    if (p < 0 || p >= static_cast<VertexId>(g.vertex_count())) {
        throw Error(ErrorKind::InvalidArgument, "graph_ball: center out of range");
    }
    GraphBall ball;
    ball.center = p;
    ball.radius = radius;
    std::vector<int> dist(g.vertex_count(), kUnreached);
    std::queue<VertexId> q;
    dist[p] = 0;
    q.push(p);
    while (!q.empty()) {
        const VertexId v = q.front();
        q.pop();
        if (g.is_boundary(v)) {
            throw Error(ErrorKind::InsufficientTruncation,
                        "graph_ball: B_" + std::to_string(radius) + "(" + std::to_string(p) +
                            ") reaches truncation boundary vertex " + std::to_string(v));
        }
        ball.members.push_back(v);
        ball.volume += g.degree(v);
        if (dist[v] == radius) continue;
        for (VertexId u : g.neighbors(v)) {
            if (dist[u] == kUnreached) {
                dist[u] = dist[v] + 1;
                q.push(u);
            }
        }
    }
    ball.count = ball.members.size();
    return ball;
}

int interior_radius(const SemiplanarGraph& g, VertexId p, int cap) {
    if (g.is_boundary(p)) return -1;
    const auto dist = bfs_distances(g, p);
    int nearest = cap + 1;
    int eccentricity = 0;
    for (std::size_t v = 0; v < dist.size(); ++v) {
        if (dist[v] == kUnreached) continue;
        eccentricity = std::max(eccentricity, dist[v]);
        if (g.is_boundary(static_cast<VertexId>(v))) nearest = std::min(nearest, dist[v]);
    }
    if (nearest > cap) return std::min(cap, eccentricity);
    return nearest - 1;
}

} // namespace semiplanar
