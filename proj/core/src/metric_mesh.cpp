#include "semiplanar/error.hpp"
#include "semiplanar/surface.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <queue>

namespace semiplanar {

MetricMesh::MetricMesh(const SemiplanarGraph& g, double h) : graph_(&g), h_(h) {
    if (!(h > 0.0) || h > 1.0) throw Error(ErrorKind::InvalidArgument, "MetricMesh: h must lie in (0, 1]");
    const int m = static_cast<int>(std::ceil(1.0 / h - 1e-12));

    // Vertex nodes keep their vertex id; each edge on a closed face gets m - 1
    // interior nodes ordered from the lower to the higher endpoint.
    node_count_ = g.vertex_count();
    std::map<std::pair<VertexId, VertexId>, int> edge_base;
    const auto& faces = g.faces();
    face_nodes_.resize(faces.size());
    face_positions_.resize(faces.size());
    for (FaceId f = 0; f < static_cast<FaceId>(faces.size()); ++f) {
        const Face& face = faces[f];
        if (!face.closed) continue;
        const int n = face.degree();
        auto& nodes = face_nodes_[f];
        auto& pos = face_positions_[f];
        for (int k = 0; k < n; ++k) {
            const VertexId a = face.vertices[k];
            const VertexId b = face.vertices[(k + 1) % n];
            const auto key = std::minmax(a, b);
            auto it = edge_base.find(key);
            if (it == edge_base.end()) {
                it = edge_base.emplace(key, static_cast<int>(node_count_)).first;
                node_count_ += m - 1;
            }
            const Point2 pa = polygon_vertex(n, k);
            const Point2 pb = polygon_vertex(n, k + 1);
            nodes.push_back(a);
            pos.push_back(pa);
            for (int i = 1; i < m; ++i) {
                const int offset = (a < b) ? i - 1 : m - 1 - i;
                nodes.push_back(it->second + offset);
                pos.push_back(pa + (pb - pa) * (static_cast<double>(i) / m));
            }
        }
    }

    node_slots_.resize(node_count_);
    for (FaceId f = 0; f < static_cast<FaceId>(faces.size()); ++f) {
        for (int s = 0; s < static_cast<int>(face_nodes_[f].size()); ++s) {
            node_slots_[face_nodes_[f][s]].emplace_back(f, s);
        }
    }

    // Hop distance to the truncation boundary.
    std::vector<int> depth(g.vertex_count(), std::numeric_limits<int>::max());
    std::queue<VertexId> queue;
    for (VertexId v : g.boundary_vertices()) {
        depth[v] = 0;
        queue.push(v);
    }
    while (!queue.empty()) {
        const VertexId v = queue.front();
        queue.pop();
        for (VertexId u : g.neighbors(v)) {
            if (depth[u] > depth[v] + 1) {
                depth[u] = depth[v] + 1;
                queue.push(u);
            }
        }
    }
    safe_.assign(faces.size(), 0);
    for (FaceId f = 0; f < static_cast<FaceId>(faces.size()); ++f) {
        if (!faces[f].closed) continue;
        bool ok = true;
        for (VertexId v : faces[f].vertices) ok = ok && depth[v] >= 2;
        safe_[f] = ok;
    }
}

std::vector<double> MetricMesh::distances_from(const SurfacePoint& source, double cutoff,
                                               std::vector<int>* hops) const {
    const auto& g = *graph_;
    if (source.face < 0 || source.face >= static_cast<FaceId>(g.faces().size()) || !g.face(source.face).closed) {
        throw Error(ErrorKind::InvalidArgument, "MetricMesh: source must lie on a closed face");
    }
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(node_count_, inf);
    std::vector<int> hop(node_count_, 0);
    std::vector<char> done(node_count_, 0);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;

    const Point2 origin = source.local();
    const auto& nodes0 = face_nodes_[source.face];
    const auto& pos0 = face_positions_[source.face];
    for (std::size_t s = 0; s < nodes0.size(); ++s) {
        const double d = std::abs(pos0[s] - origin);
        if (d < dist[nodes0[s]]) {
            dist[nodes0[s]] = d;
            hop[nodes0[s]] = 1;
            heap.emplace(d, nodes0[s]);
        }
    }

    while (!heap.empty()) {
        const auto [d, u] = heap.top();
        heap.pop();
        if (done[u]) continue;
        done[u] = 1;
        if (cutoff >= 0.0 && d > cutoff) break;
        for (const auto& [f, slot] : node_slots_[u]) {
            const auto& nodes = face_nodes_[f];
            const auto& pos = face_positions_[f];
            const Point2 here = pos[slot];
            for (std::size_t s = 0; s < nodes.size(); ++s) {
                const int w = nodes[s];
                if (done[w]) continue;
                const double cand = d + std::abs(pos[s] - here);
                if (cand < dist[w]) {
                    dist[w] = cand;
                    hop[w] = hop[u] + 1;
                    heap.emplace(cand, w);
                }
            }
        }
    }
    if (hops != nullptr) *hops = std::move(hop);
    return dist;
}

double MetricMesh::distance_to(const std::vector<double>& field, const SurfacePoint& source,
                               const SurfacePoint& target) const {
    double best = std::numeric_limits<double>::infinity();
    if (target.face == source.face) best = std::abs(target.local() - source.local());
    const Point2 at = target.local();
    const auto& nodes = face_nodes_[target.face];
    const auto& pos = face_positions_[target.face];
    for (std::size_t s = 0; s < nodes.size(); ++s) best = std::min(best, field[nodes[s]] + std::abs(pos[s] - at));
    return best;
}

SurfaceDistance surface_distance(const MetricMesh& mesh, const SurfacePoint& p, const SurfacePoint& q) {
    for (const SurfacePoint* x : {&p, &q}) {
        if (x->face < 0 || x->face >= static_cast<FaceId>(mesh.graph().faces().size()) || !mesh.safe(x->face)) {
            throw Error(ErrorKind::InsufficientTruncation,
                        "surface_distance: point on face " + std::to_string(x->face) + " is outside the safe region");
        }
    }
    if (p.face == q.face) return {std::abs(p.local() - q.local()), 0.0};

    std::vector<int> hops;
    const auto field = mesh.distances_from(p, -1.0, &hops);
    const auto nodes = mesh.face_nodes(q.face);
    const auto pos = mesh.face_node_positions(q.face);
    SurfaceDistance out{std::numeric_limits<double>::infinity(), 0.0};
    for (std::size_t s = 0; s < nodes.size(); ++s) {
        const double d = field[nodes[s]] + std::abs(pos[s] - q.local());
        if (d < out.value) {
            out.value = d;
            // Each crossing of a face side snaps to a node at most h away.
            out.error_bound = mesh.h() * hops[nodes[s]];
        }
    }
    return out;
}

double safe_reach(const MetricMesh& mesh, const SurfacePoint& source) {
    const auto field = mesh.distances_from(source);
    double reach = std::numeric_limits<double>::infinity();
    const auto& faces = mesh.graph().faces();
    for (FaceId f = 0; f < static_cast<FaceId>(faces.size()); ++f) {
        if (mesh.safe(f)) continue;
        for (int node : mesh.face_nodes(f)) reach = std::min(reach, field[node]);
    }
    return reach;
}

} // namespace semiplanar
