#include "semiplanar/error.hpp"
#include "semiplanar/graph.hpp"
#include "semiplanar/quadrature.hpp"
#include "semiplanar/surface.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace semiplanar {

SurfaceBallSampler::SurfaceBallSampler(const MetricMesh& mesh, const SurfacePoint& center, double max_radius,
                                       int order)
    : mesh_(&mesh), center_(center), max_radius_(max_radius), h_(mesh.h()) {
    if (!(max_radius >= 0.0)) throw Error(ErrorKind::InvalidArgument, "SurfaceBallSampler: negative radius");
    const auto rule = triangle_rule(order);
    const SemiplanarGraph& g = mesh.graph();
    if (center.face < 0 || center.face >= static_cast<FaceId>(g.faces().size()) || !mesh.safe(center.face)) {
        throw Error(ErrorKind::InsufficientTruncation, "SurfaceBallSampler: center outside the safe region");
    }

    const double reach = max_radius + h_;
    const auto field = mesh.distances_from(center, reach + 1e-9);

    // Every face holding a point within reach has a boundary node within
    // reach, or is the center's own face.
    std::vector<FaceId> faces{center.face};
    for (FaceId f = 0; f < static_cast<FaceId>(g.faces().size()); ++f) {
        if (f == center.face || !g.face(f).closed) continue;
        const auto nodes = mesh.face_nodes(f);
        const bool near = std::any_of(nodes.begin(), nodes.end(), [&](int u) { return field[u] <= reach; });
        if (!near) continue;
        if (!mesh.safe(f)) {
            throw Error(ErrorKind::InsufficientTruncation,
                        "SurfaceBallSampler: ball of radius " + std::to_string(max_radius) +
                            " reaches face " + std::to_string(f) + " outside the safe region");
        }
        faces.push_back(f);
    }

    for (FaceId f : faces) {
        const int n = g.face(f).degree();
        const FaceGeometry fg = face_geometry(n);
        const int s = static_cast<int>(std::ceil(std::max(fg.circumradius, 1.0) / h_ - 1e-12));
        for (int k = 0; k < n; ++k) {
            const Point2 a = 0.0;
            const Point2 b = polygon_vertex(n, k);
            const Point2 c = polygon_vertex(n, k + 1);
            const Point2 eb = (b - a) / static_cast<double>(s);
            const Point2 ec = (c - a) / static_cast<double>(s);
            const double sub_area = 0.5 * std::abs(std::imag(std::conj(eb) * ec));
            auto emit = [&](Point2 p0, Point2 p1, Point2 p2) {
                for (const auto& q : rule) {
                    const Point2 z = q.bary[0] * p0 + q.bary[1] * p1 + q.bary[2] * p2;
                    SurfacePoint x = surface_point(f, z);
                    nodes_.push_back({f, z, q.weight * sub_area, mesh.distance_to(field, center, x)});
                }
            };
            for (int i = 0; i < s; ++i) {
                for (int j = 0; i + j < s; ++j) {
                    const Point2 p = a + eb * static_cast<double>(i) + ec * static_cast<double>(j);
                    emit(p, p + eb, p + ec);
                    if (i + j < s - 1) emit(p + eb, p + eb + ec, p + ec);
                }
            }
        }
    }
}

double SurfaceBallSampler::indicator(double distance, double radius) const {
    return std::clamp(0.5 + (radius - distance) / h_, 0.0, 1.0);
}

double SurfaceBallSampler::volume(double radius) const {
    if (radius <= 0.0) return 0.0;
    double sum = 0.0;
    for (const auto& q : nodes_) sum += q.weight * indicator(q.distance, radius);
    return sum;
}

double SurfaceBallSampler::band(double radius) const {
    if (radius <= 0.0) return 0.0;
    double sum = 0.0;
    for (const auto& q : nodes_) {
        if (std::abs(q.distance - radius) < 0.5 * h_) sum += q.weight;
    }
    return sum;
}

double SurfaceBallSampler::integrate(double radius, std::span<const double> values) const {
    if (values.size() != nodes_.size()) {
        throw Error(ErrorKind::InvalidArgument, "SurfaceBallSampler::integrate: one value per node expected");
    }
    if (radius <= 0.0) return 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) sum += nodes_[i].weight * indicator(nodes_[i].distance, radius) * values[i];
    return sum;
}

BallVolume surface_ball_volume(const MetricMesh& mesh, const SurfacePoint& p, double radius, int order) {
    const SurfaceBallSampler sampler(mesh, p, radius, order);
    return {sampler.volume(radius), sampler.band(radius)};
}

LipschitzMeasure bilipschitz_measure(const MetricMesh& mesh, std::span<const std::pair<VertexId, VertexId>> pairs) {
    const SemiplanarGraph& g = mesh.graph();
    std::map<VertexId, std::vector<VertexId>> by_source;
    for (const auto& [u, v] : pairs) {
        if (u != v) by_source[u].push_back(v);
    }
    LipschitzMeasure out;
    out.min_ratio = std::numeric_limits<double>::infinity();
    out.max_ratio = 0.0;
    for (const auto& [u, targets] : by_source) {
        const SurfacePoint pu = vertex_point(g, u);
        const auto hop = bfs_distances(g, u);
        int far = 0;
        for (VertexId v : targets) far = std::max(far, hop[v]);
        for (VertexId v : targets) {
            if (hop[v] == kUnreached) {
                throw Error(ErrorKind::InvalidArgument, "bilipschitz_measure: pair in different components");
            }
        }
        std::vector<int> hops;
        const auto field = mesh.distances_from(pu, far + 1.0, &hops);
        for (VertexId v : targets) {
            const SurfacePoint pv = vertex_point(g, v);
            for (const SurfacePoint* x : {&pu, &pv}) {
                if (!mesh.safe(x->face)) {
                    throw Error(ErrorKind::InsufficientTruncation,
                                "bilipschitz_measure: vertex outside the safe region");
                }
            }
            const double d = field[v];
            const double ratio = d / hop[v];
            out.min_ratio = std::min(out.min_ratio, ratio);
            out.max_ratio = std::max(out.max_ratio, ratio);
            out.max_mesh_error = std::max(out.max_mesh_error, mesh.h() * hops[v] / hop[v]);
            ++out.samples;
        }
    }
    if (out.samples == 0) out.min_ratio = 0.0;
    return out;
}

} // namespace semiplanar
