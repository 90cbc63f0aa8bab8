#include "semiplanar/error.hpp"
#include "semiplanar/surface.hpp"

#include <cmath>
#include <numbers>
#include <limits>
#include <queue>
#include <sstream>

namespace semiplanar {

namespace {

/// Similarity taking the local frame of `face` onto the plane.
std::pair<Point2, Point2> face_frame(const SemiplanarGraph& g, const PlanarLayout& layout, FaceId face) {
    const Face& f = g.face(face);
    const int n = f.degree();
    const Point2 v0 = polygon_vertex(n, 0);
    const Point2 v1 = polygon_vertex(n, 1);
    const Point2 p0 = layout.position[f.vertices[0]];
    const Point2 p1 = layout.position[f.vertices[1]];
    const Point2 rot = (p1 - p0) / (v1 - v0);
    return {rot, p0 - v0 * rot};
}

} // namespace

Point2 PlanarLayout::to_plane(const SemiplanarGraph& g, const SurfacePoint& p) const {
    const auto [rot, offset] = face_frame(g, *this, p.face);
    return p.local() * rot + offset;
}

SurfacePoint PlanarLayout::from_plane(const SemiplanarGraph& g, FaceId face, Point2 z) const {
    const auto [rot, offset] = face_frame(g, *this, face);
    return surface_point(face, (z - offset) / rot);
}

PlanarLayout planar_layout(const SemiplanarGraph& g, VertexId root) {
    for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v) {
        if (g.is_boundary(v)) continue;
        const Rational phi = vertex_curvature(g, v);
        if (phi != Rational(0)) {
            std::ostringstream os;
            os << "planar_layout: not developable, vertex " << v << " has curvature " << phi;
            throw Error(ErrorKind::NotDevelopable, os.str());
        }
    }
    if (g.degree(root) == 0) throw Error(ErrorKind::InvalidArgument, "planar_layout: isolated root");

    const double nan = std::numeric_limits<double>::quiet_NaN();
    PlanarLayout layout;
    layout.position.assign(g.vertex_count(), Point2(nan, nan));
    std::vector<char> placed(g.vertex_count(), 0);
    std::vector<char> face_done(g.faces().size(), 0);

    layout.position[root] = 0.0;
    placed[root] = 1;
    const VertexId first = g.neighbors(root)[0];
    layout.position[first] = 1.0;
    placed[first] = 1;

    std::queue<std::pair<VertexId, VertexId>> sides;
    sides.emplace(root, first);
    sides.emplace(first, root);
    while (!sides.empty()) {
        const auto [u, v] = sides.front();
        sides.pop();
        const FaceId fid = g.face_left_of(u, v);
        if (face_done[fid] || !g.face(fid).closed) continue;
        face_done[fid] = 1;
        const Face& face = g.face(fid);
        const int n = face.degree();
        int start = 0;
        while (face.vertices[start] != u) ++start;

        // Walk the polygon counter-clockwise from the side u -> v.
        Point2 at = layout.position[u];
        Point2 dir = layout.position[v] - at;
        const Point2 turn = std::polar(1.0, 2.0 * std::numbers::pi / n);
        for (int k = 0; k < n; ++k) {
            const VertexId w = face.vertices[(start + k) % n];
            if (placed[w]) {
                if (std::abs(layout.position[w] - at) > 1e-9) {
                    throw Error(ErrorKind::NotDevelopable,
                                "planar_layout: development does not close up at vertex " + std::to_string(w));
                }
            } else {
                layout.position[w] = at;
                placed[w] = 1;
            }
            at += dir;
            dir *= turn;
        }
        for (int k = 0; k < n; ++k) {
            const VertexId a = face.vertices[(start + k) % n];
            const VertexId b = face.vertices[(start + k + 1) % n];
            sides.emplace(b, a);
        }
    }
    return layout;
}

} // namespace semiplanar
