#include "semiplanar/error.hpp"
#include "semiplanar/surface.hpp"

#include <cmath>
#include <numbers>

namespace semiplanar {

namespace {
constexpr double kPi = std::numbers::pi;
}

FaceGeometry face_geometry(int n) {
    if (n < 3) throw Error(ErrorKind::InvalidArgument, "face_geometry: n must be at least 3");
    FaceGeometry fg;
    fg.n = n;
    fg.circumradius = 1.0 / (2.0 * std::sin(kPi / n));
    fg.apothem = fg.circumradius * std::cos(kPi / n);
    fg.area = n / (4.0 * std::tan(kPi / n));
    fg.sector_angle = 2.0 * kPi / n;
    fg.diameter = (n % 2 == 0) ? 2.0 * fg.circumradius : 2.0 * fg.circumradius * std::cos(kPi / (2.0 * n));
    return fg;
}

double face_diameter_bound(int max_face_degree) { return 2.0 * face_geometry(max_face_degree).circumradius; }

Point2 polygon_vertex(int n, int k) {
    return std::polar(face_geometry(n).circumradius, 2.0 * kPi * k / n);
}

SurfacePoint surface_point(FaceId face, Point2 local) {
    double theta = std::arg(local);
    if (theta < 0.0) theta += 2.0 * kPi;
    return {face, std::abs(local), theta};
}

SurfacePoint face_barycenter(FaceId face) { return {face, 0.0, 0.0}; }

SurfacePoint vertex_point(const SemiplanarGraph& g, VertexId v) {
    for (FaceId f : g.corner_faces(v)) {
        const Face& face = g.face(f);
        if (!face.closed) continue;
        for (int k = 0; k < face.degree(); ++k) {
            if (face.vertices[k] == v) {
                const FaceGeometry fg = face_geometry(face.degree());
                return {f, fg.circumradius, k * fg.sector_angle};
            }
        }
    }
    throw Error(ErrorKind::InvalidArgument,
                "vertex_point: vertex " + std::to_string(v) + " lies on no closed face");
}

bool inside_polygon(int n, double r, double theta, double slack) {
    const FaceGeometry fg = face_geometry(n);
    double t = std::fmod(theta, 2.0 * kPi);
    if (t < 0.0) t += 2.0 * kPi;
    int j = static_cast<int>(std::floor(t / fg.sector_angle));
    j = std::min(j, n - 1);
    const double limit = fg.apothem / std::cos(t - (2 * j + 1) * fg.sector_angle / 2.0);
    return r <= limit * (1.0 + slack) + slack;
}

} // namespace semiplanar
