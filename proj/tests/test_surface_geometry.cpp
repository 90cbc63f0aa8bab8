#include "support.hpp"

#include <semiplanar/error.hpp>
#include <semiplanar/surface.hpp>

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace semiplanar;
using test_support::error_kind;
using test_support::vertex_at;

constexpr double pi = std::numbers::pi;

TEST_CASE("regular polygon geometry") {
    const FaceGeometry sq = face_geometry(4);
    CHECK(sq.circumradius == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-15));
    CHECK(sq.area == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(sq.apothem == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(face_geometry(6).area == doctest::Approx(3 * std::sqrt(3.0) / 2).epsilon(1e-15));
    CHECK(face_geometry(3).circumradius == doctest::Approx(1 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(face_diameter_bound(4) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(error_kind([] { face_geometry(2); }) == ErrorKind::InvalidArgument);
    for (int n = 3; n <= 12; ++n) {
        for (int k = 0; k < n; ++k) {
            const Point2 side = polygon_vertex(n, (k + 1) % n) - polygon_vertex(n, k);
            CHECK(std::abs(side) == doctest::Approx(1.0).epsilon(1e-14));
        }
    }
}

TEST_CASE("planar layouts") {
    SUBCASE("square lattice has integer coordinates") {
        const auto t = test_support::tiling("4^4", 4);
        const PlanarLayout layout = planar_layout(t.graph, t.center);
        for (const Point2& z : layout.position) {
            CHECK(std::abs(z.real() - std::round(z.real())) < 1e-12);
            CHECK(std::abs(z.imag() - std::round(z.imag())) < 1e-12);
        }
    }
    SUBCASE("every edge has unit length") {
        for (TilingKind kind : kAllTilings) {
            const GeneratedTiling t = generate({kind, 4});
            const PlanarLayout layout = planar_layout(t.graph, t.center);
            for (const auto& [u, v] : t.graph.edges()) {
                CHECK(std::abs(layout.position[u] - layout.position[v]) == doctest::Approx(1.0).epsilon(1e-12));
            }
        }
    }
    SUBCASE("curved caps are not developable") {
        const GraphFile f = test_support::fixture("dodecahedral_cap.json");
        CHECK(error_kind([&] { planar_layout(f.graph, f.center); }) == ErrorKind::NotDevelopable);
    }
    SUBCASE("to_plane and from_plane are inverse") {
        const auto t = test_support::tiling("3.12.12", 3);
        const PlanarLayout layout = planar_layout(t.graph, t.center);
        for (FaceId f = 0; f < static_cast<FaceId>(t.graph.faces().size()); ++f) {
            if (!t.graph.face(f).closed) continue;
            const SurfacePoint p = surface_point(f, Point2(0.1, -0.05));
            const SurfacePoint q = layout.from_plane(t.graph, f, layout.to_plane(t.graph, p));
            CHECK(std::abs(q.local() - p.local()) < 1e-12);
        }
    }
}

TEST_CASE("surface distance on flat tilings") {
    const auto t = test_support::tiling("4^4", 10);
    const MetricMesh mesh(t.graph, 0.05);
    const PlanarLayout layout = planar_layout(t.graph, t.center);
    const auto at = [&](double x, double y) { return vertex_point(t.graph, vertex_at(layout, x, y)); };

    CHECK(surface_distance(mesh, at(0, 0), at(0, 0)).value == 0.0);
    CHECK(surface_distance(mesh, at(0, 0), at(1, 0)).value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(surface_distance(mesh, at(0, 0), at(1, 1)).value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

    const SurfaceDistance far = surface_distance(mesh, at(0, 0), at(3, 4));
    CHECK(far.value >= 5.0 - 1e-12);
    CHECK(far.value <= 5.0 + far.error_bound + 1e-12);

    // Random interior points against the layout.
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> coord(-2.5, 2.5);
    for (int i = 0; i < 20; ++i) {
        const Point2 a(coord(rng), coord(rng));
        const Point2 b(coord(rng), coord(rng));
        const auto locate = [&](Point2 z) {
            for (FaceId f = 0; f < static_cast<FaceId>(t.graph.faces().size()); ++f) {
                if (!t.graph.face(f).closed) continue;
                const SurfacePoint p = layout.from_plane(t.graph, f, z);
                if (inside_polygon(4, p.r, p.theta)) return p;
            }
            throw std::runtime_error("point outside the patch");
        };
        const SurfaceDistance d = surface_distance(mesh, locate(a), locate(b));
        CHECK(d.value >= std::abs(a - b) - 1e-12);
        CHECK(d.value <= std::abs(a - b) + d.error_bound + 1e-12);
    }
}

TEST_CASE("mesh distance does not increase under refinement") {
    const auto t = test_support::tiling("3.6.3.6", 6);
    const SurfacePoint p = vertex_point(t.graph, t.center);
    const SurfacePoint q = surface_point(t.graph.corner_faces(20).front(), Point2(0.05, 0.02));
    double previous = 1e300;
    for (double h : {0.25, 0.125, 0.0625}) {
        const MetricMesh mesh(t.graph, h);
        const double d = surface_distance(mesh, p, q).value;
        CHECK(d <= previous + 1e-12);
        previous = d;
    }
}

TEST_CASE("points outside the safe region are rejected") {
    const auto t = test_support::tiling("4^4", 3);
    const MetricMesh mesh(t.graph, 0.1);
    const VertexId b = t.graph.boundary_vertices().front();
    const SurfacePoint edge = vertex_point(t.graph, b);
    CHECK(error_kind([&] { surface_distance(mesh, vertex_point(t.graph, t.center), edge); }) ==
          ErrorKind::InsufficientTruncation);
    CHECK(error_kind([] { MetricMesh(test_support::tiling("4^4", 2).graph, 0.0); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("surface ball volume") {
    SUBCASE("square tiling") {
        const auto t = test_support::tiling("4^4", 8);
        const MetricMesh mesh(t.graph, 0.05);
        const SurfacePoint p = vertex_point(t.graph, t.center);
        const BallVolume v2 = surface_ball_volume(mesh, p, 2.0);
        CHECK(std::abs(v2.value - 4 * pi) <= v2.quadrature_error);
        CHECK(surface_ball_volume(mesh, p, 0.0).value == 0.0);
        // Off-vertex center.
        const SurfacePoint inside = surface_point(p.face, Point2(0.1, 0.2));
        const BallVolume v1 = surface_ball_volume(mesh, inside, 1.5);
        CHECK(std::abs(v1.value - pi * 2.25) <= v1.quadrature_error);
    }
    SUBCASE("hexagonal tiling") {
        const auto t = test_support::tiling("6^3", 8);
        const MetricMesh mesh(t.graph, 0.05);
        const BallVolume v = surface_ball_volume(mesh, vertex_point(t.graph, t.center), 2.0);
        CHECK(std::abs(v.value - 4 * pi) <= v.quadrature_error);
    }
    SUBCASE("integrating 1 matches the volume") {
        const auto t = test_support::tiling("4.8.8", 9);
        const MetricMesh mesh(t.graph, 0.1);
        const SurfaceBallSampler sampler(mesh, vertex_point(t.graph, t.center), 2.5);
        const std::vector<double> ones(sampler.nodes().size(), 1.0);
        CHECK(sampler.integrate(2.0, ones) == doctest::Approx(sampler.volume(2.0)).epsilon(1e-14));
        CHECK(sampler.indicator(1.0, 2.0) == 1.0);
        CHECK(sampler.indicator(3.0, 2.0) == 0.0);
        CHECK(sampler.indicator(2.0, 2.0) == doctest::Approx(0.5));
    }
    SUBCASE("sampler reach") {
        const auto t = test_support::tiling("4^4", 6);
        const MetricMesh mesh(t.graph, 0.1);
        const SurfacePoint p = vertex_point(t.graph, t.center);
        const double reach = safe_reach(mesh, p);
        CHECK(std::isfinite(reach));
        CHECK_NOTHROW(SurfaceBallSampler(mesh, p, reach - mesh.h() - 1e-6));
        CHECK(error_kind([&] { SurfaceBallSampler(mesh, p, reach + 1.0); }) == ErrorKind::InsufficientTruncation);
    }
}

TEST_CASE("bi-Lipschitz ratios") {
    const auto t = test_support::tiling("4^4", 8);
    const MetricMesh mesh(t.graph, 0.05);
    const PlanarLayout layout = planar_layout(t.graph, t.center);
    const VertexId o = vertex_at(layout, 0, 0);
    const std::vector<std::pair<VertexId, VertexId>> adjacent{{o, vertex_at(layout, 1, 0)}};
    const LipschitzMeasure a = bilipschitz_measure(mesh, adjacent);
    CHECK(a.max_ratio == doctest::Approx(1.0).epsilon(1e-12));
    const std::vector<std::pair<VertexId, VertexId>> diagonal{{o, vertex_at(layout, 1, 1)}};
    CHECK(bilipschitz_measure(mesh, diagonal).min_ratio == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));

    // d <= d^G on every sample: graph edges are unit surface paths.
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> c(-4, 4);
    std::vector<std::pair<VertexId, VertexId>> pairs;
    for (int i = 0; i < 60; ++i) {
        const VertexId u = vertex_at(layout, c(rng), c(rng) / 2);
        VertexId v = u;
        while (v == u) v = vertex_at(layout, c(rng) / 2, c(rng));
        pairs.emplace_back(u, v);
    }
    const LipschitzMeasure m = bilipschitz_measure(mesh, pairs);
    CHECK(m.max_ratio <= 1.0 + m.max_mesh_error + 1e-12);
    CHECK(m.min_ratio >= std::sqrt(0.5) - 1e-12);
}
