#include "support.hpp"

#include <semiplanar/error.hpp>
#include <semiplanar/field_io.hpp>
#include <semiplanar/laplace.hpp>

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace semiplanar;
using test_support::error_kind;

namespace {

struct Lattice {
    GeneratedTiling tiling;
    PlanarLayout layout;

    double x(VertexId v) const { return layout.position[v].real(); }
    double y(VertexId v) const { return layout.position[v].imag(); }
};

Lattice square_lattice(int radius) {
    Lattice l{test_support::tiling("4^4", radius), {}};
    l.layout = planar_layout(l.tiling.graph, l.tiling.center);
    return l;
}

} // namespace

TEST_CASE("laplacian on the square lattice") {
    const Lattice l = square_lattice(3);
    const SemiplanarGraph& g = l.tiling.graph;
    const VertexId o = l.tiling.center;
    CHECK(laplacian(g, make_field(g, [](VertexId) { return 5.0; }), o) == 0.0);
    CHECK(laplacian(g, make_field(g, [&](VertexId v) { return l.x(v); }), o) == doctest::Approx(0.0));
    // (1/4) ((1)^2 + (-1)^2 + 0 + 0)
    CHECK(laplacian(g, make_field(g, [&](VertexId v) { return l.x(v) * l.x(v); }), o) ==
          doctest::Approx(0.5).epsilon(1e-14));
    const VertexId b = g.boundary_vertices().front();
    CHECK(error_kind([&] { laplacian(g, make_field(g, [](VertexId) { return 0.0; }), b); }) ==
          ErrorKind::InvalidArgument);
}

TEST_CASE("Dirichlet solves reproduce discrete harmonic polynomials") {
    const Lattice l = square_lattice(9);
    const SemiplanarGraph& g = l.tiling.graph;
    struct Case {
        const char* name;
        std::function<double(double, double)> f;
    };
    const Case cases[] = {
        {"const", [](double, double) { return 2.5; }},
        {"x", [](double x, double) { return x; }},
        {"y", [](double, double y) { return y; }},
        {"xy", [](double x, double y) { return x * y; }},
        {"x2-y2", [](double x, double y) { return x * x - y * y; }},
    };
    for (const auto& c : cases) {
        CAPTURE(c.name);
        const auto exact = [&](VertexId v) { return c.f(l.x(v), l.y(v)); };
        const DirichletSolution s = solve_dirichlet(ball_problem(g, l.tiling.center, 8, exact));
        double worst = 0.0;
        for (VertexId v : graph_ball(g, l.tiling.center, 8).members) worst = std::max(worst, std::abs(s.field[v] - exact(v)));
        CHECK(worst < 1e-9);
        CHECK(s.report.max_residual <= s.report.target);
    }
}

TEST_CASE("maximum principle and convergence on random data") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> value(-3.0, 3.0);
    for (const char* kind : {"4^4", "6^3", "3^6", "4.8.8", "3.12.12"}) {
        CAPTURE(kind);
        const auto t = test_support::tiling(kind, 7);
        for (int trial = 0; trial < 3; ++trial) {
            std::vector<double> data(t.graph.vertex_count());
            for (double& x : data) x = value(rng);
            const auto problem = ball_problem(t.graph, t.center, 6, [&](VertexId v) { return data[v]; });
            const DirichletSolution s = solve_dirichlet(problem);
            double lo = 1e300, hi = -1e300;
            for (VertexId b : outer_boundary(t.graph, problem.interior)) {
                lo = std::min(lo, data[b]);
                hi = std::max(hi, data[b]);
            }
            for (VertexId v : problem.interior) {
                CHECK(s.field[v] >= lo - 1e-12);
                CHECK(s.field[v] <= hi + 1e-12);
            }
            CHECK(max_laplacian(t.graph, s.field, problem.interior) <= 1e-12 * 3.0);
        }
    }
}

TEST_CASE("Dirichlet preconditions") {
    const auto t = test_support::tiling("4^4", 3);
    CHECK(error_kind([&] { ball_problem(t.graph, t.center, 4, [](VertexId) { return 0.0; }); }) ==
          ErrorKind::InsufficientTruncation);
    DirichletProblem empty;
    empty.graph = &t.graph;
    CHECK(error_kind([&] { solve_dirichlet(empty); }) == ErrorKind::InvalidArgument);
    auto nan_problem = ball_problem(t.graph, t.center, 2, [](VertexId) { return kUndefined; });
    CHECK(error_kind([&] { solve_dirichlet(nan_problem); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("Harnack ratio") {
    const Lattice l = square_lattice(4);
    const SemiplanarGraph& g = l.tiling.graph;
    const VertexId o = l.tiling.center;
    CHECK(harnack_ratio(g, o, 2, make_field(g, [](VertexId) { return 3.0; })) == 1.0);
    // 10 + x on B_2: max 12, min 8.
    CHECK(harnack_ratio(g, o, 2, make_field(g, [&](VertexId v) { return 10.0 + l.x(v); })) ==
          doctest::Approx(1.5).epsilon(1e-14));
    CHECK(error_kind([&] { harnack_ratio(g, o, 2, make_field(g, [&](VertexId v) { return l.x(v); })); }) ==
          ErrorKind::InvalidArgument);
    CHECK(error_kind([&] {
              harnack_ratio(g, o, 2, make_field(g, [&](VertexId v) { return 10.0 + l.x(v) * l.x(v); }));
          }) == ErrorKind::InvalidArgument);
}

TEST_CASE("graph mean value ratio") {
    const Lattice l = square_lattice(4);
    const SemiplanarGraph& g = l.tiling.graph;
    const VertexId o = l.tiling.center;
    CHECK(graph_mvi_ratio(g, o, 3, make_field(g, [](VertexId) { return -2.0; })) == doctest::Approx(1.0));
    CHECK(graph_mvi_ratio(g, o, 2, make_field(g, [&](VertexId v) { return l.x(v); })) == doctest::Approx(0.0));
    CHECK(graph_mvi_ratio(g, o, 2, make_field(g, [](VertexId) { return 0.0; })) == 0.0);
}

TEST_CASE("field files") {
    const auto t = test_support::tiling("6^3", 3);
    const DirichletSolution s =
        solve_dirichlet(ball_problem(t.graph, t.center, 2, [](VertexId v) { return 0.25 * v; }));
    const ScalarField back = parse_field(serialize_field(s.field, R"({"k":1})"));
    REQUIRE(back.size() == s.field.size());
    CHECK(back.domain.kind == FieldDomain::Kind::Ball);
    CHECK(back.domain.radius == 2);
    for (std::size_t v = 0; v < back.size(); ++v) {
        CHECK(back.defined(v) == s.field.defined(v));
        if (back.defined(v)) CHECK(back[v] == s.field[v]);
    }
    CHECK(error_kind([] { parse_field(R"({"values": [1, "a"]})"); }) == ErrorKind::Parse);
    CHECK(error_kind([] { parse_field(R"({"values": [1, 2)"); }) == ErrorKind::Parse);
    CHECK(error_kind([] { parse_field(R"({"domain": {"kind": "full"}})"); }) == ErrorKind::Parse);
}
