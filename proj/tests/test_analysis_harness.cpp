#include "support.hpp"

#include <semiplanar/analysis.hpp>
#include <semiplanar/error.hpp>

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

using namespace semiplanar;
using test_support::error_kind;

constexpr double pi = std::numbers::pi;

namespace {

struct Flat {
    GeneratedTiling tiling;
    PlanarLayout layout;

    const SemiplanarGraph& g() const { return tiling.graph; }
    VertexId p() const { return tiling.center; }
    double x(VertexId v) const { return layout.position[v].real(); }
    double y(VertexId v) const { return layout.position[v].imag(); }

    NamedField field(const std::string& name, const std::function<double(double, double)>& f) const {
        return {name, make_field(g(), [&](VertexId v) { return f(x(v), y(v)); })};
    }
};

Flat flat(const char* kind, int radius) {
    Flat f{test_support::tiling(kind, radius), {}};
    f.layout = planar_layout(f.tiling.graph, f.tiling.center);
    return f;
}

const Measurement& row(const InequalityReport& r, const std::string& params) {
    for (const auto& m : r.rows) {
        if (m.params.rfind(params, 0) == 0) return m;
    }
    throw std::runtime_error("no row " + params);
}

} // namespace

TEST_CASE("report bookkeeping") {
    InequalityReport r;
    r.id = InequalityId::RVC1;
    r.add("a=1", 0.5, 1.0);
    r.add("a=2", 2.0);
    r.finish();
    CHECK(r.measured == 2.0);
    CHECK(r.pass == true);
    r.add("a=3", 3.0, 2.5);
    r.finish();
    CHECK(r.pass == false);
    CHECK(std::string(to_string(InequalityId::MVI_G)) == "MVI-G");
    CHECK(std::string(to_string(InequalityId::LIP_EQ)) == "LIP-EQ");
}

TEST_CASE("report writers") {
    InequalityReport r;
    r.id = InequalityId::VD1;
    r.graph = "g";
    r.sample = "p=0";
    r.add("R=1", 3.9, 4.2);
    r.finish();
    std::ostringstream csv;
    write_csv(csv, {r}, R"({"seed":1})");
    const std::string text = csv.str();
    CHECK(text.rfind("# config: {\"seed\":1}\n", 0) == 0);
    CHECK(text.find("inequality_id,graph,sample,params,measured,bound,pass\n") != std::string::npos);
    CHECK(text.find("VD1,g,p=0,R=1,3.9,4.2,true\n") != std::string::npos);

    std::ostringstream js;
    write_json(js, {r}, R"({"seed":1})");
    const auto doc = nlohmann::json::parse(js.str());
    CHECK(doc["config"]["seed"] == 1);
    CHECK(doc["reports"][0]["inequality_id"] == "VD1");

    for (double v : {0.1, 1.0 / 3.0, 1e-300, 12345.678}) CHECK(std::stod(format_number(v)) == v);
}

TEST_CASE("graph volume comparison on the square lattice") {
    const auto t = test_support::tiling("4^4", 9);
    const VolumePair vp = verify_graph_volume(t.graph, t.center, {2, 4});
    // (41 / 13) (2 / 4)^2
    CHECK(row(vp.comparison, "r=2;R=4").value == doctest::Approx(41.0 / 13.0 / 4.0).epsilon(1e-14));
    CHECK(row(vp.doubling, "R=2").value == doctest::Approx(41.0 / 13.0).epsilon(1e-14));
    CHECK(error_kind([&] { verify_graph_volume(t.graph, t.center, {2, 5}); }) == ErrorKind::InsufficientTruncation);
    CHECK(error_kind([&] { verify_graph_volume(t.graph, t.center, {0, 2}); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("hexagonal volume sweep stays bounded") {
    const auto t = test_support::tiling("6^3", 25);
    std::vector<int> radii;
    for (int R = 1; R <= 12; ++R) radii.push_back(R);
    const VolumePair vp = verify_graph_volume(t.graph, t.center, radii);
    CHECK(vp.comparison.measured < 2.0);
    CHECK(vp.doubling.measured <= 4.5);
}

TEST_CASE("Poincare ratio against hand sums") {
    const Flat l = flat("4^4", 5);
    const auto fields = std::vector<NamedField>{l.field("x", [](double x, double) { return x; }),
                                                l.field("one", [](double, double) { return 1.0; })};
    const InequalityReport r = verify_poincare_graph(l.g(), l.p(), 2, 1, fields);

    // Independent enumeration of B_2 in Z^2.
    double variance = 0.0;
    int edges = 0;
    for (int x = -2; x <= 2; ++x) {
        for (int y = -2; y <= 2; ++y) {
            if (std::abs(x) + std::abs(y) > 2) continue;
            variance += 4.0 * x * x;
            if (std::abs(x + 1) + std::abs(y) <= 2) ++edges; // horizontal edge to (x+1, y)
        }
    }
    CHECK(row(r, "field=x").value == doctest::Approx(variance / (4.0 * edges)).epsilon(1e-12));
    CHECK(row(r, "field=one").value == 1.0);
    CHECK(r.note.find("one") != std::string::npos);
}

TEST_CASE("Harnack and graph MVI reports") {
    const Flat l = flat("4^4", 5);
    const auto fields = std::vector<NamedField>{l.field("shift", [](double x, double) { return 10.0 + x; })};
    const InequalityReport h = verify_harnack(l.g(), l.p(), {2}, fields);
    CHECK(h.rows.front().value == doctest::Approx(1.5));
    const InequalityReport m = verify_mvi_graph(l.g(), l.p(), {1, 2, 3}, fields);
    CHECK(m.rows.size() == 3);
    CHECK(std::isfinite(m.measured));
}

TEST_CASE("surface volume, bi-Lipschitz and mean value checks") {
    const Flat l = flat("4^4", 13);
    const MetricMesh mesh(l.g(), 0.05);
    const SurfacePoint p = vertex_point(l.g(), l.p());

    const VolumePair vp = verify_surface_volume(mesh, p, {1.0, 2.0, 3.0});
    CHECK(vp.comparison.pass == true);
    CHECK(vp.doubling.pass == true);

    SUBCASE("mean value ratio of a constant is 1") {
        const auto one = std::vector<NamedField>{l.field("one", [](double, double) { return 1.0; })};
        const InequalityReport r = verify_mvi_surface(mesh, p, {1.0, 2.0}, one, 16, 256);
        for (const auto& m : r.rows) CHECK(m.value == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("mean value ratio of x shifted to 1 at the center is about 4 / R^2 + 1") {
        // f = 1 + x: |B_R| / integral of (1 + x)^2 = pi R^2 / (pi R^2 + pi R^4 / 4).
        const auto f = std::vector<NamedField>{l.field("x", [](double x, double) { return 1.0 + x; })};
        const InequalityReport r = verify_mvi_surface(mesh, p, {2.0, 3.0}, f, 32, 1024);
        for (double R : {2.0, 3.0}) {
            const double expected = 1.0 / (1.0 + R * R / 4.0);
            CHECK(row(r, "field=x;R=" + format_number(R)).value == doctest::Approx(expected).epsilon(0.03));
        }
    }
    SUBCASE("non-harmonic fields are rejected") {
        const auto f = std::vector<NamedField>{l.field("x2", [](double x, double) { return x * x; })};
        CHECK(error_kind([&] { verify_mvi_surface(mesh, p, {1.0}, f, 16, 256); }) == ErrorKind::InvalidArgument);
    }
    SUBCASE("volume lemma closed form") {
        const InequalityReport r = lemma36_check(mesh, p, l.p(), 8, 0.7);
        const double r_prime = 0.7 * 8 - 2 * std::sqrt(2.0);
        CHECK(r_prime == doctest::Approx(2.7716).epsilon(1e-4));
        const double graph_volume = 4.0 * (2 * 64 + 2 * 8 + 1);
        CHECK(r.rows.front().value == doctest::Approx(pi * r_prime * r_prime / graph_volume).epsilon(0.01));
        CHECK(error_kind([&] { lemma36_check(mesh, p, l.p(), 4, 0.7); }) == ErrorKind::InvalidArgument);
    }
}

TEST_CASE("extension lemma reports") {
    const Flat l = flat("4^4", 4);
    std::vector<std::pair<std::string, ExtendedField>> fields;
    fields.emplace_back("x", extend(l.g(), make_field(l.g(), [&](VertexId v) { return l.x(v); }), 32, 1024));
    const ExtensionLemmaReports reports = verify_extension_lemmas(fields);
    CHECK(reports.lem33.pass == true);
    CHECK(reports.lem35.pass == true);
}

TEST_CASE("Gram matrices") {
    const Flat l = flat("4^4", 6);
    const auto basis = std::vector<NamedField>{l.field("one", [](double, double) { return 1.0; }),
                                               l.field("x", [](double x, double) { return x; }),
                                               l.field("y", [](double, double y) { return y; })};
    const GramMatrix A = gram_graph(l.g(), basis, l.p(), 2);
    CHECK(A.entries(0, 0) == 52.0);
    // B_2 holds (+-1, 0), (+-1, +-1), (+-2, 0) off the y axis: sum of x^2 = 2 + 4 + 8.
    CHECK(A.entries(1, 1) == doctest::Approx(4.0 * 14.0).epsilon(1e-12));
    CHECK(A.entries(2, 2) == doctest::Approx(4.0 * 14.0).epsilon(1e-12));
    CHECK(std::abs(A.entries(0, 1)) < 1e-12);
    CHECK(std::abs(A.entries(1, 2)) < 1e-12);
    CHECK(A.rank(1e-8) == 3);

    const auto dup = std::vector<NamedField>{basis[1], basis[1]};
    const GramMatrix B = gram_graph(l.g(), dup, l.p(), 2);
    CHECK(B.rank(1e-8) == 1);
    CHECK(std::abs(B.eigenvalues(0)) < 1e-12);

    CHECK(numerical_rank(Eigen::VectorXd(), 1e-8) == 0);
    CHECK(numerical_rank(Eigen::Vector3d(1e-10, 0.5, 1.0), 1e-8) == 2);
    CHECK(numerical_rank(Eigen::Vector3d(1e-10, 0.5, 1.0), 1e-11) == 3);
}

TEST_CASE("trace check") {
    const Flat l = flat("4^4", 12);
    const auto basis = std::vector<NamedField>{l.field("one", [](double, double) { return 1.0; }),
                                               l.field("x", [](double x, double) { return x; }),
                                               l.field("y", [](double, double y) { return y; })};
    const InequalityReport r = lemma42_check(l.g(), basis, l.p(), 1.0, 1.5, 0.1, {4, 6, 8});
    CHECK(r.pass == true);

    // beta = 1: A_R in its own orthonormal basis has trace k.
    const InequalityReport same = lemma42_check(l.g(), basis, l.p(), 1.0, 1.0, 0.1, {4, 6});
    for (const auto& m : same.rows) CHECK(m.value == doctest::Approx(3.0).epsilon(1e-10));

    // k = 1, constant: trace = |B_R| / |B_R'|.
    const InequalityReport one = lemma42_check(l.g(), {basis[0]}, l.p(), 0.0, 1.5, 0.1, {4});
    CHECK(one.rows.front().value == doctest::Approx(41.0 / 85.0).epsilon(1e-12));
}

TEST_CASE("surface Gram ratio") {
    const Flat l = flat("4^4", 10);
    const MetricMesh mesh(l.g(), 0.1);
    const SurfaceBallSampler sampler(mesh, vertex_point(l.g(), l.p()), 3.75);
    const ScalarField x = make_field(l.g(), [&](VertexId v) { return l.x(v); });
    const auto faces = sampler_faces(sampler);
    const std::vector<std::vector<double>> values{sample_extension(sampler, extend(l.g(), x, faces, 16, 256))};
    const InequalityReport r = lemma43_check(sampler, values, {2.0, 3.0}, 0.25);
    for (const auto& m : r.rows) CHECK(m.value <= 1.0);
    CHECK(error_kind([&] { lemma43_check(sampler, values, {2.0}, 0.5); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("growth fits") {
    const Flat l = flat("4^4", 12);
    const std::vector<int> radii{4, 6, 8, 10};
    SUBCASE("constant") {
        const GrowthFit fit = fit_growth(l.g(), std::vector<double>(l.g().vertex_count(), 2.0), l.p(), radii, 1.0);
        CHECK(fit.stable);
        CHECK(fit.variation == doctest::Approx(0.0));
    }
    SUBCASE("linear") {
        std::vector<double> values(l.g().vertex_count());
        for (VertexId v = 0; v < static_cast<VertexId>(values.size()); ++v) values[v] = 100.0 + l.x(v);
        CHECK(fit_growth(l.g(), values, l.p(), radii, 1.0).stable);
        const Corollary44Report c = corollary44_check(l.g(), make_field(l.g(), [&](VertexId v) { return values[v]; }),
                                                      1.0, l.p(), radii);
        CHECK(c.stable);
    }
    SUBCASE("exponential growth") {
        // a^x cos(pi y / 2) with a + 1/a = 4 is discrete harmonic on Z^2.
        const double a = 2.0 + std::sqrt(3.0);
        std::vector<double> values(l.g().vertex_count());
        for (VertexId v = 0; v < static_cast<VertexId>(values.size()); ++v) {
            values[v] = std::pow(a, l.x(v)) * std::cos(pi * l.y(v) / 2.0);
        }
        CHECK(max_laplacian(l.g(), make_field(l.g(), [&](VertexId v) { return values[v]; }),
                            graph_ball(l.g(), l.p(), 10).members) < 1e-6);
        CHECK_FALSE(fit_growth(l.g(), values, l.p(), radii, 1.0).stable);
    }
}

TEST_CASE("dimension estimates on the square lattice") {
    const Flat l = flat("4^4", 12);
    const std::vector<int> radii{4, 6, 8, 10};
    CHECK(estimate_dimension(l.g(), l.layout, 1.0, l.p(), radii).k == 3);
    CHECK(estimate_dimension(l.g(), l.layout, 2.0, l.p(), radii).k == 5);
    CHECK(estimate_dimension(l.g(), l.layout, 0.5, l.p(), radii).k == 1);
    CHECK(error_kind([&] { estimate_dimension(l.g(), l.layout, 1.0, l.p(), {4, 6}); }) ==
          ErrorKind::InvalidArgument);
}

TEST_CASE("user candidates on a curved patch") {
    const GraphFile cap = test_support::fixture("dodecahedral_cap.json");
    CHECK(error_kind([&] { planar_layout(cap.graph, cap.center); }) == ErrorKind::NotDevelopable);
}
