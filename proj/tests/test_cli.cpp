#include "support.hpp"

#include <semiplanar_cli/cli.hpp>
#include <semiplanar_cli/expression.hpp>

#include <semiplanar/error.hpp>
#include <semiplanar/extension.hpp>
#include <semiplanar/field_io.hpp>

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace semiplanar;
using namespace semiplanar::cli;
using test_support::error_kind;

namespace {

struct Outcome {
    int status;
    std::string out;
    std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int status = main_entry(args, out, err);
    return {status, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

} // namespace

TEST_CASE("expressions") {
    const Variables v{3.0, 4.0, 2.0};
    CHECK(Expression::parse("x*y")(v) == 12.0);
    CHECK(Expression::parse("x^2 - y^2")(v) == -7.0);
    CHECK(Expression::parse("-2^2")(v) == -4.0);
    CHECK(Expression::parse("2^3^2")(v) == 512.0);
    CHECK(Expression::parse("r")(v) == 5.0);
    CHECK(Expression::parse("d + 1")(v) == 3.0);
    CHECK(Expression::parse("abs(x - 10) / 7")(v) == 1.0);
    CHECK(Expression::parse("sqrt(16) + exp(0) + cos(0) + sin(0)")(v) == 6.0);
    CHECK(Expression::parse("atan2(1, 1)")(v) == doctest::Approx(0.7853981633974483));
    CHECK(Expression::parse("1.5e1 * (2 + 1)")(v) == 45.0);
    CHECK(Expression::parse("2*pi")(v) == doctest::Approx(6.283185307179586));
    CHECK(Expression::parse("x + 1").uses_coordinates());
    CHECK_FALSE(Expression::parse("d + 1").uses_coordinates());
    for (const char* bad : {"", "x +", "(x", "foo(1)", "z", "1 2", "atan2(1)", "#"}) {
        CAPTURE(bad);
        CHECK(error_kind([&] { Expression::parse(bad); }) == ErrorKind::Parse);
    }
}

TEST_CASE("gen writes a graph file with the config echoed") {
    const Outcome o = invoke({"gen", "--kind", "6.3", "--radius", "4", "--out", "cli_gen.json"});
    CHECK(o.status == kExitOk);
    const auto doc = nlohmann::json::parse(slurp("cli_gen.json"));
    CHECK(doc["config"]["command"] == "gen");
    CHECK(doc["config"]["kind"] == "6.3");
    const GraphFile g = load_graph("cli_gen.json");
    CHECK(interior_radius(g.graph, g.center) == 4);
}

TEST_CASE("curvature report") {
    const Outcome o = invoke({"curvature", "--graph", test_support::data_path("dodecahedral_cap.json")});
    CHECK(o.status == kExitOk);
    CHECK(o.out.find("\n0,3,0,5.5.5,1/10,0.1\n") != std::string::npos);
    CHECK(o.out.find("# nonnegative: true") != std::string::npos);
    const Outcome wheel =
        invoke({"curvature", "--graph", test_support::data_path("heptagonal_wheel.json"), "--format", "json"});
    CHECK(wheel.status == kExitOk);
    const auto doc = nlohmann::json::parse(wheel.out);
    CHECK(doc["nonnegative"] == false);
    CHECK(doc["vertices"][0]["curvature"] == "-1/6");
}

TEST_CASE("solve, extend and surface") {
    REQUIRE(invoke({"gen", "--kind", "4^4", "--radius", "7", "--out", "cli_sq.json"}).status == kExitOk);
    const Outcome s = invoke({"solve", "--graph", "cli_sq.json", "--ball", "0,5", "--boundary", "x^2 - y^2",
                              "--out", "cli_f.json"});
    CHECK(s.status == kExitOk);
    const ScalarField f = load_field("cli_f.json");
    const GraphFile g = load_graph("cli_sq.json");
    const PlanarLayout layout = planar_layout(g.graph, g.center);
    for (VertexId v : graph_ball(g.graph, g.center, 5).members) {
        const double x = layout.position[v].real(), y = layout.position[v].imag();
        CHECK(std::abs(f[v] - (x * x - y * y)) < 1e-9);
    }
    CHECK(nlohmann::json::parse(slurp("cli_f.json"))["config"]["boundary"] == "x^2 - y^2");

    // A field file as boundary data.
    CHECK(invoke({"solve", "--graph", "cli_sq.json", "--ball", "0,3", "--boundary", "cli_f.json", "--out",
                  "cli_f2.json"})
              .status == kExitOk);

    const Outcome e = invoke({"extend", "--graph", "cli_sq.json", "--field", "cli_f.json", "--K", "16", "--M", "256",
                              "--out", "cli_fbar.json"});
    CHECK(e.status == kExitOk);
    const ExtendedField ext = load_extended("cli_fbar.json");
    CHECK(ext.order == 16);

    const Outcome vol = invoke({"surface", "--graph", "cli_sq.json", "--ball-volume", "0,2", "--h", "0.05"});
    CHECK(vol.status == kExitOk);
    CHECK(vol.out.find("p,R,value,eps_quad\n0,2,12.5") != std::string::npos);
}

TEST_CASE("input errors exit with 2") {
    CHECK(invoke({}).status == kExitInputError);
    CHECK(invoke({"frobnicate"}).status == kExitInputError);
    CHECK(invoke({"gen", "--kind", "5^4", "--radius", "2"}).status == kExitInputError);
    CHECK(invoke({"gen", "--kind", "4^4", "--radius", "0"}).status == kExitInputError);
    CHECK(invoke({"curvature", "--graph", "/nonexistent.json"}).status == kExitInputError);
    CHECK(invoke({"curvature", "--graph", test_support::data_path("bad_rotation.json")}).status == kExitInputError);
    CHECK(invoke({"solve", "--kind", "4^4", "--radius", "3", "--ball", "0,9", "--boundary", "x"}).status ==
          kExitInputError);
    CHECK(invoke({"solve", "--kind", "4^4", "--radius", "3", "--ball", "0,2", "--boundary", "x +"}).status ==
          kExitInputError);
    CHECK(invoke({"solve", "--kind", "4^4", "--radius", "3", "--ball", "zero", "--boundary", "x"}).status ==
          kExitInputError);
    CHECK(invoke({"solve", "--graph", test_support::data_path("dodecahedral_cap.json"), "--ball", "0,0",
                  "--boundary", "x"})
              .status == kExitInputError);
    CHECK(invoke({"extend", "--kind", "4^4", "--radius", "2", "--field", "cli_f.json", "--K", "64", "--M", "64"})
              .status == kExitInputError);
    CHECK(invoke({"verify", "--kind", "4^4", "--radius", "4", "--suite", "everything"}).status == kExitInputError);
    CHECK(invoke({"dim", "--kind", "4^4", "--radius", "8", "--d", "1", "--radii", "4,6"}).status == kExitInputError);
    CHECK(invoke({"surface", "--kind", "4^4", "--radius", "4", "--ball-volume", "0,2", "--format", "xml"}).status ==
          kExitInputError);
    CHECK(invoke({"--help"}).status == kExitOk);
}

TEST_CASE("verify rvc on the square tiling passes") {
    const Outcome o = invoke({"verify", "--kind", "4^4", "--radius", "8", "--suite", "rvc", "--out", "cli_rvc.csv"});
    CHECK(o.status == kExitOk);
    const std::string report = slurp("cli_rvc.csv");
    CHECK(report.rfind("# config: {\"command\":\"verify\"", 0) == 0);
    CHECK(report.find(",false") == std::string::npos);
    CHECK(report.find("RVC1,") != std::string::npos);
    CHECK(report.find("VD1,") != std::string::npos);
    CHECK(report.find("LIP-EQ,") != std::string::npos);
}

TEST_CASE("verify is deterministic") {
    const std::vector<std::string> args{"verify", "--kind", "6^3", "--radius", "6", "--suite", "poincare", "--seed", "9"};
    const Outcome a = invoke(args);
    const Outcome b = invoke(args);
    CHECK(a.status == b.status);
    CHECK(a.out == b.out);
    const Outcome c = invoke({"verify", "--kind", "6^3", "--radius", "6", "--suite", "poincare", "--seed", "10"});
    CHECK(c.out != a.out);
}

TEST_CASE("verify on a curved cap skips what it cannot measure") {
    const Outcome o = invoke({"verify", "--graph", test_support::data_path("icosahedral_cap.json"), "--suite", "rvc"});
    CHECK(o.status == kExitOk);
    CHECK(o.out.find("skipped") != std::string::npos);
}

TEST_CASE("dim reports 3 for linear growth on the square tiling") {
    const Outcome o = invoke({"dim", "--kind", "4^4", "--radius", "12", "--d", "1", "--radii", "4,6,8,10"});
    CHECK(o.status == kExitOk);
    CHECK(o.out.find("# dimension: 3\n") != std::string::npos);
    const Outcome j =
        invoke({"dim", "--kind", "4^4", "--radius", "12", "--d", "2", "--radii", "4,6,8,10", "--format", "json"});
    CHECK(nlohmann::json::parse(j.out)["k"] == 5);
}
