#include "semiplanar_cli/cli.hpp"

#include "semiplanar_cli/expression.hpp"
#include "suites.hpp"

#include <semiplanar/analysis.hpp>
#include <semiplanar/error.hpp>
#include <semiplanar/field_io.hpp>
#include <semiplanar/graph_io.hpp>
#include <semiplanar/tiling.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

namespace semiplanar::cli {

namespace {

using nlohmann::ordered_json;

struct Source {
    SemiplanarGraph graph;
    VertexId center = 0;
    std::string name;
};

Source load_source(const RunConfig& c) {
    Source s;
    if (!c.graph.empty()) {
        GraphFile file = load_graph(c.graph);
        s.graph = std::move(file.graph);
        s.center = file.center;
        s.name = std::filesystem::path(c.graph).filename().string();
    } else if (!c.kind.empty()) {
        GeneratedTiling t = generate({parse_tiling_kind(c.kind), c.radius});
        s.graph = std::move(t.graph);
        s.center = t.center;
        s.name = tiling_name(t.spec.kind) + "@" + std::to_string(c.radius);
    } else {
        throw Error(ErrorKind::InvalidArgument, c.command + ": --graph or --kind is required");
    }
    if (c.center) {
        if (*c.center < 0 || *c.center >= static_cast<VertexId>(s.graph.vertex_count())) {
            throw Error(ErrorKind::InvalidArgument, "--center: vertex id out of range");
        }
        s.center = *c.center;
    }
    return s;
}

void emit(const RunConfig& c, std::ostream& out, const std::string& content) {
    if (c.out.empty()) {
        out << content;
        return;
    }
    std::ofstream file(c.out, std::ios::binary);
    if (!file) throw Error(ErrorKind::InvalidArgument, "cannot write " + c.out);
    file << content;
}

/// "p,R" with an integer vertex and a radius of type T.
template <typename T>
std::pair<VertexId, T> parse_ball(const std::string& text, const char* flag) {
    const auto comma = text.find(',');
    std::istringstream a(text.substr(0, comma == std::string::npos ? text.size() : comma));
    VertexId p = -1;
    T R{};
    bool ok = comma != std::string::npos && static_cast<bool>(a >> p) && a.eof();
    if (ok) {
        std::istringstream b(text.substr(comma + 1));
        ok = static_cast<bool>(b >> R) && b.eof();
    }
    if (!ok) throw Error(ErrorKind::InvalidArgument, std::string(flag) + ": expected p,R but got '" + text + "'");
    if (R < T{}) throw Error(ErrorKind::InvalidArgument, std::string(flag) + ": negative radius");
    return {p, R};
}

void require_vertex(const SemiplanarGraph& g, VertexId v, const char* flag) {
    if (v < 0 || v >= static_cast<VertexId>(g.vertex_count())) {
        throw Error(ErrorKind::InvalidArgument, std::string(flag) + ": vertex " + std::to_string(v) + " out of range");
    }
}

void require_format(const RunConfig& c) {
    if (c.format != "csv" && c.format != "json") {
        throw Error(ErrorKind::InvalidArgument, "--format must be csv or json");
    }
}

std::string rational_text(const Rational& q) {
    return q.den() == 1 ? std::to_string(q.num()) : std::to_string(q.num()) + "/" + std::to_string(q.den());
}

std::string pattern_text(const std::vector<int>& pattern) {
    std::string s;
    for (std::size_t i = 0; i < pattern.size(); ++i) s += (i ? "." : "") + std::to_string(pattern[i]);
    return s;
}

int cmd_gen(const RunConfig& c, std::ostream& out) {
    if (c.kind.empty()) throw Error(ErrorKind::InvalidArgument, "gen: --kind is required");
    const GeneratedTiling t = generate({parse_tiling_kind(c.kind), c.radius});
    emit(c, out, serialize_graph(t.graph, t.center, config_json(c)));
    return kExitOk;
}

int cmd_curvature(const RunConfig& c, std::ostream& out) {
    require_format(c);
    const Source s = load_source(c);
    const SemiplanarGraph& g = s.graph;
    const CurvatureCheck check = is_nonneg_curvature(g);
    std::ostringstream os;
    if (c.format == "json") {
        ordered_json doc;
        doc["config"] = ordered_json::parse(config_json(c));
        doc["nonnegative"] = check.nonnegative;
        doc["offending"] = check.offending;
        auto& rows = doc["vertices"] = ordered_json::array();
        for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v) {
            ordered_json row;
            row["vertex"] = v;
            row["degree"] = g.degree(v);
            row["boundary"] = g.is_boundary(v);
            if (!g.is_boundary(v)) {
                const Rational phi = vertex_curvature(g, v);
                row["pattern"] = pattern_text(vertex_pattern(g, v));
                row["curvature"] = rational_text(phi);
                row["value"] = phi.to_double();
            }
            rows.push_back(std::move(row));
        }
        os << doc.dump(1) << "\n";
    } else {
        os << "# config: " << config_json(c) << "\n";
        os << "vertex,degree,boundary,pattern,curvature,value\n";
        for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v) {
            os << v << "," << g.degree(v) << "," << (g.is_boundary(v) ? 1 : 0) << ",";
            if (!g.is_boundary(v)) {
                const Rational phi = vertex_curvature(g, v);
                os << pattern_text(vertex_pattern(g, v)) << "," << rational_text(phi) << ","
                   << format_number(phi.to_double());
            } else {
                os << ",,";
            }
            os << "\n";
        }
        os << "# nonnegative: " << (check.nonnegative ? "true" : "false") << "\n";
    }
    emit(c, out, os.str());
    return kExitOk;
}

int cmd_solve(const RunConfig& c, std::ostream& out) {
    const Source s = load_source(c);
    const SemiplanarGraph& g = s.graph;
    const auto [p, R] = parse_ball<int>(c.ball, "--ball");
    require_vertex(g, p, "--ball");
    if (c.boundary.empty()) throw Error(ErrorKind::InvalidArgument, "solve: --boundary is required");

    std::function<double(VertexId)> boundary;
    ScalarField given;
    if (std::filesystem::is_regular_file(c.boundary)) {
        given = load_field(c.boundary);
        if (given.size() != g.vertex_count()) {
            throw Error(ErrorKind::InvalidArgument, "solve: boundary field has " + std::to_string(given.size()) +
                                                        " values for " + std::to_string(g.vertex_count()) +
                                                        " vertices");
        }
        boundary = [&](VertexId v) { return given[v]; };
    } else {
        const Expression e = Expression::parse(c.boundary);
        std::optional<PlanarLayout> layout;
        if (e.uses_coordinates()) layout = planar_layout(g, p);
        const auto hop = bfs_distances(g, p);
        boundary = [e, layout, hop](VertexId v) {
            Variables vars;
            if (layout) {
                vars.x = layout->position[v].real();
                vars.y = layout->position[v].imag();
            }
            vars.d = hop[v];
            return e(vars);
        };
    }

    DirichletProblem problem = ball_problem(g, p, R, boundary);
    problem.tolerance = c.tolerance;
    const DirichletSolution solution = solve_dirichlet(problem);
    emit(c, out, serialize_field(solution.field, config_json(c)));
    if (!c.out.empty()) {
        out << "solve: " << solution.report.method << " iterations=" << solution.report.iterations
            << " max_residual=" << format_number(solution.report.max_residual) << "\n";
    }
    return kExitOk;
}

int cmd_extend(const RunConfig& c, std::ostream& out) {
    const Source s = load_source(c);
    if (c.field.empty()) throw Error(ErrorKind::InvalidArgument, "extend: --field is required");
    const ScalarField f = load_field(c.field);
    const ExtendedField ext = extend(s.graph, f, c.K, c.M);
    emit(c, out, serialize_extended(ext, config_json(c)));
    return kExitOk;
}

int cmd_surface(const RunConfig& c, std::ostream& out) {
    require_format(c);
    const Source s = load_source(c);
    const auto [p, R] = parse_ball<double>(c.ball_volume, "--ball-volume");
    require_vertex(s.graph, p, "--ball-volume");
    const MetricMesh mesh(s.graph, c.h);
    const BallVolume volume = surface_ball_volume(mesh, vertex_point(s.graph, p), R, c.order);
    std::ostringstream os;
    if (c.format == "json") {
        ordered_json doc;
        doc["config"] = ordered_json::parse(config_json(c));
        doc["rows"] = ordered_json::array(
            {ordered_json{{"p", p}, {"R", R}, {"value", volume.value}, {"eps_quad", volume.quadrature_error}}});
        os << doc.dump(1) << "\n";
    } else {
        os << "# config: " << config_json(c) << "\n";
        os << "p,R,value,eps_quad\n";
        os << p << "," << format_number(R) << "," << format_number(volume.value) << ","
           << format_number(volume.quadrature_error) << "\n";
    }
    emit(c, out, os.str());
    return kExitOk;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
    require_format(c);
    const Source s = load_source(c);
    const auto reports = run_suites({s.graph, s.center, s.name, c});
    std::ostringstream os;
    if (c.format == "json") {
        write_json(os, reports, config_json(c));
    } else {
        write_csv(os, reports, config_json(c));
    }
    emit(c, out, os.str());
    int failed = 0;
    for (const auto& r : reports) failed += r.pass == false;
    if (!c.out.empty()) {
        out << "verify: " << reports.size() << " reports, " << failed << " failed\n";
    }
    return failed > 0 ? kExitBoundFailure : kExitOk;
}

int cmd_dim(const RunConfig& c, std::ostream& out) {
    require_format(c);
    const Source s = load_source(c);
    const SemiplanarGraph& g = s.graph;
    if (c.radii.size() < 3) throw Error(ErrorKind::InvalidArgument, "dim: --radii needs at least three radii");

    std::vector<NamedField> candidates;
    if (!c.candidates.empty()) {
        std::stringstream list(c.candidates);
        for (std::string path; std::getline(list, path, ',');) {
            candidates.push_back({std::filesystem::path(path).stem().string(), load_field(path)});
        }
    } else {
        const PlanarLayout layout = planar_layout(g, s.center);
        candidates = monomial_candidates(g, layout, c.d, s.center, *std::max_element(c.radii.begin(), c.radii.end()));
    }

    std::vector<double> taus{c.tau};
    for (double t : {1e-6, 1e-8, 1e-10}) {
        if (t != c.tau) taus.push_back(t);
    }
    std::vector<DimensionEstimate> estimates;
    for (double t : taus) estimates.push_back(estimate_dimension(g, candidates, c.d, s.center, c.radii, t));

    std::ostringstream os;
    if (c.format == "json") {
        ordered_json doc;
        doc["config"] = ordered_json::parse(config_json(c));
        doc["k"] = estimates.front().k;
        auto& sens = doc["sensitivity"] = ordered_json::array();
        for (const auto& e : estimates) {
            ordered_json row{{"tau", e.tau}, {"k", e.k}, {"independent", e.independent},
                             {"reference_radius", e.reference_radius}};
            auto& dirs = row["directions"] = ordered_json::array();
            for (const auto& dir : e.directions) {
                dirs.push_back({{"growth_ratio", dir.growth_ratio},
                                {"constants", dir.fit.constants},
                                {"variation", dir.fit.variation},
                                {"passes", dir.passes}});
            }
            sens.push_back(std::move(row));
        }
        os << doc.dump(1) << "\n";
    } else {
        os << "# config: " << config_json(c) << "\n";
        os << "tau,k,independent,reference_radius,candidates\n";
        for (const auto& e : estimates) {
            os << format_number(e.tau) << "," << e.k << "," << e.independent << "," << e.reference_radius << ","
               << e.candidates.size() << "\n";
        }
        os << "# directions at tau=" << format_number(estimates.front().tau) << "\n";
        os << "direction,growth_ratio,variation,stable,passes\n";
        const auto& dirs = estimates.front().directions;
        for (std::size_t i = 0; i < dirs.size(); ++i) {
            os << i << "," << format_number(dirs[i].growth_ratio) << "," << format_number(dirs[i].fit.variation)
               << "," << (dirs[i].fit.stable ? 1 : 0) << "," << (dirs[i].passes ? 1 : 0) << "\n";
        }
        os << "# dimension: " << estimates.front().k << "\n";
    }
    emit(c, out, os.str());
    return kExitOk;
}

} // namespace

std::string config_json(const RunConfig& c) {
    ordered_json j;
    j["command"] = c.command;
    if (!c.graph.empty()) j["graph"] = c.graph;
    if (!c.kind.empty()) {
        j["kind"] = c.kind;
        j["radius"] = c.radius;
    }
    if (c.center) j["center"] = *c.center;
    if (!c.ball.empty()) j["ball"] = c.ball;
    if (!c.boundary.empty()) j["boundary"] = c.boundary;
    if (!c.field.empty()) j["field"] = c.field;
    if (!c.ball_volume.empty()) j["ball_volume"] = c.ball_volume;
    j["K"] = c.K;
    j["M"] = c.M;
    j["h"] = c.h;
    j["order"] = c.order;
    j["tau"] = c.tau;
    j["eps"] = c.eps;
    j["beta"] = c.beta;
    j["delta"] = c.delta;
    j["d"] = c.d;
    j["radii"] = c.radii;
    j["tolerance"] = c.tolerance;
    j["fields"] = c.fields;
    j["sources"] = c.sources;
    j["targets"] = c.targets;
    if (!c.candidates.empty()) j["candidates"] = c.candidates;
    j["suite"] = c.suite;
    j["seed"] = c.seed;
    if (!c.out.empty()) j["out"] = c.out;
    j["format"] = c.format;
    return j.dump();
}

std::optional<RunConfig> parse_arguments(const std::vector<std::string>& args, std::ostream& out) {
    RunConfig c;
    CLI::App app{"Semiplanar graphs with nonnegative curvature", "semiplanar"};
    app.require_subcommand(1, 1);
    app.set_help_flag("--help", "Print this help message and exit");

    auto source = [&c](CLI::App* cmd) {
        cmd->add_option("--graph", c.graph, "Graph file");
        cmd->add_option("--kind", c.kind, "Generate a tiling instead, e.g. 4^4 or 4.8.8");
        cmd->add_option("--radius", c.radius, "Radius of the generated tiling");
        cmd->add_option("--center", c.center, "Center vertex (defaults to the file's)");
    };
    auto output = [&c](CLI::App* cmd) {
        cmd->add_option("--out", c.out, "Output file (default stdout)");
        cmd->add_option("--format", c.format, "csv or json");
    };
    auto extension = [&c](CLI::App* cmd) {
        cmd->add_option("--K", c.K, "Fourier order");
        cmd->add_option("--M", c.M, "Boundary samples per face");
    };

    auto* gen = app.add_subcommand("gen", "Generate a tiling truncation");
    gen->add_option("--kind", c.kind, "Tiling pattern")->required();
    gen->add_option("--radius", c.radius, "Hop radius of the complete ball")->required();
    gen->add_option("--out", c.out, "Graph file (default stdout)");

    auto* curvature = app.add_subcommand("curvature", "Exact vertex curvature");
    source(curvature);
    output(curvature);

    auto* solve = app.add_subcommand("solve", "Dirichlet problem on a ball");
    source(solve);
    solve->add_option("--ball", c.ball, "p,R")->required();
    solve->add_option("--boundary", c.boundary, "Expression in x, y, r, d, or a field file")->required();
    solve->add_option("--tolerance", c.tolerance, "Target max |Lf| relative to the data scale");
    solve->add_option("--out", c.out, "Field file (default stdout)");

    auto* ext = app.add_subcommand("extend", "Harmonic extension onto the surface");
    source(ext);
    ext->add_option("--field", c.field, "Field file")->required();
    extension(ext);
    ext->add_option("--out", c.out, "Extended-field file (default stdout)");

    auto* surface = app.add_subcommand("surface", "Surface ball volume");
    source(surface);
    surface->add_option("--ball-volume", c.ball_volume, "p,R")->required();
    surface->set_help_flag("--help", "Print this help message and exit");
    surface->add_option("--h", c.h, "Mesh step");
    surface->add_option("--order", c.order, "Barycentric rule order (1, 2 or 3)");
    output(surface);

    auto* verify = app.add_subcommand("verify", "Inequality suites");
    source(verify);
    verify->add_option("--suite", c.suite, "all, rvc, poincare, mvi or gram");
    verify->add_option("--seed", c.seed, "Seed of the random fields and pairs");
    verify->set_help_flag("--help", "Print this help message and exit");
    verify->add_option("--h", c.h, "Mesh step");
    verify->add_option("--order", c.order, "Barycentric rule order");
    extension(verify);
    verify->add_option("--d", c.d, "Growth degree for the Gram checks");
    verify->add_option("--beta", c.beta, "Radius ratio for the trace check");
    verify->add_option("--delta", c.delta, "Exponent slack for the trace check");
    verify->add_option("--eps", c.eps, "Radius slack for the surface Gram check");
    verify->add_option("--fields", c.fields, "Random fields per suite");
    verify->add_option("--sources", c.sources, "Bi-Lipschitz sources");
    verify->add_option("--targets", c.targets, "Bi-Lipschitz targets per source");
    verify->add_option("--tolerance", c.tolerance, "Solver tolerance");
    output(verify);

    auto* dim = app.add_subcommand("dim", "Dimension of polynomial-growth harmonic functions");
    source(dim);
    dim->add_option("--d", c.d, "Growth degree")->required();
    dim->add_option("--radii", c.radii, "Radius schedule, e.g. 4,6,8,10")->delimiter(',')->required();
    dim->add_option("--tau", c.tau, "Relative eigenvalue cutoff");
    dim->add_option("--candidates", c.candidates, "Comma-separated candidate field files");
    output(dim);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return std::nullopt;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return std::nullopt;
    } catch (const CLI::ParseError& e) {
        throw Error(ErrorKind::InvalidArgument, e.what());
    }
    c.command = app.get_subcommands().front()->get_name();
    return c;
}

int run(const RunConfig& c, std::ostream& out, std::ostream&) {
    if (c.command == "gen") return cmd_gen(c, out);
    if (c.command == "curvature") return cmd_curvature(c, out);
    if (c.command == "solve") return cmd_solve(c, out);
    if (c.command == "extend") return cmd_extend(c, out);
    if (c.command == "surface") return cmd_surface(c, out);
    if (c.command == "verify") return cmd_verify(c, out);
    if (c.command == "dim") return cmd_dim(c, out);
    throw Error(ErrorKind::InvalidArgument, "unknown command '" + c.command + "'");
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        const auto config = parse_arguments(args, out);
        if (!config) return kExitOk;
        return run(*config, out, err);
    } catch (const Error& e) {
        err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}

} // namespace semiplanar::cli
