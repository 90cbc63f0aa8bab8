#include "suites.hpp"

#include <semiplanar/error.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <random>

namespace semiplanar::cli {

namespace {

InequalityReport skipped(InequalityId id, const std::string& graph, const std::string& why) {
    InequalityReport report;
    report.id = id;
    report.graph = graph;
    report.sample = "none";
    report.note = "skipped: " + why;
    report.finish();
    return report;
}

std::vector<int> int_range(int lo, int hi) {
    std::vector<int> out;
    for (int r = lo; r <= hi; ++r) out.push_back(r);
    return out;
}

std::vector<double> real_range(int lo, int hi) {
    std::vector<double> out;
    for (int r = lo; r <= hi; ++r) out.push_back(r);
    return out;
}

/// Everything the suites share, built on first use.
class Workspace {
public:
    explicit Workspace(const SuiteContext& c)
        : g(c.graph), p(c.center), name(c.name), config(c.config), rng(c.config.seed) {
        interior = interior_radius(g, p);
        hop = bfs_distances(g, p);
        try {
            layout = planar_layout(g, p);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NotDevelopable) throw;
        }
    }

    const SemiplanarGraph& g;
    VertexId p;
    std::string name;
    const RunConfig& config;
    std::mt19937_64 rng;
    int interior = 0;
    std::vector<int> hop;
    std::optional<PlanarLayout> layout;

    const MetricMesh& mesh() {
        if (!mesh_) {
            mesh_ = std::make_unique<MetricMesh>(g, config.h);
            center_point_ = vertex_point(g, p);
            // An unsafe center leaves no room for surface balls.
            if (!mesh_->safe(center_point_.face)) return *mesh_;
            std::vector<int> hops;
            const auto field = mesh_->distances_from(center_point_, -1.0, &hops);
            reach_ = safe_reach(*mesh_, center_point_);
            // Lower bound on the intrinsic distance to a vertex outside B^G_interior.
            outside_ = std::numeric_limits<double>::infinity();
            for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v) {
                if (hop[v] == kUnreached || hop[v] > interior) {
                    outside_ = std::min(outside_, field[v] - config.h * hops[v]);
                }
            }
        }
        return *mesh_;
    }

    const SurfacePoint& center_point() {
        mesh();
        return center_point_;
    }

    /// Largest sampler radius the mesh admits around the center.
    double sampler_limit() {
        mesh();
        return reach_ - config.h - 1e-9;
    }

    /// Largest surface radius whose faces keep every vertex inside B^G_interior.
    double harmonic_limit() {
        mesh();
        const double c3 = face_diameter_bound(g.max_face_degree());
        return std::min(sampler_limit(), outside_ - c3 - 1e-9);
    }

    /// Vertex pairs for the bi-Lipschitz sample: seeded sources, each with seeded targets.
    const std::vector<std::pair<VertexId, VertexId>>& pairs() {
        if (!pairs_) {
            const MetricMesh& m = mesh();
            std::vector<VertexId> pool;
            for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_count()); ++v) {
                if (hop[v] == kUnreached || hop[v] > interior || g.is_boundary(v)) continue;
                if (m.safe(vertex_point(g, v).face)) pool.push_back(v);
            }
            pairs_.emplace();
            if (pool.size() >= 2) {
                std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
                for (int s = 0; s < config.sources; ++s) {
                    const VertexId x = pool[pick(rng)];
                    for (int t = 0; t < config.targets; ++t) {
                        VertexId y = pool[pick(rng)];
                        while (y == x) y = pool[pick(rng)];
                        pairs_->emplace_back(x, y);
                    }
                }
            }
        }
        return *pairs_;
    }

    const InequalityReport& lipschitz() {
        if (!lipschitz_) lipschitz_ = verify_bilipschitz(mesh(), pairs(), name);
        return *lipschitz_;
    }

    /// Harmonic fields on B^G_interior: the constant, the solutions with the
    /// layout coordinates as boundary data (flat graphs only), and solutions
    /// with seeded random boundary data in [1, 2].
    const std::vector<NamedField>& family() {
        if (!family_) {
            family_.emplace();
            const int R = interior;
            auto solve_with = [&](const std::string& label, const std::function<double(VertexId)>& boundary) {
                DirichletProblem problem = ball_problem(g, p, R, boundary);
                problem.tolerance = config.tolerance;
                family_->push_back({label, solve_dirichlet(problem).field});
            };
            solve_with("one", [](VertexId) { return 1.0; });
            if (layout) {
                solve_with("x", [&](VertexId v) { return layout->position[v].real(); });
                solve_with("y", [&](VertexId v) { return layout->position[v].imag(); });
            }
            std::uniform_real_distribution<double> value(1.0, 2.0);
            for (int k = 0; k < config.fields; ++k) {
                std::vector<double> data(g.vertex_count());
                for (double& x : data) x = value(rng);
                solve_with("harm" + std::to_string(k), [&](VertexId v) { return data[v]; });
            }
        }
        return *family_;
    }

    std::vector<NamedField> positive_family() {
        std::vector<NamedField> out;
        for (const auto& f : family()) {
            if (f.name != "x" && f.name != "y") out.push_back(f);
        }
        return out;
    }

private:
    std::unique_ptr<MetricMesh> mesh_;
    SurfacePoint center_point_;
    double reach_ = 0.0;
    double outside_ = 0.0;
    std::optional<std::vector<std::pair<VertexId, VertexId>>> pairs_;
    std::optional<InequalityReport> lipschitz_;
    std::optional<std::vector<NamedField>> family_;
};

void rvc_suite(Workspace& w, std::vector<InequalityReport>& out) {
    const auto graph_radii = int_range(1, w.interior / 2);
    if (graph_radii.empty()) {
        out.push_back(skipped(InequalityId::RVCG1, w.name, "interior radius below 2"));
        out.push_back(skipped(InequalityId::VDG1, w.name, "interior radius below 2"));
    } else {
        auto pair = verify_graph_volume(w.g, w.p, graph_radii, w.name);
        out.push_back(std::move(pair.comparison));
        out.push_back(std::move(pair.doubling));
    }

    const auto surface_radii = real_range(1, static_cast<int>(std::floor(w.sampler_limit() / 2.0)));
    if (surface_radii.size() < 2) {
        out.push_back(skipped(InequalityId::RVC1, w.name, "safe region too small for two radii"));
        out.push_back(skipped(InequalityId::VD1, w.name, "safe region too small for two radii"));
    } else {
        auto pair = verify_surface_volume(w.mesh(), w.center_point(), surface_radii, 0.05, w.name);
        out.push_back(std::move(pair.comparison));
        out.push_back(std::move(pair.doubling));
    }

    if (w.pairs().empty()) {
        out.push_back(skipped(InequalityId::LIP_EQ, w.name, "fewer than two safe vertices"));
    } else {
        out.push_back(w.lipschitz());
    }
}

void poincare_suite(Workspace& w, std::vector<InequalityReport>& out) {
    if (w.interior < 1) {
        out.push_back(skipped(InequalityId::PIG1, w.name, "empty interior"));
        return;
    }
    std::vector<NamedField> fields;
    if (w.layout) {
        const PlanarLayout& layout = *w.layout;
        fields.push_back({"x", make_field(w.g, [&](VertexId v) { return layout.position[v].real(); })});
        fields.push_back({"y", make_field(w.g, [&](VertexId v) { return layout.position[v].imag(); })});
        fields.push_back({"xy", make_field(w.g, [&](VertexId v) {
                              return layout.position[v].real() * layout.position[v].imag();
                          })});
    }
    std::uniform_real_distribution<double> value(-1.0, 1.0);
    for (int k = 0; k < w.config.fields; ++k) {
        std::vector<double> data(w.g.vertex_count());
        for (double& x : data) x = value(w.rng);
        fields.push_back({"rand" + std::to_string(k), make_field(w.g, [&](VertexId v) { return data[v]; })});
    }

    InequalityReport merged;
    for (int R = 1; R <= w.interior; ++R) {
        InequalityReport part = verify_poincare_graph(w.g, w.p, R, 1, fields, w.name);
        if (R == 1) {
            merged = part;
            merged.rows.clear();
            merged.sample = "p=" + std::to_string(w.p) + ";R=1.." + std::to_string(w.interior) + ";C=1";
        }
        for (auto& row : part.rows) {
            row.params = "R=" + std::to_string(R) + ";" + row.params;
            merged.rows.push_back(std::move(row));
        }
    }
    merged.finish();
    out.push_back(std::move(merged));
}

void mvi_suite(Workspace& w, std::vector<InequalityReport>& out) {
    if (w.interior < 2) {
        for (InequalityId id : {InequalityId::HARNACK, InequalityId::MVI_G, InequalityId::MVI_X, InequalityId::LEM33,
                                InequalityId::LEM35, InequalityId::LEM36}) {
            out.push_back(skipped(id, w.name, "interior radius below 2"));
        }
        return;
    }
    out.push_back(verify_harnack(w.g, w.p, int_range(1, w.interior / 2), w.positive_family(), w.name));
    out.push_back(verify_mvi_graph(w.g, w.p, int_range(1, w.interior), w.family(), w.name));

    const int surface_max = static_cast<int>(std::floor(w.harmonic_limit()));
    if (surface_max < 1) {
        for (InequalityId id : {InequalityId::MVI_X, InequalityId::LEM33, InequalityId::LEM35}) {
            out.push_back(skipped(id, w.name, "no surface ball inside the harmonic region"));
        }
    } else {
        const auto radii = real_range(1, surface_max);
        out.push_back(verify_mvi_surface(w.mesh(), w.center_point(), radii, w.family(), w.config.K, w.config.M,
                                         kHarmonicTolerance, w.name));

        const SurfaceBallSampler sampler(w.mesh(), w.center_point(), surface_max, w.config.order);
        const auto faces = sampler_faces(sampler);
        std::vector<std::pair<std::string, ExtendedField>> extended;
        for (const auto& f : w.family()) {
            extended.emplace_back(f.name, extend(w.g, f.field, faces, w.config.K, w.config.M));
        }
        auto lemmas = verify_extension_lemmas(extended, w.name);
        out.push_back(std::move(lemmas.lem33));
        out.push_back(std::move(lemmas.lem35));
    }

    if (w.pairs().empty()) {
        out.push_back(skipped(InequalityId::LEM36, w.name, "no bi-Lipschitz sample"));
        return;
    }
    const double lipschitz = w.lipschitz().rows.back().value; // the "min" row
    const double c3 = face_diameter_bound(w.g.max_face_degree());
    int r = w.interior;
    while (r > 0 && lipschitz * r - 2.0 * c3 >= w.sampler_limit()) --r;
    if (!(lipschitz * r - 2.0 * c3 > 0.0)) {
        out.push_back(skipped(InequalityId::LEM36, w.name, "C r - 2 C3(D) <= 0 for every admissible r"));
        return;
    }
    out.push_back(lemma36_check(w.mesh(), w.center_point(), w.p, r, lipschitz, w.name));
}

void gram_suite(Workspace& w, std::vector<InequalityReport>& out) {
    const auto& family = w.family();
    std::vector<NamedField> basis(family.begin(), family.begin() + std::min<std::size_t>(3, family.size()));

    std::vector<int> schedule;
    for (int R = 1; static_cast<int>(std::floor(w.config.beta * R)) <= w.interior; ++R) {
        if (static_cast<int>(std::floor(w.config.beta * R)) > R) schedule.push_back(R);
    }
    if (schedule.empty()) {
        out.push_back(skipped(InequalityId::LEM42, w.name, "no R with floor(beta R) inside the interior"));
    } else {
        out.push_back(lemma42_check(w.g, basis, w.p, w.config.d, w.config.beta, w.config.delta, schedule, w.name));
    }

    const double scale = 1.0 + w.config.eps;
    const int top = static_cast<int>(std::floor(w.harmonic_limit() / scale));
    if (top < 1) {
        out.push_back(skipped(InequalityId::LEM43, w.name, "no surface ball inside the harmonic region"));
        return;
    }
    const auto radii = real_range(1, top);
    const SurfaceBallSampler sampler(w.mesh(), w.center_point(), scale * top, w.config.order);
    const auto faces = sampler_faces(sampler);
    std::vector<std::vector<double>> values;
    for (const auto& f : basis) {
        values.push_back(sample_extension(sampler, extend(w.g, f.field, faces, w.config.K, w.config.M)));
    }
    out.push_back(lemma43_check(sampler, values, radii, w.config.eps, w.name));
}

} // namespace

std::vector<InequalityReport> run_suites(const SuiteContext& context) {
    const std::string& suite = context.config.suite;
    const bool all = suite == "all";
    if (!all && suite != "rvc" && suite != "poincare" && suite != "mvi" && suite != "gram") {
        throw Error(ErrorKind::InvalidArgument, "verify: unknown suite '" + suite + "'");
    }
    Workspace w(context);
    std::vector<InequalityReport> out;
    if (all || suite == "rvc") rvc_suite(w, out);
    if (all || suite == "poincare") poincare_suite(w, out);
    if (all || suite == "mvi") mvi_suite(w, out);
    if (all || suite == "gram") gram_suite(w, out);
    return out;
}

} // namespace semiplanar::cli
