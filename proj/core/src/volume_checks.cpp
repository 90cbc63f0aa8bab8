#include "semiplanar/analysis.hpp"

#include "semiplanar/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

namespace semiplanar {

namespace {

std::string kv(const std::string& key, double value) { return key + "=" + format_number(value); }

std::string join(std::initializer_list<std::string> parts) {
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty()) out += ";";
        out += p;
    }
    return out;
}

template <class T>
std::string list(const std::vector<T>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) out += (i ? " " : "") + format_number(static_cast<double>(values[i]));
    return out;
}

template <class T>
std::vector<T> sorted_unique(std::vector<T> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

void require_defined(const ScalarField& f, const std::vector<VertexId>& vertices, const std::string& name) {
    for (VertexId v : vertices) {
        if (v < 0 || static_cast<std::size_t>(v) >= f.size() || !f.defined(v)) {
            throw Error(ErrorKind::InvalidArgument,
                        "field " + name + " has no value at vertex " + std::to_string(v));
        }
    }
}

} // namespace

// -------------------------------------------------------------- graph side

VolumePair verify_graph_volume(const SemiplanarGraph& g, VertexId p, const std::vector<int>& radii_in,
                               const std::string& graph_name) {
    const auto radii = sorted_unique(radii_in);
    if (radii.empty() || radii.front() < 1) throw Error(ErrorKind::InvalidArgument, "verify_graph_volume: radii must be >= 1");
    VolumePair out;
    out.comparison.id = InequalityId::RVCG1;
    out.doubling.id = InequalityId::VDG1;
    for (auto* r : {&out.comparison, &out.doubling}) {
        r->graph = graph_name;
        r->sample = "p=" + std::to_string(p) + ";radii=" + list(radii);
    }
    std::vector<long> volume;
    for (int R : radii) volume.push_back(graph_ball(g, p, R).volume);
    for (std::size_t j = 0; j < radii.size(); ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            const double r = radii[i];
            const double R = radii[j];
            const double factor = static_cast<double>(volume[j]) / static_cast<double>(volume[i]) * (r / R) * (r / R);
            out.comparison.add(join({kv("r", r), kv("R", R)}), factor);
        }
    }
    for (std::size_t j = 0; j < radii.size(); ++j) {
        const long twice = graph_ball(g, p, 2 * radii[j]).volume;
        out.doubling.add(kv("R", radii[j]), static_cast<double>(twice) / static_cast<double>(volume[j]));
    }
    out.comparison.finish();
    out.doubling.finish();
    return out;
}

InequalityReport verify_poincare_graph(const SemiplanarGraph& g, VertexId p, int radius, int expansion,
                                       const std::vector<NamedField>& fields, const std::string& graph_name) {
    if (radius < 1 || expansion < 1) {
        throw Error(ErrorKind::InvalidArgument, "verify_poincare_graph: radius and expansion must be >= 1");
    }
    InequalityReport report;
    report.id = InequalityId::PIG1;
    report.graph = graph_name;
    report.sample = "p=" + std::to_string(p) + ";R=" + std::to_string(radius) + ";C=" + std::to_string(expansion);
    const GraphBall ball = graph_ball(g, p, radius);
    const GraphBall big = graph_ball(g, p, expansion * radius);
    std::vector<char> in_big(g.vertex_count(), 0);
    for (VertexId v : big.members) in_big[v] = 1;
    std::vector<std::string> flagged;
    for (const auto& [name, f] : fields) {
        require_defined(f, big.members, name);
        const double mean = ball_average(g, f, ball);
        double variance = 0.0;
        for (VertexId v : ball.members) variance += (f[v] - mean) * (f[v] - mean) * g.degree(v);
        double gradient = 0.0;
        for (VertexId v : big.members) {
            for (VertexId u : g.neighbors(v)) {
                if (u > v && in_big[u]) gradient += (f[u] - f[v]) * (f[u] - f[v]);
            }
        }
        // Constant up to rounding: both sides are noise and their quotient is meaningless.
        double scale = 1.0;
        double spread = 0.0;
        for (VertexId v : big.members) {
            scale = std::max(scale, std::abs(f[v]));
            spread = std::max(spread, std::abs(f[v] - f[p]));
        }
        double ratio;
        if (spread <= 1e-12 * scale) {
            ratio = 1.0;
            flagged.push_back(name);
        } else if (gradient == 0.0) {
            ratio = std::numeric_limits<double>::infinity();
        } else {
            ratio = variance / (static_cast<double>(radius) * radius * gradient);
        }
        report.add(join({"field=" + name, kv("variance", variance), kv("gradient", gradient)}), ratio);
    }
    report.finish();
    if (!flagged.empty()) {
        std::string note = "constant fields reported as 1:";
        for (const auto& n : flagged) note += " " + n;
        report.note = note;
    }
    return report;
}

InequalityReport verify_harnack(const SemiplanarGraph& g, VertexId p, const std::vector<int>& radii,
                                const std::vector<NamedField>& fields, const std::string& graph_name) {
    InequalityReport report;
    report.id = InequalityId::HARNACK;
    report.graph = graph_name;
    report.sample = "p=" + std::to_string(p) + ";radii=" + list(radii) + ";fields=" + std::to_string(fields.size());
    for (const auto& [name, f] : fields) {
        for (int R : radii) report.add(join({"field=" + name, kv("R", R)}), harnack_ratio(g, p, R, f));
    }
    report.finish();
    return report;
}

InequalityReport verify_mvi_graph(const SemiplanarGraph& g, VertexId p, const std::vector<int>& radii,
                                  const std::vector<NamedField>& fields, const std::string& graph_name) {
    InequalityReport report;
    report.id = InequalityId::MVI_G;
    report.graph = graph_name;
    report.sample = "p=" + std::to_string(p) + ";radii=" + list(radii) + ";fields=" + std::to_string(fields.size());
    for (const auto& [name, f] : fields) {
        for (int R : radii) report.add(join({"field=" + name, kv("R", R)}), graph_mvi_ratio(g, p, R, f));
    }
    report.finish();
    return report;
}

// ------------------------------------------------------------ surface side

namespace {

std::string point_label(const SurfacePoint& p) {
    return "face=" + std::to_string(p.face) + ";r=" + format_number(p.r) + ";theta=" + format_number(p.theta);
}

} // namespace

VolumePair verify_surface_volume(const MetricMesh& mesh, const SurfacePoint& p, const std::vector<double>& radii_in,
                                 double tolerance, const std::string& graph_name) {
    const auto radii = sorted_unique(radii_in);
    if (radii.empty() || !(radii.front() > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "verify_surface_volume: radii must be positive");
    }
    const SurfaceBallSampler sampler(mesh, p, 2.0 * radii.back());
    VolumePair out;
    out.comparison.id = InequalityId::RVC1;
    out.doubling.id = InequalityId::VD1;
    for (auto* r : {&out.comparison, &out.doubling}) {
        r->graph = graph_name;
        r->sample = point_label(p) + ";radii=" + list(radii) + ";h=" + format_number(mesh.h()) +
                    ";tolerance=" + format_number(tolerance);
    }
    std::vector<double> volume, band;
    for (double R : radii) {
        volume.push_back(sampler.volume(R));
        band.push_back(sampler.band(R));
    }
    for (std::size_t j = 0; j < radii.size(); ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            const double r = radii[i];
            const double R = radii[j];
            out.comparison.add(join({kv("r", r), kv("R", R), kv("band_r", band[i]), kv("band_R", band[j])}),
                               volume[j] / volume[i], (R / r) * (R / r) * (1.0 + tolerance));
        }
    }
    for (std::size_t j = 0; j < radii.size(); ++j) {
        const double twice = sampler.volume(2.0 * radii[j]);
        out.doubling.add(join({kv("R", radii[j]), kv("band_R", band[j]), kv("band_2R", sampler.band(2.0 * radii[j]))}),
                         twice / volume[j], 4.0 * (1.0 + tolerance));
    }
    out.comparison.finish();
    out.doubling.finish();
    out.doubling.bound = 4.0 * (1.0 + tolerance);
    return out;
}

InequalityReport verify_bilipschitz(const MetricMesh& mesh, const std::vector<std::pair<VertexId, VertexId>>& pairs,
                                    const std::string& graph_name) {
    const LipschitzMeasure m = bilipschitz_measure(mesh, pairs);
    InequalityReport report;
    report.id = InequalityId::LIP_EQ;
    report.graph = graph_name;
    report.sample = "pairs=" + std::to_string(m.samples) + ";h=" + format_number(mesh.h());
    report.add("max", m.max_ratio, 1.0 + m.max_mesh_error);
    report.add("min", m.min_ratio);
    report.finish();
    report.note = "lower constant measured: " + format_number(m.min_ratio);
    return report;
}

std::vector<double> sample_extension(const SurfaceBallSampler& sampler, const ExtendedField& field) {
    std::vector<double> values;
    values.reserve(sampler.nodes().size());
    for (const auto& node : sampler.nodes()) values.push_back(field.evaluate(surface_point(node.face, node.local)));
    return values;
}

std::vector<FaceId> sampler_faces(const SurfaceBallSampler& sampler) {
    std::set<FaceId> faces;
    for (const auto& node : sampler.nodes()) faces.insert(node.face);
    return {faces.begin(), faces.end()};
}

InequalityReport verify_mvi_surface(const MetricMesh& mesh, const SurfacePoint& p, const std::vector<double>& radii_in,
                                    const std::vector<NamedField>& fields, int order, int samples,
                                    double harmonic_tolerance, const std::string& graph_name) {
    const auto radii = sorted_unique(radii_in);
    if (radii.empty() || !(radii.front() > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "verify_mvi_surface: radii must be positive");
    }
    const SemiplanarGraph& g = mesh.graph();
    const SurfaceBallSampler sampler(mesh, p, radii.back());
    const auto faces = sampler_faces(sampler);
    std::set<VertexId> vertex_set;
    for (FaceId f : faces) vertex_set.insert(g.face(f).vertices.begin(), g.face(f).vertices.end());
    const std::vector<VertexId> vertices(vertex_set.begin(), vertex_set.end());

    InequalityReport report;
    report.id = InequalityId::MVI_X;
    report.graph = graph_name;
    report.sample = point_label(p) + ";radii=" + list(radii) + ";h=" + format_number(mesh.h()) +
                    ";K=" + std::to_string(order) + ";M=" + std::to_string(samples) +
                    ";fields=" + std::to_string(fields.size());
    for (const auto& [name, f] : fields) {
        require_defined(f, vertices, name);
        for (VertexId v : vertices) {
            const double lf = std::abs(laplacian(g, f, v));
            if (lf > harmonic_tolerance) {
                std::ostringstream os;
                os << "verify_mvi_surface: field " << name << " is not harmonic at vertex " << v << " (|Lf| = " << lf
                   << ")";
                throw Error(ErrorKind::InvalidArgument, os.str());
            }
        }
        const ExtendedField ext = extend(g, f, faces, order, samples);
        std::vector<double> sq = sample_extension(sampler, ext);
        for (double& x : sq) x *= x;
        const double at_p = ext.evaluate(p);
        for (double R : radii) {
            const double volume = sampler.volume(R);
            const double band = sampler.band(R);
            if (!(volume > band)) {
                throw Error(ErrorKind::InvalidArgument, "verify_mvi_surface: ball of radius " + format_number(R) +
                                                            " is below the quadrature resolution");
            }
            const double mass = sampler.integrate(R, sq);
            const double ratio = (mass > 0.0) ? at_p * at_p * volume / mass : 0.0;
            report.add(join({"field=" + name, kv("R", R), kv("volume", volume), kv("band", band)}), ratio);
        }
    }
    report.finish();
    return report;
}

ExtensionLemmaReports verify_extension_lemmas(const std::vector<std::pair<std::string, ExtendedField>>& fields,
                                              const std::string& graph_name) {
    ExtensionLemmaReports out;
    out.lem33.id = InequalityId::LEM33;
    out.lem35.id = InequalityId::LEM35;
    for (auto* r : {&out.lem33, &out.lem35}) {
        r->graph = graph_name;
        r->sample = "fields=" + std::to_string(fields.size());
    }
    for (const auto& [name, ext] : fields) {
        double worst33 = 0.0;
        double worst_vertex = 0.0;
        double worst_mass = 0.0;
        int count = 0;
        for (const auto& face : ext.faces) {
            if (!face) continue;
            ++count;
            const FaceEnergy e = face_energy(*face);
            if (e.second_moment_sum > 0.0) worst33 = std::max(worst33, e.first_moment_sum / e.second_moment_sum);
            const Lemma35Report l = lemma35_check(*face);
            worst_vertex = std::max(worst_vertex, l.vertex_ratio);
            worst_mass = std::max(worst_mass, l.mass_ratio);
        }
        const std::string tag = "field=" + name + ";faces=" + std::to_string(count);
        out.lem33.add(tag, worst33, 1.0);
        out.lem35.add(tag + ";part=vertex", worst_vertex, 6.0);
        out.lem35.add(tag + ";part=mass", worst_mass);
    }
    out.lem33.finish();
    out.lem35.finish();
    out.lem33.note = "first/second coefficient moment, worst face";
    return out;
}

InequalityReport lemma36_check(const MetricMesh& mesh, const SurfacePoint& p, VertexId q, int r, double lipschitz,
                               const std::string& graph_name) {
    const SemiplanarGraph& g = mesh.graph();
    const auto& fv = g.face(p.face).vertices;
    if (std::find(fv.begin(), fv.end(), q) == fv.end()) {
        throw Error(ErrorKind::InvalidArgument, "lemma36_check: q is not a vertex of p's face");
    }
    const double c3 = face_diameter_bound(g.max_face_degree());
    const double r_prime = lipschitz * r - 2.0 * c3;
    if (!(r_prime > 0.0)) {
        std::ostringstream os;
        os << "lemma36_check: r = " << r << " is too small, C r - 2 C3(D) = " << r_prime << " <= 0";
        throw Error(ErrorKind::InvalidArgument, os.str());
    }
    const GraphBall ball = graph_ball(g, q, r);
    const BallVolume volume = surface_ball_volume(mesh, p, r_prime);
    InequalityReport report;
    report.id = InequalityId::LEM36;
    report.graph = graph_name;
    report.sample = point_label(p) + ";q=" + std::to_string(q) + ";C=" + format_number(lipschitz);
    report.add(join({kv("r", r), kv("r_prime", r_prime), kv("surface_volume", volume.value),
                     kv("band", volume.quadrature_error), kv("graph_volume", static_cast<double>(ball.volume))}),
               volume.value / static_cast<double>(ball.volume));
    report.finish();
    return report;
}

} // namespace semiplanar
