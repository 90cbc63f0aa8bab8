#include "semiplanar/analysis.hpp"

#include "semiplanar/error.hpp"

#include <algorithm>
#include <cmath>

namespace semiplanar {

namespace {

Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& m) {
    if (m.rows() == 0) return {};
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw Error(ErrorKind::NonConvergence, "Gram eigenvalue solver failed");
    return solver.eigenvalues();
}

std::string kv(const std::string& key, double value) { return key + "=" + format_number(value); }

} // namespace

int numerical_rank(const Eigen::VectorXd& eigenvalues, double tau) {
    if (eigenvalues.size() == 0) return 0;
    const double top = eigenvalues.maxCoeff();
    if (!(top > 0.0)) return 0;
    int count = 0;
    for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) count += eigenvalues[i] > tau * top;
    return count;
}

int GramMatrix::rank(double tau) const { return numerical_rank(eigenvalues, tau); }

GramMatrix gram_graph(const SemiplanarGraph& g, const std::vector<NamedField>& fields, VertexId p, int radius) {
    const GraphBall ball = graph_ball(g, p, radius);
    const auto k = static_cast<Eigen::Index>(fields.size());
    GramMatrix out;
    out.radius = radius;
    out.mode = GramMode::Graph;
    out.entries = Eigen::MatrixXd::Zero(k, k);
    for (const auto& f : fields) {
        out.basis.push_back(f.name);
        for (VertexId v : ball.members) {
            if (static_cast<std::size_t>(v) >= f.field.size() || !f.field.defined(v)) {
                throw Error(ErrorKind::InvalidArgument, "gram: field " + f.name + " is undefined at vertex " +
                                                            std::to_string(v) + " of B_" + std::to_string(radius));
            }
        }
    }
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = i; j < k; ++j) {
            double sum = 0.0;
            for (VertexId v : ball.members) sum += fields[i].field[v] * fields[j].field[v] * g.degree(v);
            out.entries(i, j) = out.entries(j, i) = sum;
        }
    }
    out.eigenvalues = symmetric_eigenvalues(out.entries);
    return out;
}

GramMatrix gram_surface(const SurfaceBallSampler& sampler, const std::vector<std::vector<double>>& node_values,
                        const std::vector<std::string>& names, double radius) {
    if (radius > sampler.max_radius() * (1.0 + 1e-12)) {
        throw Error(ErrorKind::InvalidArgument, "gram: radius exceeds the sampler's reach");
    }
    const auto k = static_cast<Eigen::Index>(node_values.size());
    GramMatrix out;
    out.radius = radius;
    out.mode = GramMode::Surface;
    out.basis = names;
    out.entries = Eigen::MatrixXd::Zero(k, k);
    std::vector<double> product(sampler.nodes().size());
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = i; j < k; ++j) {
            for (std::size_t n = 0; n < product.size(); ++n) product[n] = node_values[i][n] * node_values[j][n];
            out.entries(i, j) = out.entries(j, i) = sampler.integrate(radius, product);
        }
    }
    out.eigenvalues = symmetric_eigenvalues(out.entries);
    return out;
}

InequalityReport lemma42_check(const SemiplanarGraph& g, const std::vector<NamedField>& fields, VertexId p, double d,
                               double beta, double delta, const std::vector<int>& schedule,
                               const std::string& graph_name) {
    if (!(beta >= 1.0)) throw Error(ErrorKind::InvalidArgument, "lemma42_check: beta must be >= 1");
    if (fields.empty()) throw Error(ErrorKind::InvalidArgument, "lemma42_check: empty basis");
    const double k = static_cast<double>(fields.size());
    InequalityReport report;
    report.id = InequalityId::LEM42;
    report.graph = graph_name;
    report.sample = "p=" + std::to_string(p) + ";k=" + std::to_string(fields.size()) + ";d=" + format_number(d) +
                    ";beta=" + format_number(beta) + ";delta=" + format_number(delta);
    bool any = false;
    for (int R : schedule) {
        const int outer = static_cast<int>(std::floor(beta * R + 1e-9));
        const GramMatrix inner_gram = gram_graph(g, fields, p, R);
        const GramMatrix outer_gram = gram_graph(g, fields, p, outer);
        Eigen::LLT<Eigen::MatrixXd> llt(outer_gram.entries);
        if (llt.info() != Eigen::Success || outer_gram.rank(1e-12) < static_cast<int>(fields.size())) {
            throw Error(ErrorKind::InvalidArgument, "lemma42_check: A_" + std::to_string(outer) +
                                                        " is not positive definite (R below R0)");
        }
        const double trace = llt.solve(inner_gram.entries).trace();
        const double effective = static_cast<double>(outer) / R;
        const double bound = k * std::pow(effective, -(2.0 * d + 2.0 + delta));
        Measurement m;
        m.params = kv("R", R) + ";" + kv("beta_R", outer);
        m.value = trace;
        m.bound = bound;
        m.pass = trace >= bound;
        any = any || *m.pass;
        report.rows.push_back(m);
    }
    report.finish();
    report.pass = any;
    report.note = "lower bound; passes when some R meets it";
    return report;
}

InequalityReport lemma43_check(const SurfaceBallSampler& sampler, const std::vector<std::vector<double>>& node_values,
                               const std::vector<double>& schedule, double eps, const std::string& graph_name) {
    if (!(eps > 0.0 && eps < 0.5)) throw Error(ErrorKind::InvalidArgument, "lemma43_check: eps must lie in (0, 1/2)");
    std::vector<std::string> names;
    for (std::size_t i = 0; i < node_values.size(); ++i) names.push_back("u" + std::to_string(i));
    InequalityReport report;
    report.id = InequalityId::LEM43;
    report.graph = graph_name;
    report.sample = "k=" + std::to_string(node_values.size()) + ";eps=" + format_number(eps) +
                    ";h=" + format_number(sampler.h());
    for (double R : schedule) {
        const GramMatrix inner = gram_surface(sampler, node_values, names, R);
        const GramMatrix outer = gram_surface(sampler, node_values, names, (1.0 + eps) * R);
        const double top = outer.eigenvalues.size() ? outer.eigenvalues.maxCoeff() : 0.0;
        if (!(top > 0.0)) throw Error(ErrorKind::InvalidArgument, "lemma43_check: zero Gram matrix");
        const double ratio = inner.entries.trace() / top;
        report.add(kv("R", R) + ";" + kv("C_times_eps", ratio * eps), ratio);
    }
    report.finish();
    return report;
}

} // namespace semiplanar
