#include "semiplanar/tiling.hpp"

#include "semiplanar/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

namespace semiplanar {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt3 = std::sqrt(3.0);

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

/// Regular unit-side polygon of a unit cell: `phase` is the polar angle of its
/// first vertex about `center`, in degrees.
struct Prototile {
    int n;
    Vec2 center;
    double phase;
};

struct UnitCell {
    Vec2 t1;
    Vec2 t2;
    std::vector<Prototile> tiles;
};

UnitCell unit_cell(TilingKind kind) {
    switch (kind) {
    case TilingKind::Triangular:
        return {{1, 0}, {0.5, kSqrt3 / 2},
                {{3, {0.5, kSqrt3 / 6}, 90}, {3, {1, kSqrt3 / 3}, -90}}};
    case TilingKind::Square:
        return {{1, 0}, {0, 1}, {{4, {0.5, 0.5}, 45}}};
    case TilingKind::Hexagonal:
        return {{kSqrt3, 0}, {kSqrt3 / 2, 1.5}, {{6, {0, 0}, 30}}};
    case TilingKind::Trihexagonal:
        return {{2, 0}, {1, kSqrt3},
                {{6, {0, 0}, 0}, {3, {1, 1 / kSqrt3}, -90}, {3, {2, 2 / kSqrt3}, 90}}};
    case TilingKind::SnubSquare: {
        // Two squares turned by +-15 degrees and four triangles per square cell.
        const double l = std::sqrt(2 + kSqrt3);
        const double u = (1 - 1 / kSqrt3) / 4;
        return {{l, 0}, {0, l},
                {{4, {0, 0}, 60},
                 {4, {l / 2, l / 2}, 30},
                 {3, {u * l, (0.5 + u) * l}, 45},
                 {3, {(0.5 - u) * l, u * l}, 15},
                 {3, {(0.5 + u) * l, (1 - u) * l}, 75},
                 {3, {(1 - u) * l, (0.5 - u) * l}, 105}}};
    }
    case TilingKind::TruncatedSquare: {
        const double s = 1 + std::sqrt(2.0);
        return {{s, 0}, {0, s}, {{8, {0, 0}, 22.5}, {4, {s / 2, s / 2}, 0}}};
    }
    case TilingKind::TruncatedHexagonal: {
        const double s = 2 + kSqrt3;
        return {{s, 0}, {s / 2, s * kSqrt3 / 2},
                {{12, {0, 0}, 15}, {3, {s / 2, s / (2 * kSqrt3)}, 30}, {3, {s, s / kSqrt3}, 90}}};
    }
    case TilingKind::TruncatedTrihexagonal: {
        const double s = 3 + kSqrt3;
        return {{s, 0}, {s / 2, s * kSqrt3 / 2},
                {{12, {0, 0}, 15},
                 {6, {s / 2, s / (2 * kSqrt3)}, 0},
                 {6, {s, s / kSqrt3}, 0},
                 {4, {s / 2, 0}, 45},
                 {4, {s / 4, s * kSqrt3 / 4}, 105},
                 {4, {3 * s / 4, s * kSqrt3 / 4}, 165}}};
    }
    }
    throw std::logic_error("unit_cell: unknown tiling");
}

double circumradius(int n) { return 1.0 / (2.0 * std::sin(kPi / n)); }

/// Merges coordinates closer than 1e-6 into one vertex.
class VertexPool {
public:
    int insert(Vec2 p) {
        const long kx = std::lround(p.x * kScale);
        const long ky = std::lround(p.y * kScale);
        for (long dx = -1; dx <= 1; ++dx) {
            for (long dy = -1; dy <= 1; ++dy) {
                auto it = cells_.find({kx + dx, ky + dy});
                if (it == cells_.end()) continue;
                for (int id : it->second) {
                    if (std::hypot(points_[id].x - p.x, points_[id].y - p.y) < 1e-6) return id;
                }
            }
        }
        const int id = static_cast<int>(points_.size());
        points_.push_back(p);
        cells_[{kx, ky}].push_back(id);
        return id;
    }
    const std::vector<Vec2>& points() const { return points_; }

private:
    static constexpr double kScale = 1e5;
    std::vector<Vec2> points_;
    std::map<std::pair<long, long>, std::vector<int>> cells_;
};

} // namespace

TilingKind parse_tiling_kind(std::string_view text) {
    static const std::map<std::string, TilingKind, std::less<>> names = {
        {"3^6", TilingKind::Triangular},
        {"3.3.3.3.3.3", TilingKind::Triangular},
        {"3.6", TilingKind::Triangular},
        {"4^4", TilingKind::Square},
        {"4.4.4.4", TilingKind::Square},
        {"4.4", TilingKind::Square},
        {"6^3", TilingKind::Hexagonal},
        {"6.6.6", TilingKind::Hexagonal},
        {"6.3", TilingKind::Hexagonal},
        {"3.6.3.6", TilingKind::Trihexagonal},
        {"3.3.4.3.4", TilingKind::SnubSquare},
        {"4.8.8", TilingKind::TruncatedSquare},
        {"3.12.12", TilingKind::TruncatedHexagonal},
        {"4.6.12", TilingKind::TruncatedTrihexagonal},
    };
    const auto it = names.find(text);
    if (it == names.end()) {
        throw Error(ErrorKind::InvalidArgument, "unsupported tiling pattern '" + std::string(text) + "'");
    }
    return it->second;
}

std::string tiling_name(TilingKind kind) {
    switch (kind) {
    case TilingKind::Triangular: return "3^6";
    case TilingKind::Square: return "4^4";
    case TilingKind::Hexagonal: return "6^3";
    case TilingKind::Trihexagonal: return "3.6.3.6";
    case TilingKind::SnubSquare: return "3.3.4.3.4";
    case TilingKind::TruncatedSquare: return "4.8.8";
    case TilingKind::TruncatedHexagonal: return "3.12.12";
    case TilingKind::TruncatedTrihexagonal: return "4.6.12";
    }
    return "?";
}

std::vector<int> vertex_configuration(TilingKind kind) {
    switch (kind) {
    case TilingKind::Triangular: return {3, 3, 3, 3, 3, 3};
    case TilingKind::Square: return {4, 4, 4, 4};
    case TilingKind::Hexagonal: return {6, 6, 6};
    case TilingKind::Trihexagonal: return {3, 6, 3, 6};
    case TilingKind::SnubSquare: return {3, 3, 4, 3, 4};
    case TilingKind::TruncatedSquare: return {4, 8, 8};
    case TilingKind::TruncatedHexagonal: return {3, 12, 12};
    case TilingKind::TruncatedTrihexagonal: return {4, 6, 12};
    }
    return {};
}

bool same_configuration(const std::vector<int>& pattern, const std::vector<int>& config) {
    if (pattern.size() != config.size()) return false;
    const std::size_t n = pattern.size();
    auto reversed = config;
    std::reverse(reversed.begin(), reversed.end());
    for (const std::vector<int>* ref : {&config, static_cast<const std::vector<int>*>(&reversed)}) {
        for (std::size_t shift = 0; shift < n; ++shift) {
            bool match = true;
            for (std::size_t i = 0; i < n && match; ++i) match = pattern[i] == (*ref)[(i + shift) % n];
            if (match) return true;
        }
    }
    return false;
}

GeneratedTiling generate(const TilingSpec& spec) {
    if (spec.radius < 1) throw Error(ErrorKind::InvalidArgument, "generate: radius must be >= 1");

    const UnitCell cell = unit_cell(spec.kind);
    double max_r = 0.0;
    for (const auto& t : cell.tiles) max_r = std::max(max_r, circumradius(t.n));

    // Anchor: first vertex of the first prototile at the origin.
    const Prototile& anchor_tile = cell.tiles.front();
    const double a0 = anchor_tile.phase * kPi / 180.0;
    const Vec2 shift{anchor_tile.center.x + circumradius(anchor_tile.n) * std::cos(a0),
                     anchor_tile.center.y + circumradius(anchor_tile.n) * std::sin(a0)};

    // Every hop has unit length, so B_{radius+2} lies in a Euclidean disk of
    // radius radius+2; pad by two polygon diameters so all fans there exist.
    const double reach = spec.radius + 2 + 4 * max_r + 1;
    const double cell_min = std::min(std::hypot(cell.t1.x, cell.t1.y), std::hypot(cell.t2.x, cell.t2.y));
    const int span = static_cast<int>(std::ceil(2 * reach / cell_min)) + 2;

    VertexPool pool;
    std::vector<std::vector<int>> polygons;
    for (int i = -span; i <= span; ++i) {
        for (int j = -span; j <= span; ++j) {
            for (const auto& t : cell.tiles) {
                const Vec2 c{t.center.x + i * cell.t1.x + j * cell.t2.x - shift.x,
                             t.center.y + i * cell.t1.y + j * cell.t2.y - shift.y};
                if (std::hypot(c.x, c.y) > reach) continue;
                const double r = circumradius(t.n);
                std::vector<int> poly;
                for (int k = 0; k < t.n; ++k) {
                    const double a = (t.phase * kPi / 180.0) + 2.0 * kPi * k / t.n;
                    poly.push_back(pool.insert({c.x + r * std::cos(a), c.y + r * std::sin(a)}));
                }
                polygons.push_back(std::move(poly));
            }
        }
    }

    const auto& pts = pool.points();
    const std::size_t nv = pts.size();
    std::vector<std::vector<std::pair<int, int>>> incident(nv); // (polygon, corner index)
    std::vector<double> angle_sum(nv, 0.0);
    std::vector<std::vector<int>> adj(nv);
    for (std::size_t p = 0; p < polygons.size(); ++p) {
        const auto& poly = polygons[p];
        const int n = static_cast<int>(poly.size());
        for (int k = 0; k < n; ++k) {
            const int v = poly[k];
            const int w = poly[(k + 1) % n];
            incident[v].emplace_back(static_cast<int>(p), k);
            angle_sum[v] += (n - 2) * kPi / n;
            if (std::find(adj[v].begin(), adj[v].end(), w) == adj[v].end()) {
                adj[v].push_back(w);
                adj[w].push_back(v);
            }
        }
    }
    auto complete = [&](int v) { return std::abs(angle_sum[v] - 2 * kPi) < 1e-9; };

    int origin = -1;
    for (std::size_t v = 0; v < nv; ++v) {
        if (std::hypot(pts[v].x, pts[v].y) < 1e-9) origin = static_cast<int>(v);
    }
    if (origin < 0) throw std::logic_error("generate: anchor vertex missing");

    std::vector<int> dist(nv, -1);
    std::queue<int> q;
    dist[origin] = 0;
    q.push(origin);
    while (!q.empty()) {
        const int v = q.front();
        q.pop();
        for (int u : adj[v]) {
            if (dist[u] < 0) {
                dist[u] = dist[v] + 1;
                q.push(u);
            }
        }
    }

    // Faces meeting the ball.
    std::vector<char> selected(polygons.size(), 0);
    for (std::size_t p = 0; p < polygons.size(); ++p) {
        for (int v : polygons[p]) {
            if (dist[v] >= 0 && dist[v] <= spec.radius) {
                if (!complete(v)) throw std::logic_error("generate: patch too small for radius");
                selected[p] = 1;
            }
        }
    }

    std::vector<int> kept;
    std::vector<char> in_patch(nv, 0);
    for (std::size_t p = 0; p < polygons.size(); ++p) {
        if (!selected[p]) continue;
        for (int v : polygons[p]) {
            if (!in_patch[v]) {
                in_patch[v] = 1;
                kept.push_back(v);
            }
        }
    }

    auto polar_angle = [&](int from, int to) {
        double a = std::atan2(pts[to].y - pts[from].y, pts[to].x - pts[from].x);
        if (a < -1e-12) a += 2 * kPi;
        return std::max(a, 0.0);
    };

    // Order: hop distance, then angle and norm about the origin.
    std::sort(kept.begin(), kept.end(), [&](int a, int b) {
        const auto key = [&](int v) {
            const double r = std::hypot(pts[v].x, pts[v].y);
            const double ang = r < 1e-9 ? 0.0 : polar_angle(origin, v);
            return std::make_tuple(dist[v], std::lround(ang * 1e8), std::lround(r * 1e8));
        };
        return key(a) < key(b);
    });
    std::vector<VertexId> new_id(nv, -1);
    for (std::size_t i = 0; i < kept.size(); ++i) new_id[kept[i]] = static_cast<VertexId>(i);

    RawGraph raw;
    raw.vertex_count = kept.size();
    raw.rotation.resize(kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i) {
        const int v = kept[i];
        // Neighbours carried by a selected face.
        std::vector<int> nbrs;
        for (auto [p, k] : incident[v]) {
            if (!selected[p]) continue;
            const auto& poly = polygons[p];
            const int n = static_cast<int>(poly.size());
            for (int w : {poly[(k + 1) % n], poly[(k + n - 1) % n]}) {
                if (std::find(nbrs.begin(), nbrs.end(), w) == nbrs.end()) nbrs.push_back(w);
            }
        }
        std::sort(nbrs.begin(), nbrs.end(),
                  [&](int a, int b) { return polar_angle(v, a) < polar_angle(v, b); });

        bool interior = complete(v);
        for (auto [p, k] : incident[v]) interior = interior && selected[p];

        auto& rot = raw.rotation[i];
        const std::size_t m = nbrs.size();
        for (std::size_t s = 0; s < m; ++s) {
            const int a = nbrs[s];
            const int b = nbrs[(s + 1) % m];
            rot.push_back(new_id[a]);
            if (interior) continue;
            // The sector from a to b (counter-clockwise) is covered iff a
            // selected polygon has a after v and b before v.
            bool covered = false;
            for (auto [p, k] : incident[v]) {
                if (!selected[p]) continue;
                const auto& poly = polygons[p];
                const int n = static_cast<int>(poly.size());
                if (poly[(k + 1) % n] == a && poly[(k + n - 1) % n] == b) covered = true;
            }
            if (!covered) rot.push_back(kGap);
        }
        if (!interior) raw.boundary.push_back(static_cast<VertexId>(i));
    }

    GeneratedTiling out{build_graph(raw), 0, spec};

    const auto config = vertex_configuration(spec.kind);
    for (VertexId v = 0; v < static_cast<VertexId>(out.graph.vertex_count()); ++v) {
        if (out.graph.is_boundary(v)) continue;
        if (!same_configuration(vertex_pattern(out.graph, v), config)) {
            throw std::logic_error("generate: vertex " + std::to_string(v) + " does not match " +
                                   tiling_name(spec.kind));
        }
    }
    return out;
}

} // namespace semiplanar
